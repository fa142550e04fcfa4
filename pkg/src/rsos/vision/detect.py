"""Multi-scale sliding-window detection with overlap grouping.

The scan is deterministic: scales ascend (outer loop), then rows, then
columns. Window evaluations are independent of each other; results are
order-normalized afterward, so evaluation order is unobservable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .haar import CascadeClassifier
from .image import GrayImage
from .integral import integral_image, rotated_integral_image
from .haar import Window


@dataclass(frozen=True)
class ScanParams:
    scale_factor: float = 1.25
    step: int = 1
    min_window: tuple[int, int] | None = None
    max_window: tuple[int, int] | None = None
    group_threshold: float = 0.4  # IoU above which boxes merge

    def __post_init__(self):
        if self.scale_factor <= 1:
            raise ValueError("scale_factor must be > 1")
        if self.step < 1:
            raise ValueError("step must be >= 1")
        if not 0 < self.group_threshold <= 1:
            raise ValueError("group_threshold must be in (0, 1]")


@dataclass(frozen=True)
class Detection:
    x: int
    y: int
    w: int
    h: int
    score: float

    def line(self) -> str:
        return f"{self.x} {self.y} {self.w} {self.h} {self.score:g}"


def _window_sizes(cascade: CascadeClassifier, img: GrayImage, scan: ScanParams):
    base_w, base_h = cascade.window
    sizes = []
    scale = 1.0
    while True:
        w, h = round(base_w * scale), round(base_h * scale)
        if w > img.width or h > img.height:
            break
        if scan.max_window and (w > scan.max_window[0] or h > scan.max_window[1]):
            break
        big_enough = not scan.min_window or (
            w >= scan.min_window[0] and h >= scan.min_window[1]
        )
        if big_enough and (not sizes or sizes[-1] != (w, h)):
            sizes.append((w, h))
        scale *= scan.scale_factor
    return sizes


def iou(a: Detection, b: Detection) -> float:
    ix = max(0, min(a.x + a.w, b.x + b.w) - max(a.x, b.x))
    iy = max(0, min(a.y + a.h, b.y + b.h) - max(a.y, b.y))
    inter = ix * iy
    union = a.w * a.h + b.w * b.h - inter
    return inter / union if union else 0.0


def _median_low(values: list[int]) -> int:
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def group_detections(raw: list[Detection], threshold: float) -> list[Detection]:
    """Merge boxes whose IoU exceeds ``threshold`` (transitively) into their
    coordinate-wise median; the merged score is the cluster maximum."""
    n = len(raw)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if iou(raw[i], raw[j]) > threshold:
                parent[find(i)] = find(j)

    clusters: dict[int, list[Detection]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(raw[i])
    merged = [
        Detection(
            _median_low([d.x for d in group]),
            _median_low([d.y for d in group]),
            _median_low([d.w for d in group]),
            _median_low([d.h for d in group]),
            max(d.score for d in group),
        )
        for group in clusters.values()
    ]
    merged.sort(key=lambda d: (d.y, d.x, d.w, d.h, -d.score))
    return merged


def detect(img: GrayImage, cascade: CascadeClassifier, scan: ScanParams | None = None) -> list[Detection]:
    """All windows passing every cascade stage, merged by overlap.

    A cascade base window larger than the image yields an empty result.
    """
    scan = scan or ScanParams()
    ii = integral_image(img)
    rii = rotated_integral_image(img) if cascade.uses_tilted() else None
    raw: list[Detection] = []
    for w, h in _window_sizes(cascade, img, scan):
        for y in range(0, img.height - h + 1, scan.step):
            for x in range(0, img.width - w + 1, scan.step):
                score = cascade.evaluate(ii, rii, Window(x, y, w, h))
                if score is not None:
                    raw.append(Detection(x, y, w, h, score))
    return group_detections(raw, scan.group_threshold)
