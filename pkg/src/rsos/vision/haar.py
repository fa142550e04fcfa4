"""Haar-like features and cascade classifiers over integral images.

A feature is a kind plus one window-relative bounding region; the kind
derives the signed sub-rectangles (so the weighted areas of the upright
kinds cancel exactly, at every scale):

    two-rect-horizontal  left half +1, right half -1
    two-rect-vertical    top half +1, bottom half -1
    three-rect           horizontal thirds +1 / -2 / +1
    four-rect            2x2 checkerboard +1 / -1 / -1 / +1
    tilted               two 45-degree halves +1 / -1 (see TiltedRect)

The feature value is (sum over +rects) - (sum over -rects); a classifier's
polarity flips the threshold comparison, never the value: with polarity p
and threshold t a feature fires iff p*value >= p*t.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import ParseError
from .integral import IntegralImage, Rect, RotatedIntegralImage, TiltedRect, rect_sum, tilted_rect_sum


class FeatureKind(enum.Enum):
    TWO_RECT_HORIZONTAL = "two-rect-horizontal"
    TWO_RECT_VERTICAL = "two-rect-vertical"
    THREE_RECT = "three-rect"
    FOUR_RECT = "four-rect"
    TILTED = "tilted"


WeightedRect = tuple[Rect, int]
WeightedTilted = tuple[TiltedRect, int]

_MIN_EXTENT = {
    FeatureKind.TWO_RECT_HORIZONTAL: (2, 1),
    FeatureKind.TWO_RECT_VERTICAL: (1, 2),
    FeatureKind.THREE_RECT: (3, 1),
    FeatureKind.FOUR_RECT: (2, 2),
    FeatureKind.TILTED: (2, 1),
}


def _split_upright(kind: FeatureKind, x: int, y: int, w: int, h: int) -> tuple[WeightedRect, ...]:
    if kind is FeatureKind.TWO_RECT_HORIZONTAL:
        half = w // 2
        return ((Rect(x, y, half, h), 1), (Rect(x + half, y, half, h), -1))
    if kind is FeatureKind.TWO_RECT_VERTICAL:
        half = h // 2
        return ((Rect(x, y, w, half), 1), (Rect(x, y + half, w, half), -1))
    if kind is FeatureKind.THREE_RECT:
        third = w // 3
        return (
            (Rect(x, y, third, h), 1),
            (Rect(x + third, y, third, h), -2),
            (Rect(x + 2 * third, y, third, h), 1),
        )
    if kind is FeatureKind.FOUR_RECT:
        hw, hh = w // 2, h // 2
        return (
            (Rect(x, y, hw, hh), 1),
            (Rect(x + hw, y, hw, hh), -1),
            (Rect(x, y + hh, hw, hh), -1),
            (Rect(x + hw, y + hh, hw, hh), 1),
        )
    raise ValueError(kind)


def _split_tilted(x: int, y: int, w: int, h: int) -> tuple[WeightedTilted, ...]:
    half = w // 2
    return (
        (TiltedRect(x, y, half, h), 1),
        (TiltedRect(x + half, y + half, half, h), -1),
    )


@dataclass(frozen=True)
class HaarFeature:
    """One feature: kind + bounding region, relative to the base window.

    Upright kinds read ``bounds`` as an axis-aligned Rect; the tilted kind
    reads it as a TiltedRect anchor plus diagonal extents.
    """

    kind: FeatureKind
    bounds: Rect | TiltedRect
    window: tuple[int, int]

    def __post_init__(self):
        win_w, win_h = self.window
        if win_w < 1 or win_h < 1:
            raise ValueError("degenerate base window")
        min_w, min_h = _MIN_EXTENT[self.kind]
        if self.bounds.w < min_w or self.bounds.h < min_h:
            raise ValueError(f"{self.kind.value} needs at least {min_w}x{min_h} extent")
        if self.kind is FeatureKind.TILTED:
            if not isinstance(self.bounds, TiltedRect):
                raise ValueError("tilted feature needs a TiltedRect bounds")
            min_x, min_y, max_x, max_y = self.bounds.pixel_bounds()
            if min_x < 0 or min_y < 0 or max_x >= win_w or max_y >= win_h:
                raise ValueError(f"{self.bounds} outside {win_w}x{win_h} window")
        else:
            if isinstance(self.bounds, TiltedRect):
                raise ValueError("upright feature needs a Rect bounds")
            b = self.bounds
            if b.x < 0 or b.y < 0 or b.x + b.w > win_w or b.y + b.h > win_h:
                raise ValueError(f"{b} outside {win_w}x{win_h} window")

    def rects(self) -> tuple[WeightedRect, ...] | tuple[WeightedTilted, ...]:
        """Signed sub-rectangles at base scale."""
        b = self.bounds
        if self.kind is FeatureKind.TILTED:
            return _split_tilted(b.x, b.y, b.w, b.h)
        return _split_upright(self.kind, b.x, b.y, b.w, b.h)

    def scaled_parts(self, win_w: int, win_h: int):
        """Signed sub-rectangles for a window of size win_w x win_h.

        The bounding region is scaled (rounding to pixels) and re-split, so
        upright weighted areas cancel at every scale. Tilted extents use the
        smaller axis factor to stay at 45 degrees.
        """
        base_w, base_h = self.window
        fx, fy = win_w / base_w, win_h / base_h
        b = self.bounds
        if self.kind is FeatureKind.TILTED:
            f = min(fx, fy)
            w = max(1, round(b.w * f))
            h = max(1, round(b.h * f))
            x, y = round(b.x * fx), round(b.y * fy)
            parts = _split_tilted(x, y, max(2, w), h)
            for t, _ in parts:
                min_x, min_y, max_x, max_y = t.pixel_bounds()
                if min_x < 0 or min_y < 0 or max_x >= win_w or max_y >= win_h:
                    raise ValueError(
                        f"scaled {self.kind.value} feature exceeds {win_w}x{win_h} window"
                    )
            return parts
        min_w, min_h = _MIN_EXTENT[self.kind]
        x = round(b.x * fx)
        y = round(b.y * fy)
        w = max(min_w, round(b.w * fx))
        h = max(min_h, round(b.h * fy))
        w = min(w, win_w - x)
        h = min(h, win_h - y)
        if w < min_w or h < min_h or x < 0 or y < 0:
            raise ValueError(
                f"scaled {self.kind.value} feature exceeds {win_w}x{win_h} window"
            )
        return _split_upright(self.kind, x, y, w, h)


@dataclass(frozen=True)
class Window:
    """A placement: the detection window at (x, y) with size w x h."""

    x: int
    y: int
    w: int
    h: int


def feature_value(
    ii: IntegralImage,
    rii: RotatedIntegralImage | None,
    feature: HaarFeature,
    window: Window,
) -> int:
    """Signed sum of the feature's rectangles inside ``window``."""
    if window.x < 0 or window.y < 0 or window.x + window.w > ii.width or window.y + window.h > ii.height:
        raise ValueError(f"{window} outside {ii.width}x{ii.height} image")
    total = 0
    if feature.kind is FeatureKind.TILTED:
        if rii is None:
            raise ValueError("tilted feature needs a rotated integral image")
        for t, weight in feature.scaled_parts(window.w, window.h):
            placed = TiltedRect(t.x + window.x, t.y + window.y, t.w, t.h)
            total += weight * tilted_rect_sum(rii, placed)
        return total
    for r, weight in feature.scaled_parts(window.w, window.h):
        placed = Rect(r.x + window.x, r.y + window.y, r.w, r.h)
        total += weight * rect_sum(ii, placed)
    return total


@dataclass(frozen=True)
class StageFeature:
    feature: HaarFeature
    threshold: float
    polarity: int
    vote: float

    def __post_init__(self):
        if self.polarity not in (1, -1):
            raise ValueError("polarity must be +1 or -1")

    def fires(self, value: float) -> bool:
        return self.polarity * value >= self.polarity * self.threshold


@dataclass(frozen=True)
class Stage:
    features: tuple[StageFeature, ...]
    threshold: float

    def __post_init__(self):
        if not self.features:
            raise ValueError("stage needs at least one feature")


@dataclass(frozen=True)
class CascadeClassifier:
    window: tuple[int, int]
    stages: tuple[Stage, ...]

    def __post_init__(self):
        if not self.stages:
            raise ValueError("cascade needs at least one stage")
        for stage in self.stages:
            for sf in stage.features:
                if sf.feature.window != self.window:
                    raise ValueError("feature base window differs from cascade window")

    def evaluate(
        self,
        ii: IntegralImage,
        rii: RotatedIntegralImage | None,
        window: Window,
    ) -> float | None:
        """Total vote score if every stage passes, else None."""
        score = 0.0
        for stage in self.stages:
            votes = sum(
                sf.vote
                for sf in stage.features
                if sf.fires(feature_value(ii, rii, sf.feature, window))
            )
            if votes < stage.threshold:
                return None
            score += votes
        return score

    def uses_tilted(self) -> bool:
        return any(
            sf.feature.kind is FeatureKind.TILTED
            for stage in self.stages
            for sf in stage.features
        )


def load_cascade(source: str) -> CascadeClassifier:
    """Parse the plain-text cascade format.

    ``window <w> <h>`` first, then ``stage <threshold>`` lines, each followed
    by its ``feat <kind> <x> <y> <w> <h> <threshold> <polarity> <weight>``
    lines; ``#`` starts a comment.
    """
    window: tuple[int, int] | None = None
    stages: list[Stage] = []
    current: list[StageFeature] | None = None
    current_threshold = 0.0

    def close_stage():
        nonlocal current
        if current is not None:
            if not current:
                raise ParseError("stage with no features")
            stages.append(Stage(tuple(current), current_threshold))
            current = None

    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "window":
                if window is not None:
                    raise ParseError("duplicate window line", line=lineno)
                window = (int(parts[1]), int(parts[2]))
            elif parts[0] == "stage":
                if window is None:
                    raise ParseError("window line must come first", line=lineno)
                close_stage()
                current_threshold = float(parts[1])
                current = []
            elif parts[0] == "feat":
                if current is None:
                    raise ParseError("feat line outside a stage", line=lineno)
                kind = FeatureKind(parts[1])
                x, y, w, h = (int(v) for v in parts[2:6])
                threshold, polarity, vote = float(parts[6]), int(parts[7]), float(parts[8])
                bounds = TiltedRect(x, y, w, h) if kind is FeatureKind.TILTED else Rect(x, y, w, h)
                current.append(
                    StageFeature(HaarFeature(kind, bounds, window), threshold, polarity, vote)
                )
            else:
                raise ParseError(f"unknown directive {parts[0]!r}", line=lineno)
        except ParseError:
            raise
        except (IndexError, ValueError) as exc:
            raise ParseError(f"bad cascade line: {exc}", line=lineno) from None
    close_stage()
    if window is None:
        raise ParseError("cascade file has no window line")
    if not stages:
        raise ParseError("cascade file has no stages")
    return CascadeClassifier(window, tuple(stages))
