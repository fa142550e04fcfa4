"""Body measurements from a binarized silhouette.

The silhouette is thresholded out of the grayscale image, its bounding box
located, and widths are read at configured fractional heights of the box;
vertical measurements are fractional-height spans. True circumferences are
unobservable from a single view, so girth fields report width times a
configurable multiplier (default pi/2, the half-ellipse model); manually
entered values always win over detected ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields as dc_fields
from typing import Mapping

import numpy as np

from .image import GrayImage

MEASUREMENT_FIELDS = (
    "bust",
    "waist",
    "hips",
    "back_width",
    "front_chest",
    "shoulder",
    "sleeve",
    "wrist",
    "upper_arm",
    "calf",
    "ankle",
    "nape_to_waist",
    "front_shoulder_to_waist",
    "outside_leg",
)

SOURCES = ("detected", "manual", "mixed")


@dataclass(frozen=True)
class BodyMeasurements:
    """Lengths in centimeters; None means unmeasured.

    Zero is a legal length (the reference sizing data uses 0 for the sleeve
    of a sleeveless one-piece), so presence is signalled by None only.
    """

    bust: float | None = None
    waist: float | None = None
    hips: float | None = None
    back_width: float | None = None
    front_chest: float | None = None
    shoulder: float | None = None
    sleeve: float | None = None
    wrist: float | None = None
    upper_arm: float | None = None
    calf: float | None = None
    ankle: float | None = None
    nape_to_waist: float | None = None
    front_shoulder_to_waist: float | None = None
    outside_leg: float | None = None
    source: str = "manual"

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"source must be one of {SOURCES}")
        for f in dc_fields(self):
            if f.name == "source":
                continue
            v = getattr(self, f.name)
            if v is not None and v < 0:
                raise ValueError(f"{f.name} must be >= 0, got {v}")

    def to_dict(self, include_none: bool = False) -> dict:
        out = {}
        for name in MEASUREMENT_FIELDS:
            v = getattr(self, name)
            if v is not None or include_none:
                out[name] = v
        out["source"] = self.source
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "BodyMeasurements":
        unknown = set(data) - set(MEASUREMENT_FIELDS) - {"source"}
        if unknown:
            raise ValueError(f"unknown measurement field(s): {sorted(unknown)}")
        kwargs = {k: data[k] for k in MEASUREMENT_FIELDS if data.get(k) is not None}
        for k, v in kwargs.items():
            kwargs[k] = float(v)
        return cls(source=data.get("source", "manual"), **kwargs)


def merge_measurements(detected: BodyMeasurements, manual: BodyMeasurements) -> BodyMeasurements:
    """Field-wise overlay: a manual value beats a detected one."""
    values = {}
    used_detected = used_manual = False
    for name in MEASUREMENT_FIELDS:
        m, d = getattr(manual, name), getattr(detected, name)
        if m is not None:
            values[name] = m
            used_manual = True
        elif d is not None:
            values[name] = d
            used_detected = True
    if used_detected and used_manual:
        source = "mixed"
    elif used_detected:
        source = "detected"
    else:
        source = "manual"
    return BodyMeasurements(source=source, **values)


# Fractional rows of the silhouette bounding box where widths are read, and
# which fields are girths (width * multiplier) rather than plain widths.
DEFAULT_ROWS: Mapping[str, float] = {
    "shoulder": 0.17,
    "back_width": 0.20,
    "front_chest": 0.23,
    "bust": 0.25,
    "upper_arm": 0.30,
    "waist": 0.40,
    "wrist": 0.47,
    "hips": 0.52,
    "calf": 0.80,
    "ankle": 0.95,
}

GIRTH_FIELDS = frozenset({"bust", "waist", "hips", "wrist", "upper_arm", "calf", "ankle"})

DEFAULT_SPANS: Mapping[str, tuple[float, float]] = {
    "nape_to_waist": (0.12, 0.40),
    "front_shoulder_to_waist": (0.17, 0.40),
    "sleeve": (0.17, 0.47),
    "outside_leg": (0.40, 1.0),
}


class NoForegroundError(ValueError):
    """The thresholded image contains no silhouette pixels."""


@dataclass(frozen=True)
class MeasureConfig:
    threshold: int = 128
    foreground: str = "dark"  # silhouette darker or lighter than background
    girth_multiplier: float = math.pi / 2
    rows: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_ROWS))
    spans: Mapping[str, tuple[float, float]] = field(
        default_factory=lambda: dict(DEFAULT_SPANS)
    )

    def __post_init__(self):
        if self.foreground not in ("dark", "light"):
            raise ValueError("foreground must be 'dark' or 'light'")
        if not 0 <= self.threshold <= 255:
            raise ValueError("threshold must be in 0..255")
        if self.girth_multiplier <= 0:
            raise ValueError("girth_multiplier must be > 0")


def estimate_measurements(
    img: GrayImage, ppcm: float, cfg: MeasureConfig | None = None
) -> BodyMeasurements:
    """Estimate measurements from a silhouette at ``ppcm`` pixels per cm."""
    if ppcm is None or ppcm <= 0:
        raise ValueError("calibration (pixels per centimeter) must be > 0")
    cfg = cfg or MeasureConfig()
    if cfg.foreground == "dark":
        mask = img.pixels < cfg.threshold
    else:
        mask = img.pixels >= cfg.threshold
    if not mask.any():
        raise NoForegroundError("no foreground silhouette found")

    rows_any = np.flatnonzero(mask.any(axis=1))
    top, bottom = int(rows_any[0]), int(rows_any[-1])
    box_h = bottom - top

    def row_at(frac: float) -> int:
        return top + round(frac * box_h)

    values: dict[str, float] = {}
    for name, frac in cfg.rows.items():
        xs = np.flatnonzero(mask[row_at(frac)])
        if xs.size == 0:
            continue  # silhouette absent at this height: leave unmeasured
        width_px = int(xs[-1]) - int(xs[0]) + 1
        cm = width_px / ppcm
        if name in GIRTH_FIELDS:
            cm *= cfg.girth_multiplier
        values[name] = cm
    for name, (fa, fb) in cfg.spans.items():
        span_px = row_at(fb) - row_at(fa)
        if span_px > 0:
            values[name] = span_px / ppcm
    return BodyMeasurements(source="detected", **values)
