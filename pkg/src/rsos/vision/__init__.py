"""Image detection kernels: integral images, Haar features, cascades,
sliding-window detection, and silhouette measurement."""

from .image import GrayImage, read_pgm, read_pgm_file, write_pgm, write_pgm_file
from .integral import (
    IntegralImage,
    Rect,
    RotatedIntegralImage,
    TiltedRect,
    integral_image,
    rect_sum,
    rotated_integral_image,
    tilted_rect_sum,
)
from .haar import (
    CascadeClassifier,
    FeatureKind,
    HaarFeature,
    Stage,
    StageFeature,
    Window,
    feature_value,
    load_cascade,
)
from .detect import Detection, ScanParams, detect, group_detections, iou
from .measure import (
    BodyMeasurements,
    MEASUREMENT_FIELDS,
    MeasureConfig,
    NoForegroundError,
    estimate_measurements,
    merge_measurements,
)

__all__ = [
    "GrayImage",
    "read_pgm",
    "read_pgm_file",
    "write_pgm",
    "write_pgm_file",
    "IntegralImage",
    "RotatedIntegralImage",
    "Rect",
    "TiltedRect",
    "integral_image",
    "rect_sum",
    "rotated_integral_image",
    "tilted_rect_sum",
    "HaarFeature",
    "FeatureKind",
    "Window",
    "feature_value",
    "Stage",
    "StageFeature",
    "CascadeClassifier",
    "load_cascade",
    "ScanParams",
    "Detection",
    "detect",
    "group_detections",
    "iou",
    "BodyMeasurements",
    "MEASUREMENT_FIELDS",
    "MeasureConfig",
    "NoForegroundError",
    "estimate_measurements",
    "merge_measurements",
]
