"""Exercise the detection kernels: integral images, Haar features, a tiny
cascade, and silhouette measurement, all on synthetic images."""

import numpy as np

from rsos.vision import (
    FeatureKind,
    GrayImage,
    HaarFeature,
    MeasureConfig,
    Rect,
    ScanParams,
    TiltedRect,
    Window,
    detect,
    estimate_measurements,
    feature_value,
    integral_image,
    load_cascade,
    rect_sum,
    rotated_integral_image,
)

# Rectangle sums in constant time once the prefix table exists.
rng = np.random.default_rng(7)
img = GrayImage(rng.integers(0, 256, size=(12, 12), dtype=np.uint8))
ii = integral_image(img)
print("sum over 5x4 rect @ (2,3):", rect_sum(ii, Rect(2, 3, 5, 4)))
print("same by direct slicing:   ", int(img.pixels[3:7, 2:7].sum()))

# A vertical edge makes a two-rect feature respond strongly; flat regions
# cancel to zero because the signed areas balance.
edge = np.zeros((8, 8), dtype=np.uint8)
edge[:, 4:] = 255
edge_img = GrayImage(edge)
feat = HaarFeature(FeatureKind.TWO_RECT_HORIZONTAL, Rect(0, 0, 8, 8), (8, 8))
value = feature_value(integral_image(edge_img), None, feat, Window(0, 0, 8, 8))
print("\ntwo-rect response on a step edge:", value)
flat = GrayImage(np.full((8, 8), 99, dtype=np.uint8))
print("two-rect response on a flat image:",
      feature_value(integral_image(flat), None, feat, Window(0, 0, 8, 8)))

# Tilted features need the 45-degree table.
rii = rotated_integral_image(img)
tilted = HaarFeature(FeatureKind.TILTED, TiltedRect(5, 0, 2, 2), (12, 12))
print("tilted feature value:", feature_value(ii, rii, tilted, Window(0, 0, 12, 12)))

# A two-feature cascade picks the one window containing an eyes-like block.
cascade = load_cascade("""
window 8 8
stage 2
feat two-rect-vertical 0 0 8 8 -3500 -1 1
feat three-rect 1 0 6 4 -3500 -1 1
""")
scene = np.full((24, 24), 128, dtype=np.uint8)
block = np.full((8, 8), 255, dtype=np.uint8)
block[0:4, 1:3] = 0
block[0:4, 5:7] = 0
scene[7:15, 9:17] = block
boxes = detect(GrayImage(scene), cascade, ScanParams(scale_factor=10, step=1))
print("\ndetections (x y w h score):")
for box in boxes:
    print("  " + box.line())

# Silhouette measurement: widths at fractional heights of the bounding box,
# girths as width * multiplier (pi/2 by default; 1.0 here for readability).
body = np.full((120, 80), 255, dtype=np.uint8)
body[10:110, 25:55] = 0  # 30 px wide rectangle "body"
m = estimate_measurements(GrayImage(body), ppcm=2.0, cfg=MeasureConfig(girth_multiplier=1.0))
print("\nmeasurements at 2 px/cm:")
for name, value in sorted(m.to_dict().items()):
    print(f"  {name}: {value}")
