"""Per-pixel reference computations for the vision kernels.

Everything loops over raw pixels; none of it touches the package's prefix
tables, so disagreements point at the fast paths.
"""

import numpy as np


def brute_prefix(pixels: np.ndarray, x: int, y: int) -> int:
    total = 0
    for py in range(y + 1):
        for px in range(x + 1):
            total += int(pixels[py, px])
    return total


def brute_rect_sum(pixels: np.ndarray, x: int, y: int, w: int, h: int) -> int:
    total = 0
    for py in range(y, y + h):
        for px in range(x, x + w):
            total += int(pixels[py, px])
    return total


def brute_pyramid(pixels: np.ndarray, x: int, y: int) -> int:
    hgt, wdt = pixels.shape
    total = 0
    for py in range(min(y, hgt - 1) + 1):
        for px in range(wdt):
            if abs(px - x) <= y - py:
                total += int(pixels[py, px])
    return total


def tilted_pixels(x: int, y: int, w: int, h: int, shape) -> list[tuple[int, int]]:
    """Rasterize the tilted rect: 0 < (dx+dy) <= 2w and 0 < (dy-dx) <= 2h."""
    hgt, wdt = shape
    out = []
    for py in range(hgt):
        for px in range(wdt):
            a = (px - x) + (py - y)
            b = (py - y) - (px - x)
            if 0 < a <= 2 * w and 0 < b <= 2 * h:
                out.append((px, py))
    return out


def brute_tilted_sum(pixels: np.ndarray, x: int, y: int, w: int, h: int) -> int:
    return sum(int(pixels[py, px]) for px, py in tilted_pixels(x, y, w, h, pixels.shape))


def brute_feature_value(pixels: np.ndarray, feature, window) -> int:
    """Evaluate a Haar feature by summing its parts pixel by pixel."""
    from rsos.vision.haar import FeatureKind

    total = 0
    if feature.kind is FeatureKind.TILTED:
        for t, weight in feature.scaled_parts(window.w, window.h):
            total += weight * brute_tilted_sum(
                pixels, t.x + window.x, t.y + window.y, t.w, t.h
            )
        return total
    for r, weight in feature.scaled_parts(window.w, window.h):
        total += weight * brute_rect_sum(pixels, r.x + window.x, r.y + window.y, r.w, r.h)
    return total


def brute_passing_windows(pixels: np.ndarray, cascade, sizes, step):
    """Every window placement passing all stages, by direct evaluation."""
    from rsos.vision.haar import Window

    hgt, wdt = pixels.shape
    passing = []
    for w, h in sizes:
        for y in range(0, hgt - h + 1, step):
            for x in range(0, wdt - w + 1, step):
                ok = True
                for stage in cascade.stages:
                    votes = sum(
                        sf.vote
                        for sf in stage.features
                        if sf.fires(
                            brute_feature_value(pixels, sf.feature, Window(x, y, w, h))
                        )
                    )
                    if votes < stage.threshold:
                        ok = False
                        break
                if ok:
                    passing.append((x, y, w, h))
    return passing


# -- synthetic detection fixture ---------------------------------------------

EYES_CASCADE_TEXT = """\
# dark-eyes / light-cheeks block pattern, 8x8 base window
window 8 8
stage 2
feat two-rect-vertical 0 0 8 8 -3500 -1 1
feat three-rect 1 0 6 4 -3500 -1 1
"""


def eyes_pattern_image(x0: int, y0: int, width: int = 24, height: int = 24,
                       background: int = 128) -> np.ndarray:
    """Embed the 8x8 pattern the EYES_CASCADE fires on at (x0, y0)."""
    pixels = np.full((height, width), background, dtype=np.uint8)
    block = np.full((8, 8), 255, dtype=np.uint8)
    block[0:4, 1:3] = 0   # left eye
    block[0:4, 5:7] = 0   # right eye
    pixels[y0:y0 + 8, x0:x0 + 8] = block
    return pixels
