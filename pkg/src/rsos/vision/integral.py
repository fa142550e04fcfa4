"""Integral images: constant-time rectangle sums, upright and 45-degree.

The upright table stores inclusive prefix sums; an axis-aligned rectangle
sum is the usual four-corner combination. The rotated table stores, for each
coordinate, the sum over the 45-degree pyramid opening upward from it:

    pyramid(x, y) = sum of pixels (x', y') with y' <= y and |x' - x| <= y - y'

A tilted rectangle is anchored at (x, y) and measured in diagonal units:
``w`` steps down-right and ``h`` steps down-left. Writing a = (px-x)+(py-y)
and b = (py-y)-(px-x), its pixels are exactly 0 < a <= 2w, 0 < b <= 2h
(2*w*h pixels in total; the anchor itself is excluded), and its sum is a
four-corner combination of pyramid values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import GrayImage


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle: origin (x, y), size w x h, all in pixels."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def area(self) -> int:
        return self.w * self.h


@dataclass(frozen=True, eq=False)
class IntegralImage:
    """Inclusive prefix sums: sums[y, x] = sum of pixels[:y+1, :x+1]."""

    sums: np.ndarray
    _padded: np.ndarray

    @property
    def height(self) -> int:
        return self.sums.shape[0]

    @property
    def width(self) -> int:
        return self.sums.shape[1]


def integral_image(img: GrayImage) -> IntegralImage:
    padded = np.zeros((img.height + 1, img.width + 1), dtype=np.int64)
    np.cumsum(np.cumsum(img.pixels, axis=0, dtype=np.int64), axis=1, out=padded[1:, 1:])
    return IntegralImage(sums=padded[1:, 1:], _padded=padded)


def rect_sum(ii: IntegralImage, rect: Rect) -> int:
    """Exact pixel sum over ``rect`` from four table lookups."""
    if rect.x < 0 or rect.y < 0 or rect.x + rect.w > ii.width or rect.y + rect.h > ii.height:
        raise ValueError(f"{rect} out of {ii.width}x{ii.height} image bounds")
    p = ii._padded
    x0, y0, x1, y1 = rect.x, rect.y, rect.x + rect.w, rect.y + rect.h
    return int(p[y1, x1] - p[y0, x1] - p[y1, x0] + p[y0, x0])


@dataclass(frozen=True, eq=False)
class RotatedIntegralImage:
    """Pyramid sums for 45-degree rectangle queries.

    ``sums[y, x]`` is the pyramid value at in-image coordinates; the wider
    internal table also covers the out-of-image x range that four-corner
    queries touch.
    """

    sums: np.ndarray
    _table: np.ndarray
    _offset: int

    @property
    def height(self) -> int:
        return self.sums.shape[0]

    @property
    def width(self) -> int:
        return self.sums.shape[1]

    def pyramid_sum(self, x: int, y: int) -> int:
        if y < 0:
            return 0
        if y >= self.height:
            raise ValueError(f"pyramid query row {y} below image")
        col = x + self._offset
        if col < 0 or col >= self._table.shape[1]:
            return 0  # pyramid entirely outside the image
        return int(self._table[y, col])


def rotated_integral_image(img: GrayImage) -> RotatedIntegralImage:
    h, w = img.height, img.width
    offset = h  # x range [-h, w+h-1] covers every pyramid that meets the image
    cols = w + 2 * h
    table = np.zeros((h, cols), dtype=np.int64)
    ext = np.zeros((h, cols), dtype=np.int64)
    ext[:, offset:offset + w] = img.pixels

    # pyramid(x, y) = pyramid(x-1, y-1) + pyramid(x+1, y-1) - pyramid(x, y-2)
    #                 + pixel(x, y) + pixel(x, y-1)
    for y in range(h):
        row = ext[y].copy()
        if y >= 1:
            prev = table[y - 1]
            row[1:] += prev[:-1]
            row[:-1] += prev[1:]
            row += ext[y - 1]
        if y >= 2:
            row -= table[y - 2]
        table[y] = row
    return RotatedIntegralImage(
        sums=table[:, offset:offset + w], _table=table, _offset=offset
    )


@dataclass(frozen=True)
class TiltedRect:
    """45-degree rectangle: anchor (x, y), diagonal extents w (down-right)
    and h (down-left); covers 2*w*h pixels strictly below the anchor."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"degenerate tilted rectangle {self}")

    def pixel_bounds(self) -> tuple[int, int, int, int]:
        """(min_x, min_y, max_x, max_y) of the covered pixels, inclusive."""
        return (self.x - self.h + 1, self.y + 1, self.x + self.w - 1, self.y + self.w + self.h)

    def covers(self, px: int, py: int) -> bool:
        a = (px - self.x) + (py - self.y)
        b = (py - self.y) - (px - self.x)
        return 0 < a <= 2 * self.w and 0 < b <= 2 * self.h


def tilted_rect_sum(rii: RotatedIntegralImage, rect: TiltedRect) -> int:
    """Exact pixel sum over a tilted rectangle from four pyramid lookups."""
    min_x, min_y, max_x, max_y = rect.pixel_bounds()
    if min_x < 0 or min_y < 0 or max_x >= rii.width or max_y >= rii.height:
        raise ValueError(f"{rect} out of {rii.width}x{rii.height} image bounds")
    x, y, w, h = rect.x, rect.y, rect.w, rect.h
    return int(
        rii.pyramid_sum(x + w - h, y + w + h)
        - rii.pyramid_sum(x + w, y + w)
        - rii.pyramid_sum(x - h, y + h)
        + rii.pyramid_sum(x, y)
    )
