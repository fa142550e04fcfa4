"""8-bit grayscale images and PGM (P5 binary / P2 ASCII) I/O."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ParseError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major 8-bit grayscale image; pixels[y, x] in 0..255."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("image must be a non-empty 2-D array")
        if arr.dtype != np.uint8:
            if np.any((arr < 0) | (arr > 255)):
                raise ValueError("pixel values must be in 0..255")
            arr = arr.astype(np.uint8)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def pixel(self, x: int, y: int) -> int:
        return int(self.pixels[y, x])


def _header_tokens(data: bytes):
    """Yield whitespace-separated header tokens, skipping # comments."""
    i = 0
    while i < len(data):
        c = data[i:i + 1]
        if c in b" \t\r\n":
            i += 1
            continue
        if c == b"#":
            while i < len(data) and data[i:i + 1] not in b"\r\n":
                i += 1
            continue
        j = i
        while j < len(data) and data[j:j + 1] not in b" \t\r\n":
            j += 1
        yield data[i:j].decode("ascii", "replace"), j
        i = j


def read_pgm(data: bytes) -> GrayImage:
    """Parse P5 (binary) or P2 (ASCII) PGM content with maxval <= 255."""
    tokens = _header_tokens(data)
    try:
        magic, _ = next(tokens)
    except StopIteration:
        raise ParseError("empty PGM data") from None
    if magic not in ("P5", "P2"):
        raise ParseError(f"unsupported PGM magic {magic!r}")
    try:
        (w_tok, _), (h_tok, _), (max_tok, end) = next(tokens), next(tokens), next(tokens)
        width, height, maxval = int(w_tok), int(h_tok), int(max_tok)
    except (StopIteration, ValueError):
        raise ParseError("malformed PGM header") from None
    if width < 1 or height < 1:
        raise ParseError("PGM dimensions must be positive")
    if not 0 < maxval <= 255:
        raise ParseError(f"unsupported PGM maxval {maxval} (need 1..255)")

    if magic == "P5":
        start = end + 1  # single whitespace byte after maxval
        raw = data[start:start + width * height]
        if len(raw) != width * height:
            raise ParseError("truncated PGM pixel data")
        arr = np.frombuffer(raw, dtype=np.uint8).reshape(height, width)
    else:
        values = []
        for tok, _ in _header_tokens(data[end:]):
            try:
                values.append(int(tok))
            except ValueError:
                raise ParseError(f"bad PGM sample {tok!r}") from None
        if len(values) != width * height:
            raise ParseError(
                f"expected {width * height} samples, got {len(values)}"
            )
        arr = np.array(values, dtype=np.int64).reshape(height, width)
        if arr.max(initial=0) > maxval:
            raise ParseError("PGM sample exceeds maxval")
    return GrayImage(arr)


def read_pgm_file(path) -> GrayImage:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def write_pgm(img: GrayImage, ascii_format: bool = False) -> bytes:
    if ascii_format:
        lines = [f"P2\n{img.width} {img.height}\n255\n"]
        for row in img.pixels:
            lines.append(" ".join(str(int(v)) for v in row) + "\n")
        return "".join(lines).encode("ascii")
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def write_pgm_file(img: GrayImage, path, ascii_format: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img, ascii_format))
