"""Keyframe ingestion: decode, grayscale conversion, denoising, binarization."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import kernels
from .errors import FormatError, ParameterError

# ITU-R BT.601 luma weights, rounded to nearest integer per pixel.
_LUMA = np.array([0.299, 0.587, 0.114])

DEFAULT_MEDIAN_KERNEL = 5
DEFAULT_BINARIZE_THRESHOLD = 220


@dataclass(frozen=True)
class RasterImage:
    """8-bit luminance raster, row-major."""

    pixels: np.ndarray  # uint8, shape (height, width)

    def __post_init__(self):
        if self.pixels.ndim != 2 or self.pixels.size == 0:
            raise ParameterError("raster must be a non-empty 2-D array")
        if self.pixels.dtype != np.uint8:
            raise ParameterError("raster must be uint8")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def load_grayscale(data: bytes) -> RasterImage:
    """Decode PNG (or any PIL-readable) bytes to an 8-bit luminance raster.

    Color images are converted with BT.601 weights rounded to nearest;
    alpha is composited over white first (line art lives on white paper).
    """
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise FormatError(f"cannot decode image: {exc}") from exc
    if img.mode == "P":
        img = img.convert("RGBA" if "transparency" in img.info else "RGB")
    if img.mode in ("RGBA", "LA"):
        bg = Image.new("RGBA", img.size, (255, 255, 255, 255))
        bg.alpha_composite(img.convert("RGBA"))
        img = bg.convert("RGB")
    if img.mode == "L":
        return RasterImage(np.asarray(img, dtype=np.uint8))
    if img.mode != "RGB":
        img = img.convert("RGB")
    rgb = np.asarray(img, dtype=np.float64)
    luma = np.rint(rgb @ _LUMA)
    return RasterImage(np.clip(luma, 0, 255).astype(np.uint8))


def median_denoise(img: RasterImage, kernel: int = DEFAULT_MEDIAN_KERNEL) -> RasterImage:
    """Median-filter the raster; borders are edge-replicated."""
    if kernel < 1 or kernel % 2 == 0:
        raise ParameterError(f"median kernel must be odd and >= 1, got {kernel}")
    return RasterImage(kernels.median_filter_u8(img.pixels, kernel))


def binarize(img: RasterImage, threshold: int = DEFAULT_BINARIZE_THRESHOLD) -> np.ndarray:
    """Boolean mask: True = closed-area candidate, False = ink.

    Pixels strictly above the threshold count as paper; the threshold value
    itself is ink, which keeps anti-aliased stroke edges attached to strokes.
    """
    return img.pixels > threshold
