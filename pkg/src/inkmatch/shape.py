"""Shape similarity between region masks.

The default scorer compares the seven log-scaled rotation/translation/scale
invariant moments of the two masks; scorers are interchangeable behind the
describe/similarity protocol so a keypoint-based scorer can be dropped in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

# Invariant magnitudes are clamped to this floor before log scaling, and a
# sub-floor value's sign is ignored. Rasterized near-symmetric shapes carry
# discretization noise up to ~1e-7 in the higher invariants; without the
# clamp that noise (and its sign) would dominate the distance.
MOMENT_FLOOR = 3e-7


def hu_moments(mask: np.ndarray) -> np.ndarray:
    """The seven moment invariants of a boolean mask."""
    ys, xs = np.nonzero(mask)
    m00 = float(ys.size)
    out = np.zeros(7)
    if m00 == 0.0:
        return out
    x = xs - xs.mean()
    y = ys - ys.mean()
    x2, y2 = x * x, y * y

    def eta(moment: np.ndarray, order: int) -> float:
        return float(moment.sum()) / m00 ** (1 + order / 2)

    n20, n02, n11 = eta(x2, 2), eta(y2, 2), eta(x * y, 2)
    n30, n03 = eta(x2 * x, 3), eta(y2 * y, 3)
    n21, n12 = eta(x2 * y, 3), eta(x * y2, 3)

    a = n30 + n12
    b = n21 + n03
    c = n30 - 3 * n12
    d = 3 * n21 - n03

    out[0] = n20 + n02
    out[1] = (n20 - n02) ** 2 + 4 * n11**2
    out[2] = c**2 + d**2
    out[3] = a**2 + b**2
    out[4] = c * a * (a**2 - 3 * b**2) + d * b * (3 * a**2 - b**2)
    out[5] = (n20 - n02) * (a**2 - b**2) + 4 * n11 * a * b
    out[6] = d * a * (a**2 - 3 * b**2) - c * b * (3 * a**2 - b**2)
    return out


def log_scaled(hu: np.ndarray) -> np.ndarray:
    """-sign(h) * log10(max(|h|, floor)); sub-floor values count as +floor."""
    mag = np.maximum(np.abs(hu), MOMENT_FLOOR)
    sign = np.where(np.abs(hu) > MOMENT_FLOOR, np.sign(hu), 1.0)
    return -sign * np.log10(mag)


@dataclass(frozen=True)
class ShapeDescriptor:
    area: int
    signature: np.ndarray  # log-scaled invariants, shape (7,)


class ShapeScorer(Protocol):
    name: str

    def describe(self, mask: np.ndarray) -> ShapeDescriptor: ...

    def similarity(self, a: ShapeDescriptor, b: ShapeDescriptor) -> float: ...


class MomentShapeScorer:
    """1 / (1 + L1 distance of log-scaled moment invariants)."""

    name = "moments"

    def describe(self, mask: np.ndarray) -> ShapeDescriptor:
        return ShapeDescriptor(int(np.count_nonzero(mask)), log_scaled(hu_moments(mask)))

    def similarity(self, a: ShapeDescriptor, b: ShapeDescriptor) -> float:
        if a.area == 0 or b.area == 0:
            return 0.0
        if a.area == 1 or b.area == 1:
            # single-pixel masks have no usable moments: fall back to area ratio
            return min(a.area, b.area) / max(a.area, b.area)
        return float(1.0 / (1.0 + np.abs(a.signature - b.signature).sum()))


SHAPE_SCORERS: dict[str, type] = {MomentShapeScorer.name: MomentShapeScorer}


def get_scorer(name: str) -> ShapeScorer:
    try:
        return SHAPE_SCORERS[name]()
    except KeyError:
        raise KeyError(f"unknown shape scorer {name!r}; known: {sorted(SHAPE_SCORERS)}") from None
