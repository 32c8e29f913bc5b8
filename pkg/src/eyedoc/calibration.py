"""Affine calibration between tracker space and screen space.

The map is x' = a*x + b*y + c, y' = d*x + e*y + f. Hardware backends
usually calibrate internally, so the identity map is the default; the
fit exists for adapters delivering uncalibrated points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from eyedoc.errors import DegenerateCalibration, InsufficientCalibration
from eyedoc.samples import GazeSample

Point = tuple[float, float]


@dataclass(frozen=True)
class Calibration:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    @classmethod
    def identity(cls) -> "Calibration":
        return cls(1.0, 0.0, 0.0, 0.0, 1.0, 0.0)

    @property
    def determinant(self) -> float:
        return self.a * self.e - self.b * self.d

    def is_invertible(self) -> bool:
        return self.determinant != 0.0

    def map_point(self, x: float, y: float) -> Point:
        return (self.a * x + self.b * y + self.c, self.d * x + self.e * y + self.f)

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)


def fit_calibration(pairs: Sequence[tuple[Point, Point]]) -> Calibration:
    """Least-squares affine fit from (raw, screen) point pairs.

    Exact for noiseless affine data. Raises InsufficientCalibration for
    fewer than 3 pairs and DegenerateCalibration when the raw points are
    collinear (the normal equations are singular).
    """
    if len(pairs) < 3:
        raise InsufficientCalibration(f"need at least 3 pairs, got {len(pairs)}")
    raw = np.array([p[0] for p in pairs], dtype=float)
    screen = np.array([p[1] for p in pairs], dtype=float)

    centered = raw - raw.mean(axis=0)
    if np.linalg.matrix_rank(centered, tol=1e-9 * max(1.0, float(np.abs(raw).max()))) < 2:
        raise DegenerateCalibration("raw points are collinear")

    design = np.column_stack([raw, np.ones(len(pairs))])
    coeffs, _, _, _ = np.linalg.lstsq(design, screen, rcond=None)
    (a, d), (b, e), (c, f) = coeffs
    return Calibration(float(a), float(b), float(c), float(d), float(e), float(f))


def apply_calibration(cal: Calibration, s: GazeSample) -> GazeSample:
    """Maps a valid sample's coordinates; invalid samples pass through."""
    if not s.valid:
        return s
    x, y = cal.map_point(s.x, s.y)
    return GazeSample.point(s.t_ms, x, y)
