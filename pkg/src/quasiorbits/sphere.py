"""Riemann-sphere points and the chordal metric.

A point is either a finite complex number or the point at infinity.  The
chordal metric is normalized so the sphere has diameter 2 (antipodal points,
e.g. 0 and infinity, are at distance exactly 2).  Chordal distance equals
Euclidean distance between the images of the points on the unit 2-sphere in
R^3, which is also how bulk computations are vectorized downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpherePoint",
    "INFINITY",
    "chordal_distance",
    "euclidean_distance",
    "embed",
    "embed_array",
]


@dataclass(frozen=True)
class SpherePoint:
    """A point of the Riemann sphere: a finite complex value or infinity.

    ``value`` is None exactly when the point is infinite.  Finite values with
    huge modulus (even beyond 1e150) are kept exact and never promoted to
    infinity.
    """

    value: complex | None = None

    def __post_init__(self):
        if self.value is not None:
            v = complex(self.value)
            if math.isnan(v.real) or math.isnan(v.imag):
                raise ValueError("finite sphere point must not contain NaN")
            if math.isinf(v.real) or math.isinf(v.imag):
                raise ValueError(
                    "non-representable magnitude; construct the infinite point explicitly"
                )
            object.__setattr__(self, "value", v)

    @classmethod
    def finite(cls, z) -> "SpherePoint":
        return cls(complex(z))

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __repr__(self):
        if self.is_infinite:
            return "SpherePoint(inf)"
        return f"SpherePoint({self.value!r})"


INFINITY = SpherePoint.infinity()


def _as_point(p) -> SpherePoint:
    if isinstance(p, SpherePoint):
        return p
    return SpherePoint.finite(p)


def chordal_distance(p, q) -> float:
    """Chordal distance on the Riemann sphere, in [0, 2].

    2|p-q| / sqrt((1+|p|^2)(1+|q|^2)) for finite points; 2/sqrt(1+|p|^2)
    when exactly one argument is infinite; 0 when both are.
    """
    p, q = _as_point(p), _as_point(q)
    if p.is_infinite and q.is_infinite:
        return 0.0
    if p.is_infinite:
        return 2.0 / math.hypot(1.0, abs(q.value))
    if q.is_infinite:
        return 2.0 / math.hypot(1.0, abs(p.value))
    # hypot keeps the denominators finite even for |p| near the double limit
    return 2.0 * abs(p.value - q.value) / (
        math.hypot(1.0, abs(p.value)) * math.hypot(1.0, abs(q.value))
    )


def euclidean_distance(p, q) -> float:
    """Plane distance |p-q|; math.inf when either point is infinite."""
    p, q = _as_point(p), _as_point(q)
    if p.is_infinite or q.is_infinite:
        return math.inf
    return abs(p.value - q.value)


def embed(p) -> np.ndarray:
    """Image of a sphere point on the unit 2-sphere in R^3.

    z -> (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2), infinity -> (0, 0, 1).
    Chordal distance between points equals the Euclidean distance between
    their embeddings.
    """
    p = _as_point(p)
    if p.is_infinite:
        return np.array([0.0, 0.0, 1.0])
    z = p.value
    if abs(z) <= 1.0:
        s = 1.0 + (z.real * z.real + z.imag * z.imag)
        return np.array([2.0 * z.real / s, 2.0 * z.imag / s, (abs(z) ** 2 - 1.0) / s])
    # invert through w = 1/z so the squares never overflow
    w = 1.0 / z
    s = 1.0 + (w.real * w.real + w.imag * w.imag)
    return np.array([2.0 * w.real / s, -2.0 * w.imag / s, (1.0 - abs(w) ** 2) / s])


def embed_array(z: np.ndarray, infinite: np.ndarray | None = None) -> np.ndarray:
    """Vectorized embed: complex array (+ optional infinity mask) -> (n, 3)."""
    z = np.asarray(z, dtype=complex)
    if infinite is None:
        infinite = np.zeros(z.shape, dtype=bool)
    big = (np.abs(z) > 1.0) & ~infinite
    out = np.empty(z.shape + (3,), dtype=float)
    # direct chart |z| <= 1
    zz = np.where(big | infinite, 0.0, z)
    s = 1.0 + np.abs(zz) ** 2
    out[..., 0] = 2.0 * zz.real / s
    out[..., 1] = 2.0 * zz.imag / s
    out[..., 2] = (np.abs(zz) ** 2 - 1.0) / s
    # inverted chart |z| > 1, through w = 1/z so squares never overflow
    if big.any():
        w = 1.0 / np.where(big, z, 1.0)
        sw = 1.0 + np.abs(w) ** 2
        out[..., 0] = np.where(big, 2.0 * w.real / sw, out[..., 0])
        out[..., 1] = np.where(big, -2.0 * w.imag / sw, out[..., 1])
        out[..., 2] = np.where(big, (1.0 - np.abs(w) ** 2) / sw, out[..., 2])
    out[infinite] = (0.0, 0.0, 1.0)
    return out
