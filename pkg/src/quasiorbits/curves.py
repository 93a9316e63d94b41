"""Sampled Jordan curves: generators, transforms, and file I/O.

Curves are finite cyclic samplings with strictly increasing parameters in
[0, 2pi).  Simplicity is only ever checked at sampling scale (no two
non-adjacent edges of the polyline intersect, tested in the finite chart);
curves through infinity carry at most one infinite sample and skip that
check.
"""

from __future__ import annotations

import math

import numpy as np
from shapely.geometry import LineString

from . import moebius as mb
from .sphere import INFINITY, SpherePoint, chordal_distance, embed_array

__all__ = [
    "SampledCurve",
    "CurveError",
    "cardioid",
    "cusp_ratio",
    "circle",
    "affine_image",
    "moebius_image",
    "write_curve_file",
    "read_curve_file",
]

MIN_SAMPLES = 8


class CurveError(ValueError):
    """A sampled-curve invariant failed."""


def _cardioid_point(theta: float) -> complex:
    r = 1.0 - math.cos(theta)
    return complex(r * math.cos(theta), r * math.sin(theta))


class SampledCurve:
    """Cyclically ordered samples of a Jordan curve.

    Stores the samples as a complex array plus an infinity mask; individual
    samples are exposed as SpherePoint values.  Instances are immutable by
    convention: transforms return new curves.
    """

    def __init__(self, z, infinite, params, label="", check_simple=True):
        z = np.asarray(z, dtype=complex)
        infinite = np.asarray(infinite, dtype=bool)
        params = np.asarray(params, dtype=float)
        if z.ndim != 1 or z.shape != infinite.shape or z.shape != params.shape:
            raise CurveError("points, infinity mask and params must be 1-d and aligned")
        n = len(z)
        if n < MIN_SAMPLES:
            raise CurveError(f"need at least {MIN_SAMPLES} samples, got {n}")
        if not (np.isfinite(z.real).all() and np.isfinite(z.imag).all()):
            raise CurveError("non-finite complex values; use the infinity mask instead")
        if int(infinite.sum()) > 1:
            raise CurveError("a sampled curve carries at most one infinite sample")
        if infinite.any():
            z = np.where(infinite, 0.0, z)  # one representation per point
        if np.any(np.diff(params) <= 0.0):
            raise CurveError("params must be strictly increasing")
        if params[0] < 0.0 or params[-1] >= 2.0 * math.pi:
            raise CurveError("params must lie in [0, 2*pi)")
        # consecutive samples distinct on the sphere (cyclically)
        nxt = np.roll(np.arange(n), -1)
        same_kind = infinite == infinite[nxt]
        coincide = same_kind & (infinite | (z == z[nxt]))
        if coincide.any():
            k = int(np.nonzero(coincide)[0][0])
            raise CurveError(f"consecutive samples {k} and {(k + 1) % n} coincide")
        self._z = z
        self._z.setflags(write=False)
        self._infinite = infinite
        self._infinite.setflags(write=False)
        self._params = params
        self._params.setflags(write=False)
        self.label = str(label)
        if check_simple and not infinite.any():
            if not self._is_simple():
                raise CurveError(f"curve {label!r} self-intersects at sampling scale")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_points(cls, points, params, label="", check_simple=True):
        z = np.zeros(len(points), dtype=complex)
        inf = np.zeros(len(points), dtype=bool)
        for i, p in enumerate(points):
            if isinstance(p, SpherePoint):
                if p.is_infinite:
                    inf[i] = True
                else:
                    z[i] = p.value
            else:
                z[i] = complex(p)
        return cls(z, inf, params, label=label, check_simple=check_simple)

    # -- basic access ----------------------------------------------------------

    def __len__(self):
        return len(self._z)

    @property
    def values(self) -> np.ndarray:
        return self._z

    @property
    def infinite_mask(self) -> np.ndarray:
        return self._infinite

    @property
    def params(self) -> np.ndarray:
        return self._params

    @property
    def has_infinite(self) -> bool:
        return bool(self._infinite.any())

    def point(self, i: int) -> SpherePoint:
        if self._infinite[i]:
            return INFINITY
        return SpherePoint.finite(self._z[i])

    def points(self):
        return [self.point(i) for i in range(len(self))]

    def euclidean_coords(self) -> np.ndarray:
        """(n, 2) plane coordinates; demands a curve without infinite samples."""
        if self.has_infinite:
            raise CurveError("curve passes through infinity; no plane coordinates")
        return np.stack([self._z.real, self._z.imag], axis=1)

    def embedded_coords(self) -> np.ndarray:
        """(n, 3) coordinates on the unit sphere (chordal chart)."""
        return embed_array(self._z, self._infinite)

    def _is_simple(self) -> bool:
        pts = self.euclidean_coords()
        ring = LineString(np.vstack([pts, pts[:1]]))
        return bool(ring.is_simple)

    def is_simple_at_sampling_scale(self) -> bool:
        """Planar check; vacuously true for curves through infinity."""
        if self.has_infinite:
            return True
        return self._is_simple()

    def __repr__(self):
        return f"SampledCurve(n={len(self)}, label={self.label!r})"


# -- generators ----------------------------------------------------------------


def _graded_thetas(n: int, exponent: float) -> np.ndarray:
    """Parameter grid on [0, 2pi), symmetric about 0, graded toward the origin.

    Spacing of the first step scales like (2pi/n)**exponent, so exponent 1 is
    the uniform grid.
    """
    u = 2.0 * math.pi * np.arange(n) / n
    if exponent == 1.0:
        return u
    half = u <= math.pi
    th = np.empty_like(u)
    th[half] = math.pi * (u[half] / math.pi) ** exponent
    th[~half] = 2.0 * math.pi - math.pi * ((2.0 * math.pi - u[~half]) / math.pi) ** exponent
    return th


def cardioid(n: int, cusp_exponent: float = 1.0) -> SampledCurve:
    """The cardioid r = 1 - cos(theta), sampled with optional cusp grading.

    cusp_exponent 1 samples uniformly in theta; larger exponents concentrate
    samples near the cusp at the origin (first spacing ~ (2pi/n)**exponent),
    which makes the turning constant diverge faster with resolution.
    """
    if n < MIN_SAMPLES:
        raise CurveError(f"need at least {MIN_SAMPLES} samples, got {n}")
    if cusp_exponent < 1.0:
        raise ValueError("cusp_exponent must be >= 1")
    th = _graded_thetas(n, cusp_exponent)
    r = 1.0 - np.cos(th)
    z = r * np.cos(th) + 1j * r * np.sin(th)
    label = f"cardioid(n={n},e={cusp_exponent:g})"
    return SampledCurve(z, np.zeros(n, bool), th, label=label)


def cusp_ratio(theta: float) -> float:
    """|z(theta) - z(0)| / |z(theta) - z(-theta)| on the cardioid.

    Evaluated directly from the parametrization; grows like 1/(2 theta) as
    theta -> 0, which is the three-point-condition violation at the cusp.
    """
    if not 0.0 < theta:
        raise ValueError("theta must be positive (denominator vanishes at 0)")
    z0 = _cardioid_point(0.0)
    zp = _cardioid_point(theta)
    zm = _cardioid_point(-theta)
    return abs(zp - z0) / abs(zp - zm)


def circle(center, radius: float, n: int) -> SampledCurve:
    """Round Euclidean circle, uniform angular sampling."""
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    if n < MIN_SAMPLES:
        raise CurveError(f"need at least {MIN_SAMPLES} samples, got {n}")
    if isinstance(center, SpherePoint):
        if center.is_infinite:
            raise ValueError("circle center must be finite")
        center = center.value
    center = complex(center)
    th = 2.0 * math.pi * np.arange(n) / n
    z = center + radius * np.exp(1j * th)
    label = f"circle(c={center:.6g},r={radius:g},n={n})"
    return SampledCurve(z, np.zeros(n, bool), th, label=label)


# -- transforms ------------------------------------------------------------------


def affine_image(c: SampledCurve, a, b=0.0) -> SampledCurve:
    """Pointwise z -> a z + b (a != 0); params and label carried over."""
    a, b = complex(a), complex(b)
    if a == 0:
        raise ValueError("affine coefficient a must be nonzero (not injective)")
    if c.has_infinite:
        raise CurveError("affine_image requires a curve without infinite samples")
    return SampledCurve(a * c.values + b, c.infinite_mask.copy(), c.params, label=c.label)


def moebius_image(c: SampledCurve, m: mb.MoebiusMap) -> SampledCurve:
    """Pointwise Moebius action; re-checks sampling-scale simplicity when finite."""
    z, inf = mb.apply_to_array(m, c.values, c.infinite_mask)
    return SampledCurve(z, inf, c.params, label=c.label)


# -- file format -------------------------------------------------------------------
#
# line 1: the label; then one line per sample, "param re im" or "param inf".


def write_curve_file(path, c: SampledCurve) -> None:
    with open(path, "w") as fh:
        fh.write(c.label + "\n")
        for i in range(len(c)):
            if c.infinite_mask[i]:
                fh.write(f"{c.params[i]:.17g} inf\n")
            else:
                z = c.values[i]
                fh.write(f"{c.params[i]:.17g} {z.real:.17g} {z.imag:.17g}\n")


def read_curve_file(path) -> SampledCurve:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise CurveError(f"empty curve file {path}")
    label = lines[0]
    params, z, inf = [], [], []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        parts = ln.split()
        params.append(float(parts[0]))
        if parts[1] == "inf":
            z.append(0.0)
            inf.append(True)
        else:
            z.append(complex(float(parts[1]), float(parts[2])))
            inf.append(False)
    return SampledCurve(np.array(z), np.array(inf), np.array(params), label=label)
