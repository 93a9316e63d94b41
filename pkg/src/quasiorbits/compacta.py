"""Finite point clouds standing in for compact subsets of the sphere.

A cloud carries a resolution epsilon: the represented compact set lies within
chordal distance epsilon of the stored points, so the Hausdorff distance
computed here differs from the true one by at most the sum of the two
epsilons.  All distances are chordal, computed as Euclidean distances between
the unit-sphere embeddings; the accelerated path uses a k-d tree on those
3-space coordinates and must agree with the quadratic scan.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from .curves import SampledCurve
from .sphere import SpherePoint, embed_array

__all__ = [
    "CompactCloud",
    "to_cloud",
    "hausdorff_distance",
    "directed_hausdorff",
    "chordal_diameter",
    "is_singleton_approx",
    "write_cloud_file",
    "read_cloud_file",
]

# clouds up to this size always use the quadratic scan (cheaper than tree setup)
_BRUTE_CUTOFF = 64

DEFAULT_SINGLETON_DELTA = 0.01


class CompactCloud:
    """Non-empty finite set of sphere points with sampling resolution epsilon."""

    def __init__(self, z, infinite, epsilon: float = 0.0, label: str = ""):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        infinite = np.atleast_1d(np.asarray(infinite, dtype=bool))
        if len(z) == 0:
            raise ValueError("a compact cloud must be non-empty")
        if len(z) != len(infinite):
            raise ValueError("values and infinity mask must be aligned")
        if epsilon < 0.0:
            raise ValueError("epsilon must be non-negative")
        if infinite.any():
            z = np.where(infinite, 0.0, z)  # one representation per point
        self._z = z
        self._infinite = infinite
        self.epsilon = float(epsilon)
        self.label = str(label)
        self._embedded = None

    @classmethod
    def from_points(cls, points, epsilon: float = 0.0, label: str = ""):
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
        return cls(z, inf, epsilon=epsilon, label=label)

    def __len__(self):
        return len(self._z)

    @property
    def values(self):
        return self._z

    @property
    def infinite_mask(self):
        return self._infinite

    def point(self, i: int) -> SpherePoint:
        if self._infinite[i]:
            return SpherePoint.infinity()
        return SpherePoint.finite(self._z[i])

    def points(self):
        return [self.point(i) for i in range(len(self))]

    def embedded(self) -> np.ndarray:
        if self._embedded is None:
            self._embedded = embed_array(self._z, self._infinite)
        return self._embedded

    def __repr__(self):
        return f"CompactCloud(n={len(self)}, eps={self.epsilon:.3g}, label={self.label!r})"


def to_cloud(c: SampledCurve) -> CompactCloud:
    """Curve samples as a cloud; epsilon is half the largest consecutive gap."""
    emb = c.embedded_coords()
    gaps = np.sqrt(((emb - np.roll(emb, -1, axis=0)) ** 2).sum(axis=1))
    return CompactCloud(
        c.values.copy(), c.infinite_mask.copy(), epsilon=float(gaps.max()) / 2.0, label=c.label
    )


def directed_hausdorff(a: CompactCloud, b: CompactCloud, method: str = "auto", workers: int = 1) -> float:
    """sup over p in a of the chordal distance from p to b."""
    ea, eb = a.embedded(), b.embedded()
    if method == "brute" or (method == "auto" and len(ea) * len(eb) <= _BRUTE_CUTOFF ** 2):
        diff = ea[:, None, :] - eb[None, :, :]
        d = np.sqrt((diff * diff).sum(axis=2))
        return float(d.min(axis=1).max())
    tree = cKDTree(eb)
    dists, _ = tree.query(ea, k=1, workers=workers)
    return float(dists.max())


def hausdorff_distance(a: CompactCloud, b: CompactCloud, method: str = "auto", workers: int = 1) -> float:
    """Chordal Hausdorff distance between the two point sets.

    method "brute" forces the quadratic scan, "kdtree" the spatial index;
    "auto" picks by size.  The two agree to floating precision.
    """
    if method == "kdtree":
        return max(
            directed_hausdorff(a, b, method="kdtree", workers=workers),
            directed_hausdorff(b, a, method="kdtree", workers=workers),
        )
    return max(
        directed_hausdorff(a, b, method=method, workers=workers),
        directed_hausdorff(b, a, method=method, workers=workers),
    )


def chordal_diameter(a: CompactCloud) -> float:
    """Largest pairwise chordal distance in the cloud."""
    e = a.embedded()
    if len(e) == 1:
        return 0.0
    # quadratic scan in blocks; clouds here stay in the few-thousand range
    best = 0.0
    block = 1024
    for i in range(0, len(e), block):
        diff = e[i : i + block, None, :] - e[None, :, :]
        d2 = (diff * diff).sum(axis=2)
        best = max(best, float(d2.max()))
    return math.sqrt(best)


def is_singleton_approx(a: CompactCloud, delta: float = DEFAULT_SINGLETON_DELTA) -> bool:
    """Whether the cloud is a singleton at resolution delta (diameter < delta)."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    return chordal_diameter(a) < delta


# -- file format: label line, then "re im" or "inf" per point ---------------------


def write_cloud_file(path, a: CompactCloud) -> None:
    with open(path, "w") as fh:
        fh.write(a.label + "\n")
        for i in range(len(a)):
            if a.infinite_mask[i]:
                fh.write("inf\n")
            else:
                z = a.values[i]
                fh.write(f"{z.real:.17g} {z.imag:.17g}\n")


def read_cloud_file(path) -> CompactCloud:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError(f"empty cloud file {path}")
    label = lines[0]
    z, inf = [], []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        parts = ln.split()
        if parts[0] == "inf":
            z.append(0.0)
            inf.append(True)
        else:
            z.append(complex(float(parts[0]), float(parts[1])))
            inf.append(False)
    return CompactCloud(np.array(z), np.array(inf), label=label)
