"""Subgroup specifications, word enumeration, unitary nets, limit-set sampling.

The built-in kinds mirror the elementary cases used by the orbit experiments:
the trivial group, the cyclic group of the unit translation, the cyclic group
of z -> lambda(z+1)+1 with |lambda| > 1, the rank-two translation group of
1 and tau, plus free words over custom generators.  Limit sets are sampled as
fixed points of enumerated elements, which agrees with the orbit definition
for these elementary kinds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import moebius as mb
from .compacta import CompactCloud
from .moebius import MoebiusMap
from .sphere import SpherePoint, chordal_distance

__all__ = [
    "GroupKind",
    "GroupSpec",
    "GroupNet",
    "BudgetExceededError",
    "enumerate_elements",
    "enumerate_with_words",
    "psu2_net",
    "octahedral_net",
    "borel_sample",
    "limit_set_sample",
]

DEFAULT_ELEMENT_BUDGET = 100_000
_DEDUP_TOL = 1e-9


class BudgetExceededError(RuntimeError):
    """Requested enumeration would exceed the configured element budget."""


class GroupKind(enum.Enum):
    TRIVIAL = "trivial"
    CYCLIC_PARABOLIC = "cyclic_parabolic"
    CYCLIC_LOXODROMIC = "cyclic_loxodromic"
    RANK_TWO_PARABOLIC = "rank_two_parabolic"
    CUSTOM = "custom"


@dataclass(frozen=True)
class GroupSpec:
    kind: GroupKind
    lam: complex | None = None
    tau: complex | None = None
    custom_generators: tuple[MoebiusMap, ...] = ()
    element_budget: int = DEFAULT_ELEMENT_BUDGET

    def __post_init__(self):
        if self.kind is GroupKind.CYCLIC_LOXODROMIC:
            if self.lam is None or abs(self.lam) <= 1.0:
                raise ValueError("cyclic loxodromic kind needs |lambda| > 1")
        if self.kind is GroupKind.RANK_TWO_PARABOLIC:
            if self.tau is None or complex(self.tau).imag <= 0.0:
                raise ValueError("rank-two kind needs Im(tau) > 0")
        if self.kind is GroupKind.CUSTOM:
            if not self.custom_generators:
                raise ValueError("custom kind needs at least one generator")
            for g in self.custom_generators:
                if g.is_identity():
                    raise ValueError("custom generators must not be the identity")

    @classmethod
    def trivial(cls, element_budget: int = DEFAULT_ELEMENT_BUDGET):
        return cls(GroupKind.TRIVIAL, element_budget=element_budget)

    @classmethod
    def cyclic_parabolic(cls, element_budget: int = DEFAULT_ELEMENT_BUDGET):
        return cls(GroupKind.CYCLIC_PARABOLIC, element_budget=element_budget)

    @classmethod
    def cyclic_loxodromic(cls, lam, element_budget: int = DEFAULT_ELEMENT_BUDGET):
        return cls(GroupKind.CYCLIC_LOXODROMIC, lam=complex(lam), element_budget=element_budget)

    @classmethod
    def rank_two_parabolic(cls, tau, element_budget: int = DEFAULT_ELEMENT_BUDGET):
        return cls(GroupKind.RANK_TWO_PARABOLIC, tau=complex(tau), element_budget=element_budget)

    @classmethod
    def custom(cls, generators, element_budget: int = DEFAULT_ELEMENT_BUDGET):
        return cls(
            GroupKind.CUSTOM,
            custom_generators=tuple(generators),
            element_budget=element_budget,
        )

    def generators(self) -> tuple[MoebiusMap, ...]:
        if self.kind is GroupKind.TRIVIAL:
            return ()
        if self.kind is GroupKind.CYCLIC_PARABOLIC:
            return (MoebiusMap.translation(1.0),)
        if self.kind is GroupKind.CYCLIC_LOXODROMIC:
            lam = self.lam
            return (MoebiusMap(lam, lam + 1.0, 0.0, 1.0),)
        if self.kind is GroupKind.RANK_TWO_PARABOLIC:
            return (MoebiusMap.translation(1.0), MoebiusMap.translation(self.tau))
        return self.custom_generators

    def label(self) -> str:
        if self.kind is GroupKind.CYCLIC_LOXODROMIC:
            return f"cyclic_loxodromic(lambda={self.lam:.6g})"
        if self.kind is GroupKind.RANK_TWO_PARABOLIC:
            return f"rank_two_parabolic(tau={self.tau:.6g})"
        if self.kind is GroupKind.CUSTOM:
            return f"custom({len(self.custom_generators)} generators)"
        return self.kind.value


@dataclass(frozen=True)
class GroupNet:
    """Finite set of group elements; for unitary nets, a promised covering radius.

    ``resolution`` is the operator-norm distance within which every unitary map
    has a net element (None when no covering promise is made).
    """

    elements: tuple[MoebiusMap, ...]
    description: str
    resolution: float | None = None

    def __len__(self):
        return len(self.elements)


# -- enumeration ----------------------------------------------------------------


def _free_ball_size(n_gens: int, bound: int) -> int:
    if bound <= 0:
        return 1
    if n_gens == 1:
        return 2 * bound + 1
    q = 2 * n_gens - 1
    return 1 + 2 * n_gens * (q**bound - 1) // (q - 1)


def enumerate_with_words(spec: GroupSpec, bound: int) -> list[tuple[tuple, MoebiusMap]]:
    """Elements with their words, in canonical order (word length, then lex).

    Cyclic kinds return powers g^k for |k| <= bound, tagged with the exponent;
    the rank-two kind returns lattice translations tagged (n, m); custom specs
    return all reduced words up to the bound, merged when two words land
    within 1e-9 of the same canonical matrix.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    kind = spec.kind
    if kind is GroupKind.TRIVIAL:
        return [((0,), MoebiusMap.identity())]
    if kind in (GroupKind.CYCLIC_PARABOLIC, GroupKind.CYCLIC_LOXODROMIC):
        if 2 * bound + 1 > spec.element_budget:
            raise BudgetExceededError(
                f"cyclic ball of {2 * bound + 1} elements exceeds budget {spec.element_budget}"
            )
        (g,) = spec.generators()
        ginv = mb.inverse(g)
        out = [((0,), MoebiusMap.identity())]
        pos = neg = MoebiusMap.identity()
        for k in range(1, bound + 1):
            pos = mb.compose(pos, g)
            neg = mb.compose(neg, ginv)
            out.append(((-k,), neg))
            out.append(((k,), pos))
        return out
    if kind is GroupKind.RANK_TWO_PARABOLIC:
        if (2 * bound + 1) ** 2 > spec.element_budget:
            raise BudgetExceededError(
                f"lattice ball of {(2 * bound + 1) ** 2} elements exceeds budget"
            )
        pairs = [
            (n, m) for n in range(-bound, bound + 1) for m in range(-bound, bound + 1)
        ]
        pairs.sort(key=lambda nm: (abs(nm[0]) + abs(nm[1]), nm[0], nm[1]))
        return [
            ((n, m), MoebiusMap.translation(n + m * spec.tau)) for (n, m) in pairs
        ]
    # custom: reduced words by breadth-first search with tolerance deduplication
    gens = spec.generators()
    size_bound = _free_ball_size(len(gens), bound)
    if size_bound > spec.element_budget:
        raise BudgetExceededError(
            f"free ball of up to {size_bound} words exceeds budget {spec.element_budget}"
        )
    letters = []
    for idx, g in enumerate(gens):
        letters.append((idx + 1, g))
        letters.append((-(idx + 1), mb.inverse(g)))

    out: list[tuple[tuple, MoebiusMap]] = [((), MoebiusMap.identity())]
    seen = _ProjectiveDedup()
    seen.add(MoebiusMap.identity())
    frontier = [((), MoebiusMap.identity())]
    for _ in range(bound):
        nxt = []
        for word, m in frontier:
            for letter, g in letters:
                if word and word[-1] == -letter:
                    continue  # not reduced
                cand = mb.compose(m, g)
                if seen.contains(cand):
                    continue
                seen.add(cand)
                w2 = word + (letter,)
                out.append((w2, cand))
                nxt.append((w2, cand))
        frontier = nxt
    out.sort(key=lambda we: (len(we[0]), we[0]))
    return out


def enumerate_elements(spec: GroupSpec, bound: int) -> list[MoebiusMap]:
    return [m for _, m in enumerate_with_words(spec, bound)]


class _ProjectiveDedup:
    """Tolerance-based dedup of canonical matrices modulo sign."""

    def __init__(self, tol: float = _DEDUP_TOL):
        self.tol = tol
        self._buf = np.empty((64, 8))
        self._n = 0

    @staticmethod
    def _vec(m: MoebiusMap) -> np.ndarray:
        e = m.entries()
        return np.array(
            [e[0].real, e[0].imag, e[1].real, e[1].imag, e[2].real, e[2].imag, e[3].real, e[3].imag]
        )

    def contains(self, m: MoebiusMap) -> bool:
        if self._n == 0:
            return False
        v = self._vec(m)
        mat = self._buf[: self._n]
        close = np.abs(mat - v).max(axis=1) < self.tol
        if close.any():
            return True
        return bool((np.abs(mat + v).max(axis=1) < self.tol).any())

    def add(self, m: MoebiusMap) -> None:
        if self._n == len(self._buf):
            self._buf = np.vstack([self._buf, np.empty_like(self._buf)])
        self._buf[self._n] = self._vec(m)
        self._n += 1


# -- nets -------------------------------------------------------------------------


def psu2_net(angular_resolution: float) -> GroupNet:
    """Quasi-uniform covering net of the unitary subgroup.

    Parametrizes u = [[alpha, beta], [-conj(beta), conj(alpha)]] with
    alpha = cos(psi) e^{i phi1}, beta = sin(psi) e^{i phi2} and grids the three
    angles at step resolution/2; entrywise Lipschitz bounds give Frobenius
    (hence operator-norm) coverage within the requested resolution.
    """
    if angular_resolution <= 0.0:
        raise ValueError("angular resolution must be positive")
    h = angular_resolution / 2.0
    n_psi = max(1, math.ceil((math.pi / 2.0) / h))
    n_phi = max(1, math.ceil((2.0 * math.pi) / h))
    psis = np.linspace(0.0, math.pi / 2.0, n_psi + 1)
    phis = 2.0 * math.pi * np.arange(n_phi) / n_phi
    dedup = _ProjectiveDedup(tol=1e-9)
    elements = [MoebiusMap.identity()]
    dedup.add(elements[0])
    for psi in psis:
        c, s = math.cos(psi), math.sin(psi)
        for p1 in phis:
            alpha = c * complex(math.cos(p1), math.sin(p1))
            for p2 in phis:
                beta = s * complex(math.cos(p2), math.sin(p2))
                u = MoebiusMap(alpha, beta, -beta.conjugate(), alpha.conjugate())
                if not dedup.contains(u):
                    dedup.add(u)
                    elements.append(u)
    return GroupNet(
        elements=tuple(elements),
        description=f"psu2 grid net, angular resolution {angular_resolution:g}",
        resolution=float(angular_resolution),
    )


_OCTAHEDRAL_QUATERNIONS: list[tuple[float, float, float, float]] = []


def _build_octahedral_quaternions():
    if _OCTAHEDRAL_QUATERNIONS:
        return _OCTAHEDRAL_QUATERNIONS
    s = 1.0 / math.sqrt(2.0)
    quats: set[tuple[float, float, float, float]] = set()

    def rep(q):
        # one representative per +-q: first nonzero component positive
        for comp in q:
            if comp != 0.0:
                if comp < 0.0:
                    q = tuple(-x for x in q)
                break
        return tuple(0.0 if x == 0.0 else x for x in q)

    for axis in range(4):
        q = [0.0] * 4
        q[axis] = 1.0
        quats.add(rep(tuple(q)))
    for signs in range(16):
        q = tuple(0.5 if (signs >> k) & 1 == 0 else -0.5 for k in range(4))
        quats.add(rep(q))
    for a in range(4):
        for b in range(a + 1, 4):
            for sa in (s, -s):
                for sb in (s, -s):
                    q = [0.0] * 4
                    q[a], q[b] = sa, sb
                    quats.add(rep(tuple(q)))
    _OCTAHEDRAL_QUATERNIONS.extend(sorted(quats, reverse=True))
    return _OCTAHEDRAL_QUATERNIONS


def octahedral_net() -> GroupNet:
    """The 24 rotations of the octahedron as exact unitary maps."""
    elements = []
    for (w, x, y, z) in _build_octahedral_quaternions():
        elements.append(MoebiusMap(complex(w, x), complex(y, z), complex(-y, z), complex(w, -x)))
    return GroupNet(
        elements=tuple(elements),
        description="octahedral rotation group (24 unitary elements)",
        resolution=None,
    )


# -- sampling --------------------------------------------------------------------


def borel_sample(
    count: int, scale: float, rng: np.random.Generator | None = None
) -> list[MoebiusMap]:
    """Random upper-triangular determinant-1 maps at the given entry scale.

    Diagonal (mu, 1/mu) with log mu complex-normal at the scale, upper entry
    complex-normal at the scale; scale 0 degenerates to diagonal maps.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if rng is None:
        rng = np.random.default_rng(0)
    out = []
    for _ in range(count):
        mu = np.exp(scale * complex(rng.standard_normal(), rng.standard_normal()))
        top = scale * complex(rng.standard_normal(), rng.standard_normal())
        out.append(MoebiusMap(mu, top, 0.0, 1.0 / mu))
    return out


def limit_set_sample(spec: GroupSpec, bound: int) -> CompactCloud:
    """Fixed points of the enumerated non-identity elements, as a cloud.

    Approximates the accumulation set of the group orbit; exact for the
    elementary kinds, whose limit sets have at most two points.
    """
    if spec.kind is GroupKind.TRIVIAL:
        raise ValueError("the trivial group has an empty limit set (not a cloud)")
    pts: list[SpherePoint] = []
    for _, m in enumerate_with_words(spec, bound):
        if m.is_identity():
            continue
        for p in mb.fixed_points(m):
            if all(chordal_distance(p, q) >= _DEDUP_TOL for q in pts):
                pts.append(p)
    if not pts:
        raise ValueError("no non-identity elements within the bound")
    return CompactCloud.from_points(pts, epsilon=0.0, label=f"limit set of {spec.label()}")
