"""Moebius transformations as sign-canonical determinant-1 matrices.

Elements of the projective group are represented by their two matrix lifts;
a deterministic sign rule (the first nonzero entry in the order a, b, c, d
gets an argument in [0, pi)) picks one of them, which makes equality tests,
deduplication and serialization well defined.  The unitary/upper-triangular
factorization used throughout the orbit experiments is computed in closed
form from the first matrix column.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .sphere import INFINITY, SpherePoint, chordal_distance

__all__ = [
    "MoebiusMap",
    "ElementTag",
    "ElementClass",
    "IwasawaFactors",
    "apply",
    "apply_to_array",
    "compose",
    "inverse",
    "classify",
    "fixed_points",
    "iwasawa",
    "is_in_borel",
    "parse_matrix_tokens",
    "format_matrix_tokens",
    "random_moebius",
    "random_unitary",
]

# classification threshold on |trace^2 - 4|, and the zero/identity tolerances
TOL_CLASS = 1e-9
_TOL_ZERO = 1e-12
_TOL_DET_SKIP = 1e-14


def _canonicalize(a, b, c, d):
    det = a * d - b * c
    if abs(det) < _TOL_ZERO:
        raise ValueError(f"matrix is singular (det={det!r}); not a Moebius map")
    if abs(det - 1.0) > _TOL_DET_SKIP:
        s = cmath.sqrt(det)
        a, b, c, d = a / s, b / s, c / s, d / s
    # sign rule: first entry of modulus > tolerance gets argument in [0, pi),
    # decided on raw components so the choice flips exactly under negation
    for e in (a, b, c, d):
        if abs(e) > _TOL_ZERO:
            if (e.imag < 0.0) or (e.imag == 0.0 and e.real < 0.0):
                a, b, c, d = -a, -b, -c, -d
            break
    return a, b, c, d


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (az + b)/(cz + d) with ad - bc = 1, sign-canonical."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = _canonicalize(
            complex(self.a), complex(self.b), complex(self.c), complex(self.d)
        )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, t) -> "MoebiusMap":
        return cls(1.0, complex(t), 0.0, 1.0)

    @classmethod
    def affine(cls, a, b=0.0) -> "MoebiusMap":
        """z -> a z + b, a != 0."""
        a = complex(a)
        if a == 0:
            raise ValueError("affine coefficient a must be nonzero")
        return cls(a, complex(b), 0.0, 1.0)

    @classmethod
    def from_matrix(cls, mat) -> "MoebiusMap":
        (a, b), (c, d) = mat
        return cls(a, b, c, d)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace_squared(self) -> complex:
        return (self.a + self.d) ** 2

    def is_identity(self, tol: float = _TOL_ZERO) -> bool:
        # the identity class is +-I; canonicalization can land on either lift
        # when entries sit numerically on the negative real axis
        direct = max(abs(self.a - 1.0), abs(self.b), abs(self.c), abs(self.d - 1.0))
        flipped = max(abs(self.a + 1.0), abs(self.b), abs(self.c), abs(self.d + 1.0))
        return min(direct, flipped) < tol

    def projective_distance(self, other: "MoebiusMap") -> float:
        """max-entry distance between the two maps, minimized over the sign lift."""
        s = self.matrix()
        o = other.matrix()
        return float(min(np.abs(s - o).max(), np.abs(s + o).max()))

    def __call__(self, p):
        return apply(self, p)

    def __repr__(self):
        return f"MoebiusMap(a={self.a:.6g}, b={self.b:.6g}, c={self.c:.6g}, d={self.d:.6g})"


class ElementTag(enum.Enum):
    IDENTITY = "Identity"
    PARABOLIC = "Parabolic"
    ELLIPTIC = "Elliptic"
    LOXODROMIC = "Loxodromic"


@dataclass(frozen=True)
class ElementClass:
    tag: ElementTag
    trace_squared: complex


@dataclass(frozen=True)
class IwasawaFactors:
    """Unitary part k and upper-triangular part b with real positive diagonal."""

    k: MoebiusMap
    b: MoebiusMap


def apply(m: MoebiusMap, p) -> SpherePoint:
    """Act on a sphere point, with the standard pole/infinity conventions."""
    if not isinstance(p, SpherePoint):
        p = SpherePoint.finite(p)
    if p.is_infinite:
        if m.c == 0:
            return INFINITY
        return SpherePoint.finite(m.a / m.c)
    num = m.a * p.value + m.b
    den = m.c * p.value + m.d
    if den == 0:
        return INFINITY
    w = num / den
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        # magnitudes past the double range collapse to the infinite point
        return INFINITY
    return SpherePoint.finite(w)


def apply_to_array(m: MoebiusMap, z: np.ndarray, infinite: np.ndarray):
    """Vectorized action on (complex values, infinity mask); returns the same pair."""
    z = np.asarray(z, dtype=complex)
    infinite = np.asarray(infinite, dtype=bool)
    out = np.empty_like(z)
    out_inf = np.zeros_like(infinite)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        num = m.a * z + m.b
        den = m.c * z + m.d
        w = num / den
    pole = (den == 0) & ~infinite
    bad = ~(np.isfinite(w.real) & np.isfinite(w.imag)) & ~infinite
    out[:] = np.where(pole | bad, 0.0, w)
    out_inf |= pole | bad
    if infinite.any():
        if m.c == 0:
            out_inf |= infinite
        else:
            out[infinite] = m.a / m.c
    return out, out_inf


def compose(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def inverse(m: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(m.d, -m.b, -m.c, m.a)


def power(m: MoebiusMap, k: int) -> MoebiusMap:
    """k-th power under composition (k may be negative)."""
    if k < 0:
        return power(inverse(m), -k)
    out = MoebiusMap.identity()
    base = m
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base) if k > 1 else base
        k >>= 1
    return out


def classify(m: MoebiusMap, tol: float = TOL_CLASS) -> ElementClass:
    """Identity / Parabolic / Elliptic / Loxodromic from the squared trace."""
    t2 = m.trace_squared
    if m.is_identity(tol):
        return ElementClass(ElementTag.IDENTITY, t2)
    if abs(t2 - 4.0) < tol:
        return ElementClass(ElementTag.PARABOLIC, t2)
    if abs(t2.imag) < tol and 0.0 <= t2.real < 4.0:
        return ElementClass(ElementTag.ELLIPTIC, t2)
    return ElementClass(ElementTag.LOXODROMIC, t2)


def fixed_points(m: MoebiusMap) -> tuple[SpherePoint, ...]:
    """Fixed points on the sphere: one for parabolic maps, two otherwise."""
    cls = classify(m)
    if cls.tag is ElementTag.IDENTITY:
        raise ValueError("identity fixes every point; fixed_points undefined")
    a, b, c, d = m.entries()
    if abs(c) < _TOL_ZERO:
        # infinity is always fixed; a second finite fixed point unless parabolic
        if cls.tag is ElementTag.PARABOLIC:
            return (INFINITY,)
        return (INFINITY, SpherePoint.finite(b / (d - a)))
    if cls.tag is ElementTag.PARABOLIC:
        return (SpherePoint.finite((a - d) / (2.0 * c)),)
    # roots of c z^2 + (d - a) z - b, discriminant = trace^2 - 4
    disc = cmath.sqrt(cls.trace_squared - 4.0)
    # stable quadratic: avoid cancellation in the smaller root
    q = -0.5 * ((d - a) + disc) if abs((d - a) + disc) > abs((d - a) - disc) else -0.5 * ((d - a) - disc)
    z1 = q / c
    z2 = (-b / q) if q != 0 else (a - d) / (2.0 * c)
    return (SpherePoint.finite(z1), SpherePoint.finite(z2))


def attracting_fixed_point(m: MoebiusMap) -> SpherePoint:
    """For a loxodromic map, the fixed point with |derivative| < 1."""
    cls = classify(m)
    if cls.tag is not ElementTag.LOXODROMIC:
        raise ValueError("attracting fixed point is defined for loxodromic maps")
    pts = fixed_points(m)
    best, best_mod = None, None
    for p in pts:
        if p.is_infinite:
            # derivative at infinity in the 1/z chart: |d/a|^2 ... modulus |c/a|->0 test via a
            mod = abs(m.c / m.a) if m.a != 0 else math.inf
            # map fixes infinity iff c == 0; derivative there is (a/d)^-2 scale
            mod = abs(m.d / m.a)
        else:
            mod = abs(1.0 / (m.c * p.value + m.d)) ** 2
        if best_mod is None or mod < best_mod:
            best, best_mod = p, mod
    return best


def iwasawa(m: MoebiusMap) -> IwasawaFactors:
    """Factor m = k b with k unitary and b upper triangular, positive diagonal.

    Closed form: normalize the first column of m to get k's first column;
    b = k* m is then automatically upper triangular with diagonal (r, 1/r).
    """
    a, b_, c, d = m.entries()
    r = math.hypot(abs(a), abs(c))
    alpha, gamma = a / r, c / r
    k = MoebiusMap(alpha, -gamma.conjugate(), gamma, alpha.conjugate())
    top = alpha.conjugate() * b_ + gamma.conjugate() * d
    bb = MoebiusMap(r, top, 0.0, 1.0 / r)
    return IwasawaFactors(k=k, b=bb)


def is_in_borel(m: MoebiusMap, tol: float = _TOL_ZERO) -> bool:
    return abs(m.c) < tol


def is_unitary(m: MoebiusMap, tol: float = 1e-9) -> bool:
    mat = m.matrix()
    return bool(np.abs(mat @ mat.conj().T - np.eye(2)).max() < tol)


def parse_matrix_tokens(text: str) -> MoebiusMap:
    """Parse "a b c d" with complex entries like 1, -2.5i, 0.6+0.2i (row-major)."""
    tokens = text.replace(",", " ").split()
    if len(tokens) != 4:
        raise ValueError(f"expected 4 matrix entries, got {len(tokens)}")
    vals = []
    for tok in tokens:
        t = tok.strip().replace("I", "i")
        try:
            vals.append(complex(t.replace("i", "j")))
        except ValueError as exc:
            raise ValueError(f"cannot parse complex entry {tok!r}") from exc
    return MoebiusMap(*vals)


def _fmt_complex(z: complex) -> str:
    re, im = z.real, z.imag
    if im == 0:
        return f"{re:.17g}"
    if re == 0:
        return f"{im:.17g}i"
    sign = "+" if im >= 0 else "-"
    return f"{re:.17g}{sign}{abs(im):.17g}i"


def format_matrix_tokens(m: MoebiusMap) -> str:
    return " ".join(_fmt_complex(e) for e in m.entries())


def random_moebius(rng: np.random.Generator, scale: float = 1.0) -> MoebiusMap:
    """Random normalized map with complex-normal entries."""
    while True:
        e = scale * (rng.standard_normal(4) + 1j * rng.standard_normal(4))
        det = e[0] * e[3] - e[1] * e[2]
        if abs(det) > 1e-6:
            return MoebiusMap(*e)


def random_unitary(rng: np.random.Generator) -> MoebiusMap:
    """Haar-ish random element of the unitary subgroup (normalized 2-column)."""
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    n = math.hypot(abs(v[0]), abs(v[1]))
    while n < 1e-9:
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        n = math.hypot(abs(v[0]), abs(v[1]))
    alpha, gamma = v[0] / n, v[1] / n
    return MoebiusMap(alpha, -gamma.conjugate(), gamma, alpha.conjugate())
