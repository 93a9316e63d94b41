"""Bounded-turning estimation and divergence trends.

The turning constant of a sampled closed curve is the supremum over sample
pairs of  diameter(shorter arc between them) / distance(them),  where
"shorter" means the complementary sample arc with the smaller diameter.  The
constant is >= 1 for every closed curve, equals ~1 for round circles, and
diverges with resolution for curves with cusps; the growth rate across
resolutions separates bounded from unbounded families.

Two implementations are provided and return identical values:

* a quadratic dynamic program that computes every arc diameter exactly
  (the unpruned reference), and
* a pruned maximizer that bounds arc diameters by chord-length sums and
  hierarchical bounding boxes and only evaluates pairs whose bound beats the
  running maximum.

On tie-dominated curves (anything circle-like, where almost every pair
achieves ratio 1) no pruning is mathematically possible, so the auto mode
falls back to the dynamic program once the candidate set exceeds a budget.
Ties in the maximum resolve to the lexicographically smallest index pair in
both implementations.
"""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .curves import SampledCurve

__all__ = [
    "TurningEstimate",
    "TrendResult",
    "VerdictKind",
    "Verdict",
    "turning_constant",
    "divergence_trend",
    "quasicircle_verdict",
    "verdict_from_estimates",
    "UNBOUNDED_SLOPE",
    "BOUNDED_SLOPE",
]

UNBOUNDED_SLOPE = 0.3
BOUNDED_SLOPE = 0.1

DEFAULT_CANDIDATE_BUDGET = 100_000
_DP_MEMORY_CAP_BYTES = 1_500_000_000
_LEAF = 16
_UB_INFLATE = 1.0 + 1e-12
_SEED_PROBES = 8


@dataclass(frozen=True)
class TurningEstimate:
    constant: float
    witness: tuple[int, int]
    metric_used: str
    resolution: int
    witness_params: tuple[float, float]
    method: str

    def __post_init__(self):
        i, j = self.witness
        if i == j:
            raise ValueError("witness indices must be distinct")


@dataclass(frozen=True)
class TrendResult:
    slope: float
    resolutions: tuple[int, ...]
    constants: tuple[float, ...]
    estimates: tuple[TurningEstimate, ...] = field(default=(), repr=False)


class VerdictKind(enum.Enum):
    BOUNDED = "BoundedBy"
    UNBOUNDED = "UnboundedTrend"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    bound: float | None
    slope: float
    constants: tuple[float, ...]
    diagnostics: str = ""


# -- shared distance kernel ---------------------------------------------------
# Both implementations must produce bit-identical distances, so every distance
# goes through the same subtract/square/sum/sqrt sequence on float64 rows.


def _dist_rows(block: np.ndarray, point: np.ndarray) -> np.ndarray:
    diff = block - point
    return np.sqrt((diff * diff).sum(axis=-1))


def _coords(curve: SampledCurve, metric: str) -> np.ndarray:
    if metric == "euclidean":
        return curve.euclidean_coords()
    if metric == "chordal":
        return curve.embedded_coords()
    raise ValueError(f"unknown metric {metric!r}; use 'euclidean' or 'chordal'")


# -- exact dynamic program ------------------------------------------------------


def _turning_dp(P: np.ndarray) -> tuple[float, tuple[int, int]]:
    """Exact max ratio over all pairs, O(n^2) time, O(n^2) memory.

    Scans arc end positions over the doubled index range; the diameter of the
    arc s..e is max(diam(s..e-1), max_k d(k, e)), where the inner max is a
    suffix-maximum of the distance column to the new endpoint.
    """
    n = len(P)
    P2 = np.vstack([P, P])
    fwd = np.zeros((n, n))  # fwd[i, j] = diam of arc i..j, i < j
    dcur = np.zeros(2 * n)  # dcur[s] = diam of arc s..e for the current e
    best = -1.0
    wit = (0, 1)
    for e in range(1, 2 * n - 1):
        lo = max(0, e - n + 1)
        col = _dist_rows(P2[lo : e + 1], P2[e])
        sm = np.maximum.accumulate(col[::-1])[::-1]
        dcur[lo:e] = np.maximum(dcur[lo:e], sm[:-1])
        dcur[e] = 0.0
        if e < n:
            fwd[0:e, e] = dcur[0:e]
        else:
            i = e - n
            s0 = i + 1
            if s0 < n:
                comp = dcur[s0:n]
                chords = _dist_rows(P[s0:n], P[i])
                ratios = np.minimum(fwd[i, s0:n], comp) / chords
                k = int(np.argmax(ratios))
                if ratios[k] > best:
                    best = float(ratios[k])
                    wit = (i, s0 + k)
    return best, wit


# -- pruned maximizer --------------------------------------------------------------


class _BlockBoxes:
    """Aligned power-of-two bounding boxes over the doubled coordinate array."""

    def __init__(self, P2: np.ndarray):
        m = len(P2)
        size = 1
        while size < m:
            size *= 2
        if size > m:
            P2 = np.vstack([P2, np.repeat(P2[-1:], size - m, axis=0)])
        self.P2 = P2
        self.mins = [P2]
        self.maxs = [P2]
        while len(self.mins[-1]) > 1:
            lo, hi = self.mins[-1], self.maxs[-1]
            self.mins.append(np.minimum(lo[0::2], lo[1::2]))
            self.maxs.append(np.maximum(hi[0::2], hi[1::2]))

    def canonical(self, lo: int, hi: int):
        """Decompose the inclusive range [lo, hi] into aligned (level, index) nodes."""
        out = []
        a, b = lo, hi + 1
        level = 0
        while a < b:
            if a & 1:
                out.append((level, a))
                a += 1
            if b & 1:
                b -= 1
                out.append((level, b))
            a >>= 1
            b >>= 1
            level += 1
        return out

    def cross_ub(self, na, nb) -> float:
        """Upper bound for the distance between points in two nodes."""
        la, ia = na
        lb, ib = nb
        amin, amax = self.mins[la][ia], self.maxs[la][ia]
        bmin, bmax = self.mins[lb][ib], self.maxs[lb][ib]
        d = np.maximum(np.abs(amax - bmin), np.abs(bmax - amin))
        return math.sqrt(float((d * d).sum())) * _UB_INFLATE

    def arc_box_diag(self, lo: int, hi: int) -> float:
        nodes = self.canonical(lo, hi)
        amin = self.mins[nodes[0][0]][nodes[0][1]].copy()
        amax = self.maxs[nodes[0][0]][nodes[0][1]].copy()
        for lv, ix in nodes[1:]:
            np.minimum(amin, self.mins[lv][ix], out=amin)
            np.maximum(amax, self.maxs[lv][ix], out=amax)
        d = amax - amin
        return math.sqrt(float((d * d).sum())) * _UB_INFLATE


def _arc_diameter(bb: _BlockBoxes, lo: int, hi: int, stop_above: float | None = None) -> float:
    """Exact diameter of bb.P2[lo..hi] by branch and bound over block boxes.

    With stop_above set, returns early with any witnessed distance >= that
    threshold (the caller only needs to know the diameter is not the smaller
    of two); the return value is always an actually-achieved distance.
    """
    P2 = bb.P2
    probes = np.unique([lo, (3 * lo + hi) // 4, (lo + hi) // 2, (lo + 3 * hi) // 4, hi])
    lb = 0.0
    pp = P2[probes]
    for t in range(len(pp)):
        lb = max(lb, float(_dist_rows(pp, pp[t]).max()))
    if stop_above is not None and lb >= stop_above:
        return lb
    nodes = bb.canonical(lo, hi)
    heap = []
    for x in range(len(nodes)):
        for y in range(x, len(nodes)):
            ub = bb.cross_ub(nodes[x], nodes[y])
            if ub > lb:
                heapq.heappush(heap, (-ub, nodes[x], nodes[y]))
    while heap:
        nub, na, nb = heapq.heappop(heap)
        if -nub <= lb:
            break
        (la, ia), (lb_, ib) = na, nb
        if (1 << la) <= _LEAF and (1 << lb_) <= _LEAF:
            a0, a1 = ia << la, min((ia + 1) << la, hi + 1)
            b0, b1 = ib << lb_, min((ib + 1) << lb_, hi + 1)
            A, B = P2[max(a0, lo) : a1], P2[max(b0, lo) : b1]
            for t in range(len(B)):
                m = float(_dist_rows(A, B[t]).max())
                if m > lb:
                    lb = m
                    if stop_above is not None and lb >= stop_above:
                        return lb
            continue
        if la >= lb_:
            for child in (2 * ia, 2 * ia + 1):
                ub = bb.cross_ub((la - 1, child), nb)
                if ub > lb:
                    heapq.heappush(heap, (-ub, (la - 1, child), nb))
        else:
            for child in (2 * ib, 2 * ib + 1):
                ub = bb.cross_ub(na, (lb_ - 1, child))
                if ub > lb:
                    heapq.heappush(heap, (-ub, na, (lb_ - 1, child)))
    return lb


def _exact_pair_ratio(bb: _BlockBoxes, P: np.ndarray, i: int, j: int) -> float:
    n = len(P)
    dij = float(_dist_rows(P[i : i + 1], P[j])[0])
    # evaluate the arc that looks smaller first; prove the other at least as big
    diag_f = bb.arc_box_diag(i, j)
    diag_c = bb.arc_box_diag(j, i + n)
    if diag_f <= diag_c:
        first = (i, j)
        second = (j, i + n)
    else:
        first = (j, i + n)
        second = (i, j)
    d1 = _arc_diameter(bb, *first)
    d2 = _arc_diameter(bb, *second, stop_above=d1)
    return min(d1, d2) / dij


def _row_ub(pref: np.ndarray, total: float, P: np.ndarray, i: int) -> np.ndarray:
    """Chord-length upper bounds min(len fwd, len back)/d for pairs (i, j>i)."""
    js = np.arange(i + 1, len(P))
    d = _dist_rows(P[i + 1 :], P[i])
    alf = pref[js] - pref[i]
    return np.minimum(alf, total - alf) / d


def _turning_pruned(
    P: np.ndarray, budget: int | None
) -> tuple[float, tuple[int, int]] | None:
    """Pruned exact maximizer; returns None when the candidate set exceeds budget."""
    n = len(P)
    P2 = np.vstack([P, P])
    bb = _BlockBoxes(P2)
    seg = np.sqrt(((P2[1:] - P2[:-1]) ** 2).sum(axis=-1))
    pref = np.concatenate([[0.0], np.cumsum(seg)])
    total = float(pref[n])

    row_max = np.empty(n - 1)
    row_arg = np.empty(n - 1, dtype=int)
    for i in range(n - 1):
        ub = _row_ub(pref, total, P, i)
        k = int(np.argmax(ub))
        row_max[i] = ub[k]
        row_arg[i] = i + 1 + k
    # seed the running maximum with exact ratios of the most promising pairs
    order = np.argsort(row_max)[::-1][:_SEED_PROBES]
    best = 0.0
    for i in order:
        best = max(best, _exact_pair_ratio(bb, P, int(i), int(row_arg[i])))

    rows = np.nonzero(row_max >= best)[0]
    cand: list[tuple[int, int, float]] = []
    for i in rows:
        ub = _row_ub(pref, total, P, int(i))
        sel = np.nonzero(ub >= best)[0]
        if budget is not None and len(cand) + len(sel) > budget:
            return None
        for k in sel:
            cand.append((int(i), int(i) + 1 + int(k), float(ub[k])))

    wit = None
    for i, j, ub in cand:  # lex order by construction
        if ub < best or (wit is not None and ub <= best):
            continue
        r = _exact_pair_ratio(bb, P, i, j)
        if r > best or (r == best and wit is None):
            best = r
            wit = (i, j)
    assert wit is not None
    return best, wit


# -- public API ------------------------------------------------------------------


def turning_constant(
    curve: SampledCurve,
    metric: str = "euclidean",
    method: str = "auto",
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> TurningEstimate:
    """Supremum of arc-diameter over chord across all sample pairs.

    metric "euclidean" works in the plane (rejects curves through infinity);
    "chordal" works on the sphere embedding.  method "brute" runs the
    quadratic reference, "pruned" the bounding maximizer, "auto" tries pruning
    and falls back once the candidate set exceeds candidate_budget.
    """
    P = _coords(curve, metric)
    if float(np.ptp(P, axis=0).max()) < 1e-15:
        raise ValueError("degenerate curve: all points within 1e-15")
    n = len(P)
    used = method
    if method == "brute":
        best, wit = _turning_dp(P)
    elif method == "pruned":
        best, wit = _turning_pruned(P, budget=None)
    elif method == "auto":
        # tie-dominated curves (circle-like) yield ~n^2 candidates; the DP is
        # cheaper long before that, so the auto budget scales with n
        auto_budget = min(candidate_budget, max(256, 2 * n))
        res = _turning_pruned(P, budget=auto_budget)
        if res is None:
            if 8 * n * n > _DP_MEMORY_CAP_BYTES:
                best, wit = _turning_pruned(P, budget=None)
                used = "pruned"
            else:
                best, wit = _turning_dp(P)
                used = "brute"
        else:
            best, wit = res
            used = "pruned"
    else:
        raise ValueError(f"unknown method {method!r}")
    i, j = wit
    return TurningEstimate(
        constant=float(best),
        witness=(i, j),
        metric_used=metric,
        resolution=n,
        witness_params=(float(curve.params[i]), float(curve.params[j])),
        method=used,
    )


def divergence_trend(
    generator,
    resolutions,
    metric: str = "euclidean",
    method: str = "auto",
) -> TrendResult:
    """Least-squares slope of log(constant) against log(resolution).

    generator maps a resolution to a SampledCurve.  Positive slope beyond the
    unbounded threshold signals a family whose constants grow without bound.
    """
    resolutions = [int(r) for r in resolutions]
    if len(resolutions) < 3:
        raise ValueError("need at least 3 resolutions for a trend")
    if any(b <= a for a, b in zip(resolutions, resolutions[1:])):
        raise ValueError("resolutions must be strictly increasing")
    estimates = tuple(
        turning_constant(generator(r), metric=metric, method=method) for r in resolutions
    )
    constants = tuple(e.constant for e in estimates)
    slope = float(
        np.polyfit(np.log(np.asarray(resolutions, float)), np.log(np.asarray(constants)), 1)[0]
    )
    return TrendResult(
        slope=slope,
        resolutions=tuple(resolutions),
        constants=constants,
        estimates=estimates,
    )


def verdict_from_estimates(resolutions, constants, k_cap: float) -> Verdict:
    """Threshold logic shared by quasicircle_verdict and the orbit reports."""
    resolutions = np.asarray(list(resolutions), dtype=float)
    constants_t = tuple(float(c) for c in constants)
    slope = float(np.polyfit(np.log(resolutions), np.log(np.asarray(constants_t)), 1)[0])
    if slope > UNBOUNDED_SLOPE:
        return Verdict(
            kind=VerdictKind.UNBOUNDED,
            bound=None,
            slope=slope,
            constants=constants_t,
            diagnostics=f"slope {slope:.3g} > {UNBOUNDED_SLOPE}",
        )
    if slope < BOUNDED_SLOPE and max(constants_t) <= k_cap:
        return Verdict(
            kind=VerdictKind.BOUNDED,
            bound=max(constants_t),
            slope=slope,
            constants=constants_t,
            diagnostics=f"slope {slope:.3g} < {BOUNDED_SLOPE}, constants <= {k_cap:g}",
        )
    return Verdict(
        kind=VerdictKind.INCONCLUSIVE,
        bound=None,
        slope=slope,
        constants=constants_t,
        diagnostics=(
            f"slope {slope:.3g} in [{BOUNDED_SLOPE}, {UNBOUNDED_SLOPE}]"
            if BOUNDED_SLOPE <= slope <= UNBOUNDED_SLOPE
            else f"slope {slope:.3g} but max constant {max(constants_t):.3g} exceeds cap {k_cap:g}"
        ),
    )


def quasicircle_verdict(
    generator,
    resolutions,
    k_cap: float,
    metric: str = "euclidean",
    method: str = "auto",
) -> Verdict:
    """Bounded / unbounded-trend / inconclusive verdict for a curve family."""
    trend = divergence_trend(generator, resolutions, metric=metric, method=method)
    return verdict_from_estimates(trend.resolutions, trend.constants, k_cap)
