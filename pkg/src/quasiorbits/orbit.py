"""Orbit families of curves, degeneration profiles, fattening, boundedness tests.

An orbit family applies every enumerated group element to a base curve and
keeps each image, flagging members that have chordally collapsed below a
threshold instead of dropping them: the collapse itself is the signal the
degeneration experiments look for.  Fattening multiplies a family by a finite
net of unitary maps; the accompanying closure check verifies numerically that
a product u*b re-factorizes so the fattened family is carried into itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import moebius as mb
from .compacta import (
    CompactCloud,
    chordal_diameter,
    hausdorff_distance,
    to_cloud,
)
from .curves import CurveError, SampledCurve, moebius_image
from .groups import GroupKind, GroupNet, GroupSpec, borel_sample, enumerate_with_words, limit_set_sample
from .moebius import MoebiusMap
from .quasicircle import Verdict, turning_constant, verdict_from_estimates
from .sphere import SpherePoint

__all__ = [
    "FamilyMember",
    "CurveFamily",
    "ProfileEntry",
    "MemberStat",
    "OrbitReport",
    "ClosureCheckResult",
    "orbit_family",
    "degeneration_profile",
    "fatten_family",
    "fattening_closure_check",
    "orbit_boundedness_test",
]

DEFAULT_DEGENERATION_DELTA = 0.01
DEFAULT_ESTIMATOR_RESOLUTION = 2048


@dataclass(frozen=True)
class FamilyMember:
    element: MoebiusMap
    word: tuple
    cloud: CompactCloud
    diameter: float
    degenerate: bool
    curve: SampledCurve | None = field(repr=False, default=None)
    provenance: tuple[int, int] | None = None  # (net index, source index) for fattened members

    @property
    def valid_curve(self) -> bool:
        return self.curve is not None


@dataclass(frozen=True)
class CurveFamily:
    members: tuple[FamilyMember, ...]
    base_label: str
    spec: GroupSpec | None = None
    delta: float = DEFAULT_DEGENERATION_DELTA

    def __post_init__(self):
        if not self.members:
            raise ValueError("a curve family must have at least one member")

    def __len__(self):
        return len(self.members)


def _make_member(element, word, base: SampledCurve, delta: float, provenance=None) -> FamilyMember:
    z, inf = mb.apply_to_array(element, base.values, base.infinite_mask)
    cloud = CompactCloud(z, inf, epsilon=0.0, label=f"{base.label}|{word}")
    diameter = chordal_diameter(cloud)
    curve = None
    try:
        curve = SampledCurve(z, inf, base.params, label=base.label)
    except CurveError:
        pass
    return FamilyMember(
        element=element,
        word=word,
        cloud=cloud,
        diameter=diameter,
        degenerate=(diameter < delta) or curve is None,
        curve=curve,
        provenance=provenance,
    )


def orbit_family(
    spec: GroupSpec,
    base: SampledCurve,
    bound: int,
    delta: float = DEFAULT_DEGENERATION_DELTA,
) -> CurveFamily:
    """One member per enumerated element; collapsed members flagged, not dropped."""
    members = [
        _make_member(element, word, base, delta)
        for word, element in enumerate_with_words(spec, bound)
    ]
    return CurveFamily(members=tuple(members), base_label=base.label, spec=spec, delta=delta)


@dataclass(frozen=True)
class ProfileEntry:
    exponent: int
    diameter: float
    nearest_limit: SpherePoint | None
    distance_to_limit: float | None


def degeneration_profile(family: CurveFamily, bound_for_limits: int = 8) -> list[ProfileEntry]:
    """Chordal diameters in exponent order, with the limit point each member approaches.

    Only meaningful for families generated by a single element (or the trivial
    family, which yields one entry).  The distance recorded is the Hausdorff
    distance from the member to the nearest sampled limit point.
    """
    spec = family.spec
    if spec is None or spec.kind not in (
        GroupKind.TRIVIAL,
        GroupKind.CYCLIC_PARABOLIC,
        GroupKind.CYCLIC_LOXODROMIC,
    ):
        raise ValueError("degeneration profile needs a cyclic (or trivial) family")
    limits: list[SpherePoint] = []
    if spec.kind is not GroupKind.TRIVIAL:
        limits = limit_set_sample(spec, bound_for_limits).points()
    entries = []
    for member in sorted(family.members, key=lambda m: m.word):
        (k,) = member.word
        nearest, dist = None, None
        for p in limits:
            d = hausdorff_distance(member.cloud, CompactCloud.from_points([p]))
            if dist is None or d < dist:
                nearest, dist = p, d
        entries.append(
            ProfileEntry(
                exponent=int(k),
                diameter=member.diameter,
                nearest_limit=nearest,
                distance_to_limit=dist,
            )
        )
    entries.sort(key=lambda e: e.exponent)
    return entries


def fatten_family(family: CurveFamily, net: GroupNet) -> CurveFamily:
    """All images eta(alpha) for eta in the net, tagged with their provenance.

    The member count is |net| * |family|; no deduplication is applied, so
    repeated images (e.g. from a net containing symmetries of a member) stay.
    """
    members = []
    for ni, eta in enumerate(net.elements):
        for si, member in enumerate(family.members):
            word = member.word + (("net", ni),)
            composed = mb.compose(eta, member.element)
            if member.curve is not None:
                z, inf = mb.apply_to_array(eta, member.curve.values, member.curve.infinite_mask)
                params = member.curve.params
            else:
                z, inf = mb.apply_to_array(eta, member.cloud.values, member.cloud.infinite_mask)
                params = None
            cloud = CompactCloud(z, inf, epsilon=0.0, label=f"{family.base_label}|{word}")
            diameter = chordal_diameter(cloud)
            curve = None
            if params is not None:
                try:
                    curve = SampledCurve(z, inf, params, label=member.curve.label)
                except CurveError:
                    pass
            members.append(
                FamilyMember(
                    element=composed,
                    word=word,
                    cloud=cloud,
                    diameter=diameter,
                    degenerate=(diameter < family.delta) or curve is None,
                    curve=curve,
                    provenance=(ni, si),
                )
            )
    return CurveFamily(
        members=tuple(members),
        base_label=f"fattened({family.base_label}; {net.description})",
        spec=family.spec,
        delta=family.delta,
    )


@dataclass(frozen=True)
class ClosureCheckResult:
    trials: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance


def fattening_closure_check(
    family: CurveFamily,
    net: GroupNet,
    trials: int = 100,
    rng: np.random.Generator | None = None,
    borel_scale: float = 0.7,
    tolerance: float = 1e-9,
) -> ClosureCheckResult:
    """Check g(eta(beta)) == eta1(gamma1(beta)) pointwise for random g = u*b.

    u is drawn from the net, b from the upper-triangular sample, beta from the
    family; (eta1, gamma1) comes from re-decomposing g*eta into its unitary and
    triangular parts.  The residual is the max chordal mismatch over samples.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    curves = [m.curve for m in family.members if m.curve is not None]
    if not curves:
        raise ValueError("no valid curves in the family")
    worst = 0.0
    for _ in range(trials):
        u = net.elements[int(rng.integers(len(net.elements)))]
        (b,) = borel_sample(1, borel_scale, rng)
        g = mb.compose(u, b)
        eta = net.elements[int(rng.integers(len(net.elements)))]
        beta = curves[int(rng.integers(len(curves)))]
        factors = mb.iwasawa(mb.compose(g, eta))
        lhs = moebius_image(moebius_image(beta, eta), g)
        rhs = moebius_image(moebius_image(beta, factors.b), factors.k)
        la = lhs.embedded_coords()
        rb = rhs.embedded_coords()
        worst = max(worst, float(np.sqrt(((la - rb) ** 2).sum(axis=1)).max()))
    return ClosureCheckResult(trials=trials, max_residual=worst, tolerance=tolerance)


@dataclass(frozen=True)
class MemberStat:
    index: int
    word: tuple
    diameter: float
    constant: float | None
    degenerate: bool


@dataclass(frozen=True)
class OrbitReport:
    base_label: str
    spec_label: str
    bound: int
    estimator_resolution: int
    metric: str
    members: tuple[MemberStat, ...]
    hausdorff_min: float
    hausdorff_median: float
    hausdorff_max: float
    sup_constant: float
    resolutions: tuple[int, ...]
    sup_constants: tuple[float, ...]
    trend_slope: float
    verdict: Verdict
    delta: float

    @property
    def divergence_detected(self) -> bool:
        return self.verdict.kind.value == "UnboundedTrend"


def _family_constants(family: CurveFamily, metric: str) -> list[float | None]:
    out = []
    for m in family.members:
        if m.curve is None or m.degenerate:
            out.append(None)
            continue
        try:
            out.append(turning_constant(m.curve, metric=metric).constant)
        except ValueError:
            out.append(None)
    return out


def orbit_boundedness_test(
    spec: GroupSpec,
    base_generator,
    bound: int,
    resolutions,
    metric: str = "euclidean",
    estimator_resolution: int = DEFAULT_ESTIMATOR_RESOLUTION,
    delta: float = DEFAULT_DEGENERATION_DELTA,
    k_cap: float = math.inf,
) -> OrbitReport:
    """Does any finite constant bound the turning constants over the orbit?

    Builds the orbit family of base_generator(r) at each resolution r, records
    the supremum of the member turning constants, and fits the growth trend of
    those suprema; an unbounded trend means the family's constants diverge
    with resolution, i.e. no single constant works.  The detailed per-member
    table is reported at the fixed estimator resolution.
    """
    resolutions = [int(r) for r in resolutions]
    fixed = orbit_family(spec, base_generator(estimator_resolution), bound, delta=delta)
    constants = _family_constants(fixed, metric)
    stats = tuple(
        MemberStat(
            index=i,
            word=m.word,
            diameter=m.diameter,
            constant=constants[i],
            degenerate=m.degenerate,
        )
        for i, m in enumerate(fixed.members)
    )
    finite_constants = [c for c in constants if c is not None]
    if not finite_constants:
        raise ValueError("no member admits a turning estimate at the fixed resolution")
    sup_fixed = max(finite_constants)

    pair_dists = []
    clouds = [m.cloud for m in fixed.members]
    for i in range(len(clouds)):
        for j in range(i + 1, len(clouds)):
            pair_dists.append(hausdorff_distance(clouds[i], clouds[j]))
    if pair_dists:
        h_min, h_med, h_max = (
            float(min(pair_dists)),
            float(np.median(pair_dists)),
            float(max(pair_dists)),
        )
    else:
        h_min = h_med = h_max = 0.0

    sups = []
    for r in resolutions:
        fam = orbit_family(spec, base_generator(r), bound, delta=delta)
        consts = [c for c in _family_constants(fam, metric) if c is not None]
        if not consts:
            raise ValueError(f"no member admits a turning estimate at resolution {r}")
        sups.append(max(consts))
    verdict = verdict_from_estimates(resolutions, sups, k_cap)

    return OrbitReport(
        base_label=fixed.base_label,
        spec_label=spec.label(),
        bound=bound,
        estimator_resolution=estimator_resolution,
        metric=metric,
        members=stats,
        hausdorff_min=h_min,
        hausdorff_median=h_med,
        hausdorff_max=h_max,
        sup_constant=sup_fixed,
        resolutions=tuple(resolutions),
        sup_constants=tuple(float(s) for s in sups),
        trend_slope=verdict.slope,
        verdict=verdict,
        delta=delta,
    )
