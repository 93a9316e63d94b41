"""Moebius-group orbits of sampled Jordan curves on the Riemann sphere.

Core objects: sphere points with the chordal metric, sign-canonical Moebius
maps, sampled Jordan curves, finite point clouds with the Hausdorff metric,
bounded-turning (quasicircle-constant) estimation, group enumeration with
unitary nets, and orbit/fattening experiments.
"""

__version__ = "0.1.0"

from .sphere import INFINITY, SpherePoint, chordal_distance, euclidean_distance
from .moebius import (
    ElementClass,
    ElementTag,
    IwasawaFactors,
    MoebiusMap,
    apply,
    classify,
    compose,
    fixed_points,
    inverse,
    is_in_borel,
    iwasawa,
)
from .curves import (
    SampledCurve,
    CurveError,
    affine_image,
    cardioid,
    circle,
    cusp_ratio,
    moebius_image,
    read_curve_file,
    write_curve_file,
)
from .compacta import (
    CompactCloud,
    chordal_diameter,
    hausdorff_distance,
    is_singleton_approx,
    read_cloud_file,
    to_cloud,
    write_cloud_file,
)
from .quasicircle import (
    TrendResult,
    TurningEstimate,
    Verdict,
    VerdictKind,
    divergence_trend,
    quasicircle_verdict,
    turning_constant,
)
from .groups import (
    BudgetExceededError,
    GroupKind,
    GroupNet,
    GroupSpec,
    borel_sample,
    enumerate_elements,
    limit_set_sample,
    octahedral_net,
    psu2_net,
)
from .orbit import (
    CurveFamily,
    FamilyMember,
    OrbitReport,
    degeneration_profile,
    fatten_family,
    fattening_closure_check,
    orbit_boundedness_test,
    orbit_family,
)
