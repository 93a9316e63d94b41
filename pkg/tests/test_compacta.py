import math

import numpy as np
import pytest

from quasiorbits.compacta import (
    CompactCloud,
    chordal_diameter,
    directed_hausdorff,
    hausdorff_distance,
    is_singleton_approx,
    read_cloud_file,
    to_cloud,
    write_cloud_file,
)
from quasiorbits.curves import cardioid, circle
from quasiorbits.moebius import apply_to_array, random_unitary
from quasiorbits.sphere import INFINITY, SpherePoint, chordal_distance


def random_cloud(rng, n, spread=2.0, with_inf=False):
    z = spread * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    inf = np.zeros(n, bool)
    if with_inf and n > 1:
        inf[0] = True
    return CompactCloud(z, inf)


def hausdorff_literal(a: CompactCloud, b: CompactCloud) -> float:
    """Independent oracle: double loop over scalar chordal distances."""
    pa, pb = a.points(), b.points()
    d_ab = max(min(chordal_distance(p, q) for q in pb) for p in pa)
    d_ba = max(min(chordal_distance(p, q) for q in pa) for p in pb)
    return max(d_ab, d_ba)


# -- construction ----------------------------------------------------------------


def test_empty_rejected():
    with pytest.raises(ValueError):
        CompactCloud(np.array([], dtype=complex), np.array([], dtype=bool))


def test_negative_epsilon_rejected():
    with pytest.raises(ValueError):
        CompactCloud(np.array([0j]), np.array([False]), epsilon=-1.0)


def test_to_cloud_size_and_epsilon():
    c = circle(0, 1.0, 4096)
    cloud = to_cloud(c)
    assert len(cloud) == 4096
    # uniform gaps: chordal gap = euclidean gap on the unit circle
    gap = 2.0 * math.sin(math.pi / 4096)
    assert cloud.epsilon == pytest.approx(gap / 2.0, rel=1e-9)
    assert cloud.epsilon < 0.002


def test_to_cloud_epsilon_is_max_gap_scan():
    c = cardioid(128, cusp_exponent=2.0)
    cloud = to_cloud(c)
    emb = c.embedded_coords()
    gaps = np.sqrt(((emb - np.roll(emb, -1, axis=0)) ** 2).sum(axis=1))
    assert cloud.epsilon == pytest.approx(gaps.max() / 2.0)


# -- hausdorff -----------------------------------------------------------------------


def test_hausdorff_identity():
    a = CompactCloud(np.array([0j, 1 + 0j, 2j]), np.zeros(3, bool))
    assert hausdorff_distance(a, a) == 0.0


def test_hausdorff_antipodal_singletons():
    zero = CompactCloud.from_points([SpherePoint.finite(0)])
    inf = CompactCloud.from_points([INFINITY])
    assert hausdorff_distance(zero, inf) == pytest.approx(2.0)


def test_hausdorff_accelerated_matches_brute(rng):
    for _ in range(25):
        a = random_cloud(rng, int(rng.integers(2, 500)), with_inf=bool(rng.integers(2)))
        b = random_cloud(rng, int(rng.integers(2, 500)))
        d1 = hausdorff_distance(a, b, method="brute")
        d2 = hausdorff_distance(a, b, method="kdtree")
        assert abs(d1 - d2) < 1e-12


def test_hausdorff_matches_literal_oracle(rng):
    for _ in range(5):
        a = random_cloud(rng, 20)
        b = random_cloud(rng, 25)
        expect = hausdorff_literal(a, b)
        assert hausdorff_distance(a, b, method="brute") == pytest.approx(expect, abs=1e-12)
        assert hausdorff_distance(a, b, method="kdtree") == pytest.approx(expect, abs=1e-12)


def test_hausdorff_metric_axioms(rng):
    clouds = [random_cloud(rng, int(rng.integers(2, 40))) for _ in range(12)]
    for a in clouds[:4]:
        for b in clouds[4:8]:
            assert hausdorff_distance(a, b) == hausdorff_distance(b, a)
            for c in clouds[8:]:
                dab = hausdorff_distance(a, b)
                dbc = hausdorff_distance(b, c)
                dac = hausdorff_distance(a, c)
                assert dac <= dab + dbc + 1e-12


def test_hausdorff_zero_iff_equal(rng):
    a = random_cloud(rng, 10)
    b = CompactCloud(a.values.copy(), a.infinite_mask.copy())
    assert hausdorff_distance(a, b) == 0.0
    c = CompactCloud(np.append(a.values, 10 + 10j), np.append(a.infinite_mask, False))
    assert hausdorff_distance(a, c) > 0.0


def test_hausdorff_unitary_invariance(rng):
    for _ in range(20):
        g = random_unitary(rng)
        a = random_cloud(rng, 40)
        b = random_cloud(rng, 30)
        ga = CompactCloud(*apply_to_array(g, a.values, a.infinite_mask))
        gb = CompactCloud(*apply_to_array(g, b.values, b.infinite_mask))
        assert hausdorff_distance(ga, gb) == pytest.approx(
            hausdorff_distance(a, b), abs=1e-9
        )


def test_directed_monotonicity(rng):
    # enriching the target side can only shrink the directed distance;
    # the full distance dominates both directed ones
    for _ in range(20):
        a = random_cloud(rng, 15)
        b = random_cloud(rng, 15)
        x = complex(*rng.standard_normal(2))
        a_plus = CompactCloud(np.append(a.values, x), np.append(a.infinite_mask, False))
        assert directed_hausdorff(b, a_plus) <= directed_hausdorff(b, a) + 1e-15
        assert directed_hausdorff(a_plus, b) >= directed_hausdorff(a, b) - 1e-15
        assert hausdorff_distance(a_plus, b) >= directed_hausdorff(b, a_plus) - 1e-15


# -- diameter and singletons ------------------------------------------------------------


def test_diameter_singleton():
    assert chordal_diameter(CompactCloud.from_points([SpherePoint.finite(5 + 5j)])) == 0.0


def test_diameter_antipodal():
    cloud = CompactCloud.from_points([SpherePoint.finite(0), INFINITY])
    assert chordal_diameter(cloud) == pytest.approx(2.0)


def test_diameter_unit_circle():
    # antipodal samples +-1 are diametrically opposite on the sphere
    cloud = to_cloud(circle(0, 1.0, 256))
    assert chordal_diameter(cloud) == pytest.approx(2.0, abs=1e-3)


def test_is_singleton_approx():
    tiny = CompactCloud(np.array([0j, 1e-9 + 0j]), np.zeros(2, bool))
    assert is_singleton_approx(tiny, 1e-6)
    big = CompactCloud.from_points([SpherePoint.finite(0), INFINITY])
    assert not is_singleton_approx(big, 1e-6)
    with pytest.raises(ValueError):
        is_singleton_approx(tiny, 0.0)


# -- files ------------------------------------------------------------------------------


def test_cloud_file_roundtrip(tmp_path, rng):
    a = random_cloud(rng, 17, with_inf=True)
    a.label = "test cloud"
    path = tmp_path / "cloud.txt"
    write_cloud_file(path, a)
    b = read_cloud_file(path)
    assert b.label == a.label
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.infinite_mask, b.infinite_mask)
