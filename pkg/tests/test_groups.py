import math

import numpy as np
import pytest

from quasiorbits.groups import (
    BudgetExceededError,
    GroupKind,
    GroupSpec,
    borel_sample,
    enumerate_elements,
    enumerate_with_words,
    limit_set_sample,
    octahedral_net,
    psu2_net,
)
from quasiorbits.moebius import (
    MoebiusMap,
    apply,
    classify,
    compose,
    inverse,
    is_in_borel,
    is_unitary,
    iwasawa,
    random_unitary,
)
from quasiorbits.sphere import INFINITY, chordal_distance


def opnorm(mat):
    return float(np.linalg.norm(mat, 2))


def _opnorms_2x2(mats):
    """Largest singular values of a stack of 2x2 complex matrices, closed form."""
    t = (np.abs(mats) ** 2).sum(axis=(1, 2))
    d = np.abs(mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0])
    disc = np.sqrt(np.maximum(t * t - 4.0 * d * d, 0.0))
    return np.sqrt((t + disc) / 2.0)


_NET_STACKS = {}


def net_distance(net, m):
    """Operator-norm distance from m to the net, modulo the sign lift."""
    key = id(net)
    if key not in _NET_STACKS:
        _NET_STACKS[key] = np.stack([u.matrix() for u in net.elements])
    stack = _NET_STACKS[key]
    mm = m.matrix()[None, :, :]
    return float(min(_opnorms_2x2(stack - mm).min(), _opnorms_2x2(stack + mm).min()))


# -- specs ------------------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        GroupSpec.cyclic_loxodromic(0.5)  # |lambda| <= 1
    with pytest.raises(ValueError):
        GroupSpec.rank_two_parabolic(1.0)  # Im tau <= 0
    with pytest.raises(ValueError):
        GroupSpec.custom([MoebiusMap.identity()])
    GroupSpec.cyclic_loxodromic(2.0)
    GroupSpec.rank_two_parabolic(1j)


# -- enumeration -------------------------------------------------------------------


def test_trivial_enumeration():
    els = enumerate_elements(GroupSpec.trivial(), 10)
    assert len(els) == 1 and els[0].is_identity()


def test_cyclic_parabolic_enumeration():
    els = enumerate_elements(GroupSpec.cyclic_parabolic(), 2)
    assert len(els) == 5
    # powers of the unit translation: z + k for k in -2..2
    shifts = sorted(apply(m, 0).value.real for m in els)
    assert shifts == pytest.approx([-2, -1, 0, 1, 2])


def test_rank_two_enumeration():
    els = enumerate_elements(GroupSpec.rank_two_parabolic(1j), 1)
    assert len(els) == 9
    shifts = sorted((apply(m, 0).value.real, apply(m, 0).value.imag) for m in els)
    expect = sorted((n, m) for n in (-1, 0, 1) for m in (-1, 0, 1))
    for got, exp in zip(shifts, expect):
        assert got == pytest.approx(exp)


def test_enumeration_closed_under_inverse():
    for spec, bound in [
        (GroupSpec.cyclic_parabolic(), 3),
        (GroupSpec.cyclic_loxodromic(2.0), 3),
        (GroupSpec.rank_two_parabolic(0.5 + 1j), 2),
    ]:
        els = enumerate_elements(spec, bound)
        for m in els:
            mi = inverse(m)
            assert any(mi.projective_distance(e) < 1e-9 for e in els)


def test_enumeration_deduplicated():
    rot = MoebiusMap(np.exp(1j * math.pi / 4), 0, 0, np.exp(-1j * math.pi / 4))
    spec = GroupSpec.custom([rot])  # order-8 rotation (order 4 in the quotient)
    els = enumerate_elements(spec, 10)
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            assert els[i].projective_distance(els[j]) >= 1e-9
    assert len(els) == 4


def test_custom_words_reduced_and_ordered():
    a = MoebiusMap.translation(1.0)
    b = MoebiusMap(2, 0, 0, 0.5)
    words = enumerate_with_words(GroupSpec.custom([a, b]), 2)
    lens = [len(w) for w, _ in words]
    assert lens == sorted(lens)
    for w, _ in words:
        for x, y in zip(w, w[1:]):
            assert x != -y  # reduced


def test_budget_exceeded():
    a = MoebiusMap.translation(1.0)
    b = MoebiusMap(2, 0, 0, 0.5)
    spec = GroupSpec.custom([a, b], element_budget=50)
    with pytest.raises(BudgetExceededError):
        enumerate_with_words(spec, 6)
    with pytest.raises(BudgetExceededError):
        enumerate_elements(GroupSpec(GroupKind.CYCLIC_PARABOLIC, element_budget=5), 10)


def test_identity_always_included():
    for spec in (
        GroupSpec.cyclic_parabolic(),
        GroupSpec.rank_two_parabolic(1j),
        GroupSpec.custom([MoebiusMap.translation(1.0)]),
    ):
        els = enumerate_elements(spec, 1)
        assert any(m.is_identity() for m in els)


# -- nets --------------------------------------------------------------------------


def test_octahedral_net_is_a_24_element_group():
    net = octahedral_net()
    assert len(net) == 24
    assert any(m.is_identity() for m in net.elements)
    for m in net.elements:
        assert is_unitary(m, 1e-12)
    # closed under composition modulo sign
    for g in net.elements[:6]:
        for h in net.elements[:6]:
            p = compose(g, h)
            assert any(p.projective_distance(e) < 1e-9 for e in net.elements)
    # pairwise distinct
    for i in range(24):
        for j in range(i + 1, 24):
            assert net.elements[i].projective_distance(net.elements[j]) > 1e-6


def test_psu2_net_contains_identity_and_is_unitary():
    net = psu2_net(0.8)
    assert any(m.is_identity(1e-12) for m in net.elements)
    for m in net.elements:
        assert is_unitary(m, 1e-9)
        fac = iwasawa(m)
        assert fac.b.is_identity(1e-9)


def test_psu2_net_coverage(rng):
    net = psu2_net(0.7)
    for _ in range(1000):
        v = random_unitary(rng)
        assert net_distance(net, v) <= net.resolution + 1e-9


def test_cocompact_factorization_instance(rng):
    # products u*b recover an Iwasawa unitary part that the net still covers:
    # the numerical content of writing the whole group as (compact) * (triangular)
    net = psu2_net(0.7)
    for _ in range(1000):
        u = net.elements[int(rng.integers(len(net.elements)))]
        (b,) = borel_sample(1, 0.8, rng)
        g = compose(u, b)
        fac = iwasawa(g)
        assert compose(fac.k, fac.b).projective_distance(g) < 1e-9
        assert net_distance(net, fac.k) <= net.resolution + 1e-9


# -- borel sampling ------------------------------------------------------------------


def test_borel_sample_membership(rng):
    for m in borel_sample(100, 1.5, rng):
        assert is_in_borel(m, 1e-12)
        assert apply(m, INFINITY).is_infinite


def test_borel_sample_scale_zero(rng):
    for m in borel_sample(10, 0.0, rng):
        assert abs(m.b) < 1e-15 and abs(m.c) < 1e-15  # diagonal only


def test_borel_sample_count():
    with pytest.raises(ValueError):
        borel_sample(0, 1.0)


# -- limit sets ------------------------------------------------------------------------


def test_limit_set_cyclic_parabolic():
    cloud = limit_set_sample(GroupSpec.cyclic_parabolic(), 5)
    assert len(cloud) == 1
    assert cloud.point(0).is_infinite


def test_limit_set_cyclic_loxodromic():
    cloud = limit_set_sample(GroupSpec.cyclic_loxodromic(2.0), 5)
    assert len(cloud) == 2
    finite = [p for p in cloud.points() if not p.is_infinite]
    assert len(finite) == 1
    assert finite[0].value == pytest.approx(-3.0)


def test_limit_set_rank_two():
    cloud = limit_set_sample(GroupSpec.rank_two_parabolic(1j), 2)
    assert len(cloud) == 1 and cloud.point(0).is_infinite


def test_limit_set_elementary_at_most_two_points():
    for spec in (
        GroupSpec.cyclic_parabolic(),
        GroupSpec.cyclic_loxodromic(1.5 + 1j),
        GroupSpec.rank_two_parabolic(0.3 + 0.9j),
    ):
        assert len(limit_set_sample(spec, 4)) <= 2


def test_limit_set_trivial_rejected():
    with pytest.raises(ValueError):
        limit_set_sample(GroupSpec.trivial(), 5)
