import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from quasiorbits.moebius import (
    ElementTag,
    MoebiusMap,
    apply,
    apply_to_array,
    classify,
    compose,
    fixed_points,
    format_matrix_tokens,
    inverse,
    is_in_borel,
    is_unitary,
    iwasawa,
    parse_matrix_tokens,
    power,
    random_moebius,
    random_unitary,
)
from quasiorbits.sphere import INFINITY, SpherePoint, chordal_distance

coeff = st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=10)


@st.composite
def moebius_maps(draw):
    a, b, c, d = (draw(coeff) for _ in range(4))
    assume(abs(a * d - b * c) > 1e-3)
    return MoebiusMap(a, b, c, d)


point_args = st.one_of(
    st.just(INFINITY),
    st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=100).map(
        SpherePoint.finite
    ),
)


# -- canonical form ---------------------------------------------------------------


def test_determinant_normalized():
    m = MoebiusMap(2, 0, 0, 2)
    a, b, c, d = m.entries()
    assert abs(a * d - b * c - 1) < 1e-12


def test_sign_canonical_first_entry():
    m = MoebiusMap(-1, 0, 0, -1)
    assert m.is_identity()
    m2 = MoebiusMap(0, -2j, 3j, 0)  # first nonzero entry is b=-2j -> flipped
    assert cmath.phase(m2.b) >= 0


@given(moebius_maps())
@settings(max_examples=100)
def test_canonical_idempotent(m):
    m2 = MoebiusMap(*m.entries())
    assert m2.entries() == m.entries()


def test_singular_rejected():
    with pytest.raises(ValueError):
        MoebiusMap(1, 2, 2, 4)


# -- action -----------------------------------------------------------------------


def test_translation_action():
    T = MoebiusMap.translation(1)
    assert apply(T, 0).value == 1
    assert apply(T, INFINITY).is_infinite


def test_identity_action():
    I = MoebiusMap.identity()
    for p in (SpherePoint.finite(2 + 3j), INFINITY, SpherePoint.finite(0)):
        q = apply(I, p)
        assert chordal_distance(p, q) == 0.0


def test_pole_convention():
    inv = MoebiusMap(0, 1j, 1j, 0)  # z -> 1/z
    assert apply(inv, 0).is_infinite
    assert apply(inv, INFINITY).value == 0
    # direct limit: 1/eps blows up towards infinity
    assert abs(apply(inv, 1e-9).value) == pytest.approx(1e9)


@given(moebius_maps(), moebius_maps(), point_args)
@settings(max_examples=100)
def test_compose_is_action_composition(m1, m2, p):
    lhs = apply(compose(m1, m2), p)
    rhs = apply(m1, apply(m2, p))
    assert chordal_distance(lhs, rhs) < 1e-9


def test_translation_composition():
    T = MoebiusMap.translation(1)
    TT = compose(T, T)
    assert abs(TT.b / TT.a - 2) < 1e-12
    T2 = MoebiusMap.translation(1j)
    both = compose(T, T2)
    assert abs(apply(both, 0).value - (1 + 1j)) < 1e-12


@given(moebius_maps())
@settings(max_examples=100)
def test_inverse_roundtrip(m):
    assert compose(m, inverse(m)).is_identity(1e-9)
    assert compose(inverse(m), m).is_identity(1e-9)


def test_inverse_of_translation():
    T = MoebiusMap.translation(1)
    assert abs(inverse(T).b + 1) < 1e-15


def test_inverse_matrix_oracle(rng):
    for _ in range(50):
        m = random_moebius(rng)
        prod = m.matrix() @ inverse(m).matrix()
        assert np.abs(np.abs(prod) - np.eye(2)).max() < 1e-9


def test_power():
    T = MoebiusMap.translation(1)
    assert abs(apply(power(T, 5), 0).value - 5) < 1e-12
    assert abs(apply(power(T, -3), 0).value + 3) < 1e-12
    assert power(T, 0).is_identity()


# -- classification -----------------------------------------------------------------


def test_classify_examples():
    assert classify(MoebiusMap.translation(1)).tag is ElementTag.PARABOLIC
    L = MoebiusMap(2, 3, 0, 1)  # z -> 2(z+1)+1
    cls = classify(L)
    assert cls.tag is ElementTag.LOXODROMIC
    assert cls.trace_squared == pytest.approx(4.5)
    assert classify(MoebiusMap.identity()).tag is ElementTag.IDENTITY
    rot = MoebiusMap(cmath.exp(0.3j), 0, 0, cmath.exp(-0.3j))
    assert classify(rot).tag is ElementTag.ELLIPTIC


def test_classify_conjugation_invariant(rng):
    for _ in range(1000):
        m = random_moebius(rng)
        g = random_moebius(rng)
        conj = compose(compose(g, m), inverse(g))
        assert classify(conj).tag is classify(m).tag


# -- fixed points --------------------------------------------------------------------


def test_fixed_points_translation():
    pts = fixed_points(MoebiusMap.translation(1))
    assert len(pts) == 1 and pts[0].is_infinite


def test_fixed_points_loxodromic():
    L = MoebiusMap(2, 3, 0, 1)
    pts = fixed_points(L)
    finite = [p for p in pts if not p.is_infinite]
    assert len(pts) == 2 and len(finite) == 1
    assert finite[0].value == pytest.approx(-3.0)
    # substitution: L(-3) = 2(-3+1)+1 = -3
    assert apply(L, -3).value == pytest.approx(-3.0)


def test_fixed_points_inversion():
    inv = MoebiusMap(0, 1, 1, 0)  # z -> 1/z with det -1 -> normalized
    pts = fixed_points(inv)
    vals = sorted(p.value.real for p in pts)
    assert vals == pytest.approx([-1.0, 1.0])


def test_fixed_points_identity_rejected():
    with pytest.raises(ValueError):
        fixed_points(MoebiusMap.identity())


def test_fixed_points_consistency(rng):
    for _ in range(200):
        m = random_moebius(rng)
        if m.is_identity(1e-9):
            continue
        for p in fixed_points(m):
            assert chordal_distance(apply(m, p), p) < 1e-9


# -- factorization -------------------------------------------------------------------


def test_iwasawa_trivial_cases():
    I = MoebiusMap.identity()
    fac = iwasawa(I)
    assert fac.k.is_identity() and fac.b.is_identity()
    T = MoebiusMap.translation(1)
    fac = iwasawa(T)
    assert fac.k.is_identity(1e-12)
    assert fac.b.projective_distance(T) < 1e-12
    rot = MoebiusMap(0, -1, 1, 0)
    fac = iwasawa(rot)
    assert fac.b.is_identity(1e-12)
    assert fac.k.projective_distance(rot) < 1e-12


def test_iwasawa_random_roundtrip(rng):
    for _ in range(1000):
        m = random_moebius(rng)
        fac = iwasawa(m)
        assert is_unitary(fac.k, 1e-9)
        assert abs(fac.b.c) < 1e-12
        assert fac.b.a.imag == 0 and fac.b.d.imag == 0
        assert fac.b.a.real > 0 and fac.b.d.real > 0
        assert compose(fac.k, fac.b).projective_distance(m) < 1e-9
        assert is_in_borel(fac.b, 1e-12)


def test_borel_membership():
    assert is_in_borel(MoebiusMap.translation(1), 1e-12)
    assert not is_in_borel(MoebiusMap(0, 1j, 1j, 0), 1e-12)


def test_unitary_preserves_chordal(rng):
    for _ in range(200):
        u = random_unitary(rng)
        p = SpherePoint.finite(complex(*rng.standard_normal(2)) * 5)
        q = SpherePoint.finite(complex(*rng.standard_normal(2)) * 5)
        assert chordal_distance(apply(u, p), apply(u, q)) == pytest.approx(
            chordal_distance(p, q), abs=1e-9
        )


# -- text format ---------------------------------------------------------------------


def test_matrix_tokens_roundtrip(rng):
    m = random_moebius(rng)
    m2 = parse_matrix_tokens(format_matrix_tokens(m))
    assert m.projective_distance(m2) < 1e-12


def test_matrix_tokens_parse():
    m = parse_matrix_tokens("1 1 0 1")
    assert classify(m).tag is ElementTag.PARABOLIC
    with pytest.raises(ValueError):
        parse_matrix_tokens("1 2 3")
    with pytest.raises(ValueError):
        parse_matrix_tokens("1 2 3 x")


def test_apply_to_array_matches_scalar(rng):
    m = random_moebius(rng)
    z = rng.standard_normal(32) + 1j * rng.standard_normal(32)
    inf = np.zeros(32, bool)
    inf[3] = True
    w, winf = apply_to_array(m, z, inf)
    for i in range(32):
        p = INFINITY if inf[i] else SpherePoint.finite(z[i])
        expect = apply(m, p)
        got = INFINITY if winf[i] else SpherePoint.finite(w[i])
        assert chordal_distance(expect, got) < 1e-12
