import math
import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from conftest import VERTS_INF, P
from projhermite.cusps import cusp_from_value, infinity, mobius_cusp, mobius_point, parse_cusp, random_sl2
from projhermite.geometry import Point, dist_sq
from projhermite.hermite import (
    ClaimMismatch, ExactSqrt, HermitianFormExact, eta_exact, numeric_eta_oracle, oppenheim_check,
    orbit_reduce, phi_map, projective_hermite_constant, projective_minimum_check, psi_map,
    reduce_mod_translations, to_infinity_matrix,
)
from projhermite.number_field import QuadraticField


def test_exact_sqrt():
    assert ExactSqrt(2) < ExactSqrt(Fr(9, 4)) <= ExactSqrt(Fr(9, 4))
    assert ExactSqrt(Fr(180, 13)).square() == Fr(180, 13)
    assert str(ExactSqrt(13)) == "sqrt(13/1)"
    assert float(ExactSqrt(2)) == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        ExactSqrt(-1)


def test_eta_at_p5(k39):
    eta, argmin = eta_exact(VERTS_INF[5], k39)
    assert eta == 13
    names = {str(c) for c in argmin}
    assert {"inf", "0", "w/2"} <= names
    assert len(argmin) == 24


def test_eta_high_point(k39):
    eta, argmin = eta_exact(P(0, 0, 10 ** 6), k39)
    assert eta == Fr(1, 10 ** 6) and argmin == [infinity(k39)]


def test_eta_at_p6(k39):
    # 1/h at P6, h = 9/39
    assert eta_exact(VERTS_INF[6], k39)[0] == Fr(39, 9)


def test_psi_of_maximizers(k39):
    # hermitian, so the two off-diagonal entries are conjugate
    assert str(psi_map(VERTS_INF[5], k39)) == "[sqrt(13), -2*sqrt(3)*I, sqrt(13)]"
    assert str(psi_map(VERTS_INF[2], k39)) == "[sqrt(13), 2*sqrt(3)*I, sqrt(13)]"
    assert psi_map(VERTS_INF[2], k39) == psi_map(VERTS_INF[5], k39).conjugate()


def test_phi_of_identity(k39):
    I = HermitianFormExact(Fr(1), Fr(0), Fr(0), Fr(1), Fr(1), 39)
    assert phi_map(I) == P(0, 0, 1)
    bad = I._replace(c_num=Fr(0))
    with pytest.raises(ValueError):
        phi_map(bad)


def test_minimum_of_identity(k39):
    I = HermitianFormExact(Fr(1), Fr(0), Fr(0), Fr(1), Fr(1), 39)
    assert projective_minimum_check(I, (k39.one, k39.zero), k39) == 1


def test_minimum_of_extreme_form(k39):
    S = psi_map(VERTS_INF[5], k39)
    assert projective_minimum_check(S, (k39.one, k39.zero), k39) == 13
    # (0, 1) realises the minimum too; (1, 1) does not
    assert projective_minimum_check(S, (k39.zero, k39.one), k39) == 13
    with pytest.raises(ClaimMismatch) as e:
        projective_minimum_check(S, (k39.one, k39.one), k39)
    assert infinity(k39) in e.value.minimizers


def test_minimum_requires_det_one(k39):
    S = HermitianFormExact(Fr(2), Fr(0), Fr(0), Fr(1), Fr(1), 39)
    with pytest.raises(ValueError):
        projective_minimum_check(S, (k39.one, k39.zero), k39)


def test_orbit_representatives_39(k39):
    entries = orbit_reduce(list(VERTS_INF.values()), k39)
    by = dict(zip(VERTS_INF, entries))
    reps = (1, 2, 5, 6, 7, 9)
    assert len({by[i].sl2_label for i in reps}) == 6
    assert {e.sl2_label for e in entries} == {by[i].sl2_label for i in reps}
    gl2 = {}
    for i in reps:
        gl2.setdefault(by[i].gl2_label, set()).add(i)
    assert sorted(map(sorted, gl2.values())) == [[1, 6], [2, 5], [7, 9]]


def test_translate_by_omega_keeps_label(k39):
    w = k39.omega
    for Q in VERTS_INF.values():
        z = k39.from_xs(Q.x, Q.s) + w
        Qw = Point(z.re, z.im, Q.h)
        assert reduce_mod_translations(Qw, k39) == reduce_mod_translations(Q, k39)


def test_to_infinity_matrix():
    K = QuadraticField(47)
    mu = parse_cusp(K, "17+40w/83")
    g = to_infinity_matrix(mu, K)
    assert g.det == K.one and g.is_integral()
    assert mobius_cusp(g, mu).is_infinity
    # non-principal cusp
    assert to_infinity_matrix(parse_cusp(K, "w/2"), K) is None


@pytest.mark.parametrize("D,expect", [(39, Fr(13)), (10, Fr(180, 13)), (2, Fr(4))])
def test_constant_examples(D, expect):
    R = projective_hermite_constant(QuadraticField(D))
    assert R.gamma_p_sq == expect and R.gamma_p == ExactSqrt(expect)
    assert R.gamma_p_sq == max(e for _, _, e, _ in R.vertices)


def test_report_39(k39):
    R = projective_hermite_constant(k39)
    assert R.h_K == 4
    assert [e.how for e in R.plan] == ["direct", "direct", "reflect", "transfer"]
    assert len(R.forms) == 2 and not R.unresolved
    for S, vec, _ in R.forms:
        assert S.det() == 1
        assert projective_minimum_check(S, vec, k39) == 13


def test_full_verify_cross_checks(k39):
    R = projective_hermite_constant(k39, full_verify=True)
    assert [ok for _, _, ok in R.cross_checks] == [True] * 4


@pytest.mark.parametrize("D,equality", [(5, False), (2, True), (17, True)])
def test_oppenheim_examples(D, equality):
    op = oppenheim_check(projective_hermite_constant(QuadraticField(D)))
    assert op.holds and op.equality is equality
    assert op.predicted_equality is equality


# oracle values frozen from runs of numeric_eta_oracle; targets sqrt(2), sqrt(13)
@pytest.mark.parametrize("D,grid,value", [(1, 100, 1.41421356237), (39, 60, 3.60555127546)])
def test_oracle_frozen(D, grid, value):
    o = numeric_eta_oracle(QuadraticField(D), grid_n=grid, k_max=20)
    assert o.estimate == pytest.approx(value, abs=1e-9)


def test_oracle_rejects_bad_grid(k39):
    with pytest.raises(ValueError):
        numeric_eta_oracle(k39, grid_n=4)


FIELDS = [QuadraticField(D) for D in (1, 2, 3, 5, 15, 39, 47)]
rat = st.fractions(min_value=-5, max_value=5, max_denominator=12)
pos = st.fractions(min_value=Fr(1, 12), max_value=5, max_denominator=12)


@given(st.sampled_from(FIELDS), rat, rat, pos)
def test_psi_phi_roundtrip(K, x, s, h):
    Q = Point(x, s, h)
    S = psi_map(Q, K)
    assert S.det() == 1 and S.is_positive_definite()
    assert phi_map(S, K) == Q
    assert psi_map(phi_map(S, K), K) == S


@given(st.sampled_from(FIELDS), st.integers(0, 2 ** 32), rat, rat, pos)
def test_phi_is_equivariant(K, seed, x, s, h):
    g = random_sl2(K, random.Random(seed))
    S = psi_map(Point(x, s, h), K)
    gS = S.act(g, K)
    assert gS.det() == 1
    assert phi_map(gS, K) == mobius_point(g, phi_map(S, K))


@given(st.sampled_from(FIELDS), rat, rat, pos, st.integers(-6, 6), st.integers(-6, 6),
       st.integers(1, 6))
def test_eta_is_a_lower_envelope(K, x, s, h, a, b, m):
    Q = Point(x, s, h)
    eta, argmin = eta_exact(Q, K)
    assert eta <= dist_sq(Q, cusp_from_value(K(a, b) / m), K)
    assert all(dist_sq(Q, c, K) == eta for c in argmin)
