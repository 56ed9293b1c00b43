from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from projhermite.goldens import TABLE1
from projhermite.number_field import (
    QuadraticField, class_group_compute, form_to_ideal, fundamental_discriminants,
    ideal_from_generators, ideal_inverse, ideal_mul, ideal_to_form, pair_ideal_norm,
    reduce_form, reduced_forms, unit_ideal,
)

SMALL_D = [1, 2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 39, 47, 163]


def test_discriminant_and_basis():
    assert QuadraticField(39).d_K == -39 and QuadraticField(39).half
    assert QuadraticField(10).d_K == -40 and not QuadraticField(10).half
    K = QuadraticField(39)
    w = K.omega
    assert w * w == w - 10      # w^2 = w - (1 + D)/4
    assert K.from_xs(Fr(1, 2), Fr(1, 2)) == w


def test_units():
    assert len(QuadraticField(1).units()) == 4
    assert len(QuadraticField(3).units()) == 6
    assert len(QuadraticField(39).units()) == 2


def test_fundamental_discriminants_below_70():
    ds = [d for d, _ in fundamental_discriminants(69)]
    assert ds == [r.d_K for r in TABLE1 if r.d_K != -163]


@pytest.mark.parametrize("row", TABLE1, ids=lambda r: str(r.d_K))
def test_class_numbers(row):
    assert class_group_compute(QuadraticField(row.D)).order == row.h_K


def test_class_group_39_is_cyclic_of_order_4():
    G = class_group_compute(QuadraticField(39))
    assert G.is_cyclic()
    assert sorted(G.element_order(i) for i in range(4)) == [1, 2, 4, 4]


def test_reduced_forms_39():
    assert sorted(reduced_forms(-39)) == sorted([(1, 1, 10), (2, 1, 5), (2, -1, 5), (3, 3, 4)])


def test_pair_norm_examples(k39):
    assert pair_ideal_norm(k39, (0, 1), (2, 0)) == 2      # <w, 2>
    assert pair_ideal_norm(k39, (1, 1), (3, 0)) == 3      # <1 + w, 3>
    assert pair_ideal_norm(k39, (1, 0), (0, 0)) == 1


def test_ideal_inverse(k39):
    I = ideal_from_generators([k39.omega, k39(2)])
    assert ideal_mul(I, ideal_inverse(I)) == unit_ideal(k39)


def test_form_ideal_roundtrip():
    for D in SMALL_D:
        K = QuadraticField(D)
        for f in reduced_forms(K.d_K):
            assert reduce_form(*ideal_to_form(form_to_ideal(K, f))) == f


elements = st.tuples(st.integers(-30, 30), st.integers(-30, 30))


@given(st.sampled_from(SMALL_D), elements, elements, elements, elements)
def test_norm_multiplicative(D, x, y, u, v):
    K = QuadraticField(D)
    gx, gy, gu, gv = (K(*t) for t in (x, y, u, v))
    if (gx.is_zero() and gy.is_zero()) or (gu.is_zero() and gv.is_zero()):
        return
    I = ideal_from_generators([gx, gy])
    J = ideal_from_generators([gu, gv])
    assert ideal_mul(I, J).norm() == I.norm() * J.norm()
    assert (gx * gu).norm() == gx.norm() * gu.norm()


@given(st.sampled_from(SMALL_D), elements, elements)
def test_pair_norm_matches_ideal(D, u, v):
    K = QuadraticField(D)
    if u == (0, 0) and v == (0, 0):
        return
    assert pair_ideal_norm(K, u, v) == ideal_from_generators([K(*u), K(*v)]).norm()


@given(st.sampled_from(SMALL_D), elements, elements)
def test_class_of_product(D, u, v):
    K = QuadraticField(D)
    G = class_group_compute(K)
    a, b = K(*u), K(*v)
    if a.is_zero() or b.is_zero():
        return
    I = ideal_from_generators([a, K(3)])
    J = ideal_from_generators([b, K(2)])
    assert G.reduce(ideal_mul(I, J)) == G.mul(G.reduce(I), G.reduce(J))
    # principal ideals are trivial
    assert G.reduce(ideal_from_generators([a])) == 0
