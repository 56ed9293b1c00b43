from fractions import Fraction as Fr

import pytest

from conftest import VERTS_INF, VERTS_W2
from projhermite.cusps import cusp_representatives, infinity, mobius_cusp, parse_cusp
from projhermite.envelope import (
    CoverageError, build_skyline, candidate_cusps, class_square_transfer, fundamental_domain,
    is_transfer_matrix, lattice_coordinates, period_lattice, reflect_domain, verify_coverage,
)
from projhermite.number_field import QuadraticField, class_group_compute


@pytest.fixture(scope="module")
def dom_inf(k39):
    return fundamental_domain(infinity(k39), k39)


@pytest.fixture(scope="module")
def dom_w2(k39):
    return fundamental_domain(parse_cusp(k39, "w/2"), k39)


def test_infinity_domain_39(dom_inf):
    S, cert = dom_inf
    assert len(S.cells) == 5
    assert {str(c.owner) for c in S.cells} == {"0", "w/2", "(1+w)/2", "(1+w)/3", "(2+2w)/3"}
    assert set(S.vertices) == set(VERTS_INF.values())
    assert S.h_min == Fr(1, 13)
    assert cert.clean and cert.k_max == 13


def test_w2_domain_39(dom_w2):
    S, cert = dom_w2
    assert len(S.cells) == 3
    assert {str(c.owner) for c in S.cells} == {"0", "(1+w)/4", "1"}
    assert set(S.vertices) == set(VERTS_W2.values())
    assert S.h_min == Fr(1, 13)
    assert cert.clean and cert.k_max == 26


def test_hexagonal_cell(dom_inf):
    S, _ = dom_inf
    sizes = sorted(len(c.vertices) for c in S.cells)
    assert sizes[-1] == 6
    zero = next(c for c in S.cells if str(c.owner) == "0")
    assert {v.point for v in zero.vertices} == {VERTS_INF[i] for i in (1, 2, 3, 4, 5, 6)}


def test_cells_tile_parallelogram(dom_inf, dom_w2):
    for S, _ in (dom_inf, dom_w2):
        assert sum(c.area() for c in S.cells) == S.parallelogram_area()


def test_cells_are_counter_clockwise(dom_inf):
    S, _ = dom_inf
    for c in S.cells:
        assert c.area() > 0
        pts = [(v.point.x, v.point.s) for v in c.vertices]
        signed = sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(pts, pts[1:] + pts[:1]))
        assert signed > 0


def test_period_lattice_w2(k39):
    w = k39.omega
    L = period_lattice(parse_cusp(k39, "w/2"))
    coords = lambda x: lattice_coordinates(x, L)
    assert all(t.denominator == 1 for t in coords(k39(2)) + coords((1 + w) / 2))
    assert any(t.denominator != 1 for t in coords((1 - w) / 2))


def test_candidates_include_owners(dom_inf, k39):
    S, _ = dom_inf
    cands = set(candidate_cusps(infinity(k39), k39))
    assert {c.owner for c in S.cells} <= cands


def test_reflection_matches_direct_build(k39):
    G = class_group_compute(k39)
    reps = cusp_representatives(k39, G)
    S = build_skyline(reps[1], k39)
    R = reflect_domain(S)
    D = build_skyline(R.base, k39)
    assert R.vertices == D.vertices
    assert {c.owner for c in R.cells} == {c.owner for c in D.cells}
    assert verify_coverage(R, k39).clean


def test_transfer_matrix_39(k39):
    lam = parse_cusp(k39, "1+w/3")
    g = class_square_transfer(lam, k39)
    assert is_transfer_matrix(g, lam)
    assert g.det.norm() == 9
    assert mobius_cusp(g, infinity(k39)) == lam


def test_negative_control_shrunk_hemisphere(k39):
    base = infinity(k39)
    S = build_skyline(base, k39, perturb=(parse_cusp(k39, "0"), Fr(9, 10)))
    cert = verify_coverage(S, k39)
    assert not cert.clean
    kinds = {v[0] for v in cert.violations}
    assert "owner" in kinds


def test_negative_control_grown_hemisphere(k39):
    S = build_skyline(infinity(k39), k39, perturb=(parse_cusp(k39, "1+w/3"), Fr(3, 2)))
    assert not verify_coverage(S, k39).clean


def test_dropping_a_cell_is_caught(dom_inf, k39):
    S, _ = dom_inf
    broken = S._replace(cells=S.cells[1:])
    cert = verify_coverage(broken, k39)
    assert any(v[0] == "area" for v in cert.violations)


# unit hemispheres over O_K dominate: one Voronoi cell, h = 1 - (circumradius)^2
@pytest.mark.parametrize("D,cells,verts,hmin", [
    (1, 1, 4, Fr(1, 2)),
    (2, 1, 4, Fr(1, 4)),
    (3, 1, 6, Fr(2, 3)),
])
def test_small_fields(D, cells, verts, hmin):
    K = QuadraticField(D)
    S, cert = fundamental_domain(infinity(K), K)
    assert (len(S.cells), len(S.vertices), S.h_min) == (cells, verts, hmin)
    assert cert.clean


def test_coverage_error_carries_certificate(k39):
    S = build_skyline(infinity(k39), k39, perturb=(parse_cusp(k39, "0"), Fr(9, 10)))
    cert = verify_coverage(S, k39)
    err = CoverageError(cert)
    assert err.certificate is cert and "violation" in str(err)
