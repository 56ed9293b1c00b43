"""Cellular fundamental domains of the skyline of equidistant hemispheres.

Seen from above, the hemispheres S_base(inf, mu) form an upper envelope whose
projection to the (x, s)-plane is a power diagram: hemisphere i is higher
than j over a point z exactly when its power |z-ci|^2 - ri^2 is smaller.
Cells are therefore convex polygons with straight edges, and the construction
runs in three passes:

1. enumerate every hemisphere that can reach the envelope (numpy, integers),
2. find the combinatorics with a floating-point lower convex hull (qhull),
3. rebuild every cell exactly with rational half-plane clipping and certify
   it against the full enumeration.

The certificate only relies on exact rational predicates; the float pass is a
hint that the exact pass is free to correct.
"""

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.spatial import ConvexHull

from .cusps import Cusp, GL2Element, l_matrix
from .geometry import Hemisphere, Point, Side, VertexCandidate, point_vs_hemisphere
from .number_field import (
    class_group_compute, ideal_from_generators, ideal_inverse, ideal_mul,
)

__all__ = [
    "FundamentalCell", "SkylineDomain", "CoverageCertificate", "CoverageError",
    "EnvelopeError", "TransferSearchExhausted", "period_lattice", "candidate_cusps",
    "build_skyline", "verify_coverage", "fundamental_domain", "reflect_domain",
    "class_square_transfer", "is_transfer_matrix", "lattice_coordinates",
]

_FLOAT_TOL = 1e-8
_MAX_REPAIR_ROUNDS = 8


class EnvelopeError(RuntimeError):
    """The envelope is degenerate (a vertex at height 0) or could not be repaired."""


class CoverageError(RuntimeError):
    def __init__(self, certificate):
        super().__init__(f"coverage check failed for base {certificate.base}: "
                         f"{len(certificate.violations)} violation(s)")
        self.certificate = certificate


class TransferSearchExhausted(RuntimeError):
    pass


class FundamentalCell(NamedTuple):
    owner: Cusp
    hemisphere: Hemisphere
    vertices: tuple          # VertexCandidate, counter-clockwise
    arcs: tuple              # ((i, j), neighbouring cusp)

    def area(self):
        return _polygon_area([(v.point.x, v.point.s) for v in self.vertices])


class SkylineDomain(NamedTuple):
    base: Cusp
    cells: tuple
    parallelogram: tuple     # (pi1, pi2) as field elements
    h_min: Fraction
    transform: GL2Element = None
    m_max: int = 0
    hemisphere_count: int = 0

    @property
    def K(self):
        return self.base.K

    @property
    def vertices(self):
        """Distinct cell vertices, sorted by (x, s, h)."""
        return sorted({v.point for c in self.cells for v in c.vertices})

    def eta_sq_at(self, P):
        """Squared base-distance of a point of this domain."""
        return _Frame(self.base).sigma / P.h

    def parallelogram_area(self):
        (x1, s1), (x2, s2) = ((p.re, p.im) for p in self.parallelogram)
        return abs(x1 * s2 - x2 * s1)


class CoverageCertificate(NamedTuple):
    base: Cusp
    k_max: int
    checked_count: int
    violations: tuple

    @property
    def clean(self):
        return not self.violations


# ---------------------------------------------------------------------------
# per-base constants and the lattice

class _Frame:
    """Constants of a base cusp: sigma with eta^2 = sigma/h, and the radius-bound scale."""

    def __init__(self, base):
        K = base.K
        self.base = base
        self.K = K
        self.D = K.D
        if base.is_infinity:
            self.Nl = 1
            self.sigma = Fraction(1)
            self.lemma = Fraction(1)
        else:
            n = base.n
            self.Nl = int(base.ideal().norm())
            self.sigma = Fraction(n * n, self.Nl * self.Nl)
            self.lemma = Fraction(n * n, self.Nl)
        if K.half:
            self.w2 = (-K._c0, 1)
            self.wx, self.ws = Fraction(1, 2), Fraction(1, 2)
        else:
            self.w2 = (-K.D, 0)
            self.wx, self.ws = Fraction(0), Fraction(1)


def period_lattice(base, F=None):
    """Basis (pi1, pi2) of the translation lattice of the base-cusp skyline."""
    K = base.K
    if base.is_infinity:
        return K.one, K.omega
    inv = ideal_inverse(base.ideal())
    sq = ideal_mul(inv, inv)
    J = ideal_from_generators([e * base.n for e in sq.basis])
    return J.basis


def lattice_coordinates(c, lattice):
    """Exact (u, v) with c = u*pi1 + v*pi2."""
    p1, p2 = lattice
    det = p1.a * p2.b - p2.a * p1.b
    u = (c.a * p2.b - p2.a * c.b) / det
    v = (p1.a * c.b - c.a * p1.b) / det
    return u, v


def _in_half_open(c, lattice):
    u, v = lattice_coordinates(c, lattice)
    return 0 <= u < 1 and 0 <= v < 1


def _reduce_mod_lattice(c, lattice):
    u, v = lattice_coordinates(c, lattice)
    p1, p2 = lattice
    return c - p1 * math.floor(u) - p2 * math.floor(v)


# ---------------------------------------------------------------------------
# vectorised enumeration of cusps gamma/m

def _mul_vec(w2, p, q, a, b):
    """(p + q w)(a + b w) for scalar p, q and arrays a, b."""
    return p * a + q * b * w2[0], p * b + q * a + q * b * w2[1]


def _pair_norm_vec(w2, ua, ub, va, vb):
    """gcd of the 2x2 minors of u, u*w, v, v*w: the norm of <u, v>."""
    def times_w(p, q):
        return q * w2[0], p + q * w2[1]
    vecs = [(ua, ub), times_w(ua, ub), (va, vb), times_w(va, vb)]
    g = np.zeros_like(ua)
    for i in range(4):
        for j in range(i + 1, 4):
            g = np.gcd(g, vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0])
    return g


class _Batch(NamedTuple):
    m: np.ndarray
    a: np.ndarray
    b: np.ndarray
    nval: np.ndarray        # r2 = nval / (Nl * m^2)
    x: np.ndarray           # float centre, y = s*sqrt(D)
    y: np.ndarray
    r2: np.ndarray


def _enumerate(fr, lattice, m_max, margin, keep):
    """All primitive gamma/m, m <= m_max, within ``margin(m)`` of the parallelogram.

    ``keep(nval, m)`` filters on the exact radius (integer arithmetic).
    """
    p1, p2 = lattice
    P = np.array([[float(p1.a), float(p2.a)], [float(p1.b), float(p2.b)]])
    Pinv = np.linalg.inv(P)
    n1, n2 = math.sqrt(float(p1.norm())), math.sqrt(float(p2.norm()))
    covol = math.sqrt(fr.D) * (0.5 if fr.K.half else 1.0)
    area = abs(np.linalg.det(P)) * covol
    if fr.base.is_infinity:
        al = None
    else:
        al = (int(fr.base.alpha.a), int(fr.base.alpha.b))
        nb = fr.base.n
    out = []
    for m in range(1, m_max + 1):
        rho = margin(m)
        t1, t2 = rho * n2 / area, rho * n1 / area
        us = np.array([-t1, 1 + t1])
        vs = np.array([-t2, 1 + t2])
        corners = np.array([[u, v] for u in us for v in vs]) @ P.T * m
        lo = np.floor(corners.min(axis=0)).astype(np.int64)
        hi = np.ceil(corners.max(axis=0)).astype(np.int64)
        A, B = np.meshgrid(np.arange(lo[0], hi[0] + 1, dtype=np.int64),
                           np.arange(lo[1], hi[1] + 1, dtype=np.int64), indexing="ij")
        a, b = A.ravel(), B.ravel()
        uv = np.stack([a, b]).T.astype(float) @ Pinv.T / m
        ok = ((uv[:, 0] >= -t1 - 1e-12) & (uv[:, 0] <= 1 + t1 + 1e-12)
              & (uv[:, 1] >= -t2 - 1e-12) & (uv[:, 1] <= 1 + t2 + 1e-12))
        a, b = a[ok], b[ok]
        ok = np.gcd(np.gcd(a, b), m) == 1
        a, b = a[ok], b[ok]
        if not a.size:
            continue
        if al is None:
            nval = _pair_norm_vec(fr.w2, a, b, np.full_like(a, m), np.zeros_like(a))
        else:
            ua, ub = _mul_vec(fr.w2, al[0], al[1], a, b)
            ua = ua + m
            nval = _pair_norm_vec(fr.w2, ua, ub, nb * a, nb * b)
        ok = keep(nval, m)
        a, b, nval = a[ok], b[ok], nval[ok]
        if a.size:
            out.append((np.full_like(a, m), a, b, nval))
    if not out:
        z = np.zeros(0, dtype=np.int64)
        return _Batch(z, z, z, z, z.astype(float), z.astype(float), z.astype(float))
    m, a, b, nval = (np.concatenate(t) for t in zip(*out))
    x = (a + b * float(fr.wx)) / m
    y = b * float(fr.ws) * math.sqrt(fr.D) / m
    r2 = nval / (fr.Nl * m.astype(float) ** 2)
    return _Batch(m, a, b, nval, x, y, r2)


def _exact_hemisphere(fr, batch, i, perturb=None):
    K = fr.K
    m = int(batch.m[i])
    a, b = int(batch.a[i]), int(batch.b[i])
    mu = Cusp(K, K(a, b), m)
    r2 = Fraction(int(batch.nval[i]), fr.Nl * m * m)
    if perturb is not None and perturb[0] == mu:
        r2 *= perturb[1]
    return Hemisphere(fr.base, mu, (a + b * fr.wx) / m, b * fr.ws / m, r2)


def candidate_cusps(base, F=None, translates=True):
    """Cusps gamma/m of the closed parallelogram with 0 < m < N<alpha,n>|d_K|/2.

    With ``translates`` the eight lattice translates of each are appended.
    """
    fr = _Frame(base)
    lattice = period_lattice(base)
    bound = Fraction(fr.Nl * abs(fr.K.d_K), 2)
    m_max = math.ceil(bound) - 1
    batch = _enumerate(fr, lattice, m_max, lambda m: 0.0,
                       lambda nval, m: np.ones(nval.shape, dtype=bool))
    K = fr.K
    found = []
    for i in range(batch.m.size):
        mu = Cusp(K, K(int(batch.a[i]), int(batch.b[i])), int(batch.m[i]))
        u, v = lattice_coordinates(mu.value, lattice)
        if 0 <= u <= 1 and 0 <= v <= 1:
            found.append(mu)
    found = sorted(set(found), key=lambda c: (c.n, c.value.re, c.value.im))
    if not translates:
        return found
    p1, p2 = lattice
    shifts = [p1, -p1, p2, -p2, p1 + p2, -p1 - p2, p1 - p2, p2 - p1]
    out = list(found)
    seen = set(found)
    for mu in found:
        for t in shifts:
            c = mu.translate(t)
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


# ---------------------------------------------------------------------------
# exact polygons

def _polygon_area(pts):
    n = len(pts)
    acc = Fraction(0)
    for i in range(n):
        x1, s1 = pts[i]
        x2, s2 = pts[(i + 1) % n]
        acc += x1 * s2 - x2 * s1
    return abs(acc) / 2


def _clip(poly, A, B, C):
    """Keep the part of ``poly`` with A x + B s <= C."""
    out = []
    n = len(poly)
    if not n:
        return out
    vals = [A * x + B * s - C for x, s in poly]
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp, fq = vals[i], vals[(i + 1) % n]
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _clean(poly):
    pts = []
    for p in poly:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if cross == 0:
                del pts[i]
                changed = True
                break
    if len(pts) < 3:
        return []
    return pts


def _radical(Hi, Hj, D):
    A = 2 * (Hj.cx - Hi.cx)
    B = 2 * D * (Hj.cs - Hi.cs)
    C = (Hj.cx ** 2 + D * Hj.cs ** 2 - Hj.r2) - (Hi.cx ** 2 + D * Hi.cs ** 2 - Hi.r2)
    return A, B, C


def _upper_rational(t):
    """A rational >= the positive float t (generously)."""
    return Fraction(t * 1.001 + 1e-6).limit_denominator(10 ** 6) + Fraction(1, 10 ** 5)


def _exact_cell(owner, neighbours, D):
    r = math.sqrt(float(owner.r2))
    rx = _upper_rational(r)
    rs = _upper_rational(r / math.sqrt(D))
    poly = [(owner.cx - rx, owner.cs - rs), (owner.cx + rx, owner.cs - rs),
            (owner.cx + rx, owner.cs + rs), (owner.cx - rx, owner.cs + rs)]
    for H in neighbours:
        poly = _clip(poly, *_radical(owner, H, D))
        if not poly:
            return []
    return _clean(poly)


# ---------------------------------------------------------------------------
# the build

def _float_survivors(batch):
    """Indices on the lower hull of the lifted points and their adjacency."""
    n = batch.m.size
    pts = np.column_stack([batch.x, batch.y, batch.x ** 2 + batch.y ** 2 - batch.r2])
    hull = ConvexHull(pts)
    lower = hull.equations[:, 2] < -1e-12
    adj = {}
    for simplex in hull.simplices[lower]:
        for i in simplex:
            adj.setdefault(int(i), set()).update(int(j) for j in simplex if j != i)
    assert all(0 <= i < n for i in adj)
    return adj


def _float_cover(batch, D, px, ps, ph):
    """f[j, k] = power of vertex k w.r.t. hemisphere j plus its height (Outside > 0)."""
    y = np.asarray(ps, dtype=float) * math.sqrt(D)
    dx = np.asarray(px, dtype=float)[None, :] - batch.x[:, None]
    dy = y[None, :] - batch.y[:, None]
    return dx * dx + dy * dy + np.asarray(ph, dtype=float)[None, :] - batch.r2[:, None]


def _check_vertices(fr, batch, hemis, pts, exclude, perturb):
    """Exact Inside/On classification of points against all hemispheres of ``batch``.

    Returns (inside, on) as lists of index lists, one per point.
    """
    f = _float_cover(batch, fr.D, [p.x for p in pts], [p.s for p in pts], [p.h for p in pts])
    scale = 1.0 + np.abs(batch.r2)[:, None]
    near = f <= _FLOAT_TOL * scale
    inside = [[] for _ in pts]
    on = [[] for _ in pts]
    for j, k in zip(*np.nonzero(near)):
        j, k = int(j), int(k)
        if j in exclude:
            continue
        H = hemis.get(j)
        if H is None:
            H = hemis[j] = _exact_hemisphere(fr, batch, j, perturb)
        side = point_vs_hemisphere(pts[k], H, fr.D)
        if side is Side.INSIDE:
            inside[k].append(j)
        elif side is Side.ON:
            on[k].append(j)
    return inside, on


def _overlapping(batch, i):
    d2 = (batch.x - batch.x[i]) ** 2 + (batch.y - batch.y[i]) ** 2
    rr = np.sqrt(batch.r2) + math.sqrt(batch.r2[i])
    idx = np.nonzero(d2 < rr * rr * (1 + 1e-9) + 1e-12)[0]
    return [int(j) for j in idx if j != i]


def build_skyline(base, F=None, *, perturb=None):
    """The base-cusp skyline over one period parallelogram, with exact cells.

    ``perturb=(cusp, factor)`` scales that cusp's radius^2 during the build; it
    exists to exercise the coverage certificate on a deliberately wrong domain.
    """
    fr = _Frame(base)
    K, D = fr.K, fr.D
    lattice = period_lattice(base)
    # heights on the envelope satisfy sigma/h <= |d_K|/2 (upper reduction constant)
    h_lb = 2 * fr.sigma / abs(K.d_K)
    m_max = int(fr.lemma / h_lb)
    r_own = math.sqrt(float(fr.lemma))
    num, den = h_lb.numerator, h_lb.denominator

    def keep(nval, m):
        return nval * den >= num * fr.Nl * m * m

    batch = _enumerate(fr, lattice, m_max, lambda m: r_own + math.sqrt(float(fr.lemma) / m), keep)
    if batch.m.size < 4:
        raise EnvelopeError("too few hemispheres")
    adj = _float_survivors(batch)
    hemis = {}

    def H(j):
        if j not in hemis:
            hemis[j] = _exact_hemisphere(fr, batch, j, perturb)
        return hemis[j]

    owners = [i for i in sorted(adj) if _in_half_open(H(i).mu.value, lattice)]
    clip_sets = {i: set(adj[i]) for i in owners}
    cells = _assemble(fr, batch, H, hemis, owners, clip_sets, perturb)
    total = sum((_polygon_area(poly) for _, poly, _ in cells), Fraction(0))
    par = SkylineDomain(base, (), lattice, Fraction(1)).parallelogram_area()
    if total != par and perturb is None:
        # float hint missed an owner: fall back to every hemisphere in the cell
        owners = [i for i in range(batch.m.size) if _in_half_open(H(i).mu.value, lattice)]
        clip_sets = {i: set(_overlapping(batch, i)) for i in owners}
        cells = _assemble(fr, batch, H, hemis, owners, clip_sets, perturb)
    out = []
    for i, poly, sup in cells:
        out.append(_make_cell(H(i), poly, sup, fr, H))
    out.sort(key=lambda c: (c.hemisphere.cx, c.hemisphere.cs))
    hs = [v.point.h for c in out for v in c.vertices]
    if not hs:
        raise EnvelopeError("empty envelope")
    h_min = min(hs)
    if h_min <= 0:
        raise EnvelopeError(f"envelope touches the boundary (h_min = {h_min})")
    return SkylineDomain(base, tuple(out), lattice, h_min, l_matrix(base), m_max, batch.m.size)


def _assemble(fr, batch, H, hemis, owners, clip_sets, perturb):
    """Clip each owner until its vertices are certified against ``batch``."""
    D = fr.D
    result = []
    for i in owners:
        Hi = H(i)
        for _ in range(_MAX_REPAIR_ROUNDS):
            nbrs = sorted(clip_sets[i], key=lambda j: (batch.x[j] - batch.x[i]) ** 2
                          + (batch.y[j] - batch.y[i]) ** 2)
            poly = _exact_cell(Hi, [H(j) for j in nbrs], D)
            if not poly or _polygon_area(poly) == 0:
                poly = []
                break
            pts = [Point(x, s, Hi.height_at(x, s, D)) for x, s in poly]
            inside, on = _check_vertices(fr, batch, hemis, pts, {i}, perturb)
            bad = {j for lst in inside for j in lst}
            if not bad:
                break
            clip_sets[i] |= bad
        else:
            raise EnvelopeError(f"could not certify the cell of {Hi.mu}")
        if poly:
            result.append((i, poly, on))
    return result


def _canonical_cycle(items, key):
    k = min(range(len(items)), key=lambda t: key(items[t]))
    return items[k:] + items[:k]


def _make_cell(Hi, poly, on, fr, H):
    D = fr.D
    # counter-clockwise orientation in the (x, s) plane
    if sum(poly[k][0] * poly[(k + 1) % len(poly)][1] - poly[(k + 1) % len(poly)][0] * poly[k][1]
           for k in range(len(poly))) < 0:
        poly = poly[::-1]
        on = on[::-1]
    verts = []
    for (x, s), sup in zip(poly, on):
        P = Point(x, s, Hi.height_at(x, s, D))
        cusps = sorted({Hi.mu, *(H(j).mu for j in sup)}, key=lambda c: c.key())
        verts.append(VertexCandidate(P, tuple(cusps)))
    verts = _canonical_cycle(verts, key=lambda v: v.point)
    arcs = []
    n = len(verts)
    for k in range(n):
        a, b = verts[k], verts[(k + 1) % n]
        common = [c for c in a.supports if c in b.supports and c != Hi.mu]
        arcs.append(((k, (k + 1) % n), common[0] if common else None))
    return FundamentalCell(Hi.mu, Hi, tuple(verts), tuple(arcs))


# ---------------------------------------------------------------------------
# certificate

def verify_coverage(S, F=None):
    """Exhaustive check that no hemisphere strictly covers a point of the domain.

    Each cell is convex and the difference of two powers is affine, so a
    hemisphere that rises above the owner anywhere on a cell does so at a
    vertex.  Such a hemisphere has r^2 > h_min, hence denominator
    k <= n^2/(N<alpha,n> h_min) by the radius bound; all of them are
    enumerated afresh.  Together with an exact area count this shows that the
    cells tile a period parallelogram.
    """
    base = S.base
    fr = _Frame(base)
    D = fr.D
    lattice = period_lattice(base)
    violations = []
    if tuple(lattice) != tuple(S.parallelogram):
        violations.append(("lattice", "parallelogram differs from the period lattice", None))
    h_min = S.h_min
    if h_min <= 0:
        violations.append(("height", f"h_min = {h_min}", None))
        return CoverageCertificate(base, 0, 0, tuple(violations))
    k_max = int(fr.lemma / h_min)
    r_own = max((math.sqrt(float(c.hemisphere.r2)) for c in S.cells), default=0.0)
    num, den = h_min.numerator, h_min.denominator

    def keep(nval, m):
        return nval * den > num * fr.Nl * m * m

    batch = _enumerate(fr, lattice, k_max,
                       lambda m: r_own + math.sqrt(float(fr.lemma) / m), keep)
    fresh = {}
    index = {}
    for j in range(batch.m.size):
        mu = Cusp(fr.K, fr.K(int(batch.a[j]), int(batch.b[j])), int(batch.m[j]))
        index[mu] = j
    seen = set()
    total = Fraction(0)
    for cell in S.cells:
        mu = cell.owner
        if not _in_half_open(mu.value, lattice):
            violations.append(("owner", "owner outside the half-open parallelogram", mu))
        red = _reduce_mod_lattice(mu.value, lattice)
        if red in seen:
            violations.append(("owner", "two cells with lattice-equivalent owners", mu))
        seen.add(red)
        j = index.get(mu)
        if j is None:
            violations.append(("owner", "owner hemisphere not in the enumeration", mu))
        else:
            fresh[j] = _exact_hemisphere(fr, batch, j)
            if fresh[j] != cell.hemisphere:
                violations.append(("owner", "stored hemisphere differs from recomputation", mu))
        pts = [v.point for v in cell.vertices]
        for P in pts:
            if P.h <= 0:
                violations.append(("height", f"vertex {P} has h <= 0", mu))
            if point_vs_hemisphere(P, cell.hemisphere, D) is not Side.ON:
                violations.append(("owner", f"vertex {P} is off its owner", mu))
        if pts:
            inside, _ = _check_vertices(fr, batch, fresh, pts, set(), None)
            for P, lst in zip(pts, inside):
                for j in lst:
                    violations.append(("covered", f"vertex {P} strictly covered", fresh[j].mu))
        total += cell.area()
    par = S.parallelogram_area()
    if total != par:
        violations.append(("area", f"cells cover {total}, parallelogram {par}", None))
    return CoverageCertificate(base, k_max, int(batch.m.size), tuple(violations))


def fundamental_domain(base, F=None):
    """Certified domain of the base skyline, tagged with L_base."""
    S = build_skyline(base, F)
    cert = verify_coverage(S, F)
    if not cert.clean:
        raise CoverageError(cert)
    return S, cert


def reflect_domain(S):
    """Mirror image through Im(z) = 0: the domain for the conjugate base cusp."""
    base = S.base.conj()
    cells = []
    for c in S.cells:
        H = c.hemisphere
        Hr = Hemisphere(base, c.owner.conj(), H.cx, -H.cs, H.r2)
        verts = [VertexCandidate(v.point.conj(), tuple(sorted((m.conj() for m in v.supports),
                                                              key=lambda t: t.key())))
                 for v in reversed(c.vertices)]
        verts = _canonical_cycle(verts, key=lambda v: v.point)
        n = len(verts)
        arcs = []
        for k in range(n):
            a, b = verts[k], verts[(k + 1) % n]
            common = [m for m in a.supports if m in b.supports and m != Hr.mu]
            arcs.append(((k, (k + 1) % n), common[0] if common else None))
        cells.append(FundamentalCell(Hr.mu, Hr, tuple(verts), tuple(arcs)))
    cells.sort(key=lambda c: (c.hemisphere.cx, c.hemisphere.cs))
    lattice = period_lattice(base)
    cells = [_shift_cell(c, lattice) for c in cells]
    cells.sort(key=lambda c: (c.hemisphere.cx, c.hemisphere.cs))
    return SkylineDomain(base, tuple(cells), lattice, S.h_min, l_matrix(base),
                         S.m_max, S.hemisphere_count)


def _shift_cell(c, lattice):
    """Translate a cell so that its owner lies in the half-open parallelogram."""
    red = _reduce_mod_lattice(c.owner.value, lattice)
    t = red - c.owner.value
    if t.is_zero():
        return c
    H = c.hemisphere
    mu = c.owner.translate(t)
    Hs = Hemisphere(H.base, mu, H.cx + t.re, H.cs + t.im, H.r2)
    verts = tuple(VertexCandidate(v.point.translate(t),
                                  tuple(sorted((m.translate(t) for m in v.supports),
                                               key=lambda q: q.key())))
                  for v in c.vertices)
    arcs = tuple((e, None if m is None else m.translate(t)) for e, m in c.arcs)
    return FundamentalCell(mu, Hs, verts, arcs)


# ---------------------------------------------------------------------------
# transfer matrices for classes of order two

def _short_elements(I, bound):
    """Elements x of the ideal I with N(x) <= bound, by Fincke-Pohst on the norm form."""
    e1, e2 = I.basis
    A = e1.norm()
    B = (e1 * e2.conj()).trace()
    C = e2.norm()
    disc = 4 * A * C - B * B
    out = []
    c2max = math.isqrt(int(4 * A * bound / disc) + 1) + 1
    for c2 in range(-c2max, c2max + 1):
        # A c1^2 + B c1 c2 + C c2^2 <= bound
        mid = -B * c2 / (2 * A)
        rad2 = (bound - C * c2 * c2) / A + mid * mid
        if rad2 < 0:
            continue
        rad = math.sqrt(float(rad2)) + 1
        for c1 in range(math.floor(float(mid) - rad), math.ceil(float(mid) + rad) + 1):
            x = e1 * c1 + e2 * c2
            if not x.is_zero() and x.norm() <= bound:
                out.append(x)
    return out


def is_transfer_matrix(g, lam):
    """Rows and columns generate <alpha, n>, |det g| = N<alpha, n>, and g(inf) = lam."""
    from .cusps import mobius_cusp, infinity

    I = lam.ideal() if not lam.is_infinity else ideal_from_generators([lam.K.one])
    rows_cols = [(g.a, g.b), (g.c, g.d), (g.a, g.c), (g.b, g.d)]
    for u, v in rows_cols:
        if u.is_zero() and v.is_zero():
            return False
        if ideal_from_generators([u, v]) != I:
            return False
    if g.det.norm() != I.norm() ** 2:
        return False
    return mobius_cusp(g, infinity(lam.K)) == lam


def class_square_transfer(lam, F=None, cap=None):
    """A matrix (alpha y; n w) of determinant a generator of <alpha, n>^2.

    y runs over a box of HNF coordinates of <alpha, n> of half-width ``cap``
    (default from HERMITE_SEARCH_CAP, else 10).
    """
    import os

    K = lam.K
    if cap is None:
        cap = int(os.environ.get("HERMITE_SEARCH_CAP", "10"))
    if lam.is_infinity:
        return GL2Element.identity(K)
    G = class_group_compute(K)
    I = lam.ideal()
    cls = G.reduce(I)
    if G.mul(cls, cls) != 0:
        raise ValueError(f"the class of {lam} does not square to the identity")
    I2 = ideal_mul(I, I)
    target = I2.norm()
    gens = [t for t in _short_elements(I2, target) if t.norm() == target]
    if not gens:
        raise TransferSearchExhausted(f"no generator of <alpha, n>^2 found for {lam}")
    gens.sort(key=lambda t: (t.b < 0, t.a < 0, abs(t.b), abs(t.a)))
    alpha, n = lam.alpha, K(lam.n)
    e1, e2 = I.basis
    order = sorted(((c1, c2) for c1 in range(-cap, cap + 1) for c2 in range(-cap, cap + 1)),
                   key=lambda c: (max(abs(c[0]), abs(c[1])), abs(c[0]) + abs(c[1]), c))
    for t in gens:
        for c1, c2 in order:
            y = e1 * c1 + e2 * c2
            w = (t + n * y) / alpha
            if not I.contains(w):
                continue
            g = GL2Element(alpha, y, n, w)
            if is_transfer_matrix(g, lam):
                return g
    raise TransferSearchExhausted(f"transfer search for {lam} exhausted at cap {cap}")

