"""Projective Hermite constants and absolutely projective extreme forms.

gamma_K^p is the maximum over H^3 of eta_K(P) = min over cusps of dist(P, mu).
The maximum sits at a vertex of the skyline of some cusp representative, where
eta equals the distance to the base cusp, i.e. sigma/h in base coordinates.
Every such value is re-derived here from scratch by ``eta_exact``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .cusps import (
    Cusp, GL2Element, cusp_normalize, cusp_representatives, infinity, l_matrix,
    mobius_point,
)
from .envelope import (
    TransferSearchExhausted, _short_elements, build_skyline, class_square_transfer,
    reflect_domain, verify_coverage, CoverageError,
)
from .geometry import Point, dist_sq
from .number_field import class_group_compute, pair_ideal_norm

__all__ = [
    "ExactSqrt", "HermitianFormExact", "ExtremeReport", "CrossCheckError", "ClaimMismatch",
    "OracleResult", "OppenheimResult", "eta_exact", "projective_hermite_constant",
    "psi_map", "phi_map", "projective_minimum_check", "orbit_reduce", "oppenheim_check",
    "numeric_eta_oracle", "reduce_mod_translations", "to_infinity_matrix",
]


class CrossCheckError(RuntimeError):
    pass


class ClaimMismatch(ValueError):
    def __init__(self, claimed, minimizers):
        super().__init__(f"minimum not attained at {claimed}; minimizers: "
                         + ", ".join(map(str, minimizers)))
        self.claimed = claimed
        self.minimizers = minimizers


class ExactSqrt:
    """The non-negative real number sqrt(radicand)."""

    __slots__ = ("radicand",)

    def __init__(self, radicand):
        radicand = Fraction(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        self.radicand = radicand

    def square(self):
        return self.radicand

    def __float__(self):
        return math.sqrt(self.radicand)

    def __eq__(self, o):
        return isinstance(o, ExactSqrt) and self.radicand == o.radicand

    def __lt__(self, o):
        return self.radicand < o.radicand

    def __le__(self, o):
        return self.radicand <= o.radicand

    def __hash__(self):
        return hash(("sqrt", self.radicand))

    def __repr__(self):
        return f"ExactSqrt({self.radicand})"

    def __str__(self):
        r = self.radicand
        return f"sqrt({r.numerator}/{r.denominator})"


class HermitianFormExact(NamedTuple):
    """(1/sqrt(h)) * [[a_num, b], [conj(b), c_num]] with b = b_re + b_im*sqrt(D)*i."""

    a_num: Fraction
    b_re: Fraction
    b_im: Fraction
    c_num: Fraction
    h: Fraction
    D: int

    def det_num(self):
        return self.a_num * self.c_num - (self.b_re ** 2 + self.D * self.b_im ** 2)

    def det(self):
        return self.det_num() / self.h

    def is_positive_definite(self):
        return self.h > 0 and self.a_num > 0 and self.det_num() > 0

    def b(self, K):
        return K.from_xs(self.b_re, self.b_im)

    def value_num(self, v, K):
        """sqrt(h) * S(v) for v = (alpha, beta) in K^2; rational."""
        al, be = v
        b = self.b(K)
        return self.a_num * al.norm() + (al.conj() * b * be).trace() + self.c_num * be.norm()

    def value(self, v, K):
        n = self.value_num(v, K)
        if n < 0:
            raise ValueError("form is not positive definite")
        return ExactSqrt(n * n / self.h)

    def conjugate(self):
        """The presentation with b replaced by its conjugate."""
        return self._replace(b_im=-self.b_im)

    def act(self, g, K):
        """g . S = |det g| (g^-1)^* S g^-1, for g with |det g| rational."""
        dn = g.det.norm()
        r = Fraction(math.isqrt(dn.numerator), math.isqrt(dn.denominator))
        if r * r != dn:
            raise ValueError("|det g| must be rational")
        gi = g.inverse()
        a, b, c, d = gi.entries()
        B = self.b(K)
        A, C = K(self.a_num), K(self.c_num)
        # M = (g^-1)^* S g^-1 on the numerators
        m11 = a.conj() * (A * a + B * c) + c.conj() * (B.conj() * a + C * c)
        m12 = a.conj() * (A * b + B * d) + c.conj() * (B.conj() * b + C * d)
        m22 = b.conj() * (A * b + B * d) + d.conj() * (B.conj() * b + C * d)
        return HermitianFormExact(r * m11.re, r * m12.re, r * m12.im, r * m22.re, self.h, self.D)

    def to_sympy(self):
        import sympy as sp

        rt = sp.sqrt(sp.Rational(self.h.numerator, self.h.denominator))
        q = lambda f: sp.Rational(f.numerator, f.denominator)
        b = (q(self.b_re) + q(self.b_im) * sp.sqrt(self.D) * sp.I) / rt
        return sp.Matrix([[q(self.a_num) / rt, b], [sp.conjugate(b), q(self.c_num) / rt]])

    def __str__(self):
        import sympy as sp

        M = self.to_sympy()
        return "[" + ", ".join(str(sp.nsimplify(sp.radsimp(x))) for x in (M[0, 0], M[0, 1], M[1, 1])) + "]"


def psi_map(P, F):
    """Psi_1(z, zeta) = (1/zeta) [[1, -z], [-conj z, |z|^2 + zeta^2]]."""
    D = F.D
    return HermitianFormExact(Fraction(1), -P.x, -P.s, P.x ** 2 + D * P.s ** 2 + P.h, P.h, D)


def phi_map(S, F=None):
    """Phi(S) = (-b/a, sqrt(ac - |b|^2)/a)."""
    if not S.is_positive_definite():
        raise ValueError("phi_map needs a positive definite form")
    return Point(-S.b_re / S.a_num, -S.b_im / S.a_num, S.det_num() / S.a_num ** 2)


# ---------------------------------------------------------------------------
# exact eta

def _lattice_points_near(K, w_re, w_y, R2):
    """(a, b) with |a + b*w - w|^2 <= R2, w given as (real part, imaginary part)."""
    if R2 < 0:
        return
    r = math.sqrt(R2)
    ws = (0.5 if K.half else 1.0) * math.sqrt(K.D)
    wx = 0.5 if K.half else 0.0
    for b in range(math.floor((w_y - r) / ws), math.ceil((w_y + r) / ws) + 1):
        dy = b * ws - w_y
        rem = R2 - dy * dy
        if rem < 0:
            continue
        rr = math.sqrt(rem)
        cx = w_re - b * wx
        for a in range(math.floor(cx - rr), math.ceil(cx + rr) + 1):
            yield a, b


def eta_exact(P, F):
    """Exact eta(P)^2 and every cusp realising it.

    dist(P, delta/k) >= k*zeta because N<delta, k> <= k for a reduced cusp, so
    only k with k^2 h <= (current best) need to be examined.
    """
    K = F
    D = K.D
    best = 1 / P.h
    argmin = [infinity(K)]
    zx, zy = float(P.x), float(P.s) * math.sqrt(D)
    hf = float(P.h)
    k = 1
    while k * k * P.h <= best:
        bf = float(best)
        R2 = k * math.sqrt(bf * hf) - k * k * hf
        R2 = R2 * (1 + 1e-9) + 1e-9
        for a, b in _lattice_points_near(K, k * zx, k * zy, R2):
            if math.gcd(math.gcd(a, b), k) != 1:
                continue
            delta = K(a, b)
            N = pair_ideal_norm(K, (a, b), (k, 0))
            c = delta / k
            dx = zx - float(c.re)
            dy = zy - float(c.im) * math.sqrt(D)
            approx = (k * k * (dx * dx + dy * dy + hf)) ** 2 / (hf * N * N)
            if approx > bf * (1 + 1e-9) + 1e-12:
                continue
            mu = Cusp(K, delta, k)
            d2 = dist_sq(P, mu, K)
            if d2 < best:
                best, argmin = d2, [mu]
                bf = float(best)
            elif d2 == best:
                argmin.append(mu)
        k += 1
    argmin.sort(key=lambda c: c.key())
    return best, argmin


# ---------------------------------------------------------------------------
# minima of forms

def projective_minimum_check(S, claimed, F):
    """Squared projective minimum of a determinant-one form, attained at ``claimed``."""
    if S.det() != 1:
        raise ValueError(f"form has determinant {S.det()}, expected 1")
    P = phi_map(S, F)
    eta_sq, argmin = eta_exact(P, F)
    al, be = claimed
    mu = cusp_normalize(al, be)
    if mu not in argmin:
        raise ClaimMismatch(mu, argmin)
    # the arithmetic reading S(v)/N<v> agrees with the geometric one
    n = pair_ideal_norm(F, (int(al.a), int(al.b)), (int(be.a), int(be.b))) if (
        al.is_integral() and be.is_integral()) else None
    if n is not None:
        val = S.value_num((al, be), F)
        if val * val / (S.h * n * n) != eta_sq:
            raise CrossCheckError("arithmetic and geometric minima disagree")
    return eta_sq


# ---------------------------------------------------------------------------
# orbits

def _centered(c, lattice_b):
    """Reduce an element of K modulo O_K into u, v in [-1/2, 1/2) (coordinates in 1, w)."""
    K = c.K
    v = c.b
    u = c.a
    fv = math.floor(v + Fraction(1, 2))
    fu = math.floor(u + Fraction(1, 2))
    return c - K(fu, fv)


def reduce_mod_translations(P, F):
    """Canonical representative of P modulo z -> z + O_K."""
    z = F.from_xs(P.x, P.s)
    r = _centered(z, None)
    return Point(r.re, r.im, P.h)


def _label(P, F, with_negation):
    a = reduce_mod_translations(P, F)
    if not with_negation:
        return a
    b = reduce_mod_translations(Point(-P.x, -P.s, P.h), F)
    return min(a, b)


class OrbitEntry(NamedTuple):
    point: Point
    sl2_label: Point         # class modulo Gamma(inf)
    gl2_label: Point         # also modulo z -> -z
    identified: bool         # False when the Gamma-class could not be matched to base inf


def orbit_reduce(vertices, F):
    """Label points of the base-inf skyline modulo Gamma(inf), and modulo GL2 as well.

    Gamma(inf) acts by z -> u^2 z + b; away from D = 1, 3 this is translation by
    O_K.  For d_K = -3, -4 the extra rotations are not quotiented (labels are
    finer than the true orbits there).
    """
    out = []
    for v in vertices:
        P = v.point if hasattr(v, "point") else v
        out.append(OrbitEntry(P, _label(P, F, False), _label(P, F, True), True))
    return out


def _bezout(p, q):
    """a, b in O_K with a*p + b*q = 1, for coprime integral p, q.

    Integer row reduction of the generators p, p*w, q, q*w of O_K, tracking the
    multipliers; the result is then shortened by (a, b) -> (a + t q, b - t p).
    """
    K = p.K
    gens = [p, p * K.omega, q, q * K.omega]
    rows = [[int(g.a), int(g.b)] + [int(i == j) for j in range(4)] for i, g in enumerate(gens)]
    for col, start in ((1, 0), (0, 1)):
        live = rows[start:]
        while sum(1 for r in live if r[col]) > 1:
            live.sort(key=lambda r: (r[col] == 0, abs(r[col])))
            piv = live[0]
            for r in live[1:]:
                if r[col]:
                    f = r[col] // piv[col]
                    for j in range(6):
                        r[j] -= f * piv[j]
        live.sort(key=lambda r: (r[col] == 0, abs(r[col])))
        rows[start:] = live
    # rows[0] = (x, +-1, ...), rows[1] = (+-1, 0, ...)
    r0, r1 = rows[0], rows[1]
    if abs(r0[1]) != 1 or abs(r1[0]) != 1 or r1[1] != 0:
        raise ValueError("p and q are not coprime")
    c = [r1[0] * r1[j] for j in range(2, 6)]
    a, b = K(c[0], c[1]), K(c[2], c[3])
    if (a * p + b * q) != K.one:
        raise ArithmeticError("Bezout reduction failed")
    if not q.is_zero() and not p.is_zero():
        t = a / q
        t = K(round(t.a), round(t.b))
        a, b = a - t * q, b + t * p
    return a, b


def to_infinity_matrix(mu, F=None):
    """g in SL2(O_K) with g(mu) = inf, for a principal cusp mu (None otherwise)."""
    K = mu.K
    if mu.is_infinity:
        return GL2Element.identity(K)
    I = mu.ideal()
    gens = [t for t in _short_elements(I, I.norm()) if t.norm() == I.norm()]
    if not gens:
        return None
    t = gens[0]
    p, q = mu.alpha / t, K(mu.n) / t
    a, b = _bezout(p, q)
    return GL2Element(a, b, -q, p)


# ---------------------------------------------------------------------------
# Oppenheim

class OppenheimResult(NamedTuple):
    holds: bool
    equality: bool
    predicted_equality: bool
    bound: Fraction


def _odd_primes(n):
    out = []
    p = 3
    while n % 2 == 0:
        n //= 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        out.append(n)
    return out


def oppenheim_check(R):
    bound = Fraction(abs(R.field.d_K), 2)
    pred = all(p % 8 in (1, 3) for p in _odd_primes(R.field.D))
    return OppenheimResult(R.gamma_p_sq <= bound, R.gamma_p_sq == bound, pred, bound)


# ---------------------------------------------------------------------------
# the report

class DomainEntry(NamedTuple):
    cls: int
    how: str                 # "direct", "reflect", "transfer"
    source: int              # class the domain or maximum is borrowed from
    domain: object           # SkylineDomain or None
    certificate: object      # CoverageCertificate or None
    transfer: object = None  # GL2Element for "transfer"


@dataclass
class ExtremeReport:
    field: object
    gamma_p_sq: Fraction
    gamma_p: ExactSqrt
    h_K: int
    vertices: list            # (Point in H^3, orbit label, eta_sq, base cusp)
    forms: list               # (HermitianFormExact, minimizing vector, orbit label)
    certificates: list
    cusp_reps: list = field(default_factory=list)
    plan: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)
    cross_checks: list = field(default_factory=list)


def _plan(G):
    """How each class is handled: build, reflect a built conjugate, or transfer."""
    steps = {}
    order = G.order
    involutions = [t for t in range(1, order) if G.mul(t, t) == 0]
    for i in range(order):
        if i == 0:
            steps[i] = ("direct", 0)
            continue
        j = G.inverse(i)
        if j in steps and steps[j][0] == "direct":
            steps[i] = ("reflect", j)
            continue
        hit = None
        for t in involutions:
            for b in sorted(steps):
                if G.mul(t, b) == i:
                    hit = (t, b)
                    break
            if hit:
                break
        steps[i] = ("transfer", hit) if hit else ("direct", i)
    return steps


def _certified(base, F):
    S = build_skyline(base, F)
    cert = verify_coverage(S, F)
    if not cert.clean:
        raise CoverageError(cert)
    return S, cert


def projective_hermite_constant(F, full_verify=False):
    K = F
    G = class_group_compute(K)
    reps = cusp_representatives(K, G)
    steps = _plan(G)
    entries = {}
    for i in range(G.order):
        how, arg = steps[i]
        if how == "direct":
            S, cert = _certified(reps[i], K)
            entries[i] = DomainEntry(i, "direct", i, S, cert)
        elif how == "reflect":
            S = reflect_domain(entries[arg].domain)
            cert = verify_coverage(S, K)
            if not cert.clean:
                raise CoverageError(cert)
            entries[i] = DomainEntry(i, "reflect", arg, S, cert)
        else:
            t, b = arg
            try:
                g = class_square_transfer(reps[t], K)
            except TransferSearchExhausted:
                S, cert = _certified(reps[i], K)
                entries[i] = DomainEntry(i, "direct", i, S, cert)
                continue
            entries[i] = DomainEntry(i, "transfer", b, None, None, g)
    domains = [e for e in entries.values() if e.domain is not None]
    gamma_sq = max(e.domain.eta_sq_at(v) for e in domains for v in e.domain.vertices)

    cross = []
    if full_verify:
        for i in range(G.order):
            S, cert = _certified(reps[i], K)
            g_i = max(S.eta_sq_at(v) for v in S.vertices)
            e = entries[i]
            src = e.source if e.how == "transfer" else i
            if e.how == "transfer":
                ref = entries[src]
                while ref.domain is None:
                    ref = entries[ref.source]
                expect = max(ref.domain.eta_sq_at(v) for v in ref.domain.vertices)
            else:
                expect = max(e.domain.eta_sq_at(v) for v in e.domain.vertices)
            ok = g_i == expect
            if e.how == "reflect":
                direct = build_skyline(e.domain.base, K)
                ok = ok and direct.vertices == e.domain.vertices
            cross.append((i, e.how, ok))
            if not ok:
                raise CrossCheckError(f"class {i}: {e.how} shortcut disagrees with a direct build")

    # every vertex, every domain: eta recomputed from scratch
    inf_dom = entries[0].domain
    inf_labels = {}
    for v in inf_dom.vertices:
        inf_labels.setdefault(_label(v, K, False), v)
    vertices = []
    forms = []
    unresolved = []
    seen_forms = set()
    for e in sorted(domains, key=lambda e: e.cls):
        S = e.domain
        L = l_matrix(S.base)
        for v in S.vertices:
            Q = mobius_point(L, v)
            claim = S.eta_sq_at(v)
            eta_sq, argmin = eta_exact(Q, K)
            if eta_sq != claim or S.base not in argmin:
                raise CrossCheckError(f"eta at {Q} is {eta_sq}, domain claims {claim}")
            label, ok = _global_label(Q, argmin, K, inf_labels)
            vertices.append((Q, label, eta_sq, S.base))
            if eta_sq != gamma_sq:
                continue
            if not ok:
                unresolved.append((Q, S.base))
            key = (label, ok)
            if key in seen_forms:
                continue
            seen_forms.add(key)
            if ok:
                form_pt, vec = label, (K.one, K.zero)
            else:
                form_pt, vec = Q, (S.base.alpha, K(S.base.n))
            form = psi_map(form_pt, K)
            forms.append((form, vec, _label(label, K, True) if ok else Q))
    forms.sort(key=lambda t: (t[1][1].a, t[2], t[0].b_im))
    certs = [e.certificate for e in domains]
    return ExtremeReport(K, gamma_sq, ExactSqrt(gamma_sq), G.order, vertices, forms, certs,
                         reps, [entries[i] for i in range(G.order)], unresolved, cross)


def _global_label(Q, argmin, K, inf_labels):
    """Move Q into the base-inf skyline if a principal cusp realises eta there."""
    if any(c.is_infinity for c in argmin):
        return _label(Q, K, False), True
    G = class_group_compute(K)
    for mu in argmin:
        if G.reduce(mu.ideal()) != 0:
            continue
        g = to_infinity_matrix(mu, K)
        if g is None:
            continue
        lab = _label(mobius_point(g, Q), K, False)
        return lab, lab in inf_labels
    return _label(Q, K, False), False


# ---------------------------------------------------------------------------
# floating-point oracle

class OracleResult(NamedTuple):
    estimate: float
    argmax: tuple            # (x, y, zeta) with z = x + i*y
    grid_n: int
    k_max: int


def _oracle_cusps(K, k_max, margin):
    """Float centres, radii^2 of cusps delta/k, k <= k_max, near the unit cell of O_K."""
    ws = (0.5 if K.half else 1.0) * math.sqrt(K.D)
    wx = 0.5 if K.half else 0.0
    xs, ys, r2s = [], [], []
    for k in range(1, k_max + 1):
        lo_b = math.floor(-margin / ws * k) - 1
        hi_b = math.ceil((1 + margin / ws) * k) + 1
        B = np.arange(lo_b, hi_b + 1)
        A = np.arange(-math.ceil((margin + 1) * k) - 1, math.ceil((2 + margin) * k) + 2)
        a, b = (t.ravel() for t in np.meshgrid(A, B, indexing="ij"))
        keep = np.gcd(np.gcd(a, b), k) == 1
        a, b = a[keep], b[keep]
        x = (a + b * wx) / k
        y = b * ws / k
        v = y / ws
        u = x - v * wx
        inside = (u > -margin - 1) & (u < 2 + margin) & (v > -margin) & (v < 1 + margin)
        a, b, x, y = a[inside], b[inside], x[inside], y[inside]
        N = np.array([pair_ideal_norm(K, (int(p), int(q)), (k, 0)) for p, q in zip(a, b)],
                     dtype=float)
        xs.append(x)
        ys.append(y)
        r2s.append(N / (k * k))
    return np.concatenate(xs), np.concatenate(ys), np.concatenate(r2s)


def _eta_float(K, x, y, t):
    """Float eta at one point, over every cusp that can matter (k <= 1/t^2)."""
    if t <= 0:
        return 0.0
    best = 1.0 / t
    ws = (0.5 if K.half else 1.0) * math.sqrt(K.D)
    wx = 0.5 if K.half else 0.0
    k = 1
    while k * t <= best:
        R2 = k * best * t - k * k * t * t
        if R2 > 0:
            r = math.sqrt(R2)
            for b in range(math.floor((k * y - r) / ws), math.ceil((k * y + r) / ws) + 1):
                dy = b * ws - k * y
                rem = R2 - dy * dy
                if rem < 0:
                    continue
                cx = k * x - b * wx
                rr = math.sqrt(rem)
                for a in range(math.floor(cx - rr), math.ceil(cx + rr) + 1):
                    if math.gcd(math.gcd(a, b), k) != 1:
                        continue
                    dx = a + b * wx - k * x
                    N = pair_ideal_norm(K, (a, b), (k, 0))
                    d = (dx * dx + dy * dy + k * k * t * t) / (t * N)
                    if d < best:
                        best = d
        k += 1
    return best


def numeric_eta_oracle(F, grid_n=200, k_max=20, refine=8, n_heights=48):
    """Brute-force float maximin of eta over a grid, polished by Nelder-Mead.

    A cusp delta/k beats infinity at (z, t) only when z lies in its disc and
    t < r <= 1/sqrt(k), so above t = 1/sqrt(k_max) the cusps with k <= k_max give
    eta exactly.  The returned estimate is therefore an eta value, never above
    the true maximum beyond float noise.
    """
    from scipy.optimize import minimize

    if grid_n < 8 or k_max < 2:
        raise ValueError("grid_n >= 8 and k_max >= 2 required")
    K = F
    ws = (0.5 if K.half else 1.0) * math.sqrt(K.D)
    wx = 0.5 if K.half else 0.0
    cx, cy, cr2 = _oracle_cusps(K, k_max, margin=1.0)
    u = (np.arange(grid_n) + 0.5) / grid_n
    U, V = np.meshgrid(u, u, indexing="ij")
    X = (U + V * wx).ravel()
    Y = (V * ws).ravel()
    t_lo = 1 / math.sqrt(k_max)
    t_hi = math.sqrt(abs(K.d_K) / 2)
    T = np.geomspace(t_lo, t_hi, n_heights)
    # covering discs per grid point
    eta = np.tile(1.0 / T, (X.size, 1))
    rmax = math.sqrt(cr2.max())
    order = np.argsort(X)
    Xs = X[order]
    for j in range(cx.size):
        lo = np.searchsorted(Xs, cx[j] - rmax, "left")
        hi = np.searchsorted(Xs, cx[j] + rmax, "right")
        idx = order[lo:hi]
        d2 = (X[idx] - cx[j]) ** 2 + (Y[idx] - cy[j]) ** 2
        cov = d2 < cr2[j]
        if not cov.any():
            continue
        idx, d2 = idx[cov], d2[cov]
        f = (d2[:, None] + T[None, :] ** 2) / (T[None, :] * cr2[j])
        np.minimum(eta[idx], f, out=f)
        eta[idx] = f
    flat = np.argmax(eta)
    best_val = float(eta.flat[flat])
    pi, ti = divmod(flat, n_heights)
    best_pt = (float(X[pi]), float(Y[pi]), float(T[ti]))
    # polish the strongest distinct starts with a complete float evaluation
    top = np.argsort(eta.max(axis=1))[::-1][: max(refine * 8, refine)]
    starts = []
    for pi in top:
        ti = int(np.argmax(eta[pi]))
        p = (float(X[pi]), float(Y[pi]), float(T[ti]))
        if all((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 > (2.0 / grid_n) ** 2 for q in starts):
            starts.append(p)
        if len(starts) >= refine:
            break
    for x0, y0, t0 in starts:
        res = minimize(lambda w: -_eta_float(K, w[0], w[1], math.exp(w[2])),
                       np.array([x0, y0, math.log(t0)]), method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 400})
        x1, y1, lt = res.x
        val = _eta_float(K, x1, y1, math.exp(lt))
        if val > best_val:
            best_val, best_pt = val, (float(x1), float(y1), math.exp(float(lt)))
    return OracleResult(best_val, best_pt, grid_n, k_max)
