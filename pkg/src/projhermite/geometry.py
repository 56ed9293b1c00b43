"""Exact geometry of H^3 in the rational chart (x, s, h).

A point (z, zeta) of H^3 with z = x + s*sqrt(D)*i and zeta^2 = h is stored as
three rationals.  Cusp centres have this shape, so distances to cusps,
equidistant hemispheres and their intersections all stay in Q.  Distances are
handled squared throughout.
"""

from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from .cusps import l_matrix, mobius_cusp, mobius_point
from .number_field import pair_ideal_norm

__all__ = [
    "Point", "Hemisphere", "VertexCandidate", "Side", "RadicalCircle",
    "dist_sq", "lambda_dist_sq", "hemisphere_of", "hemisphere_r2",
    "point_vs_hemisphere", "vertex_from_triple", "circle_of_intersection",
]


class Point(NamedTuple):
    x: Fraction
    s: Fraction
    h: Fraction

    @classmethod
    def of(cls, x, s, h):
        p = cls(Fraction(x), Fraction(s), Fraction(h))
        if p.h <= 0:
            raise ValueError("points of H^3 need h > 0")
        return p

    def z(self, K):
        return K.from_xs(self.x, self.s)

    def conj(self):
        return Point(self.x, -self.s, self.h)

    def translate(self, t):
        return Point(self.x + t.re, self.s + t.im, self.h)

    def to_complex(self, D):
        return complex(float(self.x), float(self.s) * D ** 0.5), float(self.h) ** 0.5

    def __str__(self):
        return f"({self.x}, {self.s}, {self.h})"


def _int_pair(K, x):
    return int(x.a), int(x.b)


def dist_sq(P, mu, K):
    """Square of (|beta z - alpha|^2 + |beta|^2 zeta^2) / (zeta N<alpha, beta>)."""
    if mu.is_infinity:
        return 1 / P.h
    alpha, n = mu.alpha, mu.n
    z = K.from_xs(P.x, P.s)
    num = (z * n - alpha).norm() + n * n * P.h
    N = pair_ideal_norm(K, _int_pair(K, alpha), (n, 0))
    return num * num / (P.h * N * N)


def lambda_dist_sq(P, mu, base, K):
    if base.is_infinity:
        return dist_sq(P, mu, K)
    L = l_matrix(base)
    return dist_sq(mobius_point(L, P), mobius_cusp(L, mu), K)


def hemisphere_r2(base, mu, K):
    """Radius squared of S_base(inf, mu): N(L(gamma, delta)) / (N<alpha, n> |delta|^2)."""
    g, m = mu.alpha, mu.n
    if base.is_infinity:
        return Fraction(pair_ideal_norm(K, _int_pair(K, g), (m, 0)), m * m)
    al, n = base.alpha, base.n
    u = al * g + m
    v = g * n
    num = pair_ideal_norm(K, _int_pair(K, u), _int_pair(K, v))
    den = pair_ideal_norm(K, _int_pair(K, al), (n, 0))
    return Fraction(num, den * m * m)


class Hemisphere:
    """The equidistant surface S_base(inf, mu): |z - c|^2 + h = r2."""

    __slots__ = ("base", "mu", "cx", "cs", "r2")

    def __init__(self, base, mu, cx, cs, r2):
        self.base = base
        self.mu = mu
        self.cx = cx
        self.cs = cs
        self.r2 = r2

    def power(self, x, s, D):
        dx = x - self.cx
        ds = s - self.cs
        return dx * dx + D * ds * ds - self.r2

    def height_at(self, x, s, D):
        return -self.power(x, s, D)

    def with_r2(self, r2):
        return Hemisphere(self.base, self.mu, self.cx, self.cs, r2)

    def key(self):
        return (self.cx, self.cs, self.r2)

    def __eq__(self, o):
        return isinstance(o, Hemisphere) and self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Hemisphere(mu={self.mu}, c=({self.cx}, {self.cs}), r2={self.r2})"


def hemisphere_of(base, mu, K):
    if mu.is_infinity:
        raise ValueError("the hemisphere needs a finite cusp")
    c = mu.value
    return Hemisphere(base, mu, c.re, c.im, hemisphere_r2(base, mu, K))


class Side(Enum):
    INSIDE = -1
    ON = 0
    OUTSIDE = 1


def point_vs_hemisphere(P, H, D):
    v = H.power(P.x, P.s, D) + P.h
    return Side.INSIDE if v < 0 else Side.ON if v == 0 else Side.OUTSIDE


class VertexCandidate(NamedTuple):
    point: Point
    supports: tuple


def _radical_row(H1, H2, D):
    """Coefficients (A, B, C) of the radical line A x + B s = C of two hemispheres."""
    A = 2 * (H2.cx - H1.cx)
    B = 2 * D * (H2.cs - H1.cs)
    C = (H2.cx ** 2 + D * H2.cs ** 2 - H2.r2) - (H1.cx ** 2 + D * H1.cs ** 2 - H1.r2)
    return A, B, C


def vertex_from_triple(H1, H2, H3, D):
    A1, B1, C1 = _radical_row(H1, H2, D)
    A2, B2, C2 = _radical_row(H1, H3, D)
    det = A1 * B2 - A2 * B1
    if det == 0:
        return None
    x = (C1 * B2 - C2 * B1) / det
    s = (A1 * C2 - A2 * C1) / det
    h = H1.height_at(x, s, D)
    if h <= 0:
        return None
    return VertexCandidate(Point(x, s, h), tuple(H.mu for H in (H1, H2, H3)))


class RadicalCircle(NamedTuple):
    """Intersection circle over the line a x + b s = c, centred at (fx, fs)."""
    a: Fraction
    b: Fraction
    c: Fraction
    fx: Fraction
    fs: Fraction
    radius_sq: Fraction

    def height(self, x, s, D):
        return self.radius_sq - (x - self.fx) ** 2 - D * (s - self.fs) ** 2


def circle_of_intersection(H1, H2, D):
    """The circle S1 cap S2, "degenerate" for concentric spheres, or None if they miss."""
    if H1.cx == H2.cx and H1.cs == H2.cs:
        return "degenerate"
    a, b, c = _radical_row(H1, H2, D)
    # foot of the centre of H1 on the line in the metric dx^2 + D ds^2
    t = (c - a * H1.cx - b * H1.cs) / (a * a + b * b / D)
    fx = H1.cx + t * a
    fs = H1.cs + t * b / D
    rad = H1.height_at(fx, fs, D)
    if rad <= 0:
        return None
    return RadicalCircle(a, b, c, fx, fs, rad)
