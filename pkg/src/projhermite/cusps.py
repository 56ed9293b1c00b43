"""Cusps of K, their ideal classes, and the Mobius action of GL_2(K)."""

from fractions import Fraction
from math import lcm

from .number_field import (
    FieldElement, class_group_compute, ideal_from_generators, unit_ideal,
)

__all__ = [
    "Cusp", "GL2Element", "INFINITY", "infinity", "cusp_from_value", "cusp_normalize", "cusp_class",
    "cusp_representatives", "n_lambda", "l_matrix", "mobius_point",
    "mobius_cusp", "parse_cusp", "random_sl2",
]


class Cusp:
    """A point of P^1(K).

    Finite cusps are stored as alpha/n with alpha integral and n the smallest
    positive integer making n*lambda integral.  Infinity is alpha=1, n=0
    (the convention used for L_infinity).
    """

    __slots__ = ("K", "alpha", "n")

    def __init__(self, K, alpha, n):
        self.K = K
        self.alpha = alpha
        self.n = n

    @property
    def is_infinity(self):
        return self.n == 0

    @property
    def value(self):
        if self.is_infinity:
            raise ValueError("infinity has no finite value")
        return self.alpha / self.n

    def pair(self):
        """Integral coordinates (alpha, n) of the cusp."""
        return self.alpha, self.K(self.n)

    def ideal(self):
        if self.is_infinity:
            return unit_ideal(self.K)
        return ideal_from_generators([self.alpha, self.K(self.n)])

    def conj(self):
        if self.is_infinity:
            return self
        return Cusp(self.K, self.alpha.conj(), self.n)

    def translate(self, t):
        if self.is_infinity:
            return self
        return cusp_from_value(self.value + t)

    def key(self):
        if self.is_infinity:
            return (self.K.D, 0, 0, 0)
        return (self.K.D, self.n, self.alpha.a, self.alpha.b)

    def __eq__(self, other):
        return isinstance(other, Cusp) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Cusp({self})"

    def __str__(self):
        if self.is_infinity:
            return "inf"
        if self.n == 1:
            return str(self.alpha)
        num = str(self.alpha)
        if self.alpha.a != 0 and self.alpha.b != 0:
            num = f"({num})"
        return f"{num}/{self.n}"

    def spec(self):
        """CLI micro-syntax ``a+bw/n`` (or ``inf``)."""
        if self.is_infinity:
            return "inf"
        a, b = int(self.alpha.a), int(self.alpha.b)
        return f"{a}{b:+d}w/{self.n}"


def cusp_from_value(lam):
    """Cusp of a finite element of K."""
    n = lcm(lam.a.denominator, lam.b.denominator)
    return Cusp(lam.K, lam * n, n)


def cusp_normalize(alpha, beta):
    if alpha.is_zero() and beta.is_zero():
        raise ValueError("(0, 0) is not a cusp")
    K = alpha.K
    if beta.is_zero():
        return Cusp(K, K.one, 0)
    return cusp_from_value(alpha / beta)


def infinity(K):
    return Cusp(K, K.one, 0)


INFINITY = infinity


def cusp_class(c, G):
    if c.is_infinity:
        return 0
    return G.reduce(c.ideal())


def cusp_representatives(F, G=None):
    """One cusp per ideal class, derived from the reduced form list of G."""
    G = G or class_group_compute(F)
    reps = [infinity(F)]
    for i, (a, b, _) in enumerate(G.forms):
        if i == 0:
            continue
        r = (-b - 1) // 2 if F.half else -b // 2
        c = Cusp(F, F(r % a, 1), a)
        assert cusp_class(c, G) == i
        reps.append(c)
    return reps


def n_lambda(c):
    if c.is_infinity:
        raise ValueError("N_lambda is undefined at infinity")
    return c.ideal().norm() / (c.n * c.n)


class GL2Element:
    """2x2 matrix with entries in K acting on H^3 and on P^1(K)."""

    __slots__ = ("a", "b", "c", "d", "det")

    def __init__(self, a, b, c, d):
        K = next(x.K for x in (a, b, c, d) if isinstance(x, FieldElement))
        self.a, self.b, self.c, self.d = (K(x) if isinstance(x, (int, Fraction)) else x
                                          for x in (a, b, c, d))
        self.det = self.a * self.d - self.b * self.c
        if self.det.is_zero():
            raise ValueError("singular matrix")

    @property
    def K(self):
        return self.a.K

    @classmethod
    def identity(cls, K):
        return cls(K.one, K.zero, K.zero, K.one)

    def __mul__(self, o):
        return GL2Element(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self):
        dt = self.det
        return GL2Element(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def entries(self):
        return self.a, self.b, self.c, self.d

    def is_integral(self):
        return all(x.is_integral() for x in self.entries())

    def __eq__(self, o):
        return isinstance(o, GL2Element) and self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return "GL2(%s, %s; %s, %s)" % tuple(str(x) for x in self.entries())


def l_matrix(c):
    """L_lambda = (alpha 1; n 0), the identity for infinity."""
    K = c.K
    if c.is_infinity:
        return GL2Element.identity(K)
    return GL2Element(c.alpha, K.one, K(c.n), K.zero)


def mobius_point(g, P):
    from .geometry import Point

    K = g.K
    z = K.from_xs(P.x, P.s)
    h = P.h
    cz_d = g.c * z + g.d
    den = cz_d.norm() + g.c.norm() * h
    num = (g.a * z + g.b) * cz_d.conj() + g.a * g.c.conj() * h
    return Point(num.re / den, num.im / den, g.det.norm() * h / (den * den))


def mobius_cusp(g, c):
    al, be = c.pair() if not c.is_infinity else (c.K.one, c.K.zero)
    return cusp_normalize(g.a * al + g.b * be, g.c * al + g.d * be)


def parse_cusp(K, spec):
    """Parse ``inf`` or ``a+bw/n`` (meaning (a + b w)/n); ``w/2``, ``1+w/3`` also work."""
    s = spec.strip().replace(" ", "").lower()
    if s in ("inf", "infinity", "oo"):
        return infinity(K)
    if "/" in s:
        num, den = s.rsplit("/", 1)
        n = int(den)
    else:
        num, n = s, 1
    num = num.strip("()")
    a = Fraction(0)
    b = Fraction(0)
    tok = ""
    terms = []
    for ch in num:
        if ch in "+-" and tok and tok[-1] not in "+-":
            terms.append(tok)
            tok = ch
        else:
            tok += ch
    if tok:
        terms.append(tok)
    if not terms:
        raise ValueError(f"bad cusp spec {spec!r}")
    for t in terms:
        if t.endswith("w"):
            coef = t[:-1]
            if coef in ("", "+"):
                b += 1
            elif coef == "-":
                b -= 1
            else:
                b += Fraction(coef.rstrip("*"))
        else:
            a += Fraction(t)
    if n == 0:
        raise ValueError("zero denominator")
    return cusp_normalize(K(a, b), K(n))


def random_sl2(K, rng, steps=4, size=3):
    """A random element of SL2(O_K): a word in elementary matrices and (0 -1; 1 0)."""
    c0 = K._c0

    # integral arithmetic on coordinate pairs (a, b) = a + b*w
    def mul(x, y):
        bb = x[1] * y[1]
        if c0 is None:
            return x[0] * y[0] - K.D * bb, x[0] * y[1] + y[0] * x[1]
        return x[0] * y[0] - c0 * bb, x[0] * y[1] + y[0] * x[1] + bb

    def add(x, y):
        return x[0] + y[0], x[1] + y[1]

    one, zero = (1, 0), (0, 0)
    g = (one, zero, zero, one)
    for _ in range(steps):
        t = (rng.randint(-size, size), rng.randint(-size, size))
        r = rng.random()
        if r < 0.4:
            m = (one, t, zero, one)
        elif r < 0.8:
            m = (one, zero, t, one)
        else:
            m = (zero, (-1, 0), one, zero)
        a, b, c, d = g
        g = (add(mul(a, m[0]), mul(b, m[2])), add(mul(a, m[1]), mul(b, m[3])),
             add(mul(c, m[0]), mul(d, m[2])), add(mul(c, m[1]), mul(d, m[3])))
    return GL2Element(*(K(*x) for x in g))
