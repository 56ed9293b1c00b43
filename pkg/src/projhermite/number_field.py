"""Exact arithmetic in imaginary quadratic fields K = Q(sqrt(-D)).

Elements are stored in the integral basis {1, w} where w = sqrt(-D) when
D = 1, 2 mod 4 and w = (1 + sqrt(-D))/2 when D = 3 mod 4.  Fractional ideals
are kept in Hermite normal form so that equality is a tuple comparison.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

__all__ = [
    "QuadraticField", "FieldElement", "IdealHNF", "ClassGroup",
    "field_create", "element_norm", "ideal_from_generators", "ideal_norm",
    "ideal_mul", "ideal_inverse", "class_group_compute", "ideal_class_of",
    "is_squarefree", "fundamental_discriminants",
]


def is_squarefree(n):
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


class QuadraticField:
    """The field Q(sqrt(-D)) together with its integral basis convention."""

    __slots__ = ("D", "d_K", "omega_kind", "_c0")

    def __init__(self, D):
        if not isinstance(D, int) or isinstance(D, bool):
            raise TypeError("D must be an integer")
        if D < 1 or not is_squarefree(D):
            raise ValueError(f"D={D} is not a squarefree positive integer")
        self.D = D
        if D % 4 == 3:
            self.d_K = -D
            self.omega_kind = "half"
            # w^2 = w - (1 + D)/4
            self._c0 = (1 + D) // 4
        else:
            self.d_K = -4 * D
            self.omega_kind = "sqrt"
            self._c0 = None

    def __repr__(self):
        return f"QuadraticField({self.D})"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.D == self.D

    def __hash__(self):
        return hash(("QF", self.D))

    @property
    def half(self):
        return self.omega_kind == "half"

    def __call__(self, a, b=0):
        return FieldElement(self, a, b)

    @property
    def one(self):
        return FieldElement(self, 1, 0)

    @property
    def zero(self):
        return FieldElement(self, 0, 0)

    @property
    def omega(self):
        return FieldElement(self, 0, 1)

    def from_xs(self, x, s):
        """Element with real part x and imaginary part s*sqrt(D)."""
        x = Fraction(x)
        s = Fraction(s)
        if self.half:
            # x + s*sqrt(-D) = (x - s) + 2s*w
            return FieldElement(self, x - s, 2 * s)
        return FieldElement(self, x, s)

    def units(self):
        """Roots of unity of O_K."""
        if self.D == 1:
            return [self(1), self(-1), self(0, 1), self(0, -1)]
        if self.D == 3:
            w = self.omega
            return [self(1), self(-1), w, -w, w - 1, 1 - w]
        return [self(1), self(-1)]


def field_create(D):
    return QuadraticField(D)


class FieldElement:
    """a + b*w with rational a, b."""

    __slots__ = ("K", "a", "b")

    def __init__(self, K, a, b=0):
        self.K = K
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    # construction helpers -------------------------------------------------
    def _new(self, a, b):
        obj = FieldElement.__new__(FieldElement)
        obj.K = self.K
        obj.a = a
        obj.b = b
        return obj

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self._new(Fraction(other), Fraction(0))
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._new(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        bb = b1 * b2
        if self.K._c0 is None:
            return self._new(a1 * a2 - self.K.D * bb, a1 * b2 + a2 * b1)
        return self._new(a1 * a2 - self.K._c0 * bb, a1 * b2 + a2 * b1 + bb)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in K")
        p = self * o.conj()
        return self._new(p.a / n, p.b / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if k < 0:
            return (self.K.one / self) ** (-k)
        out = self.K.one
        for _ in range(k):
            out = out * self
        return out

    def conj(self):
        if self.K._c0 is None:
            return self._new(self.a, -self.b)
        return self._new(self.a + self.b, -self.b)

    def norm(self):
        if self.K._c0 is None:
            return self.a * self.a + self.K.D * self.b * self.b
        return self.a * self.a + self.a * self.b + self.K._c0 * self.b * self.b

    def trace(self):
        if self.K._c0 is None:
            return 2 * self.a
        return 2 * self.a + self.b

    # coordinates ----------------------------------------------------------
    @property
    def re(self):
        """Real part."""
        if self.K._c0 is None:
            return self.a
        return self.a + self.b / 2

    @property
    def im(self):
        """Imaginary part divided by sqrt(D)."""
        if self.K._c0 is None:
            return self.b
        return self.b / 2

    def is_integral(self):
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im) * self.K.D ** 0.5)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.K.D == o.K.D and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.K.D, self.a, self.b))

    def __repr__(self):
        return f"FieldElement(D={self.K.D}, {self.a}, {self.b})"

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        wb = "w" if abs(b) == 1 else f"{abs(b)}w"
        if a == 0:
            return wb if b > 0 else "-" + wb
        return f"{a}{'+' if b > 0 else '-'}{wb}"


def element_norm(x, F=None):
    return x.norm()


# ---------------------------------------------------------------------------
# ideals

def _mul_omega_coords(K, p, q):
    """Coordinates of (p + q w) * w."""
    if K._c0 is None:
        return -K.D * q, p
    return -K._c0 * q, p + q


def _hnf_2d(vectors):
    """HNF (m11, m12, m22) of the Z-span of integer vectors in Z^2.

    Basis {(m11, 0), (m12, m22)} with m11, m22 > 0 and 0 <= m12 < m11.
    """
    vecs = [(p, q) for p, q in vectors if p or q]
    if not vecs:
        raise ValueError("zero lattice")
    # combine to a vector whose second coordinate is the gcd of all of them
    w = None
    for v in vecs:
        if v[1] == 0:
            continue
        if w is None:
            w = v if v[1] > 0 else (-v[0], -v[1])
            continue
        g, x, y = _xgcd(w[1], v[1])
        w = (x * w[0] + y * v[0], g)
    if w is None:
        raise ValueError("lattice is not of full rank")
    m22 = w[1]
    m11 = 0
    for p, q in vecs:
        m11 = gcd(m11, p - (q // m22) * w[0])
    if m11 == 0:
        raise ValueError("lattice is not of full rank")
    return m11, w[0] % m11, m22


def _xgcd(a, b):
    """g, x, y with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class IdealHNF:
    """Fractional ideal with Z-basis {m11/den, (m12 + m22 w)/den}."""

    __slots__ = ("K", "m11", "m12", "m22", "den")

    def __init__(self, K, m11, m12, m22, den=1):
        g = gcd(gcd(gcd(m11, m12), m22), den)
        self.K = K
        self.m11 = m11 // g
        self.m12 = m12 // g
        self.m22 = m22 // g
        self.den = den // g

    @property
    def basis(self):
        K = self.K
        return (K(Fraction(self.m11, self.den)),
                K(Fraction(self.m12, self.den), Fraction(self.m22, self.den)))

    def norm(self):
        return Fraction(self.m11 * self.m22, self.den * self.den)

    def is_integral(self):
        return self.den == 1

    def contains(self, x):
        p = x.a * self.den
        q = x.b * self.den
        if p.denominator != 1 or q.denominator != 1:
            return False
        q = int(q)
        if q % self.m22:
            return False
        r = int(p) - (q // self.m22) * self.m12
        return r % self.m11 == 0

    def conj(self):
        e1, e2 = self.basis
        return ideal_from_generators([e1.conj(), e2.conj()])

    def __mul__(self, other):
        return ideal_mul(self, other)

    def key(self):
        return (self.K.D, self.m11, self.m12, self.m22, self.den)

    def __eq__(self, other):
        return isinstance(other, IdealHNF) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"IdealHNF(D={self.K.D}, {self.m11}, {self.m12}, {self.m22}, den={self.den})"


def ideal_from_generators(gens, F=None):
    """HNF of the O_K-module generated by ``gens``."""
    gens = list(gens)
    if not gens or all(g.is_zero() for g in gens):
        raise ValueError("ideal needs a nonzero generator")
    K = gens[0].K
    den = 1
    for g in gens:
        den = den * g.a.denominator // gcd(den, g.a.denominator)
        den = den * g.b.denominator // gcd(den, g.b.denominator)
    vecs = []
    for g in gens:
        p, q = int(g.a * den), int(g.b * den)
        vecs.append((p, q))
        vecs.append(_mul_omega_coords(K, p, q))
    m11, m12, m22 = _hnf_2d(vecs)
    return IdealHNF(K, m11, m12, m22, den)


def unit_ideal(K):
    return IdealHNF(K, 1, 0, 1, 1)


def ideal_norm(I):
    return I.norm()


def ideal_mul(I, J):
    e1, e2 = I.basis
    f1, f2 = J.basis
    return ideal_from_generators([e1 * f1, e1 * f2, e2 * f1, e2 * f2])


def ideal_inverse(I):
    n = I.norm()
    e1, e2 = I.basis
    return ideal_from_generators([e1.conj() / n, e2.conj() / n])


def pair_ideal_norm(K, u, v):
    """Norm of the integral ideal <u, v> for integer coordinate pairs.

    Index in O_K of the Z-span of u, u*w, v, v*w: the gcd of all 2x2 minors.
    """
    vecs = [u, _mul_omega_coords(K, *u), v, _mul_omega_coords(K, *v)]
    g = 0
    for i in range(4):
        for j in range(i + 1, 4):
            g = gcd(g, vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0])
    return g


# ---------------------------------------------------------------------------
# binary quadratic forms and the class group

def reduce_form(a, b, c):
    """Gauss reduction of a positive definite form under SL_2(Z)."""
    while True:
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            b, c = b + 2 * a * k, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def reduced_forms(d):
    """All reduced primitive forms of negative discriminant d, sorted by (a, b)."""
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return sorted(out)


def form_to_ideal(K, form):
    """Ideal a*Z + ((-b + sqrt(d_K))/2)*Z attached to a form (a, b, c)."""
    a, b, _ = form
    if K.half:
        # sqrt(d_K) = sqrt(-D) = 2w - 1
        v = K(Fraction(-b - 1, 2), 1)
    else:
        # sqrt(d_K) = 2 sqrt(-D) = 2w
        v = K(Fraction(-b, 2), 1)
    return ideal_from_generators([K(a), v])


def ideal_to_form(I):
    """Primitive form N(x u - y v)/N(I) for an oriented Z-basis (u, v) of I."""
    u, v = I.basis
    # orientation: Im(v/u) > 0; u is a positive rational here and m22 > 0
    n = I.norm()
    A = u.norm() / n
    B = -(u * v.conj()).trace() / n
    C = v.norm() / n
    assert A.denominator == B.denominator == C.denominator == 1
    return int(A), int(B), int(C)


class ClassGroup:
    """Ideal class group with a fixed list of reduced-form representatives."""

    def __init__(self, K, forms):
        self.K = K
        self.forms = forms
        self.index_of_form = {f: i for i, f in enumerate(forms)}
        self.reps = [form_to_ideal(K, f) for f in forms]
        self.order = len(forms)
        self.table = [[self.reduce(ideal_mul(I, J)) for J in self.reps] for I in self.reps]
        self.identity = 0

    def reduce(self, I):
        return self.index_of_form[reduce_form(*ideal_to_form(I))]

    def mul(self, i, j):
        return self.table[i][j]

    def inverse(self, i):
        return self.table[i].index(0)

    def power(self, i, k):
        out = 0
        for _ in range(k % self.order if self.order else 0):
            out = self.table[out][i]
        return out

    def element_order(self, i):
        k, cur = 1, i
        while cur != 0:
            cur = self.table[cur][i]
            k += 1
        return k

    def is_cyclic(self):
        return any(self.element_order(i) == self.order for i in range(self.order))

    def __repr__(self):
        return f"ClassGroup(D={self.K.D}, order={self.order})"


@lru_cache(maxsize=None)
def _class_group_cached(D):
    K = QuadraticField(D)
    return ClassGroup(K, reduced_forms(K.d_K))


def class_group_compute(F):
    return _class_group_cached(F.D)


def ideal_class_of(I, G):
    return G.reduce(I)


def fundamental_discriminants(max_abs):
    """(d_K, D) for all imaginary quadratic fields with |d_K| <= max_abs."""
    out = []
    for D in range(1, max_abs + 1):
        if not is_squarefree(D):
            continue
        d = -D if D % 4 == 3 else -4 * D
        if -d <= max_abs:
            out.append((d, D))
    return sorted(out, key=lambda t: -t[0])
