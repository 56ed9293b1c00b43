"""Reference values for the fields with |d_K| < 70 (and d_K = -163).

The constants are stored as squared rationals.  The extreme forms are kept as the
printed expressions; ``table2_entries`` parses them and sorts out the ones that
are not determinant-one forms with a rational point of H^3 behind them.
"""

from fractions import Fraction
from typing import NamedTuple

__all__ = ["Table1Row", "TABLE1", "TABLE2_RAW", "Table2Entry", "table1_row", "table2_entries"]


class Table1Row(NamedTuple):
    d_K: int
    D: int
    h_K: int
    gamma_p_sq: Fraction
    display: str
    gamma_sq: Fraction = None     # classical constant, where listed


def _r(s):
    return Fraction(s)


TABLE1 = (
    Table1Row(-3, 3, 1, _r("3/2"), "sqrt(3/2)", _r("3/2")),
    Table1Row(-4, 1, 1, _r("2"), "sqrt(2)", _r("2")),
    Table1Row(-7, 7, 1, _r("7/3"), "sqrt(7/3)", _r("7/3")),
    Table1Row(-8, 2, 1, _r("4"), "2", _r("4")),
    Table1Row(-11, 11, 1, _r("11/2"), "sqrt(11/2)", _r("11/2")),
    Table1Row(-15, 15, 2, _r("3"), "sqrt(3)", _r("20/3")),
    Table1Row(-19, 19, 1, _r("19/2"), "sqrt(19/2)", _r("19/2")),
    Table1Row(-20, 5, 2, _r("5"), "sqrt(5)", _r("80/11")),
    Table1Row(-23, 23, 3, _r("23/5"), "sqrt(23/5)"),
    Table1Row(-24, 6, 2, _r("12"), "2 sqrt(3)", _r("12")),
    Table1Row(-31, 31, 3, _r("31/3"), "sqrt(31/3)"),
    Table1Row(-35, 35, 2, _r("7"), "sqrt(7)"),
    Table1Row(-39, 39, 4, _r("13"), "sqrt(13)"),
    Table1Row(-40, 10, 2, _r("180/13"), "6 sqrt(5/13)", _r("640/39")),
    Table1Row(-43, 43, 1, _r("43/2"), "sqrt(43/2)", _r("43/2")),
    Table1Row(-47, 47, 5, _r("47/5"), "sqrt(47/5)"),
    Table1Row(-51, 51, 2, _r("51/2"), "sqrt(51/2)", _r("51/2")),
    Table1Row(-52, 13, 2, _r("52/3"), "sqrt(52/3)", _r("192/35")),
    Table1Row(-55, 55, 4, _r("176/19"), "4 sqrt(11/19)"),
    Table1Row(-56, 14, 4, _r("28/3"), "2 sqrt(7/3)", _r("896/41")),
    Table1Row(-59, 59, 3, _r("59/2"), "sqrt(59/2)", _r("59/2")),
    Table1Row(-67, 67, 1, _r("67/2"), "sqrt(67/2)", _r("67/2")),
    Table1Row(-68, 17, 4, _r("34"), "sqrt(34)", _r("34")),
    Table1Row(-163, 163, 1, _r("163/2"), "sqrt(163/2)", _r("163/2")),
)

_BY_D = {r.D: r for r in TABLE1}


def table1_row(D):
    return _BY_D.get(D)


# (d_K, a, [b presentations], c, vector (a + b w, n) coordinates or None, note)
# Expressions are sympy syntax with I = sqrt(-1), transcribed as printed.
TABLE2_RAW = (
    (-3, "sqrt(2)/sqrt(3)", ["I/sqrt(2)", "-I/sqrt(2)"], "sqrt(2)/sqrt(3)", None, ""),
    (-4, "sqrt(2)", ["(1+I)/sqrt(2)", "-(1+I)/sqrt(2)"], "sqrt(2)", None, ""),
    (-7, "sqrt(7)/sqrt(3)", ["2*I/sqrt(3)", "-2*I/sqrt(3)"], "sqrt(7)/sqrt(3)", None, ""),
    (-8, "2", ["(sqrt(2)+2*I)/sqrt(2)", "-(sqrt(2)+2*I)/sqrt(2)"], "2", None, ""),
    (-11, "sqrt(11)/sqrt(2)", ["3*I/sqrt(2)", "-3*I/sqrt(2)"], "sqrt(11)/sqrt(2)", None, ""),
    (-15, "sqrt(3)", ["sqrt(5)*I", "-sqrt(5)*I"], "2*sqrt(3)", None, ""),
    (-19, "sqrt(19)/sqrt(2)", ["6*I/sqrt(2)", "-6*I/sqrt(2)"], "2*sqrt(19)/sqrt(2)", None, ""),
    (-20, "sqrt(5)", ["sqrt(5)*I", "-sqrt(5)*I"], "3*sqrt(5)", None, ""),
    (-23, "sqrt(23)/sqrt(5)", ["sqrt(8)*I/sqrt(5)", "-sqrt(8)*I/sqrt(5)"], "sqrt(23)/sqrt(5)",
     None, ""),
    (-24, "sqrt(12)", ["(sqrt(6)+4*I)/sqrt(2)", "-(sqrt(6)+4*I)/sqrt(2)"], "sqrt(12)", None, ""),
    (-31, "sqrt(31)/sqrt(3)", ["sqrt(8)*I/sqrt(5)", "-sqrt(8)*I/sqrt(5)"], "4*sqrt(31)/sqrt(3)",
     None, ""),
    (-35, "sqrt(7)", ["10*I/sqrt(5)", "-10*I/sqrt(5)"], "3*sqrt(7)", None, ""),
    (-39, "sqrt(13)", ["6*I/sqrt(3)", "-6*I/sqrt(3)"], "sqrt(13)", None, ""),
    (-40, "3*sqrt(20)/sqrt(13)", ["-(3*sqrt(10)+22*I)/sqrt(26)", "-(3*sqrt(10)-22*I)/sqrt(26)"],
     "10*sqrt(10)/sqrt(13)", None, ""),
    (-40, "3*sqrt(20)/sqrt(13)",
     ["(sqrt(10)+18*I)/sqrt(26)", "(sqrt(10)-18*I)/sqrt(26)",
      "-(sqrt(10)+18*I)/sqrt(26)", "-(sqrt(10)-18*I)/sqrt(26)"],
     "3*sqrt(20)/sqrt(13)", None, ""),
    (-43, "sqrt(43)/sqrt(2)", ["16*I/sqrt(2)", "-16*I/sqrt(2)"], "6*sqrt(43)/sqrt(2)", None, ""),
    (-47, "sqrt(47)/sqrt(5)", ["18*I/sqrt(5)", "-18*I/sqrt(5)"], "7*sqrt(47)/sqrt(5)", None, ""),
    (-47, "2*sqrt(47)/sqrt(5)", ["29*I/sqrt(5)", "-29*I/sqrt(5)"], "9*sqrt(47)/sqrt(5)",
     ((0, 1), 2), ""),
    (-51, "sqrt(51)/sqrt(2)", ["7*I/sqrt(2)", "-7*I/sqrt(2)"], "sqrt(51)/sqrt(2)", None, ""),
    (-51, "sqrt(51)/sqrt(2)", ["10*I/sqrt(2)", "-10*I/sqrt(2)"], "2*sqrt(51)/sqrt(2)", None, ""),
    (-52, "sqrt(52)/sqrt(2)", ["7*I/sqrt(3)", "-7*I/sqrt(3)"], "sqrt(52)/sqrt(2)", None, ""),
    (-52, "sqrt(52)/sqrt(2)", ["-(sqrt(52)+6*I)/sqrt(3)", "-(sqrt(52)-6*I)/sqrt(3)"],
     "sqrt(52)/sqrt(2)", None, ""),
    (-55, "4*sqrt(11)/sqrt(19)", ["35*I/sqrt(95)", "-35*I/sqrt(95)"], "6*sqrt(11)/sqrt(19)",
     None, ""),
    (-55, "5*sqrt(11)/sqrt(19)",
     ["(7*sqrt(11)+5*sqrt(19)*I)/(2*sqrt(19))", "-(7*sqrt(11)+5*sqrt(19)*I)/(2*sqrt(19))"],
     "11*sqrt(11)/sqrt(19)", None, ""),
    (-55, "5*sqrt(11)/sqrt(19)",
     ["3*sqrt(11)/(2*sqrt(19)) + sqrt(19)*I/sqrt(5)",
      "-(3*sqrt(11)/(2*sqrt(19)) + sqrt(19)*I/sqrt(5))"],
     "9*sqrt(11)/sqrt(19)", None, ""),
    (-56, "sqrt(28)/sqrt(3)", ["-(sqrt(7)+6*sqrt(2)*I)/sqrt(3)"], "79/sqrt(84)", None, ""),
    (-56, None, [], None, ((1, 1), 3), "middle entry is not a legible expression"),
    (-59, "sqrt(59)/sqrt(2)", ["23*I/sqrt(2)", "-23*I/sqrt(2)"], "9*sqrt(59)/sqrt(2)", None, ""),
    (-59, "sqrt(108)", ["-(59+23*sqrt(59)*I)/sqrt(108)"], "5*sqrt(59)/sqrt(2)", ((2, 1), 3), ""),
    (-67, "sqrt(67)/sqrt(2)", ["20*I/(sqrt(2)*I)", "-20*I/(sqrt(2)*I)"], "6*sqrt(67)/sqrt(2)",
     None, ""),
    (-68, "sqrt(34)", ["-(sqrt(17)+7*I)/sqrt(2)"], "sqrt(34)", None, ""),
    (-68, "9*sqrt(34)", ["-(9*sqrt(17)+95*I)/sqrt(2)"], "17*sqrt(34)", ((1, 1), 3), ""),
    (-163, "sqrt(163)/sqrt(2)", ["18*I/sqrt(2)", "-18*I/sqrt(2)"], "2*sqrt(163)/sqrt(2)",
     None, ""),
)


class Table2Entry(NamedTuple):
    d_K: int
    raw: tuple                 # (a, b, c) as printed
    form: object               # HermitianFormExact, or None when excluded
    vector: tuple              # ((a, b), n) meaning ((a + b w), n); None for (1, 0)
    status: str                # "ok" or the reason for exclusion


def _rational(e):
    import sympy as sp

    e = sp.nsimplify(sp.radsimp(sp.simplify(e)))
    if e.is_Rational:
        return Fraction(int(e.p), int(e.q))
    return None


def _parse(D, a, b, c):
    import sympy as sp
    from .hermite import HermitianFormExact

    A, B, C = (sp.sympify(t) for t in (a, b, c))
    det = sp.simplify(A * C - B * sp.conjugate(B))
    if sp.simplify(det - 1) != 0:
        return None, f"determinant {sp.nsimplify(det)} is not 1"
    z = -B / A
    x = _rational(sp.re(z))
    s = _rational(sp.im(z) / sp.sqrt(D))
    h = _rational(det / A ** 2)
    if x is None or s is None or h is None:
        return None, "Phi(S) is not a point with coordinates in K"
    cn = _rational(C * sp.sqrt(sp.Rational(h.numerator, h.denominator)))
    if cn is None:
        return None, "c does not match the point"
    return HermitianFormExact(Fraction(1), -x, -s, cn, h, D), "ok"


def table2_entries(d_K=None):
    """Every printed presentation as a Table2Entry, parsed exactly."""
    out = []
    for d, a, bs, c, vec, note in TABLE2_RAW:
        if d_K is not None and d != d_K:
            continue
        D = -d // 4 if d % 4 == 0 else -d
        if a is None:
            out.append(Table2Entry(d, (None, None, None), None, vec, note))
            continue
        for b in bs:
            form, status = _parse(D, a, b, c)
            out.append(Table2Entry(d, (a, b, c), form, vec, status))
    return out
