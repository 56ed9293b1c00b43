"""JSON reports (schema "1").  Rationals travel as "p/q" strings."""

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

__all__ = [
    "SCHEMA_VERSION", "ReportJSON", "DomainJSON", "ExtremeJSON", "build_report",
    "to_json", "from_json", "rat", "unrat",
]

SCHEMA_VERSION = "1"


def rat(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def unrat(s):
    p, _, q = s.partition("/")
    return Fraction(int(p), int(q or 1))


@dataclass
class DomainJSON:
    base: str
    how: str
    cells: list            # {"owner": spec, "vertices": [index, ...]}
    vertices: list         # [x, s, h] as Fractions
    h_min: Fraction
    certificate: dict      # {"k_max": int, "checked_count": int}


@dataclass
class ExtremeJSON:
    form: dict             # a, b_re, b_im, c, h as Fractions
    minimizer: list        # [[a, b], [a, b]]: coordinates of the vector in 1, w
    orbit: str


@dataclass
class ReportJSON:
    D: int
    d_K: int
    h_K: int
    gamma_p_squared: Fraction
    gamma_p_display: str
    cusp_reps: list
    domains: list = field(default_factory=list)
    extreme: list = field(default_factory=list)
    oracle: dict = None
    schema_version: str = SCHEMA_VERSION


def _pair(x):
    return [int(x.a), int(x.b)]


def build_report(R, oracle=None):
    """Flatten an ExtremeReport (and an optional oracle result)."""
    from .hermite import ExactSqrt

    doms = []
    for e, cert in zip([p for p in R.plan if p.domain is not None], R.certificates):
        S = e.domain
        verts = S.vertices
        idx = {P: i for i, P in enumerate(verts)}
        cells = [{"owner": c.owner.spec(), "vertices": [idx[v.point] for v in c.vertices]}
                 for c in S.cells]
        doms.append(DomainJSON(S.base.spec(), e.how, cells,
                               [[P.x, P.s, P.h] for P in verts], S.h_min,
                               {"k_max": cert.k_max, "checked_count": cert.checked_count}))
    ext = []
    for S, (al, be), orbit in R.forms:
        ext.append(ExtremeJSON({"a": S.a_num, "b_re": S.b_re, "b_im": S.b_im, "c": S.c_num,
                                "h": S.h}, [_pair(al), _pair(be)], str(orbit)))
    orc = None
    if oracle is not None:
        orc = {"grid_n": oracle.grid_n, "k_max": oracle.k_max, "estimate": oracle.estimate}
    return ReportJSON(R.field.D, R.field.d_K, R.h_K, R.gamma_p_sq, str(ExactSqrt(R.gamma_p_sq)),
                      [c.spec() for c in R.cusp_reps], doms, ext, orc)


def _enc(o):
    if isinstance(o, Fraction):
        return rat(o)
    if isinstance(o, dict):
        return {k: _enc(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_enc(v) for v in o]
    return o


def to_json(r, indent=2):
    d = asdict(r)
    order = ["schema_version", "D", "d_K", "h_K", "gamma_p_squared", "gamma_p_display",
             "cusp_reps", "domains", "extreme", "oracle"]
    d = {k: d[k] for k in order}
    return json.dumps(_enc(d), indent=indent, ensure_ascii=False) + "\n"


def from_json(text):
    d = json.loads(text)
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
    doms = [DomainJSON(x["base"], x["how"], x["cells"],
                       [[unrat(t) for t in v] for v in x["vertices"]],
                       unrat(x["h_min"]), x["certificate"]) for x in d["domains"]]
    ext = [ExtremeJSON({k: unrat(v) for k, v in x["form"].items()}, x["minimizer"], x["orbit"])
           for x in d["extreme"]]
    r = ReportJSON(d["D"], d["d_K"], d["h_K"], unrat(d["gamma_p_squared"]),
                   d["gamma_p_display"], d["cusp_reps"], doms, ext, d.get("oracle"))
    if r.gamma_p_display != f"sqrt({rat(r.gamma_p_squared)})":
        raise ValueError("gamma_p_display does not match gamma_p_squared")
    return r
