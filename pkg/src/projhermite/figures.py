"""SVG drawings of a skyline domain projected to C.

Cell boundaries are straight: two hemispheres centred on C meet in a circle
lying in a vertical plane, which projects to a segment.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["render_domain_svg", "svg_name"]


def svg_name(D, base):
    spec = base.spec().replace("/", "_over_").replace("+", "p").replace("-", "m")
    return f"hermite_D{D}_{spec}.svg"


def _xy(P, rtD):
    return float(P.x), float(P.s) * rtD


def render_domain_svg(S, path, title=None):
    """Write the domain as an SVG; returns (cell count, vertex labels in order)."""
    K = S.K
    rtD = math.sqrt(K.D)
    verts = S.vertices
    labels = [f"V{i + 1}" for i in range(len(verts))]
    with plt.rc_context({"svg.hashsalt": "projhermite", "svg.fonttype": "none",
                         "font.size": 7}):
        fig, ax = plt.subplots(figsize=(6, 6))
        p1, p2 = S.parallelogram
        corners = [K.zero, p1, p1 + p2, p2, K.zero]
        ax.plot([float(c.re) for c in corners], [float(c.im) * rtD for c in corners],
                ls="--", lw=0.6, color="0.55", gid="parallelogram")
        for i, c in enumerate(S.cells):
            xs, ys = zip(*(_xy(v.point, rtD) for v in c.vertices))
            ax.fill(xs, ys, facecolor=f"C{i % 10}", alpha=0.12, edgecolor="black", lw=0.9,
                    gid=f"cell-{i + 1}")
            cx, cy = float(c.hemisphere.cx), float(c.hemisphere.cs) * rtD
            ax.plot([cx], [cy], "o", ms=2.5, color="black", gid=f"cusp-{i + 1}")
            ax.annotate(str(c.owner), (cx, cy), xytext=(3, -8), textcoords="offset points")
        for P, lab in zip(verts, labels):
            x, y = _xy(P, rtD)
            ax.plot([x], [y], "s", ms=3, color="firebrick", gid=f"vertex-{lab}")
            ax.annotate(lab, (x, y), xytext=(3, 3), textcoords="offset points",
                        color="firebrick")
        ax.set_aspect("equal")
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
        ax.set_title(title or f"D = {K.D}, base {S.base}")
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return len(S.cells), labels
