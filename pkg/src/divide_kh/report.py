"""Report bundle for one divide: delimited tables plus two PNG figures."""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .divide import Divide, validate  # noqa: E402
from .homology import HomologyTable, divide_homology, graded_euler  # noqa: E402
from .laurent import HalfLaurent, NotDivisible  # noqa: E402
from .notation import to_json_obj  # noqa: E402
from .polynomial import check_euler_relation, w_statesum  # noqa: E402
from .states import DEFAULT_MAX_POINTS  # noqa: E402

STYLE = {
    "figure.figsize": (5.0, 3.4),
    "font.size": 9,
    "axes.linewidth": 0.6,
    "savefig.dpi": 150,
}


def plot_homology(table: HomologyTable, path: Path, title: str = "") -> None:
    """Grid with i down the rows and j across, dimension printed in each cell."""
    ii, jj = table.i_range(), table.j_range()
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for (i, j), dim in table.entries.items():
            ax.add_patch(plt.Rectangle((j - 1, i - 0.5), 2, 1, facecolor="0.85", edgecolor="0.4", lw=0.5))
            ax.text(j, i, str(dim), ha="center", va="center")
        if ii and jj:
            ax.set_xlim(jj[0] - 1.5, jj[-1] + 1.5)
            ax.set_ylim(ii[-1] + 1, ii[0] - 1)
            ax.set_xticks(jj)
            ax.set_yticks(ii)
        ax.set_xlabel("j")
        ax.set_ylabel("i")
        ax.set_title(title or "homology over GF(2)")
        ax.set_aspect("auto")
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)


def plot_polynomials(w: HalfLaurent | None, chi: HalfLaurent, path: Path, title: str = "") -> None:
    """Coefficients of W and of the graded Euler characteristic against the power of t."""
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, sharey=False)
        for ax, poly, label in ((axes[0], w, "W"), (axes[1], chi, "χ")):
            if poly is None:
                ax.text(0.5, 0.5, "not a Laurent\npolynomial", ha="center", va="center", transform=ax.transAxes)
            else:
                pairs = poly.to_pairs()
                ax.bar([e for e, _ in pairs], [c for _, c in pairs], width=0.4, color="0.3")
                ax.axhline(0, color="0.5", lw=0.5)
            ax.xaxis.set_major_locator(MaxNLocator(integer=True))
            ax.yaxis.set_major_locator(MaxNLocator(integer=True))
            ax.set_xlabel("power of t")
            ax.set_title(label)
        axes[0].set_ylabel("coefficient")
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)


def write_report(divide: Divide, out_dir: Path, max_points: int = DEFAULT_MAX_POINTS,
                 threads: int = 1) -> list[Path]:
    """Write ``homology.tsv``, ``poly.tsv``, ``report.json`` and two figures; returns the paths."""
    prof = validate(divide)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = divide_homology(divide, "auto", threads, max_points)
    chi = graded_euler(table)
    try:
        w = w_statesum(divide, max_points)
    except NotDivisible:
        w = None
    holds = check_euler_relation(divide, table, max_points)
    name = divide.name or "divide"

    paths = [out_dir / "homology.tsv", out_dir / "poly.tsv", out_dir / "report.json",
             out_dir / "homology.png", out_dir / "poly.png"]
    paths[0].write_text(table.render("tsv") + "\n", encoding="utf-8")
    rows = ["series\texponent\tcoefficient"]
    for label, poly in (("W", w), ("chi", chi)):
        if poly is not None:
            rows += [f"{label}\t{e}\t{c}" for e, c in poly.to_pairs()]
    paths[1].write_text("\n".join(rows) + "\n", encoding="utf-8")
    report = {
        "schema": 1,
        "divide": to_json_obj(divide),
        "profile": {"n_plus": prof.n_plus, "n_minus": prof.n_minus, "n_zero": prof.n_zero,
                    "endpoints": prof.endpoints, "writhe": prof.writhe},
        "homology": table.to_json_obj()["entries"],
        "W": None if w is None else {"pairs": w.to_pairs(), "text": w.render()},
        "chi": {"pairs": chi.to_pairs(), "text": chi.render()},
        "euler_relation": holds,
    }
    paths[2].write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    plot_homology(table, paths[3], f"{name}: homology")
    plot_polynomials(w, chi, paths[4], name)
    return paths
