#!/usr/bin/env python3
"""Render skewspec CSV outputs to figures, one CSV -> one image.

Usage:
    python plots/render_figures.py --in fig41a.csv --template fig41a --out fig41a.png

Templates `fig41a`..`fig42b` draw the four pointwise-error curves on a log
scale with the alpha -> color mapping green, blue, yellow, red for
alpha = 1, 2, 3, 4; `pde_norms` draws a norm history and `pde_final` a
final state.  Stateless and headless; exits 2 when the CSV is empty or its
schema does not match the template (naming the missing column).
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

ALPHA_COLORS = {1: "green", 2: "blue", 3: "gold", 4: "red"}

ERROR_COLUMNS = ["x", "err_alpha1", "err_alpha2", "err_alpha3", "err_alpha4"]

TEMPLATES = {
    "fig41a": {"kind": "error_curves", "columns": ERROR_COLUMNS,
               "title": "sin(pi x), 31-term ultraspherical expansions",
               "xlabel": "x"},
    "fig41b": {"kind": "error_curves", "columns": ERROR_COLUMNS,
               "title": "cos^2(pi x/2), 31-term ultraspherical expansions",
               "xlabel": "x"},
    "fig42a": {"kind": "error_curves", "columns": ERROR_COLUMNS,
               "title": "x e^-x/(1+x), 31-term Laguerre expansions",
               "xlabel": "x"},
    "fig42b": {"kind": "error_curves", "columns": ERROR_COLUMNS,
               "title": "x e^-2x sin x, 31-term Laguerre expansions",
               "xlabel": "x"},
    "pde_norms": {"kind": "norm_history", "columns": ["step", "t", "norm"],
                  "title": "coefficient-norm history", "xlabel": "t"},
    "pde_final": {"kind": "final_state", "columns": ["x", "re_u", "im_u"],
                  "title": "final state", "xlabel": "x"},
}


class SchemaError(RuntimeError):
    pass


def load_csv(path: Path, expected_columns: list[str]) -> dict[str, list[float]]:
    """Read a skewspec CSV (optional leading '#' meta line), validating the
    header against the template's expected columns."""
    with open(path, encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        raise SchemaError("CSV is empty")
    header = [c.strip() for c in rows[0]]
    for col in expected_columns:
        if col not in header:
            raise SchemaError(f"missing column {col!r} (found {header})")
    if len(rows) < 2:
        raise SchemaError("CSV has a header but no data rows")
    idx = {c: header.index(c) for c in expected_columns}
    data = {c: [] for c in expected_columns}
    for row in rows[1:]:
        for c in expected_columns:
            data[c].append(float(row[idx[c]]))
    return data


def build_figure(template: str, data: dict[str, list[float]]):
    spec = TEMPLATES[template]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if spec["kind"] == "error_curves":
        floor = 1e-17
        for alpha in (1, 2, 3, 4):
            ys = [max(v, floor) for v in data[f"err_alpha{alpha}"]]
            ax.semilogy(data["x"], ys, color=ALPHA_COLORS[alpha],
                        label=f"alpha = {alpha}", linewidth=1.2)
        ax.set_ylabel("pointwise error")
        ax.legend(loc="best", fontsize=9)
    elif spec["kind"] == "norm_history":
        ax.plot(data["t"], data["norm"], "o-", color="tab:blue", markersize=3)
        ax.set_ylabel("coefficient 2-norm")
    else:
        ax.plot(data["x"], data["re_u"], color="tab:blue", label="Re u")
        ax.plot(data["x"], data["im_u"], color="tab:orange", label="Im u")
        ax.set_ylabel("u")
        ax.legend(loc="best", fontsize=9)
    ax.set_xlabel(spec["xlabel"])
    ax.set_title(spec["title"], fontsize=11)
    ax.grid(True, which="both", alpha=0.25)
    fig.tight_layout()
    return fig


def render(in_path: Path, template: str, out_path: Path) -> None:
    data = load_csv(in_path, TEMPLATES[template]["columns"])
    fig = build_figure(template, data)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=130)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="in_path", required=True, help="input CSV")
    parser.add_argument("--template", required=True, choices=sorted(TEMPLATES))
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    in_path = Path(args.in_path)
    if not in_path.exists():
        print(f"error: no such file: {in_path}", file=sys.stderr)
        return 2
    try:
        render(in_path, args.template, Path(args.out))
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: malformed CSV: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
