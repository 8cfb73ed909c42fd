"""Command-line surface: expansions, figure reproductions and PDE runs.

Every subcommand writes deterministic CSV (header row, UTF-8, LF endings,
floats at 17 significant digits).  An optional metadata comment line at
the top carries the invocation and a timestamp; ``--no-meta`` suppresses
it so reruns are byte-identical.  Exit codes: 0 success, 2 usage errors,
1 numerical failures.
"""

from __future__ import annotations

import argparse
import datetime
import os
import sys
from pathlib import Path

import numpy as np

from .experiments import pointwise_error_curve
from .functions import UnknownFunctionError, resolve_function
from .matfun import KrylovOptions
from .pde import (AliasingError, DiffusionProblem, DissipativityError,
                  SchrodingerProblem, UnitarityError, solve_diffusion,
                  solve_schrodinger)
from .transforms import analyze, parseval_norm
from .tsystems import (BasisSpec, hermite_fn_basis, laguerre_w_basis,
                       mt_basis, ultraspherical_w_basis)

__all__ = ["main"]

OUT_DIR_ENV = "SKEWSPEC_OUT_DIR"

_BASIS_CHOICES = ("mt", "hermite", "laguerre", "ultra")

_FIGURES = {
    # figure id -> (function name, default grid)
    "fig41a": ("sin_pi_x", 401),
    "fig41b": ("cos2_half_pi_x", 401),
    "fig42a": ("xexp_ratio", 2000),
    "fig42b": ("xexp_sin", 2000),
}

_POTENTIALS = {
    "zero": None,
    "harmonic": lambda x: 0.5 * x * x,
    "gauss_well": lambda x: -np.exp(-x * x),
}


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _make_basis(name: str, alpha: float | None) -> BasisSpec:
    if name == "mt":
        return mt_basis()
    if name == "hermite":
        return hermite_fn_basis()
    if alpha is None:
        raise ValueError(f"--alpha is required for basis {name!r}")
    if name == "laguerre":
        return laguerre_w_basis(alpha)
    return ultraspherical_w_basis(alpha)


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _out_path(arg: str | None, default_name: str) -> Path:
    if arg:
        return Path(arg)
    base = Path(os.environ.get(OUT_DIR_ENV, "."))
    return base / default_name


def _write_csv(path: Path, header: list[str], rows, meta: str | None) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if meta:
            fh.write(f"# {meta}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _meta(args: argparse.Namespace, parts: list[str]) -> str | None:
    if args.no_meta:
        return None
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return "skewspec " + " ".join(parts) + f" generated {stamp}"


def cmd_expand(args) -> int:
    try:
        spec = _make_basis(args.basis, args.alpha)
        f = resolve_function(args.fn, spec)
    except (ValueError, UnknownFunctionError) as exc:
        return _usage_error(str(exc))
    kwargs = {}
    if spec.kind == "mt" and args.oversample:
        kwargs["M"] = args.oversample
    if spec.kind != "mt" and args.quad:
        kwargs["Q"] = args.quad
    try:
        coeffs = analyze(spec, f, args.n, **kwargs)
    except (ValueError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    for w in coeffs.warnings:
        print(f"warning: {w}", file=sys.stderr)
    rows = ([_fmt(n), _fmt(c.real), _fmt(c.imag)]
            for n, c in zip(coeffs.indices, coeffs.data))
    name = f"expand_{args.basis}_{args.fn}_n{args.n}.csv"
    path = _out_path(args.out, name)
    _write_csv(path, ["n", "re", "im"], rows,
               _meta(args, ["expand", args.basis, args.fn, f"n={args.n}"]))
    print(f"wrote {path}")
    print(f"parseval_norm = {_fmt(parseval_norm(coeffs))}")
    return 0


def cmd_figures(args) -> int:
    fn_name, default_grid = _FIGURES[args.which]
    grid = args.grid or default_grid
    f = resolve_function(fn_name)
    basis_maker = (ultraspherical_w_basis if args.which.startswith("fig41")
                   else laguerre_w_basis)
    errs = []
    xs = None
    for alpha in (1.0, 2.0, 3.0, 4.0):
        xs, err, _ = pointwise_error_curve(basis_maker(alpha), f,
                                           args.terms, grid)
        errs.append(err)
    rows = ([_fmt(x)] + [_fmt(e[i]) for e in errs] for i, x in enumerate(xs))
    path = _out_path(args.out, f"{args.which}.csv")
    _write_csv(path, ["x", "err_alpha1", "err_alpha2", "err_alpha3", "err_alpha4"],
               rows, _meta(args, ["figures", args.which, f"terms={args.terms}"]))
    print(f"wrote {path}")
    return 0


def cmd_pde(args) -> int:
    krylov = KrylovOptions(tolerance=args.krylov_tol)
    try:
        if args.problem == "diffusion":
            u0_name = args.u0 or "sin_pi_x"
            problem = DiffusionProblem(N=args.n, u0=resolve_function(u0_name),
                                       T_final=args.t, steps=args.steps,
                                       alpha=args.alpha or 2.0, krylov=krylov)
            report = solve_diffusion(problem)
        else:
            if args.potential not in _POTENTIALS:
                return _usage_error(
                    f"unknown potential {args.potential!r}; "
                    f"choose from {sorted(_POTENTIALS)}")
            if args.basis not in ("hermite", "mt"):
                return _usage_error("schrodinger needs --basis hermite or mt")
            basis = hermite_fn_basis() if args.basis == "hermite" else mt_basis()
            u0_name = args.u0 or "gaussian"
            problem = SchrodingerProblem(
                basis=basis, N=args.n, u0=resolve_function(u0_name, basis),
                T_final=args.t, steps=args.steps,
                V=_POTENTIALS[args.potential], krylov=krylov)
            report = solve_schrodinger(problem)
    except UnknownFunctionError as exc:
        return _usage_error(str(exc))
    except (DissipativityError, UnitarityError, AliasingError) as exc:
        print(f"structure violation: {exc}", file=sys.stderr)
        return 1

    if args.out_prefix:
        norms_path = Path(f"{args.out_prefix}_norms.csv")
        final_path = Path(f"{args.out_prefix}_final.csv")
    else:
        base = f"pde_{args.problem}_n{args.n}"
        norms_path = _out_path(None, f"{base}_norms.csv")
        final_path = _out_path(None, f"{base}_final.csv")
    dt = args.t / args.steps
    norm_rows = ([_fmt(k), _fmt(k * dt), _fmt(v)]
                 for k, v in enumerate(report.norm_history))
    _write_csv(norms_path, ["step", "t", "norm"], norm_rows,
               _meta(args, ["pde", args.problem, f"n={args.n}", f"t={args.t}"]))
    final_rows = ([_fmt(x), _fmt(v.real), _fmt(v.imag)]
                  for x, v in zip(report.final.points, report.final.values))
    _write_csv(final_path, ["x", "re_u", "im_u"], final_rows,
               _meta(args, ["pde", args.problem, "final state"]))
    print(f"wrote {norms_path} and {final_path}")
    print(f"final_norm_ratio = {_fmt(report.norm_ratio)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewspec",
        description="Spectral expansions, figure reproductions and PDE solves")
    sub = parser.add_subparsers(dest="command", required=True)

    p_exp = sub.add_parser("expand", help="expand a named function in a basis")
    p_exp.add_argument("--basis", choices=_BASIS_CHOICES, required=True)
    p_exp.add_argument("--alpha", type=float)
    p_exp.add_argument("--n", type=int, required=True, help="truncation cutoff N")
    p_exp.add_argument("--fn", required=True, help="registry name or phi<k>")
    p_exp.add_argument("--oversample", type=int, help="MT theta-grid size (power of two)")
    p_exp.add_argument("--quad", type=int, help="quadrature points (default 2N)")
    p_exp.add_argument("--out", help="output CSV path")
    p_exp.add_argument("--no-meta", action="store_true")
    p_exp.add_argument("--seed", type=int, default=0, help="unused; reserved")
    p_exp.set_defaults(func=cmd_expand)

    p_fig = sub.add_parser("figures", help="pointwise-error curves per alpha")
    p_fig.add_argument("--which", choices=sorted(_FIGURES), required=True)
    p_fig.add_argument("--terms", type=int, default=31)
    p_fig.add_argument("--grid", type=int)
    p_fig.add_argument("--out", help="output CSV path")
    p_fig.add_argument("--no-meta", action="store_true")
    p_fig.add_argument("--seed", type=int, default=0, help="unused; reserved")
    p_fig.set_defaults(func=cmd_figures)

    p_pde = sub.add_parser("pde", help="run a model PDE solve")
    p_pde.add_argument("problem", choices=("diffusion", "schrodinger"))
    p_pde.add_argument("--basis", default="hermite",
                       help="schrodinger basis: hermite or mt")
    p_pde.add_argument("--alpha", type=float, help="diffusion basis parameter")
    p_pde.add_argument("--potential", default="zero",
                       help=f"schrodinger potential: {sorted(_POTENTIALS)}")
    p_pde.add_argument("--n", type=int, required=True)
    p_pde.add_argument("--t", type=float, required=True)
    p_pde.add_argument("--steps", type=int, default=10)
    p_pde.add_argument("--u0", help="initial condition name (default: "
                       "sin_pi_x for diffusion, gaussian for schrodinger)")
    p_pde.add_argument("--krylov-tol", type=float, default=1e-13)
    p_pde.add_argument("--out-prefix", help="output file prefix")
    p_pde.add_argument("--no-meta", action="store_true")
    p_pde.add_argument("--seed", type=int, default=0, help="unused; reserved")
    p_pde.set_defaults(func=cmd_pde)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
