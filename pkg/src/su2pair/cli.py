"""Command-line surface.

Subcommands: solve, classify, quartic, verify, thermo, graphene-bands,
graphene-concurrence, graphene-thermal.  Exit codes: 0 success, 1
verification failure, 2 usage or parse error, 3 numeric invariant
violation.  Identical options and seed produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import graphene
from .errors import InputFormatError, InvariantViolation
from .hamiltonian import classify
from .quartic import solve_quartic
from .serialization import (
    format_float,
    grid_rows,
    load_coefficient_set,
    write_csv,
    write_eigensystem,
)
from .solver import solve
from .thermo import EnsembleBranch, thermal_report
from .verify import run_suites, report_lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su2pair",
        description="Closed-form eigensystems, entanglement and thermodynamics "
        "of two-qubit Hamiltonians, with a bilayer-graphene front end.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a coefficient set for its eigensystem")
    p_solve.add_argument("--input", required=True, help="coefficient-set JSON file")
    p_solve.add_argument("--output", help="eigensystem JSON output path")

    p_cls = sub.add_parser("classify", help="report the solvable case of a coefficient set")
    p_cls.add_argument("--input", required=True, help="coefficient-set JSON file")

    p_quartic = sub.add_parser("quartic", help="roots of a quartic polynomial")
    p_quartic.add_argument(
        "--coeffs", nargs=5, type=float, required=True, metavar=("C4", "C3", "C2", "C1", "C0")
    )

    p_verify = sub.add_parser("verify", help="run the seeded verification suites")
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--suite", action="append", help="restrict to named suites")

    p_thermo = sub.add_parser("thermo", help="temperature sweep: Z, purity, concurrence")
    p_thermo.add_argument("--input", required=True, help="coefficient-set JSON file")
    p_thermo.add_argument("--tmin", type=float, required=True)
    p_thermo.add_argument("--tmax", type=float, required=True)
    p_thermo.add_argument("--steps", type=int, default=50)
    p_thermo.add_argument(
        "--branch", choices=["full", "positive"], default="full",
        help="full ensemble or positive-energy restriction",
    )
    p_thermo.add_argument("--output", required=True, help="CSV output path")

    for name, extra in (
        ("graphene-bands", "positive band energies on a k grid"),
        ("graphene-concurrence", "eigenstate concurrence on a k grid"),
        ("graphene-thermal", "thermal concurrence curve at one k point"),
    ):
        g = sub.add_parser(name, help=extra)
        g.add_argument("--t", type=float, default=1.0, help="intralayer hopping")
        g.add_argument("--t3", type=float, default=1.0, help="non-dimer interlayer hopping")
        g.add_argument("--tperp", type=float, default=1.0, help="dimer coupling")
        g.add_argument("--m", type=float, default=0.0, help="sublattice mass")
        g.add_argument("--bias", type=float, default=0.0, help="interlayer bias voltage")
        g.add_argument("--lattice", type=float, default=1.0, help="lattice constant")
        g.add_argument("--output", required=True, help="CSV output path")
        if name == "graphene-thermal":
            g.add_argument("--kx", type=float, default=None, help="defaults to a Dirac point")
            g.add_argument("--ky", type=float, default=None)
            g.add_argument("--tmin", type=float, default=0.01)
            g.add_argument("--tmax", type=float, default=100.0)
            g.add_argument("--steps", type=int, default=50)
        else:
            g.add_argument("--grid", type=int, default=201, help="samples per axis")
            g.add_argument("--mask", choices=["none", "hex"], default="none")
        if name == "graphene-concurrence":
            g.add_argument("--branch-m", type=int, choices=[1, 2], default=2)
            g.add_argument("--branch-n", type=int, choices=[1, 2], default=1)
    return parser


def _graphene_params(args) -> graphene.GrapheneParams:
    try:
        return graphene.GrapheneParams(
            t=args.t, t3=args.t3, tperp=args.tperp, m=args.m,
            bias=args.bias, lattice=args.lattice,
        )
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def _temperatures(tmin: float, tmax: float, steps: int) -> np.ndarray:
    if not (0 < tmin <= tmax) or steps < 1:
        raise InputFormatError("need 0 < tmin <= tmax and steps >= 1")
    if steps == 1 or tmin == tmax:
        return np.array([tmin])
    # Log spacing: sweeps span decades and both endpoints are sampled exactly.
    temps = np.exp(np.linspace(np.log(tmin), np.log(tmax), steps))
    temps[0], temps[-1] = tmin, tmax
    return temps


def cmd_solve(args) -> int:
    es = solve(load_coefficient_set(args.input))
    print(f"method: {es.method.value}" + (" (degenerate)" if es.degenerate else ""))
    for (m, n), e, _ in es.items():
        print(f"eigenvalue[{m},{n}] = {format_float(e)}")
    if args.output:
        write_eigensystem(args.output, es)
        print(f"eigensystem written to {args.output}")
    return 0


def cmd_classify(args) -> int:
    label = classify(load_coefficient_set(args.input))
    print(f"case: {label}")
    for key in sorted(label.residuals):
        print(f"residual {key} = {label.residuals[key]:.6e}")
    return 0


def cmd_quartic(args) -> int:
    roots = solve_quartic(*args.coeffs)
    for z in roots:
        print(f"{format_float(z.real)} {'+' if z.imag >= 0 else '-'} {format_float(abs(z.imag))}i")
    return 0


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise InputFormatError("--samples must be at least 1")
    try:
        results = run_suites(args.samples, args.seed, args.suite)
    except KeyError as exc:
        raise InputFormatError(str(exc)) from exc
    for line in report_lines(results, args.samples, args.seed):
        print(line)
    return 0 if all(r.passed for r in results) else 1


def cmd_thermo(args) -> int:
    c = load_coefficient_set(args.input)
    branch = EnsembleBranch.FULL if args.branch == "full" else EnsembleBranch.POSITIVE_ONLY
    temps = _temperatures(args.tmin, args.tmax, args.steps)
    rows = []
    for t in temps:
        rep = thermal_report(c, float(t), branch)
        rows.append((rep.temperature, rep.z_value, rep.purity, rep.concurrence, rep.flag))
    write_csv(args.output, ["T", "Z", "purity", "concurrence", "flag"], rows)
    print(f"{len(rows)} temperatures written to {args.output}")
    return 0


def cmd_graphene_bands(args) -> int:
    p = _graphene_params(args)
    spec = graphene.default_grid(p, args.grid, args.mask)
    data = graphene.band_grid(p, spec)
    write_csv(args.output, ["kx", "ky", "E1", "E2"], grid_rows(data, ["kx", "ky", "e1", "e2"]))
    print(
        f"{data['kx'].size} points written to {args.output}; "
        f"min E1 = {format_float(float(np.min(data['e1'])))}"
    )
    return 0


def cmd_graphene_concurrence(args) -> int:
    p = _graphene_params(args)
    spec = graphene.default_grid(p, args.grid, args.mask)
    data = graphene.concurrence_grid(p, spec, args.branch_m, args.branch_n)
    write_csv(args.output, ["kx", "ky", "C", "flag"], grid_rows(data, ["kx", "ky", "c", "flag"]))
    flagged = int(np.sum(data["flag"]))
    print(f"{data['kx'].size} points written to {args.output}; {flagged} flagged")
    return 0


def cmd_graphene_thermal(args) -> int:
    p = _graphene_params(args)
    if (args.kx is None) != (args.ky is None):
        raise InputFormatError("provide both --kx and --ky or neither")
    if args.kx is None:
        kx, ky = graphene.find_dirac_point(p)
    else:
        kx, ky = args.kx, args.ky
    temps = _temperatures(args.tmin, args.tmax, args.steps)
    data = graphene.thermal_concurrence_curve(p, kx, ky, temps)
    write_csv(args.output, ["T", "C", "flag"], grid_rows(data, ["t", "c", "flag"]))
    print(
        f"{data['t'].size} temperatures written to {args.output} "
        f"at k = ({format_float(kx)}, {format_float(ky)})"
    )
    return 0


_HANDLERS = {
    "solve": cmd_solve,
    "classify": cmd_classify,
    "quartic": cmd_quartic,
    "verify": cmd_verify,
    "thermo": cmd_thermo,
    "graphene-bands": cmd_graphene_bands,
    "graphene-concurrence": cmd_graphene_concurrence,
    "graphene-thermal": cmd_graphene_thermal,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
