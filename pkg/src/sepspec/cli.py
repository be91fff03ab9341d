"""Command-line interface.

Exit codes: 0 affirmative/success, 1 negative verdict, 2 invalid input,
3 numerical or budget failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from sepspec import criteria, decomposer as dec, io
from sepspec.exceptions import (
    AlignmentInfeasibleError,
    ContractionViolationError,
    BlockInequalityError,
    NotAdmissibleError,
    SamplingBudgetError,
    SepSpecError,
    SpectralConditionError,
)
from sepspec.linalg import as_generator
from sepspec.states import Spectrum, is_ppt, random_state_with_spectrum, spectrum_of

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3
DEFAULT_SEED = 20160512


class InputError(Exception):
    """Bad command-line usage detected after argparse (exit 2)."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(report, indent=1))
    else:
        print("\n".join(lines))


def _parse_lambdas(tokens: list[str], dims: tuple[int, int] | None) -> Spectrum:
    if dims is None:
        raise InputError("--lambdas needs --dims M N")
    size = dims[0] * dims[1]
    if len(tokens) == 1 and tokens[0] == "uniform":
        return Spectrum.uniform(size)
    try:
        values = [float(tok) for tok in tokens]
    except ValueError as exc:
        raise InputError(f"--lambdas: {exc}") from exc
    if len(values) != size:
        raise InputError(f"--lambdas has {len(values)} values but dims {dims} need {size}")
    return Spectrum(values)


def _spectrum_input(args) -> tuple[Spectrum, tuple[int, int], object]:
    """Resolve a state file or --lambdas/--dims into (spectrum, dims, state-or-None)."""
    if args.state and args.lambdas:
        raise InputError("give either a state file or --lambdas, not both")
    if args.state:
        rho = io.read_state(args.state)
        return spectrum_of(rho), rho.dims, rho
    if args.lambdas:
        dims = tuple(args.dims) if args.dims else None
        return _parse_lambdas(args.lambdas, dims), dims, None
    raise InputError("no input: pass a state file or --lambdas with --dims")


# ---------------------------------------------------------------- commands


def cmd_check(args) -> int:
    spec, dims, rho = _spectrum_input(args)
    m, n = dims
    if m != 2:
        raise InputError(f"the spectral test needs a qubit first factor, got dims {dims}")
    cond = criteria.abs_sep_condition(spec, n)
    ball = criteria.gurvits_barnum_ball(spec)
    ppt_identity = None if rho is None else is_ppt(rho)
    verdict = "separable from spectrum" if cond.holds else "not separable from spectrum"
    report = {
        "dims": list(dims),
        "spectrum": spec.values.tolist(),
        "condition": asdict(cond),
        "ball": asdict(ball),
        "ppt_at_identity": ppt_identity,
        "verdict": verdict,
    }
    lines = [
        f"dims: {m} x {n}",
        "spectrum: " + " ".join(_fmt(x) for x in spec.values),
        f"condition l1 <= l{2 * n - 1} + 2 sqrt(l{2 * n - 2} l{2 * n}): "
        f"lhs={_fmt(cond.lhs)} rhs={_fmt(cond.rhs)} margin={_fmt(cond.margin)} holds={cond.holds}",
        f"separable ball (purity <= 1/(N-1)): purity={_fmt(ball.lhs)} radius={_fmt(ball.rhs)} holds={ball.holds}",
        f"ppt at identity: {'n/a' if ppt_identity is None else ppt_identity}",
    ]
    if n == 4:
        cuts = criteria.three_qubit_all_cuts(spec)
        report["three_qubit_all_cuts"] = asdict(cuts)
        lines.append(f"three-qubit reading, separable across every cut: {cuts.holds}")
    lines.append(f"verdict: {verdict}")
    _emit(args, report, lines)
    return EXIT_OK if cond.holds else EXIT_NEGATIVE


def cmd_decompose(args) -> int:
    rho = io.read_state(args.state)
    d, cert = dec.decompose(rho, require_condition=not args.no_refuse, grid=args.grid, tol=args.tol)
    if args.out:
        io.write_decomposition(d, args.out, cert)
    report = {
        "terms": len(d),
        "t_star": cert.t_star,
        "inequality_margin": cert.inequality_margin,
        "reconstruction_error": d.reconstruction_error,
        "out": args.out,
    }
    lines = [
        f"terms: {len(d)}",
        f"t*: {_fmt(cert.t_star)}",
        f"inequality margin: {_fmt(cert.inequality_margin)}",
        f"reconstruction error: {_fmt(d.reconstruction_error)}",
    ]
    if args.out:
        lines.append(f"written: {args.out}")
    _emit(args, report, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    rho = io.read_state(args.state)
    d, _ = io.read_decomposition(args.decomposition)
    rep = dec.decomposition_report(rho, d)
    ok = rep.ok(args.tol)
    report = {**asdict(rep), "tol": args.tol, "ok": ok}
    lines = [
        f"reconstruction distance: {_fmt(rep.distance)}",
        f"weight sum deviation: {_fmt(rep.weight_sum_deviation)}",
        f"max unit-norm deviation: {_fmt(rep.max_norm_deviation)}",
        f"negative weights: {rep.negative_weights}",
        f"verdict: {'valid' if ok else 'invalid'} (tol {args.tol:g})",
    ]
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_sample(args) -> int:
    m, n = args.dims
    size = m * n
    gen = as_generator(args.seed)
    if args.spectrum:
        if args.condition_3:
            raise InputError("--condition-3 applies to --random-spectrum only")
        spec = _parse_lambdas(args.spectrum, (m, n))
        spectra = [spec.values] * args.count
    else:
        if args.condition_3 and m != 2:
            raise InputError("--condition-3 needs dims 2 n")
        spectra = criteria.sample_spectra(size, args.count, gen, args.condition_3)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(args.count - 1)))
    paths = []
    for k, lam in enumerate(spectra):
        rho = random_state_with_spectrum(Spectrum(lam), (m, n), gen)
        path = out / f"state_{k:0{width}d}.json"
        io.write_state(rho, path)
        paths.append(str(path))
    _emit(args, {"written": paths}, [f"wrote {len(paths)} states to {out}"])
    return EXIT_OK


def cmd_scan(args) -> int:
    rho = io.read_state(args.state)
    rows = dec.scan(rho, args.grid)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            io.write_scan_csv(rows, fh)
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    else:
        io.write_scan_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_witness(args) -> int:
    spec, dims, _ = _spectrum_input(args)
    res = criteria.npt_witness_search(spec, dims, args.budget, as_generator(args.seed))
    report = {
        "found": res.found,
        "min_pt_eigenvalue": res.min_pt_eigenvalue,
        "evaluations": res.iterations,
        "out": None,
    }
    lines = [
        f"witness found: {res.found}",
        f"min PT eigenvalue: {_fmt(res.min_pt_eigenvalue)}",
        f"objective evaluations: {res.iterations}",
    ]
    if res.found:
        recheck = criteria.recheck_witness(spec, dims, res.unitary)
        report["recheck_min_pt_eigenvalue"] = recheck
        lines.append(f"recheck through state API: {_fmt(recheck)}")
        if args.out:
            io.dump_json(io.unitary_to_dict(res.unitary, dims, res.min_pt_eigenvalue), args.out)
            report["out"] = args.out
            lines.append(f"written: {args.out}")
    _emit(args, report, lines)
    return EXIT_OK if res.found else EXIT_NEGATIVE


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepspec", description="Separability from spectrum for qubit-qudit states."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def spectrum_inputs(p):
        p.add_argument("state", nargs="?", help="state file (JSON)")
        p.add_argument("--lambdas", nargs="+", help="eigenvalues, or the word 'uniform'")
        p.add_argument("--dims", nargs=2, type=int, metavar=("M", "N"))

    p = sub.add_parser("check", help="spectral separability report")
    spectrum_inputs(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="explicit separable decomposition")
    p.add_argument("state")
    p.add_argument("--out", help="decomposition file to write")
    p.add_argument("--tol", type=float, default=dec.RECONSTRUCTION_TOL)
    p.add_argument("--grid", type=int, default=dec.DEFAULT_GRID)
    p.add_argument("--no-refuse", action="store_true", help="run the search even if the spectral condition fails")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition file against a state file")
    p.add_argument("state")
    p.add_argument("decomposition")
    p.add_argument("--tol", type=float, default=dec.RECONSTRUCTION_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="sample states with a given or random spectrum")
    p.add_argument("--dims", nargs=2, type=int, metavar=("M", "N"), required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--spectrum", nargs="+", help="eigenvalues, or the word 'uniform'")
    group.add_argument("--random-spectrum", action="store_true", help="flat Dirichlet spectra")
    p.add_argument(
        "--condition-3", choices=("pass", "fail"), dest="condition_3", help="keep spectra that pass or fail the spectral condition"
    )
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("scan", help="block gap and overlap difference along the rotation family")
    p.add_argument("state")
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("witness", help="search the unitary orbit for a non-PPT state")
    spectrum_inputs(p)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help="file for the witness unitary")
    p.set_defaults(func=cmd_witness)

    for action in sub.choices.values():
        if not any(a.dest == "json" for a in action._actions):
            action.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SpectralConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (
        NotAdmissibleError,
        SamplingBudgetError,
        BlockInequalityError,
        AlignmentInfeasibleError,
        ContractionViolationError,
        dec.ReconstructionError,
        np.linalg.LinAlgError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, SepSpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
