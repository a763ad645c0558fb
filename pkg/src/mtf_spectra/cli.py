"""Command-line front end: CSV/JSON artifacts for every experiment.

Exit codes: 0 success, 1 usage error, 2 I/O failure, 3 self-check failure,
4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__, krylov, linalg, modal, symbols
from .scenarios import SCENARIO_NAMES, Scenario, ScenarioError, get_scenario, load_custom_media

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CHECK = 3
EXIT_NOCONV = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with status 2
        raise UsageError(f"{message}\n{self.format_usage()}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _add_common(p: _Parser, nmax_default: int | None = None) -> None:
    p.add_argument("--scenario", help=f"preset name ({', '.join(SCENARIO_NAMES)})")
    p.add_argument("--custom", help="custom media file (key=value: eps0 mu0 eps1 mu1 kappa0 kappa1)")
    p.add_argument("--nmax", type=int, default=nmax_default,
                   help="mode truncation (default: ceil(1.5*kappa_inner)+20)")
    p.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> _Parser:
    p = _Parser(prog="mtf-spectra", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum",
                        help="per-mode eigenvalues with accumulation-point distances")
    _add_common(sp)
    sp.add_argument("--variant", default="mtf", choices=modal.MODAL_VARIANTS)
    sp.add_argument("--scaled", action="store_true", help="apply the comparison normalization")
    sp.add_argument("--format", default="csv", choices=("csv", "json"))

    ac = sub.add_parser("accum",
                        help="closed-form accumulation points as JSON")
    _add_common(ac)
    ac.add_argument("--variant", default="mtf", choices=symbols.ACCUMULATION_VARIANTS)

    gm = sub.add_parser("gmres",
                        help="restarted GMRes residual histories per operator variant")
    _add_common(gm)
    gm.add_argument("--variant", choices=modal.MODAL_VARIANTS,
                    help="single variant (default: mtf, mtf2, bmtf, stf2)")
    gm.add_argument("--tol", type=float, default=1e-8)
    gm.add_argument("--restart", type=int, default=20)
    gm.add_argument("--seed", type=int, default=42)
    gm.add_argument("--multiplicity", action="store_true",
                    help="replicate each mode block 2n+1 times")
    gm.add_argument("--rhs", default="mie-like", choices=modal.RHS_MODELS)

    co = sub.add_parser("coercivity",
                        help="exact and asymptotic coercivity quotients per mode")
    _add_common(co, nmax_default=150)

    st = sub.add_parser("selftest",
                        help="operator identity checks across all presets")
    st.add_argument("--nmax", type=int, default=150)
    st.add_argument("--json", action="store_true", dest="as_json")
    return p


def _resolve_scenario(args) -> Scenario:
    if getattr(args, "custom", None):
        return load_custom_media(args.custom)
    if getattr(args, "scenario", None):
        return get_scenario(args.scenario)
    raise UsageError("one of --scenario or --custom is required")


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    scenario = _resolve_scenario(args)
    n_max = args.nmax if args.nmax is not None else modal.default_n_max(scenario.media)
    report = modal.spectrum_scan(scenario.media, args.variant, n_max)
    scale = modal._scaling_constant(args.variant, scenario.media) if args.scaled else 1.0
    acc = report.accumulation
    summary = {
        "scenario": scenario.name,
        "variant": args.variant,
        "n_max": n_max,
        "scaled": bool(args.scaled),
        "scale": scale,
        "accumulation_points": [[float(scale * p.real), float(scale * p.imag)] for p in acc.points],
        "lambda_mu": acc.lambdas[0],
        "lambda_eps": acc.lambdas[1],
        "upsilon_mu": acc.upsilons[0],
        "upsilon_eps": acc.upsilons[1],
        "min_abs_eigenvalue": scale * report.min_abs_eigenvalue,
    }
    with _output(args.out) as fh:
        if args.format == "json":
            modes = [
                {
                    "n": n,
                    "eigenvalues": [[float(scale * e.real), float(scale * e.imag)] for e in ev],
                    "dist_to_accum": [float(scale * d) for d in acc.distance(ev)],
                }
                for n, ev in zip(report.modes, report.eigenvalues)
            ]
            json.dump({**summary, "modes": modes}, fh, indent=2)
            fh.write("\n")
        else:
            fh.write("n,eig_index,re,im,dist_to_accum\n")
            for n, ev in zip(report.modes, report.eigenvalues):
                dists = acc.distance(ev)
                for i, (e, d) in enumerate(zip(ev, dists)):
                    fh.write(
                        f"{n},{i},{_fmt(scale * e.real)},{_fmt(scale * e.imag)},{_fmt(scale * d)}\n"
                    )
            fh.write("# " + json.dumps(summary) + "\n")
    return EXIT_OK


def cmd_accum(args) -> int:
    scenario = _resolve_scenario(args)
    acc = symbols.accumulation_points(scenario.media, args.variant)
    doc = {
        "scenario": scenario.name,
        "variant": acc.variant,
        "lambda_mu": acc.lambdas[0],
        "lambda_eps": acc.lambdas[1],
        "upsilon_mu": acc.upsilons[0],
        "upsilon_eps": acc.upsilons[1],
        "points": [[p.real, p.imag] for p in acc.points],
    }
    with _output(args.out) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_gmres(args) -> int:
    scenario = _resolve_scenario(args)
    variants = (args.variant,) if args.variant else ("mtf", "mtf2", "bmtf", "stf2")
    reports = krylov.precond_compare(
        scenario,
        n_max=args.nmax,
        variants=variants,
        restart=args.restart,
        tol=args.tol,
        seed=args.seed,
        with_multiplicity=args.multiplicity,
        rhs_model=args.rhs,
    )
    with _output(args.out) as fh:
        fh.write("variant,iteration,relative_residual\n")
        for variant, rep in reports.items():
            for i, res in enumerate(rep.residual_history):
                fh.write(f"{variant},{i},{_fmt(res)}\n")
    summary = {
        "scenario": scenario.name,
        "n_max": args.nmax,
        "restart": args.restart,
        "tolerance": args.tol,
        "seed": args.seed,
        "iterations": {v: rep.iterations for v, rep in reports.items()},
        "converged": {v: rep.converged for v, rep in reports.items()},
    }
    print(json.dumps(summary, indent=2))
    if not all(rep.converged for rep in reports.values()):
        return EXIT_NOCONV
    return EXIT_OK


def cmd_coercivity(args) -> int:
    scenario = _resolve_scenario(args)
    if args.nmax is None or args.nmax < 1:
        raise UsageError("--nmax must be >= 1")
    with _output(args.out) as fh:
        fh.write("n,quotient_exact,quotient_asymptotic\n")
        for n in range(1, args.nmax + 1):
            qe = modal.coercivity_quotient(n, scenario.media, use_asymptotic=False)
            qa = modal.coercivity_quotient(n, scenario.media, use_asymptotic=True)
            fh.write(f"{n},{_fmt(qe)},{_fmt(qa)}\n")
    return EXIT_OK


def _selftest_checks(n_max: int):
    I4, I8 = np.eye(4), np.eye(8)
    PI = symbols.swap_matrix(8)
    presets = [get_scenario(name) for name in SCENARIO_NAMES]

    def wronskian() -> float:
        worst = 0.0
        for sc in presets:
            for medium in (sc.media.outer, sc.media.inner):
                from .riccati import cached_table

                worst = max(worst, cached_table(medium.kappa, n_max).wronskian_defect())
        return worst

    def calderon() -> float:
        worst = 0.0
        for sc in presets:
            for medium, side in ((sc.media.outer, 0), (sc.media.inner, 1)):
                for n in range(n_max + 1):
                    A = symbols.a_symbol(n, medium, side)
                    worst = max(worst, float(np.abs(A @ A - I4).max()))
        return worst

    def square() -> float:
        worst = 0.0
        for sc in presets:
            for n in range(n_max + 1):
                M = symbols.mtf_symbol(n, sc.media)
                K = symbols.a_symbol(n, sc.media.outer, 0) - symbols.a_symbol(n, sc.media.inner, 0)
                KK = np.zeros((8, 8), complex)
                KK[:4, :4] = K
                KK[4:, 4:] = K
                worst = max(worst, float(np.abs(M @ M - 2 * I8 - PI @ KK).max()))
        return worst

    def inverse() -> float:
        worst = 0.0
        for sc in presets:
            for n in range(n_max + 1):
                M = symbols.mtf_symbol(n, sc.media)
                X = symbols.mtf_inverse_symbol(n, sc.media)
                worst = max(worst, float(np.abs(M @ X - I8).max()))
        return worst

    def b_identity() -> float:
        worst = 0.0
        for sc in presets:
            for n in range(n_max + 1):
                B = symbols.b_symbol(n, sc.media)
                M = symbols.mtf_symbol(n, sc.media)
                S = symbols.stf_symbol(n, sc.media)
                S2 = np.zeros((8, 8), complex)
                S2[:4, :4] = S @ S
                S2[4:, 4:] = S @ S
                worst = max(worst, float(np.abs(B @ M - S2).max()))
        return worst

    def asymptotics() -> float:
        # signed large-n limits pin the absolute sign conventions, which the
        # algebraic identities above cannot see (they are K-sign blind)
        worst = 0.0
        for sc in presets:
            for medium in (sc.media.outer, sc.media.inner):
                kap = medium.kappa
                n = max(400, int(np.ceil(3.5 * kap)))
                K = symbols.k_symbol(n, kap, 0)
                V = symbols.v_symbol(n, kap, 0)
                worst = max(
                    worst,
                    abs(2 * n * K[0, 0] + 1),
                    abs(2 * n * K[1, 1] - 1),
                    abs(n / kap * V[0, 1] - 1),
                    abs(kap / n * V[1, 0] - 1),
                )
        return float(worst)

    return [
        ("wronskian", wronskian, 1e-10),
        ("calderon", calderon, 1e-10),
        ("square", square, 1e-10),
        ("inverse", inverse, 1e-9),
        ("b_identity", b_identity, 1e-9),
        ("asymptotics", asymptotics, 0.2),
    ]


def cmd_selftest(args) -> int:
    results = []
    ok = True
    for name, fn, tol in _selftest_checks(args.nmax):
        defect = fn()
        passed = defect <= tol
        ok = ok and passed
        results.append({"name": name, "max_defect": defect, "tolerance": tol, "passed": passed})
    if args.as_json:
        print(json.dumps({"n_max": args.nmax, "passed": ok, "checks": results}, indent=2))
    else:
        for r in results:
            status = "PASS" if r["passed"] else "FAIL"
            print(f"{status} {r['name']}: max defect {r['max_defect']:.3e} (tol {r['tolerance']:.0e})")
    return EXIT_OK if ok else EXIT_CHECK


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "accum": cmd_accum,
    "gmres": cmd_gmres,
    "coercivity": cmd_coercivity,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"mtf-spectra: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ScenarioError, ValueError) as exc:
        print(f"mtf-spectra: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mtf-spectra: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except linalg.NumericalError as exc:
        print(f"mtf-spectra: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NOCONV


def entry() -> None:
    sys.exit(main())
