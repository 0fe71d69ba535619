"""
Dynamical Baxterization toolkit command line.

    python main.py graphs list [--json]
    python main.py build tl --graph E6 --out e6.json
    python main.py verify tl --graph E6 --tol 1e-10 --json
    python main.py verify ybe --graph A5 --param tri --z 0.3 --w 0.7
    python main.py transfer --graph A4 --sites 6 --param tri --z 0.2 --w 0.5 --check-commute --json
    python main.py chain --graph A4 --sites 6 --diagonalize --csv spectra.csv
    python main.py suite --tol-profile default

Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from baxter import (
    SpectralParam,
    abf_family,
    baxterize_Hecke,
    baxterize_TL,
    check_degeneration,
    check_dYBE,
    check_dYBE_2param,
    check_functional_relation,
    check_obstruction,
    sample_pairs,
    sigma_from_hecke,
    spectral_param,
)
from baxter.rmatrix import RFamily
from baxter.spectral import PARAM_NAMES
from catalog import AFFINE_LISTING, CLASSICAL_LISTING, build_diagram, coxeter_number, diagram_name, \
    parse_graph_token, pf_eigen
from config import TOLERANCE_PROFILES, get_settings, get_tolerances, set_tol_profile
from groupoid.graph import Graph
from lattice import ClosedPathBasis, check_commuting, check_hamiltonian, check_spectrum, hamiltonian, \
    partition_function, transfer_matrix
from models.schemas import CatalogEntry, Report
from operators import (
    BMWFamily,
    HeckeFamily,
    TLFamily,
    bmw_from_hecke,
    build_TL_graph,
    build_TL_line,
    check_dBMW,
    check_dHecke,
    check_diagram_algebra,
    check_dTL,
    check_global,
    check_global_hecke,
    dump_family,
    hecke_from_TL,
    load_family,
    murphy_check,
    tl_from_hecke,
)
from special.theta import EllipticParams
from utils.errors import InputError, PreconditionError, ToolkitError
from utils.logger import VerifyLogger
from utils.parsing import parse_complex, parse_edge_file, parse_edge_list, parse_window
from utils.report_writer import emit, render, write_json, write_spectrum_csv, write_text

logger = logging.getLogger(__name__)

VERIFY_CHECKS = ("tl", "hecke", "bmw", "global", "global-hecke", "murphy", "diagram", "functional",
                 "ybe", "ybe-hecke", "ybe-bmw", "abf", "degeneration", "obstruction")
LINE = "line"


# ============================================================================
# ARGUMENTS
# ============================================================================

def _common(output_csv: bool = True) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--graph", help="catalog diagram (A5, D6, E6, A3_aff, ...), an edge list (1-2,2-3), an edge file or 'line'")
    p.add_argument("--L", type=int, help="rank for A/D diagrams, level for line families")
    p.add_argument("--param", choices=PARAM_NAMES + ("ell",), help="spectral / line parameterization")
    p.add_argument("--tau", type=parse_complex, default=None, help="elliptic modulus, e.g. 0.8i")
    p.add_argument("--shift-b", type=float, default=None, help="generic shift b of the line objects n + b")
    p.add_argument("--window", type=parse_window, default=None, help="line window lo:hi")
    p.add_argument("--family-file", help="JSON family file instead of a built-in family")
    p.add_argument("--nubar", type=parse_complex, default=1.0, help="constant nu for the Hecke-degenerate BMW family")
    p.add_argument("--tol", type=float, default=None, help="override the profile threshold")
    p.add_argument("--tol-profile", choices=sorted(TOLERANCE_PROFILES), default=None)
    p.add_argument("--json", action="store_true", help="emit JSON")
    if output_csv:
        p.add_argument("--csv", action="store_true", help="emit per-item CSV")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynbax", description="Dynamical Baxterization toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    graphs = sub.add_parser("graphs", help="catalog of ADE and affine ADE diagrams")
    graphs.add_argument("action", choices=["list"])
    graphs.add_argument("--json", action="store_true")

    build = sub.add_parser("build", parents=[_common(output_csv=False)], help="write a family file")
    build.add_argument("kind", choices=["tl", "hecke", "bmw", "line"])

    verify = sub.add_parser("verify", parents=[_common()], help="run one verification")
    verify.add_argument("check", choices=VERIFY_CHECKS)
    verify.add_argument("--sites", type=int, default=None, help="order N for global/murphy/diagram checks")
    verify.add_argument("--z", type=parse_complex, default=None)
    verify.add_argument("--w", type=parse_complex, default=None)
    verify.add_argument("--u1", type=float, default=None)
    verify.add_argument("--u2", type=float, default=None)
    verify.add_argument("--u3", type=float, default=None)
    verify.add_argument("--samples", type=int, default=None, help="number of deterministic samples")

    transfer = sub.add_parser("transfer", parents=[_common()], help="row-to-row transfer matrices")
    transfer.add_argument("--sites", type=int, required=True)
    transfer.add_argument("--z", type=parse_complex, default=None)
    transfer.add_argument("--w", type=parse_complex, default=None)
    transfer.add_argument("--rows", type=int, default=None, help="also compute trace(M(z)^rows)")
    transfer.add_argument("--check-commute", action="store_true")

    chain = sub.add_parser("chain", parents=[_common(output_csv=False)], help="periodic spin-chain Hamiltonian")
    chain.add_argument("--sites", type=int, required=True)
    chain.add_argument("--diagonalize", action="store_true")
    chain.add_argument("--check-commute", action="store_true", help="check [H, M(w)] and [H, translation]")
    chain.add_argument("--csv", default=None, metavar="PATH", help="spectrum CSV (index,eigenvalue)")

    suite = sub.add_parser("suite", help="run the acceptance battery")
    suite.add_argument("--tol-profile", choices=sorted(TOLERANCE_PROFILES), default=None)
    suite.add_argument("--json", action="store_true")
    suite.add_argument("--out", default=None)
    return parser


def _format(args) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "csv", False) is True:
        return "csv"
    return "text"


# ============================================================================
# FAMILY RESOLUTION
# ============================================================================

def _elliptic(args) -> EllipticParams:
    if args.tau is None:
        raise InputError("elliptic weights need --tau (e.g. --tau 0.8i)")
    if args.L is None:
        raise InputError("elliptic weights need --L")
    b = args.shift_b if args.shift_b is not None else get_settings().shift_b
    return EllipticParams(tau=args.tau, L=args.L, shift_b=b)


def _tl_family(args) -> TLFamily:
    if args.family_file:
        family = load_family(args.family_file)
        if isinstance(family, TLFamily):
            return family
        if isinstance(family, HeckeFamily):
            return tl_from_hecke(family)
        raise InputError(f"family file {args.family_file} holds a BMW family; a TL family is needed here")
    if args.graph is None:
        raise InputError("--graph (or --family-file) is required")
    if args.graph == LINE:
        kind = args.param or "tri"
        if kind == "rational":
            raise InputError("line families are tri, hyp or ell")
        if kind == "ell":
            return build_TL_line("ell", args.L, params=_elliptic(args), window=args.window)
        if args.L is None:
            raise InputError("line families need --L")
        return build_TL_line(kind, args.L, window=args.window, shift_b=args.shift_b)
    if os.path.isfile(args.graph):
        graph = Graph.from_edges(parse_edge_file(args.graph), name=os.path.splitext(os.path.basename(args.graph))[0])
    elif "-" in args.graph or args.graph.lstrip().startswith("["):
        graph = Graph.from_edges(parse_edge_list(args.graph))
    else:
        family, L = parse_graph_token(args.graph, args.L)
        graph = build_diagram(family, L)
    return build_TL_graph(graph, pf_eigen(graph))


def _hecke_family(args) -> HeckeFamily:
    if args.family_file:
        family = load_family(args.family_file)
        if isinstance(family, HeckeFamily):
            return family
        if isinstance(family, BMWFamily):
            raise InputError(f"family file {args.family_file} holds a BMW family; a Hecke family is needed here")
    return hecke_from_TL(_tl_family(args))


def _bmw_family(args) -> BMWFamily:
    if args.family_file:
        family = load_family(args.family_file)
        if isinstance(family, BMWFamily):
            return family
    return bmw_from_hecke(_hecke_family(args), nubar=args.nubar)


def _spectral_for(family: TLFamily, name: Optional[str]) -> SpectralParam:
    """Pick lambda from kappa: 2cos(lambda) for tri, 2cosh(lambda) for hyp, 2 for rational."""
    kappas = [complex(k) for k in family.kappa.values()]
    kappa = kappas[0]
    if name is None:
        name = "rational" if abs(kappa - 2) < 1e-12 else ("tri" if kappa.real < 2 else "hyp")
    if name == "rational":
        return SpectralParam.rational()
    if name == "tri":
        if family.L is not None and family.kind == "tri":
            return SpectralParam.tri(np.pi / (family.L + 1))
        if not abs(kappa.real) < 2:
            raise PreconditionError(f"trigonometric weights need |kappa| < 2 (kappa = 2cos(lambda)); "
                                    f"{family.graph.name} has kappa = {kappa.real:.12g}, use --param hyp")
        return spectral_param("tri", float(np.arccos(kappa.real / 2)))
    if name == "hyp":
        if not kappa.real > 2:
            raise PreconditionError(f"hyperbolic weights need kappa > 2 (kappa = 2cosh(lambda)); "
                                    f"{family.graph.name} has kappa = {kappa.real:.12g}, use --param tri")
        return spectral_param("hyp", float(np.arccosh(kappa.real / 2)))
    raise InputError(f"parameterization '{name}' cannot Baxterize a TL family (use abf for elliptic weights)")


def _tl_R(args, family: TLFamily) -> RFamily:
    return baxterize_TL(family, _spectral_for(family, args.param))


def _samples(args, scale: float) -> Optional[List[Tuple[float, float]]]:
    if args.z is not None or args.w is not None:
        if args.z is None or args.w is None:
            raise InputError("--z and --w go together")
        return [(args.z, args.w)]
    if args.samples is not None:
        return sample_pairs(args.samples, scale)
    return None


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_graphs(args) -> int:
    entries = []
    for family, L in CLASSICAL_LISTING + AFFINE_LISTING:
        graph = build_diagram(family, L)
        pf = pf_eigen(graph)
        affine = family.endswith("_aff")
        h = None if affine else coxeter_number(family, L)
        entries.append(CatalogEntry(name=diagram_name(family, L), family=family, L=L, vertices=len(graph.vertices),
                                    coxeter=h, eigenvalue=pf.eigenvalue,
                                    expected=2.0 if affine else float(2 * np.cos(np.pi / h))))
        VerifyLogger.catalog_entry(entries[-1].name, h, pf.eigenvalue)
    if args.json:
        sys.stdout.write(json.dumps([e.model_dump(mode="json") for e in entries], indent=2) + "\n")
    else:
        sys.stdout.write(f"{'name':<10}{'vertices':>9}{'h':>5}  {'phi(Y)':<22}\n")
        for e in entries:
            h = "-" if e.coxeter is None else str(e.coxeter)
            sys.stdout.write(f"{e.name:<10}{e.vertices:>9}{h:>5}  {format(e.eigenvalue, '.17g'):<22}\n")
    return 0


def cmd_build(args) -> int:
    if args.kind == "line":
        if args.graph is None:
            args.graph = LINE
        family = _tl_family(args)
    elif args.kind == "tl":
        family = _tl_family(args)
    elif args.kind == "hecke":
        family = _hecke_family(args)
    else:
        family = _bmw_family(args)
    write_json(dump_family(family), args.out)
    return 0


def _verify_report(args) -> Report:
    tol = args.tol
    check = args.check
    if check == "tl":
        family = _tl_family(args)
        if tol is None and family.kind == "ell":
            tol = get_tolerances()["tl_elliptic"]
        return check_dTL(family, tol=tol)
    if check == "hecke":
        return check_dHecke(_hecke_family(args), tol=tol)
    if check == "bmw":
        return check_dBMW(_bmw_family(args), tol=tol)
    if check == "global":
        return check_global(_tl_family(args), args.sites or 4, tol=tol)
    if check == "global-hecke":
        return check_global_hecke(_hecke_family(args), args.sites or 4, tol=tol)
    if check == "murphy":
        return murphy_check(_hecke_family(args), args.sites or 3, tol=tol)
    if check == "diagram":
        return check_diagram_algebra(_tl_family(args), args.sites or 4, tol=tol)
    if check == "functional":
        family = _tl_family(args)
        f = _spectral_for(family, args.param)
        return check_functional_relation(f, family.kappa, samples=_samples(args, f.scale), tol=tol,
                                         graph=family.graph)
    if check == "ybe":
        R = _tl_R(args, _tl_family(args))
        return check_dYBE(R, samples=_samples(args, R.z_scale), tol=tol)
    if check == "ybe-hecke":
        hecke = _hecke_family(args)
        sigma, f = sigma_from_hecke(hecke)
        R = baxterize_Hecke(hecke.graph, sigma, f)
        return check_dYBE(R, samples=_samples(args, R.z_scale), tol=tol)
    if check == "ybe-bmw":
        triples = None
        if args.u1 is not None:
            if args.u2 is None or args.u3 is None:
                raise InputError("--u1, --u2 and --u3 go together")
            triples = [(args.u1, args.u2, args.u3)]
        return check_dYBE_2param(_bmw_family(args), triples=triples, tol=tol)
    if check == "abf":
        R = abf_family(_elliptic(args), args.window)
        samples = _samples(args, 1.0) or sample_pairs(5)
        return check_dYBE(R, samples=samples, tol=tol)
    if check == "degeneration":
        if args.L is None:
            raise InputError("degeneration needs --L")
        tau = args.tau if args.tau is not None else 10j
        return check_degeneration(args.L, shift_b=args.shift_b, window=args.window,
                                  samples=args.samples or 5, tol=tol, tau=tau)
    return check_obstruction(_elliptic(args), args.window, threshold=tol)


def cmd_verify(args) -> int:
    report = _verify_report(args)
    emit(report, _format(args), args.out)
    return 0 if report.passed else 1


def cmd_transfer(args) -> int:
    family = _tl_family(args)
    R = _tl_R(args, family)
    basis = ClosedPathBasis.build(family.graph, args.sites)
    if args.rows is not None:
        z = args.z if args.z is not None else 0.0
        value = partition_function(R, z, args.sites, args.rows, basis=basis)
        logger.info(f"Z(z={z}, N={args.sites}, rows={args.rows}) = {value!r}")
    if args.check_commute:
        grid = None
        if args.z is not None and args.w is not None:
            grid = [(args.z, args.w)]
        report = check_commuting(R, basis, grid=grid, tol=args.tol)
        emit(report, _format(args), args.out)
        return 0 if report.passed else 1

    z = args.z if args.z is not None else 0.0
    M = transfer_matrix(R, z, basis).matrix
    lines = ["row,col,re,im"]
    for i, j in zip(*np.nonzero(M)):
        lines.append(f"{i},{j},{format(M[i, j].real, '.17g')},{format(M[i, j].imag, '.17g')}")
    text = "\n".join(lines) + "\n"
    write_text(text, args.out)
    return 0


def cmd_chain(args) -> int:
    family = _tl_family(args)
    basis = ClosedPathBasis.build(family.graph, args.sites)
    H = hamiltonian(family, basis)
    reports: List[Report] = []
    if args.check_commute:
        reports.append(check_hamiltonian(family, _tl_R(args, family), basis, tol=args.tol))
    if args.diagonalize or args.csv:
        report, spectrum = check_spectrum(H, tol=args.tol)
        reports.append(report)
        if args.csv:
            write_spectrum_csv(spectrum.eigenvalues, args.csv)
    if not reports:
        raise InputError("chain needs --diagonalize, --csv or --check-commute")
    fmt = _format(args)
    text = "".join(render(r, fmt) for r in reports)
    write_text(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_suite(args) -> int:
    from suite.workflow import run_suite

    summary = run_suite(args.tol_profile)
    emit(summary, "json" if args.json else "text", args.out)
    return 0 if summary.passed else 1


COMMANDS = {
    "graphs": cmd_graphs,
    "build": cmd_build,
    "verify": cmd_verify,
    "transfer": cmd_transfer,
    "chain": cmd_chain,
    "suite": cmd_suite,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one command, map the outcome to an exit code."""
    settings = get_settings()
    VerifyLogger.configure(level=settings.log_level)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2
    except ToolkitError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    try:
        if getattr(args, "tol_profile", None):
            set_tol_profile(args.tol_profile)
        settings.validate_setup()
        return COMMANDS[args.command](args)
    except ToolkitError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
