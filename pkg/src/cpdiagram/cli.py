"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a verification failed.
"""
import argparse
import csv
import io
import math
import os
import sys
import tempfile

import numpy as np

from . import diagram
from .dynamics import Process, SemigroupProcess, trajectory
from .entanglement import concurrence_wootters
from .linalg import TOL as LINALG_TOL, hermitian_eigen
from .states import InvalidStateError, partial_trace, purity, validate

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x):
    return repr(float(x))


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _process_from_args(args):
    kind = Process(args.process)
    try:
        if kind is Process.DECOHERENCE:
            return SemigroupProcess.decoherence(args.T, omega=args.omega)
        if kind is Process.DEPOLARIZATION:
            return SemigroupProcess.depolarization(args.T)
        return SemigroupProcess.homogenization(args.T1, args.T2, args.w, omega=args.omega)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def time_grid(process, t_min=None, t_max=None, n=200, spacing="log"):
    scale = process.time_scale
    t_min = 1e-3 * scale if t_min is None else t_min
    t_max = 10.0 * scale if t_max is None else t_max
    if n < 1:
        raise UsageError("--n must be positive")
    if not (0 <= t_min < t_max) and not (n == 1 and t_min == t_max):
        raise UsageError("need 0 <= t-min < t-max")
    if spacing == "log":
        if t_min <= 0:
            raise UsageError("log spacing needs t-min > 0")
        return np.geomspace(t_min, t_max, n)
    return np.linspace(t_min, t_max, n)


def cmd_trajectory(args):
    process = _process_from_args(args)
    grid = time_grid(process, args.t_min, args.t_max, args.n, args.spacing)
    traj = trajectory(process, grid)
    rows = [(fmt(t), fmt(p), fmt(c)) for t, p, c in zip(traj.t, traj.purity, traj.concurrence)]
    _write(_csv_text(["t", "purity", "concurrence"], rows), args.output)
    return EXIT_OK


def cmd_bounds(args):
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    P = np.linspace(0.25, 1.0, args.n)
    curve = diagram.MemsCurve(diagram.mems_boundary(args.mems_points))
    rows = [(fmt(p), fmt(curve(p)), fmt(diagram.c_werner(p)), fmt(diagram.c_decoherence(p)))
            for p in P]
    _write(_csv_text(["purity", "c_mems", "c_werner", "c_decoherence"], rows), args.output)
    return EXIT_OK


def _summary(report, kind):
    lines = [
        f"scan,{kind}",
        f"seed,{report.seed}",
        f"n_samples,{report.n_samples}",
        f"acceptance_rate,{fmt(report.acceptance_rate)}",
        f"min_margin_lower,{fmt(report.min_margin_lower)}",
        f"max_margin_upper,{fmt(report.max_margin_upper)}",
        f"max_margin_mems,{fmt(report.max_margin_mems)}",
        f"violations,{len(report.violations)}",
    ]
    for params, pt, margin in report.violations[:20]:
        lines.append("violation," + " ".join(fmt(x) for x in params)
                     + f",{fmt(pt.purity)},{fmt(pt.concurrence)},{fmt(margin)}")
    return "\n".join(lines) + "\n"


def cmd_scan(args, nonunital):
    if args.n < 1:
        raise UsageError("-n must be >= 1")
    tol = diagram.TOL if args.tol is None else args.tol
    scan = diagram.scan_nonunital if nonunital else diagram.scan_unital
    report = scan(args.n, args.seed, tol=tol, workers=args.workers)
    P, C = report.points.T
    regions = diagram.classify_many(P, C, tol=tol)
    rows = [(fmt(p), fmt(c), r) for p, c, r in zip(P, C, regions)]
    _write(_csv_text(["purity", "concurrence", "region"], rows), args.output)
    sys.stderr.write(_summary(report, "nonunital" if nonunital else "unital"))
    return EXIT_VERIFY if report.violations else EXIT_OK


def format_state_row(rho):
    """One CSV row: the 16 entries row-major, each as (real, imag)."""
    flat = np.asarray(rho, dtype=complex).reshape(16)
    return [fmt(v) for z in flat for v in (z.real, z.imag)]


def state_csv(rhos):
    header = [f"{part}{i}{j}" for i in range(4) for j in range(4) for part in ("re", "im")]
    return _csv_text(header, [format_state_row(r) for r in rhos])


def _parse_row(fields):
    fields = [f.strip() for f in fields if f.strip() != ""]
    if len(fields) == 32:
        vals = np.array([float(f) for f in fields])
        return (vals[0::2] + 1j * vals[1::2]).reshape(4, 4)
    if len(fields) == 16:
        return np.array([complex(f.replace(" ", "")) for f in fields]).reshape(4, 4)
    raise UsageError(f"expected 32 (re, im) or 16 complex fields per row, got {len(fields)}")


def read_states(text):
    states = []
    for k, row in enumerate(csv.reader(io.StringIO(text))):
        if not row or row[0].lstrip().startswith("#"):
            continue
        try:
            states.append(_parse_row(row))
        except ValueError:
            if k == 0:
                continue  # header
            raise UsageError(f"row {k + 1}: non-numeric field")
    if not states:
        raise UsageError("no matrix rows found in input")
    return states


def analyze_state(rho, tol=LINALG_TOL, mems_curve=None):
    validate(rho, tol)
    res = concurrence_wootters(rho, tol, check=False)
    evals, _ = hermitian_eigen(rho, tol)
    P = float(purity(rho))
    pt = diagram.CPPoint(P, res.concurrence)
    return {
        "purity": P,
        "concurrence": res.concurrence,
        "mu": res.mu,
        "eigenvalues": evals,
        "reduced_A": partial_trace(rho, "B"),
        "reduced_B": partial_trace(rho, "A"),
        "reduced_distance": float(diagram.reduced_distance(rho)),
        "region": diagram.classify(pt, mems_curve).value,
    }


def _fmt_matrix(m):
    return "[" + "; ".join(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row) for row in m) + "]"


def cmd_analyze(args):
    if args.input is None or args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc)) from exc
    tol = LINALG_TOL if args.tol is None else args.tol
    out = []
    for k, rho in enumerate(read_states(text)):
        try:
            info = analyze_state(rho, tol)
        except InvalidStateError as exc:
            sys.stderr.write(f"state {k}: not a density matrix, {exc.predicate} check failed ({exc})\n")
            return EXIT_USAGE
        out += [
            f"state,{k}",
            f"purity,{fmt(info['purity'])}",
            f"concurrence,{fmt(info['concurrence'])}",
            "mu," + " ".join(fmt(x) for x in info["mu"]),
            "eigenvalues," + " ".join(fmt(x) for x in info["eigenvalues"]),
            f"reduced_A,{_fmt_matrix(info['reduced_A'])}",
            f"reduced_B,{_fmt_matrix(info['reduced_B'])}",
            f"reduced_distance,{fmt(info['reduced_distance'])}",
            f"region,{info['region']}",
        ]
    _write("\n".join(out) + "\n", args.output)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="cpdiagram", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--tol", type=float, default=None, help="override verification tolerance")
    parser.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--output", "-o", default=argparse.SUPPRESS)

    tr = sub.add_parser("trajectory", parents=[common], help="C-P trajectory of a semigroup")
    tr.add_argument("--process", required=True, choices=[p.value for p in Process])
    tr.add_argument("--T", type=float, default=1.0)
    tr.add_argument("--T1", type=float, default=1.0)
    tr.add_argument("--T2", type=float, default=1.0)
    tr.add_argument("--omega", type=float, default=0.0)
    tr.add_argument("--w", type=float, default=0.0)
    tr.add_argument("--t-min", type=float, default=None)
    tr.add_argument("--t-max", type=float, default=None)
    tr.add_argument("--n", type=int, default=200)
    tr.add_argument("--spacing", choices=["log", "linear"], default="log")

    bd = sub.add_parser("bounds", parents=[common], help="boundary curves over purity")
    bd.add_argument("--n", type=int, default=301)
    bd.add_argument("--mems-points", type=int, default=diagram.DEFAULT_MEMS_POINTS)

    for name in ("scan-unital", "scan-nonunital"):
        sc = sub.add_parser(name, parents=[common], help=f"Monte-Carlo {name[5:]} scan")
        sc.add_argument("-n", "--n", type=int, default=100_000)
        sc.add_argument("--seed", type=int, required=True)
        sc.add_argument("--workers", type=int, default=1)

    an = sub.add_parser("analyze", parents=[common], help="analyze density matrices from CSV")
    an.add_argument("input", nargs="?", default=None, help="CSV path (default stdin)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.tol is not None and not (args.tol > 0 and math.isfinite(args.tol)):
        sys.stderr.write("cpdiagram: error: --tol must be positive\n")
        return EXIT_USAGE
    try:
        if args.command == "trajectory":
            return cmd_trajectory(args)
        if args.command == "bounds":
            return cmd_bounds(args)
        if args.command == "scan-unital":
            return cmd_scan(args, nonunital=False)
        if args.command == "scan-nonunital":
            return cmd_scan(args, nonunital=True)
        return cmd_analyze(args)
    except UsageError as exc:
        sys.stderr.write(f"cpdiagram: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
