"""Command-line front end.

Exit codes: 0 success; 1 a check (``postulates``/``reproduce``) failed;
2 usage error; 3 file or parse error; 4 numerical-domain error;
``classify`` additionally exits 10 for an ordering-different pair and 11
for a tie at tolerance.
"""
import argparse
import ast
import math
import operator
import sys

import numpy as np

from . import measures, ordering, postulates, reproduce, statefile
from .errors import CoherenceError, DomainError, StateFileError, UnsupportedInput
from .measures import Measure
from .ordering import Verdict
from .states import BlochQubit

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_FILE = 3
EXIT_DOMAIN = 4
EXIT_VERDICT = {
    Verdict.SAME_ORDER: 0,
    Verdict.ORDERING_DIFFERENT: 10,
    Verdict.TIE_AT_TOLERANCE: 11,
}


class UsageError(Exception):
    pass


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub,
           ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_node(node):
    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        return float(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords):
        return math.sqrt(_eval_node(node.args[0]))
    raise ValueError("unsupported expression")


def _real(text):
    """A real number; simple expressions such as ``4/5`` or ``2/sqrt(6)`` are allowed."""
    try:
        value = _eval_node(ast.parse(text.strip(), mode="eval").body)
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _bloch(text):
    try:
        t, z = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--bloch expects 't,z', got {text!r}") from None
    return t, z


def _measures(text):
    names = [n for n in text.split(",") if n]
    if len(names) != 2:
        raise argparse.ArgumentTypeError("--measures expects two names, e.g. l1,relent")
    try:
        return tuple(Measure.parse(n) for n in names)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _populations(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _dims(text):
    try:
        dims = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(d < 2 for d in dims):
        raise argparse.ArgumentTypeError("dimensions must be >= 2")
    return dims


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="cohorder", description="Coherence measures and ordering-different pairs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("measure", help="print C_l1, C_r and (when defined) C_f of a state")
    m.add_argument("statefile", nargs="?")
    m.add_argument("--bloch", type=_bloch, metavar="T,Z", help="qubit (t, z) instead of a file")

    c = sub.add_parser("classify", help="compare two states under two measures")
    c.add_argument("files", nargs="*", metavar="statefile")
    c.add_argument("--bloch", type=_bloch, action="append", default=[], metavar="T,Z",
                   help="qubit (t, z) standing in for a file; may be repeated")
    c.add_argument("--measures", type=_measures, default=(Measure.L1, Measure.REL_ENT))
    c.add_argument("--tol", type=float, default=ordering.DEFAULT_TOL)

    f = sub.add_parser("feasible", help="qubit feasibility of an ordering-different pair")
    f.add_argument("--t1", type=_real, required=True)
    f.add_argument("--t2", type=_real, required=True)

    s = sub.add_parser("scan", help="write the Delta C_r grid over (z1, z2) as CSV")
    s.add_argument("--t1", type=_real, required=True)
    s.add_argument("--t2", type=_real, required=True)
    s.add_argument("--n1", type=int, default=201)
    s.add_argument("--n2", type=int, default=201)
    s.add_argument("--out", required=True)

    w = sub.add_parser("witness", help="extremal (z1, z2) for t1 < t2, or NONE")
    w.add_argument("--t1", type=_real, required=True)
    w.add_argument("--t2", type=_real, required=True)

    lf = sub.add_parser("lift", help="lifted pure pair in dimension d")
    lf.add_argument("--d", type=int, required=True)
    lf.add_argument("--alpha", type=_real, required=True)
    lf.add_argument("--betas", type=_populations, default=None,
                    help="comma-separated real tail amplitudes (default: equal split)")

    e = sub.add_parser("embed", help="embedded mixed pair in dimension d")
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--delta1", type=_populations, default=None, metavar="P,P,...")
    e.add_argument("--delta2", type=_populations, default=None, metavar="P,P,...")

    pc = sub.add_parser("postulates", help="run the C1-C4 property campaign")
    pc.add_argument("--dim", type=_dims, default=(2, 3, 4), help="dimension or comma list")
    pc.add_argument("--trials", type=int, default=100)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--quiet", action="store_true", help="print only the summary line")

    sub.add_parser("reproduce", help="check every reference value")
    return p


def _fmt_vector(v):
    return "[" + ", ".join(
        f"{x.real:.6f}" if abs(x.imag) < 5e-7 else f"{x.real:.6f}{x.imag:+.6f}j" for x in v
    ) + "]"


def _measure_lines(state, out, indent=""):
    out.write(f"{indent}C_l1 = {measures.c_l1(state):.6f}\n")
    out.write(f"{indent}C_r  = {measures.c_r(state):.6f}\n")
    try:
        out.write(f"{indent}C_f  = {measures.c_f(state):.6f}\n")
    except UnsupportedInput:
        out.write(f"{indent}C_f  = undefined (mixed state, d >= 3)\n")


def _cmd_measure(args, out):
    if (args.statefile is None) == (args.bloch is None):
        raise UsageError("measure: give exactly one of a state file or --bloch")
    state = statefile.read_state(args.statefile) if args.statefile else BlochQubit(*args.bloch)
    out.write(f"dim  = {2 if isinstance(state, BlochQubit) else state.dim}\n")
    _measure_lines(state, out)
    return EXIT_OK


def _cmd_classify(args, out):
    if len(args.files) + len(args.bloch) != 2:
        raise UsageError("classify: give two states (files and/or --bloch)")
    # every file is parsed before any computation
    loaded = [statefile.read_state(path) for path in args.files]
    loaded += [BlochQubit(*tz) for tz in args.bloch]
    a, b = args.measures
    v = ordering.classify_pair(loaded[0], loaded[1], a, b, tol=args.tol)
    out.write(v.describe() + "\n")
    return EXIT_VERDICT[v.verdict]


def _cmd_feasible(args, out):
    r = ordering.qubit_pair_feasible(args.t1, args.t2)
    out.write(f"t1: {r.t1:.6f}\nt2: {r.t2:.6f}\nlhs: {r.lhs:.6f}\nrhs: {r.rhs:.6f}\n")
    out.write(f"feasible: {str(r.feasible).lower()}\nboundary: {str(r.boundary).lower()}\n")
    return EXIT_OK


def _cmd_scan(args, out):
    grid = ordering.scan_delta_cr(args.t1, args.t2, args.n1, args.n2)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(grid.to_csv())
    except OSError as exc:
        raise StateFileError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    n_pos = int(grid.positive_region().sum())
    out.write(f"wrote {grid.delta_cr.shape[0]}x{grid.delta_cr.shape[1]} grid to {args.out}; "
              f"{n_pos} cells with dC_r > 0; max dC_r = {grid.delta_cr.max():.6f}\n")
    return EXIT_OK


def _cmd_witness(args, out):
    w = ordering.find_witness(args.t1, args.t2)
    out.write("NONE\n" if w is None else f"z1 = {w[0]:.6f}\nz2 = {w[1]:.6f}\n")
    return EXIT_OK


def _print_pair(pair, out):
    for i, s in enumerate(pair, 1):
        if hasattr(s, "amplitudes"):
            out.write(f"state {i}: amplitudes {_fmt_vector(s.amplitudes)}\n")
        else:
            out.write(f"state {i}: diagonal {_fmt_vector(np.diag(s.matrix))}\n")
            for row in s.matrix:
                out.write(f"  {_fmt_vector(row)}\n")
        _measure_lines(s, out, indent="  ")
    v = ordering.classify_pair(pair[0], pair[1], Measure.L1, Measure.REL_ENT)
    out.write(v.describe() + "\n")


def _cmd_lift(args, out):
    _print_pair(ordering.build_lifted_pair(args.d, args.alpha, args.betas), out)
    return EXIT_OK


def _cmd_embed(args, out):
    d1 = None if args.delta1 is None else np.diag(args.delta1)
    d2 = None if args.delta2 is None else np.diag(args.delta2)
    _print_pair(ordering.build_embedded_pair(args.d, d1, d2), out)
    return EXIT_OK


def _cmd_postulates(args, out):
    if args.trials < 1:
        raise UsageError("postulates: --trials must be >= 1")
    records = postulates.run_campaign(args.trials, seed=args.seed, dims=args.dim)
    if not args.quiet:
        out.write(postulates.format_report(records) + "\n")
    failed = sum(not r.passed for r in records)
    out.write(f"{len(records) - failed}/{len(records)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def _cmd_reproduce(args, out):
    ok, text = reproduce.run()
    out.write(text + "\n")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "measure": _cmd_measure,
    "classify": _cmd_classify,
    "feasible": _cmd_feasible,
    "scan": _cmd_scan,
    "witness": _cmd_witness,
    "lift": _cmd_lift,
    "embed": _cmd_embed,
    "postulates": _cmd_postulates,
    "reproduce": _cmd_reproduce,
}


def run(argv=None, out=None, err=None):
    """Run the CLI and return the exit code instead of exiting."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except StateFileError as exc:
        err.write(f"file error: {exc}\n")
        return EXIT_FILE
    except (DomainError, CoherenceError) as exc:
        err.write(f"domain error: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


def main():
    sys.exit(run())
