"""Command-line front end: ``tcarrange {tc,algebra,plan,verify,instability}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource guard hit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .arrangement import ArrangementError, named_arrangement, parse_arrangement
from .os_algebra import AlgebraError, OrlikSolomon, Parity, ResourceError
from .planner import (DEFAULT_FRAMES, PlannerError, SampledPath, as_configuration,
                      instability_estimate, min_distance, plan2, plan3, plan_baseline,
                      render_svg, table2, table3, verify_path)
from .tc_report import ReportError, report
from .tensor_square import DEFAULT_BUDGET, bar_product_direct

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(ValueError):
    pass


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def thread_cap() -> int | None:
    """Parallelism cap from ``TCARRANGE_THREADS``; all kernels currently run serially."""
    raw = os.environ.get("TCARRANGE_THREADS")
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"TCARRANGE_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise InputError("TCARRANGE_THREADS must be a positive integer")
    return value


def load_json_arg(value: str):
    """Inline JSON, or the path of a JSON file."""
    try:
        if os.path.exists(value):
            return json.loads(Path(value).read_text(encoding="utf-8"))
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse JSON {value!r}: {exc}") from None


def load_arrangement(args):
    if getattr(args, "arrangement", None):
        try:
            text = Path(args.arrangement).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(str(exc)) from None
        return parse_arrangement(text, name=Path(args.arrangement).stem)
    if getattr(args, "named", None):
        return named_arrangement(args.named)
    raise InputError("give --arrangement <file> or --named <name>")


# --- tc -------------------------------------------------------------------

def cmd_tc(args) -> int:
    if args.config:
        kind, _, rest = args.config.partition(":")
        if kind not in ("plane", "space"):
            raise InputError(f"--config expects plane:n or space:n:m, got {args.config!r}")
        rep = report(f"config-{kind}:{rest}", budget=args.budget)
    else:
        rep = report("arrangement-odd", load_arrangement(args), budget=args.budget)
    sys.stdout.write(rep.render())
    if args.json:
        write_atomic(args.json, rep.dumps())
    return EXIT_OK


# --- algebra --------------------------------------------------------------

def _labels(text: str | None, flag: str) -> list[str]:
    if not text:
        raise InputError(f"{flag} is required")
    return [s.strip() for s in text.split(",") if s.strip()]


def cmd_algebra(args) -> int:
    arr = load_arrangement(args)
    parity = Parity(args.parity)
    if parity is Parity.EVEN and not (arr.name or "").startswith("braid:"):
        print("note: even-parity relations come from signed circuit dependencies; "
              "they are established here for braid arrangements", file=sys.stderr)
    alg = OrlikSolomon(arr, parity)
    if args.action == "dims":
        print(" ".join(str(d) for d in alg.dimensions()))
    elif args.action == "reduce":
        idx = arr.indices(_labels(args.monomial, "--monomial"))
        print(alg.straighten(idx).format())
    else:
        idx = arr.indices(_labels(args.subset, "--subset"))
        print(bar_product_direct(alg, idx).format())
    return EXIT_OK


# --- planning -------------------------------------------------------------

def _configuration(value: str, n: int | None = None):
    return as_configuration(load_json_arg(value), n)


def cmd_plan(args) -> int:
    which = args.n
    if which == "2":
        path = plan2(_configuration(args.from_, 2), _configuration(args.to, 2), args.frames)
    elif which == "3":
        path = plan3(_configuration(args.from_, 3), _configuration(args.to, 3), args.frames)
    elif which.startswith("baseline:"):
        try:
            n = int(which.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad planner {which!r}") from None
        path = plan_baseline(n, _configuration(args.from_, n), _configuration(args.to, n), args.frames)
    else:
        raise InputError(f"--n expects 2, 3 or baseline:<n>, got {which!r}")
    text = path.dumps()
    if args.out:
        write_atomic(args.out, text)
        print(f"domain {path.domain} ({path.domain_name}), {len(path.times)} frames -> {args.out}")
    else:
        sys.stdout.write(text)
    if args.svg:
        write_atomic(args.svg, render_svg(path))
    return EXIT_OK


def cmd_verify(args) -> int:
    data = load_json_arg(args.path)
    path = SampledPath.from_json(data)
    start = _configuration(args.from_, path.n) if args.from_ else None
    goal = _configuration(args.to, path.n) if args.to else None
    margin = args.margin
    if margin is None:
        ends = [e for e in (start, goal, path.start, path.goal) if e is not None]
        margin = 1e-6 * min(min_distance(e) for e in ends) if ends else 0.0
    rep = verify_path(path, margin, start=start, goal=goal, step_bound=args.step_bound)
    sys.stdout.write(rep.render())
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _probe_pairs(doc, n: int):
    if isinstance(doc, dict):
        doc = [doc]
    elif isinstance(doc, list) and len(doc) == 2 and not isinstance(doc[0], dict) \
            and _is_configuration(doc[0]):
        doc = [doc]
    pairs = []
    for item in doc:
        if isinstance(item, dict):
            a, b = item.get("start"), item.get("goal")
        else:
            a, b = item
        pairs.append((as_configuration(a, n), as_configuration(b, n)))
    return pairs


def _is_configuration(obj) -> bool:
    return isinstance(obj, list) and bool(obj) and all(
        isinstance(p, (int, float)) or (isinstance(p, list) and len(p) == 2
                                        and all(isinstance(c, (int, float)) for c in p))
        for p in obj)


def cmd_instability(args) -> int:
    if args.n not in ("2", "3"):
        raise InputError("instability is defined for the n = 2 and n = 3 planners")
    table = table2() if args.n == "2" else table3()
    try:
        pairs = _probe_pairs(load_json_arg(args.probe), int(args.n))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, PlannerError):
            raise
        raise InputError(f"bad probe document: {exc}") from None
    if args.eps <= 0:
        raise InputError("--eps must be positive")
    print(instability_estimate(table, pairs, args.eps, args.trials, seed=args.seed))
    return EXIT_OK


# --- parser ---------------------------------------------------------------

def _add_source(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--arrangement", metavar="FILE", help="arrangement JSON file")
    src.add_argument("--named", metavar="NAME", help="built-in arrangement: braid:n or generic:r:n:seed")
    return src


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcarrange",
        description="Topological complexity of arrangement complements and planar motion planners.",
        epilog="Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource guard. "
               "TCARRANGE_THREADS caps parallelism (results never depend on it).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tc", help="bounds and certificates for TC")
    src = _add_source(p)
    src.add_argument("--config", metavar="SPEC", help="configuration space: plane:n or space:n:m")
    p.add_argument("--json", metavar="OUT", help="also write the report as JSON")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search budget for cup-length")
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("algebra", help="Orlik-Solomon algebra queries")
    p.add_argument("action", choices=["reduce", "pi", "dims"],
                   help="reduce: nbc expansion of a monomial; pi: product of zero-divisors; "
                        "dims: graded dimensions")
    _add_source(p)
    p.add_argument("--parity", choices=["odd", "even"], default="odd", help="generator parity")
    p.add_argument("--monomial", metavar="L1,L2", help="ordered labels for reduce")
    p.add_argument("--subset", metavar="L1,L2,...", help="ordered labels for pi (repeats allowed)")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("plan", help="plan a collision-free motion")
    p.add_argument("--n", required=True, metavar="2|3|baseline:N", help="planner to use")
    p.add_argument("--from", dest="from_", required=True, metavar="JSON", help="start points, inline or file")
    p.add_argument("--to", required=True, metavar="JSON", help="goal points, inline or file")
    p.add_argument("--frames", type=int, default=DEFAULT_FRAMES, help="initial number of frames")
    p.add_argument("--svg", metavar="OUT", help="write an SVG drawing")
    p.add_argument("--out", metavar="OUT", help="write the path JSON here instead of stdout")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify", help="verify a sampled path")
    p.add_argument("--path", required=True, metavar="JSON", help="path JSON file")
    p.add_argument("--margin", type=float, default=None,
                   help="required clearance (default 1e-6 x smallest endpoint distance)")
    p.add_argument("--from", dest="from_", metavar="JSON", help="expected start points")
    p.add_argument("--to", metavar="JSON", help="expected goal points")
    p.add_argument("--step-bound", type=float, default=None, help="largest allowed per-frame displacement")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("instability", help="estimate the order of instability near probe pairs")
    p.add_argument("--n", required=True, choices=["2", "3"], help="planner table")
    p.add_argument("--probe", required=True, metavar="JSON",
                   help='probe pairs: {"start": ..., "goal": ...}, [start, goal] or a list of those')
    p.add_argument("--eps", type=float, default=1e-3, help="perturbation size")
    p.add_argument("--trials", type=int, default=10000, help="perturbations per probe")
    p.add_argument("--seed", type=int, default=0, help="sampler seed")
    p.set_defaults(func=cmd_instability)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        thread_cap()
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, ArrangementError, AlgebraError, PlannerError, ReportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
