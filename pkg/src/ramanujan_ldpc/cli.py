"""Command line: ``ramanujan-ldpc <command> [options]``.

Commands: construct, de, simulate, secrecy, girth, leakage-exact. JSON
reports carry a ``config`` object with every resolved option (including the
seed), so a run can be repeated byte for byte. ``--config FILE`` reads
``key=value`` defaults for the chosen command; flags on the command line win.

Exit codes: 0 ok, 2 usage, 3 unsupported profile, 4 numeric precondition,
5 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import density_evolution as de
from . import erasure_sim as es
from . import secrecy as sec
from .builders import build_cd_regular, build_irregular
from .ddp import DegreeDistributionPair
from .errors import LdpcError
from .graph import girth, read_alist, write_alist
from .transforms import DETERMINISTIC, RANDOM

EXIT_USAGE = 2
EXIT_IO = 5


class UsageError(Exception):
    pass


def _iters(text: str) -> Optional[int]:
    if text.lower() in ("inf", "none", "unbounded"):
        return None
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("iteration cap must be nonnegative")
    return value


def _ddp(text: str) -> DegreeDistributionPair:
    try:
        return DegreeDistributionPair.parse(text)
    except LdpcError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _jsonable(value):
    if isinstance(value, DegreeDistributionPair):
        return value.to_text()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _config(args) -> dict:
    skip = {"func", "config", "error_json"}
    return {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(obj, out: Optional[str] = None) -> None:
    text = json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_build_options(p, required: bool):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--regular", nargs=2, type=int, metavar=("C", "D"), help="(c, d)-regular profile")
    src.add_argument("--ddp", type=_ddp, help='edge-perspective pair, e.g. "l:3=0.5,5=0.5;r:15=1"')
    p.add_argument("--min-n", type=int, help="smallest acceptable block length")
    p.add_argument("--mode", choices=(DETERMINISTIC, RANDOM), default=DETERMINISTIC)


def _build(args, q):
    if args.regular:
        return build_cd_regular(*args.regular, q=q, min_n=args.min_n, mode=args.mode, seed=args.seed,
                                measure_girth=getattr(args, "measure_girth", False))
    seed = 0 if args.seed is None else args.seed
    return build_irregular(args.ddp, q=q, min_n=args.min_n, seed=seed, mode=args.mode,
                           measure_girth=getattr(args, "measure_girth", False))


# --- commands --------------------------------------------------------------


def cmd_construct(args) -> int:
    tg, meta = _build(args, args.q)
    report = {"config": _config(args), "metadata": meta.to_json()}
    if args.out:
        write_alist(tg, f"{args.out}.alist")
        _emit(report, f"{args.out}.json")
    else:
        _emit(report)
    return 0


def cmd_de(args) -> int:
    ddp = args.ddp
    out = {"config": _config(args)}
    if args.trace:
        if args.epsilon is None:
            raise UsageError("--trace needs --epsilon")
        out["trace"] = de.de_trace(ddp, args.epsilon, args.t_max, args.tol).to_json()
    if args.threshold:
        out["threshold"] = de.threshold(ddp, args.bisection_tol)
    if args.decay:
        if args.epsilon is None:
            raise UsageError("--decay needs --epsilon")
        dc = de.decay_constants(ddp, args.epsilon)
        span = range(dc.R, dc.R + args.span + 1)
        out["decay"] = dc.to_json()
        out["decay_bound_verified"] = de.verify_decay_bound(ddp, args.epsilon, span)
        out["decay_t_range"] = [span.start, span.stop - 1]
    if args.certificate:
        if args.xi is None:
            raise UsageError("--certificate needs --xi")
        cert = de.secrecy_certificate(ddp, args.xi, a=args.a, girth=args.girth, n=args.n)
        out["certificate"] = cert.to_json()
    if len(out) == 1:
        raise UsageError("choose at least one of --trace, --threshold, --decay, --certificate")
    _emit(out)
    return 0


def _require_seed(args):
    if args.seed is None:
        raise UsageError("this command is randomized and needs an explicit --seed")


def cmd_simulate(args) -> int:
    _require_seed(args)
    tg = read_alist(args.input)
    reports = es.sweep(tg, args.epsilon, args.iters, args.trials, args.seed, args.workers)
    if args.out:
        es.write_csv(reports, args.out)
        _emit({"config": _config(args)}, f"{args.out}.json")
    else:
        sys.stdout.write(es.write_csv(reports))
    return 0


def cmd_secrecy(args) -> int:
    _require_seed(args)
    codes = []
    if args.input:
        codes = [(path, read_alist(path)) for path in args.input]
    elif args.regular or args.ddp:
        for q in args.q or [None]:
            tg, meta = _build(args, q)
            codes.append((f"q={meta.recipe.q}", tg))
    else:
        raise UsageError("give --in FILE... or a build recipe (--regular C D / --ddp) with --q Q...")
    rows = []
    for label, tg in codes:
        rep = sec.secrecy_report(tg, args.xi, args.trials, args.seed, args.workers, with_exact=args.exact)
        rows.append((label, rep))
    out = {"config": _config(args), "reports": [dict(source=lab, **rep.to_json()) for lab, rep in rows]}
    if len(rows) > 1:
        out["leakage_per_bit_nonincreasing"] = sec.nonincreasing_up_to_overlap([r for _, r in rows])
    _emit(out, args.out)
    return 0


def cmd_girth(args) -> int:
    tg = read_alist(args.input)
    rep = girth(tg, witness=not args.no_witness)
    _emit({"config": _config(args), "girth": rep.girth, "witness_cycle": list(rep.witness_cycle or []),
           "tree_depth": de.t_for_girth(rep.girth)})
    return 0


def cmd_leakage_exact(args) -> int:
    tg = read_alist(args.input)
    code = sec.CosetCode.from_tanner(tg)
    if args.mode == sec.SAMPLED:
        _require_seed(args)
    value = sec.exact_leakage(code, args.xi, args.mode, args.trials, args.seed)
    _emit({"config": _config(args), "n": code.n, "secret_bits": code.secret_bits, "xi": args.xi,
           "exact_leakage_bits": value})
    return 0


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramanujan-ldpc", description=__doc__.split("\n")[0])
    parser.add_argument("--config", help="key=value file of defaults for the command")
    parser.add_argument("--error-json", action="store_true", help="print errors as JSON on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a large-girth Tanner graph")
    _add_build_options(p, required=True)
    p.add_argument("--q", type=int, help="LPS modulus (default: smallest admissible)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output prefix: writes PREFIX.alist and PREFIX.json")
    p.add_argument("--measure-girth", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("de", help="density evolution on the erasure channel")
    p.add_argument("--ddp", type=_ddp, required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--threshold", action="store_true")
    p.add_argument("--decay", action="store_true")
    p.add_argument("--certificate", action="store_true")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--xi", type=float)
    p.add_argument("--a", type=float, default=1.0, help="schedule constant of t(n) = a log n")
    p.add_argument("--girth", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--t-max", type=int, default=de.T_MAX)
    p.add_argument("--tol", type=float, default=de.CONVERGENCE_TOL)
    p.add_argument("--bisection-tol", type=float, default=1e-6)
    p.add_argument("--span", type=int, default=15, help="decay check covers t = R .. R + span")
    p.set_defaults(func=cmd_de)

    p = sub.add_parser("simulate", help="Monte Carlo peeling decoder, CSV output")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--epsilon", type=float, nargs="+", required=True)
    p.add_argument("--iters", type=_iters, nargs="+", default=[None], help="caps; 'inf' = to fixpoint")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("secrecy", help="leakage bound of the dual coset scheme")
    p.add_argument("--in", dest="input", nargs="+")
    _add_build_options(p, required=False)
    p.add_argument("--q", type=int, nargs="+", help="one build per modulus (sweep)")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="also compute exact leakage (n <= 25)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_secrecy)

    p = sub.add_parser("girth", help="girth of an alist graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--no-witness", action="store_true")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("leakage-exact", help="exact expected leakage of a small coset code")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--mode", choices=(sec.EXHAUSTIVE, sec.SAMPLED), default=sec.EXHAUSTIVE)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_leakage_exact)
    return parser


def _config_tokens(path: str) -> list[str]:
    """``key=value`` lines as option tokens; ``true``/``false`` toggle flags,
    whitespace separates list values."""
    tokens = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        flag = "--" + key.strip().replace("_", "-")
        value = value.strip()
        if value.lower() == "true":
            tokens.append(flag)
        elif value.lower() != "false":
            tokens += [flag, *value.split()]
    return tokens


def _with_config(argv: list[str], parser) -> list[str]:
    """Splice config-file tokens in right after the command name, so that
    explicit flags (which come later) override them."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return argv  # argparse reports the missing value
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2 :]
    commands = parser._subparsers._group_actions[0].choices
    pos = next((i for i, tok in enumerate(rest) if tok in commands), None)
    if pos is None:
        return argv
    return rest[: pos + 1] + _config_tokens(path) + rest[pos + 1 :]


def _fail(exc_code: str, message: str, exit_code: int, as_json: bool) -> int:
    if as_json:
        sys.stdout.write(json.dumps({"error": exc_code, "message": message}) + "\n")
    print(f"error [{exc_code}]: {message}", file=sys.stderr)
    return exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    as_json = "--error-json" in argv
    try:
        argv = _with_config(argv, parser)
    except OSError as exc:
        return _fail("io-error", str(exc), EXIT_IO, as_json)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE, as_json)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", str(exc), EXIT_USAGE, as_json)
    except LdpcError as exc:
        return _fail(exc.code, str(exc), exc.exit_code, as_json)
    except OSError as exc:
        return _fail("io-error", str(exc), EXIT_IO, as_json)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
