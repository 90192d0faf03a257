"""
Command-line interface.

Exit codes: 0 success, 2 usage or domain error, 3 data error, 4 I/O error.
"""

import argparse
import json
import sys

from . import __version__
from .dkw import Mode, estimate_samples
from .entropy import SymbolSequence, build_ngram_table, log_base, ngram_entropy
from .errors import DataError, DomainError
from .simulator import SimConfig, _grid, default_grid, mse_curve, sample_sequence
from .zipf_model import zipf_distribution

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _fmt(x):
    """Round-trip float formatting shared by text, JSON and CSV output."""
    return repr(float(x))


def _mode_from_args(args):
    if args.mode == "full":
        if args.mc is not None or args.q is not None:
            raise UsageError("--mc and --q are not accepted with --mode full")
        return Mode.full()
    if args.mode == "coarse":
        if args.mc is None or args.q is not None:
            raise UsageError("--mode coarse requires --mc (and no --q)")
        return Mode.coarse(args.mc)
    if args.q is None or args.mc is not None:
        raise UsageError("--mode top-q requires --q (and no --mc)")
    return Mode.top_quantile(args.q)


def _estimate_payload(est):
    p = est.params
    # counts as strings: N0 can exceed 2**53
    return {
        "M": est.M,
        "confidence": est.confidence,
        "mode": str(est.mode),
        "alpha": p.alpha,
        "beta": p.beta,
        "gamma": p.gamma,
        "kappa": p.kappa,
        "gamma_prime": p.gamma_prime,
        "rank_lo": est.rank_lo,
        "delta0": est.delta0,
        "epsilon": est.epsilon,
        "n_real": est.n_real,
        "n0": str(est.n0),
        "p0": est.p0,
        "N0_real": est.N0_real,
        "N0": str(est.N0),
    }


def _estimation_params(args):
    return {"alphabet_size": args.alphabet_size, "confidence": args.confidence,
            "mode": args.mode, "mc": args.mc, "q": args.q}


def cmd_estimate(args):
    est = estimate_samples(args.alphabet_size, args.confidence, _mode_from_args(args))
    return _estimation_params(args), _estimate_payload(est), None


def _parse_grid(spec):
    parts = spec.split(",")
    if len(parts) != 4:
        raise UsageError(f"--grid expects min,max,points,log|lin; got {spec!r}")
    try:
        lo, hi, points = int(parts[0]), int(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--grid bounds and point count must be integers; got {spec!r}")
    if parts[3] not in ("log", "lin"):
        raise UsageError(f"--grid spacing must be log or lin; got {parts[3]!r}")
    return _grid(lo, hi, points, parts[3])


def cmd_simulate(args):
    mode = _mode_from_args(args)
    log_base(args.base)
    if args.grid:
        grid = _parse_grid(args.grid)
    else:
        grid = default_grid(estimate_samples(args.alphabet_size, args.confidence, mode).N0)
    config = SimConfig(M=args.alphabet_size, confidence=args.confidence, mode=mode,
                       ngram_order=args.ngram, base=args.base, n_grid=tuple(grid),
                       ensemble=args.ensemble, seed=args.seed)
    curve = mse_curve(config, workers=args.workers)
    lines = ["n,mse,mean_estimate"]
    lines += [f"{pt.n},{_fmt(pt.mse)},{_fmt(pt.mean_estimate)}" for pt in curve.points]
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    params = {**_estimation_params(args), "ngram": args.ngram, "base": args.base,
              "grid": args.grid, "ensemble": args.ensemble, "out": args.out}
    result = {"true_entropy": curve.true_entropy, "n0_marker": str(curve.n0_marker),
              "points": len(curve.points), "n_grid": list(curve.config.n_grid),
              "csv": args.out}
    return params, result, args.seed


def cmd_sample(args):
    dist = zipf_distribution(args.alphabet_size)
    seq = sample_sequence(dist, args.n, args.seed)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(map(str, seq.symbols.tolist())) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    params = {"alphabet_size": args.alphabet_size, "n": args.n, "out": args.out}
    return params, {"symbols": args.n, "out": args.out}, args.seed


def _read_tokens(path, alphabet_size):
    symbols = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            token = line.strip()
            if not token:
                continue
            if not token.isdigit():
                raise DataError(f"line {lineno}: malformed symbol token {token!r}")
            value = int(token)
            if alphabet_size is not None and value >= alphabet_size:
                raise DataError(f"line {lineno}: symbol {value} outside alphabet "
                                f"of size {alphabet_size}")
            symbols.append(value)
    return symbols


def cmd_entropy(args):
    if args.encoding == "bytes":
        if args.alphabet_size is not None and args.alphabet_size != 256:
            raise UsageError("--encoding bytes implies --alphabet-size 256")
        try:
            with open(args.input, "rb") as fh:
                symbols = list(fh.read())
        except OSError as exc:
            raise OSError(f"cannot read {args.input}: {exc.strerror or exc}") from exc
        M = 256
    else:
        symbols = _read_tokens(args.input, args.alphabet_size)
        if args.alphabet_size is not None:
            M = args.alphabet_size
        else:
            M = max(symbols) + 1 if symbols else 1
    seq = SymbolSequence(symbols, M) if symbols else SymbolSequence([], M)
    table = build_ngram_table(seq, args.ngram)
    h = ngram_entropy(table, args.base)
    params = {"input": args.input, "encoding": args.encoding, "ngram": args.ngram,
              "base": args.base, "alphabet_size": args.alphabet_size}
    result = {"entropy": h, "alphabet_size": M, "total_symbols": len(seq),
              "distinct_symbols": len(set(symbols)),
              "distinct_ngrams": len(table.joint_counts)}
    return params, result, None


def _add_estimation_flags(p):
    p.add_argument("--alphabet-size", type=int, required=True, metavar="M")
    p.add_argument("--confidence", type=float, required=True, metavar="ZETA")
    p.add_argument("--mode", choices=["full", "coarse", "top-q"], default="full")
    p.add_argument("--mc", type=int, default=None, help="effective alphabet size (coarse)")
    p.add_argument("--q", type=float, default=None, help="top fraction of ranks (top-q)")


def _add_format(p):
    p.add_argument("--format", choices=["json", "text"], default="json")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="entropy-samples",
        description="Samples needed to estimate the entropy of Zipfian symbol sequences.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="minimum sample count for an alphabet")
    _add_estimation_flags(p)
    _add_format(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="ensemble MSE of plug-in entropy versus N")
    _add_estimation_flags(p)
    p.add_argument("--grid", default=None, metavar="MIN,MAX,POINTS,log|lin",
                   help="default: 30 log-spaced points from 10 to 10*N0")
    p.add_argument("--ensemble", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ngram", type=int, default=1)
    p.add_argument("--base", choices=["2", "e", "10"], default="2")
    p.add_argument("--workers", type=int, default=1, help="does not affect output")
    p.add_argument("--out", required=True, metavar="PATH")
    _add_format(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sample", help="write iid draws from the rank model, one per line")
    p.add_argument("--alphabet-size", type=int, required=True, metavar="M")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="PATH")
    _add_format(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("entropy", help="plug-in N-gram entropy of a symbol file")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--encoding", choices=["tokens", "bytes"], default="tokens")
    p.add_argument("--ngram", type=int, default=1)
    p.add_argument("--base", choices=["2", "e", "10"], default="2")
    p.add_argument("--alphabet-size", type=int, default=None, metavar="M")
    _add_format(p)
    p.set_defaults(func=cmd_entropy)
    return parser


def _render_text(command, result):
    lines = [f"{command}:"]
    for key, value in result.items():
        if isinstance(value, float):
            value = _fmt(value)
        lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params, result, seed = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    if args.format == "text":
        print(_render_text(args.command, result))
    else:
        envelope = {"tool_version": __version__, "command": args.command,
                    "params": params, "result": result, "seed": seed}
        print(json.dumps(envelope, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
