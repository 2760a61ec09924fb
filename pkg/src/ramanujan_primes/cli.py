"""Command-line front end.

Subcommands::

    ramanujan certify CORPUS   per-prime temperedness certificates
    ramanujan scan CORPUS      positive-type scan and witness primes
    ramanujan eval CORPUS      truncated incomplete adjoint L-value
    ramanujan gamma Z1 Z2 Z3   archimedean adjoint gamma factor
    ramanujan selftest         embedded invariant suite

CORPUS is a file path or ``builtin:delta`` (Sym^2 of Delta) or
``builtin:synthetic`` (non-tempered, t=1/4, theta=0 at every prime).

Exit codes: 0 success, 1 input/usage error, 2 inconsistent data present,
3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .adjoint import (
    DEFAULT_DEPTH,
    certify_prime,
    local_factor_adjoint,
    local_factor_rankin,
    local_zeta,
)
from .archimedean import (
    ArchParams,
    adjoint_gamma_factor,
    arch_adjoint_set,
    pole_order_at_zero,
)
from .dirichlet import (
    ARCHIMEDEAN,
    build_adjoint_log_series,
    evaluate_incomplete,
    positive_type_scan,
    witness_report,
)
from .errors import DomainError, IncompleteDataError, PoleError, RamanujanError
from .exact import GaussianRational, primes_upto
from .ingest import GL3Corpus, delta_newform, lift_newform, parse_corpus, synthetic_corpus
from .satake import DEFAULT_TOL, HeckeLocalDatum, class_of
from .selftest import run_selftest

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_SELFTEST = 0, 1, 2, 3


class UsageError(RamanujanError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    window: tuple = (1000, DEFAULT_DEPTH)
    delta: Optional[float] = None
    excluded: tuple = ()
    output_format: str = "human"
    exact: str = "auto"
    seed: int = 0
    s: Optional[float] = None

    def __post_init__(self):
        if self.window[0] < 1 or self.window[1] < 1:
            raise UsageError("window must be positive")
        if self.delta is not None and self.delta < 0:
            raise UsageError("delta must be >= 0")


def encode(x):
    """JSON-safe, deterministic encoding; exact numbers become ``"n/d"`` strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussianRational):
        return str(x) if x.im else str(x.re)
    if isinstance(x, float):
        return x
    if isinstance(x, complex):
        return x.real if x.imag == 0 else [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=str) if isinstance(x, (set, frozenset)) else x
        return [encode(v) for v in items]
    raise TypeError(f"cannot encode {type(x).__name__}")


def load_input(source: str, p_max: int) -> GL3Corpus:
    if source == "builtin:delta":
        return lift_newform(delta_newform(p_max))
    if source == "builtin:synthetic":
        return synthetic_corpus(p_max)
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such corpus file: {source}")
    return parse_corpus(path)


def _apply_exact_mode(corpus: GL3Corpus, mode: str) -> GL3Corpus:
    if mode == "auto":
        return corpus
    if mode == "on":
        inexact = [p for p, d in corpus.data.items() if not d.exact]
        if inexact:
            raise UsageError(f"--exact needs rational data; prime {min(inexact)} is floating")
        return corpus
    data = {p: HeckeLocalDatum(p, complex(d.a_p), complex(d.omega_p))
            for p, d in corpus.data.items()}
    return GL3Corpus(data, corpus.provenance, corpus.ramified, corpus.level, corpus.inconsistent)


def _scan_primes(config: RunConfig, corpus: GL3Corpus) -> list[int]:
    excluded = set(config.excluded) | set(corpus.ramified)
    return [p for p in primes_upto(config.window[0]) if p not in excluded]


def _config_echo(config: RunConfig, corpus: Optional[GL3Corpus] = None) -> dict:
    echo = asdict(config)
    echo.pop("output_format")
    echo["window"] = list(config.window)
    echo["excluded"] = sorted(config.excluded)
    if corpus is not None:
        echo["provenance"] = corpus.provenance
        echo["ramified"] = sorted(corpus.ramified)
    return echo


def cmd_certify(config: RunConfig) -> tuple[dict, int]:
    corpus = _apply_exact_mode(load_input(config.inputs[0], config.window[0]), config.exact)
    primes = _scan_primes(config, corpus)
    missing = [p for p in primes if p not in corpus.data and p not in corpus.inconsistent]
    if missing:
        raise IncompleteDataError(missing)
    certificates, counts = [], {}
    for p in primes:
        if p in corpus.inconsistent:
            entry = {"p": p, "verdict": "inconsistent", "reason": "non-unit central character",
                     "witness": None, "value": None}
        else:
            cert = certify_prime(corpus.data[p], config.window[1], config.delta)
            entry = {"p": p, "verdict": cert.verdict.value,
                     "reason": cert.reason.value if cert.reason else None,
                     "witness": cert.witness, "value": cert.value}
        counts[entry["verdict"]] = counts.get(entry["verdict"], 0) + 1
        certificates.append(entry)
    scanned = len(primes)
    certified = counts.get("ramanujan-certified", 0)
    report = {
        "command": "certify",
        "config": _config_echo(config, corpus),
        "window": list(config.window),
        "scanned": scanned,
        "counts": dict(sorted(counts.items())),
        "ramanujan_fraction": certified / scanned if scanned else 0.0,
        "certificates": certificates,
    }
    code = EXIT_INCONSISTENT if counts.get("inconsistent") else EXIT_OK
    return report, code


def _series_inputs(config: RunConfig):
    corpus = _apply_exact_mode(load_input(config.inputs[0], config.window[0]), config.exact)
    bad = [p for p in corpus.inconsistent if p <= config.window[0] and p not in config.excluded]
    if bad:
        raise UsageError(f"inconsistent data at prime(s) {sorted(bad)}")
    return corpus


def cmd_scan(config: RunConfig) -> tuple[dict, int]:
    corpus = _series_inputs(config)
    delta = DEFAULT_TOL if config.delta is None else config.delta
    series = build_adjoint_log_series(corpus, config.excluded, config.window)
    pos = positive_type_scan(series, delta)
    wit = witness_report(corpus, config.excluded, config.window, delta)
    report = {
        "command": "scan",
        "config": _config_echo(config, corpus),
        "window": list(config.window),
        "excluded": sorted(p for p in series.excluded if p != ARCHIMEDEAN) + [ARCHIMEDEAN],
        "positivity": {
            "is_positive_type": pos.is_positive_type,
            "first_negative": list(pos.first_negative) if pos.first_negative else None,
            "negative_count": pos.negative_count,
            "scanned": pos.scanned,
        },
        "witnesses": {
            "count": wit.count,
            "scanned_primes": wit.scanned,
            "density": wit.density,
            "primes": wit.primes(),
            "entries": [list(w) for w in wit.witnesses],
        },
    }
    return report, EXIT_OK


def cmd_eval(config: RunConfig) -> tuple[dict, int]:
    if config.s is None or not config.s > 2:
        raise UsageError(f"eval needs s > 2 (got {config.s})")
    corpus = _series_inputs(config)
    series = build_adjoint_log_series(corpus, config.excluded, config.window)
    result = evaluate_incomplete(series, config.s)
    residual = 0.0
    for p in series.primes():
        c = class_of(corpus.data[p])
        rankin = local_factor_rankin(c, config.s)
        adj = local_factor_adjoint(c, config.s)
        residual = max(residual, abs(rankin - local_zeta(p, config.s) * adj) / abs(rankin))
    report = {
        "command": "eval",
        "config": _config_echo(config, corpus),
        "window": list(config.window),
        "s": result.s,
        "value": result.value,
        "tail_bound": result.tail_bound,
        "log_tail_bound": result.log_tail_bound,
        "factorization_residual": residual,
        "primes": len(series.primes()),
    }
    return report, EXIT_OK


def parse_complex(text: str) -> complex:
    """Parse ``"0"``, ``"i"``, ``"-2i"``, ``"1/3"``, ``"1/3+2i"`` style numbers."""
    t = text.strip().replace(" ", "").replace("j", "i")
    if "/" not in t:
        t2 = t
        if t2.endswith("i"):
            body = t2[:-1]
            if body in ("", "+", "-") or body[-1] in "+-":
                t2 = body + "1i"
        try:
            return complex(t2.replace("i", "j"))
        except ValueError:
            raise UsageError(f"cannot parse complex number {text!r}") from None
    real, imag = t, "0"
    if t.endswith("i"):
        cut = max(t.rfind("+", 1), t.rfind("-", 1))
        real, imag = (t[:cut], t[cut:-1]) if cut > 0 else ("0", t[:-1])
        if imag in ("", "+", "-"):
            imag += "1"
    try:
        return complex(float(Fraction(real or "0")), float(Fraction(imag)))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse complex number {text!r}") from None


def cmd_gamma(config: RunConfig) -> tuple[dict, int]:
    if len(config.inputs) != 3:
        raise UsageError("gamma needs exactly three parameters z1 z2 z3")
    try:
        params = ArchParams(tuple(parse_complex(z) for z in config.inputs))
    except RamanujanError as exc:
        raise UsageError(str(exc)) from None
    s = 0.0 if config.s is None else config.s
    B = arch_adjoint_set(params).B
    report = {
        "command": "gamma",
        "config": _config_echo(config),
        "z": list(params.z),
        "B": list(B),
        "s": s,
        "pole_order_at_zero": pole_order_at_zero(params),
    }
    try:
        report["value"] = adjoint_gamma_factor(params, s)
        report["pole_order"] = 0
    except PoleError as exc:
        report["value"] = None
        report["pole_order"] = exc.order
    return report, EXIT_OK


def cmd_selftest(config: RunConfig, trials: int = 200, corrupt: bool = False) -> tuple[dict, int]:
    result = run_selftest(config.seed, trials, corrupt)
    report = {"command": "selftest", "config": _config_echo(config), **result}
    return report, EXIT_OK if result["ok"] else EXIT_SELFTEST


def render_json(report: dict) -> str:
    return json.dumps(encode(report), indent=2, sort_keys=True) + "\n"


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def render_human(report: dict) -> str:
    """Plain text with the same numbers as the structured form."""
    r = encode(report)
    out = [f"{r['command']}: window={_fmt(r['window'])}" if "window" in r else f"{r['command']}:"]
    cmd = r["command"]
    if cmd == "certify":
        for c in r["certificates"]:
            out.append(f"  p={c['p']:<6} {c['verdict']:<24} reason={_fmt(c['reason'])} "
                       f"witness={_fmt(c['witness'])} value={_fmt(c['value'])}")
        out.append(f"scanned={r['scanned']} counts={r['counts']} "
                   f"ramanujan_fraction={_fmt(r['ramanujan_fraction'])}")
    elif cmd == "scan":
        pos, wit = r["positivity"], r["witnesses"]
        out.append(f"positive_type={pos['is_positive_type']} first_negative="
                   f"{_fmt(pos['first_negative'])} negative_count={pos['negative_count']} "
                   f"scanned={pos['scanned']}")
        out.append(f"witnesses={wit['count']}/{wit['scanned_primes']} "
                   f"density={_fmt(wit['density'])}")
        out.append(f"witness_primes={_fmt(wit['primes'])}")
    elif cmd == "eval":
        out.append(f"s={_fmt(r['s'])} value={_fmt(r['value'])} tail_bound={_fmt(r['tail_bound'])} "
                   f"log_tail_bound={_fmt(r['log_tail_bound'])} "
                   f"factorization_residual={_fmt(r['factorization_residual'])} "
                   f"primes={r['primes']}")
    elif cmd == "gamma":
        out.append(f"z={_fmt(r['z'])}")
        out.append(f"B={_fmt(r['B'])}")
        if r["pole_order"]:
            out.append(f"s={_fmt(r['s'])}: pole, order {r['pole_order']}")
        else:
            out.append(f"s={_fmt(r['s'])}: value={_fmt(r['value'])}")
        out.append(f"pole_order_at_zero={r['pole_order_at_zero']}")
    elif cmd == "selftest":
        for name, chk in sorted(r["checks"].items()):
            status = "ok" if chk["failed"] == 0 else "FAIL"
            out.append(f"  {name:<22} {status} ({chk['failed']}/{chk['trials']} failed)"
                       + (f" first={chk['failures'][0]}" if chk["failures"] else ""))
        out.append(f"seed={r['seed']} ok={r['ok']}")
    if "timing" in r:
        out.append(f"elapsed={_fmt(r['timing']['seconds'])}s")
    return "\n".join(out) + "\n"


def _window(text: str) -> tuple:
    try:
        p, m = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window must be P,M") from None
    return p, m


def _prime_list(text: str) -> tuple:
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError("exclude must be a comma-separated prime list") from None


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which here means "inconsistent data".
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=_window, default=(1000, DEFAULT_DEPTH),
                        help="P_max,M_max (default 1000,5)")
    common.add_argument("--delta", type=float, default=None,
                        help="negativity margin (default 0 exact, 1e-9 floating)")
    common.add_argument("--exclude", type=_prime_list, default=(),
                        help="comma-separated primes to exclude")
    common.add_argument("--format", dest="output_format", choices=("human", "structured"),
                        default="human")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_const", const="on", default="auto",
                      help="require exact rational data")
    mode.add_argument("--float", dest="exact", action="store_const", const="off",
                      help="convert data to floating point")
    common.add_argument("--out", type=Path, default=None, help="write the report here")
    common.add_argument("--timing", action="store_true", help="include elapsed time")

    parser = _Parser(prog="ramanujan", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name in ("certify", "scan"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("corpus")
    p = sub.add_parser("eval", parents=[common])
    p.add_argument("corpus")
    p.add_argument("--s", type=float, default=3.0)
    p = sub.add_parser("gamma", parents=[common])
    p.add_argument("z", nargs=3, metavar="Z")
    p.add_argument("--s", type=str, default="0")
    p = sub.add_parser("selftest", parents=[common])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    return parser


_COMMANDS = {"certify": cmd_certify, "scan": cmd_scan, "eval": cmd_eval, "gamma": cmd_gamma}


_NEGATIVE_NUMBER = re.compile(r"^-(\d|\.\d|i$|j$)")


def _protect_negatives(argv: list) -> list:
    # argparse would read "-i" or "-1/3" as an option; a leading space keeps it positional.
    return [" " + a if _NEGATIVE_NUMBER.match(a) else a for a in argv]


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_protect_negatives(argv))
    start = time.perf_counter()
    try:
        s = getattr(args, "s", None)
        if args.subcommand == "gamma":
            s = parse_complex(s)
            s = s.real if s.imag == 0 else s
        inputs = [args.corpus] if hasattr(args, "corpus") else list(getattr(args, "z", []))
        config = RunConfig(args.subcommand, inputs, args.window, args.delta, args.exclude,
                           args.output_format, args.exact, getattr(args, "seed", 0), s)
        if args.subcommand == "selftest":
            report, code = cmd_selftest(config, args.trials, args.corrupt)
        else:
            report, code = _COMMANDS[args.subcommand](config)
    except (RamanujanError, DomainError, OSError) as exc:
        print(f"ramanujan {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    text = render_json(report) if args.output_format == "structured" else render_human(report)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
