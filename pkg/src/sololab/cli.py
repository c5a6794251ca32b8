"""Command-line interface.

Reports go to stdout (JSON, or CSV for tables); logs go to stderr.
Exit status: 0 when every check passes, 1 when a check fails, 2 on
usage, parse or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .dyadic import Dyadic
from .enumeration import UniversalEvaluator, code_I, covering_count, decode_machine, encode_machine
from .gap import NOT_A_MIXTURE, delta_prime_dominance_check, delta_prime_table, gap_report
from .kraft import KraftAllocator, KraftExhausted, is_prefix_free, synthesize_universal
from .mixture import BudgetTooSmall, InvalidWeights, WeightScheme, dominance_check, mixture_eval, mixture_table, split_sum_check
from .reports import dyadic_json
from .semimeasure import Budget, approx_lambda, machine_table, minimal_programs, tabulate, universal_table
from .tm import MachineEvaluator, MachineFormatError, format_machine, parse_machine

log = logging.getLogger("sololab")

USAGE_ERROR = 2
CHECK_FAILED = 1


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: tuple[str, ...]
    spec: str | None = None
    index: int | None = None
    universal: bool = False
    depth: int = 3
    max_len: int = 9
    fuel: int = 64
    machines: int | None = None
    weights: str | None = None
    fmt: str = "json"
    c: Dyadic = field(default_factory=lambda: Dyadic(1, 4))
    j: int | None = None
    x: str | None = None
    lengths: list[int] = field(default_factory=list)
    base: str = "default"
    codeword_index: int | None = None

    def __post_init__(self):
        for name in ("depth", "max_len", "fuel", "machines", "index", "j", "codeword_index"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
        if self.c < Dyadic(0):
            raise UsageError("--c must be non-negative")
        if self.x is not None and set(self.x) - {"0", "1"}:
            raise UsageError("-x must be a binary string")

    @property
    def budget(self) -> Budget:
        return Budget(self.max_len, self.fuel)


def _budget_args(p: argparse.ArgumentParser, depth=True):
    if depth:
        p.add_argument("--depth", type=int, default=3, help="tabulate strings up to this length")
    p.add_argument("--max-len", type=int, default=9, help="program length budget L (bits)")
    p.add_argument("--fuel", type=int, default=64, help="step budget t")


def _machine_args(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--spec", help="machine spec file")
    g.add_argument("--index", type=int, help="enumeration index of the machine")
    g.add_argument("--universal", action="store_true", help="the reference universal machine (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sololab", description="Budgeted universal priors on monotone machines.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a machine file and print it canonically")
    p.add_argument("file")
    p.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")

    p = sub.add_parser("enum", help="machine enumeration and index code")
    esub = p.add_subparsers(dest="action", required=True)
    q = esub.add_parser("show", help="print the machine with index i")
    q.add_argument("index", type=int)
    q = esub.add_parser("encode", help="print the index of a machine file")
    q.add_argument("spec")
    q = esub.add_parser("code", help="print the codeword of index i")
    q.add_argument("codeword_index", type=int)

    p = sub.add_parser("lambda", help="tabulate a budgeted semimeasure")
    _machine_args(p)
    _budget_args(p)
    p.add_argument("-x", help="evaluate a single string and list its minimal programs")
    p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")

    p = sub.add_parser("mix", help="truncated universal mixtures")
    msub = p.add_subparsers(dest="action", required=True)
    q = msub.add_parser("eval", help="evaluate the mixture")
    _budget_args(q)
    q.add_argument("-x", help="a single string (default: whole table)")
    q.add_argument("-N", "--machines", type=int, help="truncation N (default: all codewords within --max-len)")
    q.add_argument("--weights", help="JSON weight file (default: 2^-len(code(i)))")
    q.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    q = msub.add_parser("split-check", help="lambda_U == default mixture for x != empty")
    _budget_args(q)
    q.add_argument("-N", "--machines", type=int)
    q = msub.add_parser("dominance", help="lambda_U >= 2^-len(code(j)) lambda_Tj")
    _budget_args(q)
    q.add_argument("-j", type=int, required=True)

    p = sub.add_parser("kc", help="Kraft-Chaitin allocation")
    ksub = p.add_subparsers(dest="action", required=True)
    q = ksub.add_parser("request", help="allocate codewords of the given lengths in order")
    q.add_argument("lengths", type=int, nargs="+")
    q = ksub.add_parser("synth", help="synthesize a dispatcher for a weight scheme")
    q.add_argument("--weights", required=True)
    q = ksub.add_parser("verify", help="lambda of the synthesized dispatcher == mixture for x != empty")
    _budget_args(q)
    q.add_argument("--weights")
    q.add_argument("-N", "--machines", type=int)

    p = sub.add_parser("gap", help="gap analysis")
    gsub = p.add_subparsers(dest="action", required=True)
    q = gsub.add_parser("report", help="gaps and relative-gap bound of a table")
    _machine_args(q)
    _budget_args(q)
    q.add_argument("--c", default="1/16", help="dyadic constant c of the bound")
    q = gsub.add_parser("delta-prime", help="root-gap-free dominant semimeasure over a mixture")
    _budget_args(q)
    q.add_argument("--base", default="default", help="'default' or a JSON weight file")
    q.add_argument("-N", "--machines", type=int)
    q.add_argument("--c", default="1/16")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    command = tuple(x for x in (args.command, getattr(args, "action", None)) if x)
    kw = {}
    for name in ("spec", "index", "depth", "max_len", "fuel", "machines", "weights", "fmt", "j", "x",
                 "base", "codeword_index"):
        if getattr(args, name, None) is not None:
            kw[name] = getattr(args, name)
    if getattr(args, "universal", False):
        kw["universal"] = True
    if getattr(args, "lengths", None) is not None:
        kw["lengths"] = args.lengths
    if args.command == "parse":
        kw["spec"] = args.file
    if getattr(args, "c", None) is not None:
        try:
            kw["c"] = Dyadic.parse(args.c)
        except ValueError as exc:
            raise UsageError(f"--c: {exc}") from exc
    return RunConfig(command, **kw)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _machine(config: RunConfig):
    if config.spec is not None:
        spec = parse_machine(_read(config.spec))
        return MachineEvaluator(spec, tag=f"T{encode_machine(spec)}")
    if config.index is not None:
        return MachineEvaluator(decode_machine(config.index), tag=f"T{config.index}")
    return None


def _table(config: RunConfig):
    ev = _machine(config)
    if ev is None:
        return universal_table(config.depth, config.budget)
    if config.index is not None:
        return machine_table(config.index, config.depth, config.budget)
    return tabulate(ev, config.depth, config.budget)


def _scheme(config: RunConfig, path: str | None) -> WeightScheme:
    if path and path != "default":
        return WeightScheme.from_json(_read(path))
    n = config.machines if config.machines is not None else covering_count(config.max_len)
    if n < 1:
        raise UsageError("the truncated mixture needs N >= 1 (raise --max-len or pass -N)")
    return WeightScheme.default_for(n)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def run_command(config: RunConfig) -> tuple[int, str]:
    """Execute ``config``; return ``(exit status, stdout text)``."""
    cmd = config.command
    if cmd == ("parse",):
        spec = parse_machine(_read(config.spec))
        if config.fmt == "json":
            return 0, _dump({"num_states": spec.num_states, "index": encode_machine(spec), "text": format_machine(spec)}) + "\n"
        return 0, format_machine(spec)

    if cmd == ("enum", "show"):
        return 0, format_machine(decode_machine(config.index))
    if cmd == ("enum", "encode"):
        return 0, f"{encode_machine(parse_machine(_read(config.spec)))}\n"
    if cmd == ("enum", "code"):
        return 0, f"{code_I(config.codeword_index)}\n"

    if cmd == ("lambda",):
        if config.x is not None:
            ev = _machine(config) or UniversalEvaluator()
            value = approx_lambda(ev, config.x, config.budget)
            programs = sorted(minimal_programs(ev, config.x, config.budget), key=lambda p: (len(p), p))
            return 0, _dump({"machine": ev.tag, "x": config.x, "budget": config.budget.to_dict(),
                             "value": dyadic_json(value), "programs": programs}) + "\n"
        table = _table(config)
        return 0, table.to_csv() if config.fmt == "csv" else table.to_json() + "\n"

    if cmd == ("mix", "eval"):
        scheme = _scheme(config, config.weights)
        if config.x is not None:
            value = mixture_eval(scheme, config.x, config.budget)
            return 0, _dump({"x": config.x, "N": len(scheme), "budget": config.budget.to_dict(),
                             "value": dyadic_json(value)}) + "\n"
        table = mixture_table(scheme, config.depth, config.budget)
        return 0, table.to_csv() if config.fmt == "csv" else table.to_json() + "\n"
    if cmd == ("mix", "split-check"):
        report = split_sum_check(config.depth, config.budget, config.machines)
        return (0 if report.ok else CHECK_FAILED), report.to_json() + "\n"
    if cmd == ("mix", "dominance"):
        _, report = dominance_check(config.j, config.depth, config.budget)
        return (0 if report.ok else CHECK_FAILED), report.to_json() + "\n"

    if cmd == ("kc", "request"):
        alloc = KraftAllocator()
        words, error = [], None
        for k in config.lengths:
            try:
                words.append(alloc.request(k))
            except KraftExhausted as exc:
                error = str(exc)
                break
        out = {"codewords": words, "free_mass": dyadic_json(alloc.free_mass()), "error": error}
        return (CHECK_FAILED if error else 0), _dump(out) + "\n"
    if cmd == ("kc", "synth"):
        return 0, synthesize_universal(WeightScheme.from_json(_read(config.weights))).to_json() + "\n"
    if cmd == ("kc", "verify"):
        scheme = _scheme(config, config.weights)
        synth = synthesize_universal(scheme)
        left = tabulate(synth, config.depth, config.budget)
        right = mixture_table(scheme, config.depth, config.budget)
        rows = [{"x": x, "left": dyadic_json(left[x]), "right": dyadic_json(right[x])} for x in left if x]
        bad = [r["x"] for r in rows if r["left"] != r["right"]]
        prefix_free = is_prefix_free(synth.table)
        ok = not bad and prefix_free
        out = {"check": "mixture-to-machine", "ok": ok, "prefix_free": prefix_free,
               "dispatch": json.loads(synth.to_json())["dispatch"], "violations": bad, "rows": rows}
        return (0 if ok else CHECK_FAILED), _dump(out) + "\n"

    if cmd == ("gap", "report"):
        report = gap_report(_table(config), config.c)
        return (0 if report.ok else CHECK_FAILED), report.to_json() + "\n"
    if cmd == ("gap", "delta-prime"):
        scheme = _scheme(config, config.base)
        base = mixture_table(scheme, config.depth, config.budget)
        dp = delta_prime_table(base)
        greport = gap_report(dp, config.c)
        root_gap = greport.rows[0]["gap"] if greport.rows else None
        covered = [j for j in range(len(scheme))
                   if max(scheme.weights[j].binary_expansion()) <= config.max_len]
        dom_fail = []
        for j in covered:
            r = delta_prime_dominance_check(scheme, j, config.depth, config.budget)
            if not r.ok:
                dom_fail.append({"j": j, "violations": r.violations})
        flagged = "" in greport.violations
        ok = root_gap is not None and root_gap == Dyadic(0) and not dom_fail and flagged
        flag = f"{NOT_A_MIXTURE}: root gap 0" if ok else None
        out = {
            "check": "delta-prime",
            "ok": ok,
            "flag": flag,
            "root_gap": dyadic_json(root_gap),
            "dominance_checked": covered,
            "dominance_failures": dom_fail,
            "gap_report": greport.to_dict(),
        }
        return (0 if ok else CHECK_FAILED), _dump(out) + "\n"

    raise UsageError(f"unknown command {' '.join(cmd)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        config = config_from_args(args)
        status, text = run_command(config)
    except (UsageError, MachineFormatError, InvalidWeights, BudgetTooSmall, ValueError) as exc:
        log.error("%s", exc)
        return USAGE_ERROR
    sys.stdout.write(text)
    log.info("%s: %s", " ".join(config.command), "ok" if status == 0 else "FAILED")
    return status


if __name__ == "__main__":
    sys.exit(main())
