"""Command-line front end.

Exit codes: 0 success (``check``: is a v-palindrome), 1 negative result
(``check``: not a v-palindrome; ``crosscheck``: mismatch), 2 unknown verdict,
3 computation aborted (unknown verdict inside a scan, search cap, no
period), 64 usage error, 65 malformed input file.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from importlib.resources import files

from vpal import basesearch, periodicity, vcore
from vpal.bfile import first_mismatch, format_bfile, read_bfile, records_from_values
from vpal.digits import format_digits, reverse
from vpal.errors import BFileParseError, SearchCapExceeded, UnknownVerdictInRange, VPalError
from vpal.factorization import DEFAULT_BUDGET, EffortBudget, FactorCache, factorize, is_prime

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_ABORTED = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65

log = logging.getLogger("vpal")


@dataclass
class Outcome:
    text: str
    records: list[dict] = field(default_factory=list)
    code: int = EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _base(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"base must be at least 2, got {text}")
    return value


def _budget(args: argparse.Namespace) -> EffortBudget:
    return EffortBudget(args.trial_bound, args.rho_iters, args.time_cap)


def golden_table() -> str:
    return files("vpal").joinpath("data/table1.txt").read_text(encoding="utf-8")


# --- commands ----------------------------------------------------------------


def cmd_check(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    report = vcore.is_v_palindrome(args.n, args.base, budget, cache)
    lines = [
        f"n = {report.n} (base {report.base}: {format_digits(report.n, report.base)})",
        f"reversal = {report.reversal} (base {report.base}: {format_digits(report.reversal, report.base)})",
    ]
    if report.v_n is not None or report.v_reversal is not None:
        fmt = lambda v: "unknown" if v is None else str(v)  # noqa: E731
        lines.append(f"v(n) = {fmt(report.v_n)}, v(reversal) = {fmt(report.v_reversal)}")
    verdict = report.verdict.value
    if report.failed_condition is not None:
        verdict += f" ({report.failed_condition.value})"
    lines.append(f"v-palindrome: {verdict}")
    code = {vcore.Verdict.YES: EXIT_OK, vcore.Verdict.NO: EXIT_NEGATIVE, vcore.Verdict.UNKNOWN: EXIT_UNKNOWN}
    return Outcome("\n".join(lines), [report.to_record()], code[report.verdict])


def table_rows(max_base: int, budget: EffortBudget, cache: FactorCache, ceiling: int) -> list[dict]:
    rows = []
    for b in range(2, max_base + 1):
        try:
            m = vcore.min_v_palindrome(b, budget, cache, ceiling)
            rows.append({"base": b, "min": m, "digits": format_digits(m, b)})
        except SearchCapExceeded as exc:
            rows.append({"base": b, "min": None, "digits": None, "error": f"search cap {exc.ceiling} exceeded"})
    return rows


def cmd_table(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    rows = table_rows(args.max_base, budget, cache, args.ceiling)
    lines = ["b\tmin_base10\tmin_base_b"]
    for row in rows:
        if row["min"] is None:
            lines.append(f"{row['base']}\t-\t{row['error']}")
        else:
            lines.append(f"{row['base']}\t{row['min']}\t{row['digits']}")
    return Outcome("\n".join(lines), rows)


def concat_roots(n_max: int, b: int, budget: EffortBudget, cache: FactorCache, method: str, kmax: int) -> list[int]:
    """n <= n_max (not divisible by b, not palindromes) with some n(k)_b a v-palindrome."""
    roots = []
    for n in range(1, n_max + 1):
        if n % b == 0 or reverse(n, b) == n:
            continue
        if method == "exact":
            decomposition = periodicity.exact_decomposition(n, b, budget, cache)
        else:
            _, decomposition = periodicity.analyze(n, b, kmax, budget, cache, max_window=kmax)
        if decomposition.c != math.inf:
            roots.append(n)
    return roots


def sequence_values(kind: str, b: int, limit: int, budget, cache, method: str, kmax: int) -> list[int]:
    if kind == "v-values":
        values = []
        for n in range(1, limit + 1):
            v = vcore.v_of(n, budget, cache)
            if v is None:
                raise UnknownVerdictInRange(n, b)
            values.append(v)
        return values
    if kind == "vpal":
        return vcore.enumerate_v_palindromes(b, limit, budget, cache)
    return concat_roots(limit, b, budget, cache, method, kmax)


def cmd_seq(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    values = sequence_values(args.kind, args.base, args.limit, budget, cache, args.method, args.kmax)
    records = records_from_values(values)
    header = f"# kind={args.kind} base={args.base} limit={args.limit}"
    if args.kind == "concat-roots":
        header += " (exact periods)" if args.method == "exact" else f" (window-certified, K={args.kmax})"
    return Outcome(header + "\n" + format_bfile(records).rstrip("\n"), [{"index": r.index, "value": r.value} for r in records])


def cmd_crosscheck(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    expected = read_bfile(args.bfile)
    if not expected:
        return Outcome("warning: no overlap (b-file has no entries)", [{"status": "no-overlap"}])
    if args.kind == "v-values":
        computed = {r.index: vcore.v_of(r.index, budget, cache) for r in expected if r.index >= 1}
    else:
        top = max(r.value for r in expected)
        values = sequence_values(args.kind, args.base, max(top, 1), budget, cache, args.method, args.kmax)
        computed = {r.index: r.value for r in records_from_values(values)}
    bad = first_mismatch(expected, computed)
    lo, hi = expected[0].index, expected[-1].index
    if bad is None:
        return Outcome(f"match on indices {lo}..{hi}", [{"status": "match", "first": lo, "last": hi}])
    exp_value = next(r.value for r in expected if r.index == bad)
    text = f"MismatchAt({bad}): b-file has {exp_value}, computed {computed.get(bad)}"
    return Outcome(text, [{"status": "mismatch", "index": bad, "expected": exp_value, "computed": computed.get(bad)}], EXIT_NEGATIVE)


def conjecture_probe(b: int, limit: int, budget: EffortBudget, cache: FactorCache, workers: int = 1) -> dict:
    members = vcore.enumerate_v_palindromes(b, limit, budget, cache, workers)
    primes = [n for n in members if is_prime(n)]
    squarefree = [
        n for n in members if factorize(n, budget, cache).is_squarefree() and factorize(reverse(n, b), budget, cache).is_squarefree()
    ]
    start, length = vcore.longest_gap_from_members(members, limit)
    return {
        "base": b,
        "limit": limit,
        "members": len(members),
        "prime_v_palindromes": primes,
        "squarefree_pairs": len(squarefree),
        "longest_gap_start": start,
        "longest_gap_length": length,
    }


def cmd_conjectures(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    probe = conjecture_probe(args.base, args.limit, budget, cache, args.workers)
    start, length = probe["longest_gap_start"], probe["longest_gap_length"]
    lines = [
        f"base {probe['base']}, n <= {probe['limit']}: {probe['members']} v-palindromes",
        f"prime v-palindromes: {len(probe['prime_v_palindromes'])}",
    ]
    for p in probe["prime_v_palindromes"]:
        lines.append(f"  !!! COUNTEREXAMPLE to the no-prime conjecture: {p}")
    lines.append(f"v-palindromes n with n and its reversal squarefree: {probe['squarefree_pairs']}")
    lines.append(f"longest run of non-members: {length} integers, {start}..{start + length - 1}")
    return Outcome("\n".join(lines), [probe])


def cmd_period(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    series, decomposition = periodicity.analyze(args.n, args.base, args.kmax, budget, cache)
    lines = [
        f"n = {args.n}, base {args.base}, window K = {series.K}",
        "I(1..K) = " + "".join(str(v) for v in series.values),
        decomposition.render(),
        f"candidate smallest period on window K={series.K}: {decomposition.omega0}",
    ]
    records = [{"series": series.to_record(), "decomposition": decomposition.to_record()}]
    if args.exact:
        exact = periodicity.exact_decomposition(args.n, args.base, budget, cache)
        lines.append(exact.render())
        records[0]["exact"] = exact.to_record()
    return Outcome("\n".join(lines), records)


def cmd_triples(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    if args.pair:
        triples = basesearch.pair_search(args.base, args.pair[0], args.pair[1], budget, cache)
    else:
        triples = basesearch.permissible_triples(args.base)
    pair = tuple(args.pair) if args.pair else basesearch.DEFAULT_PAIR
    lines = [f"base {args.base}, pair {pair}: {len(triples)} permissible triple(s)"]
    lines += [f"(a, c, t) = ({tr.a}, {tr.c}, {tr.t}); two-digit number {tr.number}" for tr in triples]
    return Outcome("\n".join(lines), [tr.to_record() for tr in triples])


def cmd_construct(args, budget: EffortBudget, cache: FactorCache) -> Outcome:
    tr, base = basesearch.theorem_construct(args.k, budget, cache)
    text = (
        f"base {base}: (a, c, t) = ({tr.a}, {tr.c}, {tr.t})\n"
        f"two-digit number ({tr.a} {tr.c})_{base} = {tr.number}, reversal {tr.reversal}; v-palindrome: yes"
    )
    return Outcome(text, [tr.to_record()])


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--trial-bound", type=_positive, default=DEFAULT_BUDGET.trial_division_bound)
    common.add_argument("--rho-iters", type=_positive, default=DEFAULT_BUDGET.pollard_iteration_cap)
    common.add_argument("--time-cap", type=float, default=DEFAULT_BUDGET.overall_time_cap, help="seconds per integer")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="vpal", description="v-palindromes in arbitrary bases")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="decide whether n is a v-palindrome")
    p.add_argument("n", type=_positive)
    p.add_argument("--base", type=_base, default=10)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", parents=[common], help="smallest v-palindrome per base")
    p.add_argument("--max-base", type=_base, default=19)
    p.add_argument("--ceiling", type=_positive, default=vcore.DEFAULT_SCAN_CEILING)
    p.set_defaults(func=cmd_table)

    window = argparse.ArgumentParser(add_help=False)
    window.add_argument("--method", choices=("exact", "window"), default="exact", help="period method for concat-roots")
    window.add_argument("--kmax", type=_positive, default=periodicity.DEFAULT_WINDOW)

    p = sub.add_parser("seq", parents=[common, window], help="emit a sequence as b-file lines")
    p.add_argument("--base", type=_base, default=10)
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--kind", choices=("vpal", "v-values", "concat-roots"), default="vpal")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("crosscheck", parents=[common, window], help="compare a b-file with local computation")
    p.add_argument("--bfile", required=True)
    p.add_argument("--base", type=_base, default=10)
    p.add_argument("--kind", choices=("vpal", "v-values", "concat-roots"), default="vpal")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("conjectures", parents=[common], help="report on the open conjectures")
    p.add_argument("--base", type=_base, default=10)
    p.add_argument("--limit", type=_positive, default=10**4)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("period", parents=[common], help="decompose the concatenation indicator of n")
    p.add_argument("n", type=_positive)
    p.add_argument("--base", type=_base, default=10)
    p.add_argument("--kmax", type=_positive, default=periodicity.DEFAULT_WINDOW)
    p.add_argument("--exact", action="store_true", help="also compute the decomposition with a proven period")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("triples", parents=[common], help="permissible triples for a base")
    p.add_argument("--base", type=_base, required=True)
    p.add_argument("--pair", type=_positive, nargs=2, metavar=("M1", "M2"))
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("construct", parents=[common], help="two-digit v-palindrome in base 30k, k = 4 mod 11")
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        budget = _budget(args)
    except ValueError as exc:
        parser.error(str(exc))
    cache = FactorCache.from_env()
    try:
        outcome = args.func(args, budget, cache)
    except BFileParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except VPalError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_ABORTED
    if args.format == "records":
        for rec in outcome.records:
            print(json.dumps(rec, sort_keys=True))
    else:
        print(outcome.text)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
