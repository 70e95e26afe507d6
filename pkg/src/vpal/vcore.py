"""The function v, the v-palindrome predicate and scans over it."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from vpal.digits import check_base, repeat_concat, reverse
from vpal.errors import PreconditionViolated, SearchCapExceeded, UnknownVerdictInRange
from vpal.factorization import (
    DEFAULT_BUDGET,
    EffortBudget,
    FactorCache,
    Factorization,
    FactorizationIncomplete,
    factorize,
)

DEFAULT_SCAN_CEILING = 10**6


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class FailedCondition(enum.Enum):
    DIVISIBLE_BY_BASE = "divisible_by_base"
    EQUALS_OWN_REVERSAL = "equals_own_reversal"
    V_MISMATCH = "v_mismatch"


@dataclass(frozen=True)
class VPalindromeReport:
    n: int
    base: int
    reversal: int
    v_n: int | None
    v_reversal: int | None
    verdict: Verdict
    failed_condition: FailedCondition | None = None

    @property
    def is_member(self) -> bool:
        return self.verdict is Verdict.YES

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "base": self.base,
            "reversal": self.reversal,
            "v_n": self.v_n,
            "v_reversal": self.v_reversal,
            "verdict": self.verdict.value,
            "failed_condition": self.failed_condition.value if self.failed_condition else None,
        }

    @classmethod
    def from_record(cls, rec: dict) -> VPalindromeReport:
        failed = rec["failed_condition"]
        return cls(
            n=rec["n"],
            base=rec["base"],
            reversal=rec["reversal"],
            v_n=rec["v_n"],
            v_reversal=rec["v_reversal"],
            verdict=Verdict(rec["verdict"]),
            failed_condition=FailedCondition(failed) if failed else None,
        )


def v_of_factorization(f: Factorization | dict[int, int]) -> int:
    """Sum of q over exponent-1 primes plus p + e over prime powers p^e, e >= 2."""
    pairs = f.items() if isinstance(f, dict) else f
    return sum(p if e == 1 else p + e for p, e in pairs)


def v_of(n: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None) -> int | None:
    """v(n), or None when factoring ``n`` exceeds the budget."""
    try:
        return v_of_factorization(factorize(n, budget, cache))
    except FactorizationIncomplete:
        return None


def is_v_palindrome(
    n: int, b: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> VPalindromeReport:
    check_base(b)
    if n < 1:
        raise PreconditionViolated(f"n must be positive, got {n}")
    r = reverse(n, b)
    if n % b == 0:
        return VPalindromeReport(n, b, r, None, None, Verdict.NO, FailedCondition.DIVISIBLE_BY_BASE)
    if n == r:
        return VPalindromeReport(n, b, r, None, None, Verdict.NO, FailedCondition.EQUALS_OWN_REVERSAL)
    vn = v_of(n, budget, cache)
    vr = v_of(r, budget, cache)
    if vn is None or vr is None:
        return VPalindromeReport(n, b, r, vn, vr, Verdict.UNKNOWN)
    if vn != vr:
        return VPalindromeReport(n, b, r, vn, vr, Verdict.NO, FailedCondition.V_MISMATCH)
    return VPalindromeReport(n, b, r, vn, vr, Verdict.YES)


def _members_in(b: int, lo: int, hi: int, budget: EffortBudget, cache: FactorCache | None) -> list[int]:
    members = []
    for n in range(lo, hi + 1):
        report = is_v_palindrome(n, b, budget, cache)
        if report.verdict is Verdict.UNKNOWN:
            raise UnknownVerdictInRange(n, b)
        if report.verdict is Verdict.YES:
            members.append(n)
    return members


def enumerate_v_palindromes(
    b: int,
    limit: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: FactorCache | None = None,
    workers: int = 1,
) -> list[int]:
    """All v-palindromes n <= limit in base b, ascending.

    With ``workers > 1`` the range is split into chunks scanned in separate
    processes; the shared cache is not used by workers.
    """
    check_base(b)
    if limit < 1:
        raise PreconditionViolated(f"limit must be positive, got {limit}")
    if workers <= 1 or limit < 1000:
        return _members_in(b, 1, limit, budget, cache)
    step = -(-limit // (workers * 4))
    bounds = [(lo, min(lo + step - 1, limit)) for lo in range(1, limit + 1, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_members_in, b, lo, hi, budget, None) for lo, hi in bounds]
        return [n for fut in futures for n in fut.result()]


def min_v_palindrome(
    b: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: FactorCache | None = None,
    ceiling: int = DEFAULT_SCAN_CEILING,
) -> int:
    check_base(b)
    for n in range(1, ceiling + 1):
        report = is_v_palindrome(n, b, budget, cache)
        if report.verdict is Verdict.UNKNOWN:
            raise UnknownVerdictInRange(n, b)
        if report.is_member:
            return n
    raise SearchCapExceeded(b, ceiling)


def gaps_between(members: list[int], limit: int) -> Iterator[tuple[int, int]]:
    """Maximal runs (start, length) of integers in [1, limit] missing from ``members``."""
    prev = 0
    for m in [*members, limit + 1]:
        if m - prev > 1:
            yield prev + 1, m - prev - 1
        prev = m


def longest_gap(
    b: int, limit: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> tuple[int, int]:
    """Leftmost longest run of consecutive non-members within [1, limit]."""
    return longest_gap_from_members(enumerate_v_palindromes(b, limit, budget, cache), limit)


def longest_gap_from_members(members: list[int], limit: int) -> tuple[int, int]:
    best = (1, 0)
    for start, length in gaps_between(members, limit):
        if length > best[1]:
            best = (start, length)
    return best


# --- base-ten families built on 18 --------------------------------------------


def is_zero_one_palindrome(rho: int) -> bool:
    s = str(rho)
    return rho >= 1 and set(s) <= {"0", "1"} and s == s[::-1]


def zero_one_palindromes(max_digits: int) -> Iterator[int]:
    """Every palindrome with decimal digits 0 and 1 and at most ``max_digits`` digits, ascending."""
    for length in range(1, max_digits + 1):
        half = (length + 1) // 2
        for tail in product("01", repeat=half - 1):
            left = "1" + "".join(tail)
            yield int(left + left[: length - half][::-1])


def repunit(length: int) -> int:
    return (10**length - 1) // 9


def family_18rho(
    rho: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> VPalindromeReport:
    if not is_zero_one_palindrome(rho):
        raise PreconditionViolated(f"rho must be a base-ten palindrome of 0s and 1s, got {rho}")
    return is_v_palindrome(18 * rho, 10, budget, cache)


def nines_family(count: int) -> list[int]:
    """18, 198, 1998, ... (18 times repunits)."""
    return [18 * repunit(length) for length in range(1, count + 1)]


def eighteen_concat_family(count: int) -> list[int]:
    """18, 1818, 181818, ..."""
    return [repeat_concat(18, k, 10) for k in range(1, count + 1)]

