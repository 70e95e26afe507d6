"""Two-digit v-palindromes from pairs m1 < m2 with v(m1) = v(m2).

If a*b + c = m1*t and c*b + a = m2*t with gcd(t, m1*m2) = 1, additivity of v
gives v((a c)_b) = v(m1) + v(t) = v(m2) + v(t) = v((c a)_b).  The default
pair is (5, 6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from vpal.digits import check_base
from vpal.errors import InternalInconsistency, PreconditionViolated, VPalError
from vpal.factorization import DEFAULT_BUDGET, EffortBudget, FactorCache
from vpal.vcore import Verdict, is_v_palindrome, v_of

DEFAULT_PAIR = (5, 6)


@dataclass(frozen=True)
class PermissibleTriple:
    a: int
    c: int
    t: int
    base: int
    pair: tuple[int, int] = DEFAULT_PAIR

    @property
    def number(self) -> int:
        """The two-digit number (a c)_base."""
        return self.a * self.base + self.c

    @property
    def reversal(self) -> int:
        return self.c * self.base + self.a

    def to_record(self) -> dict:
        return {"a": self.a, "c": self.c, "t": self.t, "base": self.base, "pair": list(self.pair), "number": self.number}

    @classmethod
    def from_record(cls, rec: dict) -> PermissibleTriple:
        return cls(rec["a"], rec["c"], rec["t"], rec["base"], tuple(rec["pair"]))


@dataclass(frozen=True)
class TripleCheck:
    ok: bool
    failed_clause: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_triple(tr: PermissibleTriple) -> TripleCheck:
    m1, m2 = tr.pair
    b = tr.base
    if b < 2:
        return TripleCheck(False, f"base {b} < 2")
    if not 0 < tr.a < tr.c < b:
        return TripleCheck(False, f"digits must satisfy 0 < a < c < b, got a={tr.a}, c={tr.c}, b={b}")
    if tr.t < 1:
        return TripleCheck(False, f"t must be positive, got {tr.t}")
    if tr.a * b + tr.c != m1 * tr.t:
        return TripleCheck(False, f"a*b + c = {tr.a * b + tr.c} != {m1}*t = {m1 * tr.t}")
    if tr.c * b + tr.a != m2 * tr.t:
        return TripleCheck(False, f"c*b + a = {tr.c * b + tr.a} != {m2}*t = {m2 * tr.t}")
    if math.gcd(tr.t, m1 * m2) != 1:
        return TripleCheck(False, f"gcd(t, {m1 * m2}) = {math.gcd(tr.t, m1 * m2)} != 1")
    return TripleCheck(True)


def _f_general(b: int, m1: int, m2: int) -> int:
    q = b * b - 1
    d1 = q // math.gcd(m1 * b - m2, q)
    d2 = q // math.gcd(m2 * b - m1, q)
    return math.lcm(d1, d2)


def f_of(b: int) -> int:
    """Smallest t making both t(5b-6)/(b^2-1) and t(6b-5)/(b^2-1) integers."""
    check_base(b)
    return _f_general(b, *DEFAULT_PAIR)


def _triples(b: int, m1: int, m2: int) -> list[PermissibleTriple]:
    q = b * b - 1
    step = _f_general(b, m1, m2)
    triples = []
    t = step
    # c < b  <=>  t*(m2*b - m1) < b*(b^2 - 1)
    while t * (m2 * b - m1) < b * q:
        if math.gcd(t, m1 * m2) == 1:
            triples.append(PermissibleTriple(t * (m1 * b - m2) // q, t * (m2 * b - m1) // q, t, b, (m1, m2)))
        t += step
    return triples


def permissible_triples(b: int) -> list[PermissibleTriple]:
    """Every permissible triple for base b, ordered by t."""
    check_base(b)
    return _triples(b, *DEFAULT_PAIR)


def coprimality_classes(b: int) -> bool:
    """gcd(b^2 - 1, 30) == 1, cross-checked against b = 0 mod 6 and b mod 5 in {0, 2, 3}."""
    check_base(b)
    by_gcd = math.gcd(b * b - 1, 30) == 1
    by_congruence = b % 6 == 0 and b % 5 in (0, 2, 3)
    if by_gcd != by_congruence:
        raise InternalInconsistency(f"b={b}: gcd test says {by_gcd}, congruence test says {by_congruence}")
    return by_gcd


class ConstructionFailed(VPalError):
    pass


def _confirm(tr: PermissibleTriple, budget: EffortBudget, cache: FactorCache | None) -> None:
    check = verify_triple(tr)
    if not check:
        raise ConstructionFailed(f"{tr} is not permissible: {check.failed_clause}")
    report = is_v_palindrome(tr.number, tr.base, budget, cache)
    if report.verdict is not Verdict.YES:
        raise ConstructionFailed(f"({tr.a} {tr.c})_{tr.base} = {tr.number} failed the predicate: {report}")


def theorem_construct(
    k: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> tuple[PermissibleTriple, int]:
    """The permissible triple for base 30k when k = 4 (mod 11), confirmed by the predicate."""
    if k < 1 or k % 11 != 4:
        raise PreconditionViolated(f"k must be a positive integer with k = 4 (mod 11), got {k}")
    base = 30 * k
    a, ra = divmod(150 * k - 6, 11)
    c, rc = divmod(180 * k - 5, 11)
    t, rt = divmod(900 * k * k - 1, 11)
    if ra or rc or rt:
        raise InternalInconsistency(f"non-exact division for k={k}")
    tr = PermissibleTriple(a, c, t, base)
    _confirm(tr, budget, cache)
    return tr, base


@dataclass(frozen=True)
class CorollaryBase:
    base: int
    triple: PermissibleTriple
    witness: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "witness", self.triple.number)


def corollary_bases(
    max_b: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> list[CorollaryBase]:
    """Bases b <= max_b with b = 120 (mod 330), each with its two-digit witness."""
    out = []
    for b in range(120, max_b + 1, 330):
        tr, base = theorem_construct(b // 30, budget, cache)
        out.append(CorollaryBase(base, tr))
    return out


def pair_search(
    b: int,
    m1: int,
    m2: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: FactorCache | None = None,
    confirm: bool = True,
) -> list[PermissibleTriple]:
    """Permissible triples for a general pair, each confirmed as a v-palindrome unless ``confirm`` is off."""
    check_base(b)
    if not 1 <= m1 < m2:
        raise PreconditionViolated(f"need 1 <= m1 < m2, got ({m1}, {m2})")
    if v_of(m1, budget) != v_of(m2, budget):
        raise PreconditionViolated(f"v({m1}) != v({m2})")
    if m1 * b <= m2:
        return []
    triples = _triples(b, m1, m2)
    if confirm:
        for tr in triples:
            _confirm(tr, budget, cache)
    return triples


def common_value_pairs(limit: int, budget: EffortBudget = DEFAULT_BUDGET) -> list[tuple[int, int]]:
    """All pairs m1 < m2 <= limit with v(m1) = v(m2)."""
    by_value: dict[int, list[int]] = {}
    for m in range(2, limit + 1):
        by_value.setdefault(v_of(m, budget), []).append(m)
    return sorted((x, y) for group in by_value.values() for i, x in enumerate(group) for y in group[i + 1 :])
