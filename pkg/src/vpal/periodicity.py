"""Periodicity of v-palindromes among repeated concatenations.

For fixed n and b, I(k) records whether n(k)_b is a v-palindrome.  I is
periodic and equals a unique integer combination of divisor indicators
I_a(k) = [a | k].  This module computes I on a finite window, finds the
smallest period that fits the window, and recovers the combination by
Möbius inversion over the divisors of that period.  Periods found this
way are certified on the window only.

Membership of n(k)_b is decided without factoring the repunit part
R = (b^(Lk) - 1)/(b^L - 1).  Because n(k)_b = n*R and its reversal is
r_b(n)*R, write R = A*C with A built from primes dividing n*r_b(n) and C
coprime to both.  v is additive, so v(C) cancels from both sides and only
v(n*A) and v(r_b(n)*A) need comparing.  This needs factorizations of n and
r_b(n) alone, plus p-adic valuations of R.

The same reduction yields ``exact_decomposition``.  With B = b^L, the
valuation of R at an odd prime p not dividing b is zero unless
o = ord_p(B) divides k, and then grows like v_p(k) (lifting the exponent);
p = 2 behaves likewise with modulus 8.  Past exponent 2 a prime's
contribution to v(n*A) - v(r_b(n)*A) is constant, so I(k) depends only on
gcd(k, M) for M = lcm(o * p^2).  Evaluating I at the divisors of M and
inverting gives the decomposition with a proven period instead of a
window-certified one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from vpal.digits import check_base, digit_length, repeat_concat, reverse
from vpal.errors import (
    GcdInconsistency,
    NoPeriodFound,
    PreconditionViolated,
    ReconstructionMismatch,
    WitnessVerificationFailed,
)
from vpal.factorization import (
    DEFAULT_BUDGET,
    EffortBudget,
    FactorCache,
    FactorizationIncomplete,
    factorize,
)
from vpal.vcore import Verdict, is_v_palindrome, v_of_factorization

DEFAULT_WINDOW = 24
MAX_WINDOW = 96


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


@dataclass
class IndicatorSeries:
    n: int
    base: int
    values: list[int | None] = field(default_factory=list)  # values[k - 1]

    @property
    def K(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int | None:
        if k < 1:
            raise IndexError(k)
        return self.values[k - 1]

    @property
    def unknown_count(self) -> int:
        return sum(v is None for v in self.values)

    def to_record(self) -> dict:
        return {"n": self.n, "base": self.base, "K": self.K, "values": list(self.values)}


@dataclass(frozen=True)
class PeriodicDecomposition:
    terms: tuple[tuple[int, int], ...]  # (a, lambda), a strictly increasing
    omega0: int
    c: int | float  # math.inf when there are no terms
    window: int = 0
    exact: bool = False

    @classmethod
    def from_terms(cls, terms, window: int = 0, exact: bool = False) -> PeriodicDecomposition:
        terms = tuple(sorted((a, lam) for a, lam in terms if lam != 0))
        return cls(
            terms=terms,
            omega0=_lcm(a for a, _ in terms),
            c=terms[0][0] if terms else math.inf,
            window=window,
            exact=exact,
        )

    def __call__(self, k: int) -> int:
        return sum(lam for a, lam in self.terms if k % a == 0)

    def render(self) -> str:
        body = " ".join(f"{lam:+d}·I_{a}" for a, lam in self.terms) or "0"
        c = "inf" if self.c == math.inf else str(self.c)
        label = "exact" if self.exact else f"window-certified, K={self.window}"
        return f"I = {body}; omega0={self.omega0}; c={c} ({label})"

    def to_record(self) -> dict:
        return {
            "terms": [list(t) for t in self.terms],
            "omega0": self.omega0,
            "c": "inf" if self.c == math.inf else self.c,
            "window": self.window,
            "exact": self.exact,
        }

    @classmethod
    def from_record(cls, rec: dict) -> PeriodicDecomposition:
        c = math.inf if rec["c"] == "inf" else rec["c"]
        return cls(tuple(tuple(t) for t in rec["terms"]), rec["omega0"], c, rec["window"], rec["exact"])


@dataclass(frozen=True)
class PeriodCertificate:
    """A window period together with the value I takes for each gcd(k, omega)."""

    omega: int
    value_at_gcd: dict[int, int]


def _check_hypotheses(n: int, b: int) -> int:
    check_base(b)
    if n < 1:
        raise PreconditionViolated(f"n must be positive, got {n}")
    if n % b == 0:
        raise PreconditionViolated(f"{n} is divisible by the base {b}")
    r = reverse(n, b)
    if r == n:
        raise PreconditionViolated(f"{n} is a palindrome in base {b}")
    return r


def _valuation(m: int, p: int) -> int:
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def indicator(
    n: int, b: int, k: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> int | None:
    """1 if n(k)_b is a v-palindrome in base b, 0 if not, None if factoring n or r_b(n) failed."""
    r = _check_hypotheses(n, b)
    if k < 1:
        raise PreconditionViolated(f"k must be positive, got {k}")
    try:
        fn = factorize(n, budget, cache).as_dict()
        fr = factorize(r, budget, cache).as_dict()
    except FactorizationIncomplete:
        return None
    block = b ** digit_length(n, b)
    repunit_part = (block**k - 1) // (block - 1)
    for p in set(fn) | set(fr):
        e = _valuation(repunit_part, p)
        if e:
            fn[p] = fn.get(p, 0) + e
            fr[p] = fr.get(p, 0) + e
    return int(v_of_factorization(fn) == v_of_factorization(fr))


def _extend(series: IndicatorSeries, K: int, budget: EffortBudget, cache: FactorCache | None) -> None:
    for k in range(series.K + 1, K + 1):
        series.values.append(indicator(series.n, series.base, k, budget, cache))


def compute_series(
    n: int, b: int, K: int = DEFAULT_WINDOW, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> IndicatorSeries:
    _check_hypotheses(n, b)
    if K < 1:
        raise PreconditionViolated(f"window K must be positive, got {K}")
    series = IndicatorSeries(n, b)
    _extend(series, K, budget, cache)
    return series


def _values_by_gcd(values: list[int], omega: int) -> dict[int, int] | None:
    seen: dict[int, int] = {}
    for k, value in enumerate(values, 1):
        g = math.gcd(k, omega)
        if seen.setdefault(g, value) != value:
            return None
    return seen


def detect_period(series: IndicatorSeries) -> PeriodCertificate:
    """Smallest omega <= K/2 with I(k) = I(k + omega) across the window."""
    if series.unknown_count:
        raise PreconditionViolated(f"series has {series.unknown_count} unknown entries; period detection needs all")
    values = series.values
    K = len(values)
    for omega in range(1, K // 2 + 1):
        if all(values[i] == values[i + omega] for i in range(K - omega)):
            by_gcd = _values_by_gcd(values, omega)
            if by_gcd is None:
                raise GcdInconsistency(
                    f"window period {omega} of I for n={series.n}, b={series.base} "
                    "does not make I a function of gcd(k, omega)"
                )
            return PeriodCertificate(omega, by_gcd)
    raise NoPeriodFound(f"no period <= {K // 2} fits the window K={K} for n={series.n}, b={series.base}")


def mobius_decompose(value_at_divisor: dict[int, int], omega: int) -> list[tuple[int, int]]:
    """Invert F(d) = sum over a | d of lambda_a on the divisors of omega; returns nonzero (a, lambda)."""
    terms = []
    for d in divisors(omega):
        lam = sum(mobius(d // e) * value_at_divisor[e] for e in divisors(d))
        if lam:
            terms.append((d, lam))
    return terms


def decompose(series: IndicatorSeries, omega: int) -> PeriodicDecomposition:
    if series.unknown_count:
        raise PreconditionViolated("cannot decompose a series with unknown entries")
    if omega < 1 or omega > series.K:
        raise PreconditionViolated(f"omega={omega} must lie in [1, K={series.K}]")
    values = series.values
    by_gcd = _values_by_gcd(values, omega)
    if by_gcd is None:
        raise GcdInconsistency(f"I is not a function of gcd(k, {omega}) on the window")
    # F(d) is read at k = d, which has gcd(d, omega) = d
    terms = mobius_decompose({d: values[d - 1] for d in divisors(omega)}, omega)
    result = PeriodicDecomposition.from_terms(terms, window=series.K)
    for k, value in enumerate(values, 1):
        if result(k) != value:
            raise ReconstructionMismatch(f"decomposition disagrees with the series at k={k}")
    return result


def analyze(
    n: int,
    b: int,
    K: int = DEFAULT_WINDOW,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: FactorCache | None = None,
    max_window: int = MAX_WINDOW,
) -> tuple[IndicatorSeries, PeriodicDecomposition]:
    """Series, window period and decomposition; the window doubles on NoPeriodFound up to ``max_window``."""
    series = compute_series(n, b, K, budget, cache)
    while True:
        if series.unknown_count:
            raise PreconditionViolated(
                f"{series.unknown_count} entries of I for n={n}, b={b} are unknown; raise the factoring budget"
            )
        try:
            cert = detect_period(series)
            break
        except NoPeriodFound:
            if series.K * 2 > max(max_window, K):
                raise
            _extend(series, series.K * 2, budget, cache)
    return series, decompose(series, cert.omega)


def infinitude_witnesses(
    n: int,
    b: int,
    count: int,
    budget: EffortBudget = DEFAULT_BUDGET,
    cache: FactorCache | None = None,
    K: int = DEFAULT_WINDOW,
) -> list[int]:
    """n(1)_b, n(1 + omega)_b, n(1 + 2 omega)_b, ... each checked for membership."""
    if count < 0:
        raise PreconditionViolated(f"count must be nonnegative, got {count}")
    if count == 0:
        return []
    if is_v_palindrome(n, b, budget, cache).verdict is not Verdict.YES:
        raise PreconditionViolated(f"{n} is not a v-palindrome in base {b}")
    _, decomposition = analyze(n, b, K, budget, cache)
    omega = decomposition.omega0
    witnesses = []
    for j in range(count):
        k = 1 + j * omega
        if indicator(n, b, k, budget, cache) != 1:
            raise WitnessVerificationFailed(f"n({k})_{b} is not a v-palindrome; window period {omega} is wrong")
        witnesses.append(repeat_concat(n, k, b))
    return witnesses


# --- exact route ---------------------------------------------------------------


def _multiplicative_order(x: int, p: int, budget: EffortBudget) -> int:
    order = p - 1
    for q, _ in factorize(p - 1, budget):
        while order % q == 0 and pow(x, order // q, p) == 1:
            order //= q
    return order


def _valuation_of_power_minus_one(x: int, e: int, p: int) -> int:
    """v_p(x^e - 1) for x^e != 1."""
    precision = 8
    while True:
        residue = (pow(x, e, p**precision) - 1) % p**precision
        if residue:
            return _valuation(residue, p)
        precision *= 2


@dataclass(frozen=True)
class _RepunitPrime:
    """Closed form for k -> v_p((B^k - 1)/(B - 1))."""

    p: int
    order: int  # 0 when p | B, so the valuation is always 0
    offset: int

    def valuation(self, k: int) -> int:
        if self.order == 0 or k % self.order:
            return 0
        return self.offset + _valuation(k, self.p)

    def modulus(self) -> int:
        if self.order == 0:
            return 1
        return self.order * (8 if self.p == 2 else self.p**2)


def _repunit_prime(p: int, block: int, budget: EffortBudget) -> _RepunitPrime:
    if block % p == 0:
        return _RepunitPrime(p, 0, 0)
    if p == 2:
        # v_2(B^k - 1) - v_2(B - 1) = v_2(B + 1) + v_2(k) - 1 for even k, 0 for odd k
        return _RepunitPrime(2, 2, _valuation(block + 1, 2) - 1)
    order = _multiplicative_order(block % p, p, budget)
    offset = _valuation_of_power_minus_one(block, order, p) - _valuation(block - 1, p)
    return _RepunitPrime(p, order, offset)


def _indicator_from_closed_form(fn: dict[int, int], fr: dict[int, int], primes: list[_RepunitPrime], k: int) -> int:
    fn, fr = dict(fn), dict(fr)
    for rp in primes:
        e = rp.valuation(k)
        if e:
            fn[rp.p] = fn.get(rp.p, 0) + e
            fr[rp.p] = fr.get(rp.p, 0) + e
    return int(v_of_factorization(fn) == v_of_factorization(fr))


def _inverse_zeta(values: dict[int, int], prime_powers: list[tuple[int, int]]) -> dict[int, int]:
    """Möbius inversion on the divisor lattice, one prime at a time."""
    lam = dict(values)
    for q, _ in prime_powers:
        # descending order: lam[d // q] still holds the previous pass
        for d in sorted(lam, reverse=True):
            if d % q == 0:
                lam[d] -= lam[d // q]
    return lam


def exact_decomposition(
    n: int, b: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None
) -> PeriodicDecomposition:
    """The decomposition of I with a proven period, from multiplicative orders.

    Raises ``FactorizationIncomplete`` if n, r_b(n) or some p - 1 cannot be factored.
    """
    r = _check_hypotheses(n, b)
    fn = factorize(n, budget, cache).as_dict()
    fr = factorize(r, budget, cache).as_dict()
    block = b ** digit_length(n, b)
    primes = [_repunit_prime(p, block, budget) for p in sorted(set(fn) | set(fr))]
    modulus = _lcm(rp.modulus() for rp in primes)
    prime_powers = list(factorize(modulus, budget))

    divs = [1]
    for q, e in prime_powers:
        divs = [d * q**i for d in divs for i in range(e + 1)]
    values = {d: _indicator_from_closed_form(fn, fr, primes, d) for d in divs}
    lam = _inverse_zeta(values, prime_powers)
    return PeriodicDecomposition.from_terms(((a, x) for a, x in lam.items() if x), exact=True)
