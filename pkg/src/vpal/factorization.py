"""Primality testing and bounded-effort integer factorization.

Primality
---------
``is_prime`` runs Miller-Rabin with the first thirteen prime bases, which is
a proof of primality for every n below 3.317e24 (Sorenson & Webster 2015).
Above that bound it runs Baillie-PSW (strong base-2 Miller-Rabin followed by
a strong Lucas test with Selfridge parameters).  No composite passing BPSW is
known; the toolkit treats BPSW as exact.

Factorization
-------------
``factorize`` climbs a ladder: trial division up to
``EffortBudget.trial_division_bound``, perfect-power extraction, then
Pollard-Brent rho sharing one iteration counter across the whole call.  When
the iteration or wall-clock cap runs out it raises
``FactorizationIncomplete`` carrying everything found so far.
"""

from __future__ import annotations

import logging
import os
import random
import threading
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt, prod
from pathlib import Path
from typing import Iterator

from vpal.errors import VPalError

log = logging.getLogger(__name__)

CACHE_ENV_VAR = "VPAL_CACHE"

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
# after trial division passes this prime, a primality test on the cofactor
# usually ends the loop early
_EARLY_PRIMALITY_CHECK = 1000


@dataclass(frozen=True)
class EffortBudget:
    trial_division_bound: int = 10**6
    pollard_iteration_cap: int = 10**7
    overall_time_cap: float = 10.0  # seconds per integer

    def __post_init__(self) -> None:
        if self.trial_division_bound <= 0 or self.pollard_iteration_cap <= 0 or self.overall_time_cap <= 0:
            raise ValueError(f"all budget components must be positive: {self}")


DEFAULT_BUDGET = EffortBudget()


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs with strictly increasing primes.

    The empty tuple is the factorization of 1.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            prev = p

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> Factorization:
        return cls(tuple(sorted((p, e) for p, e in mapping.items() if e > 0)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def value(self) -> int:
        return prod(p**e for p, e in self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


class FactorizationIncomplete(VPalError):
    """Budget ran out; ``partial`` times ``cofactor`` equals ``n``."""

    def __init__(self, n: int, partial: Factorization, cofactor: int) -> None:
        super().__init__(f"could not finish factoring {n}: unfactored cofactor {cofactor}")
        self.n = n
        self.partial = partial
        self.cofactor = cofactor


# --- primality ---------------------------------------------------------------


def _miller_rabin(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    # Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1
    d_param = 5
    while True:
        j = _jacobi(d_param, n)
        if j == -1:
            break
        if j == 0 and abs(d_param) != n:
            return False
        d_param = -d_param - 2 if d_param > 0 else -d_param + 2
    p_param, q_param = 1, (1 - d_param) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    u, v, qk = 1, p_param % n, q_param % n
    for bit in bin(d)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p_param * u + v) % n, (d_param * u + p_param * v) % n
            if u % 2:
                u += n
            if v % 2:
                v += n
            u, v = u // 2, v // 2
            qk = qk * q_param % n

    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 53 * 53:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, a, d, s) for a in _MR_BASES)
    if not _miller_rabin(n, 2, d, s):
        return False
    r = isqrt(n)
    if r * r == n:
        return False
    return _strong_lucas(n)


# --- factoring ladder --------------------------------------------------------


@lru_cache(maxsize=4)
def primes_up_to(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        r = _integer_root(n, k)
        if r < 2:
            break
        if r**k == n:
            return r, k
    return None


class _Effort:
    def __init__(self, budget: EffortBudget) -> None:
        self.iterations_left = budget.pollard_iteration_cap
        self.deadline = time.monotonic() + budget.overall_time_cap

    def spend(self, iterations: int) -> bool:
        self.iterations_left -= iterations
        return self.iterations_left > 0 and time.monotonic() < self.deadline


def _brent(n: int, effort: _Effort, rng: random.Random) -> int | None:
    """A nontrivial factor of the odd composite n, or None when effort runs out."""
    batch = 128
    while effort.iterations_left > 0:
        y, c = rng.randrange(1, n), rng.randrange(1, n)
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            if not effort.spend(r):
                return None
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(batch, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += steps
                if g == 1 and not effort.spend(steps):
                    return None
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def _trial_divide(m: int, bound: int, found: Counter[int]) -> int:
    checked_primality = False
    for p in primes_up_to(bound):
        if p * p > m:
            break
        if m % p == 0:
            while m % p == 0:
                m //= p
                found[p] += 1
        elif not checked_primality and p > _EARLY_PRIMALITY_CHECK:
            checked_primality = True
            if is_prime(m):
                break
    return m


def factorize(n: int, budget: EffortBudget = DEFAULT_BUDGET, cache: FactorCache | None = None) -> Factorization:
    """Factor ``n`` completely or raise ``FactorizationIncomplete``.

    Pollard-rho seeds derive from ``n``, so results are reproducible.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    found: Counter[int] = Counter()
    pending = n
    if cache is not None:
        hit = cache.lookup(n)
        if hit is not None:
            known, cofactor = hit
            if cofactor == 1:
                return known
            found.update(known.as_dict())
            pending = cofactor

    pending = _trial_divide(pending, budget.trial_division_bound, found)
    effort = _Effort(budget)
    rng = random.Random(n)
    stack = [pending] if pending > 1 else []
    stuck: list[int] = []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found[m] += 1
            continue
        power = _perfect_power(m)
        if power is not None:
            root, k = power
            stack.extend([root] * k)
            continue
        d = _brent(m, effort, rng)
        if d is None:
            stuck.append(m)
        else:
            stack.extend((d, m // d))

    result = Factorization.from_mapping(found)
    cofactor = prod(stuck)
    if cache is not None:
        cache.store(n, result, cofactor)
    if stuck:
        log.debug("factorization of %d incomplete, cofactor %d", n, cofactor)
        raise FactorizationIncomplete(n, result, cofactor)
    return result


# --- cache -------------------------------------------------------------------


def format_cache_line(n: int, factors: Factorization, cofactor: int = 1) -> str:
    parts = [str(n)] + [f"{p}^{e}" for p, e in factors]
    if cofactor != 1:
        parts += ["+", f"{cofactor}?"]
    return " ".join(parts)


def parse_cache_line(line: str) -> tuple[int, Factorization, int]:
    tokens = line.split()
    if not tokens:
        raise ValueError("empty cache line")
    n = int(tokens[0])
    mapping: dict[int, int] = {}
    cofactor = 1
    rest = tokens[1:]
    if len(rest) >= 2 and rest[-2] == "+" and rest[-1].endswith("?"):
        cofactor = int(rest[-1][:-1])
        rest = rest[:-2]
    for tok in rest:
        p, _, e = tok.partition("^")
        mapping[int(p)] = int(e)
    factors = Factorization.from_mapping(mapping)
    if factors.value() * cofactor != n:
        raise ValueError(f"cache line does not multiply out: {line!r}")
    return n, factors, cofactor


@dataclass
class FactorCache:
    """Factorizations keyed by integer, optionally persisted as an append-only text file.

    Only integers with at least ``persist_min_digits`` decimal digits go to
    disk; smaller ones are cheaper to refactor than to look up.  Reads are
    lock-free; writes are serialized.
    """

    path: Path | None = None
    persist_min_digits: int = 13
    _entries: dict[int, tuple[Factorization, int]] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self) -> None:
        if self.path is not None:
            self.path = Path(self.path)
            if self.path.exists():
                self._load()

    @classmethod
    def from_env(cls) -> FactorCache:
        path = os.environ.get(CACHE_ENV_VAR)
        return cls(Path(path) if path else None)

    def _load(self) -> None:
        assert self.path is not None
        with self.path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    n, factors, cofactor = parse_cache_line(line)
                except ValueError:
                    log.warning("%s:%d: skipping malformed cache line", self.path, lineno)
                    continue
                self._keep(n, factors, cofactor)

    def _keep(self, n: int, factors: Factorization, cofactor: int) -> bool:
        old = self._entries.get(n)
        # never let a partial result overwrite a more complete one
        if old is not None and old[1] <= cofactor:
            return False
        self._entries[n] = (factors, cofactor)
        return True

    def lookup(self, n: int) -> tuple[Factorization, int] | None:
        return self._entries.get(n)

    def store(self, n: int, factors: Factorization, cofactor: int = 1) -> None:
        with self._lock:
            if not self._keep(n, factors, cofactor):
                return
            if self.path is not None and len(str(n)) >= self.persist_min_digits:
                with self.path.open("a", encoding="utf-8", newline="\n") as fh:
                    fh.write(format_cache_line(n, factors, cofactor) + "\n")

    def __len__(self) -> int:
        return len(self._entries)
