import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_is_vpal
from vpal.digits import reverse
from vpal.errors import PreconditionViolated, SearchCapExceeded, UnknownVerdictInRange
from vpal.factorization import EffortBudget
from vpal.vcore import (
    FailedCondition,
    Verdict,
    VPalindromeReport,
    eighteen_concat_family,
    enumerate_v_palindromes,
    family_18rho,
    gaps_between,
    is_v_palindrome,
    longest_gap,
    min_v_palindrome,
    nines_family,
    v_of,
    zero_one_palindromes,
)

TINY = EffortBudget(trial_division_bound=2, pollard_iteration_cap=1, overall_time_cap=1.0)


@pytest.mark.parametrize("n, v", [(198, 18), (891, 18), (1, 0), (5, 5), (6, 5)])
def test_v_examples(n, v):
    assert v_of(n) == v


def test_v_additive_on_coprime_pairs():
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        m = rng.randrange(1, 10**5)
        n = rng.randrange(1, 10**9 // m + 1)
        if math.gcd(m, n) != 1:
            continue
        assert v_of(m * n) == v_of(m) + v_of(n)
        checked += 1


def test_v_of_primes_and_prime_powers():
    for p in sympy.primerange(2, 10**4):
        assert v_of(p) == p
    for p in sympy.primerange(2, 100):
        for e in range(2, 11):
            assert v_of(p**e) == p + e


def test_common_values():
    assert v_of(5) == v_of(6) == v_of(8) == v_of(9)
    assert v_of(7) == v_of(10) == v_of(12) == v_of(18)


def test_v_unknown_on_exhausted_budget():
    assert v_of(35, TINY) is None


def test_report_yes():
    report = is_v_palindrome(198, 10)
    assert report == VPalindromeReport(198, 10, 891, 18, 18, Verdict.YES, None)
    assert report.is_member
    assert is_v_palindrome(63, 13).verdict is Verdict.YES


def test_report_failed_conditions():
    r = is_v_palindrome(200, 10)
    assert (r.verdict, r.failed_condition) == (Verdict.NO, FailedCondition.DIVISIBLE_BY_BASE)
    assert r.v_n is None
    r = is_v_palindrome(121, 10)
    assert (r.verdict, r.failed_condition) == (Verdict.NO, FailedCondition.EQUALS_OWN_REVERSAL)
    r = is_v_palindrome(12, 10)
    assert (r.verdict, r.failed_condition, r.v_n, r.v_reversal) == (Verdict.NO, FailedCondition.V_MISMATCH, 7, 10)


def test_single_digits_never_members():
    for b in range(2, 20):
        for n in range(1, b):
            assert is_v_palindrome(n, b).failed_condition is FailedCondition.EQUALS_OWN_REVERSAL


def test_unknown_verdict():
    r = is_v_palindrome(35, 10, TINY)
    assert r.verdict is Verdict.UNKNOWN
    assert r.failed_condition is None


def test_report_record_round_trip():
    for n in (198, 200, 121, 12):
        r = is_v_palindrome(n, 10)
        assert VPalindromeReport.from_record(r.to_record()) == r


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**7), st.integers(2, 40))
def test_symmetry_under_reversal(n, b):
    r = reverse(n, b)
    if n % b and r % b:
        assert is_v_palindrome(n, b).verdict == is_v_palindrome(r, b).verdict


def test_enumerate_examples():
    assert enumerate_v_palindromes(10, 18) == [18]
    assert enumerate_v_palindromes(2, 174) == []
    brute = [n for n in range(1, 201) if naive_is_vpal(n, 10)]
    assert enumerate_v_palindromes(10, 200) == brute
    # 81 = 3^4 has v = 7 = v(18), so it sits between 18 and 198
    assert brute[:3] == [18, 81, 198]


def test_enumerate_partition_independent():
    assert enumerate_v_palindromes(10, 5000, workers=3) == enumerate_v_palindromes(10, 5000)


def test_enumerate_aborts_on_unknown():
    with pytest.raises(UnknownVerdictInRange) as info:
        enumerate_v_palindromes(10, 100, TINY)
    assert info.value.n == 12  # reversal 21 = 3*7 is the first composite past trial division by 2


@pytest.mark.parametrize("b, m", [(4, 6), (17, 581), (19, 144)])
def test_min_v_palindrome(b, m):
    assert min_v_palindrome(b) == m


def test_min_v_palindrome_cap():
    with pytest.raises(SearchCapExceeded):
        min_v_palindrome(3, ceiling=1000)


def test_longest_gap():
    start, length = longest_gap(10, 600)
    assert (start, length) == (199, 377)
    assert longest_gap(10, 18) == (1, 17)
    assert longest_gap(2, 100) == (1, 100)


def test_gaps_between():
    assert list(gaps_between([3, 4, 9], 10)) == [(1, 2), (5, 4), (10, 1)]
    assert list(gaps_between([], 5)) == [(1, 5)]


@pytest.mark.parametrize("rho, n", [(11, 198), (101, 1818), (1001, 18018)])
def test_family_18rho_examples(rho, n):
    report = family_18rho(rho)
    assert report.n == n
    assert report.verdict is Verdict.YES


@pytest.mark.parametrize("rho", [12, 110, 0, 1021])
def test_family_18rho_precondition(rho):
    with pytest.raises(PreconditionViolated):
        family_18rho(rho)


def test_zero_one_palindromes():
    assert list(zero_one_palindromes(5)) == [1, 11, 101, 111, 1001, 1111, 10001, 10101, 11011, 11111]
    brute = [n for n in range(1, 10**6) if set(str(n)) <= {"0", "1"} and str(n) == str(n)[::-1]]
    assert list(zero_one_palindromes(6)) == brute


def test_family_generators():
    assert nines_family(4) == [18, 198, 1998, 19998]
    assert eighteen_concat_family(3) == [18, 1818, 181818]


def test_oracle_agreement_small():
    for b in range(2, 20):
        for n in range(1, 2001):
            assert is_v_palindrome(n, b).is_member == naive_is_vpal(n, b), (n, b)
