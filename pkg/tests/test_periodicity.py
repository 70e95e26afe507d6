import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from vpal.digits import repeat_concat, reverse
from vpal.errors import GcdInconsistency, NoPeriodFound, PreconditionViolated, ReconstructionMismatch
from vpal.periodicity import (
    IndicatorSeries,
    PeriodicDecomposition,
    analyze,
    compute_series,
    decompose,
    detect_period,
    divisors,
    exact_decomposition,
    indicator,
    infinitude_witnesses,
    mobius,
    mobius_decompose,
)


def sympy_v(n: int) -> int:
    return sum(p if e == 1 else p + e for p, e in sympy.factorint(n).items())


def sympy_indicator(n: int, b: int, k: int) -> int:
    """Full factorization of n(k)_b and its reversal; no shortcuts."""
    m = repeat_concat(n, k, b)
    r = reverse(m, b)
    return int(m % b != 0 and m != r and sympy_v(m) == sympy_v(r))


def series_of(values, n=1, base=2):
    return IndicatorSeries(n, base, list(values))


# --- indicator and series --------------------------------------------------------


@pytest.mark.parametrize("n, b, k, value", [(18, 10, 3, 1), (198, 10, 1, 1), (12, 10, 1, 0)])
def test_indicator_examples(n, b, k, value):
    assert indicator(n, b, k) == value


@pytest.mark.parametrize("n, b", [(20, 10), (121, 10), (5, 10), (0, 10)])
def test_indicator_precondition(n, b):
    with pytest.raises(PreconditionViolated):
        indicator(n, b, 1)


@pytest.mark.parametrize("n, b, K", [(13, 10, 8), (12, 10, 12), (17, 10, 8), (19, 10, 8), (22, 3, 10), (6, 4, 12)])
def test_series_matches_full_factorization(n, b, K):
    assert compute_series(n, b, K).values == [sympy_indicator(n, b, k) for k in range(1, K + 1)]


def test_first_hit_of_13_is_fifteen_copies():
    # 13 repeated 15 times is a 30-digit v-palindrome; no shorter repetition is
    assert [sympy_indicator(13, 10, k) for k in range(1, 16)] == [0] * 14 + [1]


def test_series_examples():
    assert compute_series(18, 10, 6).values == [1] * 6
    assert compute_series(12, 10, 1).values == [0]


def test_unknown_entries_counted():
    s = series_of([1, None, 1, 1])
    assert s.unknown_count == 1
    with pytest.raises(PreconditionViolated):
        detect_period(s)


# --- period detection and decomposition ------------------------------------------


def test_detect_period_examples():
    assert detect_period(series_of([1] * 6)).omega == 1
    assert detect_period(series_of([0, 1] * 4)).omega == 2
    assert detect_period(compute_series(18, 10, 6)).omega == 1


def test_detect_period_errors():
    with pytest.raises(NoPeriodFound):
        detect_period(series_of([0, 0, 0, 1]))
    # period 3 but I(1) != I(2) although gcd(1, 3) = gcd(2, 3)
    with pytest.raises(GcdInconsistency):
        detect_period(series_of([1, 0, 0] * 4))


def test_certificate_records_values_by_gcd():
    cert = detect_period(series_of([int(k % 3 != 0) for k in range(1, 13)]))
    assert cert.omega == 3
    assert cert.value_at_gcd == {1: 1, 3: 0}


@pytest.mark.parametrize(
    "values, omega, terms, omega0, c",
    [
        ([1] * 6, 1, ((1, 1),), 1, 1),
        ([int(k % 2 == 0) for k in range(1, 9)], 2, ((2, 1),), 2, 2),
        ([int(k % 3 != 0) for k in range(1, 10)], 3, ((1, 1), (3, -1)), 3, 1),
        ([0] * 5, 1, (), 1, math.inf),
    ],
)
def test_decompose_examples(values, omega, terms, omega0, c):
    d = decompose(series_of(values), omega)
    assert (d.terms, d.omega0, d.c) == (terms, omega0, c)


def test_decompose_rejects_non_period():
    with pytest.raises(GcdInconsistency):
        decompose(series_of([1, 0, 0, 1, 0, 0]), 3)
    with pytest.raises(GcdInconsistency):
        decompose(series_of([0, 1, 0, 0, 0, 1, 0, 0]), 2)
    with pytest.raises(PreconditionViolated):
        decompose(series_of([1, 1]), 3)


def test_reconstruction_is_checked(monkeypatch):
    import vpal.periodicity as mod

    monkeypatch.setattr(mod, "mobius_decompose", lambda table, omega: [(2, 1)])
    with pytest.raises(ReconstructionMismatch):
        decompose(series_of([1] * 4), 1)


def test_mobius_sanity():
    for m in range(1, 10**4 + 1):
        assert sum(mobius(d) for d in divisors(m)) == (1 if m == 1 else 0)


def test_mobius_matches_sympy():
    for m in range(1, 3000):
        assert mobius(m) == sympy.mobius(m)


@pytest.mark.parametrize("omega", range(1, 61))
def test_round_trip_uniqueness(omega):
    rng = random.Random(omega)
    divs = divisors(omega)
    for _ in range(5):
        # arbitrary integer terms supported on divisors of omega
        terms = sorted((a, rng.choice([-3, -2, -1, 1, 2, 3])) for a in divs if rng.random() < 0.5)
        table = {d: sum(lam for a, lam in terms if d % a == 0) for d in divs}
        assert mobius_decompose(table, omega) == terms
        # genuine 0/1 indicators: any function of gcd(k, omega)
        f = {d: rng.randint(0, 1) for d in divs}
        values = [f[math.gcd(k, omega)] for k in range(1, 2 * omega + 1)]
        d = decompose(series_of(values), omega)
        rebuilt = [d(k) for k in range(1, 2 * omega + 1)]
        assert rebuilt == values
        again = decompose(series_of(rebuilt), omega)
        assert again.terms == d.terms


def test_decomposition_record_round_trip():
    for d in [PeriodicDecomposition.from_terms([(1, 1), (3, -1)], window=24), PeriodicDecomposition.from_terms([])]:
        assert PeriodicDecomposition.from_record(d.to_record()) == d


def test_render():
    d = PeriodicDecomposition.from_terms([(1, 1), (3, -1)], window=24)
    assert d.render() == "I = +1·I_1 -1·I_3; omega0=3; c=1 (window-certified, K=24)"
    assert PeriodicDecomposition.from_terms([], exact=True).render() == "I = 0; omega0=1; c=inf (exact)"


# --- analyze ---------------------------------------------------------------------


def test_analyze_examples():
    _, d = analyze(18, 10, 6)
    assert (d.omega0, d.c) == (1, 1)
    series, d = analyze(12, 10, 12)
    assert series.values == [sympy_indicator(12, 10, k) for k in range(1, 13)]
    assert all(d(k) == v for k, v in enumerate(series.values, 1))
    _, d = analyze(198, 10, 4)
    assert d.c == 1


def test_analyze_doubles_window():
    series, d = analyze(13, 10, 24)
    assert series.K == 48
    assert (d.omega0, d.c) == (15, 15)


def test_analyze_gives_up_at_max_window():
    with pytest.raises(NoPeriodFound):
        analyze(1131, 10, 24)


SAMPLE = [(n, b) for b in (2, 3, 5, 10, 16) for n in range(1, 160) if n % b and reverse(n, b) != n]


@pytest.mark.parametrize("n, b", SAMPLE[::7])
def test_analyzed_properties(n, b):
    try:
        series, d = analyze(n, b)
    except NoPeriodFound:
        # only possible when the true period does not fit twice into the largest window
        assert exact_decomposition(n, b).omega0 > 48
        return
    values = series.values
    K = len(values)
    assert all(d(k) == values[k - 1] for k in range(1, K + 1))
    assert all(values[k - 1] == values[k - 1 + d.omega0] for k in range(1, K - d.omega0 + 1))
    if d.c != math.inf:
        assert all(v == 0 for v in values[: d.c - 1])
        assert values[d.c - 1] == 1
    assert all(d.omega0 % a == 0 for a, _ in d.terms)


# --- exact route ---------------------------------------------------------------


@pytest.mark.parametrize("n, b", SAMPLE[::5])
def test_exact_decomposition_matches_indicator(n, b):
    d = exact_decomposition(n, b)
    for k in range(1, 121):
        assert d(k) == indicator(n, b, k), k


@pytest.mark.parametrize("n, b", SAMPLE[::5])
def test_window_versus_exact(n, b):
    exact = exact_decomposition(n, b)
    if exact.omega0 <= 150:
        K = max(24, 2 * exact.omega0)
        _, window = analyze(n, b, K, max_window=K)
        assert window.terms == exact.terms
        assert (window.omega0, window.c) == (exact.omega0, exact.c)
        return
    # a window can only under-report: it agrees with the truth on 1..K, nowhere further is promised
    try:
        series, window = analyze(n, b)
    except NoPeriodFound:
        return
    assert window.omega0 < exact.omega0
    assert series.values == [exact(k) for k in range(1, series.K + 1)]


def test_exact_first_hits_beyond_window():
    d = exact_decomposition(17, 10)
    assert d.c == 280
    assert indicator(17, 10, 280) == 1
    assert all(indicator(17, 10, k) == 0 for k in range(1, 280))
    d = exact_decomposition(13, 10)
    assert (d.c, d.omega0) == (15, 6045)
    for k in (15, 195, 465, 585, 6045, 6060, 12090):
        assert indicator(13, 10, k) == d(k), k


def test_exact_at_large_k_spot_checks():
    for n, b in [(13, 10), (17, 10), (19, 10), (1131, 10)]:
        d = exact_decomposition(n, b)
        for k in sorted({a for a, _ in d.terms if a < 3000} | {1, 2, 30, 693}):
            assert d(k) == indicator(n, b, k), (n, k)


# --- witnesses -------------------------------------------------------------------


def test_witness_examples():
    assert infinitude_witnesses(18, 10, 3) == [18, 1818, 181818]
    assert infinitude_witnesses(18, 10, 0) == []
    w = infinitude_witnesses(198, 10, 2)
    assert w == [198, 198198]
    for m in w:
        assert sympy_v(m) == sympy_v(reverse(m, 10))


def test_witnesses_of_base_twelve_member():
    w = infinitude_witnesses(22, 12, 4)
    assert len(w) == 4
    for m in w:
        assert sympy_v(m) == sympy_v(reverse(m, 12))


def test_witness_precondition():
    with pytest.raises(PreconditionViolated):
        infinitude_witnesses(12, 10, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5000), st.sampled_from([2, 3, 7, 10, 12]), st.integers(1, 40))
def test_indicator_matches_predicate_on_concat(n, b, k):
    from vpal.vcore import is_v_palindrome

    if n % b == 0 or reverse(n, b) == n or k * len(str(n)) > 60:
        return
    assert indicator(n, b, k) == int(is_v_palindrome(repeat_concat(n, k, b), b).is_member)
