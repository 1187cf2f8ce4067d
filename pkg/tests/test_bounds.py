from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crcodes.bounds import (
    BoundInconsistency,
    BoundResult,
    NormalizedParams,
    _combine,
    ar_interval,
    ar_lower_bounds,
    ar_upper_bounds,
    as_bounds,
    asymptotic_ar,
    asymptotic_as,
    best_lower,
    finite_rate,
)
from crcodes.rank import CountingContext, count_rank, gaussian

GRID = [
    (q, m, n, d, r)
    for q in (2, 3)
    for m, n in product(range(1, 5), repeat=2)
    for r in range(0, 5)
    for d in range(1, 10)
]


def by_source(bounds):
    return {b.source: b.value for b in bounds}


# -- constant-dimension bounds --


def test_as_bounds_examples():
    iv = as_bounds(2, 4, 2, 2)
    assert (iv.lower, iv.upper) == (4, 5)
    assert as_bounds(2, 5, 3, 2).upper == 1 and as_bounds(2, 5, 3, 2).exact
    iv = as_bounds(2, 4, 1, 2)
    assert iv.exact and iv.lower == gaussian(4, 2, 2)


@pytest.mark.parametrize("q,n,d", [(2, 6, 2), (2, 7, 2), (3, 5, 2), (2, 8, 3)])
def test_as_bounds_symmetric_in_dimension(q, n, d):
    for r in range(n + 1):
        assert as_bounds(q, n, d, r) == as_bounds(q, n, d, n - r)


# -- constant-rank bounds: examples --


def test_lower_bound_examples():
    assert by_source(ar_lower_bounds(2, 3, 3, 2, 2))["bassalygo-elias"] == 37
    assert by_source(ar_lower_bounds(2, 2, 2, 2, 2))["mrd-slice"] == 3
    (only,) = ar_lower_bounds(2, 3, 3, 1, 2)
    assert only.kind == "exact" and only.value == count_rank(2, CountingContext(2, 3, 3))


def test_upper_bound_examples():
    assert by_source(ar_upper_bounds(2, 2, 2, 2, 2))["singleton-minus-zero"] == 3
    assert by_source(ar_upper_bounds(2, 3, 3, 3, 2))["els-count"] == 7


def test_interval_examples():
    iv = ar_interval(2, 2, 2, 2, 2)
    assert iv.exact and iv.lower == 3
    iv = ar_interval(2, 4, 4, 2, 1)
    assert iv.exact and iv.lower == 15 and iv.lower_source == "exact-d2-r1"
    assert ar_interval(2, 4, 4, 5, 2).upper == 1
    iv = ar_interval(2, 3, 3, 2, 2)
    assert iv.exact and iv.lower == 49


def test_every_a_is_reported():
    sources = by_source(ar_upper_bounds(2, 4, 4, 3, 2))
    assert {f"singleton-minus-lower-shells[a={a}]" for a in range(3)} <= set(sources)


def _length_chain(q, m, n, r):
    """Upper bound for d = r from the drop-a-coordinate recursion alone, seeded at n = r."""
    value = q ** (m * (r - r + 1)) - 1  # Singleton minus the zero word at n = r = d
    for k in range(r + 1, n + 1):
        value = value * (q**k - 1) // (q ** (k - r) - 1)
    return value


@pytest.mark.parametrize("q,m,n,r", [(2, 3, 3, 2), (2, 4, 4, 2), (3, 3, 3, 1), (2, 5, 4, 3), (2, 4, 4, 1)])
def test_length_recursion_reproduces_d_equals_r_formula(q, m, n, r):
    assert _length_chain(q, m, n, r) == gaussian(n, r, q) * (q**m - 1)


def test_length_recursion_records_its_chain():
    johnson = [b for b in ar_upper_bounds(2, 3, 3, 2, 1) if b.source == "johnson-length"]
    assert johnson and johnson[0].chain
    assert johnson[0].chain[0].startswith("A_R(2^3,2,2,1)")


def test_square_recursion():
    sources = by_source(ar_upper_bounds(2, 3, 3, 2, 3))
    # A_R(4, 2, 2, 2) = 3, then times q^(m-1)(q^m - 1) = 4 * 7
    assert sources["johnson-square"] == 3 * 4 * 7


# -- invariants on the full desk grid --


@pytest.mark.parametrize("point", GRID, ids=lambda p: "-".join(map(str, p)))
def test_every_lower_below_every_upper(point):
    lowers = ar_lower_bounds(*point)
    uppers = ar_upper_bounds(*point)
    lo = max(b.value for b in lowers)
    hi = min(b.value for b in uppers)
    assert lo <= hi
    for b in lowers + uppers:
        if b.kind == "exact":
            assert all(x.value <= b.value for x in lowers)
            assert all(b.value <= x.value for x in uppers)


def test_monotone_on_grid():
    for q, m, n, d, r in GRID:
        iv = ar_interval(q, m, n, d, r)
        for mm, nn, dd in ((m + 1, n, d), (m, n + 1, d), (m, n, d - 1)):
            if mm > 4 or nn > 4 or dd < 1:
                continue
            jv = ar_interval(q, mm, nn, dd, r)
            assert jv.lower >= iv.lower and jv.upper >= iv.upper, ((q, m, n, d, r), (mm, nn, dd))


def test_transposition_symmetry():
    for q, m, n, d, r in GRID:
        a, b = ar_interval(q, m, n, d, r), ar_interval(q, n, m, d, r)
        assert (a.lower, a.upper) == (b.lower, b.upper)


def test_degenerate_exact_cases():
    assert ar_interval(2, 3, 3, 5, 2).exact and ar_interval(2, 3, 3, 5, 2).lower == 1
    assert ar_interval(2, 3, 2, 3, 2).lower == 1  # distance beyond the length
    assert ar_interval(2, 3, 2, 2, 3).upper == 0
    assert ar_interval(2, 3, 2, 2, 0).lower == 1
    with pytest.raises(ValueError):
        ar_interval(2, 3, 3, 0, 1)


def test_inconsistent_interval_aborts():
    with pytest.raises(BoundInconsistency):
        _combine([BoundResult(5, "lower", "x"), BoundResult(4, "upper", "y")])


# -- asymptotic rates --


def test_asymptotic_as_examples():
    assert asymptotic_as(0, Fraction(1, 3)) == Fraction(1, 3) * Fraction(2, 3)
    assert asymptotic_as(Fraction(1, 2), Fraction(1, 3)) == 0
    assert asymptotic_as(Fraction(1, 4), Fraction(1, 2)) == Fraction(1, 8)


def test_asymptotic_ar_examples():
    for k in range(9):
        delta = Fraction(k, 8)
        iv = asymptotic_ar(1, delta, 1)
        assert iv.exact and iv.lower == 1 - delta
    assert asymptotic_ar(1, Fraction(3, 4), Fraction(1, 4)) == asymptotic_ar(1, Fraction(7, 8), Fraction(1, 4))
    assert asymptotic_ar(1, Fraction(3, 4), Fraction(1, 4)).upper == 0
    iv = asymptotic_ar(1, Fraction(3, 4), Fraction(1, 2))
    assert (iv.lower, iv.upper) == (0, Fraction(1, 8))


def test_asymptotic_ar_rejects_out_of_domain():
    with pytest.raises(ValueError):
        asymptotic_ar(Fraction(1, 2), Fraction(3, 4), Fraction(1, 4))
    with pytest.raises(ValueError):
        asymptotic_ar(0, 0, 0)


fractions = st.integers(0, 64).map(lambda k: Fraction(k, 64))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 128).map(lambda k: Fraction(k, 64)), fractions, fractions)
def test_asymptotic_ar_interval_is_ordered(nu, delta, rho):
    top = min(nu, 1)
    if delta > top or rho > top:
        return
    iv = asymptotic_ar(nu, delta, rho)
    assert 0 <= iv.lower <= iv.upper


def test_normalized_params():
    p = NormalizedParams.from_code(8, 4, 2, 3, d_s=4)
    assert (p.nu, p.rho, p.delta_r, p.delta_s) == (Fraction(1, 2), Fraction(3, 8), Fraction(1, 4), Fraction(1, 4))


SAMPLES = [
    (Fraction(1), Fraction(1, 4), Fraction(1, 2)),
    (Fraction(1), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(1), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(3, 4), Fraction(1, 4), Fraction(1, 2)),
    (Fraction(1), Fraction(3, 4), Fraction(1, 2)),
]


@pytest.mark.parametrize("nu,delta,rho", SAMPLES)
def test_finite_lower_bounds_approach_asymptotic_rate(nu, delta, rho):
    target = float(asymptotic_ar(nu, delta, rho).lower)
    gaps = []
    for m in (8, 12, 16):
        n, d, r = int(nu * m), int(delta * m), int(rho * m)
        gaps.append(abs(finite_rate(best_lower(2, m, n, d, r), 2, m) - target))
    assert gaps[-1] < 0.1
    assert gaps[0] >= gaps[-1]
