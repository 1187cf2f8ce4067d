"""Cardinality bounds for constant-rank (A_R) and constant-dimension (A_S) codes.

All arithmetic is exact: lower bounds are rounded up and upper bounds down,
since both maxima are integers.  Every bound carries a ``source`` tag:

=================================  =============================================
source                             meaning
=================================  =============================================
trivial                            a single word is always a code
all-vectors / all-subspaces        minimum distance 1: every word fits
empty                              no vector of rank r exists
zero-rank                          only the zero vector has rank 0
distance-exceeds-2r                two rank-r words are at distance <= 2r
distance-exceeds-length            rank distance never exceeds min(m, n)
mrd-slice                          rank-r words of a linear MRD code
bassalygo-elias                    N_r q^(-m(d-1)) via the bilinear forms graph
subspace-lift                      from A_S(q,n,2(d-r),r) and A_S(q,m,2r,r)
subspace-lift-2r, -square          the two special cases of ``subspace-lift``
singleton-minus-zero               Singleton bound with the zero word added
singleton-minus-mrd-shells         Singleton with MRD words of rank in I_r
singleton-minus-lower-shells[a]    Singleton with optimal codes of rank in J_a,
                                   weakened by their best lower bounds
johnson-length                     drop one coordinate (r < n)
johnson-square                     drop one row and column (n = m = r, d < m)
els-count                          r < d: at most one word per ELS
exact-d-equals-r                   A_R(q^m,n,r,r) = [n r](q^m - 1)
exact-d2-r1                        A_R(q^m,n,2,1) = [n 1]
=================================  =============================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .rank import CountingContext, alpha, count_rank, gaussian, mrd_rank_distribution, mrd_weight_count


class BoundInconsistency(RuntimeError):
    """A lower bound exceeded an upper bound: an implementation bug."""


@dataclass(frozen=True)
class BoundResult:
    value: int
    kind: str  # "lower", "upper" or "exact"
    source: str
    chain: tuple[str, ...] = ()


@dataclass(frozen=True)
class BoundInterval:
    lower: int
    upper: int
    lower_source: str
    upper_source: str
    bounds: tuple[BoundResult, ...] = field(default=(), compare=False)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __contains__(self, value: int) -> bool:
        return self.lower <= value <= self.upper


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _combine(bounds: list[BoundResult]) -> BoundInterval:
    lowers = [b for b in bounds if b.kind in ("lower", "exact")]
    uppers = [b for b in bounds if b.kind in ("upper", "exact")]
    # exact formulas win ties so the reported source is the sharpest one
    lo = max(lowers, key=lambda b: (b.value, b.kind == "exact"))
    hi = min(uppers, key=lambda b: (b.value, b.kind != "exact"))
    if lo.value > hi.value:
        raise BoundInconsistency(f"lower bound {lo.value} ({lo.source}) exceeds upper bound {hi.value} ({hi.source})")
    return BoundInterval(lo.value, hi.value, lo.source, hi.source, tuple(bounds))


# -- constant-dimension codes --


def as_bounds(q: int, n: int, d: int, r: int) -> BoundInterval:
    """Bounds on A_S(q, n, 2d, r), the largest r-dimensional code in GF(q)^n with distance 2d."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    if d < 1:
        raise ValueError("d must be at least 1")
    if d == 1:
        b = BoundResult(gaussian(n, r, q), "exact", "all-subspaces")
        return _combine([b])
    r = min(r, n - r)
    if d > r:
        return _combine([BoundResult(1, "exact", "distance-exceeds-r")])
    lower = q ** ((n - r) * (r - d + 1))
    upper = alpha(n, r - d + 1, q) // alpha(r, r - d + 1, q)
    return _combine([BoundResult(lower, "lower", "subspace-lower"), BoundResult(upper, "upper", "subspace-upper")])


def _as_lower(q: int, n: int, d: int, r: int) -> int:
    return as_bounds(q, n, d, r).lower


# -- constant-rank codes --


def _check(q: int, m: int, n: int, d: int, r: int) -> tuple[int, int]:
    if d < 1:
        raise ValueError("d must be at least 1")
    if r < 0 or m < 1 or n < 1:
        raise ValueError("need r >= 0 and m, n >= 1")
    return max(m, n), min(m, n)


def _exact_case(q: int, m: int, n: int, d: int, r: int) -> BoundResult | None:
    """Degenerate parameters with a known value; expects n <= m."""
    if r > n:
        return BoundResult(0, "exact", "empty")
    if r == 0:
        return BoundResult(1, "exact", "zero-rank")
    if d == 1:
        return BoundResult(count_rank(r, CountingContext(q, m, n)), "exact", "all-vectors")
    if d > 2 * r:
        return BoundResult(1, "exact", "distance-exceeds-2r")
    if d > n:
        return BoundResult(1, "exact", "distance-exceeds-length")
    return None


def _special_exact(q: int, m: int, n: int, d: int, r: int) -> list[BoundResult]:
    out = []
    if d == r:
        out.append(BoundResult(gaussian(n, r, q) * (q**m - 1), "exact", "exact-d-equals-r"))
    if d == 2 and r == 1:
        out.append(BoundResult(gaussian(n, 1, q), "exact", "exact-d2-r1"))
    return out


@lru_cache(maxsize=None)
def _lower_list(q: int, m: int, n: int, d: int, r: int) -> tuple[BoundResult, ...]:
    base = _exact_case(q, m, n, d, r)
    if base is not None:
        return (base,)
    ctx = CountingContext(q, m, n)
    out = [BoundResult(1, "lower", "trivial")]
    if r >= d:
        out.append(BoundResult(mrd_rank_distribution(d, r, ctx), "lower", "mrd-slice"))
    out.append(BoundResult(_ceil_div(count_rank(r, ctx), q ** (m * (d - 1))), "lower", "bassalygo-elias"))
    if r < d:
        out.append(BoundResult(min(_as_lower(q, n, d - r, r), _as_lower(q, m, r, r)), "lower", "subspace-lift"))
        if n == m:
            out.append(BoundResult(_as_lower(q, m, r, r), "lower", "subspace-lift-square"))
    if d == 2 * r:
        out.append(BoundResult(_as_lower(q, n, r, r), "lower", "subspace-lift-2r"))
    out.extend(_special_exact(q, m, n, d, r))
    return tuple(out)


@lru_cache(maxsize=None)
def _upper_list(q: int, m: int, n: int, d: int, r: int) -> tuple[BoundResult, ...]:
    base = _exact_case(q, m, n, d, r)
    if base is not None:
        return (base,)
    ctx = CountingContext(q, m, n)
    singleton = q ** (m * (n - d + 1))
    out = []
    if r >= d:
        out.append(BoundResult(singleton - 1, "upper", "singleton-minus-zero"))
    shells = [i for i in range(n + 1) if abs(i - r) >= d]
    out.append(BoundResult(singleton - sum(mrd_weight_count(d, i, ctx) for i in shells), "upper", "singleton-minus-mrd-shells"))
    for a in range(d):
        js = [j for j in shells if j % d == a]
        value = singleton - sum(best_lower(q, m, n, d, j) for j in js)
        out.append(BoundResult(value, "upper", f"singleton-minus-lower-shells[a={a}]"))
    if n == m == r and d < m:
        sub = best_upper_result(q, m - 1, m - 1, d, m - 1)
        step = f"A_R({q}^{m - 1},{m - 1},{d},{m - 1}) <= {sub.value} [{sub.source}]"
        out.append(BoundResult(sub.value * q ** (m - 1) * (q**m - 1), "upper", "johnson-square", (step,) + sub.chain))
    if r < n:
        sub = best_upper_result(q, m, n - 1, d, r)
        step = f"A_R({q}^{m},{n - 1},{d},{r}) <= {sub.value} [{sub.source}]"
        value = sub.value * (q**n - 1) // (q ** (n - r) - 1)
        out.append(BoundResult(value, "upper", "johnson-length", (step,) + sub.chain))
    if r < d:
        out.append(BoundResult(gaussian(n, r, q), "upper", "els-count"))
    out.extend(_special_exact(q, m, n, d, r))
    return tuple(out)


def ar_lower_bounds(q: int, m: int, n: int, d: int, r: int) -> list[BoundResult]:
    """Every applicable lower bound on A_R(q^m, n, d, r) (after transposing to n <= m)."""
    m, n = _check(q, m, n, d, r)
    return list(_lower_list(q, m, n, d, r))


def ar_upper_bounds(q: int, m: int, n: int, d: int, r: int) -> list[BoundResult]:
    """Every applicable upper bound on A_R(q^m, n, d, r) (after transposing to n <= m)."""
    m, n = _check(q, m, n, d, r)
    return list(_upper_list(q, m, n, d, r))


def best_lower(q: int, m: int, n: int, d: int, r: int) -> int:
    return max(b.value for b in ar_lower_bounds(q, m, n, d, r))


def best_upper_result(q: int, m: int, n: int, d: int, r: int) -> BoundResult:
    return min(ar_upper_bounds(q, m, n, d, r), key=lambda b: b.value)


def ar_interval(q: int, m: int, n: int, d: int, r: int) -> BoundInterval:
    """Best known interval for A_R(q^m, n, d, r)."""
    return _combine(ar_lower_bounds(q, m, n, d, r) + ar_upper_bounds(q, m, n, d, r))


# -- asymptotic rates --


@dataclass(frozen=True)
class NormalizedParams:
    nu: Fraction
    rho: Fraction
    delta_r: Fraction
    delta_s: Fraction | None = None

    @classmethod
    def from_code(cls, m: int, n: int, d_r: int, r: int, d_s: int | None = None) -> NormalizedParams:
        return cls(
            Fraction(n, m),
            Fraction(r, m),
            Fraction(d_r, m),
            None if d_s is None else Fraction(d_s, 2 * m),
        )


@dataclass(frozen=True)
class RateInterval:
    lower: Fraction
    upper: Fraction

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def asymptotic_as(delta_s, rho) -> Fraction:
    """Limiting log_{q^(m^2)} A_S rate for normalized distance ``delta_s`` and dimension ``rho``."""
    delta_s, rho = Fraction(delta_s), Fraction(rho)
    if not 0 <= rho <= 1 or delta_s < 0:
        raise ValueError("need 0 <= rho <= 1 and delta_s >= 0")
    if delta_s > min(rho, 1 - rho):
        return Fraction(0)
    return min((1 - rho) * (rho - delta_s), rho * (1 - rho - delta_s))


def asymptotic_ar(nu, delta_r, rho) -> RateInterval:
    """Bounds on the limiting rate of A_R as m grows with n/m, d/m, r/m fixed."""
    nu, delta_r, rho = Fraction(nu), Fraction(delta_r), Fraction(rho)
    top = min(nu, Fraction(1))
    if nu <= 0:
        raise ValueError("nu must be positive")
    if not 0 <= rho <= top or not 0 <= delta_r <= top:
        raise ValueError(f"need 0 <= rho, delta_r <= {top}")
    if delta_r > 2 * rho:
        return RateInterval(Fraction(0), Fraction(0))
    if nu <= 1:
        base = rho * (1 + nu - rho) - delta_r
        if delta_r <= rho:
            return RateInterval(base, base)
        return RateInterval(max(Fraction(0), base), rho * (nu - delta_r))
    base = rho * (1 + nu - rho) - nu * delta_r
    if delta_r <= rho:
        return RateInterval(base, base)
    return RateInterval(max(Fraction(0), base), rho * (1 - delta_r))


def finite_rate(value: int, q: int, m: int) -> float:
    """log_{q^(m^2)} of a cardinality."""
    return math.log(value) / (m * m * math.log(q))
