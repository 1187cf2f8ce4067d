"""Vectors over GF(q^m) under the rank metric, and the exact counting functions.

All counts are exact Python integers.  ``gaussian(n, r, q)`` is 0 outside
``0 <= r <= n`` so that range sums need no special-casing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .fields import CapExceeded, FieldError, FieldSpec, desk_cap, field_for
from .linalg import MatrixQ, Subspace, rank, rank_gf2_rows, row_span


@dataclass(frozen=True)
class CountingContext:
    q: int
    m: int
    n: int

    def __post_init__(self) -> None:
        from .fields import prime_power

        prime_power(self.q)
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")


@dataclass(frozen=True)
class RankVector:
    spec: FieldSpec
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        order = self.spec.order
        if any(not 0 <= c < order for c in self.coords):
            raise FieldError(f"coordinates must lie in [0, {order})")

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> RankVector:
        return cls(spec, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.coords)

    def _check(self, other: RankVector) -> None:
        if self.spec != other.spec or self.n != other.n:
            raise ValueError("vectors belong to different spaces")

    def __add__(self, other: RankVector) -> RankVector:
        self._check(other)
        F = self.spec.Fqm
        return RankVector(self.spec, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: RankVector) -> RankVector:
        self._check(other)
        F = self.spec.Fqm
        return RankVector(self.spec, tuple(F.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def scale(self, a: int) -> RankVector:
        F = self.spec.Fqm
        return RankVector(self.spec, tuple(F.mul(a, c) for c in self.coords))

    def to_json(self) -> list[int]:
        return list(self.coords)


def expansion_matrix(x: RankVector) -> MatrixQ:
    """The m x n matrix over GF(q) whose column j expands coordinate j."""
    spec = x.spec
    cols = [spec.expand(c) for c in x.coords]
    rows = tuple(tuple(col[i] for col in cols) for i in range(spec.m))
    return MatrixQ(spec.Fq, spec.m, x.n, rows)


def from_matrix(spec: FieldSpec, X: MatrixQ) -> RankVector:
    """Inverse of :func:`expansion_matrix`."""
    if X.rows != spec.m:
        raise ValueError(f"expected {spec.m} rows, got {X.rows}")
    return RankVector(spec, tuple(spec.contract(X.column(j)) for j in range(X.cols)))


def rank_weight(x: RankVector) -> int:
    if x.spec.q == 2 and x.spec.is_polynomial_basis:
        # Columns of the expansion are the bit patterns of the coordinates.
        return rank_gf2_rows(x.coords)
    X = expansion_matrix(x)
    return rank(X)


def rank_distance(x: RankVector, y: RankVector) -> int:
    return rank_weight(x - y)


@lru_cache(maxsize=None)
def alpha(m: int, r: int, q: int) -> int:
    """Number of ordered r-tuples of independent vectors in GF(q)^m."""
    if r < 0:
        raise ValueError("r must be non-negative")
    out = 1
    for i in range(r):
        out *= q**m - q**i
    return out


@lru_cache(maxsize=None)
def gaussian(n: int, r: int, q: int) -> int:
    """Gaussian binomial [n r]_q; 0 when r is outside [0, n]."""
    if r < 0 or r > n or n < 0:
        return 0
    return alpha(n, r, q) // alpha(r, r, q)


def count_rank(r: int, ctx: CountingContext) -> int:
    """Number of vectors of rank ``r`` in GF(q^m)^n."""
    if not 0 <= r <= min(ctx.m, ctx.n):
        raise ValueError(f"rank {r} outside [0, {min(ctx.m, ctx.n)}]")
    return gaussian(ctx.n, r, ctx.q) * alpha(ctx.m, r, ctx.q)


def ball_volume(r: int, ctx: CountingContext) -> int:
    if not 0 <= r <= min(ctx.m, ctx.n):
        raise ValueError(f"radius {r} outside [0, {min(ctx.m, ctx.n)}]")
    return sum(count_rank(i, ctx) for i in range(r + 1))


def mrd_rank_distribution(d: int, r: int, ctx: CountingContext) -> int:
    """Number of rank-``r`` codewords of a linear MRD code of minimum distance ``d``.

    Requires ``1 <= d <= r <= n <= m``.
    """
    q, m, n = ctx.q, ctx.m, ctx.n
    if not 1 <= d <= r <= n <= m:
        raise ValueError(f"need 1 <= d <= r <= n <= m, got d={d}, r={r}, n={n}, m={m}")
    total = 0
    for j in range(d, r + 1):
        term = gaussian(r, j, q) * q ** ((r - j) * (r - j - 1) // 2) * (q ** (m * (j - d + 1)) - 1)
        total += -term if (r - j) % 2 else term
    return gaussian(n, r, q) * total


def mrd_weight_count(d: int, i: int, ctx: CountingContext) -> int:
    """Codewords of rank ``i`` in an (n, n-d+1, d) linear MRD code, zero word included."""
    if i == 0:
        return 1
    if i < d:
        return 0
    return mrd_rank_distribution(d, i, ctx)


def els_of(x: RankVector) -> Subspace:
    """Row span of the expansion: the GF(q)^n basis of the smallest ELS containing ``x``."""
    return row_span(expansion_matrix(x))


def enumerate_vectors(spec: FieldSpec, n: int, cap: int | None = None) -> Iterator[RankVector]:
    """Every vector of GF(q^m)^n, in base-q^m counting order (first coordinate most significant)."""
    cap = desk_cap() if cap is None else cap
    if spec.order**n > cap:
        raise CapExceeded(f"q^(mn) = {spec.order**n} exceeds the cap {cap}")
    for coords in product(range(spec.order), repeat=n):
        yield RankVector(spec, coords)


def enumerate_vectors_of_rank(
    r: int, ctx: CountingContext, spec: FieldSpec | None = None, cap: int | None = None
) -> Iterator[RankVector]:
    """All vectors of rank ``r`` in GF(q^m)^n in :func:`enumerate_vectors` order."""
    spec = field_for(ctx.q, ctx.m) if spec is None else spec
    if (spec.q, spec.m) != (ctx.q, ctx.m):
        raise ValueError("field spec does not match the counting context")
    for x in enumerate_vectors(spec, ctx.n, cap):
        if rank_weight(x) == r:
            yield x


def rank_histogram(vectors: Sequence[RankVector] | Iterator[RankVector]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for x in vectors:
        w = rank_weight(x)
        hist[w] = hist.get(w, 0) + 1
    return hist

