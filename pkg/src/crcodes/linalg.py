"""Dense linear algebra over GF(q): rank, RREF, spans and subspace enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .fields import CapExceeded, _Field, desk_cap, make_field, prime_power


def ground_field(q: int) -> _Field:
    """The field GF(q) as used by every tower with this ``q``."""
    p, k = prime_power(q)
    return make_field(p, k, 1).Fq


@dataclass(frozen=True)
class MatrixQ:
    field: _Field
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, field: _Field, rows: Sequence[Sequence[int]], cols: int | None = None) -> MatrixQ:
        rows = tuple(tuple(r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix without rows")
            cols = len(rows[0])
        return cls(field, len(rows), cols, rows)

    @classmethod
    def zeros(cls, field: _Field, rows: int, cols: int) -> MatrixQ:
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: _Field, k: int) -> MatrixQ:
        return cls(field, k, k, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def T(self) -> MatrixQ:
        return MatrixQ(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ((),) * self.cols)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def __matmul__(self, other: MatrixQ) -> MatrixQ:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        F = self.field
        out = []
        for row in self.entries:
            new = [0] * other.cols
            for a, orow in zip(row, other.entries):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            new[j] = F.add(new[j], F.mul(a, b))
            out.append(tuple(new))
        return MatrixQ(F, self.rows, other.cols, tuple(out))

    def __sub__(self, other: MatrixQ) -> MatrixQ:
        F = self.field
        return MatrixQ(
            F,
            self.rows,
            self.cols,
            tuple(tuple(F.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "q": self.q,
            "entries": [x for row in self.entries for x in row],
        }

    @classmethod
    def from_json(cls, obj: dict) -> MatrixQ:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        flat = list(obj["entries"])
        if len(flat) != rows * cols:
            raise ValueError("entries length does not match rows*cols")
        F = ground_field(int(obj["q"]))
        return cls(F, rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))


def _reduce(F: _Field, rows: list[list[int]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination; returns the pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = F.inv(lead)
            rows[r] = [F.mul(inv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rank_gf2_rows(masks: Sequence[int]) -> int:
    """Rank of a GF(2) matrix whose rows are given as integer bitmasks."""
    basis: list[int] = []
    for v in masks:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def rank_rows(F: _Field, rows: Sequence[Sequence[int]], ncols: int) -> int:
    if F.order == 2:
        return rank_gf2_rows([sum(bit << j for j, bit in enumerate(r)) for r in rows])
    work = [list(r) for r in rows]
    return len(_reduce(F, work, ncols))


def rank(A: MatrixQ) -> int:
    return rank_rows(A.field, A.entries, A.cols)


def rref(A: MatrixQ) -> MatrixQ:
    """Reduced row echelon form; zero rows are kept at the bottom."""
    work = [list(r) for r in A.entries]
    _reduce(A.field, work, A.cols)
    return MatrixQ(A.field, A.rows, A.cols, tuple(tuple(r) for r in work))


def inverse(A: MatrixQ) -> MatrixQ:
    if A.rows != A.cols:
        raise ValueError("only square matrices are invertible")
    k = A.rows
    work = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(A.entries)]
    pivots = _reduce(A.field, work, k)
    if len(pivots) != k:
        raise ValueError("matrix is singular")
    return MatrixQ(A.field, k, k, tuple(tuple(r[k:]) for r in work))


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^k held by its RREF generator matrix (no zero rows)."""

    basis: MatrixQ

    def __post_init__(self) -> None:
        b = self.basis
        if any(not any(row) for row in b.entries) or rref(b) != b:
            raise ValueError("Subspace basis must be in RREF without zero rows")

    @property
    def ambient_dim(self) -> int:
        return self.basis.cols

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def field(self) -> _Field:
        return self.basis.field

    def __contains__(self, v: Sequence[int]) -> bool:
        return rank_rows(self.field, list(self.basis.entries) + [list(v)], self.ambient_dim) == self.dim

    def elements(self) -> Iterator[tuple[int, ...]]:
        F = self.field
        for coeffs in product(range(F.order), repeat=self.dim):
            v = [0] * self.ambient_dim
            for c, row in zip(coeffs, self.basis.entries):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
            yield tuple(v)

    def to_json(self) -> dict:
        return self.basis.to_json()

    @classmethod
    def from_json(cls, obj: dict) -> Subspace:
        return row_span(MatrixQ.from_json(obj))


def row_span(A: MatrixQ) -> Subspace:
    R = rref(A)
    nonzero = tuple(r for r in R.entries if any(r))
    return Subspace(MatrixQ(A.field, len(nonzero), A.cols, nonzero))


def col_span(A: MatrixQ) -> Subspace:
    return row_span(A.T)


def stack_rank(X: MatrixQ, Y: MatrixQ) -> int:
    """Rank of ``X`` stacked on ``Y``, i.e. of the column concatenation (X^T | Y^T)."""
    if X.cols != Y.cols:
        raise ValueError(f"ambient dimensions differ: {X.cols} != {Y.cols}")
    return rank_rows(X.field, X.entries + Y.entries, X.cols)


def subspace_distance(U: Subspace, V: Subspace) -> int:
    """dim(U + V) - dim(U n V)."""
    s = stack_rank(U.basis, V.basis)
    return 2 * s - U.dim - V.dim


def enumerate_subspaces(field: _Field | int, k: int, r: int, cap: int | None = None) -> Iterator[Subspace]:
    """All ``r``-dimensional subspaces of GF(q)^k in a fixed order.

    Pivot patterns come in lexicographic order; within a pattern the free
    entries (row-major) count in base ``q`` with the first entry most
    significant.
    """
    from .rank import gaussian

    F = ground_field(field) if isinstance(field, int) else field
    if not 0 <= r <= k:
        raise ValueError(f"need 0 <= r <= k, got r={r}, k={k}")
    cap = desk_cap() if cap is None else cap
    total = gaussian(k, r, F.order)
    if total > cap:
        raise CapExceeded(f"{total} subspaces exceed the cap {cap}")
    for pivots in combinations(range(k), r):
        pivset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, k) if j not in pivset]
        for values in product(range(F.order), repeat=len(free)):
            rows = [[0] * k for _ in range(r)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(MatrixQ(F, r, k, tuple(tuple(row) for row in rows)))
