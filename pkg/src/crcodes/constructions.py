"""Maps between rank-metric vectors and subspaces, and the code constructions built on them.

Every construction that claims a minimum distance re-verifies its output by
direct computation and raises if the claim does not hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .codes import ConstantDimensionCode, ConstantRankCode, min_subspace_distance, verify
from .fields import FieldSpec, field_for, first_irreducible
from .linalg import MatrixQ, Subspace, col_span, enumerate_subspaces, row_span
from .rank import RankVector, expansion_matrix, from_matrix, rank_weight


@dataclass(frozen=True)
class VectorSubspacePair:
    x: RankVector
    S: Subspace
    T: Subspace

    @classmethod
    def of(cls, x: RankVector) -> VectorSubspacePair:
        X = expansion_matrix(x)
        return cls(x, col_span(X), row_span(X))


def map_S(x: RankVector) -> Subspace:
    """Column span of the expansion matrix, a subspace of GF(q)^m."""
    return col_span(expansion_matrix(x))


def map_T(x: RankVector) -> Subspace:
    """Row span of the expansion matrix, a subspace of GF(q)^n."""
    return row_span(expansion_matrix(x))


def _tower_like(spec: FieldSpec, m: int) -> FieldSpec:
    """GF(q^m) sharing ``spec``'s GF(q), with the polynomial basis."""
    irred_qm = first_irreducible(spec.Fq, m)
    return FieldSpec(spec.p, spec.k, m, spec.irred_q, irred_qm, tuple(spec.q**i for i in range(m)))


def witness_from_pair(S: Subspace, T: Subspace, spec: FieldSpec | None = None) -> RankVector:
    """A vector of rank r whose column span is ``S`` and row span is ``T``.

    The expansion is G^T H for the canonical generators G of ``S`` and H of ``T``.
    """
    if S.dim != T.dim:
        raise ValueError(f"dimension mismatch: dim S = {S.dim}, dim T = {T.dim}")
    if spec is None:
        spec = field_for(S.field.order, S.ambient_dim)
    if spec.m != S.ambient_dim or spec.q != S.field.order or T.field.order != spec.q:
        raise ValueError("S must live in GF(q)^m of the target field")
    X = S.basis.T @ T.basis
    return from_matrix(spec, X)


def _first_subspace(field, k: int, r: int) -> Subspace:
    return next(enumerate_subspaces(field, k, r))


def lift_dimension_to_rank(gamma: ConstantDimensionCode, n: int, spec: FieldSpec | None = None) -> ConstantRankCode:
    """One rank-r word per subspace of ``gamma`` (in GF(q)^m), all sharing one row span.

    The shared row span is the first r-dimensional subspace of GF(q)^n in
    enumeration order, so the column spans recover ``gamma`` exactly.
    """
    m, r = gamma.n, gamma.r
    if not r <= n <= m:
        raise ValueError(f"need r <= n <= m, got r={r}, n={n}, m={m}")
    spec = field_for(gamma.q, m) if spec is None else spec
    T = _first_subspace(spec.Fq, n, r)
    words = tuple(witness_from_pair(S, T, spec) for S in gamma.subspaces)
    return ConstantRankCode(spec, n, r, words)


def lift_dimension_to_rank_t(delta: ConstantDimensionCode, m: int, spec: FieldSpec | None = None) -> ConstantRankCode:
    """Dual of :func:`lift_dimension_to_rank`: row spans recover ``delta`` (in GF(q)^n)."""
    n, r = delta.n, delta.r
    if not r <= n <= m:
        raise ValueError(f"need r <= n <= m, got r={r}, n={n}, m={m}")
    spec = field_for(delta.q, m) if spec is None else spec
    S = _first_subspace(spec.Fq, m, r)
    words = tuple(witness_from_pair(S, T, spec) for T in delta.subspaces)
    return ConstantRankCode(spec, n, r, words)


def boost_construction(
    gamma: ConstantDimensionCode, delta: ConstantDimensionCode, spec: FieldSpec | None = None
) -> ConstantRankCode:
    """Constant-rank code of distance d' + r from an (m, 2r, r) and an (n, 2d', r) code.

    Word i is sum_l beta_{i,l} * (row l of Y_i), where beta_{i,l} is the
    GF(q^m) element whose expansion is row l of the generator X_i of the i-th
    subspace of ``gamma`` and Y_i generates the i-th subspace of ``delta``.
    """
    if gamma.r != delta.r:
        raise ValueError(f"constant dimensions differ: {gamma.r} != {delta.r}")
    if gamma.q != delta.q:
        raise ValueError("codes are over different fields")
    r, m, n = gamma.r, gamma.n, delta.n
    if n > m:
        raise ValueError(f"need n <= m, got n={n}, m={m}")
    spec = field_for(gamma.q, m) if spec is None else spec
    if spec.m != m or spec.q != gamma.q:
        raise ValueError("target field does not match gamma's ambient space")
    size = min(len(gamma), len(delta))
    if r == 0:
        return ConstantRankCode(spec, n, 0, (RankVector.zero(spec, n),))

    ds_gamma = min_subspace_distance(gamma)
    if ds_gamma < 2 * r:
        raise ValueError(f"gamma must have subspace distance 2r = {2 * r}, found {ds_gamma}")
    ds_delta = min_subspace_distance(delta)
    design = None
    if size > 1:
        if ds_delta % 2:
            raise ValueError("subspace distance between equal-dimension subspaces must be even")
        design = ds_delta // 2 + r
        if not 1 <= r < design <= n:
            raise ValueError(f"need 1 <= r < d'+r <= n, got r={r}, d'+r={design}, n={n}")

    F = spec.Fqm
    words = []
    for U, V in zip(gamma.subspaces[:size], delta.subspaces[:size]):
        betas = [spec.contract(row) for row in U.basis.entries]
        c = [0] * n
        for beta, yrow in zip(betas, V.basis.entries):
            c = [F.add(acc, F.mul(beta, y)) for acc, y in zip(c, yrow)]
        words.append(RankVector(spec, tuple(c)))
    code = ConstantRankCode(spec, n, r, tuple(words), d=design)
    report = verify(code)
    if not report.ok:
        raise RuntimeError("boost construction produced an invalid code: " + "; ".join(report.lines()))
    return code


def lift_identity(code: ConstantRankCode | Iterable[RankVector]) -> ConstantDimensionCode:
    """Row spaces of (I_m | X) for each codeword expansion X, in E_m(q, m+n)."""
    words = list(code)
    if not words:
        raise ValueError("cannot lift an empty code")
    spec = words[0].spec
    m, n = spec.m, words[0].n
    I = MatrixQ.identity(spec.Fq, m)
    subspaces = []
    for w in words:
        X = expansion_matrix(w)
        rows = tuple(a + b for a, b in zip(I.entries, X.entries))
        subspaces.append(Subspace(MatrixQ(spec.Fq, m, m + n, rows)))
    return ConstantDimensionCode(spec.q, m + n, m, tuple(subspaces))


def extend_full_rank(code: ConstantRankCode, target: FieldSpec | None = None) -> ConstantRankCode:
    """Map an (m-1, d, m-1) code over GF(q^(m-1)) to an (m, d, m) code over GF(q^m).

    Each expansion X becomes the block matrix [[X, 0], [0, 1]].
    """
    k = code.m
    if code.n != k or code.r != k:
        raise ValueError("extend_full_rank needs a square full-rank code (n = r = m)")
    for i, w in enumerate(code.words):
        if rank_weight(w) != k:
            raise ValueError(f"word {i} is not of full rank {k}")
    target = _tower_like(code.spec, k + 1) if target is None else target
    if target.m != k + 1 or target.q != code.q:
        raise ValueError("target field must be GF(q^(m+1)) over the same GF(q)")
    words = []
    for w in code.words:
        X = expansion_matrix(w)
        rows = [row + (0,) for row in X.entries] + [(0,) * k + (1,)]
        words.append(from_matrix(target, MatrixQ.from_rows(code.spec.Fq, rows)))
    return ConstantRankCode(target, k + 1, k + 1, tuple(words), d=code.d)


def transpose_code(code: ConstantRankCode, target: FieldSpec | None = None) -> ConstantRankCode:
    """Transpose every expansion: an (n, d, r) code over GF(q^m) becomes (m, d, r) over GF(q^n)."""
    target = _tower_like(code.spec, code.n) if target is None else target
    if target.m != code.n or target.q != code.q:
        raise ValueError("target field must be GF(q^n) over the same GF(q)")
    words = tuple(from_matrix(target, expansion_matrix(w).T) for w in code.words)
    return ConstantRankCode(target, code.m, code.r, words, d=code.d)
