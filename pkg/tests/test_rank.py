from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crcodes.fields import field_for
from crcodes.linalg import MatrixQ, enumerate_subspaces, rank, row_span
from crcodes.rank import (
    CountingContext,
    RankVector,
    alpha,
    ball_volume,
    count_rank,
    els_of,
    enumerate_vectors,
    enumerate_vectors_of_rank,
    expansion_matrix,
    from_matrix,
    gaussian,
    mrd_rank_distribution,
    rank_distance,
    rank_histogram,
    rank_weight,
)


def independent_tuples_oracle(q, m, r):
    """Count ordered r-tuples of independent vectors in GF(q)^m by enumeration."""
    F = field_for(q, 1).Fq
    vecs = list(product(range(q), repeat=m))
    return sum(1 for rows in product(vecs, repeat=r) if rank(MatrixQ.from_rows(F, rows, m)) == r) if r else 1


def vec(spec, *coords):
    return RankVector(spec, tuple(coords))


GF4 = field_for(2, 2)
W, W2 = 2, 3  # omega, omega^2 = omega + 1


def test_expansion_examples():
    assert expansion_matrix(vec(GF4, 0, 0)).entries == ((0, 0), (0, 0))
    assert expansion_matrix(vec(GF4, 1, W)).entries == ((1, 0), (0, 1))
    X = expansion_matrix(vec(GF4, W, W2))
    assert X.column(0) == (0, 1) and X.column(1) == (1, 1)


def test_rank_weight_examples():
    assert rank_weight(vec(GF4, 0, 0)) == 0
    assert rank_weight(vec(GF4, 1, W)) == 2
    assert rank_weight(vec(GF4, 1, 1, 0)) == 1
    assert rank_distance(vec(GF4, 1, W), vec(GF4, 1, 1)) == 1


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(2, 3), (3, 2), (4, 2), (2, 4)]), st.integers(1, 4))
def test_rank_metric_axioms(seed, qm, n):
    rng = random.Random(seed)
    spec = field_for(*qm)
    x, y, z = (RankVector(spec, tuple(rng.randrange(spec.order) for _ in range(n))) for _ in range(3))
    assert rank_distance(x, x) == 0
    assert rank_distance(x, y) == rank_distance(y, x)
    assert rank_distance(x, z) <= rank_distance(x, y) + rank_distance(y, z)
    assert rank_distance(x, RankVector.zero(spec, n)) == rank_weight(x)
    X = expansion_matrix(x)
    assert rank_weight(x) == rank(X) == rank(X.T)
    assert from_matrix(spec, X) == x


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(2, 3), (3, 2), (2, 4), (4, 2)]))
def test_rank_weight_basis_independent(seed, qm):
    rng = random.Random(seed)
    spec = field_for(*qm)
    other = spec.random_basis(rng)
    coords = tuple(rng.randrange(spec.order) for _ in range(3))
    assert rank_weight(RankVector(spec, coords)) == rank_weight(RankVector(other, coords))


def test_gaussian_values():
    assert gaussian(5, 0, 2) == 1
    assert gaussian(2, 1, 2) == 3
    assert gaussian(4, 2, 2) == 35
    assert gaussian(3, 5, 2) == 0
    assert gaussian(3, -1, 2) == 0


@pytest.mark.parametrize("q,m,r", [(2, 2, 1), (2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 3, 3)])
def test_alpha_matches_enumeration(q, m, r):
    assert alpha(m, r, q) == independent_tuples_oracle(q, m, r)


def test_alpha_small():
    assert alpha(7, 0, 3) == 1
    assert alpha(2, 1, 2) == 3
    assert alpha(2, 2, 2) == 6


@pytest.mark.parametrize("q,m,n", [(2, 1, 1), (2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 3, 3), (3, 2, 2), (3, 1, 2), (4, 1, 3), (4, 2, 2)])
def test_count_rank_matches_enumeration(q, m, n):
    ctx = CountingContext(q, m, n)
    hist = rank_histogram(enumerate_vectors(field_for(q, m), n))
    assert hist == {r: count_rank(r, ctx) for r in range(min(m, n) + 1) if count_rank(r, ctx)}
    assert sum(count_rank(r, ctx) for r in range(min(m, n) + 1)) == q ** (m * n)
    assert ball_volume(min(m, n), ctx) == q ** (m * n)


def test_count_examples():
    ctx = CountingContext(2, 2, 2)
    assert count_rank(0, ctx) == 1
    assert count_rank(1, ctx) == 9
    assert ball_volume(0, ctx) == 1
    assert ball_volume(1, ctx) == 10
    with pytest.raises(ValueError):
        count_rank(3, ctx)


def test_enumerate_vectors_of_rank():
    ctx = CountingContext(2, 2, 2)
    assert list(enumerate_vectors_of_rank(0, ctx)) == [RankVector.zero(field_for(2, 2), 2)]
    assert len(list(enumerate_vectors_of_rank(2, CountingContext(3, 2, 2)))) == 48


def test_mrd_distribution_small():
    assert mrd_rank_distribution(2, 2, CountingContext(2, 2, 2)) == 3
    ctx = CountingContext(2, 3, 3)
    assert mrd_rank_distribution(2, 2, ctx) + mrd_rank_distribution(2, 3, ctx) + 1 == 64
    with pytest.raises(ValueError):
        mrd_rank_distribution(3, 2, ctx)


@pytest.mark.parametrize("q,m,n", [(2, 2, 2), (2, 3, 3), (2, 4, 3), (3, 2, 2), (3, 3, 2), (2, 5, 4)])
def test_mrd_distribution_partitions_singleton(q, m, n):
    ctx = CountingContext(q, m, n)
    for d in range(1, n + 1):
        total = 1 + sum(mrd_rank_distribution(d, r, ctx) for r in range(d, n + 1))
        assert total == q ** (m * (n - d + 1))


def test_els_examples():
    assert els_of(vec(GF4, 0, 0, 0)).dim == 0
    assert els_of(vec(GF4, W, 0, W)).dim == 1
    U = els_of(vec(GF4, 1, W, 0))
    assert U.basis.entries == ((1, 0, 0), (0, 1, 0))


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
def test_vector_lies_in_expected_number_of_hyperplane_els(m, n):
    spec = field_for(2, m)
    hyperplanes = list(enumerate_subspaces(2, n, n - 1))
    for x in enumerate_vectors(spec, n):
        T = els_of(x)
        r = T.dim
        containing = sum(1 for H in hyperplanes if all(row in H for row in T.basis.entries))
        assert containing == gaussian(n - r, 1, 2)


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (2, 3)])
def test_each_els_holds_alpha_rank_r_vectors(m, n):
    spec = field_for(2, m)
    counts: dict = {}
    for x in enumerate_vectors(spec, n):
        T = els_of(x)
        counts[T] = counts.get(T, 0) + 1
    for r in range(min(m, n) + 1):
        for V in enumerate_subspaces(2, n, r):
            assert counts.get(V, 0) == alpha(m, r, 2)


def test_vector_arithmetic_and_json():
    x, y = vec(GF4, 1, W), vec(GF4, W, W)
    assert (x + y) - y == x
    assert x.scale(W).coords == (W, W2)
    assert x.to_json() == [1, W]
    with pytest.raises(ValueError):
        x + vec(GF4, 1, 1, 1)
    with pytest.raises(ValueError):
        RankVector(GF4, (4,))


def test_row_span_of_expansion_is_els():
    x = vec(field_for(3, 2), 1, 3, 4)
    assert els_of(x) == row_span(expansion_matrix(x))
