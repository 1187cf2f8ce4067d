"""Acceptance gate: one test group per criterion, reported by conftest."""

from __future__ import annotations

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, product

import pytest

from crcodes.bounds import ar_interval, as_bounds, asymptotic_ar, asymptotic_as
from crcodes.codes import ConstantRankCode, enumerate_codewords, make_gabidulin, rank_distance_multiset, verify
from crcodes.constructions import VectorSubspacePair, boost_construction, extend_full_rank, lift_identity, transpose_code
from crcodes.fields import field_for
from crcodes.fixtures import load_fixtures, spread_gf2_4
from crcodes.linalg import enumerate_subspaces
from crcodes.rank import (
    CountingContext,
    RankVector,
    alpha,
    count_rank,
    enumerate_vectors,
    gaussian,
    mrd_rank_distribution,
    rank_histogram,
    rank_weight,
)
from crcodes.search import (
    build_graph,
    check_automorphism,
    exact_ar,
    exact_as,
    multiplication_map,
    solve_ar,
    translation_map,
)

criterion = pytest.mark.criterion


@contextmanager
def within(seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f} s, limit {seconds} s"


C1 = "rank histogram of GF(q^m)^n equals N_r; sum is q^(mn)"


@criterion(1, C1)
def test_c1_counting_identity():
    points = [(2, m, n) for m in (1, 2, 3) for n in (1, 2, 3)] + [(3, m, n) for m in (1, 2) for n in (1, 2)]
    with within(10):
        for q, m, n in points:
            ctx = CountingContext(q, m, n)
            hist = rank_histogram(enumerate_vectors(field_for(q, m), n))
            for r in range(min(m, n) + 1):
                assert hist.get(r, 0) == count_rank(r, ctx), (q, m, n, r)
            assert sum(count_rank(r, ctx) for r in range(min(m, n) + 1)) == q ** (m * n)


C2 = "Gabidulin weight histogram at (2,3,3), d in {2,3} equals M_{d,r}"


@criterion(2, C2)
@pytest.mark.parametrize("d", [2, 3])
def test_c2_mrd_distribution(d):
    ctx = CountingContext(2, 3, 3)
    with within(10):
        code = make_gabidulin(field_for(2, 3), 3, d)
        words = list(enumerate_codewords(code))
        assert len(words) == 2 ** (3 * (3 - d + 1))
        hist = rank_histogram(words)
        for r in range(d, 4):
            assert hist.get(r, 0) == mrd_rank_distribution(d, r, ctx)
        assert sum(mrd_rank_distribution(d, r, ctx) for r in range(d, 4)) + 1 == len(words)


C3 = "exact search gives A_R(2^2,2,2,2) = 3 and A_R(2^2,3,2,2) = 21, equal to [n r](q^m - 1)"


@criterion(3, C3)
def test_c3_square_instance():
    with within(60):
        assert exact_ar(2, 2, 2, 2, 2) == 3 == gaussian(2, 2, 2) * (2**2 - 1)


@criterion(3, C3)
def test_c3_wide_instance():
    # stated target; enumeration of the 42-vertex graph gives 7 (see ledger)
    assert count_rank(2, CountingContext(2, 2, 3)) == 42
    with within(60):
        value = exact_ar(2, 2, 3, 2, 2)
    assert value == 21 == gaussian(3, 2, 2) * (2**2 - 1)


C4 = "exact search gives A_R(2^2,3,2,1) = 7 = [3 1]_2"


@criterion(4, C4)
def test_c4_d2_r1_instance():
    # stated target; enumeration gives 3 (see ledger)
    with within(10):
        value = exact_ar(2, 2, 3, 2, 1)
    assert value == 7 == gaussian(3, 1, 2)


C5 = "exact search over E_2(2,4) gives A_S(2,4,4,2) = 5, the upper bound; lower bound 4"


@criterion(5, C5)
def test_c5_spread_value():
    with within(30):
        value = exact_as(2, 4, 4, 2)
    iv = as_bounds(2, 4, 2, 2)
    assert value == 5 == iv.upper
    assert iv.lower == 4


C6 = "exact search inside the combined interval on q=2, m,n <= 3, K-graphs up to 128 vertices"


def _sandwich_points():
    for m, n in product(range(1, 4), repeat=2):
        for r in range(0, min(m, n) + 1):
            if count_rank(r, CountingContext(2, m, n)) > 128:
                continue
            for d in range(1, 2 * r + 2):
                yield (2, m, n, d, r)


@criterion(6, C6)
def test_c6_sandwich_soundness():
    violations = []
    checked = 0
    for point in _sandwich_points():
        res, _ = solve_ar(*point)
        assert res.exact, point
        iv = ar_interval(*point)
        checked += 1
        if not iv.lower <= res.cardinality <= iv.upper:
            violations.append((point, res.cardinality, iv.lower, iv.upper))
    assert checked > 0
    assert violations == []


C7 = "fiber sizes at (2,2,2,1): every line has 3 preimages under both span maps"


@criterion(7, C7)
def test_c7_fibers():
    with within(1):
        spec = field_for(2, 2)
        s_count: dict = {}
        t_count: dict = {}
        for x in enumerate_vectors(spec, 2):
            if rank_weight(x) != 1:
                continue
            pair = VectorSubspacePair.of(x)
            s_count[pair.S] = s_count.get(pair.S, 0) + 1
            t_count[pair.T] = t_count.get(pair.T, 0) + 1
        lines = list(enumerate_subspaces(2, 2, 1))
        assert alpha(2, 1, 2) == 3
        assert all(t_count.get(T, 0) == 3 for T in lines)
        assert all(s_count.get(S, 0) == 3 for S in lines)
        assert sum(s_count.values()) == sum(t_count.values()) == 9


C8 = "boost on a spread of GF(2)^4 gives 5 rank-2 words over GF(2^4) at distance >= 4"


@criterion(8, C8)
def test_c8_boost():
    with within(10):
        spread = spread_gf2_4()
        assert len(spread) == 5
        code = boost_construction(spread, spread)
        report = verify(code)
    assert len(code) == 5 and code.r == 2 and code.spec.m == 4 and code.spec.q == 2
    assert report.ok and report.d_min >= 4


C9 = "transpose and extend preserve distance multisets on fixtures; identity lift injective on 64 words"


@criterion(9, C9)
def test_c9_isometries():
    extended = 0
    for name, code in load_fixtures().items():
        if not isinstance(code, ConstantRankCode):
            continue
        base = rank_distance_multiset(code)
        assert rank_distance_multiset(transpose_code(code)) == base, name
        if code.n == code.spec.m == code.r:
            assert rank_distance_multiset(extend_full_rank(code)) == base, name
            extended += 1
    assert extended > 0
    words = list(enumerate_codewords(make_gabidulin(field_for(2, 3), 3, 2)))
    assert len(words) == 64
    lifted = lift_identity(words)
    assert len(set(lifted.subspaces)) == 64


C10 = "translation maps on R_2(2,2,2) for all 256 pairs; multiplication maps on K_2(2,2,2,2)"


@criterion(10, C10)
def test_c10_automorphisms():
    with within(10):
        R = build_graph("bilinear", q=2, m=2, n=2, d=2)
        pairs = 0
        for u, v in product(range(len(R)), repeat=2):
            mapping = translation_map(R, u, v)
            assert mapping[u] == v and check_automorphism(R, mapping)
            pairs += 1
        assert pairs == 256
        K = build_graph("constant_rank", q=2, m=2, n=2, d=2, r=2)
        for u, v in product(range(len(K)), repeat=2):
            mapping = multiplication_map(K, u, v)
            assert mapping[u] == v and check_automorphism(K, mapping)


C11 = "rank weight agrees across the polynomial basis and 10 random bases for 100 vectors"


@criterion(11, C11)
def test_c11_basis_independence():
    rng = random.Random(11)
    spec = field_for(2, 3)
    bases = [spec.random_basis(rng) for _ in range(10)]
    assert len({b.basis for b in bases}) > 1
    for _ in range(100):
        coords = tuple(rng.randrange(spec.order) for _ in range(3))
        ref = rank_weight(RankVector(spec, coords))
        assert all(rank_weight(RankVector(b, coords)) == ref for b in bases)


C12 = "asymptotic bounds ordered on a 33^3 grid; diagonal and closed forms exact"


def _as_closed_form(delta, rho):
    if delta > min(rho, 1 - rho):
        return Fraction(0)
    return rho * (1 - rho) - delta * max(rho, 1 - rho)


@criterion(12, C12)
def test_c12_asymptotics():
    steps = [Fraction(k, 32) for k in range(33)]
    with within(5):
        count = 0
        for nu in [Fraction(k, 32) for k in range(1, 34)]:
            top = min(nu, 1)
            for delta, rho in product(steps, repeat=2):
                if delta > top or rho > top:
                    continue
                iv = asymptotic_ar(nu, delta, rho)
                assert iv.lower <= iv.upper
                count += 1
        assert count > 0
        for nu in (Fraction(1, 2), Fraction(1)):
            for delta in steps:
                if delta <= nu:
                    iv = asymptotic_ar(nu, delta, nu)
                    assert iv.lower == iv.upper == nu - delta
        for delta, rho in product(steps, repeat=2):
            assert asymptotic_as(delta, rho) == _as_closed_form(delta, rho)
        assert asymptotic_as(Fraction(3, 4), Fraction(1, 2)) == 0


C13 = "verify --all-fixtures is byte-identical across two runs"


@criterion(13, C13)
def test_c13_determinism():
    cmd = [sys.executable, "-m", "crcodes", "verify", "--all-fixtures"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    assert first.stdout
