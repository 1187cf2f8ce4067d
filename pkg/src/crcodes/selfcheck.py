"""Deterministic identity suite: every formula against its brute-force oracle.

Each check returns ``(name, ok, detail)``.  Nothing here depends on wall
clock time or unseeded randomness, so the report is byte-stable.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from itertools import product

from .bounds import BoundInconsistency, ar_interval, asymptotic_ar, asymptotic_as
from .codes import (
    ConstantRankCode,
    enumerate_codewords,
    make_gabidulin,
    rank_distance_multiset,
    verify,
)
from .constructions import boost_construction, extend_full_rank, lift_identity, map_S, map_T, transpose_code
from .fields import field_for
from .fixtures import load_fixtures, spread_gf2_4
from .linalg import enumerate_subspaces
from .rank import (
    CountingContext,
    RankVector,
    alpha,
    count_rank,
    enumerate_vectors,
    enumerate_vectors_of_rank,
    gaussian,
    mrd_rank_distribution,
    rank_histogram,
    rank_weight,
)
from .search import build_graph, check_automorphism, exact_ar, exact_as, multiplication_map, translation_map

Check = tuple[str, bool, str]
SEED = 20240101


def check_counting() -> Check:
    bad = []
    for q, top in ((2, 3), (3, 2)):
        for m, n in product(range(1, top + 1), repeat=2):
            ctx = CountingContext(q, m, n)
            hist = rank_histogram(enumerate_vectors(field_for(q, m), n))
            want = {r: count_rank(r, ctx) for r in range(min(m, n) + 1)}
            if hist != want or sum(want.values()) != q ** (m * n):
                bad.append((q, m, n))
    return ("counting", not bad, "N_r matches enumeration" if not bad else f"mismatch at {bad}")


def check_mrd_distribution() -> Check:
    spec = field_for(2, 3)
    ctx = CountingContext(2, 3, 3)
    bad = []
    for d in (2, 3):
        code = make_gabidulin(spec, 3, d)
        hist = rank_histogram(enumerate_codewords(code))
        want = {r: mrd_rank_distribution(d, r, ctx) for r in range(d, 4)}
        size = 2 ** (3 * (3 - d + 1))
        if {r: c for r, c in hist.items() if r} != want or sum(want.values()) + 1 != size:
            bad.append(d)
    return ("mrd-distribution", not bad, "weights match for d=2,3" if not bad else f"mismatch for d={bad}")


def check_exact_formulas() -> Check:
    # parameters are (q, m, n, d, r); the formulas hold with n <= m after transposition
    rows = []
    for q, m, n, d, r in ((2, 2, 2, 2, 2), (2, 3, 2, 2, 2), (2, 2, 3, 2, 2)):
        small, big = min(m, n), max(m, n)
        rows.append(((q, m, n, d, r), gaussian(small, r, q) * (q**big - 1)))
    for q, m, n in ((2, 2, 2), (2, 3, 3), (2, 2, 3)):
        rows.append(((q, m, n, 2, 1), gaussian(min(m, n), 1, q)))
    bad = [(p, want, got) for p, want in rows if (got := exact_ar(*p)) != want]
    return ("exact-formulas", not bad, f"{len(rows)} search values match" if not bad else f"mismatch {bad}")


def check_spread() -> Check:
    value = exact_as(2, 4, 4, 2)
    return ("subspace-search", value == 5, f"A_S(2,4,4,2) = {value}")


def check_sandwich() -> Check:
    tried, bad = 0, []
    for m, n in product(range(1, 4), repeat=2):
        for r in range(1, min(m, n) + 1):
            if count_rank(r, CountingContext(2, m, n)) > 128:
                continue
            for d in range(1, 2 * r + 2):
                tried += 1
                try:
                    exact_ar(2, m, n, d, r)
                except BoundInconsistency as exc:
                    bad.append(((m, n, d, r), str(exc)))
    return ("sandwich", not bad, f"{tried} points inside their intervals" if not bad else f"violations {bad}")


def check_fibers() -> Check:
    spec = field_for(2, 2)
    words = list(enumerate_vectors_of_rank(1, CountingContext(2, 2, 2), spec))
    s_counts = Counter(map_S(w) for w in words)
    t_counts = Counter(map_T(w) for w in words)
    spaces = list(enumerate_subspaces(2, 2, 1))
    target = alpha(2, 1, 2)
    ok = all(s_counts[U] == target and t_counts[U] == target for U in spaces)
    return ("fibers", ok, f"each of {len(spaces)} lines has {target} preimages under both maps")


def check_boost() -> Check:
    spread = spread_gf2_4()
    code = boost_construction(spread, spread)
    report = verify(code)
    ok = report.ok and len(code) == 5 and report.d_min >= 4
    return ("boost", ok, f"{len(code)} words, minimum rank distance {report.d_min}")


def check_isometries() -> Check:
    bad = []
    for name, code in load_fixtures().items():
        if not isinstance(code, ConstantRankCode):
            continue
        base = rank_distance_multiset(code)
        if rank_distance_multiset(transpose_code(code)) != base:
            bad.append(f"transpose {name}")
        if code.n == code.m == code.r and rank_distance_multiset(extend_full_rank(code)) != base:
            bad.append(f"extend {name}")
    words = list(enumerate_codewords(make_gabidulin(field_for(2, 3), 3, 2)))
    lifted = lift_identity(words)
    if len(set(lifted.subspaces)) != len(words):
        bad.append("lift_identity not injective")
    return ("isometries", not bad, "distance multisets preserved" if not bad else ", ".join(bad))


def check_automorphisms() -> Check:
    R = build_graph("bilinear", q=2, m=2, n=2, d=2)
    bad = [(u, v) for u in range(len(R)) for v in range(len(R)) if not check_automorphism(R, translation_map(R, u, v))]
    K = build_graph("constant_rank", q=2, m=2, n=2, d=2, r=2)
    bad += [(u, v) for u in range(len(K)) for v in range(len(K)) if not check_automorphism(K, multiplication_map(K, u, v))]
    pairs = len(R) ** 2 + len(K) ** 2
    return ("automorphisms", not bad, f"{pairs} maps preserve adjacency" if not bad else f"failures {bad[:5]}")


def check_basis_independence(seed: int = SEED) -> Check:
    rng = random.Random(seed)
    spec = field_for(2, 3)
    others = [spec.random_basis(rng) for _ in range(10)]
    bad = 0
    for _ in range(100):
        x = tuple(rng.randrange(spec.order) for _ in range(3))
        w = rank_weight(RankVector(spec, x))
        bad += sum(rank_weight(RankVector(o, x)) != w for o in others)
    return ("basis-independence", bad == 0, "100 vectors, 10 bases" if not bad else f"{bad} disagreements")


def asymptotic_grid() -> list[tuple[Fraction, Fraction, Fraction]]:
    """(nu, delta_r, rho) over a 33x33x33 grid of step 1/32, in-domain points only."""
    out = []
    for j in range(1, 34):
        nu = Fraction(j, 32)
        top = min(nu, 1)
        for a, b in product(range(33), repeat=2):
            delta, rho = Fraction(a, 32), Fraction(b, 32)
            if delta <= top and rho <= top:
                out.append((nu, delta, rho))
    return out


def check_asymptotics() -> Check:
    bad = [p for p in asymptotic_grid() if (iv := asymptotic_ar(*p)).lower > iv.upper]
    for nu in (Fraction(1, 2), Fraction(1)):
        for a in range(33):
            delta = Fraction(a, 32)
            if delta <= nu:
                iv = asymptotic_ar(nu, delta, nu)
                if not (iv.exact and iv.lower == nu - delta):
                    bad.append((nu, delta, nu))
    for a, b in product(range(33), repeat=2):
        ds, rho = Fraction(a, 32), Fraction(b, 32)
        closed = min((1 - rho) * (rho - ds), rho * (1 - rho - ds)) if ds <= min(rho, 1 - rho) else 0
        if asymptotic_as(ds, rho) != closed:
            bad.append(("as", ds, rho))
    return ("asymptotics", not bad, "grid consistent" if not bad else f"{len(bad)} failures")


CHECKS = (
    check_counting,
    check_mrd_distribution,
    check_exact_formulas,
    check_spread,
    check_sandwich,
    check_fibers,
    check_boost,
    check_isometries,
    check_automorphisms,
    check_basis_independence,
    check_asymptotics,
)


def run_identity_suite() -> list[Check]:
    return [check() for check in CHECKS]
