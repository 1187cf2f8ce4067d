"""Constant-rank and constant-dimension codebooks, Gabidulin codes, verification.

Minimum distances are exhaustive pairwise scans.  A code with a single word
has minimum distance :data:`UNBOUNDED`.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .fields import CapExceeded, FieldSpec, desk_cap
from .linalg import MatrixQ, Subspace, rank, subspace_distance
from .rank import RankVector, rank_distance, rank_weight

SCHEMA_VERSION = 1
UNBOUNDED = math.inf


@dataclass
class ConstantRankCode:
    spec: FieldSpec
    n: int
    r: int
    words: tuple[RankVector, ...]
    d: int | None = None  # design distance, if one is claimed
    d_min: int | float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        self.words = tuple(self.words)
        for w in self.words:
            if w.spec != self.spec or w.n != self.n:
                raise ValueError("codeword does not belong to GF(q^m)^n of this code")

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[RankVector]:
        return iter(self.words)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def m(self) -> int:
        return self.spec.m


@dataclass
class ConstantDimensionCode:
    q: int
    n: int
    r: int
    subspaces: tuple[Subspace, ...]
    d: int | None = None  # claimed minimum subspace distance
    ds_min: int | float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        self.subspaces = tuple(self.subspaces)
        for U in self.subspaces:
            if U.ambient_dim != self.n or U.field.order != self.q:
                raise ValueError("subspace does not live in GF(q)^n of this code")

    def __len__(self) -> int:
        return len(self.subspaces)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.subspaces)


def min_rank_distance(code: ConstantRankCode | Sequence[RankVector]) -> int | float:
    words = list(code)
    best: int | float = UNBOUNDED
    for x, y in combinations(words, 2):
        dist = rank_distance(x, y)
        if dist < best:
            best = dist
    return best


def min_subspace_distance(code: ConstantDimensionCode | Sequence[Subspace]) -> int | float:
    best: int | float = UNBOUNDED
    for U, V in combinations(list(code), 2):
        dist = subspace_distance(U, V)
        if dist < best:
            best = dist
    return best


def rank_distance_multiset(words: Iterable[RankVector]) -> Counter:
    return Counter(rank_distance(x, y) for x, y in combinations(list(words), 2))


def subspace_distance_multiset(subspaces: Iterable[Subspace]) -> Counter:
    return Counter(subspace_distance(U, V) for U, V in combinations(list(subspaces), 2))


# -- Gabidulin codes --


@dataclass(frozen=True)
class GabidulinCode:
    spec: FieldSpec
    n: int
    k: int
    eval_points: tuple[int, ...]
    generator: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    def encode(self, message: Sequence[int]) -> RankVector:
        F = self.spec.Fqm
        out = [0] * self.n
        for u, row in zip(message, self.generator):
            if u:
                out = [F.add(c, F.mul(u, g)) for c, g in zip(out, row)]
        return RankVector(self.spec, tuple(out))


def make_gabidulin(spec: FieldSpec, n: int, d: int, eval_points: Sequence[int] | None = None) -> GabidulinCode:
    """Gabidulin code of length ``n`` and minimum rank distance ``d`` over GF(q^m).

    Row ``i`` of the generator holds ``g_j ** (q**i)``.  The evaluation points
    default to the first ``n`` elements of the field's basis.
    """
    if not 1 <= d <= n <= spec.m:
        raise ValueError(f"need 1 <= d <= n <= m, got d={d}, n={n}, m={spec.m}")
    points = tuple(spec.basis[:n]) if eval_points is None else tuple(eval_points)
    if len(points) != n or rank_weight(RankVector(spec, points)) != n:
        raise ValueError("evaluation points must be n elements independent over GF(q)")
    k = n - d + 1
    F = spec.Fqm
    gen = tuple(tuple(F.frobenius(g, i) for g in points) for i in range(k))
    return GabidulinCode(spec, n, k, points, gen)


def enumerate_codewords(code: GabidulinCode, cap: int | None = None) -> Iterator[RankVector]:
    """All q^(mk) codewords; messages in base-q^m counting order."""
    cap = desk_cap() if cap is None else cap
    size = code.spec.order**code.k
    if size > cap:
        raise CapExceeded(f"{size} codewords exceed the cap {cap}")
    for message in product(range(code.spec.order), repeat=code.k):
        yield code.encode(message)


def constant_rank_slice(code: GabidulinCode, r: int) -> ConstantRankCode:
    """Codewords of rank ``r``: an (n, d, r) constant-rank code."""
    if r < code.d or r > code.n:
        raise ValueError(f"no codeword of rank {r} when d={code.d}, n={code.n}")
    words = tuple(w for w in enumerate_codewords(code) if rank_weight(w) == r)
    if not words:
        raise ValueError(f"rank-{r} slice is empty")
    return ConstantRankCode(code.spec, code.n, r, words, d=code.d)


# -- verification --


@dataclass
class VerifyReport:
    ok: bool
    checks: list[tuple[str, bool, str]]
    d_min: int | float | None = None
    first_violation: tuple | None = None

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in self.checks]


def _fmt(d: int | float | None) -> str:
    return "unbounded" if d == UNBOUNDED else str(d)


def verify(code: ConstantRankCode | ConstantDimensionCode) -> VerifyReport:
    """Check constant rank/dimension, distinctness and the claimed distance.

    Caches the recomputed minimum distance on the code.
    """
    checks: list[tuple[str, bool, str]] = []
    first: tuple | None = None
    if isinstance(code, ConstantRankCode):
        items: Sequence = code.words
        weights = [rank_weight(w) for w in items]
        label, target = "rank", code.r
        dist = rank_distance
    else:
        items = code.subspaces
        weights = [U.dim for U in items]
        label, target = "dimension", code.r
        dist = subspace_distance

    checks.append(("nonempty", len(items) > 0, f"{len(items)} words"))
    bad = next((i for i, w in enumerate(weights) if w != target), None)
    checks.append((f"constant {label}", bad is None, f"all {target}" if bad is None else f"word {bad} has {label} {weights[bad]}"))
    if bad is not None and first is None:
        first = (bad,)

    seen: dict = {}
    dup = None
    for i, w in enumerate(items):
        if w in seen:
            dup = (seen[w], i)
            break
        seen[w] = i
    checks.append(("distinct", dup is None, "no repeats" if dup is None else f"words {dup[0]} and {dup[1]} coincide"))
    if dup is not None and first is None:
        first = dup

    d_min: int | float = UNBOUNDED
    worst = None
    for (i, x), (j, y) in combinations(enumerate(items), 2):
        dd = dist(x, y)
        if dd < d_min:
            d_min, worst = dd, (i, j)
    if isinstance(code, ConstantRankCode):
        code.d_min = d_min
    else:
        code.ds_min = d_min
    if code.d is not None:
        ok = d_min >= code.d
        checks.append(("minimum distance", ok, f"{_fmt(d_min)} >= {code.d}" if ok else f"{_fmt(d_min)} < {code.d}"))
        if not ok and first is None:
            first = worst
    else:
        checks.append(("minimum distance", True, _fmt(d_min)))
    return VerifyReport(all(ok for _, ok, _ in checks), checks, d_min, first)


# -- codebook JSON --


def codebook_to_json(code: ConstantRankCode | ConstantDimensionCode) -> dict:
    if isinstance(code, ConstantRankCode):
        return {
            "schema_version": SCHEMA_VERSION,
            "type": "constant_rank",
            "params": {"q": code.q, "m": code.m, "n": code.n, "d": code.d, "r": code.r},
            "field": code.spec.to_json(),
            "words": [w.to_json() for w in code.words],
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "constant_dimension",
        "params": {"q": code.q, "n": code.n, "d": code.d, "r": code.r},
        "words": [U.to_json() for U in code.subspaces],
    }


def codebook_from_json(obj: dict) -> ConstantRankCode | ConstantDimensionCode:
    kind = obj.get("type")
    params = obj["params"]
    if kind == "constant_rank":
        spec = FieldSpec.from_json(obj["field"])
        if (spec.q, spec.m) != (params["q"], params["m"]):
            raise ValueError("field description disagrees with params")
        words = tuple(RankVector(spec, tuple(w)) for w in obj["words"])
        return ConstantRankCode(spec, int(params["n"]), int(params["r"]), words, d=params.get("d"))
    if kind == "constant_dimension":
        q = int(params["q"])
        subspaces = []
        for w in obj["words"]:
            M = MatrixQ.from_json(w)
            if M.q != q:
                raise ValueError("subspace field disagrees with params")
            subspaces.append(Subspace(M))
        return ConstantDimensionCode(q, int(params["n"]), int(params["r"]), tuple(subspaces), d=params.get("d"))
    raise ValueError(f"unknown codebook type {kind!r}")


def dumps_codebook(code: ConstantRankCode | ConstantDimensionCode) -> str:
    return json.dumps(codebook_to_json(code), sort_keys=True) + "\n"


def save_codebook(code: ConstantRankCode | ConstantDimensionCode, path: str | Path) -> None:
    Path(path).write_text(dumps_codebook(code))


def load_codebook(path: str | Path) -> ConstantRankCode | ConstantDimensionCode:
    return codebook_from_json(json.loads(Path(path).read_text()))


def rank_code_from_matrices(spec: FieldSpec, matrices: Iterable[MatrixQ], r: int | None = None, d: int | None = None) -> ConstantRankCode:
    """Build a code from expansion matrices (m x n over GF(q))."""
    from .rank import from_matrix

    mats = list(matrices)
    words = tuple(from_matrix(spec, X) for X in mats)
    n = mats[0].cols if mats else 0
    if r is None:
        r = rank(mats[0]) if mats else 0
    return ConstantRankCode(spec, n, r, words, d=d)

