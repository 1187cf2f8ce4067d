"""Exact A_R and A_S at tiny parameters as independence numbers of distance graphs.

Vertices of the three graphs:

* ``bilinear``: all of GF(q^m)^n, adjacent when their rank distance is < d;
* ``constant_rank``: the rank-r vectors of GF(q^m)^n, same adjacency;
* ``subspace``: the r-dimensional subspaces of GF(q)^n, adjacent when their
  subspace distance is < d.

A maximum independent set is a maximum clique of the complement, found by
bitset branch and bound with a greedy colouring bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .bounds import BoundInconsistency, ar_interval, as_bounds
from .codes import ConstantDimensionCode, ConstantRankCode
from .fields import CapExceeded, FieldSpec, field_for
from .linalg import enumerate_subspaces, inverse, subspace_distance
from .rank import (
    CountingContext,
    count_rank,
    enumerate_vectors,
    enumerate_vectors_of_rank,
    expansion_matrix,
    from_matrix,
    gaussian,
    rank_distance,
)

DEFAULT_VERTEX_CAP = 512
DEFAULT_BUDGET = 2_000_000
KINDS = ("bilinear", "constant_rank", "subspace")


class BudgetExhausted(RuntimeError):
    """The node budget ran out before optimality was proved."""

    def __init__(self, message: str, incumbent: int = 0) -> None:
        super().__init__(message)
        self.incumbent = incumbent


@dataclass
class DistanceGraph:
    kind: str
    params: dict[str, int]
    vertices: tuple
    adj: list[int]
    spec: FieldSpec | None = None
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.index:
            self.index = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2


def _vertex_count(kind: str, q: int, n: int, m: int | None, r: int | None) -> int:
    if kind == "bilinear":
        return q ** (m * n)
    if kind == "constant_rank":
        if r > min(m, n):
            return 0
        return count_rank(r, CountingContext(q, m, n))
    return gaussian(n, r, q)


def build_graph(
    kind: str,
    *,
    q: int,
    n: int,
    d: int,
    m: int | None = None,
    r: int | None = None,
    cap: int = DEFAULT_VERTEX_CAP,
    spec: FieldSpec | None = None,
) -> DistanceGraph:
    """Build R_q(m, n, d), K_q(m, n, d, r) or the subspace graph on E_r(q, n)."""
    if kind not in KINDS:
        raise ValueError(f"unknown graph kind {kind!r}; expected one of {KINDS}")
    if kind != "subspace" and m is None:
        raise ValueError("rank-metric graphs need m")
    if kind != "bilinear" and r is None:
        raise ValueError(f"{kind} graph needs r")
    size = _vertex_count(kind, q, n, m, r)
    if size > cap:
        raise CapExceeded(f"{size} vertices exceed the cap {cap}")

    params: dict[str, int] = {"q": q, "n": n, "d": d}
    if kind == "subspace":
        params["r"] = r
        vertices = tuple(enumerate_subspaces(q, n, r))
        dist: Any = subspace_distance
    else:
        spec = field_for(q, m) if spec is None else spec
        params["m"] = m
        if kind == "bilinear":
            vertices = tuple(enumerate_vectors(spec, n))
        else:
            params["r"] = r
            vertices = tuple(enumerate_vectors_of_rank(r, CountingContext(q, m, n), spec))
        dist = rank_distance

    adj = [0] * len(vertices)
    for i, x in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if dist(x, vertices[j]) < d:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return DistanceGraph(kind, params, vertices, adj, spec if kind != "subspace" else None)


# -- maximum independent set --


@dataclass(frozen=True)
class SearchResult:
    status: str  # "exact", "lower_bound" or "unknown"
    cardinality: int
    witness: tuple[int, ...]
    nodes: int

    @property
    def exact(self) -> bool:
        return self.status == "exact"


def is_independent(G: DistanceGraph, vertices: Sequence[int]) -> bool:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(not (G.adj[v] & mask) for v in vertices)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class _Search:
    """Max clique in the complement, on vertices relabelled by ascending G-degree."""

    def __init__(self, G: DistanceGraph, budget: int) -> None:
        n = len(G)
        order = sorted(range(n), key=lambda v: (bin(G.adj[v]).count("1"), v))
        pos = {v: i for i, v in enumerate(order)}
        self.order = order
        self.adj = [0] * n  # G-adjacency in the new labels
        for v in range(n):
            mask = 0
            for u in _bits(G.adj[v]):
                mask |= 1 << pos[u]
            self.adj[pos[v]] = mask
        full = (1 << n) - 1
        self.comp = [full & ~self.adj[i] & ~(1 << i) for i in range(n)]
        self.budget = budget
        self.nodes = 0
        self.best: list[int] = self._greedy(full)

    def _greedy(self, P: int) -> list[int]:
        chosen = []
        while P:
            v = (P & -P).bit_length() - 1
            chosen.append(v)
            P &= self.comp[v]
        return chosen

    def _colour(self, P: int) -> tuple[list[int], list[int]]:
        """Greedy colouring of the complement restricted to P: each class is a clique of G."""
        verts, bounds = [], []
        colour = 0
        while P:
            colour += 1
            Q = P
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= self.adj[v]
                P &= ~(1 << v)
                verts.append(v)
                bounds.append(colour)
        return verts, bounds

    def expand(self, current: list[int], P: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(f"node budget {self.budget} exhausted", len(self.best))
        verts, bounds = self._colour(P)
        for k in range(len(verts) - 1, -1, -1):
            if len(current) + bounds[k] <= len(self.best):
                return
            v = verts[k]
            current.append(v)
            newP = P & self.comp[v]
            if newP:
                self.expand(current, newP)
            elif len(current) > len(self.best):
                self.best = list(current)
            current.pop()
            P &= ~(1 << v)

    def original(self, labels: Sequence[int]) -> tuple[int, ...]:
        return tuple(sorted(self.order[v] for v in labels))


def max_independent_set(G: DistanceGraph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Exact maximum independent set unless ``budget`` node expansions run out.

    With a single worker the witness is deterministic: vertices are ordered by
    degree with ties broken by index.
    """
    if len(G) == 0:
        return SearchResult("exact", 0, (), 0)
    if budget < 1:
        return SearchResult("unknown", 0, (), 0)
    s = _Search(G, budget)
    status = "exact"
    try:
        s.expand([], (1 << len(G)) - 1)
    except BudgetExhausted:
        status = "lower_bound"
    witness = s.original(s.best)
    if not is_independent(G, witness):
        raise RuntimeError("search produced a dependent set")
    return SearchResult(status, len(witness), witness, s.nodes)


def witness_code(G: DistanceGraph, result: SearchResult) -> ConstantRankCode | ConstantDimensionCode:
    """The independent set as a codebook with its design distance."""
    p = G.params
    items = tuple(G.vertices[i] for i in result.witness)
    if G.kind == "subspace":
        return ConstantDimensionCode(p["q"], p["n"], p["r"], items, d=p["d"])
    if G.kind == "constant_rank":
        return ConstantRankCode(G.spec, p["n"], p["r"], items, d=p["d"])
    raise ValueError("bilinear-graph witnesses are not constant-rank codes")


def solve_ar(
    q: int, m: int, n: int, d: int, r: int, budget: int = DEFAULT_BUDGET, cap: int = DEFAULT_VERTEX_CAP
) -> tuple[SearchResult, DistanceGraph]:
    G = build_graph("constant_rank", q=q, m=m, n=n, d=d, r=r, cap=cap)
    return max_independent_set(G, budget), G


def solve_as(
    q: int, n: int, ds: int, r: int, budget: int = DEFAULT_BUDGET, cap: int = DEFAULT_VERTEX_CAP
) -> tuple[SearchResult, DistanceGraph]:
    G = build_graph("subspace", q=q, n=n, d=ds, r=r, cap=cap)
    return max_independent_set(G, budget), G


def _require_exact(res: SearchResult) -> int:
    if not res.exact:
        raise BudgetExhausted(f"search stopped after {res.nodes} nodes with {res.cardinality} words", res.cardinality)
    return res.cardinality


def exact_ar(q: int, m: int, n: int, d: int, r: int, budget: int = DEFAULT_BUDGET, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """A_R(q^m, n, d, r) by exhaustive search, checked against the bound engine."""
    if d < 1:
        raise ValueError("d must be at least 1")
    res, _ = solve_ar(q, m, n, d, r, budget, cap)
    value = _require_exact(res)
    iv = ar_interval(q, m, n, d, r)
    if value not in iv:
        raise BoundInconsistency(f"exact A_R = {value} lies outside [{iv.lower}, {iv.upper}]")
    return value


def exact_as(q: int, n: int, ds: int, r: int, budget: int = DEFAULT_BUDGET, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """A_S(q, n, ds, r) by exhaustive search; ``ds`` is the full subspace distance."""
    if ds < 1:
        raise ValueError("ds must be at least 1")
    res, _ = solve_as(q, n, ds, r, budget, cap)
    value = _require_exact(res)
    iv = as_bounds(q, n, (ds + 1) // 2, r)
    if value not in iv:
        raise BoundInconsistency(f"exact A_S = {value} lies outside [{iv.lower}, {iv.upper}]")
    return value


# -- automorphisms --


def check_automorphism(G: DistanceGraph, mapping: Sequence[int]) -> bool:
    """True iff the vertex bijection ``mapping`` preserves adjacency both ways."""
    n = len(G)
    if len(mapping) != n or sorted(mapping) != list(range(n)):
        raise ValueError("mapping is not a bijection of the vertex set")
    for u in range(n):
        image = 0
        for w in _bits(G.adj[u]):
            image |= 1 << mapping[w]
        if image != G.adj[mapping[u]]:
            return False
    return True


def translation_map(G: DistanceGraph, u: int, v: int) -> list[int]:
    """x -> x + v - u on the bilinear forms graph."""
    if G.kind != "bilinear":
        raise ValueError("translations act on the bilinear forms graph")
    shift = G.vertices[v] - G.vertices[u]
    return [G.index[x + shift] for x in G.vertices]


def multiplication_map(G: DistanceGraph, u: int, v: int) -> list[int]:
    """X -> X U^{-1} V on the full-rank square graph K_q(m, m, d, m)."""
    p = G.params
    if G.kind != "constant_rank" or not p["n"] == p["m"] == p["r"]:
        raise ValueError("multiplication maps act on K_q(m, m, d, m)")
    U = expansion_matrix(G.vertices[u])
    V = expansion_matrix(G.vertices[v])
    M = inverse(U) @ V
    return [G.index[from_matrix(G.spec, expansion_matrix(x) @ M)] for x in G.vertices]


def vertex_transitivity_witness(G: DistanceGraph, u: int, v: int) -> list[int] | None:
    """An automorphism sending u to v, or None where no canned map applies."""
    if u == v:
        return list(range(len(G)))
    p = G.params
    if G.kind == "bilinear":
        mapping = translation_map(G, u, v)
    elif G.kind == "constant_rank" and p["n"] == p["m"] == p["r"]:
        mapping = multiplication_map(G, u, v)
    else:
        return None
    if mapping[u] != v or not check_automorphism(G, mapping):
        raise RuntimeError("canned map failed to be an automorphism")
    return mapping


def swap_map(n: int, a: int, b: int) -> list[int]:
    mapping = list(range(n))
    mapping[a], mapping[b] = b, a
    return mapping

