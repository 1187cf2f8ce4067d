"""Small pre-verified codebooks shipped with the package.

Every fixture is rebuilt deterministically by :func:`build_fixtures`; the
JSON files under ``data/fixtures`` are its output, and the test suite checks
that they still agree.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .codes import (
    ConstantDimensionCode,
    ConstantRankCode,
    constant_rank_slice,
    dumps_codebook,
    load_codebook,
    make_gabidulin,
)
from .constructions import boost_construction
from .fields import field_for
from .search import solve_ar, solve_as, witness_code

Code = ConstantRankCode | ConstantDimensionCode


def _searched_rank(q: int, m: int, n: int, d: int, r: int) -> ConstantRankCode:
    res, G = solve_ar(q, m, n, d, r)
    if not res.exact:
        raise RuntimeError("fixture search did not finish")
    return witness_code(G, res)


def spread_gf2_4() -> ConstantDimensionCode:
    """Five planes of GF(2)^4 meeting pairwise in zero: a spread."""
    res, G = solve_as(2, 4, 4, 2)
    if not res.exact:
        raise RuntimeError("fixture search did not finish")
    return witness_code(G, res)


def build_fixtures() -> dict[str, Code]:
    gab = make_gabidulin(field_for(2, 3), 3, 2)
    spread = spread_gf2_4()
    return {
        "mrd_slice_q2_m3_n3_d2_r2": constant_rank_slice(gab, 2),
        "mrd_slice_q2_m3_n3_d2_r3": constant_rank_slice(gab, 3),
        "search_q2_m2_n2_d2_r2": _searched_rank(2, 2, 2, 2, 2),
        "search_q2_m2_n3_d2_r2": _searched_rank(2, 2, 3, 2, 2),
        "search_q2_m2_n3_d2_r1": _searched_rank(2, 2, 3, 2, 1),
        "spread_q2_n4_r2": spread,
        "boost_q2_m4_n4_d4_r2": boost_construction(spread, spread),
    }


def write_fixtures(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, code in build_fixtures().items():
        path = directory / f"{name}.json"
        path.write_text(dumps_codebook(code))
        paths.append(path)
    return paths


def fixture_paths() -> list[Path]:
    root = resources.files("crcodes") / "data" / "fixtures"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json"))


def load_fixtures() -> dict[str, Code]:
    return {p.stem: load_codebook(p) for p in fixture_paths()}

