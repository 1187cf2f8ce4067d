"""Exact rank-metric and constant-rank code toolkit over GF(q^m)."""

from __future__ import annotations

from .bounds import ar_interval, as_bounds, asymptotic_ar, asymptotic_as
from .codes import ConstantDimensionCode, ConstantRankCode, make_gabidulin, verify
from .fields import field_for
from .rank import RankVector, rank_distance, rank_weight
from .search import exact_ar, exact_as

__version__ = "0.1.0"
