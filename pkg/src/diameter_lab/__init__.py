"""Combinatorial diameter toolkit: pure complexes, dual graphs, corridor
constructions, connected layer multicomplexes, decomposability searches,
non-revisiting paths and diameter bounds."""

from __future__ import annotations

from .complex_core import (
    INF,
    PureComplex,
    PureMulticomplex,
    canonical_form,
    deletion,
    dual_graph,
    faces,
    f_count,
    is_corridor,
    is_flag,
    is_normal,
    is_pseudomanifold,
    is_strongly_connected,
    link,
    star,
    vertex_distance,
)
from .diameter import (
    FacetPath,
    corridor_upper_bound,
    dual_diameter,
    dual_distance,
    hirsch_excess,
    is_non_revisiting,
    longest_induced_path_johnson,
)
from .errors import (
    BadAnchor,
    BudgetExceeded,
    DiameterLabError,
    Disconnected,
    InvalidComplex,
    NotAFace,
    NotCertified,
    NotFlag,
    NotNormal,
    SizeLimit,
    TooSmall,
)

__version__ = "0.1.0"
