"""Diffusion-degree estimation on insert-only graph streams."""

from ._core import (  # noqa: F401
    AdjSketch,
    CascadeConfig,
    EdgeEvent,
    MembershipLookup,
    Orientation,
    RankedNode,
    SketchMode,
    SpaceReport,
    SpreadReport,
    StaticGraph,
    TopKTracker,
    exact_dd,
    exact_topk,
    generate,
    mean_error,
    neighbor_degree_bounds,
    q_for,
    read_edge_list,
    simulate,
    space_accounting,
    space_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
