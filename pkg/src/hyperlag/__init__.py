"""Lagrangians of uniform hypergraphs by gradient projection on the simplex."""
__version__ = "0.1.0"

from .hypergraph import (
    DuplicateEdge,
    EdgeArity,
    Hypergraph,
    HypergraphError,
    HypergraphFormatError,
    RepeatedVertexInEdge,
    VertexOutOfRange,
    degrees,
    gen_complete,
    gen_frankl_star,
    gen_icosphere,
    gen_random,
    new_hypergraph,
    parse_hg,
    read_hg,
    toy_hypergraph,
    write_hg,
)
from .simplex import NonFiniteInput, gradient_map, project_simplex, sample_uniform
from .solver import (
    LineSearchFailed,
    SolverConfig,
    SolverRun,
    Status,
    bb_step,
    criticality_residual,
    line_search,
    multi_start,
    solve,
)
from .tensor import DimensionMismatch, value_and_gradient, weight_gradient, weight_value
