"""Semiring-style tiled matrix operations D = C (+) (A (x) B) and graph closures."""
from .buffers import MatrixBuffer, OpCounters
from .closure import (ClosureResult, aplp, apsp, check_convergence, closure_bellman_ford,
                      closure_leyzorek, encode, knn, max_capacity, max_reliability,
                      min_reliability, mst_bottleneck, transitive_closure)
from .errors import (AliasError, ConfigError, DagRequired, DistinctWeightsRequired,
                     DomainError, NonConvergence, ParseError, ShapeError)
from .graph import Graph
from .mmo import mmo, mmo_reference, tile_count
from .semiring import (PrecisionMode, SemiringOp, identity_and_padding, round_to_half,
                       scalar_oplus, scalar_otimes)
from .tile import TILE_SIZE, Tile, TileRole, tile_load, tile_mmo, tile_store

__version__ = "0.1.0"
