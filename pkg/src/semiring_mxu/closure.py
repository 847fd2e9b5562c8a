"""Closure solvers built on repeated mmo calls, and the application wrappers."""
from dataclasses import dataclass
import math
from time import perf_counter
from typing import NamedTuple

import numpy as np

from .buffers import MatrixBuffer, OpCounters, as_buffer
from .errors import (DagRequired, DistinctWeightsRequired, DomainError,
                     NonConvergence, ShapeError)
from .graph import Graph
from .mmo import mmo
from .semiring import INF, PrecisionMode, SemiringOp, check_domain, quantize, round_to_half

# (diagonal, absent edge) per closure opcode
ENCODING = {
    SemiringOp.MIN_PLUS: (0.0, INF),
    SemiringOp.MAX_PLUS: (0.0, -INF),
    SemiringOp.MIN_MUL: (1.0, INF),
    SemiringOp.MAX_MUL: (1.0, 0.0),
    SemiringOp.MIN_MAX: (-INF, INF),
    SemiringOp.MAX_MIN: (INF, -INF),
    SemiringOp.OR_AND: (1.0, 0.0),
}

ALGORITHMS = ("bellman_ford", "leyzorek")


@dataclass(frozen=True)
class ClosureResult:
    matrix: MatrixBuffer
    iterations: int
    converged: bool
    counters: OpCounters


class MSTResult(NamedTuple):
    closure: ClosureResult
    msf_weight: float
    msf_edges: list


class KnnResult(NamedTuple):
    dist2: MatrixBuffer
    indices: np.ndarray
    counters: OpCounters


def _check_weights(op, w):
    if op in (SemiringOp.MIN_MUL, SemiringOp.MAX_MUL):
        lo_ok = w > 0 if op is SemiringOp.MIN_MUL else w >= 0
        if not (lo_ok and w <= 1):
            raise DomainError(f"{op.value}: reliability {w} outside "
                              f"{'(0, 1]' if op is SemiringOp.MIN_MUL else '[0, 1]'}")
    elif op is SemiringOp.OR_AND and w not in (0.0, 1.0):
        raise DomainError(f"orand: edge weight {w} not in {{0, 1}}")


def encode(g: Graph, op: SemiringOp, mode: PrecisionMode = PrecisionMode.EXACT32) -> MatrixBuffer:
    """Adjacency matrix of ``g`` under ``op``'s absent-edge and diagonal encoding.

    Parallel edges (and self-loops, against the diagonal) are combined with
    oplus.  In mixed16 the weights are rounded to fp16 first.
    """
    op = SemiringOp(op)
    if op not in ENCODING:
        raise ValueError(f"{op.value} has no closure encoding")
    diag, absent = ENCODING[op]
    W = np.full((g.n, g.n), absent, dtype=np.float32)
    np.fill_diagonal(W, diag)
    arcs = list(g.arcs())
    if arcs:
        for _, _, w in arcs:
            _check_weights(op, w)
        u, v, w = (np.array(x) for x in zip(*arcs))
        w = quantize(w.astype(np.float32), mode)
        check_domain(op, w, "edge weight")
        op.spec.oplus.at(W, (u, v), w)
    return MatrixBuffer(W, mode)


def check_convergence(curr, prev, mode: PrecisionMode | None = None) -> bool:
    """Return True when ``curr`` differs from ``prev``.

    exact32 compares bit patterns; mixed16 compares the fp16-rounded values.
    """
    curr, prev = as_buffer(curr), as_buffer(prev)
    if curr.shape != prev.shape:
        raise ShapeError(f"shape mismatch {curr.shape} vs {prev.shape}")
    mode = PrecisionMode(mode or curr.mode)
    if mode is PrecisionMode.MIXED16:
        a = round_to_half(curr.data).view(np.uint32)
        b = round_to_half(prev.data).view(np.uint32)
    else:
        a, b = curr.bits(), prev.bits()
    return not np.array_equal(a, b)


def default_max_iter(n: int, algorithm: str, mode=PrecisionMode.EXACT32) -> int:
    """n passes for Bellman-Ford, ceil(log2 n) + 1 for Leyzorek.

    In mixed16 the fp16 rounding of operands can lower path values by a few
    ulps over extra passes, so Leyzorek gets the Bellman-Ford budget there.
    """
    if algorithm == "leyzorek" and PrecisionMode(mode) is PrecisionMode.EXACT32:
        return (math.ceil(math.log2(n)) if n > 1 else 0) + 1
    return max(n, 1)


def _closure(op, W, max_iter, squaring, counters, workers, check):
    op = SemiringOp(op)
    if not op.closure_capable:
        raise ValueError(f"{op.value} is not a closure opcode")
    W = as_buffer(W)
    if W.rows != W.cols:
        raise ShapeError(f"closure needs a square matrix, got {W.shape}")
    mode = W.mode
    algorithm = "leyzorek" if squaring else "bellman_ford"
    if max_iter is None:
        max_iter = default_max_iter(W.rows, algorithm, mode)
    counters = counters if counters is not None else OpCounters()
    start = perf_counter()
    C = MatrixBuffer(quantize(W.data, mode), mode)
    it = 0
    while True:
        try:
            D = mmo(op, C, C if squaring else W, C, counters,
                    mode=mode, check=check, workers=workers)
        except DomainError as exc:
            if it == 0:
                raise
            counters.add(wall_time=perf_counter() - start)
            raise NonConvergence(f"{algorithm}: iterate left the {op.value} domain "
                                 f"after {it} iterations ({exc})",
                                 ClosureResult(C, it, False, counters)) from exc
        it += 1
        counters.add(iterations=1)
        changed = check_convergence(D, C, mode)
        C = D
        if not changed:
            break
        if it >= max_iter:
            counters.add(wall_time=perf_counter() - start)
            raise NonConvergence(f"{algorithm}: {op.value} closure still changing after "
                                 f"{it} iterations", ClosureResult(C, it, False, counters))
    counters.add(wall_time=perf_counter() - start)
    return ClosureResult(C, it, True, counters)


def closure_bellman_ford(op, W, max_iter=None, *, counters=None, workers=None,
                         check=True) -> ClosureResult:
    """Iterate C <- C (+) (C (x) W) from C = W until nothing changes.

    Raises NonConvergence after ``max_iter`` (default n) changing passes,
    which for min-plus means a negative cycle.
    """
    return _closure(op, W, max_iter, False, counters, workers, check)


def closure_leyzorek(op, W, max_iter=None, *, counters=None, workers=None,
                     check=True) -> ClosureResult:
    """Iterate C <- C (+) (C (x) C); at most ceil(log2 n) + 1 passes on convergent input."""
    return _closure(op, W, max_iter, True, counters, workers, check)


def _normalize_algorithm(algorithm):
    name = {"bf": "bellman_ford"}.get(algorithm, algorithm)
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return name


def solve_closure(g: Graph, op: SemiringOp, algorithm="leyzorek",
                  mode=PrecisionMode.EXACT32, max_iter=None, counters=None,
                  workers=None, check=True) -> ClosureResult:
    W = encode(g, op, mode)
    run = closure_leyzorek if _normalize_algorithm(algorithm) == "leyzorek" else closure_bellman_ford
    return run(op, W, max_iter, counters=counters, workers=workers, check=check)


def apsp(g, algorithm="leyzorek", mode=PrecisionMode.EXACT32, **kw) -> ClosureResult:
    """All-pairs shortest path lengths (min-plus)."""
    return solve_closure(g, SemiringOp.MIN_PLUS, algorithm, mode, **kw)


def aplp(g, algorithm="leyzorek", mode=PrecisionMode.EXACT32, **kw) -> ClosureResult:
    """All-pairs longest (critical) path lengths on a DAG (max-plus)."""
    if not g.is_dag():
        raise DagRequired("longest paths need a directed acyclic graph")
    return solve_closure(g, SemiringOp.MAX_PLUS, algorithm, mode, **kw)


def max_capacity(g, algorithm="leyzorek", mode=PrecisionMode.EXACT32, **kw) -> ClosureResult:
    """Bottleneck (widest path) capacities (max-min)."""
    return solve_closure(g, SemiringOp.MAX_MIN, algorithm, mode, **kw)


def max_reliability(g, algorithm="leyzorek", mode=PrecisionMode.EXACT32, **kw) -> ClosureResult:
    return solve_closure(g, SemiringOp.MAX_MUL, algorithm, mode, **kw)


def min_reliability(g, algorithm="leyzorek", mode=PrecisionMode.EXACT32, **kw) -> ClosureResult:
    # cycles with reliability < 1 make this diverge; DAG inputs always converge
    return solve_closure(g, SemiringOp.MIN_MUL, algorithm, mode, **kw)


def transitive_closure(g, algorithm="leyzorek", mode=PrecisionMode.EXACT32, **kw) -> ClosureResult:
    """Reflexive transitive closure (or-and); edge weights are ignored."""
    unit = Graph(g.n, [(u, v, 1.0) for u, v, _ in g.edges], g.directed)
    return solve_closure(unit, SemiringOp.OR_AND, algorithm, mode, **kw)


def mst_bottleneck(g, algorithm="leyzorek", mode=PrecisionMode.EXACT32,
                   extract=True, **kw) -> MSTResult:
    """Minimax (bottleneck) distances and the minimum spanning forest.

    With distinct weights an edge (u, v, w) belongs to the MSF exactly when
    w equals the bottleneck distance between u and v.
    """
    if g.directed:
        raise ValueError("mst_bottleneck needs an undirected graph")
    result = solve_closure(g, SemiringOp.MIN_MAX, algorithm, mode, **kw)
    if not extract:
        return MSTResult(result, float("nan"), [])
    edges = [(u, v, float(quantize(np.float32(w), mode))) for u, v, w in g.edges if u != v]
    weights = [w for _, _, w in edges]
    if len(set(weights)) != len(weights):
        raise DistinctWeightsRequired("MSF extraction needs pairwise distinct weights", result)
    B = result.matrix.data
    msf = [(u, v, w) for u, v, w in edges if B[u, v] == np.float32(w)]
    return MSTResult(result, float(sum(w for _, _, w in msf)), msf)


def knn(points, refs, k: int, mode=PrecisionMode.EXACT32, counters=None,
        workers=None, check=True) -> KnnResult:
    """Squared L2 distances from one add-norm mmo, then the k nearest refs per query.

    Ties go to the lower reference index.
    """
    P = np.asarray(points.data if isinstance(points, MatrixBuffer) else points, dtype=np.float32)
    R = np.asarray(refs.data if isinstance(refs, MatrixBuffer) else refs, dtype=np.float32)
    if P.ndim != 2 or R.ndim != 2 or P.shape[1] != R.shape[1] or P.shape[1] < 1:
        raise ShapeError(f"points {P.shape} and refs {R.shape} need a common dimension >= 1")
    if not 1 <= k <= R.shape[0]:
        raise ShapeError(f"k={k} outside [1, {R.shape[0]}]")
    counters = counters if counters is not None else OpCounters()
    start = perf_counter()
    zeros = MatrixBuffer(np.zeros((P.shape[0], R.shape[0]), dtype=np.float32), mode)
    dist2 = mmo(SemiringOp.ADD_NORM, MatrixBuffer(P, mode), MatrixBuffer(R.T, mode),
                zeros, counters, mode=mode, check=check, workers=workers)
    counters.add(iterations=1, wall_time=perf_counter() - start)
    idx = np.argsort(dist2.data, axis=1, kind="stable")[:, :k]
    return KnnResult(dist2, idx, counters)
