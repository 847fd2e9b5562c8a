"""Problem dispatch, oracle validation and JSON run reports."""
from dataclasses import asdict, dataclass
import json
import math
from time import perf_counter

import numpy as np

from . import closure, oracles
from .buffers import MatrixBuffer, OpCounters
from .errors import DagRequired, DistinctWeightsRequired
from .graph import Graph
from .semiring import PrecisionMode, SemiringOp, quantize

# CLI problem name -> (op, solver)
PROBLEMS = {
    "apsp": (SemiringOp.MIN_PLUS, closure.apsp),
    "aplp": (SemiringOp.MAX_PLUS, closure.aplp),
    "mcp": (SemiringOp.MAX_MIN, closure.max_capacity),
    "maxrp": (SemiringOp.MAX_MUL, closure.max_reliability),
    "minrp": (SemiringOp.MIN_MUL, closure.min_reliability),
    "mst": (SemiringOp.MIN_MAX, closure.mst_bottleneck),
    "gtc": (SemiringOp.OR_AND, closure.transitive_closure),
    "knn": (SemiringOp.ADD_NORM, None),
}

ALGO_NAMES = {"bf": "bellman_ford", "bellman_ford": "bellman_ford",
              "leyzorek": "leyzorek", "oracle": "oracle"}

KNN_RTOL = 1e-5


@dataclass
class RunReport:
    problem: str
    op: str
    n: int
    m: int
    k: int
    algorithm: str
    precision: str
    iterations: int
    tile_ops: int
    loads: int
    stores: int
    wall_time_seconds: float
    converged: bool
    validation: dict | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["validation"] is None:
            del d["validation"]
        return d

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), indent=2)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def half_quantum(x: float) -> float:
    """Spacing of fp16 values at magnitude ``x``."""
    x = min(abs(float(x)), 65504.0)
    return float(np.spacing(np.float16(x)))


def max_abs_diff(got, want) -> float:
    got = np.asarray(got, dtype=np.float64)
    want = np.asarray(want, dtype=np.float64)
    same = got == want
    if same.all():
        return 0.0
    with np.errstate(invalid="ignore"):
        diff = np.abs(got - want)
    diff[same] = 0.0
    diff[np.isnan(diff)] = math.inf
    return float(diff.max())


def oracle_matrix(problem: str, g: Graph, mode=PrecisionMode.EXACT32) -> np.ndarray:
    """float64 oracle answer for a graph problem, on mode-rounded weights."""
    def q(w):
        return float(quantize(np.float32(w), mode))

    if problem == "gtc":
        return oracles.dfs_reachability(g).astype(np.float64)
    if problem == "mst":
        und = Graph(g.n, [(u, v, q(w)) for u, v, w in g.edges if u != v], directed=False)
        return oracles.kruskal_bottleneck(und)[2]
    op = PROBLEMS[problem][0]
    return oracles.generalized_floyd_warshall(op, oracles.adjacency(g, op, weights=q))


def compare(result, oracle, mode) -> dict:
    """``{matched, max_abs_diff}`` for a closure result against its oracle.

    exact32 requires exact equality with the oracle rounded to fp32; mixed16
    allows twice the fp16 spacing at the largest finite oracle entry.
    """
    want = np.asarray(oracle, dtype=np.float64).astype(np.float32)
    got = np.asarray(result, dtype=np.float32)
    diff = max_abs_diff(got, want)
    if PrecisionMode(mode) is PrecisionMode.EXACT32:
        matched = bool(np.array_equal(got, want))
    else:
        finite = np.abs(want[np.isfinite(want)])
        scale = float(finite.max()) if finite.size else 0.0
        matched = diff <= 2 * half_quantum(scale)
    return {"matched": matched, "max_abs_diff": diff}


def compare_knn(dist2, indices, oracle_dist2, oracle_indices) -> dict:
    got = np.asarray(dist2, dtype=np.float64)
    want = np.asarray(oracle_dist2, dtype=np.float64)
    rel_ok = bool(np.all(np.abs(got - want) <= KNN_RTOL * np.abs(want)))
    same_idx = bool(np.array_equal(indices, oracle_indices))
    return {"matched": rel_ok and same_idx, "max_abs_diff": max_abs_diff(got, want)}


def solve_graph(problem: str, g: Graph, algorithm="leyzorek",
                precision=PrecisionMode.EXACT32, validate=False, workers=None,
                check=True):
    """Run one graph problem; returns ``(matrix, report, extra)``.

    ``extra`` holds the MSF (weight, edges) for ``mst`` and is None otherwise.
    """
    op, solver = PROBLEMS[problem]
    algo = ALGO_NAMES[algorithm]
    mode = PrecisionMode(precision)
    if problem == "mst" and g.directed:
        g = Graph(g.n, g.edges, directed=False)
    counters = OpCounters()
    extra = None
    if algo == "oracle":
        start = perf_counter()
        if problem == "aplp" and not g.is_dag():
            raise DagRequired("longest paths need a directed acyclic graph")
        matrix = oracle_matrix(problem, g, mode).astype(np.float32)
        counters.add(wall_time=perf_counter() - start)
        iterations, converged = 0, True
    else:
        kw = dict(counters=counters, workers=workers, check=check)
        if problem == "mst":
            try:
                res = solver(g, algo, mode, **kw)
                extra = (res.msf_weight, res.msf_edges)
                res = res.closure
            except DistinctWeightsRequired as exc:
                res = exc.result
        else:
            res = solver(g, algo, mode, **kw)
        matrix, iterations, converged = res.matrix.data, res.iterations, res.converged
    report = RunReport(problem, op.value, g.n, g.n, g.n, algo, mode.value, iterations,
                       counters.tile_ops, counters.loads, counters.stores,
                       counters.wall_time, converged)
    if validate:
        report.validation = compare(matrix, oracle_matrix(problem, g, mode), mode)
    return matrix, report, extra


def solve_knn(points, refs, k, algorithm="leyzorek", precision=PrecisionMode.EXACT32,
              validate=False, workers=None, check=True):
    """Nearest neighbours; the algorithm name is recorded but knn is one mmo."""
    mode = PrecisionMode(precision)
    P = np.asarray(points.data if isinstance(points, MatrixBuffer) else points, dtype=np.float32)
    R = np.asarray(refs.data if isinstance(refs, MatrixBuffer) else refs, dtype=np.float32)
    algo = ALGO_NAMES[algorithm]
    counters = OpCounters()
    if algo == "oracle":
        start = perf_counter()
        d, idx = oracles.brute_force_knn(quantize(P, mode), quantize(R, mode), k)
        dist2 = d.astype(np.float32)
        counters.add(wall_time=perf_counter() - start)
        iterations = 0
    else:
        res = closure.knn(P, R, k, mode, counters=counters, workers=workers, check=check)
        dist2, idx, iterations = res.dist2.data, res.indices, 1
    report = RunReport("knn", SemiringOp.ADD_NORM.value, R.shape[0], P.shape[0], P.shape[1],
                       algo, mode.value, iterations, counters.tile_ops, counters.loads,
                       counters.stores, counters.wall_time, True)
    if validate:
        od, oi = oracles.brute_force_knn(quantize(P, mode), quantize(R, mode), k)
        report.validation = compare_knn(dist2, idx, od, oi)
    return dist2, idx, report
