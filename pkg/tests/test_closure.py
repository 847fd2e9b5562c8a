import math

import numpy as np
import pytest

from semiring_mxu import closure, oracles
from semiring_mxu.buffers import MatrixBuffer
from semiring_mxu.closure import (check_convergence, closure_bellman_ford, closure_leyzorek,
                                  default_max_iter, encode)
from semiring_mxu.errors import (DagRequired, DistinctWeightsRequired, DomainError,
                                 NonConvergence, ShapeError)
from semiring_mxu.fileio import generate_graph, generate_points
from semiring_mxu.graph import Graph
from semiring_mxu.mmo import mmo
from semiring_mxu.runner import oracle_matrix
from semiring_mxu.semiring import INF, PrecisionMode, SemiringOp, round_to_half

from conftest import bits

CLOSURE_OPS = [op for op in SemiringOp if op.closure_capable]
MIXED = PrecisionMode.MIXED16


def path_graph(n, w=1.0):
    return Graph(n, [(i, i + 1, w) for i in range(n - 1)])


# -- encode ----------------------------------------------------------------

def test_encode_minplus():
    W = encode(Graph(2, [(0, 1, 4.0)]), SemiringOp.MIN_PLUS)
    assert np.array_equal(W.data, [[0, 4], [INF, 0]])


def test_encode_orand_isolated():
    assert np.array_equal(encode(Graph(2), SemiringOp.OR_AND).data, np.eye(2))


def test_encode_maxmul():
    W = encode(Graph(2, [(0, 1, 0.5)]), SemiringOp.MAX_MUL)
    assert np.array_equal(W.data, [[1, 0.5], [0, 1]])


def test_encode_parallel_edges_combined_by_oplus():
    g = Graph(2, [(0, 1, 4.0), (0, 1, 2.0), (0, 1, 7.0)])
    assert encode(g, SemiringOp.MIN_PLUS).data[0, 1] == 2
    assert encode(g, SemiringOp.MAX_PLUS).data[0, 1] == 7


def test_encode_undirected_mirrors():
    W = encode(Graph(2, [(0, 1, 3.0)], directed=False), SemiringOp.MIN_MAX)
    assert W.data[0, 1] == W.data[1, 0] == 3 and W.data[0, 0] == -INF


@pytest.mark.parametrize("op,w", [(SemiringOp.MIN_MUL, 1.5), (SemiringOp.MIN_MUL, 0.0),
                                  (SemiringOp.MAX_MUL, -0.1), (SemiringOp.OR_AND, 0.5)])
def test_encode_domain_errors(op, w):
    with pytest.raises(DomainError):
        encode(Graph(2, [(0, 1, w)]), op)


def test_encode_rejects_addnorm():
    with pytest.raises(ValueError):
        encode(Graph(2), SemiringOp.ADD_NORM)


def test_encode_mixed16_rounds_weights():
    W = encode(Graph(2, [(0, 1, 2049.0)]), SemiringOp.MIN_PLUS, MIXED)
    assert W.data[0, 1] == 2048 and W.mode is MIXED


# -- closure schemes -------------------------------------------------------

def test_bf_path3(triangle3):
    g = Graph(3, [(0, 1, 1.0), (1, 2, 2.0)])
    res = closure_bellman_ford(SemiringOp.MIN_PLUS, encode(g, SemiringOp.MIN_PLUS))
    fw = oracles.generalized_floyd_warshall("minplus", oracles.adjacency(g, "minplus"))
    assert res.converged and res.matrix.data[0, 2] == fw[0, 2] == 3


@pytest.mark.parametrize("algo", [closure_bellman_ford, closure_leyzorek])
def test_single_vertex_one_confirming_pass(algo):
    W = encode(Graph(1), SemiringOp.MIN_PLUS)
    res = algo(SemiringOp.MIN_PLUS, W)
    assert res.iterations == 1 and res.converged and res.matrix.bit_equal(W)


def test_maxplus_positive_two_cycle_diverges():
    g = Graph(2, [(0, 1, 1.0), (1, 0, 1.0)])
    with pytest.raises(NonConvergence) as info:
        closure_bellman_ford(SemiringOp.MAX_PLUS, encode(g, SemiringOp.MAX_PLUS))
    assert info.value.result.converged is False and info.value.result.iterations == 2


def test_negative_cycle_leyzorek_diverges():
    g = Graph(3, [(0, 1, 1.0), (1, 2, -3.0), (2, 0, 1.0)])
    with pytest.raises(NonConvergence):
        closure.apsp(g, "leyzorek")


def test_closure_requires_square_and_closure_op():
    with pytest.raises(ShapeError):
        closure_bellman_ford(SemiringOp.MIN_PLUS, np.zeros((2, 3)))
    with pytest.raises(ValueError):
        closure_leyzorek(SemiringOp.PLUS_MUL, np.zeros((2, 2)))


def test_leyzorek_path8_within_bound():
    res = closure.apsp(path_graph(8), "leyzorek")
    assert res.converged and res.iterations <= math.ceil(math.log2(8)) + 1 == 4
    assert res.matrix.data[0, 7] == 7


@pytest.mark.parametrize("op", CLOSURE_OPS)
def test_complete_graph_two_iterations(op):
    # equal weights keep every direct edge optimal, so one hop suffices
    if op is SemiringOp.MAX_PLUS:
        pytest.skip("a complete digraph has positive cycles under max-plus")
    w = 1.0 if op in (SemiringOp.MIN_MUL, SemiringOp.MAX_MUL, SemiringOp.OR_AND) else 3.0
    n = 6
    g = Graph(n, [(u, v, w) for u in range(n) for v in range(n) if u != v])
    assert closure.solve_closure(g, op, "leyzorek").iterations <= 2


def test_algorithms_agree_on_random_16_node_digraphs():
    for seed in range(20):
        g = generate_graph("erdos_renyi", 16, 0.2, (1, 20), seed=seed)
        bf = closure.apsp(g, "bellman_ford").matrix
        lz = closure.apsp(g, "leyzorek").matrix
        assert bf.bit_equal(lz)
        assert np.array_equal(lz.data, oracle_matrix("apsp", g).astype(np.float32))


def test_default_max_iter():
    assert default_max_iter(64, "bellman_ford") == 64
    assert default_max_iter(64, "leyzorek") == 7
    assert default_max_iter(33, "leyzorek") == 7
    assert default_max_iter(1, "leyzorek") == 1
    assert default_max_iter(64, "leyzorek", MIXED) == 64


def test_explicit_max_iter_raises_with_partial_result():
    with pytest.raises(NonConvergence) as info:
        closure.apsp(path_graph(20), "bellman_ford", max_iter=3)
    assert info.value.result.iterations == 3


# -- check_convergence -----------------------------------------------------

def test_convergence_identical():
    a = MatrixBuffer(np.ones((3, 3)))
    assert check_convergence(a, a.copy()) is False


def test_convergence_one_ulp():
    a = np.ones((3, 3), np.float32)
    b = a.copy()
    b[1, 2] = np.nextafter(np.float32(1), np.float32(2))
    assert check_convergence(a, b, PrecisionMode.EXACT32) is True


def test_convergence_mixed16_rounds_both_sides():
    assert round_to_half(1.00001) == round_to_half(1.0)
    assert check_convergence([[1.0]], [[1.00001]], MIXED) is False
    assert check_convergence([[1.0]], [[1.001]], MIXED) is True


def test_convergence_shape_error():
    with pytest.raises(ShapeError):
        check_convergence(np.zeros((2, 2)), np.zeros((2, 3)))


# -- applications ----------------------------------------------------------

def test_apsp_example(triangle3):
    assert closure.apsp(triangle3).matrix.data[0, 2] == 3


def test_max_capacity_example():
    g = Graph(3, [(0, 1, 5.0), (1, 2, 3.0)])
    W = oracles.adjacency(g, "maxmin")
    assert closure.max_capacity(g).matrix.data[0, 2] == 3
    assert oracles.generalized_floyd_warshall("maxmin", W)[0, 2] == 3


def test_max_reliability_example():
    g = Graph(3, [(0, 1, 0.9), (1, 2, 0.9), (0, 2, 0.5)])
    got = closure.max_reliability(g).matrix.data[0, 2]
    want = oracles.generalized_floyd_warshall("maxmul", oracles.adjacency(g, "maxmul"))[0, 2]
    assert got == np.float32(np.float32(0.9) * np.float32(0.9))
    assert got == pytest.approx(want, rel=1e-6) and want == pytest.approx(0.81)


def test_min_reliability_dag():
    g = Graph(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.75)])
    assert closure.min_reliability(g).matrix.data[0, 2] == 0.25


def test_aplp_dag_and_cycle():
    g = Graph(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 2.0)])
    assert closure.aplp(g).matrix.data[0, 2] == 3
    with pytest.raises(DagRequired):
        closure.aplp(Graph(2, [(0, 1, 1.0), (1, 0, 1.0)]))


def test_mst_triangle():
    g = Graph(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)], directed=False)
    res = closure.mst_bottleneck(g)
    assert sorted(w for _, _, w in res.msf_edges) == [1, 2] and res.msf_weight == 3
    assert res.closure.matrix.data[0, 2] == 2
    assert oracles.kruskal_bottleneck(g)[0] == 3


def test_mst_forest_and_single_edge():
    res = closure.mst_bottleneck(Graph(2, directed=False))
    assert res.closure.matrix.data[0, 1] == INF and res.msf_weight == 0
    res = closure.mst_bottleneck(Graph(2, [(0, 1, 7.0)], directed=False))
    B = res.closure.matrix.data
    assert B[0, 1] == B[1, 0] == 7 and res.msf_weight == 7


def test_mst_duplicate_weights_still_returns_matrix():
    g = Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)], directed=False)
    with pytest.raises(DistinctWeightsRequired) as info:
        closure.mst_bottleneck(g)
    assert info.value.result.matrix.data[0, 2] == 1
    assert math.isnan(closure.mst_bottleneck(g, extract=False).msf_weight)


def test_mst_needs_undirected():
    with pytest.raises(ValueError):
        closure.mst_bottleneck(Graph(2, [(0, 1, 1.0)]))


def test_transitive_closure_examples():
    cyc = Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
    assert np.all(closure.transitive_closure(cyc).matrix.data == 1)
    assert np.array_equal(closure.transitive_closure(Graph(3)).matrix.data, np.eye(3))
    chain = Graph(3, [(0, 1, 5.0), (1, 2, 9.0)])  # weights are ignored
    got = closure.transitive_closure(chain).matrix.data
    assert np.array_equal(got, np.triu(np.ones((3, 3))))
    assert np.array_equal(got, oracles.dfs_reachability(chain))


def test_knn_example():
    res = closure.knn([[0.9, 0.0]], [[0, 0], [1, 0], [5, 0]], 1)
    d, idx = oracles.brute_force_knn([[0.9, 0.0]], [[0, 0], [1, 0], [5, 0]], 1)
    assert res.indices[0, 0] == idx[0, 0] == 1
    assert res.dist2.data[0, 1] == pytest.approx(0.01, abs=1e-6)
    assert res.counters.iterations == 1


def test_knn_full_ranking_and_self_match():
    pts = generate_points(20, 3, seed=4)
    res = closure.knn(pts, pts, 20)
    assert all(sorted(row) == list(range(20)) for row in res.indices.tolist())
    rows = np.take_along_axis(res.dist2.data, res.indices, axis=1)
    assert np.all(np.diff(rows, axis=1) >= 0)
    assert np.array_equal(res.indices[:, 0], np.arange(20))
    assert np.all(rows[:, 0] == 0)


def test_knn_tie_goes_to_lower_index():
    res = closure.knn([[0.0]], [[1.0], [-1.0], [1.0]], 3)
    assert res.indices.tolist() == [[0, 1, 2]]


def test_knn_shape_errors():
    with pytest.raises(ShapeError):
        closure.knn([[0.0, 1.0]], [[1.0]], 1)
    with pytest.raises(ShapeError):
        closure.knn([[0.0]], [[1.0]], 2)
    with pytest.raises(ShapeError):
        oracles.brute_force_knn([[0.0]], [[1.0]], 2)


# -- properties ------------------------------------------------------------

def _instances(count, n_max=40):
    rng = np.random.default_rng(99)
    for seed in range(count):
        n = int(rng.integers(2, n_max + 1))
        yield seed, n, float(rng.choice([0.1, 0.3, 0.7]))


PROBLEM_INPUTS = {
    "apsp": dict(kind="erdos_renyi", weights="integer", weight_range=(1, 20)),
    "mcp": dict(kind="erdos_renyi", weights="integer", weight_range=(1, 50)),
    "maxrp": dict(kind="erdos_renyi", weights="pow2", weight_range=(0, 3)),
    "minrp": dict(kind="dag_layered", weights="pow2", weight_range=(0, 3)),
    "aplp": dict(kind="dag_layered", weights="integer", weight_range=(1, 20)),
    "gtc": dict(kind="erdos_renyi", weights="integer", weight_range=(1, 1)),
}
SOLVERS = {"apsp": closure.apsp, "mcp": closure.max_capacity, "maxrp": closure.max_reliability,
           "minrp": closure.min_reliability, "aplp": closure.aplp,
           "gtc": closure.transitive_closure}


@pytest.mark.parametrize("problem", sorted(PROBLEM_INPUTS))
def test_oracle_equivalence_and_agreement(problem):
    for seed, n, density in _instances(15):
        g = generate_graph(n=n, density=density, seed=seed, **PROBLEM_INPUTS[problem])
        want = oracle_matrix(problem, g).astype(np.float32)
        lz = SOLVERS[problem](g, "leyzorek")
        bf = SOLVERS[problem](g, "bellman_ford")
        assert np.array_equal(lz.matrix.data, want)
        assert bf.matrix.bit_equal(lz.matrix)
        assert lz.iterations <= math.ceil(math.log2(n)) + 1
        assert bf.iterations <= n


def test_bellman_ford_iterations_equal_min_hop_depth():
    for seed, n, density in _instances(30):
        g = generate_graph("erdos_renyi", n, density / 2, (1, 20), seed=seed)
        res = closure.apsp(g, "bellman_ford")
        assert res.iterations == oracles.min_hop_depth(g)


@pytest.mark.parametrize("op", CLOSURE_OPS)
def test_idempotent_at_fixpoint(op):
    weights = {SemiringOp.MIN_MUL: "pow2", SemiringOp.MAX_MUL: "pow2"}.get(op, "integer")
    rng_ = (0, 3) if weights == "pow2" else (1, 1 if op is SemiringOp.OR_AND else 9)
    kind = "dag_layered" if op in (SemiringOp.MAX_PLUS, SemiringOp.MIN_MUL) else "erdos_renyi"
    g = generate_graph(kind, 30, 0.2, rng_, seed=3, weights=weights,
                       directed=op is not SemiringOp.MIN_MAX)
    C = closure.solve_closure(g, op).matrix
    assert mmo(op, C, C, C).bit_equal(C)


@pytest.mark.parametrize("op,sign", [(SemiringOp.MIN_PLUS, -1), (SemiringOp.MAX_PLUS, 1),
                                     (SemiringOp.MAX_MUL, 1), (SemiringOp.MAX_MIN, 1)])
def test_iterates_are_monotone(op, sign):
    weights = "pow2" if op is SemiringOp.MAX_MUL else "integer"
    rng_ = (0, 3) if weights == "pow2" else (1, 9)
    kind = "dag_layered" if op is SemiringOp.MAX_PLUS else "erdos_renyi"
    g = generate_graph(kind, 40, 0.08, rng_, seed=5, weights=weights)
    W = encode(g, op)
    C = W
    for _ in range(40):
        D = mmo(op, C, W, C)
        assert np.all(D.data >= C.data) if sign > 0 else np.all(D.data <= C.data)
        if D.bit_equal(C):
            break
        C = D


def test_general_float_weights_close_to_oracle():
    # non-representable sums: the fp32 fold differs from float64 only by rounding
    for seed in range(10):
        g = generate_graph("erdos_renyi", 30, 0.2, (0.5, 10.0), seed=seed, weights="uniform")
        want = oracle_matrix("apsp", g)
        got = closure.apsp(g).matrix.data.astype(np.float64)
        fin = np.isfinite(want)
        assert np.array_equal(fin, np.isfinite(got))
        assert np.allclose(got[fin], want[fin], rtol=30 * 2.0 ** -23, atol=0)


def test_mixed16_half_representable_equals_exact32():
    for seed in range(10):
        g = generate_graph("erdos_renyi", 24, 0.2, (1, 16), seed=seed)
        ex = closure.apsp(g).matrix
        mx = closure.apsp(g, mode=MIXED).matrix
        assert np.array_equal(bits(ex.data), bits(mx.data))


def test_minmul_underflow_is_nonconvergence():
    # a cycle with reliability < 1 drives min-mul values towards zero
    g = Graph(2, [(0, 1, 0.5), (1, 0, 0.5)])
    with pytest.raises(NonConvergence):
        closure.min_reliability(g, "bellman_ford", max_iter=400)
