"""Quick invariant battery behind ``semiring-mxu selftest``."""
import math

import numpy as np

from . import closure, oracles
from .buffers import OpCounters
from .errors import NonConvergence
from .fileio import generate_graph
from .graph import Graph
from .mmo import mmo, mmo_reference, tile_count
from .runner import oracle_matrix
from .semiring import SemiringOp, identity_and_padding, round_to_half, scalar_oplus, scalar_otimes


def _operands(op, rng, shape):
    if op is SemiringOp.OR_AND:
        return rng.integers(0, 2, size=shape).astype(np.float32)
    lo = 0.05 if op in (SemiringOp.MIN_MUL, SemiringOp.MAX_MUL) else -4.0
    return rng.uniform(lo, 4.0, size=shape).astype(np.float32)


def check_scalar_identities(rng):
    for op in SemiringOp:
        ident, pad_a, pad_b = identity_and_padding(op)
        for x in _operands(op, rng, 50):
            if scalar_oplus(op, ident, x) != x:
                return False
            if op is not SemiringOp.ADD_NORM and scalar_otimes(op, pad_a, x) != ident:
                return False
    return round_to_half(2049.0) == 2048.0 and math.isinf(round_to_half(70000.0))


def check_tiling(rng):
    for op in SemiringOp:
        for _ in range(5):
            m, n, k = (int(x) for x in rng.integers(1, 40, size=3))
            A, B, C = _operands(op, rng, (m, k)), _operands(op, rng, (k, n)), _operands(op, rng, (m, n))
            c = OpCounters()
            if not mmo(op, A, B, C, c).bit_equal(mmo_reference(op, A, B, C)):
                return False
            if c.tile_ops != tile_count(m, n, k):
                return False
    return True


def check_closures(rng):
    for seed in range(10):
        n = int(rng.integers(2, 24))
        g = generate_graph("erdos_renyi", n, 0.3, (1, 9), seed=seed)
        want = oracle_matrix("apsp", g).astype(np.float32)
        bf = closure.apsp(g, "bellman_ford").matrix.data
        lz = closure.apsp(g, "leyzorek")
        if not (np.array_equal(bf, want) and np.array_equal(lz.matrix.data, want)):
            return False
        if lz.iterations > math.ceil(math.log2(n)) + 1:
            return False
    return True


def check_bottleneck(rng):
    for seed in range(10):
        g = generate_graph("erdos_renyi", int(rng.integers(2, 20)), 0.4, (1, 1000),
                           seed=seed, weights="distinct", directed=False)
        res = closure.mst_bottleneck(g)
        w, _, B = oracles.kruskal_bottleneck(g)
        if not np.array_equal(res.closure.matrix.data, B.astype(np.float32)) or res.msf_weight != w:
            return False
    return True


def check_divergence(rng):
    g = Graph(3, [(0, 1, 1.0), (1, 2, -3.0), (2, 0, 1.0)])
    try:
        closure.apsp(g, "bellman_ford")
    except NonConvergence:
        return True
    return False


CHECKS = [
    ("scalar identities and fp16 rounding", check_scalar_identities),
    ("tiled mmo == reference, tile counts", check_tiling),
    ("apsp closures == Floyd-Warshall", check_closures),
    ("min-max closure == Kruskal bottleneck", check_bottleneck),
    ("negative cycle detected", check_divergence),
]


def run(seed: int = 0, out=print) -> bool:
    rng = np.random.default_rng(seed)
    ok = True
    for name, fn in CHECKS:
        passed = bool(fn(rng))
        ok &= passed
        out(f"{'PASS' if passed else 'FAIL'}  {name}")
    return ok
