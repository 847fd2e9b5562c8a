import numpy as np
import pytest

from semiring_mxu.semiring import SemiringOp

POSITIVE_OPS = (SemiringOp.MIN_MUL, SemiringOp.MAX_MUL)


def random_operand(op, rng, shape, lo=-8.0, hi=8.0):
    """Random fp32 values inside ``op``'s domain."""
    op = SemiringOp(op)
    if op is SemiringOp.OR_AND:
        return rng.integers(0, 2, size=shape).astype(np.float32)
    if op in POSITIVE_OPS:
        return rng.uniform(0.01, hi, size=shape).astype(np.float32)
    return rng.uniform(lo, hi, size=shape).astype(np.float32)


def ulp_distance(a, b):
    """Element-wise distance in fp32 representable steps (same-sign inputs)."""
    a = np.asarray(a, dtype=np.float32).view(np.int32).astype(np.int64)
    b = np.asarray(b, dtype=np.float32).view(np.int32).astype(np.int64)
    return np.abs(a - b)


def bits(x):
    return np.asarray(x, dtype=np.float32).view(np.uint32)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def triangle3():
    from semiring_mxu.graph import Graph
    return Graph(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 5.0)])
