"""Arbitrary-shape D = C (+) (A (x) B) assembled from tile micro-ops."""
from concurrent.futures import ThreadPoolExecutor
import math
import os

import numpy as np

from .buffers import MatrixBuffer, OpCounters, as_buffer
from .errors import AliasError, ShapeError
from .semiring import PrecisionMode, SemiringOp, check_domain, quantize
from .tile import TILE_SIZE, TileRole, tile_load, tile_mmo, tile_store

THREADS_ENV = "SEMIRING_MXU_THREADS"

# below this many output tiles a thread pool costs more than it saves
_MIN_TILES_PER_WORKER = 16


def tile_count(m: int, n: int, k: int, size: int = TILE_SIZE) -> int:
    return math.ceil(m / size) * math.ceil(n / size) * math.ceil(k / size)


def resolve_workers(requested: int | None, n_tiles: int) -> int:
    """Worker count for ``n_tiles`` output tiles.

    ``requested`` of None or 0 means auto; the environment variable caps
    the result either way.
    """
    cap = int(os.environ.get(THREADS_ENV, "0") or 0)
    if requested:
        workers = requested
    else:
        workers = min(os.cpu_count() or 1, max(1, n_tiles // _MIN_TILES_PER_WORKER))
    if cap > 0:
        workers = min(workers, cap)
    return max(1, min(workers, n_tiles))


def _check_shapes(A, B, C):
    m, k = A.shape
    k2, n = B.shape
    if k != k2 or C.shape != (m, n):
        raise ShapeError(f"incompatible shapes A{A.shape} B{B.shape} C{C.shape}")
    return m, n, k


def _check_operands(op, A, B, C, mode):
    check_domain(op, quantize(A.data, mode), "A value")
    check_domain(op, quantize(B.data, mode), "B value")
    check_domain(op, C.data, "C value")


def mmo(op: SemiringOp, A, B, C, counters: OpCounters | None = None, *,
        out: MatrixBuffer | None = None, mode: PrecisionMode | None = None,
        check: bool = True, workers: int | None = None,
        size: int = TILE_SIZE) -> MatrixBuffer:
    """Tiled D = C (+) (A (x) B).

    Each output tile is seeded from C and folded over K tiles in ascending
    order, so the result is bit-identical to :func:`mmo_reference`.  Output
    tiles are independent and may be spread over ``workers`` threads.

    ``out`` may be ``C`` itself (in-place update) but must not share memory
    with A or B.  ``check=False`` skips the entry domain scan.
    """
    op = SemiringOp(op)
    A, B, C = as_buffer(A), as_buffer(B), as_buffer(C)
    mode = PrecisionMode(mode or A.mode)
    m, n, k = _check_shapes(A, B, C)
    if out is None:
        out = MatrixBuffer(np.empty((m, n), dtype=np.float32), mode)
    else:
        if out.shape != (m, n):
            raise ShapeError(f"output shape {out.shape} != {(m, n)}")
        if np.shares_memory(out.data, A.data) or np.shares_memory(out.data, B.data):
            raise AliasError("mmo output must not alias A or B")
    if check:
        _check_operands(op, A, B, C, mode)

    row_tiles = range(0, m, size)
    col_tiles = range(0, n, size)
    k_tiles = range(0, k, size)
    jobs = [(i0, j0) for i0 in row_tiles for j0 in col_tiles]

    def run(i0, j0):
        local = OpCounters()
        acc = tile_load(C, i0, j0, op, mode, TileRole.ACCUMULATOR, local, size)
        for k0 in k_tiles:
            a = tile_load(A, i0, k0, op, mode, TileRole.INPUT_A, local, size)
            b = tile_load(B, k0, j0, op, mode, TileRole.INPUT_B, local, size)
            acc = tile_mmo(op, a, b, acc, mode, local, check=False)
        return acc, local

    # all accumulators are computed before any store so that out may be C
    nworkers = resolve_workers(workers, len(jobs))
    if nworkers == 1:
        results = [run(i0, j0) for i0, j0 in jobs]
    else:
        with ThreadPoolExecutor(nworkers) as pool:
            results = list(pool.map(lambda ij: run(*ij), jobs))
    for (i0, j0), (acc, local) in zip(jobs, results):
        tile_store(out, acc, i0, j0, local)
        if counters is not None:
            counters.merge(local)
    out.mode = mode
    return out


def mmo_reference(op: SemiringOp, A, B, C, *, mode: PrecisionMode | None = None,
                  check: bool = True) -> MatrixBuffer:
    """Untiled D = C (+) (A (x) B): the same ascending-k fold, no padding."""
    op = SemiringOp(op)
    A, B, C = as_buffer(A), as_buffer(B), as_buffer(C)
    mode = PrecisionMode(mode or A.mode)
    m, n, k = _check_shapes(A, B, C)
    if check:
        _check_operands(op, A, B, C, mode)
    a = quantize(A.data, mode)
    b = quantize(B.data, mode)
    spec = op.spec
    d = C.data.copy()
    with np.errstate(invalid="ignore", over="ignore"):
        for t in range(k):
            d = spec.oplus(d, spec.otimes(a[:, t, None], b[None, t, :]))
    return MatrixBuffer(d.astype(np.float32, copy=False), mode)
