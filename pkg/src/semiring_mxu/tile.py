"""Fixed-shape tile micro-kernel: load, one tile mmo, store."""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .buffers import MatrixBuffer, OpCounters
from .errors import DomainError, ShapeError
from .semiring import PrecisionMode, SemiringOp, check_domain, round_to_half

# The only place the tile edge is defined; every tile routine takes ``size``
# so tiling logic can also be exercised at other shapes (e.g. 4).
TILE_SIZE = 16


class TileRole(str, Enum):
    INPUT_A = "A"
    INPUT_B = "B"
    ACCUMULATOR = "C"


@dataclass(eq=False)
class Tile:
    values: np.ndarray
    role: TileRole

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float32)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ShapeError(f"tile must be square, got {v.shape}")
        self.values = v
        self.role = TileRole(self.role)

    @property
    def size(self) -> int:
        return self.values.shape[0]


def _fill_value(op: SemiringOp, role: TileRole) -> float:
    spec = SemiringOp(op).spec
    if role is TileRole.INPUT_A:
        return spec.pad_a
    if role is TileRole.INPUT_B:
        return spec.pad_b
    return spec.identity


def tile_load(src: MatrixBuffer, row0: int, col0: int, op: SemiringOp,
              mode: PrecisionMode, role: TileRole,
              counters: OpCounters | None = None, size: int = TILE_SIZE) -> Tile:
    """Copy the ``size x size`` window at (row0, col0) of ``src`` into a tile.

    Cells past the buffer edge get the padding value for ``role``.  Input
    tiles are rounded to fp16 in mixed16 mode.
    """
    role = TileRole(role)
    if row0 < 0 or col0 < 0:
        raise ShapeError(f"negative tile origin ({row0}, {col0})")
    vals = np.full((size, size), _fill_value(op, role), dtype=np.float32)
    data = src.data
    r1 = min(row0 + size, data.shape[0])
    c1 = min(col0 + size, data.shape[1])
    if r1 > row0 and c1 > col0:
        vals[:r1 - row0, :c1 - col0] = data[row0:r1, col0:c1]
    if role is not TileRole.ACCUMULATOR and PrecisionMode(mode) is PrecisionMode.MIXED16:
        vals = round_to_half(vals)
    if counters is not None:
        counters.add(loads=1)
    return Tile(vals, role)


def tile_mmo(op: SemiringOp, a: Tile, b: Tile, c: Tile,
             mode: PrecisionMode = PrecisionMode.EXACT32,
             counters: OpCounters | None = None, check: bool = True) -> Tile:
    """d(i, j) = c(i, j) (+) a(i, 0) (x) b(0, j) (+) ... (+) a(i, s-1) (x) b(s-1, j).

    The fold is seeded with c and runs over k in ascending order.
    """
    op = SemiringOp(op)
    if (a.role, b.role, c.role) != (TileRole.INPUT_A, TileRole.INPUT_B, TileRole.ACCUMULATOR):
        raise ValueError(f"tile roles must be (A, B, C), got {(a.role.value, b.role.value, c.role.value)}")
    if not a.size == b.size == c.size:
        raise ShapeError("tile sizes differ")
    av, bv = a.values, b.values
    if PrecisionMode(mode) is PrecisionMode.MIXED16:
        av, bv = round_to_half(av), round_to_half(bv)
    if check:
        check_domain(op, av, "A tile value")
        check_domain(op, bv, "B tile value")
        check_domain(op, c.values, "accumulator value")
    spec = op.spec
    with np.errstate(invalid="ignore", over="ignore"):
        terms = spec.otimes(av[:, :, None], bv[None, :, :])  # [i, k, j]
        if spec.oplus_is_add:
            d = c.values.copy()
            for k in range(terms.shape[1]):
                np.add(d, terms[:, k, :], out=d)
        else:
            # min/max are exact, so any grouping equals the left fold
            d = spec.oplus(c.values, spec.oplus.reduce(terms, axis=1))
    if check and np.isnan(d).any():
        raise DomainError(f"{op.value}: undefined product in tile mmo")
    if counters is not None:
        counters.add(tile_ops=1)
    return Tile(d, TileRole.ACCUMULATOR)


def tile_store(dst: MatrixBuffer, tile: Tile, row0: int, col0: int,
               counters: OpCounters | None = None) -> int:
    """Write the in-bounds part of ``tile`` into ``dst``; returns cells written."""
    if tile.role is not TileRole.ACCUMULATOR:
        raise ValueError("only accumulator tiles can be stored")
    data = dst.data
    r1 = min(row0 + tile.size, data.shape[0])
    c1 = min(col0 + tile.size, data.shape[1])
    written = 0
    if r1 > row0 and c1 > col0:
        data[row0:r1, col0:c1] = tile.values[:r1 - row0, :c1 - col0]
        written = (r1 - row0) * (c1 - col0)
    if counters is not None:
        counters.add(stores=1)
    return written
