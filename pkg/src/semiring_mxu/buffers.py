"""Dense fp32 matrix buffers and operation counters."""
from dataclasses import dataclass, field, fields
import threading

import numpy as np

from .errors import ShapeError
from .semiring import PrecisionMode


@dataclass(eq=False)
class MatrixBuffer:
    """Row-major m x n matrix of fp32 cells tagged with a precision mode."""

    data: np.ndarray
    mode: PrecisionMode = PrecisionMode.EXACT32

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float32)
        if arr.ndim != 2:
            raise ShapeError(f"matrix buffer needs a 2-d array, got shape {arr.shape}")
        self.data = arr
        self.mode = PrecisionMode(self.mode)

    @classmethod
    def full(cls, rows, cols, value, mode=PrecisionMode.EXACT32):
        return cls(np.full((rows, cols), value, dtype=np.float32), mode)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def copy(self) -> "MatrixBuffer":
        return MatrixBuffer(self.data.copy(), self.mode)

    def bits(self) -> np.ndarray:
        return self.data.view(np.uint32)

    def bit_equal(self, other) -> bool:
        other = as_buffer(other)
        return self.shape == other.shape and np.array_equal(self.bits(), other.bits())

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __repr__(self):
        return f"MatrixBuffer({self.rows}x{self.cols}, {self.mode.value})"


def as_buffer(x, mode=None) -> MatrixBuffer:
    """Wrap an array-like as a MatrixBuffer; buffers pass through unchanged."""
    if isinstance(x, MatrixBuffer):
        return x
    return MatrixBuffer(np.asarray(x), PrecisionMode(mode) if mode else PrecisionMode.EXACT32)


@dataclass
class OpCounters:
    """Tile-op / load / store / iteration counts of one run.

    Updates go through :meth:`add`, which is lock-protected so workers may
    share one instance.
    """

    tile_ops: int = 0
    loads: int = 0
    stores: int = 0
    iterations: int = 0
    wall_time: float = 0.0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def add(self, tile_ops=0, loads=0, stores=0, iterations=0, wall_time=0.0):
        with self._lock:
            self.tile_ops += tile_ops
            self.loads += loads
            self.stores += stores
            self.iterations += iterations
            self.wall_time += wall_time

    def merge(self, other: "OpCounters"):
        self.add(other.tile_ops, other.loads, other.stores, other.iterations, other.wall_time)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if not f.name.startswith("_")}
