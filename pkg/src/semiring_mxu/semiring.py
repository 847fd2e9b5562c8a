"""The nine oplus/otimes operation pairs and the two precision modes.

Every value is carried as a 32-bit float.  Booleans (or-and) are 0.0/1.0,
absent entries are IEEE infinities.  The vectorised helpers here are what
the tile engine runs; the scalar helpers add per-call domain checks.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import DomainError

INF = float("inf")


class PrecisionMode(str, Enum):
    EXACT32 = "exact32"
    MIXED16 = "mixed16"


class SemiringOp(str, Enum):
    PLUS_MUL = "plusmul"
    MIN_PLUS = "minplus"
    MAX_PLUS = "maxplus"
    MIN_MUL = "minmul"
    MAX_MUL = "maxmul"
    MIN_MAX = "minmax"
    MAX_MIN = "maxmin"
    OR_AND = "orand"
    ADD_NORM = "addnorm"

    @property
    def spec(self) -> "OpSpec":
        return _SPECS[self]

    @property
    def oplus_identity(self) -> float:
        return _SPECS[self].identity

    @property
    def pad_pair(self) -> tuple[float, float]:
        return _SPECS[self].pad_a, _SPECS[self].pad_b

    @property
    def closure_capable(self) -> bool:
        return self not in (SemiringOp.ADD_NORM, SemiringOp.PLUS_MUL)


def _addnorm(a, b):
    d = np.subtract(a, b)
    return np.multiply(d, d)


@dataclass(frozen=True)
class OpSpec:
    oplus: Callable
    otimes: Callable
    identity: float
    pad_a: float
    pad_b: float
    domain: Callable  # ndarray -> bool mask
    domain_text: str
    oplus_is_add: bool  # result depends on fold order


def _finite(x):
    return np.isfinite(x)


def _no_neg_inf(x):
    return np.isfinite(x) | (x == INF)


def _no_pos_inf(x):
    return np.isfinite(x) | (x == -INF)


def _positive(x):
    return x > 0


def _nonneg_finite(x):
    return np.isfinite(x) & (x >= 0)


def _not_nan(x):
    return ~np.isnan(x)


def _boolean(x):
    return (x == 0) | (x == 1)


_SPECS = {
    SemiringOp.PLUS_MUL: OpSpec(np.add, np.multiply, 0.0, 0.0, 0.0,
                                _finite, "finite reals", True),
    SemiringOp.MIN_PLUS: OpSpec(np.minimum, np.add, INF, INF, INF,
                                _no_neg_inf, "reals and +inf", False),
    SemiringOp.MAX_PLUS: OpSpec(np.maximum, np.add, -INF, -INF, -INF,
                                _no_pos_inf, "reals and -inf", False),
    SemiringOp.MIN_MUL: OpSpec(np.minimum, np.multiply, INF, INF, INF,
                               _positive, "x > 0 (including +inf)", False),
    SemiringOp.MAX_MUL: OpSpec(np.maximum, np.multiply, 0.0, 0.0, 0.0,
                               _nonneg_finite, "finite x >= 0", False),
    SemiringOp.MIN_MAX: OpSpec(np.minimum, np.maximum, INF, INF, INF,
                               _not_nan, "reals and +-inf", False),
    SemiringOp.MAX_MIN: OpSpec(np.maximum, np.minimum, -INF, -INF, -INF,
                               _not_nan, "reals and +-inf", False),
    # or/and restricted to {0, 1} coincide with max/min
    SemiringOp.OR_AND: OpSpec(np.maximum, np.minimum, 0.0, 0.0, 0.0,
                              _boolean, "{0, 1}", False),
    SemiringOp.ADD_NORM: OpSpec(np.add, _addnorm, 0.0, 0.0, 0.0,
                                _finite, "finite reals", True),
}


def identity_and_padding(op: SemiringOp) -> tuple[float, float, float]:
    """Return ``(oplus_identity, pad_a, pad_b)`` for ``op``.

    Padding an out-of-range K index with ``pad_a`` in A and ``pad_b`` in B
    yields a product equal to the oplus identity, so partial tiles do not
    change the result.
    """
    s = _SPECS[SemiringOp(op)]
    return s.identity, s.pad_a, s.pad_b


def round_to_half(x):
    """Round to the nearest fp16 value (ties to even), widened back to fp32.

    Magnitudes past the fp16 range become signed infinity.
    """
    arr = np.asarray(x, dtype=np.float32)
    with np.errstate(over="ignore"):
        out = arr.astype(np.float16).astype(np.float32)
    if out.ndim == 0:
        return np.float32(out)
    return out


def quantize(x, mode: PrecisionMode):
    """Apply the input rounding of ``mode`` (identity in exact32)."""
    if PrecisionMode(mode) is PrecisionMode.MIXED16:
        return round_to_half(x)
    arr = np.asarray(x, dtype=np.float32)
    return np.float32(arr) if arr.ndim == 0 else arr


def domain_mask(op: SemiringOp, values) -> np.ndarray:
    return _SPECS[SemiringOp(op)].domain(np.asarray(values, dtype=np.float32))


def check_domain(op: SemiringOp, values, what: str = "value") -> None:
    """Raise DomainError if any entry of ``values`` is outside ``op``'s domain."""
    arr = np.asarray(values, dtype=np.float32)
    ok = _SPECS[SemiringOp(op)].domain(arr)
    if not np.all(ok):
        bad_idx = np.argwhere(~np.atleast_1d(ok))[0]
        bad = np.atleast_1d(arr)[tuple(bad_idx)]
        raise DomainError(
            f"{SemiringOp(op).value}: {what} {bad!r} at {tuple(int(i) for i in bad_idx)} "
            f"outside domain {_SPECS[SemiringOp(op)].domain_text}")


def _scalar_in(op, x, what):
    if not bool(_SPECS[op].domain(np.float32(x))):
        raise DomainError(f"{op.value}: {what} {x!r} outside domain "
                          f"{_SPECS[op].domain_text}")


def scalar_otimes(op: SemiringOp, a, b, mode: PrecisionMode = PrecisionMode.EXACT32):
    op = SemiringOp(op)
    a = quantize(a, mode)
    b = quantize(b, mode)
    _scalar_in(op, a, "left operand")
    _scalar_in(op, b, "right operand")
    with np.errstate(invalid="ignore", over="ignore"):
        r = np.float32(_SPECS[op].otimes(a, b))
    if np.isnan(r):
        # domains exclude inf - inf and 0 * inf; reaching here is a bug upstream
        raise DomainError(f"{op.value}: otimes({a}, {b}) is undefined")
    return r


def scalar_oplus(op: SemiringOp, a, b):
    op = SemiringOp(op)
    a = np.float32(a)
    b = np.float32(b)
    _scalar_in(op, a, "left operand")
    _scalar_in(op, b, "right operand")
    return np.float32(_SPECS[op].oplus(a, b))
