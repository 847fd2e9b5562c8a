"""
Tiling is invisible
===================

The engine walks 16x16 tiles.  Shapes that are not multiples of 16 are padded
on load and clipped on store, and the result matches the untiled fold bit for
bit.  The op counters record the tile arithmetic.
"""
import math

import numpy as np

from semiring_mxu import OpCounters, SemiringOp, mmo, mmo_reference

rng = np.random.default_rng(0)
m, n, k = 37, 50, 21
A = rng.uniform(-5, 5, (m, k)).astype(np.float32)
B = rng.uniform(-5, 5, (k, n)).astype(np.float32)
C = rng.uniform(-5, 5, (m, n)).astype(np.float32)

counters = OpCounters()
D = mmo(SemiringOp.MIN_PLUS, A, B, C, counters)
R = mmo_reference(SemiringOp.MIN_PLUS, A, B, C)
print("bit-equal to the untiled fold:", D.bit_equal(R))
print("tile ops:", counters.tile_ops, "expected:", math.ceil(m / 16) * math.ceil(n / 16) * math.ceil(k / 16))
print("loads:", counters.loads, "stores:", counters.stores)

# smaller tiles, same answer
print("4x4 tiles agree:", mmo(SemiringOp.MIN_PLUS, A, B, C, size=4).bit_equal(R))

# worker threads split output tiles only, so the fold order never changes
print("4 workers agree:", mmo(SemiringOp.MIN_PLUS, A, B, C, workers=4).bit_equal(R))
