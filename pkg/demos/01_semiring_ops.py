"""
Nine operators, one matrix form
===============================

Every operation here computes D = C (+) (A (x) B).  Only the pair of scalar
operators changes.  Padding values are chosen so partial tiles contribute
nothing to the fold.
"""
import numpy as np

from semiring_mxu import SemiringOp, identity_and_padding, mmo, scalar_oplus, scalar_otimes

A = np.array([[1.0, 4.0], [2.0, 0.5]], dtype=np.float32)
B = np.array([[3.0, 1.0], [0.25, 2.0]], dtype=np.float32)

for op in SemiringOp:
    ident, pad_a, pad_b = identity_and_padding(op)
    C = np.full((2, 2), ident, dtype=np.float32)
    if op is SemiringOp.OR_AND:
        D = mmo(op, (A > 1).astype(np.float32), (B > 1).astype(np.float32), C)
    else:
        D = mmo(op, A, B, C)
    print(f"{op.value:8s} identity={ident:<5} pads=({pad_a}, {pad_b})")
    print(D.data)

# a scalar view of the same operators
print(scalar_oplus("minplus", 3.0, scalar_otimes("minplus", 1.0, 1.5)))  # min(3, 1 + 1.5)
print(scalar_otimes("addnorm", 1.0, 3.0))  # (1 - 3)^2
