"""
Half-precision inputs, single-precision sums
============================================

In mixed16 the operands are rounded to fp16 (round to nearest even) before
each product, while the fold stays in fp32.  Integer weights are already
representable, so results match exact32.  General weights lose a little,
bounded by the fp16 spacing at the largest path length.
"""
import numpy as np

from semiring_mxu import PrecisionMode, apsp, round_to_half
from semiring_mxu.fileio import generate_graph
from semiring_mxu.runner import half_quantum, solve_graph

print(round_to_half(2049.0), round_to_half(0.1), round_to_half(70000.0))

g = generate_graph("erdos_renyi", 48, 0.1, (1, 30), seed=2)
ex = apsp(g).matrix.data
mx = apsp(g, mode=PrecisionMode.MIXED16).matrix.data
print("integer weights, identical:", np.array_equal(ex, mx))

g = generate_graph("erdos_renyi", 48, 0.1, (0.5, 30.0), seed=2, weights="uniform")
matrix, report, _ = solve_graph("apsp", g, precision="mixed16", validate=True)
top = float(np.max(matrix[np.isfinite(matrix)]))
print("uniform weights, max_abs_diff:", report.validation["max_abs_diff"],
      "bound:", 2 * half_quantum(top), "matched:", report.validation["matched"])
