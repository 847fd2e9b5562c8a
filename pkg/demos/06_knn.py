"""
Nearest neighbours from one add-norm product
============================================

add-norm sums squared differences, so one product of the query matrix with
the transposed reference matrix yields every squared distance.  Sorting each
row gives the neighbours; ties go to the lower reference index.
"""
import numpy as np

from semiring_mxu import knn
from semiring_mxu.fileio import generate_points
from semiring_mxu.oracles import brute_force_knn

res = knn([[0.9, 0.0]], [[0, 0], [1, 0], [5, 0]], k=1)
print("nearest:", res.indices[0, 0], "dist2:", res.dist2.data[0])

queries = generate_points(100, 16, seed=0)
refs = generate_points(200, 16, seed=1)
res = knn(queries, refs, k=5)
d, idx = brute_force_knn(queries, refs, 5)
print("indices match brute force:", np.array_equal(res.indices, idx))
print("max relative dist2 error:", float(np.max(np.abs(res.dist2.data - d) / d)))
print("tile ops for one product:", res.counters.tile_ops)
