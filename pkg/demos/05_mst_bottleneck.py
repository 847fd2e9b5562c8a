"""
Spanning forests from min-max closure
=====================================

The min-max closure gives, for every pair, the smallest possible largest edge
on a connecting path.  With distinct weights an edge is in the minimum
spanning forest exactly when its weight equals that value.
"""
import numpy as np

from semiring_mxu import Graph, mst_bottleneck
from semiring_mxu.fileio import generate_graph
from semiring_mxu.oracles import kruskal_bottleneck

tri = Graph(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)], directed=False)
res = mst_bottleneck(tri)
print("bottleneck matrix\n", res.closure.matrix.data)
print("forest:", res.msf_edges, "weight:", res.msf_weight)

g = generate_graph("erdos_renyi", 40, 0.2, (1, 5000), seed=1, weights="distinct", directed=False)
res = mst_bottleneck(g)
weight, edges, B = kruskal_bottleneck(g)
print("edges:", len(res.msf_edges), "weight:", res.msf_weight, "Kruskal:", len(edges), weight)
print("bottleneck matrix equals Kruskal tree-path maxima:",
      np.array_equal(res.closure.matrix.data, B.astype(np.float32)))
