"""
All-pairs paths by repeated products
====================================

A closure iterates the matrix product until nothing changes.  Bellman-Ford
multiplies by the adjacency matrix each pass; Leyzorek squares the current
matrix, so path lengths double per pass.  Swapping the operators turns the
same loop into longest paths, widest paths, reliabilities or reachability.
"""
import numpy as np

from semiring_mxu import Graph, aplp, apsp, max_capacity, max_reliability, transitive_closure
from semiring_mxu.oracles import adjacency, generalized_floyd_warshall

g = Graph(4, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 5.0), (2, 3, 1.0)])

res = apsp(g, "leyzorek")
print("shortest distances\n", res.matrix.data)
print("iterations:", res.iterations)

fw = generalized_floyd_warshall("minplus", adjacency(g, "minplus"))
print("matches Floyd-Warshall:", np.array_equal(res.matrix.data, fw.astype(np.float32)))

print("longest (critical) paths\n", aplp(g).matrix.data)

caps = Graph(3, [(0, 1, 5.0), (1, 2, 3.0)])
print("widest path 0->2:", max_capacity(caps).matrix.data[0, 2])

rel = Graph(3, [(0, 1, 0.9), (1, 2, 0.9), (0, 2, 0.5)])
print("most reliable 0->2:", max_reliability(rel).matrix.data[0, 2])

print("reachability\n", transitive_closure(g).matrix.data.astype(int))
