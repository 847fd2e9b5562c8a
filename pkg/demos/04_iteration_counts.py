"""
Bellman-Ford against Leyzorek, counted
======================================

On a path graph the hop diameter is n - 1, so Bellman-Ford needs about n
passes.  Squaring needs about log2(n) + 1.  Each pass costs ceil(n/16)^3
tile ops, so the counts translate directly into work.
"""
import math

from semiring_mxu import OpCounters, apsp
from semiring_mxu.fileio import generate_graph

print(f"{'n':>5} {'bf iters':>9} {'lz iters':>9} {'bound':>6} {'bf tile ops':>12} {'lz tile ops':>12}")
for n in (8, 16, 33, 64, 128):
    g = generate_graph("path", n)
    cb, cl = OpCounters(), OpCounters()
    bf = apsp(g, "bellman_ford", counters=cb)
    lz = apsp(g, "leyzorek", counters=cl)
    bound = math.ceil(math.log2(n)) + 1
    print(f"{n:>5} {bf.iterations:>9} {lz.iterations:>9} {bound:>6} {cb.tile_ops:>12} {cl.tile_ops:>12}")

# on a random sparse graph the gap narrows: Bellman-Ford stops at the hop depth
g = generate_graph("erdos_renyi", 64, 0.1, (1, 20), seed=3)
print("random n=64:", apsp(g, "bellman_ford").iterations, "vs", apsp(g, "leyzorek").iterations)
