"""Classical reference algorithms used to validate the solvers.

Nothing here touches the tile engine: the operators are redefined locally
and all arithmetic is float64.  Callers round to fp32 before comparing.
"""
from collections import defaultdict

import numpy as np

from .errors import ShapeError
from .graph import Graph

INF = float("inf")

# name -> (oplus, otimes, diagonal, absent)
_FW_OPS = {
    "minplus": (np.minimum, np.add, 0.0, INF),
    "maxplus": (np.maximum, np.add, 0.0, -INF),
    "minmul": (np.minimum, np.multiply, 1.0, INF),
    "maxmul": (np.maximum, np.multiply, 1.0, 0.0),
    "minmax": (np.minimum, np.maximum, -INF, INF),
    "maxmin": (np.maximum, np.minimum, INF, -INF),
    "orand": (np.logical_or, np.logical_and, 1.0, 0.0),
}


def _opname(op):
    return getattr(op, "value", op)


def adjacency(g: Graph, op, weights=None) -> np.ndarray:
    """float64 adjacency with the oracle's own absent/diagonal convention."""
    name = _opname(op)
    oplus, _, diag, absent = _FW_OPS[name]
    W = np.full((g.n, g.n), absent)
    np.fill_diagonal(W, diag)
    for u, v, w in g.arcs():
        if weights is not None:
            w = weights(w)
        if name == "orand":
            w = 1.0
        W[u, v] = oplus(W[u, v], w)
    return W


def generalized_floyd_warshall(op, W) -> np.ndarray:
    """d(i, j) <- d(i, j) (+) d(i, k) (x) d(k, j) with k outermost, in float64.

    For a fixed k every (i, j) update reads row k and column k, which that
    step leaves unchanged (the diagonal is the otimes-neutral element), so
    the i/j loops are evaluated as one array expression.
    """
    oplus, otimes, _, _ = _FW_OPS[_opname(op)]
    d = np.array(W, dtype=np.float64)
    for k in range(d.shape[0]):
        d = oplus(d, otimes(d[:, k:k + 1], d[k:k + 1, :])).astype(np.float64)
    return d


def floyd_warshall_scalar(op, W) -> np.ndarray:
    """Literal triple loop; slow, used to cross-check the array form."""
    oplus, otimes, _, _ = _FW_OPS[_opname(op)]
    d = [list(map(float, row)) for row in np.asarray(W, dtype=np.float64)]
    n = len(d)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                d[i][j] = float(oplus(d[i][j], otimes(d[i][k], d[k][j])))
    return np.array(d, dtype=np.float64).reshape(n, n)


def kruskal_bottleneck(g: Graph):
    """Kruskal MSF plus the max-edge-on-tree-path matrix.

    Returns ``(msf_weight, msf_edges, bottleneck)``; pairs in different
    components are +inf, the diagonal is -inf (empty path).
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    msf = []
    for u, v, w in sorted(g.edges, key=lambda e: e[2]):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            msf.append((u, v, w))

    tree = defaultdict(list)
    for u, v, w in msf:
        tree[u].append((v, w))
        tree[v].append((u, w))
    B = np.full((g.n, g.n), INF)
    for s in range(g.n):
        B[s, s] = -INF
        stack = [(s, -INF)]
        seen = {s}
        while stack:
            x, best = stack.pop()
            for y, w in tree[x]:
                if y not in seen:
                    seen.add(y)
                    B[s, y] = max(best, w)
                    stack.append((y, B[s, y]))
    return sum(w for _, _, w in msf), msf, B


def dfs_reachability(g: Graph) -> np.ndarray:
    adj = g.successors()
    R = np.zeros((g.n, g.n), dtype=bool)
    for s in range(g.n):
        stack = [s]
        R[s, s] = True
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not R[s, y]:
                    R[s, y] = True
                    stack.append(y)
    return R


def brute_force_knn(points, refs, k: int):
    """Per-query squared distances in float64; ties go to the lower ref index."""
    P = np.asarray(points, dtype=np.float64)
    R = np.asarray(refs, dtype=np.float64)
    if P.ndim != 2 or R.ndim != 2 or P.shape[1] != R.shape[1]:
        raise ShapeError(f"shape mismatch {P.shape} vs {R.shape}")
    if not 1 <= k <= R.shape[0]:
        raise ShapeError(f"k={k} outside [1, {R.shape[0]}]")
    dist2 = np.empty((P.shape[0], R.shape[0]))
    for i, p in enumerate(P):
        diff = R - p
        dist2[i] = np.einsum("jd,jd->j", diff, diff)
    idx = np.array([sorted(range(R.shape[0]), key=lambda j: (row[j], j))[:k] for row in dist2],
                   dtype=np.int64).reshape(P.shape[0], k)
    return dist2, idx


def min_hop_depth(g: Graph, op="minplus") -> int:
    """Largest over reachable pairs of the fewest arcs on any optimal path.

    Bellman-Ford style closure iteration needs exactly this many passes
    (at least one) to reach its fixpoint.
    """
    oplus, otimes, _, _ = _FW_OPS[_opname(op)]
    W = adjacency(g, op)
    final = generalized_floyd_warshall(op, W)
    cur = W.copy()
    depth = 1
    while not np.array_equal(cur, final):
        cur = oplus(cur, oplus.reduce(otimes(cur[:, :, None], W[None, :, :]), axis=1))
        depth += 1
        if depth > g.n + 1:
            raise RuntimeError("no fixpoint; graph has a divergent cycle")
    return depth
