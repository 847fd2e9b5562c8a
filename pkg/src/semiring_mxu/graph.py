"""Weighted graph container shared by the solvers, oracles and file readers."""
from collections import deque
from dataclasses import dataclass, field
import math


@dataclass
class Graph:
    """``n`` vertices and a list of ``(u, v, w)`` edges.

    Undirected graphs store each edge once; :meth:`arcs` mirrors them.
    """

    n: int
    edges: list = field(default_factory=list)
    directed: bool = True

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        clean = []
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise IndexError(f"edge ({u}, {v}) out of range for n={self.n}")
            if not math.isfinite(w):
                raise ValueError(f"edge ({u}, {v}) has non-finite weight {w}")
            clean.append((u, v, w))
        self.edges = clean

    def arcs(self):
        for u, v, w in self.edges:
            yield u, v, w
            if not self.directed and u != v:
                yield v, u, w

    def successors(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n)]
        for u, v, _ in self.arcs():
            adj[u].append(v)
        return adj

    def topological_order(self) -> list[int] | None:
        """Kahn's algorithm; None when the graph has a cycle."""
        adj = self.successors()
        indeg = [0] * self.n
        for u in range(self.n):
            for v in adj[u]:
                indeg[v] += 1
        queue = deque(i for i in range(self.n) if indeg[i] == 0)
        order = []
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in adj[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    queue.append(v)
        return order if len(order) == self.n else None

    def is_dag(self) -> bool:
        return self.directed and self.topological_order() is not None
