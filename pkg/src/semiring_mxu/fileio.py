"""Text file formats and seeded synthetic inputs."""
import math
from pathlib import Path

import numpy as np

from .buffers import MatrixBuffer
from .errors import ConfigError, EdgeIndexError, ParseError
from .graph import Graph
from .semiring import PrecisionMode, quantize

GRAPH_KINDS = ("erdos_renyi", "path", "cycle", "grid", "dag_layered")
WEIGHT_KINDS = ("integer", "uniform", "pow2", "distinct")


def _strip(line):
    return line.split("#", 1)[0].strip()


def parse_edge_list(path) -> Graph:
    """Read ``n <count> [directed|undirected]`` followed by ``u v [w]`` lines.

    Missing weights default to 1.  Indices are 0-based.
    """
    text = Path(path).read_text()
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        if header is None:
            if tok[0] != "n" or len(tok) not in (2, 3):
                raise ParseError("expected header 'n <count> [directed|undirected]'", lineno)
            try:
                n = int(tok[1])
            except ValueError:
                raise ParseError(f"bad vertex count {tok[1]!r}", lineno) from None
            if n < 0:
                raise ParseError("negative vertex count", lineno)
            kind = tok[2] if len(tok) == 3 else "directed"
            if kind not in ("directed", "undirected"):
                raise ParseError(f"unknown graph kind {kind!r}", lineno)
            header = (n, kind == "directed")
            continue
        if len(tok) not in (2, 3):
            raise ParseError(f"expected 'u v [w]', got {line!r}", lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
            w = float(tok[2]) if len(tok) == 3 else 1.0
        except ValueError:
            raise ParseError(f"malformed edge {line!r}", lineno) from None
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise EdgeIndexError(f"vertex index out of range for n={header[0]}: {line!r}", lineno)
        if not math.isfinite(w):
            raise ParseError(f"non-finite weight {tok[2]!r}", lineno)
        edges.append((u, v, w))
    if header is None:
        raise ParseError("missing header line")
    return Graph(header[0], edges, header[1])


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n} {'directed' if g.directed else 'undirected'}"]
    lines += [f"{u} {v} {np.float32(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def write_edge_list(path, g: Graph) -> None:
    Path(path).write_text(format_edge_list(g))


def parse_dense_matrix(path, mode=PrecisionMode.EXACT32) -> MatrixBuffer:
    rows = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        try:
            row = [np.float32(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"malformed number in {line!r}", lineno) from None
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"ragged row: {len(row)} values, expected {len(rows[0])}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix")
    return MatrixBuffer(np.array(rows, dtype=np.float32), mode)


def format_value(x) -> str:
    # numpy prints the shortest string that round-trips the fp32 value
    return str(np.float32(x))


def format_dense_matrix(buf) -> str:
    data = buf.data if isinstance(buf, MatrixBuffer) else np.asarray(buf, dtype=np.float32)
    return "\n".join(" ".join(format_value(x) for x in row) for row in data) + "\n"


def write_dense_matrix(path, buf) -> None:
    Path(path).write_text(format_dense_matrix(buf))


def _draw_weights(rng, count, kind, lo, hi, precision):
    if kind == "integer":
        w = rng.integers(int(lo), int(hi) + 1, size=count).astype(np.float64)
    elif kind == "uniform":
        w = quantize(rng.uniform(lo, hi, size=count), precision).astype(np.float64)
    elif kind == "pow2":
        w = 2.0 ** -rng.integers(int(lo), int(hi) + 1, size=count)
    elif kind == "distinct":
        pool = np.arange(int(lo), max(int(hi), int(lo) + count - 1) + 1)
        w = rng.choice(pool, size=count, replace=False).astype(np.float64)
    else:
        raise ConfigError(f"unknown weight kind {kind!r}; choose from {WEIGHT_KINDS}")
    return w


def generate_graph(kind: str, n: int, density: float = 0.3, weight_range=(1, 10),
                   seed: int = 0, weights: str = "integer", directed: bool = True,
                   precision=PrecisionMode.EXACT32) -> Graph:
    """Seeded synthetic graph.

    ``weights`` picks the distribution over ``weight_range``: ``integer``
    (uniform integers, inclusive), ``uniform`` (continuous, rounded to the
    active precision), ``pow2`` (2**-e for integer e in the range) or
    ``distinct`` (integers without repetition).
    """
    if kind not in GRAPH_KINDS:
        raise ConfigError(f"unknown graph kind {kind!r}; choose from {GRAPH_KINDS}")
    if not 0.0 <= density <= 1.0:
        raise ConfigError(f"density {density} outside [0, 1]")
    if n < 1:
        raise ConfigError("n must be at least 1")
    lo, hi = weight_range
    if lo > hi:
        raise ConfigError(f"empty weight range {weight_range}")
    rng = np.random.default_rng(seed)
    pairs = []
    if kind == "erdos_renyi":
        for u in range(n):
            for v in range(n):
                if u != v and (directed or u < v) and rng.random() < density:
                    pairs.append((u, v))
    elif kind == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        pairs = [(i, (i + 1) % n) for i in range(n)] if n > 1 else []
        if n == 2 and not directed:
            pairs = pairs[:1]
    elif kind == "grid":
        rows = max(1, math.isqrt(n))
        cols = math.ceil(n / rows)
        for i in range(n):
            c = i % cols
            if c + 1 < cols and i + 1 < n:
                pairs.append((i, i + 1))
            if i + cols < n:
                pairs.append((i, i + cols))
    elif kind == "dag_layered":
        layers = max(1, round(math.sqrt(n)))
        layer = [i * layers // n for i in range(n)]
        for u in range(n):
            for v in range(u + 1, n):
                if layer[u] < layer[v] and rng.random() < density:
                    pairs.append((u, v))
    w = _draw_weights(rng, len(pairs), weights, lo, hi, precision)
    return Graph(n, [(u, v, float(x)) for (u, v), x in zip(pairs, w)], directed)


def generate_points(count: int, dim: int, seed: int = 0, low=-1.0, high=1.0,
                    grid: float | None = None, precision=PrecisionMode.EXACT32) -> np.ndarray:
    """Uniform random points; ``grid`` snaps coordinates to multiples of it."""
    if count < 1 or dim < 1:
        raise ConfigError("point count and dimension must be positive")
    pts = np.random.default_rng(seed).uniform(low, high, size=(count, dim))
    if grid:
        pts = np.round(pts / grid) * grid
    return quantize(pts, precision)
