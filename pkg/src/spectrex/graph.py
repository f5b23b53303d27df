"""Simple undirected graphs stored as per-vertex neighbour bitsets.

Vertices are ``0..n-1``. Row ``rows[v]`` is a Python int whose bit ``u`` is set
iff ``uv`` is an edge, so a row is an arbitrary-width bitset and the same type
serves the enumerator (n <= 16) and the spectral code (n <= 512).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from math import comb

import numpy as np

from .errors import InputError

MAX_ORDER = 512


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph.

    Equality and hashing are on the labelled graph; use
    :func:`spectrex.canon.canonical_graph6` for isomorphism-invariant keys.
    """

    __slots__ = ("n", "rows", "_m")

    def __init__(self, n: int, rows: Sequence[int] | None = None, *, check: bool = True):
        if n < 0 or n > MAX_ORDER:
            raise InputError(f"order must be in [0, {MAX_ORDER}], got {n}")
        rows = tuple(rows) if rows is not None else (0,) * n
        if len(rows) != n:
            raise InputError(f"expected {n} rows, got {len(rows)}")
        if check:
            full = (1 << n) - 1
            for v, row in enumerate(rows):
                if row & ~full or row < 0:
                    raise InputError(f"row {v} references a vertex outside [0, {n})")
                if row >> v & 1:
                    raise InputError(f"loop at vertex {v}")
                for u in bits(row):
                    if not rows[u] >> v & 1:
                        raise InputError(f"asymmetric adjacency between {v} and {u}")
        self.n = n
        self.rows = rows
        self._m = sum(r.bit_count() for r in rows) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def from_matrix(cls, a) -> Graph:
        a = np.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n) or not np.array_equal(a, a.T) or np.any(np.diag(a)):
            raise InputError("adjacency matrix must be square, symmetric, zero diagonal")
        return cls.from_edges(n, zip(*np.nonzero(np.triu(a, 1))))

    # -- basic queries -------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return self._m

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range for order {self.n}")

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def degree_into(self, v: int, vertices: Iterable[int] | int) -> int:
        """``d_S(v)``: neighbours of ``v`` inside ``S`` (a vertex iterable or mask)."""
        self._check_vertex(v)
        m = vertices if isinstance(vertices, int) else mask_of(vertices)
        return (self.rows[v] & m).bit_count()

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(bits(self.rows[v]))

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def components(self) -> list[int]:
        """Connected components as vertex masks, ordered by smallest vertex."""
        seen = 0
        out = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"

    def __reduce__(self):
        return (Graph, (self.n, self.rows), None)


# -- named constructions -----------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, check=False)


def complete_graph(r: int) -> Graph:
    full = (1 << r) - 1
    return Graph(r, [full & ~(1 << v) for v in range(r)], check=False)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def turan_part_sizes(n: int, r: int) -> list[int]:
    """Part sizes of ``T(n, r)``, largest first; parts of size 0 are dropped."""
    if r < 1:
        raise InputError("r must be at least 1")
    q, b = divmod(n, r)
    sizes = [q + 1] * b + [q] * (r - b)
    return [s for s in sizes if s > 0]


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    if any(s < 1 for s in sizes):
        raise InputError(f"part sizes must be positive, got {list(sizes)}")
    n = sum(sizes)
    full = (1 << n) - 1
    rows = []
    start = 0
    for s in sizes:
        part = ((1 << s) - 1) << start
        rows.extend([full & ~part] * s)
        start += s
    return Graph(n, rows, check=False)


def turan_graph(n: int, r: int) -> Graph:
    """Complete ``r``-partite graph on ``n`` vertices with balanced parts."""
    return complete_multipartite(turan_part_sizes(n, r)) if n else empty_graph(0)


def turan_edges(n: int, r: int) -> int:
    sizes = turan_part_sizes(n, r)
    return comb(n, 2) - sum(comb(s, 2) for s in sizes)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, list(g.rows) + [row << shift for row in h.rows], check=False)


def join(g: Graph, h: Graph) -> Graph:
    """``G v H``: vertices of ``g`` first, then ``h``, plus every cross edge."""
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    rows = [row | hmask for row in g.rows] + [(row << g.n) | gmask for row in h.rows]
    return Graph(g.n + h.n, rows, check=False)


def disjoint_copies(f: Graph, k: int) -> Graph:
    if k < 1:
        raise InputError("k must be positive")
    out = f
    for _ in range(k - 1):
        out = disjoint_union(out, f)
    return out


# -- vertex/edge edits -------------------------------------------------------


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """``G[S]`` relabelled to ``0..|S|-1`` preserving the original order."""
    vs = sorted(set(vertices))
    for v in vs:
        g._check_vertex(v)
    pos = {v: i for i, v in enumerate(vs)}
    sel = mask_of(vs)
    rows = [mask_of(pos[u] for u in bits(g.rows[v] & sel)) for v in vs]
    return Graph(len(vs), rows, check=False)


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    drop = set(vertices)
    for v in drop:
        g._check_vertex(v)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise InputError("loops are not allowed")
    rows = list(g.rows)
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    return Graph(g.n, rows, check=False)


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    g._check_vertex(u)
    g._check_vertex(v)
    rows = list(g.rows)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)
    return Graph(g.n, rows, check=False)


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``p`` is the original vertex ``order[p]``."""
    pos = [0] * g.n
    for p, v in enumerate(order):
        pos[v] = p
    rows = [mask_of(pos[u] for u in bits(g.rows[v])) for v in order]
    return Graph(g.n, rows, check=False)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.rows)], check=False)
