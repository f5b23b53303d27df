"""Canonical labelling by partition refinement with automorphism pruning.

A search tree in the style of nauty: the root is the coarsest equitable
partition, children individualise one vertex of the first non-singleton cell
and re-refine, leaves are discrete partitions. Each leaf is scored by the
packed adjacency of the graph relabelled in leaf order and the largest score
wins. Automorphisms found when two leaves score equally prune sibling
subtrees, and their generators give the automorphism group orbits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits, relabel


def refine(rows: tuple[int, ...] | list[int], cells: list[list[int]], splitters: list[int]) -> list[list[int]]:
    """Refine ordered ``cells`` until equitable w.r.t. every cell.

    ``splitters`` are vertex masks that must be processed; if the input
    partition was equitable it suffices to pass the cells that changed.
    Fragments of a split cell are ordered by ascending neighbour count into
    the splitter, which keeps the result isomorphism-invariant.
    """
    n_cells = len(cells)
    n = len(rows)
    queue = list(splitters)
    qi = 0
    while qi < len(queue) and n_cells < n:
        w = queue[qi]
        qi += 1
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((rows[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
                continue
            for key in sorted(groups):
                frag = groups[key]
                out.append(frag)
                m = 0
                for v in frag:
                    m |= 1 << v
                queue.append(m)
            n_cells += len(groups) - 1
        cells = out
    return cells


def equitable_partition(g: Graph) -> list[list[int]]:
    """Coarsest equitable partition, cells in canonical (invariant) order."""
    if g.n == 0:
        return []
    return refine(g.rows, [list(range(g.n))], [(1 << g.n) - 1])


@dataclass
class Labelling:
    order: list[int]          # canonical position p holds original vertex order[p]
    certificate: int          # packed relabelled adjacency; equal iff isomorphic (same n)
    generators: list[tuple[int, ...]]
    orbits: list[int]         # orbit representative (smallest vertex) per vertex


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, v: int) -> int:
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            if a < b:
                self.parent[b] = a
            else:
                self.parent[a] = b


def orbits_of(n: int, generators: list[tuple[int, ...]]) -> list[int]:
    uf = _UnionFind(n)
    for g in generators:
        for v in range(n):
            uf.union(v, g[v])
    return [uf.find(v) for v in range(n)]


class _Search:
    def __init__(self, rows: tuple[int, ...] | list[int]):
        self.rows = rows
        self.n = len(rows)
        self.first_cert: int | None = None
        self.first_order: list[int] = []
        self.best_cert = -1
        self.best_order: list[int] = []
        self.gens: list[tuple[int, ...]] = []

    def _certificate(self, order: list[int]) -> int:
        n = self.n
        pos = [0] * n
        for p, v in enumerate(order):
            pos[v] = p
        cert = 0
        rows = self.rows
        shift = 0
        for v in order:
            row = 0
            r = rows[v]
            while r:
                low = r & -r
                row |= 1 << pos[low.bit_length() - 1]
                r ^= low
            cert |= row << shift
            shift += n
        return cert

    def _automorphism(self, src: list[int], dst: list[int]) -> None:
        perm = [0] * self.n
        for a, b in zip(src, dst):
            perm[a] = b
        g = tuple(perm)
        if any(g[v] != v for v in range(self.n)) and g not in self.gens:
            self.gens.append(g)

    def leaf(self, cells: list[list[int]], fp_depth: int) -> int | None:
        order = [c[0] for c in cells]
        cert = self._certificate(order)
        if self.first_cert is None:
            self.first_cert = self.best_cert = cert
            self.first_order = self.best_order = order
            return None
        if cert == self.first_cert:
            self._automorphism(self.first_order, order)
            return fp_depth
        if cert > self.best_cert:
            self.best_cert = cert
            self.best_order = order
        elif cert == self.best_cert:
            self._automorphism(self.best_order, order)
        return None

    def node(self, cells: list[list[int]], prefix: list[int], on_first: bool, fp_depth: int) -> int | None:
        # fp_depth: depth of the deepest ancestor lying on the first path
        if len(cells) == self.n:
            return self.leaf(cells, fp_depth)
        depth = len(prefix)
        if on_first:
            fp_depth = depth
        idx = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[idx]
        explored: list[int] = []
        for v in sorted(target):
            if explored and self.gens:
                stab = [g for g in self.gens if all(g[x] == x for x in prefix)]
                if stab:
                    orb = orbits_of(self.n, stab)
                    if any(orb[v] == orb[w] for w in explored):
                        continue
            explored.append(v)
            rest = [w for w in target if w != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1:]
            child = refine(self.rows, child, [1 << v])
            ret = self.node(child, prefix + [v], on_first and len(explored) == 1, fp_depth)
            if ret is not None and ret < depth:
                return ret
        return None

    def run(self, root: list[list[int]]) -> Labelling:
        if self.n:
            self.node(root, [], True, 0)
        else:
            self.first_cert = self.best_cert = 0
        return Labelling(
            order=self.best_order,
            certificate=self.best_cert,
            generators=self.gens,
            orbits=orbits_of(self.n, self.gens),
        )


def canonical_labelling(g: Graph, root: list[list[int]] | None = None) -> Labelling:
    """Canonical order, certificate and automorphism orbits of ``g``.

    ``root`` may carry a precomputed :func:`equitable_partition` of ``g``.
    """
    if root is None:
        root = equitable_partition(g)
    return _Search(g.rows).run(root)


def canonical_form(g: Graph) -> Graph:
    lab = canonical_labelling(g)
    return relabel(g, lab.order)


def canonical_graph6(g: Graph) -> str:
    from .graph6 import graph6_encode

    return graph6_encode(canonical_form(g))


def automorphism_orbits(g: Graph) -> list[list[int]]:
    orb = canonical_labelling(g).orbits
    groups: dict[int, list[int]] = {}
    for v, rep in enumerate(orb):
        groups.setdefault(rep, []).append(v)
    return list(groups.values())


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_labelling(g).certificate == canonical_labelling(h).certificate


def isomorphism_key(g: Graph) -> tuple[int, int]:
    return g.n, canonical_labelling(g).certificate


__all__ = [
    "Labelling",
    "are_isomorphic",
    "automorphism_orbits",
    "bits",
    "canonical_form",
    "canonical_graph6",
    "canonical_labelling",
    "equitable_partition",
    "isomorphism_key",
    "orbits_of",
    "refine",
]
