"""Containment, packing, matching, colouring and partition diagnostics."""

from __future__ import annotations

import dataclasses
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .canon import automorphism_orbits
from .errors import CapabilityError, InputError
from .graph import Graph, bits, delete_vertices, turan_edges
from .graph6 import graph6_encode

CHROMATIC_MAX_ORDER = 16
EXACT_PARTITION_LIMIT = 10**8


# ---------------------------------------------------------------------------
# subgraph embeddings


@lru_cache(maxsize=256)
def _plan(f: Graph, start: int | None) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Placement order for the vertices of ``f``.

    Returns ``(order, back, degs)`` where ``back[i]`` lists the earlier
    positions adjacent to ``order[i]``. Each step takes the vertex with most
    already-placed neighbours so candidate sets are neighbourhood
    intersections as early as possible.
    """
    degs = f.degrees()
    if start is None:
        start = max(range(f.n), key=lambda v: (degs[v], -v))
    order = [start]
    placed = 1 << start
    while len(order) < f.n:
        best = max(
            (v for v in range(f.n) if not placed >> v & 1),
            key=lambda v: ((f.rows[v] & placed).bit_count(), degs[v], -v),
        )
        order.append(best)
        placed |= 1 << best
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(tuple(sorted(pos[u] for u in bits(f.rows[v]) if pos[u] < i)) for i, v in enumerate(order))
    return tuple(order), back, tuple(degs[v] for v in order)


def _embeddings(g: Graph, f: Graph, start: int | None = None, anchor: int | None = None) -> Iterator[list[int]]:
    """Injective edge-preserving maps ``f -> g`` as image lists in plan order.

    With ``anchor`` set, the plan's first vertex (``start``) is pinned to it.
    """
    if f.n > g.n:
        return
    if f.n == 0:
        yield []
        return
    order, back, fdeg = _plan(f, start)
    rows = g.rows
    gdeg = g.degrees()
    full = (1 << g.n) - 1
    images = [0] * f.n
    k = f.n

    def rec(i: int, used: int) -> Iterator[list[int]]:
        if i == k:
            yield images
            return
        cand = full & ~used
        for j in back[i]:
            cand &= rows[images[j]]
        need = fdeg[i]
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            if gdeg[u] >= need:
                images[i] = u
                yield from rec(i + 1, used | low)

    if anchor is None:
        yield from rec(0, 0)
    elif gdeg[anchor] >= fdeg[0]:
        images[0] = anchor
        yield from rec(1, 1 << anchor)


def find_embedding(g: Graph, f: Graph) -> dict[int, int] | None:
    """A witness copy of ``f`` in ``g`` as a map ``V(f) -> V(g)``, or None."""
    order = _plan(f, None)[0] if f.n else ()
    for images in _embeddings(g, f):
        return {order[i]: images[i] for i in range(f.n)}
    return None


def contains_subgraph(g: Graph, f: Graph) -> bool:
    """True iff ``g`` has a (not necessarily induced) subgraph isomorphic to ``f``."""
    if f.n > g.n or f.edge_count > g.edge_count:
        return False
    return find_embedding(g, f) is not None


def copy_masks(g: Graph, f: Graph, through: int | None = None) -> list[int]:
    """Distinct vertex sets (as masks) that carry at least one copy of ``f``.

    ``through`` restricts to copies using that vertex of ``g``.
    """
    if f.n > g.n or f.edge_count > g.edge_count:
        return []
    found: set[int] = set()
    if through is None:
        for images in _embeddings(g, f):
            found.add(sum(1 << u for u in images))
    else:
        for orbit in _orbit_reps(f):
            for images in _embeddings(g, f, start=orbit, anchor=through):
                found.add(sum(1 << u for u in images))
    return sorted(found)


@lru_cache(maxsize=256)
def _orbit_reps(f: Graph) -> tuple[int, ...]:
    return tuple(orb[0] for orb in automorphism_orbits(f))


def max_packing(copies: list[int], cap: int, order: int) -> int:
    """Largest number of pairwise disjoint masks among ``copies``, capped at ``cap``.

    ``order`` is the common size of the masks, used for the counting bound.
    """
    if cap <= 0 or not copies:
        return 0
    best = 0

    def rec(avail: list[int], count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if best >= cap or not avail:
            return
        union = 0
        for c in avail:
            union |= c
        if count + union.bit_count() // order <= best:
            return
        low = union & -union
        with_v = [c for c in avail if c & low]
        without_v = [c for c in avail if not c & low]
        for c in with_v:
            rec([d for d in without_v if not d & c], count + 1)
            if best >= cap:
                return
        rec(without_v, count)

    rec(list(copies), 0)
    return min(best, cap)


def max_disjoint_copies(g: Graph, f: Graph, cap: int) -> int:
    """``min(cap, maximum number of vertex-disjoint copies of f in g)``."""
    if cap < 1:
        raise InputError("cap must be positive")
    if f.n == 0:
        return cap
    return max_packing(copy_masks(g, f), cap, f.n)


# ---------------------------------------------------------------------------
# problem parameters


@dataclass(frozen=True)
class ProblemSpec:
    """Forbidden pattern ``F`` with multiplicity ``k``; the family is ``{kF}``.

    ``r`` is derived as ``chi(F) - 1``. ``a`` is the excess in
    ``ex(n, F) = e(T(n, r)) + a``; it is either asserted by the caller or
    measured with :func:`spectrex.search.measure_excess`.
    """

    F: Graph
    k: int = 1
    a: int | None = None
    r: int | None = None
    allow_bipartite: bool = False
    allow_r_override: bool = False
    chi: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.F.edge_count < 1:
            raise InputError("F must have at least one edge")
        if self.k < 1:
            raise InputError("k must be a positive integer")
        chi = chromatic_number(self.F)
        object.__setattr__(self, "chi", chi)
        if chi < 3 and not self.allow_bipartite:
            raise InputError(f"F is bipartite (chi = {chi}); the extremal theory needs chi(F) >= 3")
        r = chi - 1
        if self.r is not None and self.r != r:
            if not self.allow_r_override:
                raise InputError(f"r = {self.r} disagrees with chi(F) - 1 = {r}")
            r = self.r
        object.__setattr__(self, "r", r)

    def with_k(self, k: int) -> ProblemSpec:
        return dataclasses.replace(self, k=k)

    def descriptor(self) -> dict:
        return {"F_graph6": graph6_encode(self.F), "k": self.k, "r": self.r, "a": self.a}


def is_family_free(g: Graph, spec: ProblemSpec) -> bool:
    """True iff ``g`` has fewer than ``k`` disjoint copies of ``F``."""
    return max_disjoint_copies(g, spec.F, spec.k) < spec.k


# ---------------------------------------------------------------------------
# matching


def maximum_matching(g: Graph) -> list[int]:
    """Edmonds' blossom algorithm. Returns ``mate[v]`` (``-1`` if exposed)."""
    n = g.n
    adj = [g.neighbors(v) for v in range(n)]
    match = [-1] * n
    for v in range(n):  # greedy start
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[u], match[v] = v, u
                    break

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, base, parent, blossom) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def augmenting_path_end(root: int, parent: list[int]) -> int:
        used = [False] * n
        base = list(range(n))
        used[root] = True
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark(v, cur, to, base, parent, blossom)
                    mark(to, cur, v, base, parent, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for root in range(n):
        if match[root] != -1:
            continue
        parent = [-1] * n
        v = augmenting_path_end(root, parent)
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return match


def matching_number(g: Graph) -> int:
    return sum(1 for v, u in enumerate(maximum_matching(g)) if u > v)


# ---------------------------------------------------------------------------
# colouring


def _colourable(g: Graph, k: int) -> bool:
    n = g.n
    order = sorted(range(n), key=lambda v: -g.rows[v].bit_count())
    colour = [-1] * n
    classes = [0] * k

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            if not classes[c] & g.rows[v]:
                classes[c] |= 1 << v
                colour[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
                classes[c] &= ~(1 << v)
        return False

    return rec(0, 0)


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by backtracking; desk scale only."""
    if g.n > CHROMATIC_MAX_ORDER:
        raise CapabilityError(f"chromatic_number supports at most {CHROMATIC_MAX_ORDER} vertices, got {g.n}")
    if g.n == 0:
        return 0
    if g.edge_count == 0:
        return 1
    k = 2
    while not _colourable(g, k):
        k += 1
    return k


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class PartitionAssignment:
    part_of: tuple[int, ...]
    r: int

    def __post_init__(self):
        if any(not 0 <= p < self.r for p in self.part_of):
            raise InputError(f"part indices must lie in [0, {self.r})")

    def part_masks(self) -> list[int]:
        masks = [0] * self.r
        for v, p in enumerate(self.part_of):
            masks[p] |= 1 << v
        return masks

    def part_sizes(self) -> list[int]:
        return [m.bit_count() for m in self.part_masks()]

    def internal_edges(self, g: Graph) -> int:
        masks = self.part_masks()
        return sum((g.rows[v] & masks[p]).bit_count() for v, p in enumerate(self.part_of)) // 2

    def crossing_edges(self, g: Graph) -> int:
        return g.edge_count - self.internal_edges(g)

    def to_dict(self) -> dict:
        return {"r": self.r, "part_of": list(self.part_of), "sizes": self.part_sizes()}


def _check_exact_size(n: int, r: int) -> None:
    if r**n > EXACT_PARTITION_LIMIT:
        raise CapabilityError(f"exact partition search needs r^n <= 1e8 (r={r}, n={n}); use mode='local'")


def _min_internal(g: Graph, r: int, capacity: list[int] | None, start_bound: int) -> tuple[int, list[int]]:
    """Lexicographically first labelling minimising internal edges.

    Labellings are restricted-growth strings, which are exactly the
    lexicographically smallest members of each relabelling class. With
    ``capacity`` (max size per part, max number of parts of the larger size)
    only balanced partitions are searched.
    """
    n = g.n
    rows = g.rows
    masks = [0] * r
    labels = [0] * n
    best = start_bound
    best_labels: list[int] | None = None
    big, n_big = (capacity or (n, r))

    def rec(v: int, used: int, internal: int, bigs: int) -> None:
        nonlocal best, best_labels
        if internal >= best:
            return
        if v == n:
            best = internal
            best_labels = labels.copy()
            return
        # each unplaced vertex adds at least its fewest neighbours in any part
        lb = internal
        for u in range(v, n):
            lb += min((rows[u] & masks[p]).bit_count() for p in range(min(used + 1, r)))
            if lb >= best:
                return
        for p in range(min(used + 1, r)):
            size = masks[p].bit_count()
            nb = bigs
            if capacity is not None:
                if size + 1 > big:
                    continue
                if size + 1 == big and big > n // r:
                    if bigs >= n_big:
                        continue
                    nb += 1
            labels[v] = p
            masks[p] |= 1 << v
            rec(v + 1, max(used, p + 1), internal + (rows[v] & masks[p]).bit_count(), nb)
            masks[p] &= ~(1 << v)

    rec(0, 0, 0, 0)
    if best_labels is None:
        raise AssertionError("search bound excluded every partition")
    return best, best_labels


def _local_crossing(g: Graph, r: int) -> list[int]:
    labels = [v % r for v in range(g.n)]
    masks = [0] * r
    for v, p in enumerate(labels):
        masks[p] |= 1 << v
    moved = True
    while moved:
        moved = False
        for v in range(g.n):
            counts = [(g.rows[v] & masks[p]).bit_count() for p in range(r)]
            here = labels[v]
            target = min(range(r), key=lambda p: (counts[p], p))
            if counts[target] < counts[here]:
                masks[here] &= ~(1 << v)
                masks[target] |= 1 << v
                labels[v] = target
                moved = True
    return labels


def max_crossing_partition(g: Graph, r: int, mode: str = "exact") -> PartitionAssignment:
    """Partition into ``r`` parts maximising the number of crossing edges.

    ``exact`` returns the lexicographically smallest global maximiser;
    ``local`` returns a partition where no single vertex move helps, so every
    vertex has at most ``d(v)/r`` neighbours in its own part.
    """
    if r < 1:
        raise InputError("r must be positive")
    local = _local_crossing(g, r)
    if mode == "local":
        return PartitionAssignment(tuple(local), r)
    if mode != "exact":
        raise InputError(f"unknown mode {mode!r}")
    _check_exact_size(g.n, r)
    bound = PartitionAssignment(tuple(local), r).internal_edges(g) + 1
    _, labels = _min_internal(g, r, None, bound)
    return PartitionAssignment(tuple(labels), r)


def _balanced_capacity(n: int, r: int) -> list[int]:
    q, b = divmod(n, r)
    return [q + 1 if b else q, b]


def _local_balanced(g: Graph, r: int) -> list[int]:
    labels = [v % r for v in range(g.n)]
    masks = [0] * r
    for v, p in enumerate(labels):
        masks[p] |= 1 << v
    rows = g.rows
    improved = True
    while improved:
        improved = False
        for u in range(g.n):
            for w in range(u + 1, g.n):
                pu, pw = labels[u], labels[w]
                if pu == pw:
                    continue
                adj = rows[u] >> w & 1
                before = (rows[u] & masks[pu]).bit_count() + (rows[w] & masks[pw]).bit_count()
                after = (rows[u] & masks[pw]).bit_count() - adj + (rows[w] & masks[pu]).bit_count() - adj
                if after < before:
                    masks[pu] ^= (1 << u) | (1 << w)
                    masks[pw] ^= (1 << u) | (1 << w)
                    labels[u], labels[w] = pw, pu
                    improved = True
    return labels


def edit_distance_to_turan(g: Graph, r: int, mode: str = "exact") -> tuple[int, PartitionAssignment]:
    """Fewest edge additions plus deletions turning ``g`` into ``T(n, r)``.

    For a balanced partition the cost is the internal edges plus the missing
    crossing pairs, i.e. ``2 * internal + e(T(n, r)) - e(g)``.
    """
    if r < 1:
        raise InputError("r must be positive")
    n = g.n
    local = _local_balanced(g, r)
    internal_local = PartitionAssignment(tuple(local), r).internal_edges(g)
    if mode == "local":
        labels, internal = local, internal_local
    elif mode == "exact":
        _check_exact_size(n, r)
        internal, labels = _min_internal(g, r, _balanced_capacity(n, r), internal_local + 1)
    else:
        raise InputError(f"unknown mode {mode!r}")
    return 2 * internal + turan_edges(n, r) - g.edge_count, PartitionAssignment(tuple(labels), r)


# ---------------------------------------------------------------------------
# vertex classification and peeling


def _frac(x) -> Fraction:
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def classify_low_and_dense(
    g: Graph, partition: PartitionAssignment, theta=Fraction(1, 10), eps=Fraction(1, 20)
) -> tuple[set[int], set[int]]:
    """``W``: vertices with at least ``2*theta*n`` neighbours in their own part.
    ``L``: vertices of degree at most ``(1 - 1/r - eps) * n``."""
    theta, eps = _frac(theta), _frac(eps)
    if not (0 < theta < 1 and 0 < eps < 1):
        raise InputError("theta and eps must lie strictly between 0 and 1")
    if len(partition.part_of) != g.n:
        raise InputError("partition does not cover the graph")
    n, r = g.n, partition.r
    masks = partition.part_masks()
    dense = {v for v in range(n) if (g.rows[v] & masks[partition.part_of[v]]).bit_count() >= 2 * theta * n}
    low_cut = (1 - Fraction(1, r) - eps) * n
    low = {v for v in range(n) if g.rows[v].bit_count() <= low_cut}
    return dense, low


@dataclass
class PeelStep:
    vertex: int      # label in the input graph
    order: int       # order of the graph the vertex was deleted from
    degree: int
    threshold: Fraction

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "order": self.order, "degree": self.degree, "threshold": str(self.threshold)}


@dataclass
class PeelTrace:
    steps: list[PeelStep]
    terminal: Graph
    remaining: list[int]   # input labels of the terminal graph's vertices

    @property
    def deleted(self) -> list[int]:
        return [s.vertex for s in self.steps]


def low_degree_peel(g: Graph, r: int, eps=Fraction(1, 20)) -> PeelTrace:
    """Repeatedly delete a vertex of degree at most ``(1 - 1/r - eps) * m``.

    ``m`` is the order of the current graph. Among eligible vertices the one of
    smallest degree (then smallest label) goes first.
    """
    eps = _frac(eps)
    if r < 1:
        raise InputError("r must be positive")
    alive = list(range(g.n))
    cur = g
    steps: list[PeelStep] = []
    while cur.n:
        cut = (1 - Fraction(1, r) - eps) * cur.n
        degs = cur.degrees()
        cands = [i for i in range(cur.n) if degs[i] <= cut]
        if not cands:
            break
        i = min(cands, key=lambda i: (degs[i], alive[i]))
        steps.append(PeelStep(alive[i], cur.n, degs[i], cut))
        cur = delete_vertices(cur, [i])
        del alive[i]
    return PeelTrace(steps, cur, alive)


__all__ = [
    "PartitionAssignment",
    "PeelStep",
    "PeelTrace",
    "ProblemSpec",
    "chromatic_number",
    "classify_low_and_dense",
    "contains_subgraph",
    "copy_masks",
    "edit_distance_to_turan",
    "find_embedding",
    "is_family_free",
    "low_degree_peel",
    "matching_number",
    "max_crossing_partition",
    "max_disjoint_copies",
    "max_packing",
    "maximum_matching",
]
