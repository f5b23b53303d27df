"""Closed-form bounds with brute-force oracles."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapabilityError, InputError, NotApplicableError
from .graph import Graph, turan_edges
from .graph6 import graph6_encode
from .invariants import chromatic_number, matching_number

ORACLE_CAP = 12


def _positive(**kw: int) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise InputError(f"{name} must be a positive integer, got {v!r}")


def chvatal_hanson(nu: int, delta: int) -> int:
    """Max edges with matching number <= ``nu`` and max degree <= ``delta``."""
    _positive(nu=nu, delta=delta)
    f = delta * nu + (delta // 2) * (nu // ((delta + 1) // 2))
    if f > chvatal_hanson_relaxation(nu, delta):
        raise AssertionError(f"f({nu}, {delta}) = {f} exceeds delta*nu + nu")
    return f


def chvatal_hanson_relaxation(nu: int, delta: int) -> int:
    _positive(nu=nu, delta=delta)
    return delta * nu + nu


class _MatchingPruner:
    def __init__(self, nu: int):
        self.nu = nu

    def prepare(self, parent: Graph):
        return None

    def accepts(self, state, child: Graph, v: int) -> bool:
        return matching_number(child) <= self.nu


def brute_force_f(nu: int, delta: int, order: int | None = None, cap: int = ORACLE_CAP) -> tuple[int, Graph]:
    """Exact ``max e(G)`` over graphs of the given order with ``nu(G) <= nu``, ``Delta(G) <= delta``.

    ``order`` defaults to ``nu * (delta + 1)``; smaller graphs are covered by
    padding with isolated vertices. Canonical augmentation with both
    constraints as hereditary pruning and branch and bound on the edge count.
    Returns the value and one extremal graph.
    """
    from .search import AugmentationTree

    _positive(nu=nu, delta=delta)
    n = nu * (delta + 1) if order is None else order
    if n > cap:
        raise CapabilityError(f"oracle order {n} exceeds the cap {cap}; pass cap={n} to raise it")
    best: list = [0, Graph(n, check=False)]
    tree = AugmentationTree(n, _MatchingPruner(nu), min_edges=lambda: best[0] + 1, max_degree=delta)
    for g in tree:
        if g.edge_count > best[0]:
            best[:] = [g.edge_count, g]
    return best[0], best[1]


def intersection_lower_bound(sets: Sequence[Iterable]) -> int:
    """``sum |V_i| - (k - 1) |union V_i|``, a lower bound on ``|intersection V_i|``."""
    sets = [set(s) for s in sets]
    if not sets:
        raise InputError("need at least one set")
    union = set().union(*sets)
    return sum(len(s) for s in sets) - (len(sets) - 1) * len(union)


def turan_edge_bounds(n: int, r: int) -> tuple[Fraction, Fraction, int]:
    """``((1 - 1/r) n^2/2 - r/8, (1 - 1/r) n^2/2, e(T(n, r)))`` in exact arithmetic."""
    if r < 1 or n < 0:
        raise InputError("need r >= 1 and n >= 0")
    upper = (1 - Fraction(1, r)) * n * n / 2
    lower = upper - Fraction(r, 8)
    exact = turan_edges(n, r)
    if not lower <= exact <= upper:
        raise AssertionError(f"Turan sandwich fails at n={n}, r={r}")
    return lower, upper, exact


def erdos_stone_estimate(n: int, F: Graph) -> float:
    """Leading term ``(1 - 1/(chi(F) - 1)) n^2 / 2`` of ``ex(n, F)``; an estimate only."""
    chi = chromatic_number(F)
    if chi < 2:
        raise NotApplicableError("F has no edges, so every graph with an edge contains it")
    return (1 - 1 / (chi - 1)) * n * n / 2


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator, "float": float(x)}
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return x


@dataclass
class BoundReport:
    name: str
    inputs: dict
    bound_value: object
    witness_value: object
    satisfied: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "bound_value": _jsonable(self.bound_value),
            "witness_value": _jsonable(self.witness_value),
            "satisfied": self.satisfied,
            "extra": self.extra,
        }


def chvatal_hanson_report(nu: int, delta: int, oracle: bool = False) -> BoundReport:
    """Formula vs relaxation, and vs the brute-force oracle when requested (equality expected)."""
    f = chvatal_hanson(nu, delta)
    relax = chvatal_hanson_relaxation(nu, delta)
    extra = {"relaxation": relax}
    witness = None
    ok = f <= relax
    if oracle:
        witness, g = brute_force_f(nu, delta)
        extra["witness_graph6"] = graph6_encode(g)
        ok = ok and witness == f
    return BoundReport("chvatal-hanson", {"nu": nu, "delta": delta}, f, witness, ok, extra)


def turan_report(n: int, r: int) -> BoundReport:
    lower, upper, exact = turan_edge_bounds(n, r)
    return BoundReport("turan", {"n": n, "r": r}, [lower, upper], exact, True)


def intersection_report(sets: Sequence[Iterable]) -> BoundReport:
    sets = [set(s) for s in sets]
    bound = intersection_lower_bound(sets)
    actual = len(set.intersection(*sets))
    return BoundReport("intersection", {"k": len(sets), "sizes": [len(s) for s in sets]}, bound, actual, bound <= actual)


def erdos_stone_report(n: int, F: Graph) -> BoundReport:
    est = erdos_stone_estimate(n, F)
    r = chromatic_number(F) - 1
    exact = turan_edges(n, r)
    # only the leading term is meaningful; e(T(n, r)) never exceeds it
    return BoundReport(
        "erdos-stone", {"n": n, "F_graph6": graph6_encode(F)}, est, exact, exact <= est, {"estimate_only": True}
    )
