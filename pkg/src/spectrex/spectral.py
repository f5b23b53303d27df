"""Certified spectral radius, Perron vectors and quotient-matrix formulas."""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, InputError, NotApplicableError
from .graph import Graph, bits, complete_graph, complete_multipartite, empty_graph, induced_subgraph, join

MAX_ITERATIONS = 10**6
DEFAULT_TOL = 1e-10


@dataclass
class SpectralResult:
    rho: float
    vector: np.ndarray          # max entry exactly 1
    residual: float             # ||A x - rho x|| / ||x||
    iterations: int
    empty: bool = False         # n == 0; rho = 0 by convention
    component: list[int] = field(default_factory=list)

    def interval(self) -> tuple[float, float]:
        return self.rho - self.residual, self.rho + self.residual

    def to_dict(self, with_vector: bool = True) -> dict:
        d = {
            "rho": self.rho,
            "residual": self.residual,
            "iterations": self.iterations,
            "empty": self.empty,
        }
        if with_vector:
            d["vector"] = [float(x) for x in self.vector]
        return d


def _residual(m: np.ndarray, x: np.ndarray) -> tuple[float, float]:
    mx = m @ x
    xx = float(x @ x)
    rho = float(x @ mx) / xx
    return rho, float(np.linalg.norm(mx - rho * x)) / np.sqrt(xx)


def noise_floor(m: np.ndarray) -> float:
    """Smallest residual float64 arithmetic can certify for ``m``."""
    n = m.shape[0]
    return 8.0 * np.finfo(float).eps * max(1.0, float(np.abs(m).sum(axis=1).max())) * np.sqrt(n)


def dominant_eigenpair(
    m: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS, rqi_every: int = 8
) -> tuple[float, np.ndarray, float, int]:
    """Perron pair of a symmetric nonnegative irreducible matrix.

    Shifted power iteration (``M + I`` so a bipartite ``-rho`` cannot tie)
    from the all-ones vector; every ``rqi_every`` steps a Rayleigh-quotient
    inverse step is tried and kept only if it stays nonnegative and lowers the
    residual. Stops on the symmetric residual bound, which encloses a true
    eigenvalue within ``residual`` of the returned estimate.

    ``tol`` is raised to the float64 noise floor of ``M`` when it asks for
    less; the reported residual is always the one actually reached.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    n = m.shape[0]
    tol = max(tol, noise_floor(m))
    x = np.ones(n) / np.sqrt(n)
    rho, res = _residual(m, x)
    best = res
    eye = np.eye(n)
    it = 0
    while res > tol:
        if it >= max_iter:
            raise ConvergenceError("power iteration did not reach tolerance", best, it)
        it += 1
        if it % rqi_every == 0:
            try:
                y = np.linalg.solve(m - rho * eye, x)
            except np.linalg.LinAlgError:
                y = None
            if y is not None and np.all(np.isfinite(y)):
                y = y / y[np.argmax(np.abs(y))]
                if y.min() >= -1e-12:
                    y = np.clip(y, 0.0, None)
                    y /= np.linalg.norm(y)
                    r2, res2 = _residual(m, y)
                    if res2 < res:
                        x, rho, res = y, r2, res2
                        best = min(best, res)
                        continue
        y = m @ x + x
        x = y / np.linalg.norm(y)
        rho, res = _residual(m, x)
        best = min(best, res)
    x = x / x.max()
    return rho, x, res, it


def _component_result(g: Graph, tol: float, max_iter: int) -> SpectralResult:
    a = g.adjacency_matrix()
    if g.n == 1:
        return SpectralResult(0.0, np.ones(1), 0.0, 0)
    rho, x, res, it = dominant_eigenpair(a, tol, max_iter)
    return SpectralResult(rho, x, res, it)


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS) -> SpectralResult:
    """Largest adjacency eigenvalue with a residual certificate.

    Disconnected graphs are solved per component; the component of largest
    radius (first by smallest vertex on ties) supplies the result, and the
    returned vector is zero off that component.
    """
    if tol <= 0:
        raise InputError("tol must be positive")
    if g.n == 0:
        return SpectralResult(0.0, np.zeros(0), 0.0, 0, empty=True)
    best: SpectralResult | None = None
    best_verts: list[int] = []
    for comp in g.components():
        verts = list(bits(comp))
        res = _component_result(induced_subgraph(g, verts), tol, max_iter)
        if best is None or res.rho > best.rho + max(res.residual, best.residual):
            best, best_verts = res, verts
    assert best is not None
    vec = np.zeros(g.n)
    vec[best_verts] = best.vector
    best.vector = vec
    best.component = best_verts
    return best


def _solve_one(args):
    g, tol = args
    return spectral_radius(g, tol)


def spectral_radius_batch(graphs: Sequence[Graph], tol: float = DEFAULT_TOL, workers: int = 1) -> list[SpectralResult]:
    """``spectral_radius`` over many graphs; output order follows the input."""
    if workers <= 1 or len(graphs) < 2:
        return [spectral_radius(g, tol) for g in graphs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_solve_one, [(g, tol) for g in graphs], chunksize=max(1, len(graphs) // (4 * workers))))


def eigen_residual(g: Graph, rho: float, x) -> float:
    """``max_i |rho x_i - sum_{j ~ i} x_j|``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise InputError(f"vector has shape {x.shape}, expected ({g.n},)")
    if g.n == 0:
        return 0.0
    return float(np.max(np.abs(rho * x - g.adjacency_matrix() @ x)))


def rayleigh_quotient(g: Graph, x) -> float:
    """``2 * sum_{ij in E} x_i x_j / sum x_i^2``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise InputError(f"vector has shape {x.shape}, expected ({g.n},)")
    xx = float(x @ x)
    if xx == 0:
        raise InputError("zero vector")
    if np.any(x < 0):
        raise InputError("entries must be nonnegative")
    return 2.0 * sum(x[u] * x[v] for u, v in g.edges()) / xx


# ---------------------------------------------------------------------------
# clique joined with a complete multipartite graph


@dataclass(frozen=True)
class QuotientSpec:
    """``K_clique v K(sizes)``: complete multipartite graph joined with a clique."""

    sizes: tuple[int, ...]
    clique: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if any(s < 1 for s in self.sizes) or self.clique < 0:
            raise InputError("part sizes must be positive and the clique order nonnegative")
        if self.order < 1:
            raise InputError("total order must be at least 1")

    @property
    def order(self) -> int:
        return self.clique + sum(self.sizes)

    def expand(self) -> Graph:
        """Clique vertices first, then the parts in the given order."""
        body = complete_multipartite(self.sizes) if self.sizes else empty_graph(0)
        return join(complete_graph(self.clique), body)

    def matrix(self) -> np.ndarray:
        """Quotient matrix of the equitable partition (parts, then the clique)."""
        sizes = list(self.sizes) + ([self.clique] if self.clique else [])
        q = len(sizes)
        b = np.tile(np.asarray(sizes, dtype=float), (q, 1))
        np.fill_diagonal(b, 0.0)
        if self.clique:
            b[-1, -1] = self.clique - 1
        return b


def quotient_rho(spec: QuotientSpec, tol: float = 1e-12) -> tuple[float, np.ndarray, float]:
    """Largest eigenvalue of the quotient matrix and its part-constant vector.

    Runs the power iteration on the symmetrised quotient
    ``D^{1/2} B D^{-1/2}`` (entries ``sqrt(n_i n_j)``) so the same residual
    certificate applies. Returns ``(rho, part_values, residual)`` with the
    clique entry (the last one) scaled to 1, or the max entry when there is
    no clique.
    """
    b = spec.matrix()
    sizes = np.asarray(list(spec.sizes) + ([spec.clique] if spec.clique else []), dtype=float)
    d = np.sqrt(sizes)
    s = d[:, None] * b / d[None, :]
    s = (s + s.T) / 2
    if len(s) == 1 and s[0, 0] == 0:
        return 0.0, np.ones(1), 0.0
    rho, z, res, _ = dominant_eigenpair(s, tol)
    y = z / d
    y = y / (y[-1] if spec.clique else y.max())
    return rho, y, res


def perron_formula_check(spec: QuotientSpec, tol: float = 1e-12) -> float:
    """Max deviation of the part entries from ``(rho + 1) / (rho + n_i)``."""
    if spec.clique < 1:
        raise NotApplicableError("the entry formula needs a joined clique (clique >= 1)")
    if not spec.sizes:
        return 0.0
    rho, y, _ = quotient_rho(spec, tol)
    formula = (rho + 1.0) / (rho + np.asarray(spec.sizes, dtype=float))
    return float(np.max(np.abs(y[: len(spec.sizes)] - formula)))
