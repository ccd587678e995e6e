"""Adjacency spectral radius, algebraic connectivity and related tools.

Dense LAPACK ``eigh`` does the heavy lifting; a shifted power iteration is
kept as a fallback for the spectral radius when the dense residual check
fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NonConvergence, ParameterError
from .graph import Edge, Graph

DEFAULT_TOL = 1e-10
DEFAULT_MARGIN = 1e-8


@dataclass(frozen=True)
class SpectralResult:
    value: float
    vector: np.ndarray
    residual: float
    iterations: int


@dataclass(frozen=True)
class LaplacianResult:
    mu2: float
    fiedler: np.ndarray
    residual: float


class Comparison(str, Enum):
    ABOVE = "above"
    BELOW = "below"
    INDISTINGUISHABLE = "indistinguishable"


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    if g.m:
        idx = np.array(g.edges)
        a[idx[:, 0], idx[:, 1]] = 1.0
        a[idx[:, 1], idx[:, 0]] = 1.0
    return a


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def _power_iteration(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    n = a.shape[0]
    # shift by the max row sum keeps the iteration matrix nonnegative and
    # breaks the +-lambda tie on bipartite graphs
    shift = float(a.sum(axis=1).max()) + 1.0
    b = a + shift * np.eye(n)
    x = np.ones(n) / math.sqrt(n)
    lam, res = 0.0, math.inf
    stall = 0
    for it in range(1, max_iter + 1):
        y = b @ x
        x_new = y / np.linalg.norm(y)
        lam_new = float(x_new @ a @ x_new)
        res = float(np.linalg.norm(a @ x_new - lam_new * x_new))
        if res <= tol:
            return lam_new, x_new, res, it
        if abs(lam_new - lam) < 1e-15:
            stall += 1
            if stall > 50:
                x_new = x_new + 1e-3 * np.arange(1, n + 1) / n
                x_new /= np.linalg.norm(x_new)
                stall = 0
        x, lam = x_new, lam_new
    raise NonConvergence(f"power iteration stopped at residual {res:.3e} after {max_iter} steps")


def _top_pair(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    w, v = np.linalg.eigh(a)
    lam, x = float(w[-1]), v[:, -1]
    if x.sum() < 0:
        x = -x
    res = float(np.linalg.norm(a @ x - lam * x))
    if res <= tol:
        return lam, x, res, 1
    return _power_iteration(a, tol, max_iter)


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = 100_000) -> SpectralResult:
    """Largest adjacency eigenvalue with a nonnegative unit eigenvector.

    The eigenpair is computed per connected component and the component with
    the largest value wins (lowest vertex first on ties), so the vector is
    the Perron vector of that component, zero elsewhere, and strictly
    positive whenever ``g`` is connected.
    """
    if g.n < 1:
        raise ParameterError("spectral radius needs n >= 1")
    best: tuple[float, list[int], np.ndarray, int] | None = None
    for comp in g.components():
        if len(comp) == 1:
            lam, x, it = 0.0, np.ones(1), 0
        else:
            sub = adjacency_matrix(g)[np.ix_(comp, comp)]
            lam, x, _, it = _top_pair(sub, tol, max_iter)
            x = np.abs(x)
            x /= np.linalg.norm(x)
        if best is None or lam > best[0] + tol:
            best = (lam, comp, x, it)
    lam, comp, xc, it = best
    vec = np.zeros(g.n)
    vec[comp] = xc
    a = adjacency_matrix(g)
    res = float(np.linalg.norm(a @ vec - lam * vec))
    if res > tol:
        raise NonConvergence(f"spectral radius residual {res:.3e} exceeds tol {tol:.1e}")
    return SpectralResult(value=lam, vector=vec, residual=res, iterations=it)


def algebraic_connectivity(g: Graph, tol: float = DEFAULT_TOL) -> LaplacianResult:
    """Second-smallest Laplacian eigenvalue and a unit eigenvector orthogonal
    to the all-ones vector."""
    n = g.n
    if n < 2:
        raise ParameterError("algebraic connectivity needs n >= 2")
    lap = laplacian_matrix(g)
    # adding 2J moves the all-ones direction to eigenvalue 2n, above the
    # whole Laplacian spectrum (which lies in [0, n]); the rest is unchanged
    w, v = np.linalg.eigh(lap + 2.0 * np.ones((n, n)))
    mu2, x = float(w[0]), v[:, 0]
    if x[np.argmax(np.abs(x))] < 0:
        x = -x
    res = float(np.linalg.norm(lap @ x - mu2 * x))
    if res > tol:
        raise NonConvergence(f"Laplacian residual {res:.3e} exceeds tol {tol:.1e}")
    if abs(mu2) <= tol:
        mu2 = 0.0
    return LaplacianResult(mu2=mu2, fiedler=x, residual=res)


def hong_bound(g: Graph) -> float:
    """(delta-1)/2 + sqrt(2m - delta*n + (delta+1)^2/4), an upper bound on the
    spectral radius in terms of order, size and minimum degree."""
    d = g.min_degree()
    if g.n == 0 or d < 1:
        raise ParameterError("bound needs minimum degree >= 1 (no isolated vertices)")
    return (d - 1) / 2 + math.sqrt(2 * g.m - d * g.n + (d + 1) ** 2 / 4)


def compare(a: float, b: float, margin: float = DEFAULT_MARGIN) -> Comparison:
    """Three-way comparison of two spectral quantities at a decision margin."""
    if a > b + margin:
        return Comparison.ABOVE
    if a < b - margin:
        return Comparison.BELOW
    return Comparison.INDISTINGUISHABLE


def rotate_edge_compare(g: Graph, remove: Edge, add: Edge, tol: float = DEFAULT_TOL) -> tuple[Graph, bool]:
    """Delete ``remove``, insert ``add``; report whether the Perron products
    satisfy x_u x_v <= x_u' x_v' on ``g``.

    When the returned flag is true the rotated graph has strictly larger
    spectral radius. The comparison itself is left to the caller.
    """
    if not g.is_connected():
        raise ParameterError("edge rotation needs a connected graph")
    u, v = remove
    a, b = add
    if not g.has_edge(u, v):
        raise ParameterError(f"{remove} is not an edge")
    if a == b or g.has_edge(a, b):
        raise ParameterError(f"{add} is not a non-edge")
    x = spectral_radius(g, tol).vector
    rotated = g.without_edge(u, v).with_edge(a, b)
    return rotated, bool(x[u] * x[v] <= x[a] * x[b])
