"""Numeric l^p kernels: spatial matrix images of acyclic algebras, operator
norms on l^p, and circle-quadrature validation of the degree projections.

Exact matrices from the matricial module are converted to complex floats.
The l^p -> l^p operator norm is exact for p = 1 (maximum column sum), a
singular value for p = 2, and otherwise a certified lower bound from a
nonlinear power iteration with restarts.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EmptyMatrix
from .graph import Graph, Path
from .lpa import Element, degree_component
from .matricial import acyclic_decompose

P_MIN, P_MAX = 1.0, 8.0


def _check_p(p: float) -> float:
    p = float(p)
    if not (P_MIN <= p <= P_MAX):
        raise ValueError(f"p must lie in [{P_MIN}, {P_MAX}]")
    return p


def worker_count() -> int:
    """Parallelism cap from LEAVITT_LAB_THREADS (default 1 = serial)."""
    raw = os.environ.get("LEAVITT_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class SpatialMatrix:
    """Per-sink complex float matrices indexed by the paths into each sink."""

    p: float
    blocks: dict[str, np.ndarray]
    paths: dict[str, tuple[Path, ...]]


def spatial_rep_acyclic(g: Graph, x: Element, p: float) -> SpatialMatrix:
    """Float image of the acyclic block decomposition."""
    p = _check_p(p)
    decomp = acyclic_decompose(g, x)
    blocks: dict[str, np.ndarray] = {}
    paths: dict[str, tuple[Path, ...]] = {}
    for key, matrix in decomp.blocks.items():
        arr = np.array(
            [[complex(c) for c in row] for row in matrix], dtype=np.complex128
        )
        if arr.size == 0:
            arr = arr.reshape((len(matrix), len(matrix)))
        blocks[key.vertex] = arr
        paths[key.vertex] = decomp.paths[key]
    return SpatialMatrix(p, blocks, paths)


# ---------------------------------------------------------------------------
# operator norms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormEstimate:
    value: float
    exact: bool
    converged: Optional[bool] = None


def _dual_sign_power(v: np.ndarray, r: float) -> np.ndarray:
    """Entrywise |v|^(r-1) · phase(v), with a relative floor against denormals."""
    mags = np.abs(v)
    out = np.zeros_like(v)
    top = float(mags.max()) if mags.size else 0.0
    if top == 0.0:
        return out
    nz = mags > top * 1e-18
    out[nz] = (mags[nz] ** (r - 1.0)) * (v[nz] / mags[nz])
    return out


def _power_iteration_leg(
    M: np.ndarray, p: float, x: np.ndarray, tol: float, max_iter: int
) -> tuple[float, bool]:
    q = p / (p - 1.0)
    nx = np.linalg.norm(x, ord=p)
    if nx == 0:
        return 0.0, True
    x = x / nx
    best = 0.0
    converged = False
    for _ in range(max_iter):
        y = M @ x
        gamma = float(np.linalg.norm(y, ord=p))
        if gamma == 0.0:
            converged = True
            break
        if gamma <= best * (1.0 + tol):
            best = max(best, gamma)
            converged = True
            break
        best = max(best, gamma)
        z = M.conj().T @ _dual_sign_power(y / gamma, p)
        zmax = float(np.abs(z).max())
        if zmax == 0.0:
            converged = True
            break
        x = _dual_sign_power(z / zmax, q)
        nx = np.linalg.norm(x, ord=p)
        if nx == 0:
            converged = True
            break
        x = x / nx
    return best, converged


def power_iteration_lower_bound(
    M,
    p: float,
    restarts: int = 8,
    seed: int = 0,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> NormEstimate:
    """Certified lower bound for the l^p operator norm by nonlinear power iteration.

    The value is the best ratio ||Mx||_p / ||x||_p over the iterates of every
    restart, hence always a valid lower bound; ``converged`` reports whether
    the best leg reached a stationary estimate.  Restarts run independently
    (threaded when LEAVITT_LAB_THREADS allows) and reduce by max.
    """
    p = _check_p(p)
    if p == 1.0:
        raise ValueError("use norm_estimate for p = 1; the column-sum formula is exact")
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0:
        raise EmptyMatrix("norm of an empty matrix")

    rng = np.random.default_rng(seed)
    n = M.shape[1]
    starts = [
        rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(restarts)
    ]
    col = int(np.argmax((np.abs(M) ** p).sum(axis=0)))
    e = np.zeros(n, dtype=np.complex128)
    e[col] = 1.0
    starts.append(e)

    if p == 2.0:
        # Hermitian case: accelerate by repeated squaring of M^H M, which
        # drives any start into the top eigenspace regardless of the gap
        proj = M.conj().T @ M
        for _ in range(40):
            scale = float(np.abs(proj).max())
            if scale == 0.0:
                break
            proj = proj / scale
            proj = proj @ proj

        def leg(x):
            y = proj @ x.astype(np.complex128)
            ny = float(np.linalg.norm(y))
            if ny == 0.0:
                return _power_iteration_leg(M, p, x.astype(np.complex128), tol, max_iter)
            y = y / ny
            return float(np.linalg.norm(M @ y)), True

    else:

        def leg(x):
            return _power_iteration_leg(M, p, x.astype(np.complex128), tol, max_iter)

    workers = worker_count()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=min(workers, len(starts))) as pool:
            results = list(pool.map(leg, starts))
    else:
        results = [leg(x) for x in starts]
    value, converged = max(results, key=lambda r: r[0])
    return NormEstimate(value, exact=False, converged=converged)


def norm_estimate(
    M,
    p: float,
    restarts: int = 8,
    seed: int = 0,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> NormEstimate:
    """Operator norm of a complex matrix on l^p.

    p = 1 is the exact maximum column absolute sum; p = 2 is the largest
    singular value.  Other p report the power-iteration lower bound with a
    convergence flag.
    """
    p = _check_p(p)
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0:
        raise EmptyMatrix("norm of an empty matrix")
    if p == 1.0:
        return NormEstimate(float(np.abs(M).sum(axis=0).max()), exact=True)
    if p == 2.0:
        # the full norm, but only to float precision: exact stays False
        return NormEstimate(float(np.linalg.norm(M, 2)), exact=False, converged=True)
    return power_iteration_lower_bound(
        M, p, restarts=restarts, seed=seed, tol=tol, max_iter=max_iter
    )


def op_norm_p(M, p: float, seed: int = 0) -> float:
    """Float value of the l^p operator norm (lower bound for p outside {1, 2})."""
    return norm_estimate(M, p, seed=seed).value


def element_norm_acyclic(g: Graph, x: Element, p: float, seed: int = 0) -> float:
    """Norm of an element of a finite acyclic algebra: max over sink blocks."""
    return element_norm_estimate(g, x, p, seed=seed).value


def element_norm_estimate(
    g: Graph, x: Element, p: float, seed: int = 0, tol: float = 1e-10
) -> NormEstimate:
    rep = spatial_rep_acyclic(g, x, p)
    values = []
    exact = True
    converged: Optional[bool] = None
    for v in sorted(rep.blocks):
        M = rep.blocks[v]
        if M.size == 0:
            continue
        est = norm_estimate(M, p, seed=seed, tol=tol)
        values.append(est.value)
        exact = exact and est.exact
        if est.converged is not None:
            converged = est.converged if converged is None else (converged and est.converged)
    value = max(values) if values else 0.0
    return NormEstimate(value, exact=exact, converged=converged)


# ---------------------------------------------------------------------------
# quadrature check of the degree projections
# ---------------------------------------------------------------------------


def degree_component_quadrature_error(g: Graph, x: Element, n: int, p: float) -> float:
    """Deviation between circle-averaged gauge rotations and the symbolic
    degree-n component, in the spatial representation.

    The gauge action rotates a matrix entry by z^(row length - column length),
    so the rectangle rule with enough equispaced nodes integrates the entry
    exactly; the node count is twice the minimum 2·maxdeg+1, widened when |n|
    itself exceeds the element's degree spread.
    """
    rep = spatial_rep_acyclic(g, x, p)
    sym = spatial_rep_acyclic(g, degree_component(x, n), p)
    maxdeg = max((abs(d) for d in x.degrees()), default=0)
    K = 2 * (2 * max(maxdeg, abs(n)) + 1)
    thetas = 2.0 * np.pi * np.arange(K) / K

    worst = 0.0
    for v, M in rep.blocks.items():
        if M.size == 0:
            continue
        rows = np.array([p_.length for p_ in rep.paths[v]])
        degs = rows[:, None] - rows[None, :]
        acc = np.zeros_like(M)
        for theta in thetas:
            phases = np.exp(1j * theta * degs)
            acc += np.exp(-1j * n * theta) * (phases * M)
        acc /= K
        dev = float(np.abs(acc - sym.blocks[v]).max()) if M.size else 0.0
        worst = max(worst, dev)
    return worst
