"""
Aberth-Ehrlich simultaneous root finding with Newton polishing and residual
certification.

The iteration only needs the logarithmic derivative p'/p, so polynomials
known in product form can be solved without expanding their coefficients.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


class RootFindingError(RuntimeError):
    pass


def horner_logderiv(coeffs: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    """p'/p for coefficients in increasing degree order."""
    c = np.asarray(coeffs, dtype=complex)
    dc = c[1:] * np.arange(1, len(c))

    def f(z: np.ndarray) -> np.ndarray:
        p = np.polynomial.polynomial.polyval(z, c)
        dp = np.polynomial.polynomial.polyval(z, dc)
        return dp / p
    return f


def cauchy_radius(coeffs: np.ndarray) -> float:
    """Upper bound on root moduli (Fujiwara)."""
    c = np.asarray(coeffs, dtype=complex)
    d = len(c) - 1
    lead = c[-1]
    ratios = [abs(c[d - j] / lead) ** (1.0 / j) for j in range(1, d + 1)]
    ratios[-1] = (abs(c[0] / lead) / 2) ** (1.0 / d)
    return 2 * max(ratios)


def initial_guesses(degree: int, radius: float, center: complex = 0) -> np.ndarray:
    # offset angle avoids symmetric stalls on real-symmetric problems
    ang = 2 * np.pi * np.arange(degree) / degree + 0.4
    return center + radius * np.exp(1j * ang)


def aberth(logderiv: Callable[[np.ndarray], np.ndarray], z0: np.ndarray,
           max_iter: int = 500, tol: float = 1e-14) -> np.ndarray:
    """Run the Aberth iteration from the starting vector z0 (one entry per root)."""
    z = np.array(z0, dtype=complex)
    d = len(z)
    if d == 0:
        return z
    active = np.ones(d, dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            ld = logderiv(z[idx])
            diff = z[idx, None] - z[None, :]
            diff[np.arange(len(idx)), idx] = np.inf
            repulse = (1.0 / diff).sum(axis=1)
            step = 1.0 / (ld - repulse)
        step = np.where(np.isfinite(step), step, 0)
        z[idx] -= step
        scale = np.maximum(1.0, np.abs(z[idx]))
        done = np.abs(step) <= tol * scale
        active[idx[done]] = False
    return z


def newton_polish(logderiv: Callable[[np.ndarray], np.ndarray], z: np.ndarray,
                  steps: int = 3) -> np.ndarray:
    z = np.array(z, dtype=complex)
    for _ in range(steps):
        with np.errstate(divide="ignore", invalid="ignore"):
            step = 1.0 / logderiv(z)
        z = z - np.where(np.isfinite(step), step, 0)
    return z


def poly_roots(coeffs: np.ndarray, residual_tol: float = 1e-9,
               separation_tol: float = 1e-10) -> np.ndarray:
    """All roots of the polynomial (increasing-degree coefficients), certified simple.

    The residual |p(z)| / sum |c_j||z|^j must be below residual_tol for every root and the
    roots must be pairwise separated; otherwise RootFindingError is raised.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    d = len(c) - 1
    if d < 1:
        return np.zeros(0, dtype=complex)
    ld = horner_logderiv(c)
    z0 = initial_guesses(d, cauchy_radius(c) / 2)
    z = newton_polish(ld, aberth(ld, z0))
    certify(c, z, residual_tol, separation_tol)
    return z


def relative_residual(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    p = np.polynomial.polynomial.polyval(z, c)
    scale = np.polynomial.polynomial.polyval(np.abs(z), np.abs(c))
    return np.abs(p) / scale


def certify(coeffs: np.ndarray, z: np.ndarray, residual_tol: float, separation_tol: float):
    if not np.all(np.isfinite(z)):
        raise RootFindingError("non-finite root estimate")
    res = relative_residual(coeffs, z)
    if res.max() > residual_tol:
        raise RootFindingError(f"root residual {res.max():.3g} above {residual_tol:.1g}")
    if len(z) > 1:
        gap = np.abs(z[:, None] - z[None, :])
        gap[np.diag_indices_from(gap)] = np.inf
        rel = gap.min() / max(1.0, np.abs(z).max())
        if rel <= separation_tol:
            raise RootFindingError(f"roots not separated (relative gap {rel:.3g})")
