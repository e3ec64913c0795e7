"""
The general-n section built from the rational maps

    R_i(w) = prod_{(a, b), a != b, a, b != i} M_{z_a, z_b, z_i}(w),

which have degree d = (n-1)(n-2), a pole of order d at z_i and zeros of order
n-2 at every other z_j.  For a large value eps, R_i^{-1}(eps) is a ring of d
points close to z_i; the union over i and over k levels eps_1..eps_k gives
k n (n-1)(n-2) new points.

Near z_i write w = z_i + v.  Then R_i(w) = C_i prod_a (1 + v/delta_a)^{n-2} / v^d
with delta_a = z_i - z_a and C_i = prod_a delta_a^{n-2} * prod_{(a,b)} (z_b - z_i)/(z_b - z_a),
so the preimages solve  C_i prod_a (v + delta_a)^{n-2} = eps v^d,
and the root finder works with that product form directly.
"""

from __future__ import annotations

import dataclasses
import itertools
import math

import numpy as np

from .configuration import Configuration, SectionOutput, SeparationError, from_sphere
from .mobius import (
    MobiusMap,
    affine_of,
    chordal_matrix,
    min_separation,
    normalize_rows,
    rotation_to_infinity,
    sphere_coords,
)
from .roots import RootFindingError, aberth, newton_polish

DEFAULT_K = 1e3
DEFAULT_THETA_STEP = 2 * math.pi / 64
DEFAULT_SHRINK = 20.0

_CANDIDATE_DIRECTIONS = np.array(
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    + [[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)], dtype=float)


@dataclasses.dataclass
class RationalMap:
    """R_i in an affine chart where every configuration point is finite."""
    points: np.ndarray   # affine coordinates of the configuration in the chart
    i: int

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def degree(self) -> int:
        return (self.n - 1) * (self.n - 2)

    @property
    def zero_order(self) -> int:
        return self.n - 2

    @property
    def others(self) -> np.ndarray:
        return np.delete(self.points, self.i)

    def pairs(self):
        idx = [j for j in range(self.n) if j != self.i]
        return [(a, b) for a, b in itertools.permutations(idx, 2)]

    def __call__(self, w):
        """Direct evaluation as the product of Mobius maps."""
        z = self.points
        zi = z[self.i]
        w = np.asarray(w, dtype=complex)
        out = np.ones_like(w)
        for a, b in self.pairs():
            out = out * (w - z[a]) * (z[b] - zi) / ((w - zi) * (z[b] - z[a]))
        return out

    def coefficient(self) -> complex:
        """C_i * prod_a delta_a^{n-2}: R_i(z_i + v) ~ coefficient / v^d as v -> 0."""
        z = self.points
        zi = z[self.i]
        c = 1 + 0j
        for a, b in self.pairs():
            c *= (z[b] - zi) / (z[b] - z[a])
        return c * np.prod((zi - self.others) ** self.zero_order)

    def numerator_denominator(self) -> tuple[np.ndarray, np.ndarray]:
        """Polynomial coefficients (increasing degree) with R = num/den, both of degree d."""
        z = self.points
        zi = z[self.i]
        c = 1 + 0j
        for a, b in self.pairs():
            c *= (z[b] - zi) / (z[b] - z[a])
        num = c * np.polynomial.polynomial.polyfromroots(np.repeat(self.others, self.zero_order))
        den = np.polynomial.polynomial.polyfromroots(np.full(self.degree, zi))
        return num, den

    def preimages(self, eps: complex) -> np.ndarray:
        """All d solutions of R_i(w) = eps, as affine coordinates in the chart."""
        zi = self.points[self.i]
        delta = zi - self.others
        e = self.zero_order
        d = self.degree
        c_i = self.coefficient() / np.prod(delta ** e)

        def logderiv(v):
            # p(v) = eps v^d - c_i prod (v + delta)^e
            v = np.asarray(v, dtype=complex)
            s = (e / (v[:, None] + delta[None, :])).sum(axis=1)
            h = c_i * np.prod((v[:, None] + delta[None, :]) ** e, axis=1) / (eps * v ** d)
            return d / v - h * (s - d / v) / (1 - h)

        r0 = abs(self.coefficient() / eps) ** (1.0 / d)
        ang = np.angle(self.coefficient() / eps) / d
        z0 = r0 * np.exp(1j * (ang + 2 * np.pi * np.arange(d) / d))
        v = newton_polish(logderiv, aberth(logderiv, z0))
        resid = np.abs(self(zi + v) / eps - 1)
        if not np.all(np.isfinite(v)) or resid.max() > 1e-8:
            raise RootFindingError(f"preimage residual {resid.max():.3g}")
        return zi + v


def chart_for(h: np.ndarray) -> MobiusMap:
    """Rotation moving a point far from the configuration to infinity.

    Candidates are the antipode of the chordal centroid and a fixed set of directions;
    the one with the largest distance to the configuration wins.  The section does not
    depend on this choice (R_i is chart-independent); it only keeps coordinates finite.
    """
    v = sphere_coords(h)
    cands = _CANDIDATE_DIRECTIONS / np.linalg.norm(_CANDIDATE_DIRECTIONS, axis=1, keepdims=True)
    centroid = v.mean(axis=0)
    if np.linalg.norm(centroid) > 1e-3:
        cands = np.vstack([-centroid / np.linalg.norm(centroid), cands])
    dist = np.linalg.norm(cands[:, None, :] - v[None, :, :], axis=2).min(axis=1)
    best = cands[int(np.argmax(dist))]
    return rotation_to_infinity(from_sphere(best[None, :])[0])


def build_rational_map(config: Configuration, i: int) -> tuple[RationalMap, MobiusMap]:
    """R_i expressed in the chart given by `chart_for`; returns (map, chart rotation)."""
    if config.n < 4:
        raise ValueError("rational-map sections need n >= 4")
    if not 0 <= i < config.n:
        raise IndexError(i)
    rot = chart_for(config.h)
    z = affine_of(rot(config.h))
    return RationalMap(z, i), rot


def pole_strengths(config: Configuration) -> np.ndarray:
    """A_i with |R_i(w)| ~ A_i / s^d as the chordal distance s = d(w, z_i) -> 0.

    |M_{a,b,i}(w)| is a ratio of chordal distances, so
    A_i = prod_a d(z_i, z_a)^{2(n-2)} / prod_{(a,b)} d(z_a, z_b), independent of any chart.
    """
    n = config.n
    logd = np.log(chordal_matrix(config.h, config.h) + np.eye(n))
    out = np.empty(n)
    for i in range(n):
        idx = [j for j in range(n) if j != i]
        sub = logd[np.ix_(idx, idx)]
        out[i] = 2 * (n - 2) * logd[i, idx].sum() - sub.sum()
    return np.exp(out)


def scale_factor(config: Configuration, shrink: float = DEFAULT_SHRINK) -> float:
    """rho = max_i A_i / s^d with target radius s = min(1, min separation) / shrink.

    With |eps| = K rho, every preimage ring has chordal radius about s K^{-1/d} or less.
    """
    d = (config.n - 1) * (config.n - 2)
    radius = min(1.0, config.separation) / shrink
    return float(pole_strengths(config).max() / radius ** d)


def level_value(config: Configuration, level: int, K: float = DEFAULT_K,
                theta_step: float = DEFAULT_THETA_STEP) -> complex:
    """eps_l = K * rho(config) * exp(i * theta_step * l); see `scale_factor` for rho."""
    if level < 1:
        raise ValueError("levels start at 1")
    return K * scale_factor(config) * complex(math.cos(theta_step * level), math.sin(theta_step * level))


def section_general(config: Configuration, levels: int = 1, K: float = DEFAULT_K,
                    theta_step: float = DEFAULT_THETA_STEP, tol_sep: float | None = None) -> SectionOutput:
    n = config.n
    if n < 4:
        raise ValueError("section_general needs n >= 4 (use section_three for n = 3)")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if levels * theta_step >= 2 * math.pi:
        raise ValueError("level angles wrap around; lower theta_step")
    tol = config.tol_sep if tol_sep is None else tol_sep
    rot = chart_for(config.h)
    z = affine_of(rot(config.h))
    back = rot.inverse()
    blocks = []
    owners = []
    for lvl in range(1, levels + 1):
        eps = level_value(config, lvl, K, theta_step)
        for i in range(n):
            w = RationalMap(z, i).preimages(eps)
            blocks.append(normalize_rows(np.stack([w, np.ones_like(w)], axis=1)))
            owners.extend([i] * len(w))
    new = back(np.vstack(blocks))
    sep = min(min_separation(new), float(chordal_matrix(new, config.h).min()))
    if sep <= tol:
        raise SeparationError(f"space-level points separated by only {sep:.3g}; try a larger K (now {K:g})")
    return SectionOutput(new, "spacelevel", {
        "levels": levels, "K": K, "theta_step": theta_step,
        "degree": (n - 1) * (n - 2), "owner": owners,
    })
