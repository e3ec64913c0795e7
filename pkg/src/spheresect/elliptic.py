"""
Sections over Conf_4 from torsion points of the Legendre curve
y^2 = x(x-1)(x-lam) whose branch points are N(config) = {0, 1, lam, inf}.

The x-coordinates of the 2k-torsion points other than the 2-torsion give
2k^2 - 2 new points; the x-coordinates of primitive 4k-torsion points give
P(4k)/2.  Both sets are independent of the choice of origin among the
2-torsion points, which makes the construction label-invariant.
"""

from __future__ import annotations

import dataclasses
import math
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from .configuration import Configuration, SectionOutput, empty_output
from .mobius import (
    D3_MATRICES,
    INF,
    MobiusMap,
    ProjectivePoint,
    chordal_distance,
    mobius_from_triple,
    normalize_rows,
)
from .roots import RootFindingError, aberth, newton_polish

CONDITIONING_TOL = 1e-4
DEDUPE_TOL = 1e-8

# m -> torsion spec for the sizes obtainable directly from a single torsion set
TORSION_TABLE = {
    6: ("full", 2),       # 4-torsion
    16: ("full", 3),      # 6-torsion
    24: ("primitive", 2),  # primitive 8-torsion
    30: ("full", 4),      # 8-torsion
    48: ("primitive", 3),  # primitive 12-torsion
    70: ("full", 6),      # 12-torsion
}


class ConditioningError(ValueError):
    """The configuration is too close to degenerate for certified torsion points."""


@dataclasses.dataclass(frozen=True)
class LegendreCurve:
    lam: complex

    def __post_init__(self):
        if not np.isfinite(self.lam) or abs(self.lam) < 1e-300 or self.lam == 1:
            raise ValueError(f"degenerate Legendre parameter {self.lam}")

    @property
    def a2(self) -> complex:
        return -(1 + self.lam)

    @property
    def a4(self) -> complex:
        return self.lam

    def rhs(self, x):
        return x * (x - 1) * (x - self.lam)

    def rhs_coeffs(self) -> np.ndarray:
        return np.array([0, self.a4, self.a2, 1], dtype=complex)


@dataclasses.dataclass(frozen=True)
class TorsionSpec:
    k: int
    primitive: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")

    @property
    def order(self) -> int:
        """Torsion order whose x-coordinates are used: 2k (full) or 4k (primitive)."""
        return 4 * self.k if self.primitive else 2 * self.k

    @property
    def size(self) -> int:
        return primitive_count(4 * self.k) // 2 if self.primitive else 2 * self.k ** 2 - 2

    def to_dict(self) -> dict:
        return {"k": self.k, "primitive": self.primitive}


@dataclasses.dataclass(frozen=True)
class DivisionPolynomial:
    """psi_k up to the factor 2y for even k: coefficients (increasing degree) in x."""
    k: int
    coeffs: np.ndarray = dataclasses.field(compare=False, repr=False)

    @property
    def degree(self) -> int:
        return len(np.trim_zeros(self.coeffs, "b")) - 1

    @staticmethod
    def expected_degree(k: int) -> int:
        return (k * k - 4) // 2 if k % 2 == 0 else (k * k - 1) // 2

    def __call__(self, x):
        return P.polyval(x, self.coeffs)


def _factorize(k: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= k:
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
        p += 1
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def primitive_count(k: int) -> int:
    """Number of elements of order exactly k in (Z/k)^2; multiplicative, p^{2e} - p^{2e-2}."""
    if k < 1:
        raise ValueError("k must be positive")
    result = 1
    for p, e in _factorize(k).items():
        result *= p ** (2 * e) - p ** (2 * e - 2)
    return result


def division_polynomial(curve: LegendreCurve, k: int) -> DivisionPolynomial:
    return DivisionPolynomial(k, _division_table(curve.lam, k)[k])


@lru_cache(maxsize=64)
def _division_table(lam: complex, kmax: int) -> dict[int, np.ndarray]:
    """f_j for j <= kmax where psi_j = f_j (j odd) or psi_j = 2y f_j (j even)."""
    a2, a4, a6 = -(1 + lam), lam, 0
    b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    F = np.array([a6, a4, a2, 1], dtype=complex)
    F2x16 = 16 * P.polymul(F, F)

    f: dict[int, np.ndarray] = {
        0: np.zeros(1, dtype=complex),
        1: np.ones(1, dtype=complex),
        2: np.ones(1, dtype=complex),
        3: np.array([b8, 3 * b6, 3 * b4, b2, 3], dtype=complex),
        4: np.array([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2],
                    dtype=complex),
    }

    def get(j: int) -> np.ndarray:
        if j in f:
            return f[j]
        m = j // 2
        if j % 2:
            if m % 2 == 0:
                r = P.polysub(P.polymul(F2x16, P.polymul(get(m + 2), P.polypow(get(m), 3))),
                              P.polymul(get(m - 1), P.polypow(get(m + 1), 3)))
            else:
                r = P.polysub(P.polymul(get(m + 2), P.polypow(get(m), 3)),
                              P.polymul(F2x16, P.polymul(get(m - 1), P.polypow(get(m + 1), 3))))
        else:
            r = P.polymul(get(m), P.polysub(P.polymul(get(m + 2), P.polypow(get(m - 1), 2)),
                                            P.polymul(get(m - 2), P.polypow(get(m + 1), 2))))
        f[j] = r
        return r

    for j in range(kmax + 1):
        get(j)
    return {j: np.trim_zeros(v, "b") if np.any(v) else v for j, v in f.items()}


def _dedupe_complex(z: np.ndarray, tol: float) -> np.ndarray:
    keep: list[complex] = []
    for x in z:
        if all(abs(x - y) > tol * max(1.0, abs(x)) for y in keep):
            keep.append(x)
    return np.array(keep, dtype=complex)


def division_values(lam: complex, order: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """f_order and its x-derivative at x, by running the recurrence on values.

    Much better conditioned than evaluating the expanded coefficients near roots.
    """
    x = np.asarray(x, dtype=complex)
    one = np.ones_like(x)
    zero = np.zeros_like(x)
    a2, a4 = -(1 + lam), lam
    b2, b4, b8 = 4 * a2, 2 * a4, -a4 * a4
    F = (x * (x * (x + a2) + a4), 3 * x * x + 2 * a2 * x + a4)
    F2x16 = _dmul(_dmul(F, F), (16 * one, zero))
    f = {
        0: (zero, zero),
        1: (one, zero),
        2: (one, zero),
        3: (b8 + x * (3 * b4 * x + b2 * x * x + 3 * x ** 3),
            6 * b4 * x + 3 * b2 * x * x + 12 * x ** 3),
        4: (np.polynomial.polynomial.polyval(x, [b4 * b8, b2 * b8, 10 * b8, 0, 5 * b4, b2, 2]),
            np.polynomial.polynomial.polyval(x, [b2 * b8, 20 * b8, 0, 20 * b4, 5 * b2, 12])),
    }

    def get(j):
        if j in f:
            return f[j]
        m = j // 2
        if j % 2:
            left = _dmul(get(m + 2), _dpow(get(m), 3))
            right = _dmul(get(m - 1), _dpow(get(m + 1), 3))
            if m % 2 == 0:
                left = _dmul(F2x16, left)
            else:
                right = _dmul(F2x16, right)
            r = (left[0] - right[0], left[1] - right[1])
        else:
            u = _dmul(get(m + 2), _dpow(get(m - 1), 2))
            w = _dmul(get(m - 2), _dpow(get(m + 1), 2))
            r = _dmul(get(m), (u[0] - w[0], u[1] - w[1]))
        f[j] = r
        return r

    return get(order)


def _dmul(p, q):
    return p[0] * q[0], p[0] * q[1] + p[1] * q[0]


def _dpow(p, e):
    r = p
    for _ in range(e - 1):
        r = _dmul(r, p)
    return r


def torsion_roots(curve: LegendreCurve, order: int) -> np.ndarray:
    """x-coordinates of points of order dividing `order`, excluding the 2-torsion.

    Seeds come from the expanded coefficients (cheap, inaccurate for large orders);
    Aberth then runs on the recurrence-evaluated log-derivative, and each root is
    certified by its Newton step.
    """
    f = _division_table(curve.lam, order)[order]
    if len(f) <= 1:
        return np.zeros(0, dtype=complex)
    # companion-matrix eigenvalues are only good to ~1e-6 at degree 70 but make good seeds
    start = np.roots(f[::-1])

    def ld(x):
        val, der = division_values(curve.lam, order, x)
        return der / val

    roots = newton_polish(ld, aberth(ld, start, max_iter=60, tol=1e-13))
    val, der = division_values(curve.lam, order, roots)
    step = np.abs(val / der) / np.maximum(1.0, np.abs(roots))
    if not np.all(np.isfinite(step)) or step.max() > 1e-10:
        raise RootFindingError(f"division polynomial root not certified (step {step.max():.3g})")
    gap = np.abs(roots[:, None] - roots[None, :])
    gap[np.diag_indices_from(gap)] = np.inf
    if len(roots) > 1 and gap.min() <= 1e-9 * max(1.0, np.abs(roots).max()):
        raise RootFindingError("division polynomial roots collided")
    return roots


def torsion_x_values(curve: LegendreCurve, spec: TorsionSpec) -> np.ndarray:
    if spec.primitive:
        order = 4 * spec.k
        roots = torsion_roots(curve, order)
        for d in range(3, order):
            if order % d == 0:
                sub = torsion_roots(curve, d)
                if len(sub):
                    gap = np.abs(roots[:, None] - sub[None, :]).min(axis=1)
                    roots = roots[gap > 1e-7 * np.maximum(1.0, np.abs(roots))]
    else:
        if spec.k < 2:
            raise ValueError("full torsion needs k >= 2")
        roots = torsion_roots(curve, 2 * spec.k)
    roots = _dedupe_complex(roots, DEDUPE_TOL)
    if len(roots) != spec.size:
        raise RootFindingError(f"expected {spec.size} torsion x-values, found {len(roots)}")
    return roots


def _lambda_of(h: np.ndarray) -> tuple[complex, MobiusMap]:
    n_map = mobius_from_triple(*(ProjectivePoint(*row) for row in h[:3]))
    lam_pt = n_map(ProjectivePoint(*h[3]))
    return lam_pt.affine(), n_map


def legendre_from_config(config: Configuration) -> tuple[LegendreCurve, MobiusMap]:
    """N sending (z1, z2, z3) to (0, 1, inf) in the given labeling, and lam = N(z4)."""
    if config.n != 4:
        raise ValueError(f"need 4 points, got {config.n}")
    lam, n_map = _lambda_of(config.h)
    return LegendreCurve(lam), n_map


def _conditioning(lam: complex) -> float:
    return min(chordal_distance(lam, s) for s in (0, 1, INF))


def best_legendre(config: Configuration) -> tuple[LegendreCurve, MobiusMap]:
    """The labeling whose lam is closest to the center of the D3 fundamental region.

    The torsion point set does not depend on the labeling, so this choice only
    affects conditioning.
    """
    if config.n != 4:
        raise ValueError(f"need 4 points, got {config.n}")
    curve, n_map = legendre_from_config(config)
    lam = curve.lam
    best = None
    for mat in D3_MATRICES:
        g = MobiusMap(mat)
        mu = g(ProjectivePoint.of(lam))
        if mu.is_infinity:
            continue
        score = max(abs(mu.affine()), abs(mu.affine() - 1))
        if best is None or score < best[0]:
            best = (score, g)
    g = best[1]
    new_lam = g(ProjectivePoint.of(lam)).affine()
    if _conditioning(new_lam) <= CONDITIONING_TOL:
        raise ConditioningError(f"cross-ratio {new_lam} within {CONDITIONING_TOL} of 0, 1 or inf")
    # g permutes {0, 1, inf}; g o N sends the same configuration onto {0, 1, inf, new_lam}
    return LegendreCurve(new_lam), g @ n_map


def section_four_torsion(config: Configuration, spec: TorsionSpec) -> SectionOutput:
    curve, n_map = best_legendre(config)
    xs = torsion_x_values(curve, spec)
    h = normalize_rows(np.stack([xs, np.ones_like(xs)], axis=1))
    new = n_map.inverse()(h)
    mode = "primitive" if spec.primitive else "full"
    return SectionOutput(new, "torsion", {"spec": spec.to_dict(), "mode": mode, "order": spec.order})


def spec_for_size(m: int) -> TorsionSpec:
    if m not in TORSION_TABLE:
        raise ValueError(f"no single torsion construction gives m={m}; sizes: {sorted(TORSION_TABLE)}")
    mode, k = TORSION_TABLE[m]
    return TorsionSpec(k, mode == "primitive")


# residue mod 24 -> base size of the torsion part
PLANNER_BASE = {0: 0, 6: 6, 16: 16, 22: 70}


def plan_four(m: int) -> tuple[int, int]:
    """(torsion base size, number of 24-point space-level layers) for m."""
    if m in TORSION_TABLE:
        return m, 0
    if m % 24 == 0:
        return 0, m // 24
    r = m % 24
    if m < 70 or r not in PLANNER_BASE:
        raise ValueError(f"m={m} is not covered: need m >= 70 with m mod 24 in {{0, 6, 16, 22}}"
                         " or m in {6, 16, 24, 30, 48, 70}")
    base = PLANNER_BASE[r]
    return base, (m - base) // 24


def section_four_planned(config: Configuration, m: int, **level_kwargs) -> SectionOutput:
    from .spacelevel import section_general

    if config.n != 4:
        raise ValueError(f"need 4 points, got {config.n}")
    base, levels = plan_four(m)
    parts = []
    params: dict = {"base": base, "levels": levels}
    if base:
        tor = section_four_torsion(config, spec_for_size(base))
        parts.append(tor.new_points)
        params["torsion"] = tor.parameters
    if levels:
        gen = section_general(config, levels, **level_kwargs)
        parts.append(gen.new_points)
        params["spacelevel"] = gen.parameters
    if not parts:
        return empty_output("planner", **params)
    return SectionOutput(np.vstack(parts), "planner", params)


def lift_point(curve: LegendreCurve, x: complex) -> tuple[complex, complex]:
    return x, complex(np.sqrt(curve.rhs(complex(x))))


def _add(curve: LegendreCurve, p, q):
    (x1, y1), (x2, y2) = p, q
    if p == q:
        slope = (3 * x1 * x1 + 2 * curve.a2 * x1 + curve.a4) / (2 * y1)
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - curve.a2 - x1 - x2
    y3 = slope * (x1 - x3) - y1
    return x3, y3


def torsion_order_residual(curve: LegendreCurve, x: complex, max_order: int,
                           detect: float = 1e-4) -> tuple[int | None, float]:
    """Numeric point-addition oracle: the order of a point above x and the closure residual.

    Adds P repeatedly; when jP is (numerically) -P the order is j+1 and the residual is
    the relative mismatch between jP and -P.  Returns (None, inf) if no order <= max_order.
    """
    p = lift_point(curve, x)
    if abs(p[1]) <= detect * max(1.0, abs(p[0])):
        return 2, abs(p[1]) / max(1.0, abs(p[0]))
    q = p
    for j in range(1, max_order):
        dx = abs(q[0] - p[0]) / (1 + abs(p[0]))
        dy_neg = abs(q[1] + p[1]) / (1 + abs(p[1]))
        if j > 1 and dx < detect and dy_neg < detect:
            return j + 1, dx + dy_neg
        if j > 1 and dx < detect:
            q = _add(curve, p, p)
        else:
            q = _add(curve, q, p)
    return None, math.inf


def doubled_x(curve: LegendreCurve, x):
    """x(2P) for P above x: (x^2 - lam)^2 / (4 x (x-1)(x-lam))."""
    return (x * x - curve.lam) ** 2 / (4 * curve.rhs(x))
