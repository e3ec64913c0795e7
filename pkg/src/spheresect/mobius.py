"""Riemann-sphere arithmetic in homogeneous coordinates: points, Mobius maps, cross-ratios."""

from __future__ import annotations

import dataclasses
import math
from typing import Iterable, Sequence

import numpy as np

from .config import TOL


@dataclasses.dataclass(frozen=True)
class ProjectivePoint:
    """[a : b] on CP^1, stored with the larger-modulus coordinate scaled to 1."""
    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        if a == 0 and b == 0:
            raise ValueError("(0, 0) is not a point of CP^1")
        s = a if abs(a) >= abs(b) else b
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "b", b / s)

    @classmethod
    def of(cls, z) -> ProjectivePoint:
        """From a complex number, math.inf / "inf", or an existing point."""
        if isinstance(z, ProjectivePoint):
            return z
        if isinstance(z, str):
            if z.strip().lower() in ("inf", "infinity", "oo"):
                return INF
            z = complex(z.replace(" ", ""))
        if isinstance(z, float) and math.isinf(z):
            return INF
        return cls(complex(z), 1.0)

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    def affine(self) -> complex:
        """Affine coordinate a/b (complex inf for the point at infinity)."""
        if self.b == 0:
            return complex(math.inf, 0)
        return self.a / self.b

    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)

    def __repr__(self) -> str:
        return "PP(inf)" if self.is_infinity else f"PP({self.affine():.6g})"


INF = ProjectivePoint(1.0, 0.0)


def as_array(points: Iterable) -> np.ndarray:
    """Homogeneous (N, 2) complex array from points, complex numbers or 'inf'."""
    rows = [ProjectivePoint.of(p).vector() for p in points]
    if not rows:
        return np.zeros((0, 2), dtype=complex)
    return normalize_rows(np.array(rows))


def normalize_rows(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    norms = np.linalg.norm(h, axis=-1, keepdims=True)
    return h / norms


def from_array(h: np.ndarray) -> list[ProjectivePoint]:
    return [ProjectivePoint(complex(a), complex(b)) for a, b in np.asarray(h)]


def affine_of(h: np.ndarray) -> np.ndarray:
    """Affine coordinates of homogeneous rows; inf where the second entry vanishes."""
    h = np.asarray(h)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = h[..., 0] / h[..., 1]
    return np.where(h[..., 1] == 0, complex(np.inf, 0), z)


def chordal_distance(p, q) -> float:
    """|ad - bc| / (|(a,b)| |(c,d)|): equals |p-q| / sqrt((1+|p|^2)(1+|q|^2)); in [0, 1]."""
    u = ProjectivePoint.of(p).vector()
    v = ProjectivePoint.of(q).vector()
    return float(abs(u[0] * v[1] - u[1] * v[0]) / (np.linalg.norm(u) * np.linalg.norm(v)))


def chordal_matrix(h1: np.ndarray, h2: np.ndarray) -> np.ndarray:
    """Pairwise chordal distances between rows of two homogeneous arrays."""
    h1 = normalize_rows(h1)
    h2 = normalize_rows(h2)
    det = np.outer(h1[:, 0], h2[:, 1]) - np.outer(h1[:, 1], h2[:, 0])
    return np.abs(det)


def min_separation(h: np.ndarray) -> float:
    if len(h) < 2:
        return math.inf
    d = chordal_matrix(h, h)
    d[np.diag_indices_from(d)] = np.inf
    return float(d.min())


@dataclasses.dataclass(frozen=True)
class MobiusMap:
    """z -> (alpha z + beta) / (gamma z + delta), scaled to unit determinant."""
    matrix: np.ndarray = dataclasses.field(compare=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex).reshape(2, 2)
        det = np.linalg.det(m)
        if abs(det) < 1e-300:
            raise ValueError("singular Mobius matrix")
        m = m / np.sqrt(det)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> MobiusMap:
        return cls(np.eye(2))

    def __call__(self, p):
        """Apply to a ProjectivePoint (returning one) or to a homogeneous array of rows."""
        if isinstance(p, np.ndarray):
            return normalize_rows(p @ self.matrix.T)
        return ProjectivePoint(*(self.matrix @ ProjectivePoint.of(p).vector()))

    def compose(self, other: MobiusMap) -> MobiusMap:
        """self o other."""
        return MobiusMap(self.matrix @ other.matrix)

    __matmul__ = compose

    def inverse(self) -> MobiusMap:
        (a, b), (c, d) = self.matrix
        return MobiusMap(np.array([[d, -b], [-c, a]]))

    def almost_equal(self, other: MobiusMap, tol: float = 1e-9) -> bool:
        return min(np.abs(self.matrix - other.matrix).max(),
                   np.abs(self.matrix + other.matrix).max()) < tol


def _det(u: np.ndarray, v: np.ndarray) -> complex:
    return u[0] * v[1] - u[1] * v[0]


def mobius_from_triple(z1, z2, z3, tol: float | None = None) -> MobiusMap:
    """The map sending (z1, z2, z3) to (0, 1, inf)."""
    tol = TOL.sep if tol is None else tol
    p = [ProjectivePoint.of(z) for z in (z1, z2, z3)]
    for i in range(3):
        for j in range(i + 1, 3):
            if chordal_distance(p[i], p[j]) <= tol:
                raise ValueError(f"coincident points {p[i]} and {p[j]}")
    u1, u2, u3 = (q.vector() for q in p)
    # linear forms vanishing at z1 and z3; the ratio is normalized to 1 at z2
    l1 = np.array([u1[1], -u1[0]])
    l3 = np.array([u3[1], -u3[0]])
    num = l1 * (l3 @ u2)
    den = l3 * (l1 @ u2)
    return MobiusMap(np.vstack([num, den]))


def mobius_from_points(src: Sequence, dst: Sequence) -> MobiusMap:
    """The map sending the three points src to the three points dst."""
    return mobius_from_triple(*dst).inverse() @ mobius_from_triple(*src)


def cross_ratio(z1, z2, z3, z4) -> ProjectivePoint:
    """[z1, z2; z3, z4] = M_{z1,z2,z3}(z4) = (z2-z3)(z4-z1) / ((z2-z1)(z4-z3))."""
    return mobius_from_triple(z1, z2, z3)(ProjectivePoint.of(z4))


# the six substitutions of the D3 stabilizer of {0, 1, inf}, as matrices on (lambda, 1)
D3_MATRICES = (
    np.array([[1, 0], [0, 1]], dtype=complex),     # lambda
    np.array([[0, 1], [1, 0]], dtype=complex),     # 1/lambda
    np.array([[-1, 1], [0, 1]], dtype=complex),    # 1 - lambda
    np.array([[0, 1], [-1, 1]], dtype=complex),    # 1/(1 - lambda)
    np.array([[1, -1], [1, 0]], dtype=complex),    # (lambda - 1)/lambda
    np.array([[1, 0], [1, -1]], dtype=complex),    # lambda/(lambda - 1)
)


def dedupe(h: np.ndarray, tol: float) -> np.ndarray:
    keep: list[int] = []
    h = normalize_rows(h)
    for j in range(len(h)):
        if all(abs(_det(h[j], h[i])) > tol for i in keep):
            keep.append(j)
    return h[keep]


def d3_orbit_array(lam, tol: float | None = None) -> np.ndarray:
    tol = TOL.eval if tol is None else tol
    v = ProjectivePoint.of(lam).vector()
    return dedupe(np.array([m @ v for m in D3_MATRICES]), tol)


def d3_orbit(lam, tol: float | None = None) -> list[ProjectivePoint]:
    """{lam, 1/lam, 1-lam, 1/(1-lam), (lam-1)/lam, lam/(lam-1)} without repeats."""
    return from_array(d3_orbit_array(lam, tol))


def _near_special(lam: ProjectivePoint, tol: float) -> bool:
    return any(chordal_distance(lam, s) <= tol for s in (0, 1, INF))


def cross_fiber_array(triple: np.ndarray, lam, tol: float | None = None) -> np.ndarray:
    """Homogeneous rows of all z4 whose unordered cross-ratio with the triple contains lam."""
    tol_sep = TOL.sep if tol is None else tol
    lam = ProjectivePoint.of(lam)
    if _near_special(lam, tol_sep):
        raise ValueError(f"lambda={lam} is 0, 1 or inf; the fiber would meet the configuration")
    m_inv = mobius_from_triple(*from_array(triple), tol=tol_sep).inverse()
    return m_inv(d3_orbit_array(lam))


def cross_fiber(z1, z2, z3, lam, tol: float | None = None) -> list[ProjectivePoint]:
    return from_array(cross_fiber_array(as_array([z1, z2, z3]), lam, tol))


def random_mobius(rng: np.random.Generator, scale: float = 1.0) -> MobiusMap:
    """A Mobius map with standard complex Gaussian entries (scale controls spread)."""
    m = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) * scale
    m[0, 0] += 1
    m[1, 1] += 1
    return MobiusMap(m)


def sphere_coords(h: np.ndarray) -> np.ndarray:
    """Unit vectors in R^3 for homogeneous rows (inverse stereographic projection)."""
    h = normalize_rows(h)
    a, b = h[:, 0], h[:, 1]
    x = 2 * (a * b.conj()).real
    y = 2 * (a * b.conj()).imag
    z = np.abs(a) ** 2 - np.abs(b) ** 2
    return np.stack([x, y, z], axis=1)


def rotation_to_infinity(target: np.ndarray) -> MobiusMap:
    """A sphere rotation (unitary matrix) sending the point `target` (homogeneous) to inf."""
    a, b = normalize_rows(np.asarray(target)[None, :])[0]
    # unitary U with U (a, b) = (1, 0) up to phase
    u = np.array([[a.conjugate(), b.conjugate()], [-b, a]])
    return MobiusMap(u)


def random_rotation(rng: np.random.Generator) -> MobiusMap:
    """A uniformly random rotation of the sphere, as an SU(2) matrix."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    a, b = complex(q[0], q[1]), complex(q[2], q[3])
    return MobiusMap(np.array([[a, b], [-b.conjugate(), a.conjugate()]]))
