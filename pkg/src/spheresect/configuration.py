"""Configurations of old points and the section outputs built on them."""

from __future__ import annotations

import dataclasses
import math
from typing import Any, Iterable

import numpy as np

from .config import TOL
from .mobius import (
    MobiusMap,
    ProjectivePoint,
    as_array,
    chordal_matrix,
    from_array,
    min_separation,
    normalize_rows,
)


class SeparationError(ValueError):
    """Points that should be distinct came within the separation tolerance."""


@dataclasses.dataclass(frozen=True)
class Configuration:
    """An unordered set of distinct points on CP^1 (the stored order is just a labeling)."""
    h: np.ndarray = dataclasses.field(compare=False, repr=False)
    tol_sep: float = dataclasses.field(default=-1.0, compare=False)

    def __post_init__(self):
        h = normalize_rows(np.asarray(self.h, dtype=complex).reshape(-1, 2))
        object.__setattr__(self, "h", h)
        tol = TOL.sep if self.tol_sep < 0 else self.tol_sep
        object.__setattr__(self, "tol_sep", tol)
        if self.separation <= tol:
            raise SeparationError(f"configuration points not distinct (separation {self.separation:.3g})")

    @classmethod
    def of(cls, points: Iterable, tol_sep: float | None = None) -> Configuration:
        return cls(as_array(points), -1.0 if tol_sep is None else tol_sep)

    @classmethod
    def roots_of_unity(cls, n: int) -> Configuration:
        return cls.of([np.exp(2j * np.pi * j / n) for j in range(n)])

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, min_sep: float = 1e-2) -> Configuration:
        """Uniform points on the sphere, resampled until the separation exceeds min_sep."""
        while True:
            v = rng.normal(size=(n, 3))
            v /= np.linalg.norm(v, axis=1, keepdims=True)
            h = from_sphere(v)
            if min_separation(h) > min_sep:
                return cls(h)

    @property
    def n(self) -> int:
        return len(self.h)

    @property
    def points(self) -> list[ProjectivePoint]:
        return from_array(self.h)

    @property
    def separation(self) -> float:
        return min_separation(self.h)

    def transformed(self, m: MobiusMap) -> Configuration:
        return Configuration(m(self.h), self.tol_sep)

    def relabeled(self, perm) -> Configuration:
        return Configuration(self.h[list(perm)], self.tol_sep)


def from_sphere(v: np.ndarray) -> np.ndarray:
    """Homogeneous rows for unit vectors in R^3 (stereographic projection from the north pole)."""
    x, y, z = v[:, 0], v[:, 1], v[:, 2]
    # [x + iy : 1 - z] == [1 + z : x - iy]; pick the better-conditioned representative
    top = np.where(z <= 0, x + 1j * y, 1 + z)
    bot = np.where(z <= 0, 1 - z, x - 1j * y)
    return normalize_rows(np.stack([top, bot], axis=1))


@dataclasses.dataclass
class SectionOutput:
    new_points: np.ndarray = dataclasses.field(repr=False)
    method: str
    parameters: dict[str, Any] = dataclasses.field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.new_points)

    @property
    def points(self) -> list[ProjectivePoint]:
        return from_array(self.new_points)

    def transformed(self, mob: MobiusMap) -> SectionOutput:
        return SectionOutput(mob(self.new_points) if self.m else self.new_points,
                             self.method, dict(self.parameters))


def empty_output(method: str = "empty", **params) -> SectionOutput:
    return SectionOutput(np.zeros((0, 2), dtype=complex), method, params)


def verify_output(config: Configuration, out: SectionOutput, m: int | None = None,
                  tol_sep: float | None = None) -> dict:
    """Counts and separations; `ok` is true iff every SectionOutput invariant holds."""
    tol = config.tol_sep if tol_sep is None else tol_sep
    new_sep = min_separation(out.new_points) if out.m else math.inf
    to_old = float(chordal_matrix(out.new_points, config.h).min()) if out.m else math.inf
    report = {
        "m": out.m,
        "expected_m": out.m if m is None else m,
        "min_separation_new": new_sep,
        "min_distance_to_old": to_old,
    }
    report["ok"] = (report["m"] == report["expected_m"] and new_sep > tol and to_old > tol)
    return report


def set_mismatch(h1: np.ndarray, h2: np.ndarray) -> float:
    """Max over points of the chordal distance to the nearest point of the other set."""
    if len(h1) != len(h2):
        return math.inf
    if len(h1) == 0:
        return 0.0
    d = chordal_matrix(h1, h2)
    return float(max(d.min(axis=0).max(), d.min(axis=1).max()))
