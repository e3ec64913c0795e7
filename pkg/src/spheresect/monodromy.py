"""
Continuation of section outputs along paths of configurations.

A path is a function [0, 1] -> ordered tuple of n points (homogeneous rows).
Consecutive outputs are matched by nearest neighbour; a step is accepted only
when 2 * (largest match distance) < (smallest distance between points of
either set), which makes the matching the unique continuous one.  Otherwise
the step is halved, down to a floor.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable

import numpy as np

from .braid import Permutation
from .config import TOL
from .configuration import Configuration, SectionOutput
from .mobius import affine_of, chordal_matrix, min_separation, normalize_rows

SectionFn = Callable[[Configuration], SectionOutput]

STEP_FLOOR = 1e-6


class TrackingError(RuntimeError):
    pass


@dataclasses.dataclass
class ConfigPath:
    n: int
    sampler: Callable[[float], np.ndarray]
    closed: bool = False
    label: str = ""

    def __call__(self, t: float) -> np.ndarray:
        return normalize_rows(self.sampler(min(1.0, max(0.0, t))))

    def config(self, t: float) -> Configuration:
        return Configuration(self(t))

    def reversed(self) -> ConfigPath:
        return ConfigPath(self.n, lambda t, f=self.sampler: f(1.0 - t), self.closed, f"rev({self.label})")

    def then(self, other: ConfigPath) -> ConfigPath:
        """This path followed by `other`, relabeled so the joint is continuous as a tuple."""
        if other.n != self.n:
            raise ValueError("paths have different point counts")
        end = self(1.0)
        order = _match_order(end, other(0.0))
        first, second = self.sampler, other.sampler

        def sampler(t):
            if t <= 0.5:
                return first(2 * t)
            return second(2 * t - 1)[order]
        return ConfigPath(self.n, sampler, other.closed and self.closed,
                          f"{self.label}*{other.label}")

    def old_point_permutation(self) -> Permutation:
        """For a closed path: the point starting at position j ends at position perm[j]."""
        return Permutation(tuple(int(x) for x in _match_order(self(1.0), self(0.0))))


def _match_order(target: np.ndarray, source: np.ndarray) -> np.ndarray:
    """order[j] = index in `source` of the point nearest target[j] (a bijection)."""
    d = chordal_matrix(target, source)
    order = d.argmin(axis=1)
    if len(set(order.tolist())) != len(order):
        raise TrackingError("endpoint sets do not match up")
    return order


def constant_path(base: Configuration) -> ConfigPath:
    h = base.h.copy()
    return ConfigPath(base.n, lambda t: h, True, "const")


def _affine_base(base: Configuration) -> np.ndarray:
    z = affine_of(base.h)
    if not np.all(np.isfinite(z)):
        raise ValueError("loop basepoints must be finite points")
    return z


def generator_loop(n: int, i: int, base: Configuration | None = None) -> ConfigPath:
    """Half twist exchanging points i and i+1 (1-indexed) counterclockwise about their midpoint."""
    base = Configuration.roots_of_unity(n) if base is None else base
    if base.n != n:
        raise ValueError("basepoint has the wrong number of points")
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range")
    z = _affine_base(base)
    mid = (z[i - 1] + z[i]) / 2
    radius = abs(z[i - 1] - mid)
    others = np.delete(z, [i - 1, i])
    if len(others) and np.abs(others - mid).min() <= radius * (1 + 1e-6):
        raise ValueError("another point lies inside the half-twist disk")

    def sampler(t):
        w = z.copy()
        rot = np.exp(1j * np.pi * t)
        w[i - 1] = mid + (z[i - 1] - mid) * rot
        w[i] = mid + (z[i] - mid) * rot
        return np.stack([w, np.ones_like(w)], axis=1)
    return ConfigPath(n, sampler, True, f"s{i}")


def word_loop(n: int, letters: list[int], base: Configuration | None = None) -> ConfigPath:
    """Concatenation of generator loops (negative entries run the loop backwards)."""
    if not letters:
        return constant_path(Configuration.roots_of_unity(n) if base is None else base)
    pieces = []
    for x in letters:
        p = generator_loop(n, abs(x), base)
        pieces.append(p if x > 0 else p.reversed())
    return _balanced_concat(pieces)


def _balanced_concat(pieces: list[ConfigPath]) -> ConfigPath:
    """Concatenate with equal time per piece."""
    k = len(pieces)
    n = pieces[0].n
    orders = []
    current = np.arange(n)
    end = pieces[0](1.0)
    orders.append(current)
    for p in pieces[1:]:
        order = _match_order(end, p(0.0))
        orders.append(order)
        end = p(1.0)[order]

    def sampler(t):
        j = min(k - 1, int(t * k))
        local = t * k - j
        return pieces[j].sampler(local)[orders[j]]
    closed = all(p.closed for p in pieces)
    return ConfigPath(n, sampler, closed, "*".join(p.label for p in pieces))


def samples_path(points: list[list]) -> ConfigPath:
    """Piecewise-linear path (in affine coordinates) through sampled configurations."""
    arr = np.array([[complex(x) for x in row] for row in points])
    if arr.ndim != 2 or len(arr) < 2:
        raise ValueError("need at least two sample configurations of equal size")
    m = len(arr) - 1
    closed = bool(np.allclose(np.sort_complex(arr[0]), np.sort_complex(arr[-1])))

    def sampler(t):
        j = min(m - 1, int(t * m))
        s = t * m - j
        w = (1 - s) * arr[j] + s * arr[j + 1]
        return np.stack([w, np.ones_like(w)], axis=1)
    return ConfigPath(arr.shape[1], sampler, closed, "samples")


@dataclasses.dataclass
class TrackingResult:
    permutation: Permutation | None   # closed paths: start index j -> final index
    correspondence: np.ndarray        # start index j -> index in the final output
    max_gap: float                    # largest single-step match distance
    min_point_gap: float              # smallest inter-point distance seen
    closure_mismatch: float           # closed paths: final set vs initial set
    steps: int
    t_values: list[float] = dataclasses.field(repr=False, default_factory=list)
    labels: list[np.ndarray] = dataclasses.field(repr=False, default_factory=list)
    initial: np.ndarray | None = dataclasses.field(repr=False, default=None)
    final: np.ndarray | None = dataclasses.field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "permutation": None if self.permutation is None else self.permutation.one_indexed(),
            "max_gap": self.max_gap,
            "min_point_gap": self.min_point_gap,
            "closure_mismatch": self.closure_mismatch,
            "steps": self.steps,
        }


def _certified_match(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float, float] | None:
    """Nearest-neighbour bijection a -> b if it passes the no-swap certificate."""
    if len(a) != len(b):
        raise TrackingError(f"section output changed size ({len(a)} -> {len(b)})")
    if len(a) == 0:
        return np.zeros(0, dtype=int), 0.0, math.inf
    d = chordal_matrix(a, b)
    nn = d.argmin(axis=1)
    dist = float(d[np.arange(len(a)), nn].max())
    sep = min(min_separation(a), min_separation(b))
    if len(set(nn.tolist())) != len(nn) or not 2 * dist < sep:
        return None
    return nn, dist, sep


def track(section: SectionFn, path: ConfigPath, steps: int = 32, adaptive: bool = True,
          floor: float = STEP_FLOOR, tol_sep: float | None = None) -> TrackingResult:
    """Follow the section's new points along the path.

    With adaptive=False exactly `steps` equal steps are taken and a failed certificate
    is an error; this is what the refinement tests use.
    """
    tol = TOL.sep if tol_sep is None else tol_sep
    start = section(path.config(0.0)).new_points
    cur = start
    pos = np.arange(len(start))  # pos[j] = index in `cur` of the point that started at j
    t = 0.0
    dt = 1.0 / steps
    max_gap = 0.0
    min_gap = min_separation(start)
    t_values = [0.0]
    labels = [pos.copy()]
    while t < 1.0:
        t1 = min(1.0, t + dt)
        try:
            nxt = section(path.config(t1)).new_points
        except Exception as exc:  # separation or root failures along the way
            raise TrackingError(f"section failed at t={t1:.6g}: {exc}") from exc
        got = _certified_match(cur, nxt)
        if got is None:
            if not adaptive:
                raise TrackingError(f"matching not certified at t={t1:.6g} with fixed steps")
            dt /= 2
            if dt < floor:
                raise TrackingError(f"step floor {floor:g} reached at t={t:.6g} without certification")
            continue
        nn, dist, sep = got
        pos = nn[pos]
        cur = nxt
        t = t1
        max_gap = max(max_gap, dist)
        min_gap = min(min_gap, sep)
        t_values.append(t)
        labels.append(pos.copy())
        if adaptive and 4 * dist < sep:
            dt = min(dt * 1.5, 1.0 / steps * 4)
    perm = None
    mismatch = math.nan
    if path.closed:
        d = chordal_matrix(cur, start) if len(start) else np.zeros((0, 0))
        if len(start):
            back = d.argmin(axis=1)
            mismatch = float(d[np.arange(len(cur)), back].max())
            if len(set(back.tolist())) != len(back) or mismatch > tol:
                raise TrackingError(f"closure failed: final set differs from initial by {mismatch:.3g}")
            perm = Permutation(tuple(int(x) for x in back[pos]))
        else:
            mismatch = 0.0
            perm = Permutation(())
    return TrackingResult(perm, pos, max_gap, min_gap, mismatch, len(t_values) - 1,
                          t_values, labels, start, cur)


def induced_permutation_table(section: SectionFn, n: int, base: Configuration | None = None,
                              **track_kwargs) -> list[Permutation]:
    """Permutation of the new points induced by each generator loop s_1 .. s_{n-1}."""
    return [track(section, generator_loop(n, i, base), **track_kwargs).permutation
            for i in range(1, n)]


def braid_relation_check(section: SectionFn, n: int, i: int, base: Configuration | None = None,
                         **track_kwargs) -> dict:
    """Track s_i s_{i+1} s_i and s_{i+1} s_i s_{i+1} and compare the induced permutations."""
    lhs = track(section, word_loop(n, [i, i + 1, i], base), **track_kwargs)
    rhs = track(section, word_loop(n, [i + 1, i, i + 1], base), **track_kwargs)
    return {"i": i, "lhs": lhs.permutation, "rhs": rhs.permutation,
            "consistent": lhs.permutation == rhs.permutation}


def commutation_check(section: SectionFn, n: int, i: int, j: int, base: Configuration | None = None,
                      **track_kwargs) -> dict:
    lhs = track(section, word_loop(n, [i, j], base), **track_kwargs)
    rhs = track(section, word_loop(n, [j, i], base), **track_kwargs)
    return {"i": i, "j": j, "lhs": lhs.permutation, "rhs": rhs.permutation,
            "consistent": lhs.permutation == rhs.permutation}
