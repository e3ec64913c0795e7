"""
Conformally equivariant sections over Conf_3: unions of cross-ratio fibers.

m = 2a + 3b + 6c with a, b in {0, 1}; the fiber at zeta = e^{i pi/3} has 2
points, the one at -1 has 3 and a generic orbit has 6.
"""

from __future__ import annotations

import cmath

import numpy as np

from .config import TOL
from .configuration import Configuration, SectionOutput, empty_output
from .mobius import chordal_matrix, cross_fiber_array, d3_orbit_array

ZETA = cmath.exp(1j * cmath.pi / 3)


def decompose(m: int) -> tuple[int, int, int]:
    """The unique (a, b, c) with m = 2a + 3b + 6c and a, b in {0, 1}."""
    if m < 0 or m % 3 == 1:
        raise ValueError(f"m={m} is not 0 or 2 mod 3")
    a = 1 if m % 3 == 2 else 0
    rest = m - 2 * a
    b = 1 if rest % 6 == 3 else 0
    c = (rest - 3 * b) // 6
    return a, b, c


def generic_lambdas(count: int, start: int = 3) -> list[complex]:
    """Integers 3, 4, 5, ... whose D3 orbits have size 6 and are pairwise disjoint."""
    chosen: list[complex] = []
    orbits: list[np.ndarray] = [d3_orbit_array(ZETA), d3_orbit_array(-1)]
    cand = start
    while len(chosen) < count:
        orb = d3_orbit_array(cand)
        clash = any(chordal_matrix(orb, o).min() < 1e-6 for o in orbits)
        if len(orb) == 6 and not clash:
            chosen.append(complex(cand))
            orbits.append(orb)
        cand += 1
    return chosen


def section_lambdas(m: int) -> list[complex]:
    a, b, c = decompose(m)
    lams: list[complex] = []
    if a:
        lams.append(ZETA)
    if b:
        lams.append(-1 + 0j)
    return lams + generic_lambdas(c)


def section_three(config: Configuration, m: int, tol_sep: float | None = None) -> SectionOutput:
    if config.n != 3:
        raise ValueError(f"section_three needs 3 points, got {config.n}")
    lams = section_lambdas(m)
    if m == 0:
        return empty_output("cross_ratio", lambdas=[])
    tol = TOL.sep if tol_sep is None else tol_sep
    pieces = [cross_fiber_array(config.h, lam, tol) for lam in lams]
    new = np.vstack(pieces)
    if len(new) != m:
        raise RuntimeError(f"fiber sizes add up to {len(new)}, expected {m}")
    return SectionOutput(new, "cross_ratio",
                         {"lambdas": [_fmt(lam) for lam in lams], "decomposition": decompose(m)})


def _fmt(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}
