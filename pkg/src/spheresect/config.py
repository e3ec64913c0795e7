"""Numerical tolerances shared by the geometric modules."""

import dataclasses


@dataclasses.dataclass
class Tolerances:
    sep: float = 1e-8    # distinctness of points (chordal)
    eval: float = 1e-10  # algebraic identities at unit scale


TOL = Tolerances()
