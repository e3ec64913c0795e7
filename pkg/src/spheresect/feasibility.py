"""
Which (n, m) admit a section of Conf_{n,m}(S^2) -> Conf_n(S^2), and how to build one.

Citation tags:
  GG   n = 3 iff m = 0, 2 mod 3; for n >= 4 only the residues
       0, (n-1)(n-2), -n(n-2), -(n-2) mod n(n-1)(n-2) can occur.
  A    sections exist whenever n(n-1)(n-2) divides m.
  B    n = 4: every m >= 70 with m = 0, 6, 16, 22 mod 24.
  C    n >= 6: no section unless n(n-1)(n-2) divides m.
"""

from __future__ import annotations

import dataclasses
import enum
from typing import Any

from .configuration import Configuration, SectionOutput, empty_output


class Status(str, enum.Enum):
    EXISTS = "ExistsConstructive"
    NOT_EXISTS = "NotExists"
    UNKNOWN = "Unknown"


@dataclasses.dataclass(frozen=True)
class Verdict:
    n: int
    m: int
    status: Status
    citation: str
    recipe: str | None = None
    params: dict[str, Any] = dataclasses.field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        d = {"n": self.n, "m": self.m, "status": self.status.value, "citation": self.citation}
        if self.recipe:
            d["recipe"] = {"construction": self.recipe, **self.params}
        if self.note:
            d["note"] = self.note
        return d


CITE = {
    "GG": "Goncalves-Guaschi residue theorem",
    "A": "Theorem A (m divisible by n(n-1)(n-2))",
    "B": "Theorem B (n = 4, m >= 70, m = 0, 6, 16, 22 mod 24)",
    "C": "Theorem C (n >= 6 requires n(n-1)(n-2) | m)",
    "CROSS": "cross-ratio fiber construction (n = 3)",
    "LEGENDRE": "Legendre torsion construction (n = 4)",
    "TRIVIAL": "m = 0: the empty section",
}

TORSION_SIZES = (6, 16, 24, 30, 48, 70)


def gg_residues(n: int) -> set[int]:
    """{0, (n-1)(n-2), -n(n-2), -(n-2)} mod n(n-1)(n-2)."""
    if n < 4:
        raise ValueError("the residue condition is stated for n >= 4")
    mod = n * (n - 1) * (n - 2)
    return {0, (n - 1) * (n - 2) % mod, -n * (n - 2) % mod, -(n - 2) % mod}


def decide(n: int, m: int) -> Verdict:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return Verdict(n, m, Status.EXISTS, CITE["TRIVIAL"], "empty")
    if n == 3:
        if m % 3 in (0, 2):
            return Verdict(n, m, Status.EXISTS, f"{CITE['GG']}; {CITE['CROSS']}", "cross_ratio")
        return Verdict(n, m, Status.NOT_EXISTS, CITE["GG"])

    mod = n * (n - 1) * (n - 2)
    if m % mod not in gg_residues(n):
        cite = CITE["GG"] if n < 6 else f"{CITE['C']}; {CITE['GG']}"
        note = ""
        if n == 4 and m == 4:
            note = "4 is not an allowed residue mod 24"
        return Verdict(n, m, Status.NOT_EXISTS, cite, note=note)
    if m % mod == 0:
        if n == 4 and m in TORSION_SIZES:
            return Verdict(n, m, Status.EXISTS, CITE["LEGENDRE"], "torsion")
        return Verdict(n, m, Status.EXISTS, CITE["A"], "spacelevel", {"levels": m // mod})
    if n == 4:
        if m in TORSION_SIZES:
            return Verdict(n, m, Status.EXISTS, CITE["LEGENDRE"], "torsion")
        if m >= 70:
            return Verdict(n, m, Status.EXISTS, CITE["B"], "planner")
        note = "m = 22 is unobstructed but not on the torsion list" if m == 22 else \
            "allowed residue below 70 not covered by a known construction"
        return Verdict(n, m, Status.UNKNOWN, CITE["GG"], note=note)
    if n == 5:
        return Verdict(n, m, Status.UNKNOWN, CITE["GG"], note="n = 5 is not settled")
    return Verdict(n, m, Status.NOT_EXISTS, CITE["C"])


class Infeasible(ValueError):
    def __init__(self, verdict: Verdict):
        super().__init__(f"no construction for n={verdict.n}, m={verdict.m}: "
                         f"{verdict.status.value} ({verdict.citation})")
        self.verdict = verdict


def construct(config: Configuration, m: int, method: str | None = None, **kwargs) -> SectionOutput:
    """Build an m-point section output on `config` following the verdict's recipe.

    `method` overrides the recipe (cross_ratio, torsion, spacelevel, planner); the
    override must still be applicable to (n, m).
    """
    from .elliptic import section_four_planned, section_four_torsion, spec_for_size
    from .spacelevel import section_general
    from .three_points import section_three

    n = config.n
    verdict = decide(n, m)
    if verdict.status is not Status.EXISTS:
        raise Infeasible(verdict)
    recipe = method or verdict.recipe
    level_kw = {k: v for k, v in kwargs.items() if k in ("K", "theta_step", "tol_sep")}
    if recipe == "empty":
        return empty_output()
    if recipe == "cross_ratio":
        return section_three(config, m, tol_sep=kwargs.get("tol_sep"))
    if recipe == "torsion":
        return section_four_torsion(config, spec_for_size(m))
    if recipe == "planner":
        return section_four_planned(config, m, **level_kw)
    if recipe == "spacelevel":
        mod = n * (n - 1) * (n - 2)
        if m % mod:
            raise ValueError(f"spacelevel needs m divisible by {mod}")
        if n == 3:
            return section_three(config, m, tol_sep=kwargs.get("tol_sep"))
        return section_general(config, m // mod, **level_kw)
    raise ValueError(f"unknown method {recipe!r}")


def section_fn(n: int, m: int, method: str | None = None, **kwargs):
    """A callable Configuration -> SectionOutput for the tracker."""
    verdict = decide(n, m)
    if verdict.status is not Status.EXISTS:
        raise Infeasible(verdict)

    def fn(config: Configuration) -> SectionOutput:
        return construct(config, m, method, **kwargs)
    fn.__name__ = f"section_n{n}_m{m}"
    return fn
