"""
Exact checks of the torsion-element identities in the Artin group B_n.

  conjugation:  a0^i s1 a0^-i = s_{1+i}   (1 <= i <= n-2)
                a1^i s1 a1^-i = s_{1+i}   (1 <= i <= n-3)
  omega:        a0^n = Delta^2,  a1^(n-1) = a0^n,
                (s1 .. s_{n-1}) a2^(n-2) (s_{n-1} .. s1) = a0^n

Delta^2 is spelled from the positive half-twist word, independently of a0.
"""

from __future__ import annotations

import dataclasses
import time

from .braid import BraidWord, half_twist, torsion_element
from .garside import equal_in_artin


@dataclasses.dataclass
class IdentityCheck:
    name: str
    n: int
    holds: bool
    lhs_length: int
    rhs_length: int

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _check(name, n, lhs: BraidWord, rhs: BraidWord) -> IdentityCheck:
    return IdentityCheck(name, n, equal_in_artin(lhs, rhs), len(lhs.letters), len(rhs.letters))


def conjugation_checks(n: int, kind: int = 0) -> list[IdentityCheck]:
    if kind not in (0, 1):
        raise ValueError("conjugation identities exist for alpha_0 and alpha_1 only")
    a = torsion_element(kind, n)
    s1 = BraidWord.generator(n, 1)
    top = n - 2 if kind == 0 else n - 3
    out = []
    for i in range(1, top + 1):
        lhs = (a ** i) * s1 * (a ** -i)
        out.append(_check(f"a{kind}^{i} s1 a{kind}^-{i} = s{1 + i}", n, lhs, BraidWord.generator(n, 1 + i)))
    return out


def omega_checks(n: int) -> list[IdentityCheck]:
    a0, a1, a2 = (torsion_element(k, n) for k in range(3))
    omega = a0 ** n
    up = BraidWord.from_ints(n, list(range(1, n)))
    down = BraidWord.from_ints(n, list(range(n - 1, 0, -1)))
    return [
        _check("a0^n = Delta^2", n, omega, half_twist(n) ** 2),
        _check("a1^(n-1) = a0^n", n, a1 ** (n - 1), omega),
        _check("(s1..s_{n-1}) a2^(n-2) (s_{n-1}..s1) = a0^n", n, up * (a2 ** (n - 2)) * down, omega),
    ]


def identity_suite(n: int) -> dict:
    t0 = time.perf_counter()
    checks = conjugation_checks(n, 0) + conjugation_checks(n, 1) + omega_checks(n)
    return {
        "n": n,
        "checks": [c.to_dict() for c in checks],
        "all_hold": all(c.holds for c in checks),
        "seconds": time.perf_counter() - t0,
    }
