"""
Left-greedy Garside normal form in B_n.

Simple elements (positive permutation braids) are stored as tuples `a` with
a[p] = end position of the strand that starts at position p (0-indexed).
A braid is Delta^p A_1 ... A_r with every A_j a proper simple element and
every pair (A_j, A_{j+1}) left-weighted.

Negative letters are removed with s_g^{-1} = Delta^{-1} tau(X_g), where
X_g = s_g^{-1} Delta and tau is conjugation by Delta; all Delta^{-1} are then
pushed to the front.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .braid import BraidWord

Simple = tuple[int, ...]


@dataclasses.dataclass(frozen=True)
class GarsideNormalForm:
    strands: int
    delta_power: int
    factors: tuple[Simple, ...]

    def to_dict(self) -> dict:
        return {
            "strands": self.strands,
            "delta_power": self.delta_power,
            "factors": [[x + 1 for x in f] for f in self.factors],
        }

    @classmethod
    def from_dict(cls, d: dict) -> GarsideNormalForm:
        return cls(int(d["strands"]), int(d["delta_power"]),
                   tuple(tuple(int(x) - 1 for x in f) for f in d["factors"]))

    def to_word(self) -> BraidWord:
        n = self.strands
        delta = simple_to_ints(delta_simple(n))
        ints: list[int] = []
        if self.delta_power >= 0:
            ints.extend(delta * self.delta_power)
        else:
            inv = [-x for x in reversed(delta)]
            ints.extend(inv * (-self.delta_power))
        for f in self.factors:
            ints.extend(simple_to_ints(f))
        return BraidWord.from_ints(n, ints)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)


def delta_simple(n: int) -> Simple:
    return tuple(range(n - 1, -1, -1))


def identity_simple(n: int) -> Simple:
    return tuple(range(n))


def _inverse(a: Simple) -> list[int]:
    inv = [0] * len(a)
    for p, q in enumerate(a):
        inv[q] = p
    return inv


def left_descents(a: Simple) -> list[int]:
    """Generators g (0-indexed) with s_g a left divisor of a: strands g, g+1 cross."""
    return [g for g in range(len(a) - 1) if a[g] > a[g + 1]]


def right_descents(a: Simple) -> list[int]:
    """Generators g with s_g a right divisor of a: the strands ending at g, g+1 crossed."""
    inv = _inverse(a)
    return [g for g in range(len(a) - 1) if inv[g] > inv[g + 1]]


def times_generator(a: Simple, g: int) -> Simple:
    """a * s_g (caller guarantees the result is simple when it matters)."""
    return tuple(g + 1 if q == g else g if q == g + 1 else q for q in a)


def generator_inv_times(a: Simple, g: int) -> Simple:
    """s_g^{-1} * a, valid when s_g is a left divisor of a."""
    b = list(a)
    b[g], b[g + 1] = b[g + 1], b[g]
    return tuple(b)


def tau(a: Simple) -> Simple:
    n = len(a)
    return tuple(n - 1 - a[n - 1 - p] for p in range(n))


def complement_of_generator(n: int, g: int) -> Simple:
    """X_g with s_g X_g = Delta."""
    x = []
    for q in range(n):
        src = g + 1 if q == g else g if q == g + 1 else q
        x.append(n - 1 - src)
    return tuple(x)


def generator_simple(n: int, g: int) -> Simple:
    a = list(range(n))
    a[g], a[g + 1] = g + 1, g
    return tuple(a)


def simple_to_ints(a: Simple) -> list[int]:
    """A positive word (1-indexed signed ints) spelling the permutation braid a."""
    out = []
    a = tuple(a)
    while True:
        ld = left_descents(a)
        if not ld:
            return out
        g = ld[0]
        out.append(g + 1)
        a = generator_inv_times(a, g)


def left_weight(a: Simple, b: Simple) -> tuple[Simple, Simple]:
    """Move the largest possible prefix of b into a so that (a, b) is left-weighted."""
    while True:
        rd = set(right_descents(a))
        moved = False
        for g in left_descents(b):
            if g not in rd:
                a = times_generator(a, g)
                b = generator_inv_times(b, g)
                moved = True
                break
        if not moved:
            return a, b


class _Builder:
    """Accumulates simple factors on the right of a left-weighted sequence."""

    def __init__(self, n: int):
        self.n = n
        self.delta = delta_simple(n)
        self.ident = identity_simple(n)
        self.factors: list[Simple] = []

    def append(self, x: Simple):
        f = self.factors
        f.append(x)
        j = len(f) - 1
        while j > 0:
            a, b = left_weight(f[j - 1], f[j])
            if a == f[j - 1]:
                break
            f[j - 1], f[j] = a, b
            j -= 1
        while f and f[-1] == self.ident:
            f.pop()

    def finish(self, delta_power: int) -> GarsideNormalForm:
        f = self.factors
        lead = 0
        while lead < len(f) and f[lead] == self.delta:
            lead += 1
        return GarsideNormalForm(self.n, delta_power + lead, tuple(f[lead:]))


def normal_form(w: BraidWord) -> GarsideNormalForm:
    n = w.strands
    letters = w.free_reduce().letters
    if n == 1:
        return GarsideNormalForm(1, 0, ())
    # number of negative letters strictly to the right of each position
    after = [0] * len(letters)
    count = 0
    for idx in range(len(letters) - 1, -1, -1):
        after[idx] = count
        if letters[idx][1] < 0:
            count += 1
    builder = _Builder(n)
    for idx, (i, s) in enumerate(letters):
        g = i - 1
        if s > 0:
            x = generator_simple(n, g)
            flips = after[idx]
        else:
            x = complement_of_generator(n, g)
            flips = after[idx] + 1
        if flips % 2:
            x = tau(x)
        builder.append(x)
    return builder.finish(-count)


def equal_in_artin(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strands != w2.strands:
        raise ValueError(f"strand mismatch: {w1.strands} vs {w2.strands}")
    return normal_form(w1) == normal_form(w2)


def is_left_weighted(factors: Sequence[Simple]) -> bool:
    for a, b in zip(factors, factors[1:]):
        if not set(left_descents(b)) <= set(right_descents(a)):
            return False
    return True
