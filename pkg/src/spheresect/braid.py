"""
Words in the Artin braid group B_n, their permutation images, and the
distinguished elements used throughout: the torsion roots alpha_0, alpha_1,
alpha_2, the relation word R_n and the full twist.

A letter is a pair (i, sign) with 1 <= i <= n-1; sigma_i^{+1} is (i, 1).
Words serialize as signed integers, so [1, -2, 2] is s1 s2^-1 s2.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Iterable, Sequence


@dataclasses.dataclass(frozen=True)
class Permutation:
    """A bijection of {1..size}, stored 0-indexed as `images[j] = pi(j)`."""
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, size: int) -> Permutation:
        return cls(tuple(range(size)))

    @classmethod
    def transposition(cls, size: int, a: int, b: int) -> Permutation:
        """Transposition of the 1-indexed points a and b."""
        im = list(range(size))
        im[a - 1], im[b - 1] = im[b - 1], im[a - 1]
        return cls(tuple(im))

    @classmethod
    def from_one_indexed(cls, images: Sequence[int]) -> Permutation:
        return cls(tuple(x - 1 for x in images))

    def one_indexed(self) -> list[int]:
        return [x + 1 for x in self.images]

    def __call__(self, j: int) -> int:
        """Image of the 1-indexed point j."""
        return self.images[j - 1] + 1

    def compose(self, other: Permutation) -> Permutation:
        """self o other: apply `other` first."""
        if other.size != self.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[other.images[j]] for j in range(self.size)))

    __mul__ = compose

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for j, x in enumerate(self.images):
            inv[x] = j
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        result = Permutation.identity(self.size)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(j == x for j, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (1-indexed), fixed points included as 1-cycles."""
        seen = [False] * self.size
        out = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> list[int]:
        return sorted((len(c) for c in self.cycles()), reverse=True)

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.size else 1


@dataclasses.dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strand count must be positive")
        for i, s in self.letters:
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"generator index {i} out of range for B_{self.strands}")
            if s not in (1, -1):
                raise ValueError(f"bad sign {s}")

    @classmethod
    def from_ints(cls, strands: int, ints: Iterable[int]) -> BraidWord:
        letters = []
        for x in ints:
            x = int(x)
            if x == 0:
                raise ValueError("0 is not a generator")
            letters.append((abs(x), 1 if x > 0 else -1))
        return cls(strands, tuple(letters))

    @classmethod
    def generator(cls, strands: int, i: int, sign: int = 1) -> BraidWord:
        return cls(strands, ((i, sign),))

    def to_ints(self) -> list[int]:
        return [i * s for i, s in self.letters]

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def free_reduce(self) -> BraidWord:
        stack: list[tuple[int, int]] = []
        for i, s in self.letters:
            if stack and stack[-1] == (i, -s):
                stack.pop()
            else:
                stack.append((i, s))
        return BraidWord(self.strands, tuple(stack))

    def shifted(self, offset: int, strands: int) -> BraidWord:
        """The same word acting on strands offset+1 .. offset+self.strands of B_strands."""
        return BraidWord(strands, tuple((i + offset, s) for i, s in self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(str(x) for x in self.to_ints())


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    """Concatenation w1 w2; no cancellation is performed."""
    if w1.strands != w2.strands:
        raise ValueError(f"strand mismatch: {w1.strands} vs {w2.strands}")
    return BraidWord(w1.strands, w1.letters + w2.letters)


def identity_word(n: int) -> BraidWord:
    return BraidWord(n, ())


def permutation_of(w: BraidWord) -> Permutation:
    """Image in S_n with sigma_i -> (i, i+1), so perm(w1 w2) = perm(w1) o perm(w2)."""
    im = list(range(w.strands))
    # right-multiplying by a transposition swaps the images of i-1 and i
    for i, _ in w.letters:
        im[i - 1], im[i] = im[i], im[i - 1]
    return Permutation(tuple(im))


def strand_positions(w: BraidWord) -> list[int]:
    """End position (1-indexed) of the strand that starts at position j, for each j."""
    pos_of_strand = list(range(w.strands))
    at = list(range(w.strands))  # at[p] = strand currently at position p
    for i, _ in w.letters:
        at[i - 1], at[i] = at[i], at[i - 1]
    for p, strand in enumerate(at):
        pos_of_strand[strand] = p
    return [p + 1 for p in pos_of_strand]


def torsion_element(kind: int, n: int) -> BraidWord:
    """alpha_0 = s1..s_{n-1}, alpha_1 = s1..s_{n-2} s_{n-1}^2, alpha_2 = s1..s_{n-3} s_{n-2}^2."""
    if n < 3:
        raise ValueError("torsion elements need n >= 3")
    if kind == 0:
        ints = list(range(1, n))
    elif kind == 1:
        ints = list(range(1, n)) + [n - 1]
    elif kind == 2:
        ints = list(range(1, n - 1)) + [n - 2]
    else:
        raise ValueError(f"invalid torsion kind {kind}")
    return BraidWord.from_ints(n, ints)


def torsion_cycle_structure(kind: int, k: int, n: int) -> dict:
    """Cycle lengths of perm(alpha_kind^k): gcd(k, n-kind) cycles of length (n-kind)/gcd."""
    if n < 3:
        raise ValueError("n >= 3 required")
    if kind not in (0, 1, 2):
        raise ValueError(f"invalid torsion kind {kind}")
    moved = n - kind
    g = math.gcd(k, moved)
    return {"cycles": [moved // g] * g, "fixed": kind}


def relation_word(n: int) -> BraidWord:
    """R_n = s1 .. s_{n-1} s_{n-1} .. s1."""
    if n < 3:
        raise ValueError("n >= 3 required")
    up = list(range(1, n))
    return BraidWord.from_ints(n, up + up[::-1])


def half_twist(n: int) -> BraidWord:
    """Positive word for the Garside element Delta."""
    ints: list[int] = []
    for top in range(n - 1, 0, -1):
        ints.extend(range(1, top + 1))
    return BraidWord.from_ints(n, ints)


def full_twist(n: int) -> BraidWord:
    """omega = (s1 .. s_{n-1})^n, equal to Delta^2."""
    return torsion_element(0, n) ** n if n >= 3 else half_twist(n) ** 2
