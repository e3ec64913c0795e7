"""
The cabling homomorphism c_v: B_n -> B_{nk} and its per-strand exponent ledger.

Strand j of the base braid becomes the block of positions (j-1)k+1 .. jk.
c_v(s_i) is the diagonal insertion (phi^{a_i} on block i, phi^{t-a_i} on
block i+1, phi^c on every other block) followed by the positive block
crossing in which each strand of block i passes over every strand of
block i+1 once.  c_v(s_i^{-1}) is the inverse word.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .braid import BraidWord, permutation_of, relation_word, half_twist, torsion_element


@dataclasses.dataclass(frozen=True)
class CablingVector:
    phi: BraidWord
    a: tuple[int, ...]
    c: int
    t: int
    n: int

    def __post_init__(self):
        if self.phi.strands < 2:
            raise ValueError("phi needs at least 2 strands")
        if len(self.a) != self.n - 1:
            raise ValueError(f"need {self.n - 1} a-exponents, got {len(self.a)}")
        perm = permutation_of(self.phi)
        if perm(self.k) != self.k:
            raise ValueError("phi must fix its last strand (phi in B_{k-1,1})")

    @property
    def k(self) -> int:
        return self.phi.strands

    def exponent(self, i: int, position: int) -> int:
        """phi-exponent given by c_v(s_i) to the cable sitting at `position` before the letter."""
        if position == i:
            return self.a[i - 1]
        if position == i + 1:
            return self.t - self.a[i - 1]
        return self.c


def relation_vector(n: int, k_prime: int = 1, a: Sequence[int] | None = None) -> CablingVector:
    """The vector with k = k'(n-1)(n-2)+1, phi = alpha_1^{k'} in B_k, c = -1, t = 2n-4."""
    k = k_prime * (n - 1) * (n - 2) + 1
    phi = torsion_element(1, k) ** k_prime if k >= 3 else BraidWord.from_ints(k, [1, 1] * k_prime)
    a = tuple(a) if a is not None else (0,) * (n - 1)
    return CablingVector(phi=phi, a=a, c=-1, t=2 * n - 4, n=n)


def block_crossing(n: int, k: int, i: int) -> list[int]:
    """Positive word (signed ints) crossing block i over block i+1 in B_{nk}."""
    start = (i - 1) * k  # 0-indexed first position of block i
    out = []
    for r in range(k):
        # strand at position start+k-1-r moves right across all of block i+1
        for c in range(k):
            out.append(start + k - 1 - r + c + 1)
    return out


def _phi_power_ints(phi: BraidWord, e: int, block: int) -> list[int]:
    if e == 0:
        return []
    base = phi.to_ints() if e > 0 else phi.inverse().to_ints()
    offset = (block - 1) * phi.strands
    shifted = [(abs(x) + offset) * (1 if x > 0 else -1) for x in base]
    return shifted * abs(e)


def cabled_generator_ints(v: CablingVector, i: int) -> list[int]:
    out: list[int] = []
    for block in range(1, v.n + 1):
        out.extend(_phi_power_ints(v.phi, v.exponent(i, block), block))
    out.extend(block_crossing(v.n, v.k, i))
    return out


def cable(v: CablingVector, w: BraidWord) -> BraidWord:
    if w.strands != v.n:
        raise ValueError(f"cabling vector is for n={v.n}, word has {w.strands} strands")
    cache: dict[int, list[int]] = {}
    ints: list[int] = []
    for i, s in w.letters:
        if i not in cache:
            cache[i] = cabled_generator_ints(v, i)
        g = cache[i]
        ints.extend(g if s > 0 else [-x for x in reversed(g)])
    return BraidWord.from_ints(v.n * v.k, ints)


def exponent_ledger(v: CablingVector, w: BraidWord) -> list[int]:
    """Total phi-exponent picked up along the trajectory of each strand of w (by start position)."""
    if w.strands != v.n:
        raise ValueError(f"cabling vector is for n={v.n}, word has {w.strands} strands")
    n = w.strands
    pos = list(range(1, n + 1))  # pos[j] = current position of strand j+1
    ledger = [0] * n
    for i, s in w.letters:
        for j in range(n):
            p = pos[j]
            q = i + 1 if p == i else i if p == i + 1 else p
            if s > 0:
                ledger[j] += v.exponent(i, p)
            else:
                # inverse of the letter that carries q to p
                ledger[j] -= v.exponent(i, q)
            pos[j] = q
    return ledger


def trivial_vector(n: int, k: int) -> CablingVector:
    return CablingVector(phi=BraidWord(k, ()), a=(0,) * (n - 1), c=0, t=0, n=n)


def cabled_relation_target(n: int, k: int) -> BraidWord:
    """R_n(k): untwisted k-cabling of R_n followed by two full twists of the first cable."""
    if n < 3 or k < 2:
        raise ValueError("need n >= 3 and k >= 2")
    plain = cable(trivial_vector(n, k), relation_word(n))
    # R_n is a pure braid, so the first cable ends where it started
    twist = (half_twist(k) ** 4).shifted(0, n * k)
    return plain * twist


def relation_check(n: int, k_prime: int = 1, a: Sequence[int] | None = None) -> dict:
    """Compare c_v(R_n) with R_n(k) exactly in B_{nk}; report the fallback data as well."""
    from .garside import equal_in_artin

    v = relation_vector(n, k_prime, a)
    k = v.k
    cabled = cable(v, relation_word(n))
    target = cabled_relation_target(n, k)
    ledger = exponent_ledger(v, relation_word(n))
    expected_ledger = [2 * (n - 1) * (n - 2)] + [0] * (n - 1)
    exact = equal_in_artin(cabled, target)
    same_perm = permutation_of(cabled) == permutation_of(target)
    return {
        "n": n,
        "k": k,
        "strands": n * k,
        "exact_equal": exact,
        "permutation_match": same_perm,
        "ledger": ledger,
        "expected_ledger": expected_ledger,
        "ledger_match": ledger == expected_ledger,
        "cabled_length": len(cabled),
        "target_length": len(target),
    }
