import numpy as np
import pytest

from spheresect.configuration import Configuration, verify_output
from spheresect.feasibility import Infeasible, Status, construct, decide, gg_residues

E, N, U = Status.EXISTS, Status.NOT_EXISTS, Status.UNKNOWN


def reference(n, m):
    """Decision table transcribed from the four theorem statements."""
    if m == 0:
        return E
    if n == 3:
        return E if m % 3 in (0, 2) else N
    big = n * (n - 1) * (n - 2)
    allowed = {r % big for r in (0, (n - 1) * (n - 2), -n * (n - 2), -(n - 2))}
    if m % big not in allowed:
        return N
    if n == 4:
        if m in (6, 16, 24, 30, 48, 70) or m % 24 == 0 or m >= 70:
            return E
        return U
    if n == 5:
        return E if m % big == 0 else U
    return E if m % big == 0 else N


def test_exhaustive_table():
    for n in range(3, 9):
        for m in range(0, 501):
            assert decide(n, m).status is reference(n, m), (n, m)


def test_examples():
    assert decide(3, 2).status is E
    assert decide(3, 4).status is N
    assert decide(6, 121).status is N and "Theorem C" in decide(6, 121).citation
    assert decide(4, 22).status is U
    assert decide(4, 4).status is N
    for m in (40, 46, 54, 64):
        assert decide(4, m).status is U
    assert decide(5, 60).status is E and decide(5, 12).status is U and decide(5, 13).status is N


def test_residues():
    assert gg_residues(4) == {0, 6, 16, 22}
    assert gg_residues(5) == {0, 12, 45, 57}
    assert gg_residues(6) == {0, 20, 96, 116}
    with pytest.raises(ValueError):
        gg_residues(3)


def test_n6_nonexistence_is_complement_of_zero():
    for n in (6, 7, 8):
        big = n * (n - 1) * (n - 2)
        for m in range(1, 3 * big + 1):
            assert (decide(n, m).status is N) == (m % big != 0)


def test_every_verdict_is_cited():
    for n in range(3, 9):
        for m in range(0, 200):
            v = decide(n, m)
            assert v.citation
            assert (v.recipe is not None) == (v.status is E)


def test_invalid():
    with pytest.raises(ValueError):
        decide(2, 4)
    with pytest.raises(ValueError):
        decide(4, -1)


@pytest.mark.parametrize("n", [3, 4, 6, 7])
def test_soundness(n):
    rng = np.random.default_rng(n)
    for m in range(0, 201):
        if decide(n, m).status is not E:
            continue
        cfg = Configuration.random(n, rng, min_sep=0.05)
        out = construct(cfg, m)
        assert verify_output(cfg, out, m)["ok"], (n, m)


def test_construct_refuses_non_constructive():
    cfg = Configuration.roots_of_unity(4)
    for m in (4, 22):
        with pytest.raises(Infeasible):
            construct(cfg, m)


def test_successful_constructions_are_never_ruled_out(rng):
    cfg3 = Configuration.random(3, rng)
    for m in range(0, 40):
        if m % 3 != 1:
            construct(cfg3, m, "cross_ratio")
            assert decide(3, m).status is not N
    cfg4 = Configuration.random(4, rng, min_sep=0.05)
    for m in (6, 16, 24, 30, 48, 70):
        construct(cfg4, m, "torsion")
        assert decide(4, m).status is not N
    for n, m in ((4, 48), (5, 60), (5, 120)):
        construct(Configuration.random(n, rng, min_sep=0.05), m, "spacelevel")
        assert decide(n, m).status is not N
