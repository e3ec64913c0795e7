import numpy as np
import pytest

from spheresect.braid import Permutation
from spheresect.configuration import Configuration
from spheresect.feasibility import section_fn
from spheresect.mobius import chordal_matrix
from spheresect.monodromy import (
    TrackingError,
    braid_relation_check,
    commutation_check,
    constant_path,
    generator_loop,
    samples_path,
    track,
    word_loop,
)


def test_constant_path_is_identity():
    f = section_fn(3, 5)
    r = track(f, constant_path(Configuration.roots_of_unity(3)))
    assert r.permutation == Permutation.identity(5)
    assert r.closure_mismatch < 1e-14


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (3, 5), (3, 6), (4, 6), (4, 16)])
def test_generator_loops_close(n, m):
    f = section_fn(n, m)
    for i in range(1, n):
        r = track(f, generator_loop(n, i))
        assert r.closure_mismatch < 1e-8
        assert r.max_gap < 0.5


def test_old_points_swap():
    for n in (3, 4, 5):
        for i in range(1, n):
            p = generator_loop(n, i).old_point_permutation()
            assert p == Permutation.transposition(n, i, i + 1)


@pytest.mark.parametrize("n,m", [(3, 3), (4, 6)])
def test_braid_relation(n, m):
    f = section_fn(n, m)
    for i in range(1, n - 1):
        r = braid_relation_check(f, n, i)
        assert r["consistent"], r


def test_commutation():
    r = commutation_check(section_fn(4, 6), 4, 1, 3)
    assert r["consistent"]


def test_loop_and_inverse_cancel():
    f = section_fn(4, 6)
    r = track(f, word_loop(4, [2, -2]))
    assert r.permutation == Permutation.identity(6)
    p = track(f, word_loop(4, [1])).permutation
    q = track(f, word_loop(4, [1, 1])).permutation
    assert q == p * p


def test_spacelevel_clusters_follow_old_points():
    f = section_fn(5, 60)
    base = Configuration.roots_of_unity(5)
    start = f(base)
    owner = chordal_matrix(start.new_points, base.h).argmin(axis=1)
    r = track(f, generator_loop(5, 2))
    for j, k in enumerate(r.permutation.images):
        src, dst = owner[j], owner[k]
        # the cluster at old point 2 travels to 3 and vice versa, others stay
        assert dst == {1: 2, 2: 1}.get(src, src)


def test_refinement_halves_displacement():
    f = section_fn(4, 24, method="spacelevel")
    base = Configuration.roots_of_unity(4).h[:, 0] / Configuration.roots_of_unity(4).h[:, 1]
    moved = base * np.exp(0.3j) + 0.05
    path = samples_path([base, moved])
    gaps = [track(f, path, steps=s, adaptive=False).max_gap for s in (64, 128, 256)]
    for a, b in zip(gaps, gaps[1:]):
        assert 0.4 <= b / a <= 0.6


def test_fixed_steps_can_fail():
    f = section_fn(4, 24, method="spacelevel")
    with pytest.raises(TrackingError):
        track(f, generator_loop(4, 1), steps=2, adaptive=False)


def test_open_path_has_no_permutation():
    f = section_fn(3, 3)
    r = track(f, samples_path([[0, 1, 2j], [0, 1, 3j]]))
    assert r.permutation is None
    assert len(r.correspondence) == 3


def test_generator_loop_validation():
    with pytest.raises(ValueError):
        generator_loop(3, 3)
    # a point sitting inside the half-twist disk
    with pytest.raises(ValueError):
        generator_loop(3, 1, Configuration.of([-1, 1, 0.1j]))
