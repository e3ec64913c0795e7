import numpy as np
import pytest

from spheresect.configuration import Configuration, SeparationError, set_mismatch, verify_output
from spheresect.mobius import affine_of, chordal_matrix, normalize_rows, random_rotation
from spheresect.configuration import from_sphere
from spheresect.spacelevel import (
    build_rational_map,
    level_value,
    pole_strengths,
    section_general,
)


def match_error(a, b):
    d = np.abs(a[:, None] - b[None, :])
    return max(d.min(axis=0).max(), d.min(axis=1).max())


def sphere_grid(count=4000, seed=1):
    v = np.random.default_rng(seed).normal(size=(count, 3))
    return from_sphere(v / np.linalg.norm(v, axis=1, keepdims=True))


@pytest.mark.parametrize("n,deg,zo", [(4, 6, 2), (5, 12, 3), (6, 20, 4), (7, 30, 5)])
def test_degrees(n, deg, zo, rng):
    r, _ = build_rational_map(Configuration.random(n, rng), 0)
    assert r.degree == deg and r.zero_order == zo
    num, den = r.numerator_denominator()
    assert len(num) - 1 == deg and len(den) - 1 == deg


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_zero_pole_certificate(n, rng):
    cfg = Configuration.random(n, rng, min_sep=0.05)
    for i in range(n):
        r, _ = build_rational_map(cfg, i)
        z = r.points
        for j in range(n):
            if j != i:
                assert abs(r(z[j])) < 1e-8
        w = z[i] + 1e-4 * np.exp(2j * np.pi * np.arange(8) / 8)
        assert np.all(1 / np.abs(r(w)) < 1e-6)


def test_product_matches_polynomial_form(rng):
    cfg = Configuration.random(5, rng)
    r, _ = build_rational_map(cfg, 2)
    num, den = r.numerator_denominator()
    w = rng.normal(size=20) + 1j * rng.normal(size=20)
    direct = r(w)
    poly = np.polynomial.polynomial.polyval(w, num) / np.polynomial.polynomial.polyval(w, den)
    assert np.allclose(direct, poly, rtol=1e-9)


def test_preimages_against_numpy_roots(rng):
    cfg = Configuration.random(4, rng, min_sep=0.1)
    eps = level_value(cfg, 1)
    for i in range(4):
        r, _ = build_rational_map(cfg, i)
        num, _ = r.numerator_denominator()
        zi = r.points[i]
        # in v = w - z_i the denominator is v^6, so nothing cancels when expanding
        shifted = np.polynomial.Polynomial(num)(np.polynomial.Polynomial([zi, 1])).coef
        shifted[6] -= eps
        ref = zi + np.roots(shifted[::-1])
        ours = r.preimages(eps)
        assert len(ours) == 6
        assert match_error(ours, ref) < 1e-9


def test_levels_distinct(rng):
    for _ in range(100):
        cfg = Configuration.random(int(rng.integers(4, 8)), rng)
        vals = [level_value(cfg, l) for l in (1, 2, 3)]
        assert len({complex(round(v.real, 6), round(v.imag, 6)) for v in vals}) == 3
        assert abs(vals[0] - vals[1]) > 1e-3 * abs(vals[0])


def test_level_continuity(rng):
    cfg = Configuration.random(5, rng)
    direction = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    base = level_value(cfg, 1)
    diffs = []
    for h in (1e-2, 1e-3, 1e-4, 1e-5):
        moved = Configuration(normalize_rows(cfg.h + h * direction))
        diffs.append(abs(level_value(moved, 1) - base) / abs(base))
    assert diffs[-1] < 1e-3
    assert all(b < a for a, b in zip(diffs, diffs[1:]))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_level_dominates_away_from_poles(n, rng):
    cfg = Configuration.random(n, rng, min_sep=0.05)
    grid = sphere_grid()
    far = grid[chordal_matrix(grid, cfg.h).min(axis=1) > 0.1]
    eps = abs(level_value(cfg, 1))
    for i in range(n):
        r, rot = build_rational_map(cfg, i)
        vals = np.abs(r(affine_of(rot(far))))
        assert vals.max() < eps


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_section_counts_and_clusters(n, rng):
    cfg = Configuration.random(n, rng, min_sep=0.05)
    out = section_general(cfg, 1)
    d = (n - 1) * (n - 2)
    assert out.m == n * d
    assert verify_output(cfg, out, n * d)["ok"]
    dist = chordal_matrix(out.new_points, cfg.h)
    assert dist.min(axis=1).max() < 0.1
    counts = np.bincount(dist.argmin(axis=1), minlength=n)
    assert counts.tolist() == [d] * n
    assert np.bincount(out.parameters["owner"], minlength=n).tolist() == [d] * n


def test_multiple_levels(rng):
    cfg = Configuration.random(4, rng, min_sep=0.05)
    out = section_general(cfg, 2)
    assert out.m == 48 and verify_output(cfg, out, 48)["ok"]


@pytest.mark.parametrize("n", [4, 6])
def test_relabel_invariance(n, rng):
    cfg = Configuration.random(n, rng, min_sep=0.05)
    out = section_general(cfg, 1)
    for _ in range(10):
        perm = rng.permutation(n)
        assert set_mismatch(section_general(cfg.relabeled(perm), 1).new_points, out.new_points) < 1e-8


def test_rotation_equivariance(rng):
    cfg = Configuration.random(5, rng, min_sep=0.05)
    out = section_general(cfg, 1)
    for _ in range(5):
        g = random_rotation(rng)
        assert set_mismatch(section_general(cfg.transformed(g), 1).new_points,
                            out.transformed(g).new_points) < 1e-9


def test_pole_strengths_rotation_invariant(rng):
    cfg = Configuration.random(6, rng)
    g = random_rotation(rng)
    assert np.allclose(pole_strengths(cfg), pole_strengths(cfg.transformed(g)), rtol=1e-9)


def test_bad_arguments(rng):
    cfg = Configuration.random(4, rng)
    with pytest.raises(ValueError):
        section_general(cfg, 0)
    with pytest.raises(ValueError):
        section_general(Configuration.roots_of_unity(3), 1)
    with pytest.raises(ValueError):
        section_general(cfg, 70)
    with pytest.raises(ValueError):
        level_value(cfg, 0)


def test_separation_failure_is_reported(rng):
    cfg = Configuration.random(4, rng, min_sep=0.05)
    with pytest.raises(SeparationError, match="larger K"):
        section_general(cfg, 1, tol_sep=0.5)
