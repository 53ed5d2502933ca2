"""Scalar kernel: rational functions, set products, partitions, DWPF."""

import math

import numpy as np
import pytest

from gl3bethe import rational as R

RNG = np.random.default_rng(2024)


def rand_points(n, seed=None):
    rng = RNG if seed is None else np.random.default_rng(seed)
    return R.draw_points(rng, n, 1.0)


# -- g, f, h ----------------------------------------------------------------


def test_g_reference_value():
    assert R.g(3.0, 1.0, 1.0) == 0.5


def test_g_antisymmetric():
    for u, v in zip(rand_points(5, 1), rand_points(5, 2)):
        assert abs(R.g(u, v) + R.g(v, u)) < 1e-14


def test_inverse_pairings():
    c = 1.0
    for u, v in zip(rand_points(6, 3), rand_points(6, 4)):
        assert abs(R.g(u + c, v, c) * R.h(u, v, c) - 1.0) < 1e-13
        assert abs(R.h(u - c, v, c) * R.g(u, v, c) - 1.0) < 1e-13
        assert abs(R.f(u - c, v, c) * R.f(v, u, c) - 1.0) < 1e-13
        assert abs(R.f(u, v, c) - 1.0 - R.g(u, v, c)) < 1e-14


def test_f_zero_at_shifted_point():
    u = 0.37 + 0.21j
    assert R.f(u, u + 1.0, 1.0) == 0.0


def test_pole_raises():
    with pytest.raises(R.PoleError):
        R.g(1.0, 1.0)
    with pytest.raises(R.PoleError):
        R.f(2.0j, 2.0j)


def test_reciprocal_forms_match():
    for u, v in zip(rand_points(5, 5), rand_points(5, 6)):
        assert abs(R.inv_g(u, v) - 1.0 / R.g(u, v)) < 1e-14
        assert abs(R.inv_f(u, v) - 1.0 / R.f(u, v)) < 1e-14
        assert abs(R.inv_h(u, v) - 1.0 / R.h(u, v)) < 1e-14
    assert R.inv_g(0.5, 0.5) == 0.0  # extends through the pole of g


# -- set products -----------------------------------------------------------


def test_empty_products_are_one():
    assert R.fp((), (1.0, 2.0)) == 1.0
    assert R.fp((1.0, 2.0), ()) == 1.0
    assert R.gp((), ()) == 1.0


def test_two_element_expansion():
    xs = (1.1 + 0.2j, -0.7 + 0.9j)
    v = 0.3 - 1.2j
    assert abs(R.hp(xs, v) - R.h(xs[0], v) * R.h(xs[1], v)) < 1e-14


def test_double_product_matches_manual_loops():
    left = rand_points(3, 7)
    right = rand_points(2, 8)
    manual = 1.0
    for x in left:
        for y in right:
            manual *= R.f(x, y)
    assert abs(R.fp(left, right) - manual) / abs(manual) < 1e-13


def test_scalar_arguments_accepted():
    assert abs(R.fp(2.0, 1.0 + 1.0j) - R.f(2.0, 1.0 + 1.0j)) == 0.0


# -- partitions -------------------------------------------------------------


def test_partition_counts():
    assert len(list(R.partitions((1, 2), (1, 1)))) == 2
    assert len(list(R.partitions((1, 2, 3), (1, 1, 1)))) == 6
    assert len(list(R.partitions((1, 2, 3, 4), (2, 2)))) == 6


def test_partition_count_is_multinomial():
    elems = rand_points(5, 9)
    for sizes in ((2, 3), (1, 2, 2), (5,), (0, 5)):
        got = list(R.partitions(elems, sizes))
        assert len(got) == R.partition_count(5, sizes)
        assert len(set(got)) == len(got)  # each assignment exactly once


def test_partition_complete_and_disjoint():
    elems = rand_points(4, 10)
    for parts in R.partitions(elems, (2, 1, 1)):
        merged = sorted([z for p in parts for z in p], key=lambda z: (z.real, z.imag))
        assert merged == sorted(elems, key=lambda z: (z.real, z.imag))
        assert tuple(len(p) for p in parts) == (2, 1, 1)


def test_partition_order_deterministic():
    elems = (1.0, 2.0, 3.0)
    first = list(R.partitions(elems, (1, 2)))
    assert first == list(R.partitions(elems, (1, 2)))
    # lexicographic in the assignment labels: element 1 joins subset 0 first
    assert first[0] == ((1.0,), (2.0, 3.0))


def test_partition_size_mismatch():
    with pytest.raises(ValueError):
        list(R.partitions((1.0, 2.0), (2, 1)))


# -- DWPF -------------------------------------------------------------------


def dwpf_printed_form(xs, ys, c=1.0):
    """Oracle: the kernel determinant exactly as printed (with h division)."""
    n = len(xs)
    if n == 0:
        return 1.0 + 0.0j
    mat = np.array([[R.g(x, y, c) / R.h(x, y, c) for y in ys] for x in xs])
    pref = complex(np.prod([[R.h(x, y, c) for y in ys] for x in xs]))
    for j in range(n):
        for k in range(j + 1, n):
            pref *= R.g(xs[j], xs[k], c) * R.g(ys[k], ys[j], c)
    return pref * complex(np.linalg.det(mat))


def test_dwpf_k0_and_k1():
    assert R.dwpf((), ()) == 1.0
    x, y = 1.3 + 0.4j, -0.2 + 1.1j
    assert abs(R.dwpf((x,), (y,)) - R.g(x, y)) < 1e-14


def test_dwpf_matches_printed_determinant():
    for n in (2, 3, 4):
        pts = rand_points(2 * n, 20 + n)
        xs, ys = pts[:n], pts[n:]
        a = R.dwpf(xs, ys)
        b = dwpf_printed_form(xs, ys)
        assert abs(a - b) / abs(b) < 1e-12


def test_dwpf_symmetric_under_permutations():
    pts = rand_points(6, 30)
    xs, ys = list(pts[:3]), list(pts[3:])
    base = R.dwpf(xs, ys)
    rng = np.random.default_rng(31)
    for _ in range(4):
        rng.shuffle(xs)
        rng.shuffle(ys)
        assert abs(R.dwpf(xs, ys) - base) / abs(base) < 1e-12


def test_dwpf_residue_recursion():
    # delta * K_n / c extrapolates to the residue prediction as x_n -> y_n
    for n in (2, 3):
        pts = rand_points(2 * n, 40 + n)
        xs, ys = pts[:n], pts[n:]
        fit, target = R.dwpf_pole_fit(xs, ys)
        assert abs(fit - target) / abs(target) < 1e-6


def test_dwpf_residue_pole_coefficient_n2():
    # direct two-point fit of the simple pole against the explicit product
    pts = rand_points(4, 50)
    xs, ys = pts[:2], pts[2:]
    fit, target = R.dwpf_pole_fit(xs, ys)
    explicit = R.fp(xs[:1], ys[1]) * R.fp(ys[1], ys[:1]) * R.dwpf(xs[:1], ys[:1])
    assert abs(target - explicit) == 0.0
    assert abs(fit - explicit) / abs(explicit) < 1e-6


def test_dwpf_decays_at_infinity():
    pts = rand_points(6, 60)
    xs, ys = pts[:3], pts[3:]
    vals = [abs(R.dwpf(xs[:2] + (r * np.exp(0.4j),), ys)) for r in (1e3, 1e4)]
    assert vals[1] < 0.2 * vals[0]


def test_dwpf_finite_at_h_zero():
    # second-family point at x = y - c: printed entry diverges, value is finite
    pts = rand_points(3, 70)
    y1, y2 = pts[0], pts[1]
    xs = (y1 - 1.0, pts[2])
    val = R.dwpf(xs, (y1, y2))
    assert np.isfinite(val.real) and np.isfinite(val.imag)


def test_dwpf_size_mismatch():
    with pytest.raises(ValueError):
        R.dwpf((1.0,), (1.0, 2.0))


# -- summation identities ---------------------------------------------------


def test_identity_sides_n0():
    xs = rand_points(3, 80)
    lhs, rhs = R.identity_a1_sides(xs, ())
    assert lhs == 1.0 and rhs == 1.0


def test_identity_sides_n1_closed_form():
    # partial fraction decomposition: sum_j g(x_j, y) f(xs_j, x_j) = f(xs, y) - 1
    xs = rand_points(4, 81)
    y = rand_points(1, 82)[0]
    lhs, rhs = R.identity_a1_sides(xs, (y,))
    manual = sum(
        R.g(xs[j], y) * R.fp(xs[:j] + xs[j + 1:], xs[j]) for j in range(4)
    )
    assert abs(lhs - manual) < 1e-12 * abs(manual)
    assert abs(rhs - (R.fp(xs, y) - 1.0)) < 1e-12 * abs(rhs)
    assert abs(lhs - rhs) / abs(rhs) < 1e-10


def test_identity_sides_agree_random():
    for m, n in ((2, 2), (3, 2), (4, 3), (5, 5)):
        pts = rand_points(m + n, 90 + m + 10 * n)
        lhs, rhs = R.identity_a1_sides(pts[:m], pts[m:])
        assert abs(lhs - rhs) / max(1.0, abs(rhs)) < 1e-10


def test_identity_det_matches_partition_sum():
    for m, n in ((2, 2), (3, 1), (4, 2), (5, 4)):
        pts = rand_points(m + n, 120 + m + 10 * n)
        xs, ys = pts[:m], pts[m:]
        det = R.identity_a2_det(xs, ys)
        _, rhs = R.identity_a1_sides(xs, ys)
        assert abs(det - rhs) / max(1.0, abs(rhs)) < 1e-10


def test_identity_det_vanishes_when_underdetermined():
    for m, n in ((0, 1), (1, 2), (2, 4), (4, 5)):
        pts = rand_points(m + n, 150 + m + 10 * n)
        det = R.identity_a2_det(pts[:m], pts[m:])
        assert abs(det) < 1e-10


def test_identity_det_n1():
    xs = rand_points(3, 160)
    y = rand_points(1, 161)[0]
    det = R.identity_a2_det(xs, (y,))
    assert abs(det - (R.fp(xs, y) - 1.0)) < 1e-12


def test_identity_requires_enough_first_arguments():
    with pytest.raises(ValueError):
        R.identity_a1_sides((1.0,), (2.0, 3.0))


# -- sampling and utilities -------------------------------------------------


def test_draw_points_annulus_and_separation():
    rng = np.random.default_rng(7)
    pts = R.draw_points(rng, 30, 1.0)
    assert all(0.5 <= abs(z) <= 2.5 for z in pts)
    assert R.well_separated(pts, 1.0)


def test_draw_points_avoids_given_points():
    rng = np.random.default_rng(8)
    avoid = (1.0 + 1.0j,)
    pts = R.draw_points(rng, 20, 1.0, avoid=avoid)
    assert R.min_separation(pts + avoid, 1.0, shifts=(0, 1.0, -1.0)) >= R.separation_scale(1.0)


def test_min_separation_includes_shifts():
    # points at distance c apart collide after one +c shift
    pts = (0.0 + 0.0j, 1.0 + 0.0j)
    assert R.min_separation(pts, 1.0, shifts=(0.0, 1.0, -1.0)) == 0.0
    assert not R.well_separated(pts, 1.0)


def test_analytic_circle_mean_recovers_value():
    fn = lambda z: (z**3 - 2.0) / (z - 0.5)  # analytic away from 0.5
    val = R.analytic_circle_mean(fn, 2.0 + 1.0j, 0.1)
    assert abs(val - fn(2.0 + 1.0j)) < 1e-12


def test_rel_diff_basics():
    assert R.rel_diff(np.zeros(3), np.zeros(3)) == 0.0
    assert abs(R.rel_diff(np.ones(4), 2 * np.ones(4)) - 0.5) < 1e-15
