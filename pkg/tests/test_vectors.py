"""Partition-sum state constructions and the operator identities on them."""

import numpy as np
import pytest

from gl3bethe import hilbert as H
from gl3bethe import solver as S
from gl3bethe import vectors as V
from gl3bethe.rational import draw_points, fp, gp, rel_diff

from conftest import make_model


def pts(model, n, seed, extra=()):
    return draw_points(np.random.default_rng(seed), n, model.c, avoid=model.xi + tuple(extra))


# -- basic construction properties -------------------------------------------


def test_empty_is_vacuum(model2):
    bv = V.bethe_vector(model2, (), ())
    assert rel_diff(bv.amplitudes, model2.vacuum()) == 0.0
    assert bv.terms == 1


def test_single_second_family_point(model2):
    z = pts(model2, 1, 400)[0]
    bv = V.bethe_vector(model2, (), (z - model2.c,))
    assert rel_diff(bv.amplitudes, model2.beta / model2.kappa * model2.vacuum()) < 1e-13


def test_closed_form_one_u_two_v(model2):
    u = pts(model2, 1, 401)[0]
    vs = pts(model2, 2, 402, extra=(u,))
    t = model2.blocks(u, "twisted")
    vac = model2.vacuum()
    kap, bet, c = model2.kappa, model2.beta, model2.c
    closed = bet**2 / (kap**3 * gp(vs, (u,), c)) * (
        t[1, 2] @ vac + kap / bet * (fp(vs, u, c) - 1.0) * (t[1, 3] @ vac)
    )
    assert rel_diff(V.bethe_vector(model2, (u,), vs).amplitudes, closed) < 1e-12
    assert rel_diff(V.bethe_vector_expanded(model2, (u,), vs).amplitudes, closed) < 1e-12


def test_expanded_equals_double_sum(model2):
    us = pts(model2, 2, 403)
    vs = pts(model2, 1, 404, extra=us)
    a = V.bethe_vector(model2, us, vs).amplitudes
    b = V.bethe_vector_expanded(model2, us, vs).amplitudes
    assert rel_diff(a, b) < 1e-12


def test_expansion_truncates_beyond_b(model2):
    # terms with more kernel insertions than second-family points vanish
    us = pts(model2, 2, 405)
    vs = pts(model2, 1, 406, extra=us)
    full = V.bethe_vector_expanded(model2, us, vs).amplitudes
    cut = V.bethe_vector_expanded(model2, us, vs, n_max=1).amplitudes
    assert rel_diff(full, cut) < 1e-12


def test_plain_reduced_form(model2):
    us = pts(model2, 2, 407)
    vs = pts(model2, 1, 408, extra=us)
    red = V.bethe_vector_plain(model2, us, vs).amplitudes
    gen = V.bethe_vector(model2, us, vs, "plain").amplitudes
    assert rel_diff(red, gen) < 1e-12


def test_plain_b_zero_and_single_pair(model2):
    u = pts(model2, 1, 409)[0]
    vac = model2.vacuum()
    pl = model2.blocks(u, "plain")
    b10 = V.bethe_vector_plain(model2, (u,), ())
    assert rel_diff(b10.amplitudes, pl[1, 2] @ vac / model2.kappa) < 1e-13
    v = pts(model2, 1, 410, extra=(u,))[0]
    b11 = V.bethe_vector_plain(model2, (u,), (v,))
    assert rel_diff(b11.amplitudes, pl[1, 3] @ vac / model2.kappa) < 1e-12


def test_plain_rejects_more_v_than_u(model2):
    us = pts(model2, 1, 411)
    vs = pts(model2, 2, 412, extra=us)
    with pytest.raises(ValueError):
        V.bethe_vector_plain(model2, us, vs)


def test_permutation_invariance(model2):
    us = pts(model2, 2, 413)
    vs = pts(model2, 2, 414, extra=us)
    base = V.bethe_vector(model2, us, vs).amplitudes
    swapped = V.bethe_vector(model2, us[::-1], vs[::-1]).amplitudes
    assert rel_diff(base, swapped) < 1e-11


def test_coloring_of_plain_states(model2):
    us = pts(model2, 2, 415)
    vs = pts(model2, 1, 416, extra=us)
    cases = [((1, 0), (us[:1], ())), ((1, 1), (us[:1], vs)), ((2, 1), (us, vs))]
    for (a, b), (uu, vv) in cases:
        bv = V.bethe_vector(model2, uu, vv, "plain")
        assert V.coloring_residual(model2, bv.amplitudes, a, b) < 1e-12


def test_regular_at_cross_coincidence(model2):
    # second-family point approaching a first-family point keeps the norm bounded
    us = pts(model2, 2, 417)
    vs = pts(model2, 2, 418, extra=us)
    ref = V.bethe_vector(model2, us, vs).norm
    for delta in (1e-4, 1e-5):
        vv = (us[0] + delta, vs[1])
        assert V.bethe_vector(model2, us, vv).norm < 1e3 * ref


def test_exact_coincidence_uses_analytic_limit(model2):
    # exactly coincident cross-family points: value equals the nearby limit
    us = pts(model2, 1, 419)
    vs = (us[0], pts(model2, 1, 420, extra=us)[0])
    at = V.bethe_vector(model2, us, vs).amplitudes
    near = V.bethe_vector(model2, us, (us[0] + 1e-6, vs[1])).amplitudes
    assert rel_diff(at, near) < 1e-5
    assert np.all(np.isfinite(at))


def test_separation_validation(model2):
    us = (model2.xi[0] + 1e-9,)  # on top of an inhomogeneity
    with pytest.raises(V.SeparationError):
        V.bethe_vector(model2, us, ())


# -- hatted vectors and the correspondence ------------------------------------


def test_hat_single_creation(model2):
    # one hatted second-family point: -T12(u)|0> / lam(u)
    u = pts(model2, 1, 421)[0]
    vac = model2.vacuum()
    hv = V.hat_bethe_vector(model2, (), (u,))
    want = -(model2.blocks(u, "twisted")[1, 2] @ vac) / model2.lam(u)
    assert rel_diff(hv.amplitudes, want) < 1e-12


def test_duality_cases(model2):
    pool = pts(model2, 4, 422)
    for (a, b) in ((1, 0), (2, 0), (1, 1), (2, 1), (2, 2)):
        us, vs = pool[:a], pool[a : a + b]
        assert V.duality_residual(model2, us, vs) < 1e-9, (a, b)


def test_duality_on_l3(model3):
    pool = pts(model3, 3, 423)
    assert V.duality_residual(model3, pool[:2], pool[2:]) < 1e-9


def test_recursion_degenerate_case(model2):
    z = pts(model2, 1, 424)[0]
    assert V.recursion_residual(model2, (), (), z) < 1e-12


def test_recursion_cases(model2, model3):
    for m, (a, b), seed in ((model2, (1, 0), 425), (model2, (2, 1), 426), (model3, (2, 1), 427)):
        pool = pts(m, a + b + 1, seed)
        us, vs, z = pool[:a], pool[a : a + b], pool[a + b]
        assert V.recursion_residual(m, us, vs, z) < 1e-9, (a, b, m.length)


# -- action formulas -----------------------------------------------------------


@pytest.mark.parametrize("ab", [(1, 1), (2, 1)])
def test_action_formulas_l2(model2, ab):
    a, b = ab
    pool = pts(model2, a + b + 1, 430 + a + 10 * b)
    res = V.action_residuals(model2, pool[:a], pool[a : a + b], pool[a + b])
    assert set(res) == {"T13", "T12", "T23", "T22", "T11", "T21", "hatT13", "hatT12"}
    for name, r in res.items():
        assert r < 1e-9, (name, r)


def test_action_formulas_l3(model3):
    pool = pts(model3, 3, 440)
    res = V.action_residuals(model3, pool[:1], pool[1:2], pool[2])
    for name, r in res.items():
        assert r < 1e-9, (name, r)


def test_action_formulas_nontrivial_sector(model3):
    # at L=3 the raising actions land in nonempty sectors, so both sides are nonzero
    pool = pts(model3, 3, 441)
    us, vs, z = pool[:1], pool[1:2], pool[2]
    base = V.bethe_vector(model3, us, vs).amplitudes
    lhs = model3.blocks(z, "twisted")[1, 3] @ base
    assert np.linalg.norm(lhs) > 1e-12


# -- multiple composite action ---------------------------------------------------


def test_multi_action_matches_formula(model2, model3):
    for m, seeds in ((model2, (450, 451, 452)), (model3, (453, 454, 455))):
        for a, seed in zip((1, 2, 3), seeds):
            us = pts(m, a, seed)
            assert V.multi_action_residual(m, us) < 1e-9, (a, m.length)


def test_multi_action_order_independent(model2):
    us = pts(model2, 2, 456)
    fwd = V.b_operator_state(model2, us).amplitudes
    rev = V.b_operator_state(model2, us[::-1]).amplitudes
    assert rel_diff(fwd, rev) < 1e-12


# -- first-family-constrained identities -----------------------------------------


def constrained(model, a, b, seed):
    us = pts(model, a, seed)
    res = S.solve_constraint_for_v(model, us, b, S.SolverConfig(seed=seed))
    return us, res.roots


def test_semi_onshell_representation(model2):
    for (a, b), seed in (((1, 1), 460), ((1, 2), 461), ((2, 2), 462)):
        us, vs = constrained(model2, a, b, seed)
        lhs = V.bethe_vector_semi_onshell(model2, us, vs).amplitudes
        rhs = V.bethe_vector(model2, us, vs).amplitudes
        assert rel_diff(lhs, rhs) < 1e-9, (a, b)


def test_different_constraint_solutions_proportional(model2):
    us = pts(model2, 1, 463)
    r1 = S.solve_constraint_for_v(model2, us, 1, S.SolverConfig(seed=463))
    r2 = S.solve_constraint_for_v(model2, us, 2, S.SolverConfig(seed=464))
    assert V.proportional_solutions_residual(model2, us, r1.roots, r2.roots) < 1e-9


def test_corollary_proportionality(model2):
    for (a, b), seed in (((1, 1), 465), ((2, 2), 466), ((1, 2), 467)):
        us, vs = constrained(model2, a, b, seed)
        ratio, res = V.corollary_ratio(model2, us, vs)
        assert abs(ratio - 1.0) < 1e-9, (a, b)
        assert res < 1e-9, (a, b)


def test_composite_action_decomposition(model2):
    for (a, b), seed in (((1, 1), 468), ((1, 2), 469)):
        us, vs = constrained(model2, a, b, seed)
        z = pts(model2, 1, 470 + seed, extra=us + vs)[0]
        r_m12, r_formula = V.bg_decomposition_residuals(model2, us, vs, z)
        assert r_m12 < 1e-9, (a, b)
        assert r_formula < 1e-9, (a, b)


# -- on-shell eigenvector property ------------------------------------------------


def test_onshell_eigenvector_and_spectrum(model2):
    res, us, vs = S.solve_full(model2, 1, 1, S.SolverConfig(seed=480))
    for seed in (481, 482, 483):
        z = pts(model2, 1, seed, extra=us + vs)[0]
        assert V.onshell_residual(model2, us, vs, z) < 1e-8
        assert V.transfer_eigenvalue_distance(model2, z, us, vs) < 1e-8


def test_offshell_state_is_flagged(model2):
    us = pts(model2, 1, 484)
    vs = pts(model2, 1, 485, extra=us)
    z = pts(model2, 1, 486, extra=us + vs)[0]
    assert V.onshell_residual(model2, us, vs, z) > 1e-3
