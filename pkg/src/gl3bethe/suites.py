"""Named verification suites over the whole stack.

Each suite draws its random parameters from its own generator (derived from
the master seed by hashing the suite name, so adding a suite never perturbs
another suite's draws), evaluates a family of identities, and emits one
`CheckRecord` per certified statement with the tolerance pinned at the value
the acceptance contract states.  Suites run in dependency order: scalar
kernel first, then monodromy-level structure, then vector identities, then
everything that needs Bethe-equation solutions.
"""

from __future__ import annotations

import hashlib
import time

import numpy as np

from . import hilbert
from .monodromy import (
    ChainModel,
    exchange_3223_residual,
    rtt_residual,
    vacuum_residuals,
    yang_baxter_residual,
)
from .rational import (
    draw_points,
    dwpf,
    dwpf_pole_fit,
    fp,
    gp,
    identity_a1_sides,
    identity_a2_det,
    rel_diff,
)
from .report import CheckRecord, ConfigError, RunConfig, param_hash
from .solver import (
    ConvergenceError,
    SolverConfig,
    be_det_residuals,
    residual_full,
    solve_constraint_for_v,
    solve_full,
)
from . import vectors as vec

__all__ = ["SUITES", "SUITE_ORDER", "suite_info", "run_suites", "RunContext"]

N_DRAWS = 10  # random draws per repeated check


class RunContext:
    """Shared state for one verification run: config, models, rng streams."""

    def __init__(self, config: RunConfig):
        self.config = config
        self._models: dict[int, ChainModel] = {}

    def rng(self, stream: str) -> np.random.Generator:
        tag = int.from_bytes(hashlib.sha256(stream.encode()).digest()[:8], "big")
        return np.random.default_rng([int(self.config.seed), tag])

    def model(self, length: int | None = None) -> ChainModel:
        cfg = self.config
        length = int(cfg.length if length is None else length)
        if length not in self._models:
            if isinstance(cfg.xi, str):
                xi = draw_points(self.rng(f"chain:L{length}"), length, cfg.c)
            else:
                if length != len(cfg.xi):
                    xi = draw_points(self.rng(f"chain:L{length}"), length, cfg.c)
                else:
                    xi = tuple(cfg.xi)
            self._models[length] = ChainModel(length, xi, cfg.kappa, cfg.beta, cfg.c, phi=cfg.phi)
        return self._models[length]

    def lengths(self) -> tuple[int, ...]:
        """Chain lengths exercised by the structural suites."""
        base = int(self.config.length)
        return (base,) if base == 3 else tuple(sorted({base, 3}))

    def draw(self, rng, n: int, model: ChainModel, extra=()):  # annulus points clear of the chain
        return draw_points(rng, n, model.c, avoid=model.xi + tuple(extra))

    def solver_config(self, seed_tag: str) -> SolverConfig:
        tag = int.from_bytes(hashlib.sha256(seed_tag.encode()).digest()[:4], "big")
        return SolverConfig(tol=self.config.tol_solver, seed=int(self.config.seed) + tag)


# ---------------------------------------------------------------------------
# individual suites
# ---------------------------------------------------------------------------


def suite_dwpf(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("dwpf")
    c = ctx.config.c
    rec = []

    for n in range(0, 6):
        for m in range(n, 6):
            worst = 0.0
            stamp = None
            for _ in range(N_DRAWS):
                pts = draw_points(rng, m + n, c)
                xs, ys = pts[:m], pts[m:]
                lhs, rhs = identity_a1_sides(xs, ys, c)
                det = identity_a2_det(xs, ys, c)
                scale = max(1.0, abs(lhs), abs(rhs))
                r = max(abs(lhs - rhs), abs(det - rhs)) / scale
                if r > worst:
                    worst, stamp = r, pts
            rec.append(CheckRecord("dwpf", f"two-sided-identity-m{m}-n{n}", "ident identA2",
                                   param_hash(stamp), worst, 1e-9))

    for n in range(1, 6):
        for m in range(0, n):
            worst = 0.0
            stamp = None
            for _ in range(N_DRAWS):
                pts = draw_points(rng, m + n, c)
                xs, ys = pts[:m], pts[m:]
                det = identity_a2_det(xs, ys, c)
                if abs(det) > worst:
                    worst, stamp = abs(det), pts
            rec.append(CheckRecord("dwpf", f"det-vanishing-m{m}-n{n}", "identA3 appendix A",
                                   param_hash(stamp), worst, 1e-9))

    for n in (2, 3, 4):
        pts = draw_points(rng, 2 * n, c)
        xs, ys = pts[:n], pts[n:]
        fit, target = dwpf_pole_fit(xs, ys, c)
        rec.append(CheckRecord("dwpf", f"pole-residue-n{n}", "resK appendix A",
                               param_hash(pts), abs(fit - target) / max(1.0, abs(target)), 1e-6))

    pts = draw_points(rng, 8, c)
    xs, ys = list(pts[:4]), list(pts[4:])
    base = dwpf(xs, ys, c)
    worst = 0.0
    for _ in range(5):
        rng.shuffle(xs)
        rng.shuffle(ys)
        worst = max(worst, abs(dwpf(xs, ys, c) - base) / abs(base))
    rec.append(CheckRecord("dwpf", "permutation-symmetry", "K-def",
                           param_hash(pts), worst, 1e-12))

    pts = draw_points(rng, 6, c)
    xs, ys = pts[:3], pts[3:]
    vals = []
    for radius in (1e3, 1e4):
        far = xs[:2] + (radius * np.exp(0.3j),)
        vals.append(abs(dwpf(far, ys, c)))
    rec.append(CheckRecord("dwpf", "decay-at-infinity", "appendix A",
                           param_hash(pts), vals[1] / vals[0], 0.5))
    return rec


def suite_rtt(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("rtt")
    c = ctx.config.c
    rec = []

    worst = 0.0
    for _ in range(N_DRAWS):
        u, v, w = draw_points(rng, 3, c)
        worst = max(worst, yang_baxter_residual(u, v, w, c))
    rec.append(CheckRecord("rtt", "yang-baxter", "Rmat", param_hash(ctx.config.seed), worst, 1e-12))

    for length in ctx.lengths():
        model = ctx.model(length)
        for variant in ("plain", "twisted", "hat"):
            worst = 0.0
            for _ in range(N_DRAWS):
                u, v = ctx.draw(rng, 2, model)
                worst = max(worst, rtt_residual(model, u, v, variant))
            rec.append(CheckRecord("rtt", f"exchange-{variant}-L{length}", "RTT",
                                   param_hash(model.xi, variant), worst, 1e-10))

        worst = 0.0
        for _ in range(N_DRAWS):
            u, v = ctx.draw(rng, 2, model)
            t_u, t_v = model.transfer_matrix(u), model.transfer_matrix(v)
            worst = max(worst, rel_diff(t_u @ t_v, t_v @ t_u))
        rec.append(CheckRecord("rtt", f"transfer-commutativity-L{length}", "trT",
                               param_hash(model.xi), worst, 1e-10))

        u, v = ctx.draw(rng, 2, model)
        rec.append(CheckRecord("rtt", f"exchange-3223-L{length}", "Com3223",
                               param_hash(model.xi, u, v), exchange_3223_residual(model, u, v), 1e-11))

        worst = 0.0
        for variant in ("plain", "twisted"):
            u = ctx.draw(rng, 1, model)[0]
            worst = max(worst, max(vacuum_residuals(model, u, variant).values()))
        rec.append(CheckRecord("rtt", f"vacuum-structure-L{length}", "Tjj VacEV gf",
                               param_hash(model.xi), worst, 1e-13))

        u, v = ctx.draw(rng, 2, model)
        tw, pl = model.blocks(u, "twisted"), model.blocks(u, "plain")
        rec.append(CheckRecord("rtt", f"twist-preserves-transfer-L{length}", "TwMM trT",
                               param_hash(model.xi, u), rel_diff(tw.trace(), pl.trace()), 1e-12))
    return rec


def suite_comatrix(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("comatrix")
    rec = []
    for length in ctx.lengths():
        model = ctx.model(length)
        c = model.c

        worst = 0.0
        for _ in range(3):
            u = ctx.draw(rng, 1, model)[0]
            _, res = model.qdet(u)
            worst = max(worst, res)
        rec.append(CheckRecord("comatrix", f"inversion-identity-L{length}", "comat",
                               param_hash(model.xi), worst, 1e-10))

        u = ctx.draw(rng, 1, model)[0]
        qd_tw, _ = model.qdet(u, "twisted")
        qd_pl, _ = model.qdet(u, "plain")
        rec.append(CheckRecord("comatrix", f"qdet-twist-invariance-L{length}", "comat TwMM",
                               param_hash(model.xi, u), abs(qd_tw - qd_pl) / abs(qd_tw), 1e-12))

        vac = model.vacuum()
        ref = model.lam(u) * model.kappa
        mvac = model.quantum_minor(u, (1, 2), (1, 2)) @ vac
        rec.append(CheckRecord("comatrix", f"minor-vacuum-value-L{length}", "Sklmin Tjj",
                               param_hash(model.xi, u), rel_diff(mvac, ref * vac), 1e-12))
        rec.append(CheckRecord("comatrix", f"qdet-vacuum-value-L{length}", "comat",
                               param_hash(model.xi, u), abs(qd_tw - ref) / abs(ref), 1e-10))

        tu = model.blocks(u, "twisted")
        tm = model.blocks(u - c, "twisted")
        hat = model.hat_blocks(u, "twisted")
        expans = {
            "hat-23": (hat[2, 3], tu[1, 3] @ tm[3, 2] - tu[1, 2] @ tm[3, 3]),
            "hat-13": (hat[1, 3], tu[1, 2] @ tm[2, 3] - tu[1, 3] @ tm[2, 2]),
            "hat-12": (hat[1, 2], tu[2, 1] @ tm[1, 3] - tu[2, 3] @ tm[1, 1]),
        }
        worst = max(rel_diff(a, b) for a, b in expans.values())
        rec.append(CheckRecord("comatrix", f"hat-expansions-L{length}", "HT Qmin SklAldop",
                               param_hash(model.xi, u), worst, 1e-11))

        zero = model.quantum_minor(u, (2, 2), (1, 3))
        anti = model.quantum_minor(u, (1, 2), (1, 3)) + model.quantum_minor(u, (1, 2), (3, 1))
        scale = max(float(np.linalg.norm(model.quantum_minor(u, (1, 2), (1, 3)))), 1.0)
        worst = max(float(np.linalg.norm(zero)), float(np.linalg.norm(anti))) / scale
        rec.append(CheckRecord("comatrix", f"minor-antisymmetry-L{length}", "Sklmin",
                               param_hash(model.xi, u), worst, 1e-12))
    return rec


def suite_bg_operator(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("bg-operator")
    rec = []
    for length in ctx.lengths():
        model = ctx.model(length)
        vac = model.vacuum()

        worst = 0.0
        for _ in range(N_DRAWS):
            u = ctx.draw(rng, 1, model)[0]
            tu = model.blocks(u, "twisted")
            tm = model.blocks(u - model.c, "twisted")
            direct = (
                tu[2, 3] @ tm[1, 2] @ tu[2, 3]
                - tu[2, 3] @ tm[2, 2] @ tu[1, 3]
                + tu[1, 3] @ tm[1, 1] @ tu[2, 3]
                - tu[1, 3] @ tm[2, 1] @ tu[1, 3]
            )
            hat = model.hat_blocks(u, "twisted")
            compact = tu[2, 3] @ hat[1, 3] - tu[1, 3] @ hat[1, 2]
            worst = max(worst, rel_diff(direct, compact))
        rec.append(CheckRecord("bg-operator", f"two-forms-agree-L{length}", "Bg Bg-ND",
                               param_hash(model.xi), worst, 1e-11))

        worst = 0.0
        for _ in range(N_DRAWS):
            u, v = ctx.draw(rng, 2, model)
            bu, bv = model.b_operator(u), model.b_operator(v)
            worst = max(worst, float(np.linalg.norm(bu @ bv - bv @ bu) / np.linalg.norm(bu @ bv)))
        rec.append(CheckRecord("bg-operator", f"commutativity-L{length}", "Bg",
                               param_hash(model.xi), worst, 1e-10))

        u = ctx.draw(rng, 1, model)[0]
        t = model.blocks(u, "twisted")
        lhs = model.b_operator(u) @ vac
        rhs = model.beta**2 * (t[1, 2] @ vac) + model.beta * (model.lam(u) - model.kappa) * (t[1, 3] @ vac)
        rec.append(CheckRecord("bg-operator", f"vacuum-action-L{length}", "actBg1",
                               param_hash(model.xi, u), rel_diff(lhs, rhs), 1e-11))

        bg0 = model.b_operator(u, "plain")
        rec.append(CheckRecord("bg-operator", f"plain-annihilates-vacuum-L{length}", "Bg",
                               param_hash(model.xi, u),
                               float(np.linalg.norm(bg0 @ vac) / max(1.0, np.linalg.norm(bg0))), 1e-13))
    return rec


def suite_bethe_vectors(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("bethe-vectors")
    model = ctx.model()
    c = model.c
    vac = model.vacuum()
    tol = ctx.config.tol_relative
    rec = []

    b00 = vec.bethe_vector(model, (), ())
    rec.append(CheckRecord("bethe-vectors", "empty-sets-give-vacuum", "GBV",
                           param_hash(model.xi), rel_diff(b00.amplitudes, vac), 1e-14))

    z = ctx.draw(rng, 1, model)[0]
    b01 = vec.bethe_vector(model, (), (z - c,))
    rec.append(CheckRecord("bethe-vectors", "single-v-at-shifted-point", "GBV",
                           param_hash(model.xi, z), rel_diff(b01.amplitudes, model.beta / model.kappa * vac), 1e-13))

    u0 = ctx.draw(rng, 1, model)[0]
    vs2 = ctx.draw(rng, 2, model, extra=(u0,))
    t = model.blocks(u0, "twisted")
    closed = model.beta**2 / (model.kappa**3 * gp(vs2, (u0,), c)) * (
        t[1, 2] @ vac + model.kappa / model.beta * (fp(vs2, u0, c) - 1.0) * (t[1, 3] @ vac)
    )
    rec.append(CheckRecord("bethe-vectors", "closed-form-a1-b2", "BVt12",
                           param_hash(model.xi, u0, vs2),
                           rel_diff(vec.bethe_vector(model, (u0,), vs2).amplitudes, closed), tol))
    rec.append(CheckRecord("bethe-vectors", "expanded-closed-form-a1-b2", "BVt-expl1 BVt12",
                           param_hash(model.xi, u0, vs2),
                           rel_diff(vec.bethe_vector_expanded(model, (u0,), vs2).amplitudes, closed), tol))

    us2 = ctx.draw(rng, 2, model, extra=(u0,) + vs2)
    vs1 = ctx.draw(rng, 1, model, extra=us2 + vs2 + (u0,))
    rec.append(CheckRecord("bethe-vectors", "expanded-matches-double-sum-a2-b1", "BVt-expl1 ident0",
                           param_hash(model.xi, us2, vs1),
                           rel_diff(vec.bethe_vector_expanded(model, us2, vs1).amplitudes,
                                    vec.bethe_vector(model, us2, vs1).amplitudes), tol))
    rec.append(CheckRecord("bethe-vectors", "expansion-truncates-at-b", "BVt-expl1 identA3",
                           param_hash(model.xi, us2, vs1),
                           rel_diff(vec.bethe_vector_expanded(model, us2, vs1, n_max=1).amplitudes,
                                    vec.bethe_vector_expanded(model, us2, vs1).amplitudes), 1e-12))

    rec.append(CheckRecord("bethe-vectors", "plain-reduced-form-a2-b1", "BVpartr",
                           param_hash(model.xi, us2, vs1),
                           rel_diff(vec.bethe_vector_plain(model, us2, vs1).amplitudes,
                                    vec.bethe_vector(model, us2, vs1, "plain").amplitudes), tol))

    pl = model.blocks(u0, "plain")
    b10 = vec.bethe_vector_plain(model, (u0,), ())
    rec.append(CheckRecord("bethe-vectors", "plain-b0-single-creation", "BVpartr",
                           param_hash(model.xi, u0),
                           rel_diff(b10.amplitudes, pl[1, 2] @ vac / model.kappa), 1e-13))
    b11 = vec.bethe_vector_plain(model, (u0,), (vs1[0],))
    rec.append(CheckRecord("bethe-vectors", "plain-b0-a1-b1", "BVpartr",
                           param_hash(model.xi, u0, vs1),
                           rel_diff(b11.amplitudes, pl[1, 3] @ vac / model.kappa), 1e-12))

    for (a, b), (uu, vv) in (
        ((1, 0), ((u0,), ())),
        ((1, 1), ((u0,), vs1)),
        ((2, 1), (us2, vs1)),
    ):
        bv = vec.bethe_vector(model, uu, vv, "plain")
        if bv.norm == 0.0:
            residual = 1.0
        else:
            residual = vec.coloring_residual(model, bv.amplitudes, a, b)
        rec.append(CheckRecord("bethe-vectors", f"coloring-a{a}-b{b}", "coloring GBV",
                               param_hash(model.xi, uu, vv), residual, 1e-12))

    perm_res = 0.0
    base = vec.bethe_vector(model, us2, vs2).amplitudes
    order = list(range(2))
    for _ in range(3):
        rng.shuffle(order)
        shuffled = vec.bethe_vector(model, tuple(us2[i] for i in order), tuple(vs2[i] for i in reversed(order)))
        perm_res = max(perm_res, rel_diff(base, shuffled.amplitudes))
    rec.append(CheckRecord("bethe-vectors", "permutation-invariance", "GBV SH-prod",
                           param_hash(model.xi, us2, vs2), perm_res, 1e-11))

    norms = []
    for delta in (1e-4, 1e-5):
        vv = (us2[0] + delta, vs2[1])
        norms.append(vec.bethe_vector(model, us2, vv).norm)
    ref = vec.bethe_vector(model, us2, vs2).norm
    growth = max(norms) / max(ref, 1e-30)
    rec.append(CheckRecord("bethe-vectors", "regular-at-cross-coincidence", "GBV",
                           param_hash(model.xi, us2, vs2), growth, 1e3))
    return rec


def suite_duality(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("duality")
    model = ctx.model()
    tol = ctx.config.tol_relative
    rec = []
    pool = ctx.draw(rng, 5, model)
    for (a, b) in ((1, 0), (2, 0), (1, 1), (2, 1), (2, 2)):
        us, vs = pool[:a], pool[a : a + b]
        rec.append(CheckRecord("duality", f"hat-correspondence-a{a}-b{b}",
                               "hB-B two-BVnorm" if b == 0 else "hB-B",
                               param_hash(model.xi, us, vs),
                               vec.duality_residual(model, us, vs), tol))

    z = ctx.draw(rng, 1, model, extra=pool)[0]
    for (a, b) in ((0, 0), (1, 0), (2, 1)):
        us, vs = pool[:a], pool[a : a + b]
        rec.append(CheckRecord("duality", f"hat-recursion-a{a}-b{b}", "Recu2",
                               param_hash(model.xi, us, vs, z),
                               vec.recursion_residual(model, us, vs, z),
                               1e-12 if (a, b) == (0, 0) else tol))
    return rec


def suite_actions(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("actions")
    tol = ctx.config.tol_relative
    rec = []
    for length in ctx.lengths():
        model = ctx.model(length)
        for (a, b) in ((1, 1), (2, 1)):
            pts = ctx.draw(rng, a + b + 1, model)
            us, vs, z = pts[:a], pts[a : a + b], pts[a + b]
            res = vec.action_residuals(model, us, vs, z)
            for name, r in res.items():
                anchor = {
                    "T13": "act13 Lamb", "T12": "act12", "T23": "act23",
                    "T22": "act22", "T11": "act11", "T21": "act21",
                    "hatT13": "hT13BV", "hatT12": "acthT12",
                }[name]
                rec.append(CheckRecord("actions", f"{name}-a{a}-b{b}-L{length}", anchor,
                                       param_hash(model.xi, us, vs, z), r, tol))
    return rec


def suite_semi_onshell(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("semi-onshell")
    model = ctx.model()
    tol = ctx.config.tol_relative
    rec = []

    sols = {}
    for (a, b) in ((1, 1), (1, 2), (2, 2)):
        us = ctx.draw(rng, a, model)
        res = solve_constraint_for_v(model, us, b, ctx.solver_config(f"semi:{a}{b}"))
        sols[(a, b)] = (us, res.roots)
        rec.append(CheckRecord("semi-onshell", f"constraint-residual-a{a}-b{b}", "constV",
                               param_hash(model.xi, us), res.residual_norm, 1e-10))
        rec.append(CheckRecord("semi-onshell", f"three-subset-representation-a{a}-b{b}", "actBg",
                               param_hash(model.xi, us, res.roots),
                               rel_diff(vec.bethe_vector_semi_onshell(model, us, res.roots).amplitudes,
                                        vec.bethe_vector(model, us, res.roots).amplitudes), tol))

    us1, vs1 = sols[(1, 1)]
    us1b = us1
    res2 = solve_constraint_for_v(model, us1b, 2, ctx.solver_config("semi:alt"))
    rec.append(CheckRecord("semi-onshell", "different-solutions-proportional", "relBbbp",
                           param_hash(model.xi, us1b, vs1, res2.roots),
                           vec.proportional_solutions_residual(model, us1b, vs1, res2.roots), tol))

    for (a, b) in ((1, 1), (1, 2)):
        us, vs = sols[(a, b)]
        z = ctx.draw(rng, 1, model, extra=us + vs)[0]
        r_m12, r_formula = vec.bg_decomposition_residuals(model, us, vs, z)
        rec.append(CheckRecord("semi-onshell", f"composite-action-decomposition-a{a}-b{b}", "Bg-newB M1 M2",
                               param_hash(model.xi, us, vs, z), r_m12, tol))
        rec.append(CheckRecord("semi-onshell", f"decomposition-matches-formula-a{a}-b{b}", "BVa1 Bg-Maction",
                               param_hash(model.xi, us, vs, z), r_formula, tol))
    return rec


def suite_multi_action(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("multi-action")
    tol = ctx.config.tol_relative
    rec = []
    for length in ctx.lengths():
        model = ctx.model(length)
        for a in (1, 2, 3):
            us = ctx.draw(rng, a, model)
            rec.append(CheckRecord("multi-action", f"explicit-form-a{a}-L{length}", "Bg-Maction",
                                   param_hash(model.xi, us),
                                   vec.multi_action_residual(model, us), tol))

    model = ctx.model()
    for (a, b) in ((1, 1), (2, 2), (1, 2)):
        us = ctx.draw(rng, a, model)
        res = solve_constraint_for_v(model, us, b, ctx.solver_config(f"multi:{a}{b}"))
        ratio, residual = vec.corollary_ratio(model, us, res.roots)
        rec.append(CheckRecord("multi-action", f"state-proportionality-a{a}-b{b}", "Bg-BV",
                               param_hash(model.xi, us, res.roots),
                               max(abs(ratio - 1.0), residual), tol))
    return rec


def suite_onshell(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("onshell")
    model = ctx.model(2)
    tol_eig = ctx.config.tol_eigen
    rec = []
    vac = model.vacuum()

    for (a, b) in ((1, 0), (1, 1), (2, 1)):
        res, us, vs = solve_full(model, a, b, ctx.solver_config(f"onshell:{a}{b}"))
        rec.append(CheckRecord("onshell", f"system-residual-a{a}-b{b}", "AEigenS-1 constV 2constV",
                               param_hash(model.xi, us, vs), res.residual_norm, 1e-10))

        worst_eig = 0.0
        worst_spec = 0.0
        for _ in range(3):
            z = ctx.draw(rng, 1, model, extra=us + vs)[0]
            worst_eig = max(worst_eig, vec.onshell_residual(model, us, vs, z))
            worst_spec = max(worst_spec, vec.transfer_eigenvalue_distance(model, z, us, vs))
        rec.append(CheckRecord("onshell", f"eigenvector-property-a{a}-b{b}", "Left-act tau-def",
                               param_hash(model.xi, us, vs), worst_eig, tol_eig))
        rec.append(CheckRecord("onshell", f"spectrum-match-a{a}-b{b}", "tau-def",
                               param_hash(model.xi, us, vs), worst_spec, tol_eig))

        alphas = [complex(1.0)] + list(ctx.draw(rng, a, model, extra=us + vs))
        rec.append(CheckRecord("onshell", f"determinant-criterion-a{a}-b{b}", "BE-det",
                               param_hash(model.xi, us, vs), max(be_det_residuals(model, us, b, alphas)), 1e-9))

        if (a, b) == (1, 0):
            ref = model.blocks(us[0], "plain")[1, 2] @ vac
            _, prop = hilbert.proportionality(model.b_operator(us[0]) @ vac, model.beta**2 * ref)
            rec.append(CheckRecord("onshell", "composite-action-at-kappa-root", "Bg1T010",
                                   param_hash(model.xi, us), prop, 1e-9))
        if (a, b) == (1, 1):
            ref = model.blocks(us[0], "plain")[1, 3] @ vac
            _, prop = hilbert.proportionality(model.b_operator(us[0]) @ vac,
                                              model.beta * (1.0 - model.kappa) * ref)
            rec.append(CheckRecord("onshell", "composite-action-at-unit-root", "Bg1T011 sysBE",
                                   param_hash(model.xi, us), prop, 1e-9))
    return rec


def suite_solver(ctx: RunContext) -> list[CheckRecord]:
    rng = ctx.rng("solver")
    model = ctx.model(2)
    c, kap, phi = model.c, model.kappa, model.phi
    x1, x2 = model.xi
    rec = []

    # closed-form oracle: lam(u) = kappa is a quadratic in u
    res, us, _ = solve_full(model, 1, 0, ctx.solver_config("solver:10"))
    quad = np.roots([
        phi - kap,
        phi * (2 * c - x1 - x2) + kap * (x1 + x2),
        phi * (c - x1) * (c - x2) - kap * x1 * x2,
    ])
    rec.append(CheckRecord("solver", "closed-form-root-a1-b0", "constV",
                           param_hash(model.xi), float(min(abs(us[0] - r) for r in quad)), 1e-10))

    # closed-form oracle: single constraint f(v, u) = lam(u)/kappa
    u0 = ctx.draw(rng, 1, model)[0]
    resv = solve_constraint_for_v(model, (u0,), 1, ctx.solver_config("solver:v11"))
    v_closed = u0 + c / (model.lam(u0) / kap - 1.0)
    rec.append(CheckRecord("solver", "closed-form-constraint-a1-b1", "constV",
                           param_hash(model.xi, u0), float(abs(resv.roots[0] - v_closed)), 1e-10))

    for (a, b) in ((1, 2), (2, 2)):
        us = ctx.draw(rng, a, model)
        r = solve_constraint_for_v(model, us, b, ctx.solver_config(f"solver:v{a}{b}"))
        rec.append(CheckRecord("solver", f"constraint-solve-a{a}-b{b}", "constV",
                               param_hash(model.xi, us), r.residual_norm, 1e-12))

    res, us, vs = solve_full(model, 1, 1, ctx.solver_config("solver:11"))
    rec.append(CheckRecord("solver", "unit-eigenvalue-at-a1-b1", "sysBE",
                           param_hash(model.xi), float(abs(model.lam(us[0]) - 1.0)), 1e-10))
    rec.append(CheckRecord("solver", "full-system-residual-a1-b1", "AEigenS-1",
                           param_hash(model.xi, us, vs),
                           float(np.linalg.norm(residual_full(model, us, vs))), 1e-12))
    alphas = [complex(1.0)] + list(ctx.draw(rng, 1, model, extra=us + vs))
    rec.append(CheckRecord("solver", "solution-passes-determinant-criterion", "BE-det",
                           param_hash(model.xi, us, vs), max(be_det_residuals(model, us, 1, alphas)), 1e-9))
    return rec


SUITES = {
    "dwpf": suite_dwpf,
    "rtt": suite_rtt,
    "comatrix": suite_comatrix,
    "bg-operator": suite_bg_operator,
    "bethe-vectors": suite_bethe_vectors,
    "duality": suite_duality,
    "actions": suite_actions,
    "semi-onshell": suite_semi_onshell,
    "multi-action": suite_multi_action,
    "onshell": suite_onshell,
    "solver": suite_solver,
}

SUITE_ORDER = tuple(SUITES)

_SUITE_META = {
    "dwpf": ("domain-wall partition function: two-sided summation identity, vanishing determinant, "
             "pole residue, symmetry, decay", ["K-def", "resK", "ident", "identA2", "identA3", "appendix A"]),
    "rtt": ("exchange relation for plain/twisted/hatted blocks, Yang-Baxter, transfer commutativity, "
            "vacuum structure", ["Rmat", "RTT", "trT", "Tjj", "Com3223", "TwMM"]),
    "comatrix": ("quantum minors, cofactor inversion, hatted-block expansions, quantum determinant",
                 ["Sklmin", "SklAldop", "Qmin", "comat", "HT"]),
    "bg-operator": ("composite creation operator: product vs minor form, commutativity, vacuum action",
                    ["Bg", "Bg-ND", "actBg1"]),
    "bethe-vectors": ("partition-sum state constructions: closed forms, expansions, reduced plain form, "
                      "coloring, regularity", ["GBV", "BVtwT", "BVt-expl1", "BVt12", "BVpartr"]),
    "duality": ("hatted/plain state correspondence and the hatted recursion",
                ["hB-B", "two-BVnorm", "Recu2"]),
    "actions": ("action of every monodromy block and two hatted blocks on generic states",
                ["act13", "act12", "act23", "act22", "act11", "act21", "hT13BV", "acthT12", "Lamb"]),
    "semi-onshell": ("first-family-constrained states: three-subset representation, proportionality "
                     "of different solutions, one-more-action decomposition",
                     ["constV", "actBg", "relBbbp", "Bg-newB", "M1", "M2"]),
    "multi-action": ("repeated composite action vs explicit sum; proportionality to constructed states",
                     ["Bg-Maction", "Bg-BV"]),
    "onshell": ("full Bethe-system solutions: eigenvector property, spectrum match, determinant "
                "criterion, composite action at roots",
                ["AEigenS-1", "Left-act", "tau-def", "BE-det", "Bg1T010", "Bg1T011"]),
    "solver": ("Newton solver against closed-form oracles and self-consistency",
               ["constV", "2constV", "sysBE", "AEigenS-1", "BE-det"]),
}


def suite_info() -> list[dict]:
    """Static metadata for every suite, plus the "all" alias."""
    out = []
    for name in SUITE_ORDER:
        desc, anchors = _SUITE_META[name]
        out.append({"name": name, "description": desc, "anchors": anchors})
    out.append({"name": "all", "description": "every suite above, in dependency order",
                "anchors": ["*"]})
    return out


def run_suites(config: RunConfig):
    """Execute the requested suites in dependency order.

    Returns (records, timing).  Raises ConfigError for bad requests and lets
    ConvergenceError from the solver-dependent suites propagate.
    """
    requested = list(config.suites)
    if "all" in requested:
        names = list(SUITE_ORDER)
    else:
        unknown = [s for s in requested if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {unknown}")
        names = [s for s in SUITE_ORDER if s in requested]

    ctx = RunContext(config)
    records = []
    timing = {}
    for name in names:
        t0 = time.perf_counter()
        records.extend(SUITES[name](ctx))
        timing[name] = time.perf_counter() - t0
    return records, timing
