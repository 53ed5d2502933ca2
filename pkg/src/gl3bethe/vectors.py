"""Partition-sum Bethe vectors and the identity checks built on them.

Vector constructions
--------------------
`bethe_vector` evaluates the double partition sum

    B_{a,b}(us; vs) = sum_n sum_{#us_I = #vs_I = n}
        K_n(vs_I | us_I) f(us_I, us_II) f(vs_II, vs_I)
        / (lam2(vs_II) lam2(us) g(vs, us))
        * T13(us_I) T12(us_II) T23(vs_II) |0>

with the model's actual blocks (twisted by default, plain on request);
`hat_bethe_vector` is the same sum over the hatted blocks with
lam2 -> lam1(z) lam3(z - c).  `bethe_vector_expanded` is the equivalent
three-subset single-family sum obtained by resolving the kernel sum,
`bethe_vector_plain` the reduced form for the plain variant (b <= a), and
`bethe_vector_semi_onshell` the three-subset representation valid when the
first Bethe-equation family holds.  `b_operator_state` applies the composite
creation operator repeatedly to the vacuum, and `b_operator_state_formula`
evaluates the equivalent explicit partition sum.

Every weight is assembled from numerator factors (g, f, h) and closed-form
reciprocal factors (inv_g, inv_f, inv_h), so denominators that diverge kill
their term instead of raising.  A Bethe parameter appearing in both families
at the same point is a removable singularity of the sum: the construction
detects exact coincidences and takes the analytic limit by circle averaging
over a small displacement of the offending second-family parameter.

Checks
------
The residual functions (`action_residuals`, `duality_residual`,
`onshell_residual`, `recursion_residual`, `multi_action_residual`,
`corollary_ratio`, `proportional_solutions_residual`,
`bg_decomposition_residuals`) evaluate both sides of the corresponding
operator identity independently and return relative norms; tolerances live
with the callers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hilbert
from .monodromy import ChainModel
from .rational import (
    analytic_circle_mean,
    as_set,
    dwpf,
    f,
    fp,
    g,
    gp,
    hp,
    inv_g,
    inv_h,
    partitions,
    rel_diff,
    separation_scale,
    well_separated,
)

__all__ = [
    "BetheVector",
    "SeparationError",
    "bethe_vector",
    "hat_bethe_vector",
    "bethe_vector_expanded",
    "bethe_vector_plain",
    "bethe_vector_semi_onshell",
    "b_operator_state",
    "b_operator_state_formula",
    "tau_eigenvalue",
    "onshell_residual",
    "transfer_eigenvalue_distance",
    "action_residuals",
    "duality_residual",
    "recursion_residual",
    "multi_action_residual",
    "corollary_ratio",
    "proportional_solutions_residual",
    "bg_decomposition_residuals",
    "coloring_residual",
]

# Exact-coincidence detector for parameters shared between the two families.
COINCIDENCE_TOL = 1e-8


class SeparationError(ValueError):
    """Bethe parameters violate the minimum-separation requirements."""


@dataclass
class BetheVector:
    """A constructed chain state with its provenance."""

    amplitudes: np.ndarray
    u_set: tuple[complex, ...]
    v_set: tuple[complex, ...]
    construction: str
    terms: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def validate_params(model: ChainModel, us, vs, allow_cross_coincidence: bool = True) -> None:
    """Check the separation invariants for a Bethe-parameter pair.

    Within each family, and between each family and the inhomogeneities,
    points must stay eps-separated including their +-c shifts.  Cross-family
    coincidences are allowed by default (the constructions are regular
    there); pass allow_cross_coincidence=False to forbid them too.
    """
    us, vs = as_set(us), as_set(vs)
    c, eps = model.c, separation_scale(model.c)
    for fam in (us, vs):
        if len(fam) > 1 and not well_separated(fam, c, eps):
            raise SeparationError(f"parameters too close within a family: {fam}")
        for x in fam:
            if not well_separated((x,) + model.xi, c, eps):
                raise SeparationError(f"parameter {x} too close to an inhomogeneity")
    if not allow_cross_coincidence:
        if us and vs and not well_separated(us + vs, c, eps):
            raise SeparationError("cross-family parameters too close")


def _apply_blocks(state: np.ndarray, ops) -> np.ndarray:
    """Apply operators right-to-left: ops are listed in reading order."""
    for op in reversed(list(ops)):
        state = op @ state
    return state


def _coincident_pair(us, vs) -> int | None:
    """Index into vs of the first element exactly coinciding with some u."""
    for k, v in enumerate(vs):
        for u in us:
            if abs(u - v) <= COINCIDENCE_TOL * max(1.0, abs(u), abs(v)):
                return k
    return None


def _limit_radius(center: complex, model: ChainModel, others) -> float:
    """Circle radius for analytic limits: well inside the nearest singularity."""
    c = model.c
    pts = []
    for p in list(others) + list(model.xi):
        for s in (0.0, c, -c):
            pts.append(p + s)
    dmin = min(
        (abs(center - p) for p in pts if abs(center - p) > 10 * COINCIDENCE_TOL),
        default=1.0,
    )
    return min(dmin / 8.0, 0.05 * max(1.0, abs(c)))


def _gbv_sum(model: ChainModel, us, vs, get_blocks, lam2_of, tag: str) -> BetheVector:
    us, vs = as_set(us), as_set(vs)
    a, b = len(us), len(vs)
    c = model.c

    k_co = _coincident_pair(us, vs)
    if k_co is not None:
        center = vs[k_co]
        others = us + vs[:k_co] + vs[k_co + 1:]
        radius = _limit_radius(center, model, others)

        def sample(w: complex) -> np.ndarray:
            vv = vs[:k_co] + (w,) + vs[k_co + 1:]
            return _gbv_sum(model, us, vv, get_blocks, lam2_of, tag).amplitudes

        amps = analytic_circle_mean(sample, center, radius)
        terms = _gbv_sum(
            model, us, vs[:k_co] + (center + radius,) + vs[k_co + 1:], get_blocks, lam2_of, tag
        ).terms
        return BetheVector(amps, us, vs, tag, terms)

    vac = model.vacuum()
    norm_g = gp(vs, us, c)
    lam2_us = complex(np.prod([lam2_of(u) for u in us])) if us else complex(1.0)
    total = np.zeros(model.dim, dtype=complex)
    terms = 0
    for n in range(min(a, b) + 1):
        for u1, u2 in partitions(us, (n, a - n)):
            for v1, v2 in partitions(vs, (n, b - n)):
                lam2_v2 = complex(np.prod([lam2_of(v) for v in v2])) if v2 else complex(1.0)
                coeff = (
                    dwpf(v1, u1, c)
                    * fp(u1, u2, c)
                    * fp(v2, v1, c)
                    / (lam2_v2 * lam2_us * norm_g)
                )
                ops = (
                    [get_blocks(u)[1, 3] for u in u1]
                    + [get_blocks(u)[1, 2] for u in u2]
                    + [get_blocks(v)[2, 3] for v in v2]
                )
                total += coeff * _apply_blocks(vac, ops)
                terms += 1
    return BetheVector(total, us, vs, tag, terms)


def bethe_vector(model: ChainModel, us, vs, variant: str = "twisted") -> BetheVector:
    """Double partition-sum Bethe vector B_{a,b}(us; vs) from the model's blocks."""
    validate_params(model, us, vs)
    return _gbv_sum(
        model,
        us,
        vs,
        lambda u: model.blocks(u, variant),
        model.lam2,
        f"partition-sum[{variant}]",
    )


def hat_bethe_vector(model: ChainModel, us, vs, base: str = "twisted") -> BetheVector:
    """Bethe vector of the hatted monodromy, with lam2 -> lam1(z) lam3(z-c)."""
    validate_params(model, us, vs)
    return _gbv_sum(
        model,
        us,
        vs,
        lambda u: model.hat_blocks(u, base),
        model.lam_hat2,
        f"partition-sum[hat-{base}]",
    )


def bethe_vector_expanded(model: ChainModel, us, vs, variant: str = "twisted", n_max: int | None = None) -> BetheVector:
    """Three-subset expansion of the twisted-model Bethe vector.

        B_{a,b} = sum_{n=0}^{a} beta^{b-n} / (kappa^{a+b-n} g(vs, us))
                  sum over us => {A, B, C}, #A = s, #B = n - s, of
                  (-1)^{n-s} f(A, B) f(vs, A) f(A, C) f(B, C)
                  * T13(A) T13(B) T12(C) |0>.

    Terms with n > b vanish identically; `n_max` truncates the outer sum for
    verifying that.
    """
    validate_params(model, us, vs)
    us, vs = as_set(us), as_set(vs)
    a, b = len(us), len(vs)
    c, kap, bet = model.c, model.kappa, model.beta
    blocks = lambda u: model.blocks(u, variant)
    vac = model.vacuum()
    norm_g = gp(vs, us, c)
    total = np.zeros(model.dim, dtype=complex)
    terms = 0
    top = a if n_max is None else min(a, n_max)
    for n in range(top + 1):
        pref = bet ** (b - n) / (kap ** (a + b - n) * norm_g)
        for s in range(n + 1):
            for ua, ub, uc in partitions(us, (s, n - s, a - n)):
                coeff = (
                    pref
                    * (-1) ** (n - s)
                    * fp(ua, ub, c)
                    * fp(vs, ua, c)
                    * fp(ua, uc, c)
                    * fp(ub, uc, c)
                )
                ops = (
                    [blocks(u)[1, 3] for u in ua]
                    + [blocks(u)[1, 3] for u in ub]
                    + [blocks(u)[1, 2] for u in uc]
                )
                total += coeff * _apply_blocks(vac, ops)
                terms += 1
    return BetheVector(total, us, vs, "three-subset-expansion", terms)


def bethe_vector_plain(model: ChainModel, us, vs) -> BetheVector:
    """Reduced Bethe vector of the plain (untwisted) variant; needs b <= a.

        B0_{a,b}(us; vs) = sum_{#us_I = b} K_b(vs | us_I) f(us_I, us_II)
                           / (kappa^a g(vs, us)) * T13(us_I) T12(us_II) |0>.
    """
    validate_params(model, us, vs)
    us, vs = as_set(us), as_set(vs)
    a, b = len(us), len(vs)
    if b > a:
        raise ValueError(f"plain-variant states need b <= a, got ({a}, {b})")
    c = model.c
    blocks = lambda u: model.blocks(u, "plain")
    vac = model.vacuum()
    denom = model.kappa**a * gp(vs, us, c)
    total = np.zeros(model.dim, dtype=complex)
    terms = 0
    for u1, u2 in partitions(us, (b, a - b)):
        coeff = dwpf(vs, u1, c) * fp(u1, u2, c) / denom
        ops = [blocks(u)[1, 3] for u in u1] + [blocks(u)[1, 2] for u in u2]
        total += coeff * _apply_blocks(vac, ops)
        terms += 1
    return BetheVector(total, us, vs, "plain-reduced", terms)


def _three_subset_state_sum(model: ChainModel, us, prefactor_of_n) -> tuple[np.ndarray, int]:
    """Common core of the semi-on-shell and multi-action expansions.

    sum_{n=0}^{a} prefactor_of_n(n) sum_{s=0}^{n} sum over us => {A, B, C}
        (-kappa)^{n-s} lam(A) f(B, A) f(C, A) f(B, C)
        * T13(A) T13(B) T12(C) |0>
    over the twisted blocks.
    """
    us = as_set(us)
    a = len(us)
    c, kap = model.c, model.kappa
    blocks = lambda u: model.blocks(u, "twisted")
    vac = model.vacuum()
    total = np.zeros(model.dim, dtype=complex)
    terms = 0
    for n in range(a + 1):
        pref = prefactor_of_n(n)
        for s in range(n + 1):
            for ua, ub, uc in partitions(us, (s, n - s, a - n)):
                lam_a = complex(np.prod([model.lam(u) for u in ua])) if ua else complex(1.0)
                coeff = (
                    pref
                    * (-kap) ** (n - s)
                    * lam_a
                    * fp(ub, ua, c)
                    * fp(uc, ua, c)
                    * fp(ub, uc, c)
                )
                ops = (
                    [blocks(u)[1, 3] for u in ua]
                    + [blocks(u)[1, 3] for u in ub]
                    + [blocks(u)[1, 2] for u in uc]
                )
                total += coeff * _apply_blocks(vac, ops)
                terms += 1
    return total, terms


def bethe_vector_semi_onshell(model: ChainModel, us, vs) -> BetheVector:
    """Three-subset representation of B_{a,b}(us; vs), valid on the first
    Bethe-equation family.

    The second-family parameters enter only through the scalar
    beta^(b-n) / (kappa^(a+b) g(vs, us)) prefactors; the caller is
    responsible for supplying vs that actually solve the constraint.
    """
    validate_params(model, us, vs)
    us, vs = as_set(us), as_set(vs)
    a, b = len(us), len(vs)
    base = 1.0 / (model.kappa ** (a + b) * gp(vs, us, model.c))
    amps, terms = _three_subset_state_sum(model, us, lambda n: model.beta ** (b - n) * base)
    return BetheVector(amps, us, vs, "semi-on-shell", terms)


def b_operator_state(model: ChainModel, us) -> BetheVector:
    """State produced by acting with the composite operator at each point of us."""
    us = as_set(us)
    validate_params(model, us, ())
    state = model.vacuum()
    for u in us:
        state = model.b_operator(u) @ state
    return BetheVector(state, us, (), "composite-operator-action", len(us))


def b_operator_state_formula(model: ChainModel, us) -> BetheVector:
    """Explicit partition-sum form of the repeated composite-operator action:
    prefactor beta^(2a-n) on the three-subset sum."""
    us = as_set(us)
    validate_params(model, us, ())
    a = len(us)
    amps, terms = _three_subset_state_sum(model, us, lambda n: model.beta ** (2 * a - n))
    return BetheVector(amps, us, (), "composite-operator-formula", terms)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------


def tau_eigenvalue(model: ChainModel, z, us, vs) -> complex:
    """Transfer-matrix eigenvalue on an on-shell state:

    tau(z) = lam(z) f(us, z) + kappa f(z, us) f(vs, z) + f(z, vs).
    """
    c = model.c
    return (
        model.lam(z) * fp(us, z, c)
        + model.kappa * fp(z, us, c) * fp(vs, z, c)
        + fp(z, vs, c)
    )


def onshell_residual(model: ChainModel, us, vs, z, variant: str = "twisted") -> float:
    """|| T(z) B - tau(z) B || / || B || for the partition-sum vector."""
    vec = bethe_vector(model, us, vs, variant).amplitudes
    t = model.transfer_matrix(z, variant)
    tau = tau_eigenvalue(model, z, us, vs)
    return float(np.linalg.norm(t @ vec - tau * vec) / np.linalg.norm(vec))


def transfer_eigenvalue_distance(model: ChainModel, z, us, vs) -> float:
    """Distance from tau(z) to the nearest point of the dense transfer spectrum."""
    tau = tau_eigenvalue(model, z, us, vs)
    spec = np.linalg.eigvals(model.transfer_matrix(z))
    return float(np.min(np.abs(spec - tau)) / max(1.0, abs(tau)))


def _lam_factor(model: ChainModel, vs, z, us) -> complex:
    return model.kappa / (hp(vs, z, model.c) * hp(z, us, model.c))


def action_residuals(model: ChainModel, us, vs, z, variant: str = "twisted", which=None) -> dict[str, float]:
    """Relative residuals of the block-action identities on B_{a,b}(us; vs).

    Keys: "T13", "T12", "T23", "T22", "T11", "T21", "hatT13", "hatT12".
    LHS applies the block at z to the partition-sum vector; RHS rebuilds the
    stated combination of Bethe vectors on the enlarged parameter sets
    eta = {z} + us, xi = {z} + vs.
    """
    us, vs = as_set(us), as_set(vs)
    z = complex(z)
    c = model.c
    blk = model.blocks(z, variant)
    hat = model.hat_blocks(z, variant)
    base = bethe_vector(model, us, vs, variant).amplitudes
    bv = lambda uu, vv: bethe_vector(model, uu, vv, variant).amplitudes
    lam_z = _lam_factor(model, vs, z, us)
    eta = (z,) + us
    xi = (z,) + vs
    out: dict[str, float] = {}
    wanted = set(which) if which is not None else None

    def want(name: str) -> bool:
        return wanted is None or name in wanted

    if want("T13"):
        rhs = lam_z * bv(eta, xi)
        out["T13"] = rel_diff(blk[1, 3] @ base, rhs)

    if want("T12"):
        rhs = np.zeros(model.dim, dtype=complex)
        for i, w in enumerate(xi):
            rest = xi[:i] + xi[i + 1:]
            coeff = lam_z * fp(rest, w, c) * hp(w, eta, c) * inv_h(z, w, c)
            rhs += coeff * bv(eta, rest)
        out["T12"] = rel_diff(blk[1, 2] @ base, rhs)

    if want("T23"):
        rhs = np.zeros(model.dim, dtype=complex)
        for i, x in enumerate(eta):
            rest = eta[:i] + eta[i + 1:]
            coeff = lam_z * fp(x, rest, c) * hp(xi, x, c) * inv_h(x, z, c)
            rhs += coeff * bv(rest, xi)
        out["T23"] = rel_diff(blk[2, 3] @ base, rhs)

    if want("T22"):
        rhs = np.zeros(model.dim, dtype=complex)
        for i, x in enumerate(eta):
            eta2 = eta[:i] + eta[i + 1:]
            for jj, w in enumerate(xi):
                xi2 = xi[:jj] + xi[jj + 1:]
                coeff = (
                    lam_z
                    * fp(x, eta2, c)
                    * fp(xi2, w, c)
                    * hp(w, eta, c)
                    * hp(xi2, x, c)
                    * inv_h(z, w, c)
                    * inv_h(x, z, c)
                )
                rhs += coeff * bv(eta2, xi2)
        out["T22"] = rel_diff(blk[2, 2] @ base, rhs)

    if want("T11"):
        rhs = np.zeros(model.dim, dtype=complex)
        for i, x in enumerate(eta):
            eta2 = eta[:i] + eta[i + 1:]
            for jj, w in enumerate(xi):
                xi2 = xi[:jj] + xi[jj + 1:]
                inv_g_fac = complex(np.prod([inv_g(q, x, c) for q in xi2])) if xi2 else complex(1.0)
                coeff = (
                    lam_z
                    * (model.lam(x) / model.kappa)
                    * fp(eta2, x, c)
                    * fp(xi2, w, c)
                    * hp(w, eta2, c)
                    * inv_g_fac
                    * inv_h(z, w, c)
                )
                rhs += coeff * bv(eta2, xi2)
        out["T11"] = rel_diff(blk[1, 1] @ base, rhs)

    if want("T21"):
        rhs = np.zeros(model.dim, dtype=complex)
        for i, x in enumerate(eta):
            for jj, y in enumerate(eta):
                if jj == i:
                    continue
                eta3 = tuple(q for kq, q in enumerate(eta) if kq not in (i, jj))
                for kk, w in enumerate(xi):
                    xi2 = xi[:kk] + xi[kk + 1:]
                    inv_g_fac = complex(np.prod([inv_g(q, x, c) for q in xi2])) if xi2 else complex(1.0)
                    coeff = (
                        lam_z
                        * (model.lam(x) / model.kappa)
                        * f(y, x, c)
                        * fp(y, eta3, c)
                        * fp(eta3, x, c)
                        * fp(xi2, w, c)
                        * inv_g_fac
                        * inv_h(y, z, c)
                        * inv_h(z, w, c)
                        * hp(w, y, c)
                        * hp(w, eta3, c)
                        * hp(xi2, y, c)
                    )
                    rhs += coeff * bv(eta3, xi2)
        out["T21"] = rel_diff(blk[2, 1] @ base, rhs)

    if want("hatT13"):
        a, b = len(us), len(vs)
        inv_h_fac = complex(np.prod([inv_h(u, z, c) for u in us])) if us else complex(1.0)
        coeff = (
            (-1) ** (a + b + 1)
            * model.kappa**2
            * gp(z, vs, c)
            * inv_h_fac
        )
        rhs = coeff * bv(us + (z,), vs + (z - c,))
        out["hatT13"] = rel_diff(hat[1, 3] @ base, rhs)

    if want("hatT12"):
        a = len(us)
        rhs = (-1) ** (a + 1) * model.kappa * (
            model.lam(z) * gp(us, z, c) * bv(us, vs + (z - c,))
        )
        tail = np.zeros(model.dim, dtype=complex)
        for j, uj in enumerate(us):
            us_j = us[:j] + us[j + 1:]
            inv_g_fac = complex(np.prod([inv_g(v, uj, c) for v in vs])) if vs else complex(1.0)
            inv_h_fac = complex(np.prod([inv_h(u, z, c) for u in us_j])) if us_j else complex(1.0)
            coeff = (
                (model.lam(uj) / model.kappa)
                * g(z, uj, c)
                * fp(us_j, uj, c)
                * inv_g_fac
                * inv_h_fac
            )
            tail += coeff * bv(us_j + (z,), vs + (z - c,))
        rhs = rhs + (-1) ** (a + 1) * model.kappa * (model.kappa * gp(vs, z, c) * tail)
        out["hatT12"] = rel_diff(hat[1, 2] @ base, rhs)

    return out


def duality_residual(model: ChainModel, us, vs, base: str = "twisted") -> float:
    """Residual of the hatted/plain Bethe-vector correspondence:

    Bhat_{b,a}(vs + c; us) = (-1)^(a+b+ab) kappa^(a+b) / lam(us)
                             * B_{a,b}(us; vs).
    """
    us, vs = as_set(us), as_set(vs)
    a, b = len(us), len(vs)
    lhs = hat_bethe_vector(model, tuple(v + model.c for v in vs), us, base).amplitudes
    lam_us = complex(np.prod([model.lam(u) for u in us])) if us else complex(1.0)
    coeff = (-1) ** (a + b + a * b) * model.kappa ** (a + b) / lam_us
    rhs = coeff * bethe_vector(model, us, vs, base).amplitudes
    return rel_diff(lhs, rhs)


def recursion_residual(model: ChainModel, us, vs, z) -> float:
    """Residual of the hatted-vector recursion in the first family:

    lamhat2(z) g(us, z) Bhat_{b+1,a}({vs+c, z}; us)
      = hatT12(z) Bhat_{b,a}(vs+c; us)
      + sum_j g(u_j, z) f(us_j, u_j) / g(u_j, vs)
              * hatT13(z) Bhat_{b,a-1}(vs+c; us_j).
    """
    us, vs = as_set(us), as_set(vs)
    z = complex(z)
    c = model.c
    vshift = tuple(v + c for v in vs)
    hat = model.hat_blocks(z, "twisted")
    lhs = model.lam_hat2(z) * gp(us, z, c) * hat_bethe_vector(model, vshift + (z,), us).amplitudes
    rhs = hat[1, 2] @ hat_bethe_vector(model, vshift, us).amplitudes
    for j, uj in enumerate(us):
        us_j = us[:j] + us[j + 1:]
        inv_g_fac = complex(np.prod([inv_g(uj, v, c) for v in vs])) if vs else complex(1.0)
        coeff = g(uj, z, c) * fp(us_j, uj, c) * inv_g_fac
        rhs = rhs + coeff * (hat[1, 3] @ hat_bethe_vector(model, vshift, us_j).amplitudes)
    return rel_diff(lhs, rhs)


def multi_action_residual(model: ChainModel, us) -> float:
    """Direct repeated action of the composite operator vs its partition-sum form."""
    lhs = b_operator_state(model, us).amplitudes
    rhs = b_operator_state_formula(model, us).amplitudes
    return rel_diff(lhs, rhs)


def corollary_ratio(model: ChainModel, us, vs) -> tuple[complex, float]:
    """Fit of B^(us)|0> against beta^(2a-b) kappa^(a+b) g(vs, us) B_{a,b}(us; vs).

    On a first-family solution the two coincide; returns (ratio, residual)
    with ratio ~ 1.
    """
    us, vs = as_set(us), as_set(vs)
    a, b = len(us), len(vs)
    lhs = b_operator_state(model, us).amplitudes
    coeff = model.beta ** (2 * a - b) * model.kappa ** (a + b) * gp(vs, us, model.c)
    rhs = coeff * bethe_vector(model, us, vs).amplitudes
    return hilbert.proportionality(lhs, rhs)


def proportional_solutions_residual(model: ChainModel, us, vs1, vs2) -> float:
    """Two first-family solutions give proportional states:

    kappa^(b2-b1) g(vs2, us) B_{a,b2}(us; vs2)
      = beta^(b2-b1) g(vs1, us) B_{a,b1}(us; vs1).
    """
    us, vs1, vs2 = as_set(us), as_set(vs1), as_set(vs2)
    b1, b2 = len(vs1), len(vs2)
    c = model.c
    lhs = model.kappa ** (b2 - b1) * gp(vs2, us, c) * bethe_vector(model, us, vs2).amplitudes
    rhs = model.beta ** (b2 - b1) * gp(vs1, us, c) * bethe_vector(model, us, vs1).amplitudes
    return rel_diff(lhs, rhs)


def bg_decomposition_residuals(model: ChainModel, us, vs, z) -> tuple[float, float]:
    """Check the two-term decomposition of one more composite-operator action
    on a first-family state.

    direct = B^(z) B^(us)|0>;
    M1 = beta^(2a-b) kappa^(a+b+1) g(vs, us) lam(z) g(z, us)
         * T13(z) B_{a,b+1}(us; {vs, z-c});
    M2 = beta^(2a-b) kappa^(a+b+3) g(vs, us) g(vs, z) / h(us, z)
         * lim_{w -> z} g(us, w) g(z, w) B_{a+1,b+2}({us, z}; {vs, z-c, w}).

    Returns (residual of direct vs M1+M2, residual of direct vs the explicit
    multi-action partition sum on {us, z}).
    """
    us, vs = as_set(us), as_set(vs)
    z = complex(z)
    a, b = len(us), len(vs)
    c, kap, bet = model.c, model.kappa, model.beta

    direct = model.b_operator(z) @ b_operator_state(model, us).amplitudes

    g_vu = gp(vs, us, c)
    t13 = model.blocks(z, "twisted")[1, 3]
    m1 = (
        bet ** (2 * a - b)
        * kap ** (a + b + 1)
        * g_vu
        * model.lam(z)
        * gp(z, us, c)
        * (t13 @ bethe_vector(model, us, vs + (z - c,)).amplitudes)
    )

    inv_h_fac = complex(np.prod([inv_h(u, z, c) for u in us])) if us else complex(1.0)
    radius = _limit_radius(z, model, us + vs + (z - c,))

    def sample(w: complex) -> np.ndarray:
        amp = bethe_vector(model, us + (z,), vs + (z - c, w)).amplitudes
        return gp(us, w, c) * g(z, w, c) * amp

    limit = analytic_circle_mean(sample, z, radius)
    m2 = bet ** (2 * a - b) * kap ** (a + b + 3) * g_vu * gp(vs, z, c) * inv_h_fac * limit

    res_m12 = rel_diff(direct, m1 + m2)
    res_formula = rel_diff(direct, b_operator_state_formula(model, us + (z,)).amplitudes)
    return res_m12, res_formula


def coloring_residual(model: ChainModel, amplitudes: np.ndarray, a: int, b: int) -> float:
    """Residual of the state against the (a, b) weight sector."""
    n1, n2 = hilbert.weight_operators(model.length)
    nrm = np.linalg.norm(amplitudes)
    r1 = np.linalg.norm(n1 @ amplitudes - a * amplitudes) / nrm
    r2 = np.linalg.norm(n2 @ amplitudes - b * amplitudes) / nrm
    return float(max(r1, r2))
