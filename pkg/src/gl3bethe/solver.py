"""Residuals and Newton solution of the Bethe-equation systems.

The full system for parameters (us, vs) with vacuum data (lam, kappa, 1):

    lam(u_j) = kappa * f(u_j, us_j) / f(us_j, u_j) * f(vs, u_j),   j = 1..a
    kappa * f(v_k, us) = f(v_k, vs_k) / f(vs_k, v_k),              k = 1..b

written as complex residual components that vanish exactly on shell.  The
first family alone ("constraint mode") is what semi-on-shell states need; it
is solved for vs at fixed generic us, where b >= a makes the system
underdetermined and Newton steps use the minimum-norm least-squares solve.

Newton iterates on stacked real/imaginary coordinates with a central
finite-difference Jacobian and a halving line search.  Multistart seeds
initial guesses near the chain inhomogeneities (displaced by ~|c|) plus
fully random annulus draws; the first converged, collision-free solution
wins, and roots are returned sorted by (real, imag).

`be_det_residuals` evaluates the determinant criterion equivalent to the
on-shell system: for any scalar alpha,

    det_a[ delta_jk + alpha lam(u_j) f(us_j, u_j) / h(u_k, u_j) ]
      = (1 + alpha)^b (1 + alpha kappa)^(a - b).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .monodromy import ChainModel
from .rational import draw_points, f, fp, h, separation_scale, well_separated

__all__ = [
    "SolverConfig",
    "SolveResult",
    "ConvergenceError",
    "residual_full",
    "residual_constraint",
    "newton",
    "solve_constraint_for_v",
    "solve_full",
    "be_det_residuals",
]


@dataclass
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 100
    damping: float = 1.0
    fd_step: float = 1e-7
    jacobian: str = "finite-difference"  # or "broyden"
    seed: int = 0
    n_starts: int = 40

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")
        if self.jacobian not in ("finite-difference", "broyden"):
            raise ValueError(f"unknown jacobian mode {self.jacobian!r}")


@dataclass
class SolveResult:
    roots: tuple[complex, ...]
    residual_norm: float
    iterations: int
    converged: bool
    start_index: int = -1
    history: list[float] = field(default_factory=list)


class ConvergenceError(RuntimeError):
    """No start converged to a collision-free root within the budget."""

    def __init__(self, msg: str, best: SolveResult | None = None):
        super().__init__(msg)
        self.best = best


def residual_full(model: ChainModel, us, vs) -> np.ndarray:
    """Complex residual vector of the full system, length a + b."""
    us = tuple(complex(u) for u in us)
    vs = tuple(complex(v) for v in vs)
    c, kap = model.c, model.kappa
    out = []
    for j, uj in enumerate(us):
        rest = us[:j] + us[j + 1:]
        out.append(model.lam(uj) - kap * fp(uj, rest, c) / fp(rest, uj, c) * fp(vs, uj, c))
    for k, vk in enumerate(vs):
        rest = vs[:k] + vs[k + 1:]
        out.append(kap * fp(vk, us, c) - fp(vk, rest, c) / fp(rest, vk, c))
    return np.asarray(out, dtype=complex)


def residual_constraint(model: ChainModel, us, vs) -> np.ndarray:
    """Complex residuals of the first family only (length a), us held fixed."""
    us = tuple(complex(u) for u in us)
    vs = tuple(complex(v) for v in vs)
    c, kap = model.c, model.kappa
    out = []
    for j, uj in enumerate(us):
        rest = us[:j] + us[j + 1:]
        out.append(model.lam(uj) - kap * fp(uj, rest, c) / fp(rest, uj, c) * fp(vs, uj, c))
    return np.asarray(out, dtype=complex)


def _c2r(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag])


def _r2c(x: np.ndarray) -> np.ndarray:
    n = x.size // 2
    return x[:n] + 1j * x[n:]


def _fd_jacobian(fun, x: np.ndarray, fx: np.ndarray, step: float) -> np.ndarray:
    m, n = fx.size, x.size
    jac = np.empty((m, n))
    for k in range(n):
        hk = step * (1.0 + abs(x[k]))
        xp = x.copy()
        xm = x.copy()
        xp[k] += hk
        xm[k] -= hk
        jac[:, k] = (fun(xp) - fun(xm)) / (2.0 * hk)
    return jac


def newton(fun_c, z0, cfg: SolverConfig) -> SolveResult:
    """Damped Newton on a complex system fun_c: C^n -> C^m.

    Works on stacked real coordinates; non-square systems take the
    minimum-norm least-squares step.  Residual evaluations that raise
    (pole collisions during line search) count as failed trial steps.
    """
    z0 = np.asarray(z0, dtype=complex)

    def fun_r(x: np.ndarray) -> np.ndarray:
        return _c2r(np.asarray(fun_c(_r2c(x)), dtype=complex))

    x = _c2r(z0)
    try:
        fx = fun_r(x)
    except Exception:
        return SolveResult(tuple(z0), np.inf, 0, False)
    norm = float(np.linalg.norm(fx))
    history = [norm]
    jac = None

    for it in range(1, cfg.max_iter + 1):
        if norm <= cfg.tol:
            return SolveResult(tuple(_r2c(x)), norm, it - 1, True, history=history)
        if cfg.jacobian == "finite-difference" or jac is None:
            try:
                jac = _fd_jacobian(fun_r, x, fx, cfg.fd_step)
            except Exception:
                return SolveResult(tuple(_r2c(x)), norm, it, False, history=history)
        try:
            step_full, *_ = np.linalg.lstsq(jac, -fx, rcond=None)
        except np.linalg.LinAlgError:
            return SolveResult(tuple(_r2c(x)), norm, it, False, history=history)
        if not np.all(np.isfinite(step_full)):
            return SolveResult(tuple(_r2c(x)), norm, it, False, history=history)

        lam = cfg.damping
        accepted = False
        for _ in range(12):
            x_new = x + lam * step_full
            try:
                fx_new = fun_r(x_new)
            except Exception:
                lam *= 0.5
                continue
            norm_new = float(np.linalg.norm(fx_new))
            if norm_new < norm or norm_new <= cfg.tol:
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            return SolveResult(tuple(_r2c(x)), norm, it, False, history=history)

        if cfg.jacobian == "broyden":
            dx = x_new - x
            dfx = fx_new - fx
            denom = float(dx @ dx)
            if denom > 0:
                jac = jac + np.outer(dfx - jac @ dx, dx) / denom
        x, fx, norm = x_new, fx_new, norm_new
        history.append(norm)

    converged = norm <= cfg.tol
    return SolveResult(tuple(_r2c(x)), norm, cfg.max_iter, converged, history=history)


def _sorted_roots(roots) -> tuple[complex, ...]:
    return tuple(sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12))))


def _collision_free(model: ChainModel, us, vs) -> bool:
    pts = tuple(us) + tuple(vs) + model.xi
    return well_separated(pts, model.c, separation_scale(model.c))


def solve_constraint_for_v(model: ChainModel, us, b: int, cfg: SolverConfig | None = None) -> SolveResult:
    """Solve the first Bethe-equation family for vs at fixed generic us.

    For b >= a the system is solvable for generic us; returns the first
    collision-free Newton solution over the multistart schedule.
    """
    cfg = cfg or SolverConfig()
    us = tuple(complex(u) for u in us)
    rng = np.random.default_rng(cfg.seed)
    fun = lambda vs: residual_constraint(model, us, vs)

    best: SolveResult | None = None
    for start in range(cfg.n_starts):
        if start < cfg.n_starts // 2:
            # near the us shifted by ~c, where the constraint factors are O(1)
            base = [us[rng.integers(len(us))] + model.c * (1.0 + 0.5 * _cnormal(rng)) for _ in range(b)]
        else:
            base = list(draw_points(rng, b, model.c, avoid=us + model.xi))
        res = newton(fun, np.asarray(base, dtype=complex), cfg)
        if best is None or res.residual_norm < best.residual_norm:
            best = res
        if res.converged and _collision_free(model, us, res.roots):
            return SolveResult(
                _sorted_roots(res.roots), res.residual_norm, res.iterations, True, start, res.history
            )
    raise ConvergenceError(
        f"constraint solve (a={len(us)}, b={b}) did not converge in {cfg.n_starts} starts", best
    )


def solve_full(model: ChainModel, a: int, b: int, cfg: SolverConfig | None = None) -> tuple[SolveResult, tuple[complex, ...], tuple[complex, ...]]:
    """Solve the full on-shell system for (us, vs); returns (result, us, vs).

    Roots colliding with each other or with the inhomogeneities (within the
    separation scale, including +-c shifts) are rejected and re-seeded.
    """
    cfg = cfg or SolverConfig()
    rng = np.random.default_rng(cfg.seed)

    def fun(z: np.ndarray) -> np.ndarray:
        return residual_full(model, z[:a], z[a:])

    best: SolveResult | None = None
    for start in range(cfg.n_starts):
        # Roots cluster near inhomogeneity shifts; collided-root attractors
        # dominate when two guesses share a center, so centers are sampled
        # without replacement whenever possible.
        centers = rng.permutation(model.length)
        us0 = [
            model.xi[centers[k % model.length]] + 0.6 * abs(model.c) * _cnormal(rng)
            for k in range(a)
        ]
        if start < cfg.n_starts // 2 and a:
            vs0 = [us0[k % a] + model.c * (1.0 + 0.5 * _cnormal(rng)) for k in range(b)]
        else:
            vs0 = list(draw_points(rng, b, model.c, avoid=model.xi))
        res = newton(fun, np.asarray(us0 + vs0, dtype=complex), cfg)
        if best is None or res.residual_norm < best.residual_norm:
            best = res
        if res.converged:
            us = _sorted_roots(res.roots[:a])
            vs = _sorted_roots(res.roots[a:])
            if _collision_free(model, us, vs):
                out = SolveResult(us + vs, res.residual_norm, res.iterations, True, start, res.history)
                return out, us, vs
    raise ConvergenceError(f"full solve (a={a}, b={b}) did not converge in {cfg.n_starts} starts", best)


def _cnormal(rng: np.random.Generator) -> complex:
    return complex(rng.normal(), rng.normal())


def be_det_residuals(model: ChainModel, us, b: int, alphas) -> list[float]:
    """Scaled residuals of the determinant criterion at each sampled alpha.

    Both sides are degree-a polynomials in alpha, so agreement at a + 1
    distinct points certifies the identity.
    """
    us = tuple(complex(u) for u in us)
    a = len(us)
    c, kap = model.c, model.kappa
    out = []
    for alpha in alphas:
        alpha = complex(alpha)
        mat = np.eye(a, dtype=complex)
        for j, uj in enumerate(us):
            rest = us[:j] + us[j + 1:]
            row = alpha * model.lam(uj) * fp(rest, uj, c)
            for k, uk in enumerate(us):
                mat[j, k] += row / h(uk, uj, c)
        lhs = complex(np.linalg.det(mat))
        rhs = (1.0 + alpha) ** b * (1.0 + alpha * kap) ** (a - b)
        out.append(abs(lhs - rhs) / max(1.0, abs(rhs)))
    return out
