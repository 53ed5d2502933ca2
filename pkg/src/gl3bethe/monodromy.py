"""Rational R-matrix, inhomogeneous-chain monodromy, quantum minors, and the
composite creation operator built from them.

Model
-----
The chain carries the fundamental C^3 representation at each of L sites with
pairwise distinct inhomogeneities xi_k.  The bare monodromy is the ordered
product over the auxiliary space 0,

    T_chain(u) = R_{0L}(u, xi_L) ... R_{01}(u, xi_1),
    R(u, v) = I + g(u, v) P,

premultiplied by the diagonal twist D = diag(phi, kappa, 1) in the auxiliary
space ("plain" variant, written T0).  On the reference state this gives
vacuum eigenvalues

    lam1(u) = phi * prod_k f(u, xi_k),   lam2 = kappa,   lam3 = 1,

with every lower block annihilating the vacuum.  The entry phi must be
generic (in particular different from 1 and from kappa) for every weight
sector to carry its own distinct-root Bethe description: equal diagonal
twist entries leave a residual rotation between the corresponding
components, and the states of some sectors then degenerate into descendants
without finite Bethe roots.  The "twisted" variant
conjugates by K = I + beta/(1 - kappa) E23, which leaves the vacuum
eigenvalues and the transfer matrix unchanged but turns the (2,3) block into
beta * identity on the vacuum.  That nonzero action is what lets the
composite operator returned by `b_operator` create states.

Quantum minors follow the two-point antisymmetrized form

    minor[(j1,j2),(k1,k2)](u) = T_{j1 k1}(u) T_{j2 k2}(u-c)
                              - T_{j1 k2}(u) T_{j2 k1}(u-c),

which vanishes identically for j1 = j2, is antisymmetric under k1 <-> k2,
and acts on the vacuum through ordered products of the eigenvalues.  The
comatrix is cofactor-built from these minors and inverts the monodromy up to
the scalar quantum determinant; `hat_blocks` is its secondary-diagonal
transpose and satisfies the same exchange relation.
"""

from __future__ import annotations

import numpy as np

from . import hilbert
from .rational import f, fp, g, rel_diff, well_separated

__all__ = [
    "permutation_matrix",
    "r_matrix",
    "yang_baxter_residual",
    "MonodromyBlocks",
    "ChainModel",
    "rtt_residual",
    "InternalConsistencyError",
]

_COMPLEMENT = {1: (2, 3), 2: (1, 3), 3: (1, 2)}


class InternalConsistencyError(RuntimeError):
    """Two independent constructions of the same operator disagree."""


def permutation_matrix() -> np.ndarray:
    """The 9x9 permutation P(x tensor y) = y tensor x on C^3 x C^3."""
    p = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            p[3 * i + j, 3 * j + i] = 1.0
    return p


_P9 = permutation_matrix()


def r_matrix(u: complex, v: complex, c: complex = 1.0) -> np.ndarray:
    """R(u, v) = I + g(u, v) P on C^3 x C^3."""
    return np.eye(9, dtype=complex) + g(u, v, c) * _P9


def yang_baxter_residual(u: complex, v: complex, w: complex, c: complex = 1.0) -> float:
    """Relative residual of R12 R13 R23 = R23 R13 R12 on (C^3)^3."""
    r12 = hilbert.embed_two_site(r_matrix(u, v, c), 1, 2, 3)
    r13 = hilbert.embed_two_site(r_matrix(u, w, c), 1, 3, 3)
    r23 = hilbert.embed_two_site(r_matrix(v, w, c), 2, 3, 3)
    return rel_diff(r12 @ r13 @ r23, r23 @ r13 @ r12)


class MonodromyBlocks:
    """3x3 array of chain-space operators, indexed 1-based: blocks[i, j]."""

    __slots__ = ("point", "variant", "_entries")

    def __init__(self, point: complex, variant: str, entries):
        self.point = complex(point)
        self.variant = variant
        self._entries = entries  # nested 3x3 list of ndarrays

    def __getitem__(self, ij: tuple[int, int]) -> np.ndarray:
        i, j = ij
        return self._entries[i - 1][j - 1]

    def trace(self) -> np.ndarray:
        return self._entries[0][0] + self._entries[1][1] + self._entries[2][2]

    def as_full(self) -> np.ndarray:
        """Operator on aux x chain, auxiliary leg slowest."""
        rows = [np.hstack(row) for row in self._entries]
        return np.vstack(rows)


class ChainModel:
    """Finite inhomogeneous chain with a diagonal and a minimal off-diagonal twist.

    Parameters: length L, inhomogeneities xi (length L), kappa (not 0 or 1),
    beta (nonzero), coupling c (nonzero), phi (nonzero, generic; the first
    diagonal twist entry).  Construction verifies the vacuum structure
    numerically: eigenvalues lam1 = phi * prod f(u, xi), kappa, 1;
    annihilation of the vacuum by all lower blocks; (2,3) block equal to 0 on
    the vacuum for the plain variant and to beta for the twisted one.

    Instances are immutable after construction; evaluated blocks are cached
    per (variant, point).
    """

    #: default first diagonal twist entry; any generic value away from
    #: {0, 1, kappa} keeps all weight sectors nondegenerate
    DEFAULT_PHI = 1.1 - 0.3j

    def __init__(self, length, xi, kappa, beta, c=1.0, phi=None, max_sites=hilbert.MAX_SITES, check_tol=1e-10):
        length = int(length)
        if not 1 <= length <= max_sites:
            raise ValueError(f"chain length {length} outside 1..{max_sites}")
        self.length = length
        self.xi = tuple(complex(x) for x in xi)
        if len(self.xi) != length:
            raise ValueError(f"need {length} inhomogeneities, got {len(self.xi)}")
        self.kappa = complex(kappa)
        self.beta = complex(beta)
        self.c = complex(c)
        self.phi = complex(self.DEFAULT_PHI if phi is None else phi)
        if self.c == 0:
            raise ValueError("coupling constant must be nonzero")
        if self.kappa in (0, 1):
            raise ValueError("kappa must differ from 0 and from 1 (minimal twist needs 1 - kappa != 0)")
        if self.beta == 0:
            raise ValueError("beta must be nonzero")
        if self.phi == 0:
            raise ValueError("phi must be nonzero")
        if len(self.xi) > 1 and not well_separated(self.xi, self.c):
            raise ValueError("inhomogeneities too close (also after +-c shifts)")
        self.dim = hilbert.space_dim(length)
        self._cache: dict[tuple[str, complex], MonodromyBlocks] = {}
        self._check_tol = float(check_tol)
        self._self_check()

    # -- scalar vacuum data ------------------------------------------------

    def lam(self, u) -> complex:
        """Vacuum eigenvalue of the (1,1) block: phi * prod_k f(u, xi_k)."""
        return self.phi * fp(u, self.xi, self.c)

    def lam2(self, u) -> complex:
        return self.kappa

    def lam3(self, u) -> complex:
        return complex(1.0)

    def lam_hat2(self, u) -> complex:
        """Vacuum eigenvalue of the (2,2) hatted block: lam1(u) * lam3(u - c)."""
        return self.lam(u)

    def vacuum(self) -> np.ndarray:
        return hilbert.vacuum(self.length)

    # -- block construction --------------------------------------------------

    def blocks(self, u, variant: str = "twisted") -> MonodromyBlocks:
        """Monodromy blocks at spectral point u; variant "plain" or "twisted"."""
        u = complex(u)
        key = (variant, u)
        got = self._cache.get(key)
        if got is not None:
            return got
        if variant == "plain":
            out = MonodromyBlocks(u, variant, self._build_plain(u))
        elif variant == "twisted":
            plain = self.blocks(u, "plain")._entries
            out = MonodromyBlocks(u, variant, self._apply_min_twist(plain))
        else:
            raise ValueError(f"unknown variant {variant!r}")
        self._cache[key] = out
        return out

    def _build_plain(self, u: complex):
        ident = np.eye(self.dim, dtype=complex)
        # entries[i][j] accumulates the ordered product R_0L ... R_01
        entries = None
        for site in range(1, self.length + 1):
            guv = g(u, self.xi[site - 1], self.c)
            rloc = [[None] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(3):
                    e_ji = np.zeros((3, 3), dtype=complex)
                    e_ji[j, i] = 1.0
                    term = guv * hilbert.embed_one_site(e_ji, site, self.length)
                    rloc[i][j] = term + (ident if i == j else 0.0)
            if entries is None:
                entries = rloc
            else:
                entries = [
                    [sum(rloc[i][m] @ entries[m][j] for m in range(3)) for j in range(3)]
                    for i in range(3)
                ]
        # diagonal twist diag(phi, kappa, 1) on the auxiliary space
        for j in range(3):
            entries[0][j] = self.phi * entries[0][j]
            entries[1][j] = self.kappa * entries[1][j]
        return entries

    def _apply_min_twist(self, plain):
        gam = self.beta / (1.0 - self.kappa)
        # K T0 K^{-1} with K = I + gam E23: row2 += gam*row3, then col3 -= gam*col2
        rows = [list(r) for r in plain]
        rows[1] = [rows[1][j] + gam * rows[2][j] for j in range(3)]
        out = [list(r) for r in rows]
        for i in range(3):
            out[i][2] = rows[i][2] - gam * rows[i][1]
        return out

    def transfer_matrix(self, u, variant: str = "twisted") -> np.ndarray:
        return self.blocks(u, variant).trace()

    # -- quantum minors, comatrix, hatted blocks -------------------------------

    def quantum_minor(self, u, rows: tuple[int, int], cols: tuple[int, int], variant: str = "twisted") -> np.ndarray:
        """Antisymmetrized two-point minor on rows (j1, j2), columns (k1, k2)."""
        u = complex(u)
        j1, j2 = rows
        k1, k2 = cols
        tu = self.blocks(u, variant)
        tm = self.blocks(u - self.c, variant)
        return tu[j1, k1] @ tm[j2, k2] - tu[j1, k2] @ tm[j2, k1]

    def comatrix_blocks(self, u, variant: str = "twisted") -> MonodromyBlocks:
        """Cofactor matrix built from quantum minors; inverts T up to a scalar."""
        u = complex(u)
        key = (f"comatrix-{variant}", u)
        got = self._cache.get(key)
        if got is not None:
            return got
        ent = [[None] * 3 for _ in range(3)]
        for jj in range(1, 4):
            for kk in range(1, 4):
                sign = (-1.0) ** (jj + kk)
                ent[jj - 1][kk - 1] = sign * self.quantum_minor(
                    u, _COMPLEMENT[kk], _COMPLEMENT[jj], variant
                )
        out = MonodromyBlocks(u, f"comatrix-{variant}", ent)
        self._cache[key] = out
        return out

    def hat_blocks(self, u, variant: str = "twisted") -> MonodromyBlocks:
        """Secondary-diagonal transpose of the comatrix; same exchange algebra as T."""
        u = complex(u)
        key = (f"hat-{variant}", u)
        got = self._cache.get(key)
        if got is not None:
            return got
        com = self.comatrix_blocks(u, variant)
        ent = [[com[4 - kk, 4 - jj] for kk in range(1, 4)] for jj in range(1, 4)]
        out = MonodromyBlocks(u, f"hat-{variant}", ent)
        self._cache[key] = out
        return out

    def qdet(self, u, variant: str = "twisted") -> tuple[complex, float]:
        """Scalar quantum determinant and the residual of the inversion identity.

        Forms M = comatrix(u - c) . T(u) over the auxiliary space and extracts
        qdet = tr(M) / (3 dim); the residual ||M - qdet I|| / ||qdet I||
        certifies that M is that multiple of the identity.
        """
        u = complex(u)
        com = self.comatrix_blocks(u - self.c, variant)
        t = self.blocks(u, variant)
        dim = self.dim
        m = np.zeros((3 * dim, 3 * dim), dtype=complex)
        for jj in range(1, 4):
            for kk in range(1, 4):
                blk = sum(com[jj, ll] @ t[ll, kk] for ll in range(1, 4))
                m[(jj - 1) * dim : jj * dim, (kk - 1) * dim : kk * dim] = blk
        qdet = complex(np.trace(m) / (3 * dim))
        if abs(qdet) < 1e-300:
            raise ValueError("quantum determinant numerically zero")
        residual = rel_diff(m, qdet * np.eye(3 * dim, dtype=complex))
        return qdet, residual

    # -- composite creation operator -----------------------------------------

    def b_operator(self, u, variant: str = "twisted", compare_tol: float = 1e-9) -> np.ndarray:
        """Composite operator generating Bethe states under repeated action.

        Evaluated in two independent ways: the four-term product form

            T23(u) T12(u-c) T23(u) - T23(u) T22(u-c) T13(u)
          + T13(u) T11(u-c) T23(u) - T13(u) T21(u-c) T13(u)

        and the compact minor form T23(u) hatT13(u) - T13(u) hatT12(u).
        The two must coincide; disagreement raises InternalConsistencyError.
        Returns the compact form.
        """
        u = complex(u)
        key = (f"bop-{variant}", u)
        got = self._cache.get(key)
        if got is not None:
            return got

        tu = self.blocks(u, variant)
        tm = self.blocks(u - self.c, variant)
        direct = (
            tu[2, 3] @ tm[1, 2] @ tu[2, 3]
            - tu[2, 3] @ tm[2, 2] @ tu[1, 3]
            + tu[1, 3] @ tm[1, 1] @ tu[2, 3]
            - tu[1, 3] @ tm[2, 1] @ tu[1, 3]
        )
        hat = self.hat_blocks(u, variant)
        compact = tu[2, 3] @ hat[1, 3] - tu[1, 3] @ hat[1, 2]
        mismatch = rel_diff(direct, compact)
        if mismatch > compare_tol:
            raise InternalConsistencyError(
                f"product and minor forms of the composite operator disagree: {mismatch:.3e}"
            )
        self._cache[key] = compact
        return compact

    # -- construction-time certification ---------------------------------------

    def _probe_points(self) -> tuple[complex, complex]:
        r = max(abs(x) for x in self.xi) + 2.0 * abs(self.c) + 1.0
        return r * complex(np.cos(0.37), np.sin(0.37)), r * complex(np.cos(2.11), np.sin(2.11))

    def _self_check(self) -> None:
        vac = self.vacuum()
        tol = self._check_tol
        for u in self._probe_points():
            t0 = self.blocks(u, "plain")
            tw = self.blocks(u, "twisted")
            lam = self.lam(u)
            for variant, blk in (("plain", t0), ("twisted", tw)):
                for (i, val) in ((1, lam), (2, self.kappa), (3, 1.0)):
                    if rel_diff(blk[i, i] @ vac, val * vac) > tol:
                        raise InternalConsistencyError(
                            f"{variant} ({i},{i}) vacuum eigenvalue off at u={u}"
                        )
                for (i, j) in ((2, 1), (3, 1), (3, 2)):
                    if np.linalg.norm(blk[i, j] @ vac) > tol * max(1.0, np.linalg.norm(blk[i, j])):
                        raise InternalConsistencyError(f"{variant} ({i},{j}) does not annihilate the vacuum")
            if np.linalg.norm(t0[2, 3] @ vac) > tol:
                raise InternalConsistencyError("plain (2,3) block does not annihilate the vacuum")
            if rel_diff(tw[2, 3] @ vac, self.beta * vac) > tol:
                raise InternalConsistencyError("twisted (2,3) block is not beta on the vacuum")


def exchange_3223_residual(model: ChainModel, u, v, variant: str = "plain") -> float:
    """Residual of [T32(u), T23(v)] = g(u,v) (T22(v) T33(u) - T22(u) T33(v)).

    On the plain variant, acting on the vacuum forces lam2 proportional to
    lam3; the diagonal auxiliary twist supplies the proportionality constant.
    """
    bu = model.blocks(u, variant)
    bv = model.blocks(v, variant)
    lhs = bu[3, 2] @ bv[2, 3] - bv[2, 3] @ bu[3, 2]
    rhs = g(u, v, model.c) * (bv[2, 2] @ bu[3, 3] - bu[2, 2] @ bv[3, 3])
    return rel_diff(lhs, rhs)


def vacuum_residuals(model: ChainModel, u, variant: str = "twisted") -> dict[str, float]:
    """Vacuum-sector checks for the blocks at u, as named relative residuals.

    Annihilation norms for the lower blocks, eigenvalue residuals for the
    diagonal, and the (2,3) action (zero for plain, beta for twisted).
    """
    blk = model.blocks(u, variant)
    vac = model.vacuum()
    out: dict[str, float] = {}
    for (i, j) in ((2, 1), (3, 1), (3, 2)):
        scale = max(1.0, float(np.linalg.norm(blk[i, j])))
        out[f"annihilate-{i}{j}"] = float(np.linalg.norm(blk[i, j] @ vac)) / scale
    for i, val in ((1, model.lam(u)), (2, model.kappa), (3, 1.0)):
        out[f"eigenvalue-{i}{i}"] = rel_diff(blk[i, i] @ vac, val * vac)
    if variant == "plain":
        scale = max(1.0, float(np.linalg.norm(blk[2, 3])))
        out["block-23"] = float(np.linalg.norm(blk[2, 3] @ vac)) / scale
    else:
        out["block-23"] = rel_diff(blk[2, 3] @ vac, model.beta * vac)
    return out


def rtt_residual(model: ChainModel, u, v, variant: str = "twisted") -> float:
    """Relative residual of the exchange relation R (T x I)(I x T) = (I x T)(T x I) R.

    `variant` may also be "hat" / "hat-plain" to exercise the hatted blocks.
    """
    u, v = complex(u), complex(v)
    if variant == "hat":
        bu, bv = model.hat_blocks(u, "twisted"), model.hat_blocks(v, "twisted")
    elif variant == "hat-plain":
        bu, bv = model.hat_blocks(u, "plain"), model.hat_blocks(v, "plain")
    else:
        bu, bv = model.blocks(u, variant), model.blocks(v, variant)

    dim = model.dim
    eye3 = np.eye(3, dtype=complex)
    a = np.zeros((9 * dim, 9 * dim), dtype=complex)
    b = np.zeros((9 * dim, 9 * dim), dtype=complex)
    for i in range(1, 4):
        for j in range(1, 4):
            e = np.zeros((3, 3), dtype=complex)
            e[i - 1, j - 1] = 1.0
            a += np.kron(np.kron(e, eye3), bu[i, j])
            b += np.kron(np.kron(eye3, e), bv[i, j])
    rm = np.kron(r_matrix(u, v, model.c), np.eye(dim, dtype=complex))
    return rel_diff(rm @ a @ b, b @ a @ rm)
