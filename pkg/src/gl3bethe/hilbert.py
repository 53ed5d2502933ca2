"""Dense complex linear algebra on the chain Hilbert space (C^3)^(tensor L).

Operators are plain (dim x dim) complex ndarrays and states are dim-vectors,
with dim = 3^L; numpy supplies products, sums, and scaling.  Site 1 is the
slowest-varying tensor index, so the basis state |d_1 ... d_L> with local
digits d_k in {0, 1, 2} sits at index sum_k d_k * 3^(L-k).

The reference state used everywhere is e_0 at every site (`vacuum`).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "MAX_SITES",
    "space_dim",
    "vacuum",
    "basis_state",
    "embed_one_site",
    "embed_two_site",
    "commutator",
    "proportionality",
    "weight_operators",
]

# Default cap on chain length; dense storage at 3^6 = 729 stays cheap.
MAX_SITES = 6


def _check_sites(n_sites: int) -> None:
    if n_sites < 1:
        raise ValueError(f"need at least one site, got {n_sites}")


def space_dim(n_sites: int) -> int:
    _check_sites(n_sites)
    return 3**n_sites


def vacuum(n_sites: int) -> np.ndarray:
    """Unit vector e_0 x e_0 x ... x e_0 (highest-weight state at each site)."""
    v = np.zeros(space_dim(n_sites), dtype=complex)
    v[0] = 1.0
    return v


def basis_state(digits) -> np.ndarray:
    """Product basis state from per-site digits, site 1 first."""
    digits = list(digits)
    idx = 0
    for d in digits:
        if not 0 <= d <= 2:
            raise ValueError(f"local digit {d} out of range")
        idx = 3 * idx + d
    v = np.zeros(3 ** len(digits), dtype=complex)
    v[idx] = 1.0
    return v


def embed_one_site(op3: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a 3x3 operator acting on `site` (1-based) into the chain space."""
    _check_sites(n_sites)
    if not 1 <= site <= n_sites:
        raise IndexError(f"site {site} out of range 1..{n_sites}")
    left = np.eye(3 ** (site - 1), dtype=complex)
    right = np.eye(3 ** (n_sites - site), dtype=complex)
    return np.kron(np.kron(left, np.asarray(op3, dtype=complex)), right)


def embed_two_site(op9: np.ndarray, site_a: int, site_b: int, n_sites: int) -> np.ndarray:
    """Embed a two-leg operator on C^3 x C^3 at sites (site_a, site_b).

    The first tensor leg of op9 attaches to site_a, the second to site_b;
    the sites need not be adjacent or ordered.
    """
    _check_sites(n_sites)
    if site_a == site_b:
        raise IndexError("the two legs must attach to distinct sites")
    for s in (site_a, site_b):
        if not 1 <= s <= n_sites:
            raise IndexError(f"site {s} out of range 1..{n_sites}")
    op9 = np.asarray(op9, dtype=complex)
    if op9.shape != (9, 9):
        raise ValueError(f"expected a 9x9 matrix, got {op9.shape}")

    rest = np.eye(3 ** (n_sites - 2), dtype=complex)
    full = np.kron(op9, rest)
    # Leg order of `full` is (site_a, site_b, remaining sites ascending);
    # permute tensor axes back to ascending site order.
    order = [site_a, site_b] + [s for s in range(1, n_sites + 1) if s not in (site_a, site_b)]
    t = full.reshape([3] * (2 * n_sites))
    axes = [order.index(s) for s in range(1, n_sites + 1)]
    t = np.transpose(t, axes=axes + [n_sites + a for a in axes])
    return t.reshape(3**n_sites, 3**n_sites)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def proportionality(x: np.ndarray, y: np.ndarray) -> tuple[complex, float]:
    """Best ratio r with x ~ r*y, and the relative residual of that fit.

    ratio = <y, x> / <y, y>;  residual = ||x - ratio*y|| / max(||x||, ||y||).
    The residual vanishes iff the vectors are parallel.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    yn2 = np.vdot(y, y)
    if yn2 == 0.0:
        raise ValueError("reference vector is zero")
    ratio = complex(np.vdot(y, x) / yn2)
    scale = max(np.linalg.norm(x), np.linalg.norm(y))
    residual = float(np.linalg.norm(x - ratio * y) / scale)
    return ratio, residual


def weight_operators(n_sites: int) -> tuple[np.ndarray, np.ndarray]:
    """Site-summed quasiparticle number operators (N1, N2).

    Local weights: e_0 carries (0, 0), e_1 carries (1, 0), e_2 carries (1, 1),
    matching one first-color quantum per raised level and one second-color
    quantum on the top level.  States assembled from plain-chain creation
    blocks are joint eigenvectors with eigenvalues (a, b).
    """
    n1_local = np.diag([0.0, 1.0, 1.0]).astype(complex)
    n2_local = np.diag([0.0, 0.0, 1.0]).astype(complex)
    dim = space_dim(n_sites)
    n1 = np.zeros((dim, dim), dtype=complex)
    n2 = np.zeros((dim, dim), dtype=complex)
    for s in range(1, n_sites + 1):
        n1 += embed_one_site(n1_local, s, n_sites)
        n2 += embed_one_site(n2_local, s, n_sites)
    return n1, n2
