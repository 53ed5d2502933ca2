"""Scalar rational kernel: the functions g, f, h, set products, partitions,
and the domain-wall partition function.

Conventions used throughout the package:

    g(u, v) = c / (u - v)
    f(u, v) = 1 + g(u, v) = (u - v + c) / (u - v)
    h(u, v) = f(u, v) / g(u, v) = (u - v + c) / c

with a single nonzero complex constant c.  A function applied to a set (any
iterable of complex numbers) means the product over all its elements, e.g.
h(xs, v) = prod_j h(x_j, v) and f(xs, ys) = prod_{j,k} f(x_j, y_k).  Every
product over an empty set is 1.

The kernel K_n(xs | ys) is the domain-wall partition function in its
determinant form; `dwpf` evaluates it.  `identity_a1_sides` and
`identity_a2_det` evaluate the two-sided partition-sum identities the kernel
satisfies, so callers can certify them at random points.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "PoleError",
    "POLE_TOL",
    "g",
    "f",
    "h",
    "inv_g",
    "inv_f",
    "inv_h",
    "as_set",
    "set_product",
    "gp",
    "fp",
    "hp",
    "partitions",
    "partition_count",
    "dwpf",
    "identity_a1_sides",
    "identity_a2_det",
    "dwpf_pole_fit",
    "min_separation",
    "well_separated",
    "draw_points",
    "analytic_circle_mean",
    "rel_diff",
]

# Absolute guard against evaluating g or f on top of their pole.
POLE_TOL = 1e-12


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at (or too close to) a pole."""


def _check_pole(u: complex, v: complex) -> None:
    if abs(u - v) <= POLE_TOL * max(1.0, abs(u), abs(v)):
        raise PoleError(f"evaluation at pole u = v = {u}")


def g(u: complex, v: complex, c: complex = 1.0) -> complex:
    """g(u, v) = c/(u - v); antisymmetric, simple pole at u = v."""
    _check_pole(u, v)
    return c / (u - v)


def f(u: complex, v: complex, c: complex = 1.0) -> complex:
    """f(u, v) = (u - v + c)/(u - v)."""
    _check_pole(u, v)
    return (u - v + c) / (u - v)


def h(u: complex, v: complex, c: complex = 1.0) -> complex:
    """h(u, v) = (u - v + c)/c; entire in u - v, vanishes at u = v - c."""
    return (u - v + c) / c


# Reciprocals in closed form.  Denominator factors of partition-sum weights
# are evaluated through these: 1/g extends analytically through u = v (it
# vanishes there), which is exactly the mechanism that kills forbidden
# partition terms at coincident points.


def inv_g(u: complex, v: complex, c: complex = 1.0) -> complex:
    return (u - v) / c


def inv_f(u: complex, v: complex, c: complex = 1.0) -> complex:
    den = u - v + c
    if abs(den) <= POLE_TOL * max(1.0, abs(u), abs(v)):
        raise PoleError(f"1/f pole at u - v = -c, u={u}, v={v}")
    return (u - v) / den


def inv_h(u: complex, v: complex, c: complex = 1.0) -> complex:
    den = u - v + c
    if abs(den) <= POLE_TOL * max(1.0, abs(u), abs(v)):
        raise PoleError(f"1/h pole at u - v = -c, u={u}, v={v}")
    return c / den


def as_set(x) -> tuple[complex, ...]:
    """Coerce a scalar or an iterable of scalars to a tuple of complex."""
    if isinstance(x, (complex, float, int)):
        return (complex(x),)
    return tuple(complex(z) for z in x)


def set_product(fn: Callable[..., complex], left, right, c: complex = 1.0) -> complex:
    """prod fn(x, y, c) over all x in left, y in right; 1 if either set is empty."""
    out = complex(1.0)
    for x in as_set(left):
        for y in as_set(right):
            out *= fn(x, y, c)
    return out


def gp(left, right, c: complex = 1.0) -> complex:
    return set_product(g, left, right, c)


def fp(left, right, c: complex = 1.0) -> complex:
    return set_product(f, left, right, c)


def hp(left, right, c: complex = 1.0) -> complex:
    return set_product(h, left, right, c)


def partition_count(n: int, sizes: Sequence[int]) -> int:
    """Multinomial n! / prod(sizes!), the number of partitions yielded."""
    if sum(sizes) != n:
        raise ValueError(f"cardinalities {sizes} do not sum to {n}")
    out = math.factorial(n)
    for s in sizes:
        out //= math.factorial(s)
    return out


def partitions(elements: Iterable[complex], sizes: Sequence[int]) -> Iterator[tuple[tuple[complex, ...], ...]]:
    """Split `elements` into disjoint subsets of the given cardinalities.

    Yields every assignment exactly once, as a tuple of subset tuples.  The
    order is deterministic: lexicographic in the vector of subset labels
    assigned to successive elements.  Order of elements inside each subset
    follows the source order, and no downstream evaluation depends on it.
    """
    elems = tuple(complex(z) for z in elements)
    sizes = tuple(int(s) for s in sizes)
    if any(s < 0 for s in sizes):
        raise ValueError(f"negative cardinality in {sizes}")
    if sum(sizes) != len(elems):
        raise ValueError(f"cardinalities {sizes} do not sum to set size {len(elems)}")

    nlab = len(sizes)
    remaining = list(sizes)
    groups: list[list[complex]] = [[] for _ in range(nlab)]

    def rec(i: int) -> Iterator[tuple[tuple[complex, ...], ...]]:
        if i == len(elems):
            yield tuple(tuple(gr) for gr in groups)
            return
        for lbl in range(nlab):
            if remaining[lbl] > 0:
                remaining[lbl] -= 1
                groups[lbl].append(elems[i])
                yield from rec(i + 1)
                groups[lbl].pop()
                remaining[lbl] += 1

    yield from rec(0)


def dwpf(xs, ys, c: complex = 1.0) -> complex:
    """Domain-wall partition function K_n(xs | ys).

    Determinant representation

        K_n = h(xs, ys) * prod_{j<k} g(x_j, x_k) g(y_k, y_j)
              * det_n [ g(x_j, y_k) / h(x_j, y_k) ],

    evaluated after absorbing the row factors prod_k h(x_j, y_k) into the
    matrix, which gives the division-free entries
    g(x_j, y_k) * prod_{k' != k} h(x_j, y_k'); the two forms are identical as
    rational functions, but the absorbed one stays finite at h(x_j, y_k) = 0,
    where the printed entry and the prefactor cancel.

    Symmetric within xs and within ys; K_0 = 1, K_1 = g(x, y); simple poles
    only at x_j = y_k.
    """
    xs = as_set(xs)
    ys = as_set(ys)
    n = len(xs)
    if len(ys) != n:
        raise ValueError(f"set size mismatch: {n} vs {len(ys)}")
    if n == 0:
        return complex(1.0)

    mat = np.empty((n, n), dtype=complex)
    for j in range(n):
        hrow = [h(xs[j], ys[k], c) for k in range(n)]
        for k in range(n):
            entry = g(xs[j], ys[k], c)
            for kp in range(n):
                if kp != k:
                    entry *= hrow[kp]
            mat[j, k] = entry

    pref = complex(1.0)
    for j in range(n):
        for k in range(j + 1, n):
            pref *= g(xs[j], xs[k], c) * g(ys[k], ys[j], c)
    return pref * complex(np.linalg.det(mat))


def identity_a1_sides(xs, ys, c: complex = 1.0) -> tuple[complex, complex]:
    """Two sides of the kernel summation identity, evaluated independently.

    LHS: sum over partitions xs => {xs_I, xs_II} with #xs_I = n of
         K_n(xs_I | ys) f(xs_II, xs_I).
    RHS: sum_{k=0}^{n} sum over ys => {ys_I, ys_II} with #ys_I = k of
         (-1)^(n-k) f(ys_I, ys_II) f(xs, ys_I).

    Requires m = #xs >= n = #ys.  The two returned values agree identically
    as rational functions.
    """
    xs = as_set(xs)
    ys = as_set(ys)
    m, n = len(xs), len(ys)
    if m < n:
        raise ValueError(f"need #xs >= #ys, got {m} < {n}")

    lhs = complex(0.0)
    for xI, xII in partitions(xs, (n, m - n)):
        lhs += dwpf(xI, ys, c) * fp(xII, xI, c)

    rhs = complex(0.0)
    for k in range(n + 1):
        for yI, yII in partitions(ys, (k, n - k)):
            rhs += (-1) ** (n - k) * fp(yI, yII, c) * fp(xs, yI, c)
    return lhs, rhs


def identity_a2_det(xs, ys, c: complex = 1.0) -> complex:
    """det_n [ f(y_j, ys_j) f(xs, y_j) / h(y_j, y_k) - delta_jk ].

    Equals the RHS partition sum of `identity_a1_sides` for any set sizes,
    and vanishes identically when #xs < #ys.
    """
    xs = as_set(xs)
    ys = as_set(ys)
    n = len(ys)
    if n == 0:
        return complex(1.0)
    mat = np.empty((n, n), dtype=complex)
    for j in range(n):
        yj_rest = ys[:j] + ys[j + 1:]
        row = fp(ys[j], yj_rest, c) * fp(xs, ys[j], c)
        for k in range(n):
            mat[j, k] = row / h(ys[j], ys[k], c)
        mat[j, j] -= 1.0
    return complex(np.linalg.det(mat))


def dwpf_pole_fit(xs, ys, c: complex = 1.0, deltas: Sequence[float] = (1e-4, 1e-5)) -> tuple[complex, complex]:
    """Fit the simple pole of K_n at x_n = y_n and return (fit, target).

    Samples x_n = y_n + delta, forms v(delta) = delta * K_n / c, and removes
    the O(delta) regular contribution by Richardson extrapolation over the two
    given deltas.  The target is the residue prediction
    f(xs_n, y_n) f(y_n, ys_n) K_{n-1}(xs_n | ys_n).
    """
    xs = as_set(xs)
    ys = as_set(ys)
    if len(xs) != len(ys) or len(xs) < 1:
        raise ValueError("need equal nonempty sets")
    d1, d2 = deltas
    rest_x, yn, rest_y = xs[:-1], ys[-1], ys[:-1]

    def val(d: float) -> complex:
        k = dwpf(rest_x + (yn + d,), ys, c)
        return d * k / c

    v1, v2 = val(d1), val(d2)
    fit = (d1 * v2 - d2 * v1) / (d1 - d2)
    target = fp(rest_x, yn, c) * fp(yn, rest_y, c) * dwpf(rest_x, rest_y, c)
    return fit, target


def min_separation(points, c: complex = 1.0, shifts=(0.0,)) -> float:
    """Smallest |(p + s1) - (q + s2)| over distinct base points p, q and shifts.

    A point is never compared against its own shifted copies: p and p + c
    differ by |c| by construction and carry no separation information.
    """
    pts = as_set(points)
    sh = [complex(s) for s in shifts]
    best = math.inf
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for s1 in sh:
                for s2 in sh:
                    best = min(best, abs((pts[i] + s1) - (pts[j] + s2)))
    return best


def separation_scale(c: complex = 1.0) -> float:
    """Minimum admissible pairwise separation among spectral parameters."""
    return 1e-6 * abs(c)


def well_separated(points, c: complex = 1.0, eps: float | None = None) -> bool:
    """True if all points stay `eps` apart, also after shifting by +-c."""
    if eps is None:
        eps = separation_scale(c)
    return min_separation(points, c, shifts=(0.0, c, -c)) >= eps


def draw_points(
    rng: np.random.Generator,
    n: int,
    c: complex = 1.0,
    avoid=(),
    r_min: float = 0.5,
    r_max: float = 2.5,
    eps: float | None = None,
    max_tries: int = 10_000,
) -> tuple[complex, ...]:
    """Draw n points uniformly from the annulus r_min <= |z| <= r_max.

    Rejection sampling keeps every accepted point separated from all points
    in `avoid` and from previously accepted points, including their +-c
    shifts, by at least eps (default 1e-6 |c|).
    """
    if eps is None:
        eps = separation_scale(c)
    taken = list(as_set(avoid))
    out: list[complex] = []
    shifts = (0.0, complex(c), -complex(c))
    for _ in range(max_tries):
        if len(out) == n:
            break
        r = math.sqrt(rng.uniform(r_min**2, r_max**2))
        th = rng.uniform(0.0, 2.0 * math.pi)
        z = complex(r * math.cos(th), r * math.sin(th))
        ok = True
        for p in taken:
            for s1 in shifts:
                for s2 in shifts:
                    if abs((z + s1) - (p + s2)) < eps:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(z)
            taken.append(z)
    if len(out) < n:
        raise RuntimeError(f"rejection sampling failed after {max_tries} tries")
    return tuple(out)


def analytic_circle_mean(fn: Callable[[complex], np.ndarray | complex], center: complex, radius: float, nodes: int = 24):
    """Value at `center` of a function analytic on the disk, via circle averaging.

    The mean of fn over `nodes` equispaced points on the circle equals
    fn(center) up to O((radius/rho)^nodes) where rho is the analyticity
    radius.  Used to evaluate expressions whose written form has a removable
    singularity at `center`.
    """
    vals = []
    for k in range(nodes):
        w = center + radius * cmath.exp(2j * math.pi * k / nodes)
        vals.append(fn(w))
    return sum(vals[1:], start=vals[0]) / nodes


def rel_diff(x, y) -> float:
    """|| x - y || / max(||x||, ||y||); 0 for two zeros."""
    xn = np.linalg.norm(np.asarray(x))
    yn = np.linalg.norm(np.asarray(y))
    scale = max(xn, yn)
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(np.asarray(x) - np.asarray(y)) / scale)
