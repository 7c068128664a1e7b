"""Matrix-level invariants of a nilpotent element: Jordan data and index values.

These are computed directly from a matrix acting on a quadratic space,
independently of the combinatorial classification, so the oracle can
reconcile the two sides.
"""

from __future__ import annotations

from . import _linalg as la
from .quadform import QuadraticSpace, bilinear, eval_q
from .symbols import Symbol


def is_nilpotent_matrix(ctx, t, n: int) -> bool:
    power = la.mat_pow(ctx, t, 1 << (n - 1).bit_length()) if n > 1 else t
    return la.is_zero(power)


def jordan_partition(ctx, t) -> tuple[int, ...]:
    """Jordan block sizes from the rank sequence of powers.

    The multiplicity of part m is rank(T^{m-1}) - 2 rank(T^m) + rank(T^{m+1}).
    """
    n = len(t)
    if not is_nilpotent_matrix(ctx, t, n):
        raise ValueError("jordan_partition needs a nilpotent matrix")
    ranks = [n]
    power = la.identity(n)
    while not la.is_zero(power):
        power = la.mat_mul(ctx, power, t)
        ranks.append(la.rank(ctx, power))
    ranks.append(0)
    parts = []
    for m in range(1, len(ranks) - 1):
        mult = ranks[m - 1] - 2 * ranks[m] + ranks[m + 1]
        parts.extend([m] * mult)
    out = tuple(sorted(parts, reverse=True))
    assert sum(out) == n
    return out


def _subspace_basis_image(space: QuadraticSpace, t, vectors, k: int):
    """Echelon basis of T^k applied to the span of the given vectors."""
    ctx = space.ctx
    imgs = [tuple(v) for v in vectors]
    for _ in range(k):
        imgs = [la.mat_vec(ctx, t, v) for v in imgs]
    return la.row_space_basis(ctx, imgs)


def _q_vanishes_on(space: QuadraticSpace, basis) -> bool:
    # Char-2 polarization: Q = 0 on a span iff Q(b_i) = 0 and <b_i, b_j> = 0.
    for i, b in enumerate(basis):
        if eval_q(space, b) != 0:
            return False
        for c in basis[i + 1 :]:
            if bilinear(space, b, c) != 0:
                return False
    return True


def chi_of(space: QuadraticSpace, t, m: int) -> int:
    """Least k >= 0 with Q vanishing identically on T^k(ker T^m)."""
    ctx = space.ctx
    power = la.mat_pow(ctx, t, m)
    kernel = la.nullspace(ctx, power)
    for k in range(m + 1):
        if _q_vanishes_on(space, _subspace_basis_image(space, t, kernel, k)):
            return k
    raise AssertionError("index search must terminate by k = m")


def symbol_of(space: QuadraticSpace, t) -> Symbol:
    """The symbol of a nilpotent element: Jordan parts with index values."""
    parts = jordan_partition(space.ctx, t)
    entries = []
    for lam in sorted(set(parts), reverse=True):
        entries.append((lam, chi_of(space, t, lam), parts.count(lam)))
    return Symbol(tuple(entries))
