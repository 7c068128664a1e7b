"""Dense linear algebra over GF(2^k) for small matrices.

Matrices are tuples/lists of row tuples/lists of field elements (ints);
vectors are sequences of ints.  Everything here is exact and
deterministic; sizes are tiny (dimension <= a few hundred), so clarity
beats cleverness.
"""

from __future__ import annotations

from .gf2 import FieldCtx


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None):
    return [[0] * (m if m is not None else n) for _ in range(n)]


def mat_freeze(a):
    return tuple(tuple(row) for row in a)


def mat_add(a, b):
    return [[x ^ y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(ctx: FieldCtx, a, b):
    n, m = len(a), len(b[0])
    inner = len(b)
    mul = ctx.mul
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(inner):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            if c == 1:
                for j in range(m):
                    oi[j] ^= bt[j]
            else:
                for j in range(m):
                    oi[j] ^= mul(c, bt[j])
    return out

def mat_vec(ctx: FieldCtx, a, v):
    mul = ctx.mul
    out = []
    for row in a:
        s = 0
        for c, x in zip(row, v):
            if c and x:
                s ^= mul(c, x)
        out.append(s)
    return tuple(out)


def vec_add(u, v):
    return tuple(x ^ y for x, y in zip(u, v))


def vec_scale(ctx: FieldCtx, c, v):
    if c == 0:
        return tuple(0 for _ in v)
    if c == 1:
        return tuple(v)
    mul = ctx.mul
    return tuple(mul(c, x) for x in v)


def mat_pow(ctx: FieldCtx, a, e: int):
    n = len(a)
    r = identity(n)
    b = [list(row) for row in a]
    while e:
        if e & 1:
            r = mat_mul(ctx, r, b)
        b = mat_mul(ctx, b, b)
        e >>= 1
    return r


def is_zero(a) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(ctx: FieldCtx, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    m = len(rows[0])
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ctx.inv(rows[r][c])
        if inv != 1:
            rows[r] = [ctx.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                for j in range(m):
                    ri[j] ^= ctx.mul(f, rr[j])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(ctx: FieldCtx, a) -> int:
    return len(rref(ctx, a)[1])


def nullspace(ctx: FieldCtx, a):
    """Basis of {v : a.v = 0}, one vector per free column, deterministic order."""
    if not a:
        return []
    m = len(a[0])
    red, pivots = rref(ctx, a)
    pivot_set = set(pivots)
    basis = []
    for free in range(m):
        if free in pivot_set:
            continue
        v = [0] * m
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = red[r][free]  # char 2: -x == x
        basis.append(tuple(v))
    return basis


def row_space_basis(ctx: FieldCtx, vectors):
    """Independent subset spanning the row space, in echelon form."""
    red, pivots = rref(ctx, vectors)
    return [tuple(red[i]) for i in range(len(pivots))]


def in_span(ctx: FieldCtx, basis, v) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    red, pivots = rref(ctx, list(basis) + [list(v)])
    return len(pivots) == len(row_space_basis(ctx, basis))


def inverse(ctx: FieldCtx, a):
    """Matrix inverse; raises ValueError if singular."""
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    red, pivots = rref(ctx, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def solve(ctx: FieldCtx, a, b):
    """One solution x of a.x = b, or None."""
    n = len(a)
    m = len(a[0]) if a else 0
    aug = [list(row) + [bb] for row, bb in zip(a, b)]
    red, pivots = rref(ctx, aug)
    if m in pivots:
        return None
    x = [0] * m
    for r, pc in enumerate(pivots):
        x[pc] = red[r][m]
    return tuple(x)
