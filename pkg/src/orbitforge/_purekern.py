"""Pure-Python twin of the compiled kernels (orbitforge._fastkern).

Same entry points, same outputs, no C extension required.  Matrices over
GF(2^k) with n <= 8 are packed into k bit-planes; plane p is a 64-bit
int whose byte i is row i (bit j = bit p of entry (i, j)).  Bulk data is
exchanged as numpy uint64 arrays of shape (m, k).

This twin is the import-time fallback and the reference the compiled
core is tested against; it is much slower on the big scans.
"""

from __future__ import annotations

import numpy as np

from .errors import ClosureLimitError, InconsistencyError

_COL = 0x0101010101010101
_ALL = 0xFFFFFFFFFFFFFFFF


def _f2mul(a: int, b: int) -> int:
    # 8x8 bit-matrix product over F_2, rows packed as bytes.
    c = 0
    for j in range(8):
        col = (a >> j) & _COL
        if col:
            c ^= col * ((b >> (8 * j)) & 0xFF)
    return c & _ALL


def _mul(a, b, k: int, redc) -> tuple:
    if k == 1:
        return (_f2mul(a[0], b[0]),)
    tmp = [0] * (2 * k - 1)
    for p in range(k):
        ap = a[p]
        if not ap:
            continue
        for r in range(k):
            br = b[r]
            if br:
                tmp[p + r] ^= _f2mul(ap, br)
    out = [0] * k
    for d in range(2 * k - 1):
        v = tmp[d]
        if not v:
            continue
        mask = redc[d]
        p = 0
        while mask:
            if mask & 1:
                out[p] ^= v
            mask >>= 1
            p += 1
    return tuple(out)


def _is_nilpotent(a, k: int, redc) -> bool:
    # n <= 8, so nilpotent iff a^8 = 0; three squarings.
    t = a
    for _ in range(3):
        t = _mul(t, t, k, redc)
    return not any(t)


def _rows(arr) -> list[tuple]:
    return [tuple(int(x) for x in row) for row in arr]


def _pack_out(items: list[tuple], k: int) -> np.ndarray:
    if not items:
        return np.zeros((0, k), dtype=np.uint64)
    arr = np.array(items, dtype=np.uint64).reshape(len(items), k)
    order = np.lexsort(tuple(arr[:, p] for p in range(k - 1, -1, -1)))
    return arr[order]


def _key(planes) -> int:
    key = 0
    for p, v in enumerate(planes):
        key |= int(v) << (64 * p)
    return key


def mat_mul(a, b, n: int, k: int, redc) -> np.ndarray:
    out = _mul(tuple(int(x) for x in a), tuple(int(x) for x in b), k, tuple(int(x) for x in redc))
    return np.array(out, dtype=np.uint64)


def nilpotent_span(flips, n: int, k: int, redc, threads: int = 1) -> np.ndarray:
    """All nilpotent matrices in the F_2-span of the flip set, sorted.

    flips[j] is the packed matrix whose coefficient toggles when Gray
    bit j flips; a basis of n_b matrices over GF(2^k) contributes
    n_b * k flips.  `threads` is accepted for signature parity; this
    twin is sequential.
    """
    redc = tuple(int(x) for x in redc)
    fl = _rows(flips)
    nb = len(fl)
    cur = [0] * k
    out = []
    if _is_nilpotent(cur, k, redc):
        out.append(tuple(cur))
    for t in range(1, 1 << nb):
        f = fl[(t & -t).bit_length() - 1]
        for p in range(k):
            cur[p] ^= f[p]
        if _is_nilpotent(cur, k, redc):
            out.append(tuple(cur))
    return _pack_out(out, k)


def closure(gens, n: int, k: int, redc, limit: int) -> np.ndarray:
    """BFS closure of the generated group, seeded at the identity.

    Returns the sorted element array; raises ClosureLimitError as soon
    as the element count would exceed `limit`.
    """
    redc = tuple(int(x) for x in redc)
    gl = _rows(gens)
    ident = [0] * k
    ident[0] = sum(1 << (9 * i) for i in range(n))
    ident = tuple(ident)
    seen = {_key(ident)}
    elems = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gl:
                c = _mul(a, g, k, redc)
                ck = _key(c)
                if ck not in seen:
                    if len(seen) >= limit:
                        raise ClosureLimitError(f"group closure exceeded limit {limit}")
                    seen.add(ck)
                    elems.append(c)
                    new.append(c)
        frontier = new
    return _pack_out(elems, k)


def orbit_ids(elems, gens, ginvs, n: int, k: int, redc):
    """Partition `elems` into conjugation orbits under the generators.

    elems must be closed under g . x . g^-1 and sorted; ids are assigned
    in ascending first-element order, so each orbit's seed is its
    lexicographically minimal member.  Returns (int32 ids, orbit count).
    """
    redc = tuple(int(x) for x in redc)
    rows = _rows(elems)
    gl = _rows(gens)
    gil = _rows(ginvs)
    index = {r: i for i, r in enumerate(rows)}
    m = len(rows)
    ids = np.full(m, -1, dtype=np.int32)
    nxt = 0
    for i in range(m):
        if ids[i] >= 0:
            continue
        ids[i] = nxt
        stack = [i]
        while stack:
            t = rows[stack.pop()]
            for g, gi in zip(gl, gil):
                c = _mul(_mul(g, t, k, redc), gi, k, redc)
                j = index.get(c)
                if j is None:
                    raise InconsistencyError("conjugation left the element set")
                if ids[j] < 0:
                    ids[j] = nxt
                    stack.append(j)
        nxt += 1
    return ids, nxt


def commutes_mask(group, x, n: int, k: int, redc) -> np.ndarray:
    """Boolean mask over a packed group array: does g commute with x."""
    redc = tuple(int(v) for v in redc)
    xt = tuple(int(v) for v in x)
    out = np.zeros(len(group), dtype=np.uint8)
    for i, row in enumerate(_rows(group)):
        if _mul(row, xt, k, redc) == _mul(xt, row, k, redc):
            out[i] = 1
    return out
