"""Hot-kernel dispatch and bit-packing helpers.

The compiled core (orbitforge._fastkern, Cython) is selected at import
when present; otherwise the pure-Python twin (orbitforge._purekern)
takes over with identical semantics.  Set ORBITFORGE_BACKEND=py or =c
to force a backend (benchmarks and parity tests do).

Packing layout (both backends): a matrix over GF(2^k), n <= 8, is k
bit-planes; plane p is a 64-bit word whose byte i is row i, bit j of
that byte being bit p of entry (i, j).
"""

from __future__ import annotations

import os

import numpy as np

from .gf2 import FieldCtx, reduction_planes

_env = os.environ.get("ORBITFORGE_BACKEND", "").strip().lower()
if _env in ("py", "pure", "python"):
    from . import _purekern as _impl

    BACKEND = "py"
elif _env in ("", "c", "fast", "compiled"):
    try:
        from . import _fastkern as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _env:
            raise ImportError(
                "ORBITFORGE_BACKEND requested the compiled core but "
                "orbitforge._fastkern is not built"
            )
        from . import _purekern as _impl

        BACKEND = "py"
else:
    raise ValueError(f"unknown ORBITFORGE_BACKEND value {_env!r}")

mat_mul = _impl.mat_mul
nilpotent_span = _impl.nilpotent_span
closure = _impl.closure
orbit_ids = _impl.orbit_ids
commutes_mask = _impl.commutes_mask


def backend_name() -> str:
    return BACKEND


def default_threads() -> int:
    """Worker cap for the data-parallel span scan (ORBITFORGE_THREADS)."""
    raw = os.environ.get("ORBITFORGE_THREADS", "").strip()
    if not raw:
        return 1
    t = int(raw)
    if t < 1:
        raise ValueError("ORBITFORGE_THREADS must be >= 1")
    return t


def redc_table(ctx: FieldCtx) -> np.ndarray:
    return np.asarray(reduction_planes(ctx), dtype=np.uint64)


def pack_matrix(rows, k: int) -> tuple[int, ...]:
    """Row-major matrix of field elements -> k packed planes."""
    planes = [0] * k
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            for p in range(k):
                if (e >> p) & 1:
                    planes[p] |= 1 << (8 * i + j)
    return tuple(planes)


def unpack_matrix(planes, n: int, k: int) -> tuple[tuple[int, ...], ...]:
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = 0
            for p in range(k):
                e |= ((int(planes[p]) >> (8 * i + j)) & 1) << p
            row.append(e)
        rows.append(tuple(row))
    return tuple(rows)


def pack_many(mats, k: int) -> np.ndarray:
    out = np.zeros((len(mats), k), dtype=np.uint64)
    for i, rows in enumerate(mats):
        out[i] = pack_matrix(rows, k)
    return out


def identity_planes(n: int, k: int) -> tuple[int, ...]:
    planes = [0] * k
    planes[0] = sum(1 << (9 * i) for i in range(n))
    return tuple(planes)


def sort_packed(arr: np.ndarray) -> np.ndarray:
    k = arr.shape[1]
    order = np.lexsort(tuple(arr[:, p] for p in range(k - 1, -1, -1)))
    return arr[order]


def find_packed(arr: np.ndarray, planes) -> int:
    """Index of a packed matrix in a lex-sorted array, or -1."""
    target = tuple(int(x) for x in planes)
    lo, hi = 0, len(arr)
    while lo < hi:
        mid = (lo + hi) // 2
        row = tuple(int(x) for x in arr[mid])
        if row < target:
            lo = mid + 1
        else:
            hi = mid
    if lo < len(arr) and tuple(int(x) for x in arr[lo]) == target:
        return lo
    return -1


def span_flips(basis_packed, ctx: FieldCtx) -> np.ndarray:
    """Gray-code flip set for the GF(2^k)-span of a packed basis.

    Coefficient bit p of basis matrix B is toggled by adding x^p * B,
    which is itself a packed matrix; the span over GF(2^k) is the
    F_2-span of these k * len(basis) flips.
    """
    k = ctx.k
    redc = redc_table(ctx)
    flips = []
    for planes in basis_packed:
        scaled = np.asarray(planes, dtype=np.uint64)
        xmat = _scalar_planes(ctx, 2 if k > 1 else 1)
        cur = scaled
        for p in range(k):
            flips.append(tuple(int(x) for x in cur))
            if p + 1 < k:
                cur = mat_mul(cur, xmat, 8, k, redc)
    return np.array(flips, dtype=np.uint64).reshape(len(flips), k)


def _scalar_planes(ctx: FieldCtx, c: int) -> np.ndarray:
    """c * identity on all 8 rows, packed (scalar action on the span)."""
    planes = [0] * ctx.k
    for p in range(ctx.k):
        if (c >> p) & 1:
            planes[p] = sum(1 << (9 * i) for i in range(8))
    return np.asarray(planes, dtype=np.uint64)
