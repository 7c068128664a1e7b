"""Parity between the compiled core and the pure-Python twin, plus packing."""

import random

import numpy as np
import pytest

from orbitforge import _purekern as pure
from orbitforge import gf2, kernels
from orbitforge import quadform as qf
from orbitforge.errors import ClosureLimitError
from orbitforge.quadform import WittType

fast = pytest.importorskip("orbitforge._fastkern")

F2 = gf2.field(1)
F4 = gf2.field(2)


def _random_packed(rng, ctx, n):
    rows = [[rng.randrange(ctx.q) for _ in range(n)] for _ in range(n)]
    return rows, np.array(kernels.pack_matrix(rows, ctx.k), dtype=np.uint64)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_mat_mul_parity_and_reference(k):
    import orbitforge._linalg as la

    ctx = gf2.field(k)
    redc = kernels.redc_table(ctx)
    rng = random.Random(k)
    n = 6
    for _ in range(100):
        am, a = _random_packed(rng, ctx, n)
        bm, b = _random_packed(rng, ctx, n)
        rp = pure.mat_mul(a, b, n, k, redc)
        rf = fast.mat_mul(a, b, n, k, redc)
        assert np.array_equal(rp, rf)
        ref = la.mat_mul(ctx, am, bm)
        assert kernels.unpack_matrix(tuple(int(x) for x in rp), n, k) == tuple(
            tuple(r) for r in ref
        )


def test_pack_unpack_round_trip():
    rng = random.Random(0)
    for ctx in (F2, F4, gf2.field(3)):
        for n in (1, 4, 8):
            rows, packed = _random_packed(rng, ctx, n)
            assert kernels.unpack_matrix(tuple(int(x) for x in packed), n, ctx.k) == tuple(
                tuple(r) for r in rows
            )


@pytest.mark.parametrize(
    "ctx,n_dim,wt",
    [
        (F2, 3, WittType.ODD_DEFECTIVE),
        (F2, 4, WittType.PLUS),
        (F2, 4, WittType.MINUS),
        (F2, 5, WittType.ODD_DEFECTIVE),
        (F4, 3, WittType.ODD_DEFECTIVE),
    ],
)
def test_bulk_kernel_parity(ctx, n_dim, wt):
    sp = qf.standard_space(ctx, n_dim, wt)
    redc = kernels.redc_table(ctx)
    basis = qf.lie_algebra_basis(sp)
    flips = kernels.span_flips([kernels.pack_matrix(m, ctx.k) for m in basis], ctx)
    span_p = pure.nilpotent_span(flips, n_dim, ctx.k, redc, 1)
    span_f = fast.nilpotent_span(flips, n_dim, ctx.k, redc, 1)
    span_t = fast.nilpotent_span(flips, n_dim, ctx.k, redc, 4)
    assert np.array_equal(span_p, span_f)
    assert np.array_equal(span_p, span_t)

    gens = qf.all_transvections(sp)
    garr = kernels.pack_many([g.matrix for g in gens], ctx.k)
    target = qf.classical_group_order(n_dim, wt, ctx.q)
    closure_p = pure.closure(garr, n_dim, ctx.k, redc, target)
    closure_f = fast.closure(garr, n_dim, ctx.k, redc, target)
    assert np.array_equal(closure_p, closure_f)

    inv = kernels.pack_many([g.inverse().matrix for g in gens], ctx.k)
    ids_p, n_p = pure.orbit_ids(span_p, garr, inv, n_dim, ctx.k, redc)
    ids_f, n_f = fast.orbit_ids(span_f, garr, inv, n_dim, ctx.k, redc)
    assert n_p == n_f
    assert np.array_equal(ids_p, ids_f)

    x = span_p[len(span_p) // 2]
    mask_p = pure.commutes_mask(closure_p, x, n_dim, ctx.k, redc)
    mask_f = fast.commutes_mask(closure_f, x, n_dim, ctx.k, redc)
    assert np.array_equal(mask_p, mask_f)


def test_closure_limit_raises_in_both():
    sp = qf.standard_space(F2, 4, WittType.MINUS)
    garr = kernels.pack_many([g.matrix for g in qf.all_transvections(sp)], 1)
    redc = kernels.redc_table(F2)
    for impl in (pure, fast):
        with pytest.raises(ClosureLimitError):
            impl.closure(garr, 4, 1, redc, 100)  # |O_4^-| = 120 > 100


def test_identity_and_sorting_helpers():
    ident = kernels.identity_planes(4, 1)
    assert kernels.unpack_matrix(ident, 4, 1) == (
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    )
    arr = np.array([[3, 0], [1, 2], [1, 1]], dtype=np.uint64)
    srt = kernels.sort_packed(arr)
    assert [tuple(map(int, r)) for r in srt] == [(1, 1), (1, 2), (3, 0)]
    assert kernels.find_packed(srt, (1, 2)) == 1
    assert kernels.find_packed(srt, (2, 2)) == -1


def test_backend_dispatch_name():
    assert kernels.backend_name() in ("py", "c")


def test_default_threads_env(monkeypatch):
    monkeypatch.delenv("ORBITFORGE_THREADS", raising=False)
    assert kernels.default_threads() == 1
    monkeypatch.setenv("ORBITFORGE_THREADS", "3")
    assert kernels.default_threads() == 3
    monkeypatch.setenv("ORBITFORGE_THREADS", "0")
    with pytest.raises(ValueError):
        kernels.default_threads()
