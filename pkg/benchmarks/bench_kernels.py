#!/usr/bin/env python3
"""Benchmark: compiled kernel core vs the pure-Python twin.

Runs the three hot kernels (nilpotent span scan, group closure, orbit
BFS) on a ladder of spaces with both backends and prints a speedup
table.  The pure twin is capped to the sizes it can finish quickly;
pass --full to include o_6(F_2) closures on both.

Usage: python benchmarks/bench_kernels.py [--full]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from orbitforge import _purekern
from orbitforge import gf2, kernels
from orbitforge import quadform as qf
from orbitforge.quadform import WittType

try:
    from orbitforge import _fastkern
except ImportError:
    _fastkern = None


def space_inputs(q, n_dim, wt):
    ctx = gf2.field_of_order(q)
    sp = qf.standard_space(ctx, n_dim, wt)
    redc = kernels.redc_table(ctx)
    basis = qf.lie_algebra_basis(sp)
    flips = kernels.span_flips([kernels.pack_matrix(m, ctx.k) for m in basis], ctx)
    gens = qf.all_transvections(sp)
    garr = kernels.pack_many([g.matrix for g in gens], ctx.k)
    ginv = kernels.pack_many([g.inverse().matrix for g in gens], ctx.k)
    order = qf.classical_group_order(n_dim, wt, q)
    return sp, ctx, redc, flips, garr, ginv, order


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def run_case(q, n_dim, wt, impls):
    sp, ctx, redc, flips, garr, ginv, order = space_inputs(q, n_dim, wt)
    rows = []
    results = {}
    for name, impl in impls:
        span, t_span = timed(impl.nilpotent_span, flips, n_dim, ctx.k, redc, 1)
        closure, t_clo = timed(impl.closure, garr, n_dim, ctx.k, redc, order)
        (ids, n_orb), t_bfs = timed(impl.orbit_ids, span, garr, ginv, n_dim, ctx.k, redc)
        results[name] = (span, closure, ids)
        rows.append((name, len(span), t_span, len(closure), t_clo, n_orb, t_bfs))
    if len(results) == 2:
        a, b = results["pure"], results["compiled"]
        assert all(np.array_equal(x, y) for x, y in zip(a, b)), "backend outputs differ"
    label = f"o_{n_dim}^{wt.value}(F_{q})" if wt is not WittType.ODD_DEFECTIVE else f"o_{n_dim}(F_{q})"
    print(f"\n{label}:")
    print(f"  {'backend':9}  {'span':>7} {'t_span':>8}  {'|G|':>7} {'t_closure':>9}  {'orbits':>6} {'t_bfs':>8}")
    for name, n_span, t_span, n_clo, t_clo, n_orb, t_bfs in rows:
        print(
            f"  {name:9}  {n_span:7d} {t_span:7.3f}s  {n_clo:7d} {t_clo:8.3f}s  {n_orb:6d} {t_bfs:7.3f}s"
        )
    if len(rows) == 2:
        speed = [rows[0][i] / rows[1][i] if rows[1][i] > 0 else float("inf") for i in (2, 4, 6)]
        print(f"  {'speedup':9}  {'':7} {speed[0]:7.1f}x  {'':7} {speed[1]:7.1f}x  {'':6} {speed[2]:7.1f}x")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true", help="include the larger o_6 cases")
    args = parser.parse_args()

    impls = [("pure", _purekern)]
    if _fastkern is not None:
        impls.append(("compiled", _fastkern))
    else:
        print("compiled core not built; timing the pure twin only")

    cases = [
        (2, 3, WittType.ODD_DEFECTIVE),
        (2, 4, WittType.PLUS),
        (2, 4, WittType.MINUS),
        (2, 5, WittType.ODD_DEFECTIVE),
        (4, 3, WittType.ODD_DEFECTIVE),
    ]
    if args.full:
        cases += [(2, 6, WittType.PLUS), (2, 6, WittType.MINUS)]
    for q, n_dim, wt in cases:
        run_case(q, n_dim, wt, impls)


if __name__ == "__main__":
    main()
