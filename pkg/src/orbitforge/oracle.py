"""Brute-force ground truth: enumerate the nilpotent cone of o_N(F_q) for
small N, split it into conjugation orbits by BFS over certified
generators, compute per-orbit invariants directly from the matrices, and
reconcile everything with the combinatorial classification.

Default runs are gated to stay small; o_8 and the q=4 runs with N >= 5
sit behind large=True with a documented memory budget.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _linalg as la
from . import kernels, rational
from . import symbols as sy
from .errors import InconsistencyError, ResourceGuardError
from .gf2 import FieldCtx
from .invariants import chi_of, jordan_partition
from .quadform import (
    GeneratorSet,
    OrthMap,
    QuadraticSpace,
    WittType,
    all_transvections,
    dickson,
    generators,
    isometry,
    lie_algebra_basis,
    standard_space,
    witt_type,
)

SPAN_GUARD_BITS = 30


@dataclass(frozen=True)
class OrbitRecord:
    size: int
    representative: tuple[tuple[int, ...], ...]
    jordan: tuple[int, ...]
    chi_values: tuple[int, ...]  # index value at each distinct Jordan part
    label: rational.RationalOrbitLabel | None = None

    def symbol(self) -> sy.Symbol:
        parts = sorted(set(self.jordan), reverse=True)
        return sy.Symbol(
            tuple(
                (lam, chi, self.jordan.count(lam))
                for lam, chi in zip(parts, self.chi_values)
            )
        )

    def symbol_text(self) -> str:
        return self.symbol().text()


@dataclass
class OrbitReport:
    space: QuadraticSpace
    special: bool
    group_order: int
    group_certified: bool
    nilpotent_count: int
    orbits: list[OrbitRecord]
    timings: dict[str, float] = field(default_factory=dict)
    match_problems: list[str] = field(default_factory=list)
    _gens: GeneratorSet | None = field(default=None, repr=False)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def centralizer_order(self, orbit_index: int) -> int:
        size = self.orbits[orbit_index].size
        if self.group_order % size:
            raise InconsistencyError("orbit size does not divide the group order")
        return self.group_order // size

    def to_json_dict(self, include_timing: bool = False) -> dict:
        data = {
            "schema_version": "1",
            "space": {
                "dim": self.space.dim,
                "q": self.space.q,
                "type": witt_type(self.space).value,
            },
            "group": "SO" if self.special else "O",
            "group_order": self.group_order,
            "group_order_certified": self.group_certified,
            "nilpotent_count": self.nilpotent_count,
            "orbit_count": self.orbit_count,
            "orbits": [
                {
                    "size": rec.size,
                    "representative": [list(row) for row in rec.representative],
                    "jordan": list(rec.jordan),
                    "chi": list(rec.chi_values),
                    "centralizer_order": self.centralizer_order(i),
                    "label": rec.label.to_json_dict() if rec.label else None,
                }
                for i, rec in enumerate(self.orbits)
            ],
        }
        if include_timing:
            data["timing"] = {k: round(v, 6) for k, v in self.timings.items()}
        return data

    def to_table(self) -> str:
        head = (
            f"space: dim={self.space.dim} q={self.space.q} "
            f"type={witt_type(self.space).value} group={'SO' if self.special else 'O'}\n"
            f"group order: {self.group_order}"
            f"{' (closure-certified)' if self.group_certified else ' (formula)'}\n"
            f"nilpotent elements: {self.nilpotent_count}; orbits: {self.orbit_count}"
        )
        rows = [("#", "size", "jordan", "chi", "centralizer", "label")]
        for i, rec in enumerate(self.orbits):
            rows.append(
                (
                    str(i),
                    str(rec.size),
                    ",".join(map(str, rec.jordan)),
                    ",".join(map(str, rec.chi_values)),
                    str(self.centralizer_order(i)),
                    rec.label.text() if rec.label else "-",
                )
            )
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        return head + "\n" + "\n".join(lines)


def require_large(space_dim: int, q: int) -> bool:
    return space_dim >= 8 or (q > 2 and space_dim >= 5)


def _guard(space: QuadraticSpace, dim_o: int, large: bool) -> None:
    bits = space.ctx.k * dim_o
    if bits > SPAN_GUARD_BITS:
        raise ResourceGuardError(
            f"q^dim o(V) = 2^{bits} exceeds the 2^{SPAN_GUARD_BITS} enumeration guard"
        )
    if not large and require_large(space.dim, space.q):
        raise ResourceGuardError(
            f"dim {space.dim} at q={space.q} runs only with large=True (--large)"
        )


def enumerate_nilpotents(space: QuadraticSpace, large: bool = False, threads: int | None = None):
    """Sorted packed array of all nilpotent elements of o(V)."""
    ctx = space.ctx
    basis = lie_algebra_basis(space)
    _guard(space, len(basis), large)
    packed_basis = [kernels.pack_matrix(m, ctx.k) for m in basis]
    flips = kernels.span_flips(packed_basis, ctx)
    if threads is None:
        threads = kernels.default_threads()
    redc = kernels.redc_table(ctx)
    return kernels.nilpotent_span(flips, space.dim, ctx.k, redc, threads)


def pack(space: QuadraticSpace, rows) -> tuple[int, ...]:
    return kernels.pack_matrix(rows, space.ctx.k)


def unpack(space: QuadraticSpace, planes) -> tuple[tuple[int, ...], ...]:
    return kernels.unpack_matrix(planes, space.dim, space.ctx.k)


def orbit_partition(
    space: QuadraticSpace,
    special: bool = False,
    large: bool = False,
    threads: int | None = None,
    match: bool = True,
    strict: bool = True,
    check_invariants: bool = False,
) -> OrbitReport:
    """BFS orbit partition of the nilpotent cone under O(V) or SO(V).

    Orbits are keyed by their lexicographically smallest packed element
    and annotated with (jordan partition, index values); with match=True
    each orbit is matched to the unique rational label whose constructed
    representative lies in it (zero or double matches are a hard
    inconsistency error under strict=True).  check_invariants recomputes
    the invariants of every element (debug mode, small spaces only).
    """
    ctx = space.ctx
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    gens = generators(space, special=special)
    timings["generators"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    elems = enumerate_nilpotents(space, large=large, threads=threads)
    timings["nilpotent_scan"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    redc = kernels.redc_table(ctx)
    gen_arr = kernels.pack_many([g.matrix for g in gens.maps], ctx.k)
    inv_arr = kernels.pack_many([g.inverse().matrix for g in gens.maps], ctx.k)
    ids, orbit_count = kernels.orbit_ids(elems, gen_arr, inv_arr, space.dim, ctx.k, redc)
    timings["orbit_bfs"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    sizes = np.bincount(ids, minlength=orbit_count)
    first_index = np.full(orbit_count, -1, dtype=np.int64)
    for idx in range(len(ids)):
        if first_index[ids[idx]] < 0:
            first_index[ids[idx]] = idx
    records = []
    for o in range(orbit_count):
        rep = unpack(space, elems[first_index[o]])
        jordan = jordan_partition(ctx, rep)
        chis = tuple(chi_of(space, rep, lam) for lam in sorted(set(jordan), reverse=True))
        records.append(OrbitRecord(int(sizes[o]), rep, jordan, chis))
    if check_invariants:
        for idx in range(len(elems)):
            t = unpack(space, elems[idx])
            rec = records[int(ids[idx])]
            jordan = jordan_partition(ctx, t)
            if jordan != rec.jordan or rec.chi_values != tuple(
                chi_of(space, t, lam) for lam in sorted(set(jordan), reverse=True)
            ):
                raise InconsistencyError("invariants vary inside one orbit")
    timings["invariants"] = time.perf_counter() - t0

    report = OrbitReport(
        space=space,
        special=special,
        group_order=gens.order,
        group_certified=gens.certified,
        nilpotent_count=len(elems),
        orbits=records,
        timings=timings,
    )
    report._gens = gens  # reused by reconcile's centralizer checks
    if match:
        t0 = time.perf_counter()
        _match_labels(report, elems, ids, strict=strict)
        timings["label_match"] = time.perf_counter() - t0
    return report


def _locate(space: QuadraticSpace, elems, ids, lab) -> int:
    """Orbit id of a label's representative, transported into `space`."""
    rep_space, rep_t = rational.representative(lab, space.ctx)
    g = isometry(rep_space, space)
    ginv = la.inverse(space.ctx, g)
    t_std = la.mat_mul(space.ctx, la.mat_mul(space.ctx, g, rep_t), ginv)
    idx = kernels.find_packed(elems, pack(space, t_std))
    if idx < 0:
        raise InconsistencyError("transported representative is not a nilpotent element")
    return int(ids[idx])


def _twist_map(space: QuadraticSpace) -> OrthMap:
    """Some Dickson-1 orthogonal map (for tag II representatives)."""
    for t in all_transvections(space):
        if dickson(space, t) == 1:
            return t
    raise InconsistencyError("no Dickson-1 element found")


def _match_labels(report: OrbitReport, elems, ids, strict: bool) -> None:
    space = report.space
    wt = witt_type(space)
    flavor = "SO" if report.special else "O"
    labels = rational.enumerate_rational_orbits(space.dim, wt, flavor)
    assignment: dict[int, rational.RationalOrbitLabel] = {}
    problems = []
    twist = None
    for lab in labels:
        orbit = _locate(space, elems, ids, lab)
        if lab.tag == "II":
            if twist is None:
                twist = _twist_map(space)
            rep_space, rep_t = rational.representative(lab, space.ctx)
            g = isometry(rep_space, space)
            ginv = la.inverse(space.ctx, g)
            t_std = la.mat_mul(space.ctx, la.mat_mul(space.ctx, g, rep_t), ginv)
            twisted = la.mat_mul(
                space.ctx, la.mat_mul(space.ctx, twist.matrix, t_std), twist.inverse().matrix
            )
            idx = kernels.find_packed(elems, pack(space, twisted))
            if idx < 0:
                raise InconsistencyError("twisted representative left the nilpotent cone")
            orbit = int(ids[idx])
        if orbit in assignment:
            problems.append(
                f"orbit {orbit} matched by both {assignment[orbit].text()} and {lab.text()}"
            )
        assignment[orbit] = lab
    unmatched = [o for o in range(report.orbit_count) if o not in assignment]
    if len(labels) != report.orbit_count:
        problems.append(
            f"{len(labels)} theoretical labels vs {report.orbit_count} brute-force orbits"
        )
    if unmatched:
        problems.append(f"orbits without a label: {unmatched}")
    if problems and strict:
        raise InconsistencyError("; ".join(problems))
    report.match_problems = problems
    report.orbits = [
        OrbitRecord(rec.size, rec.representative, rec.jordan, rec.chi_values, assignment.get(o))
        for o, rec in enumerate(report.orbits)
    ]


def centralizer_order(report: OrbitReport, orbit_index: int) -> int:
    return report.centralizer_order(orbit_index)


def centralizer_elements(report: OrbitReport, orbit_index: int):
    """Matrices commuting with the orbit representative (needs the
    closure-certified group element list)."""
    gens: GeneratorSet = report._gens
    if gens.elements is None:
        raise ResourceGuardError("centralizer scan needs a closure-certified group")
    space = report.space
    ctx = space.ctx
    redc = kernels.redc_table(ctx)
    x = np.asarray(pack(space, report.orbits[orbit_index].representative), dtype=np.uint64)
    mask = kernels.commutes_mask(gens.elements, x, space.dim, ctx.k, redc)
    rows = [unpack(space, gens.elements[i]) for i in np.nonzero(mask)[0]]
    return rows


@dataclass
class ReconcileResult:
    ok: bool
    diff: dict
    report: OrbitReport

    def __bool__(self):
        return self.ok


def reconcile(
    space: QuadraticSpace,
    flavor: str = "O",
    large: bool = False,
    threads: int | None = None,
) -> ReconcileResult:
    """Compare brute force against the classification; structured diff on
    any mismatch.

    Checks: total orbit count; the per-symbol split counts; the 1-1
    label/orbit matching; invariant constancy of sizes within a symbol;
    and (when the group element list is available, non-defective O
    flavor) that centralizers sit inside SO exactly for the split
    (all-index-half) orbits.
    """
    if flavor not in ("O", "SO"):
        raise ValueError(f"unknown flavor {flavor!r}")
    special = flavor == "SO"
    if special and space.dim % 2 == 1:
        raise ValueError("SO(V) = O(V) on odd-defective spaces; use flavor='O'")
    report = orbit_partition(space, special=special, large=large, threads=threads, strict=False)
    diff: dict = {}
    wt = witt_type(space)
    labels = rational.enumerate_rational_orbits(space.dim, wt, flavor)
    if report.match_problems:
        diff["matching"] = report.match_problems
    if len(labels) != report.orbit_count:
        diff["orbit_count"] = {"theory": len(labels), "brute_force": report.orbit_count}

    by_symbol: dict[str, int] = {}
    for rec in report.orbits:
        by_symbol[rec.symbol_text()] = by_symbol.get(rec.symbol_text(), 0) + 1
    theory_by_symbol: dict[str, int] = {}
    for lab in labels:
        key = lab.symbol.text()
        theory_by_symbol[key] = theory_by_symbol.get(key, 0) + 1
    if by_symbol != theory_by_symbol:
        diff["per_symbol_split"] = {"theory": theory_by_symbol, "brute_force": by_symbol}

    total = sum(rec.size for rec in report.orbits)
    if total != report.nilpotent_count:
        diff["orbit_size_sum"] = {"sum": total, "nilpotents": report.nilpotent_count}

    gens: GeneratorSet = report._gens
    if not special and space.dim % 2 == 0 and gens.elements is not None:
        wrong = []
        for i, rec in enumerate(report.orbits):
            if rec.label is None:
                continue
            cent = centralizer_elements(report, i)
            inside_so = all(dickson(space, OrthMap(space, rows)) == 0 for rows in cent)
            is_split_orbit = sy.n2(rec.label.symbol) == 0
            if inside_so != is_split_orbit:
                wrong.append(rec.label.text())
        if wrong:
            diff["so_split_criterion"] = wrong
    return ReconcileResult(not diff, diff, report)


def space_for(q: int, n_dim: int, wt: WittType, ctx: FieldCtx | None = None) -> QuadraticSpace:
    from .gf2 import field_of_order

    return standard_space(ctx or field_of_order(q), n_dim, wt)
