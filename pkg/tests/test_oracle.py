import pytest

from orbitforge import gf2, oracle
from orbitforge import quadform as qf
from orbitforge import rational as ra
from orbitforge import symbols as sy
from orbitforge.errors import ResourceGuardError
from orbitforge.invariants import chi_of, jordan_partition, symbol_of
from orbitforge.quadform import WittType

F2 = gf2.field(1)
F4 = gf2.field(2)


def space(ctx, n_dim, wt):
    return qf.standard_space(ctx, n_dim, wt)


def test_jordan_partition_basics():
    zero5 = tuple(tuple(0 for _ in range(5)) for _ in range(5))
    assert jordan_partition(F2, zero5) == (1, 1, 1, 1, 1)
    shift = tuple(tuple(1 if i == j + 1 else 0 for j in range(4)) for i in range(4))
    assert jordan_partition(F2, shift) == (4,)
    with pytest.raises(ValueError):
        jordan_partition(F2, ((1, 0), (0, 1)))


def test_chi_of_zero_matrix_on_defective_space():
    sp = space(F2, 5, WittType.ODD_DEFECTIVE)
    zero = tuple(tuple(0 for _ in range(5)) for _ in range(5))
    assert chi_of(sp, zero, 1) == 1  # Q is not identically zero on V


def test_chi_of_normal_form_pieces():
    # W_l^0(m): index value at m is l; D(m): index value at m is m
    for m in range(1, 5):
        for l in range((m + 1) // 2, m + 1):
            sym = sy.Symbol(((m, l, 2),))
            bits = tuple(0 for _ in sy.break_positions(sym))
            lab = ra.RationalOrbitLabel(sym, bits, WittType.PLUS)
            sp, t = ra.representative(lab, F2)
            assert chi_of(sp, t, m) == l
    for m in range(1, 5):
        entries = [(m, m, 1)] if m == 1 else [(m, m, 1), (m - 1, m - 1, 1)]
        sym = sy.Symbol(tuple(entries))
        lab = ra.RationalOrbitLabel(sym, tuple(0 for _ in sy.break_positions(sym)), WittType.ODD_DEFECTIVE)
        sp, t = ra.representative(lab, F2)
        assert chi_of(sp, t, m) == m


def test_orbit_counts_small_spaces():
    assert oracle.orbit_partition(space(F2, 3, WittType.ODD_DEFECTIVE)).orbit_count == 2
    assert oracle.orbit_partition(space(F2, 4, WittType.PLUS)).orbit_count == 3
    assert oracle.orbit_partition(space(F2, 4, WittType.MINUS)).orbit_count == 2
    assert oracle.orbit_partition(space(F2, 5, WittType.ODD_DEFECTIVE)).orbit_count == 5
    assert oracle.orbit_partition(space(F2, 4, WittType.PLUS), special=True).orbit_count == 4


def test_orbit_invariance_debug_mode():
    for n_dim, wt in [(3, WittType.ODD_DEFECTIVE), (4, WittType.PLUS), (5, WittType.ODD_DEFECTIVE)]:
        oracle.orbit_partition(space(F2, n_dim, wt), check_invariants=True)


def test_orbit_sizes_divide_group_order():
    rep = oracle.orbit_partition(space(F2, 5, WittType.ODD_DEFECTIVE))
    assert sum(r.size for r in rep.orbits) == rep.nilpotent_count
    for i, r in enumerate(rep.orbits):
        assert rep.group_order % r.size == 0
        assert rep.centralizer_order(i) * r.size == rep.group_order


def test_centralizer_spec_examples():
    rep = oracle.orbit_partition(space(F2, 5, WittType.ODD_DEFECTIVE))
    zero_idx = next(i for i, r in enumerate(rep.orbits) if r.size == 1)
    assert rep.centralizer_order(zero_idx) == 720
    reg_idx = next(i for i, r in enumerate(rep.orbits) if r.jordan == (3, 2))
    assert rep.centralizer_order(reg_idx) == 720 // rep.orbits[reg_idx].size


def test_symbols_of_orbits_are_valid():
    rep = oracle.orbit_partition(space(F2, 5, WittType.ODD_DEFECTIVE))
    for r in rep.orbits:
        assert sy.validate_symbol(r.symbol()) is None


def test_chi_pointwise_max_against_matrix_level():
    # module index of a sum = pointwise max of the summand index bounds
    rep = oracle.orbit_partition(space(F2, 5, WittType.ODD_DEFECTIVE))
    sp = space(F2, 5, WittType.ODD_DEFECTIVE)
    for r in rep.orbits:
        sym = r.symbol()
        for m in range(1, 6):
            assert chi_of(sp, r.representative, m) == sym.chi_at(m)


def test_label_matching_is_bijective():
    rep = oracle.orbit_partition(space(F2, 5, WittType.ODD_DEFECTIVE))
    labels = [r.label for r in rep.orbits]
    assert all(lab is not None for lab in labels)
    assert len({lab.text() for lab in labels}) == len(labels)
    for r in rep.orbits:
        assert r.label.symbol == r.symbol()


def test_reconcile_small():
    assert oracle.reconcile(space(F2, 5, WittType.ODD_DEFECTIVE)).ok
    assert oracle.reconcile(space(F2, 4, WittType.PLUS)).ok
    assert oracle.reconcile(space(F2, 4, WittType.PLUS), "SO").ok
    assert oracle.reconcile(space(F2, 4, WittType.MINUS)).ok
    with pytest.raises(ValueError):
        oracle.reconcile(space(F2, 5, WittType.ODD_DEFECTIVE), "SO")


def test_so_tags_land_in_distinct_orbits():
    rep = oracle.orbit_partition(space(F2, 4, WittType.PLUS), special=True)
    tagged = [r for r in rep.orbits if r.label.tag]
    assert len(tagged) == 2
    assert {r.label.tag for r in tagged} == {"I", "II"}
    assert tagged[0].label.symbol == tagged[1].label.symbol
    assert tagged[0].size == tagged[1].size


def test_guards():
    with pytest.raises(ResourceGuardError):
        oracle.enumerate_nilpotents(space(F2, 8, WittType.PLUS))  # needs large=True
    with pytest.raises(ResourceGuardError):
        oracle.enumerate_nilpotents(space(F4, 5, WittType.ODD_DEFECTIVE))  # q=4 N>=5
    with pytest.raises(ResourceGuardError):
        # q^dim o = 4^21 blows the 2^30 enumeration guard even with large
        oracle.enumerate_nilpotents(space(F4, 7, WittType.ODD_DEFECTIVE), large=True)


def test_report_json_and_table():
    rep = oracle.orbit_partition(space(F2, 3, WittType.ODD_DEFECTIVE))
    data = rep.to_json_dict()
    assert data["orbit_count"] == 2
    assert data["space"] == {"dim": 3, "q": 2, "type": "odd"}
    assert "timing" not in data
    assert "timing" in rep.to_json_dict(include_timing=True)
    table = rep.to_table()
    assert "orbits: 2" in table and "(2)_2(1)_1" in table


def test_conjugating_basis_change_preserves_counts():
    # oracle counts are basis-independent: run on a scrambled presentation
    import random

    from orbitforge import _linalg as la

    rng = random.Random(5)
    sp = space(F2, 4, WittType.MINUS)
    while True:
        rows = [[rng.randrange(2) for _ in range(4)] for _ in range(4)]
        if la.rank(F2, rows) == 4:
            break
    cols = [tuple(rows[r][i] for r in range(4)) for i in range(4)]
    qd = tuple(qf.eval_q(sp, c) for c in cols)
    gram = tuple(
        tuple(qf.bilinear(sp, cols[i], cols[j]) if i != j else 0 for j in range(4))
        for i in range(4)
    )
    scrambled = qf.QuadraticSpace(F2, qd, gram)
    assert oracle.orbit_partition(scrambled).orbit_count == 2
