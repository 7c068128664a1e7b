import pytest

from orbitforge import counting
from orbitforge import symbols as sy


def test_partition_counts():
    assert counting.p(0) == 1
    assert counting.p(1) == 1
    assert counting.p(4) == 5
    assert counting.p(10) == 42
    # direct enumeration cross-check
    for k in range(0, 12):
        assert counting.p(k) == len(sy._partitions(k))


def test_p2_convolution_and_enumeration():
    assert counting.p2(0) == 1
    assert counting.p2(2) == 5
    assert counting.p2(3) == 10
    for n in range(0, 10):
        assert counting.p2(n) == sum(1 for _ in counting.bipartitions(n))
        assert counting.p2(n) == sum(counting.p(k) * counting.p(n - k) for k in range(n + 1))


def test_orbit_count_spec_values():
    assert counting.orbit_count("B", 2) == 5
    assert counting.orbit_count("Dplus", 2) == 3
    assert counting.orbit_count("SOplus", 2) == 4
    assert counting.orbit_count("Dminus", 2) == 2
    assert counting.orbit_count("B", 1) == 2
    assert counting.orbit_count("SOplus", 1) == 1
    assert counting.orbit_count("Dminus", 1) == 1
    with pytest.raises(ValueError):
        counting.orbit_count("B", 0)
    with pytest.raises(ValueError):
        counting.orbit_count("X", 2)


def test_orbit_counts_match_symbol_enumeration():
    for n in range(1, 9):
        syms_b = sy.enumerate_symbols(2 * n + 1, True)
        assert counting.orbit_count("B", n) == sum(2 ** sy.n1(s) for s in syms_b)
        syms_d = sy.enumerate_symbols(2 * n, False)
        plus = minus = 0
        for s in syms_d:
            k = sy.n2(s)
            if k == 0:
                plus += 1
            else:
                plus += 2 ** (k - 1)
                minus += 2 ** (k - 1)
        assert counting.orbit_count("Dplus", n) == plus
        assert counting.orbit_count("Dminus", n) == minus
        assert counting.orbit_count("SOplus", n) == plus + sum(
            1 for s in syms_d if sy.n2(s) == 0
        )


def test_weyl_irrep_counts():
    assert counting.weyl_irrep_count("B", 2) == 5
    assert counting.weyl_irrep_count("D", 2) == 4
    assert counting.weyl_irrep_count("D", 3) == 5
    for n in range(1, 11):
        assert counting.weyl_irrep_count("B", n) == counting.p2(n)
        assert counting.weyl_irrep_count("D", n) == counting.unordered_bipartition_count(n)


@pytest.mark.parametrize("weyl_type", ["B", "D"])
@pytest.mark.parametrize("n", range(1, 11))
def test_springer_cardinality(weyl_type, n):
    assert counting.check_springer_cardinality(weyl_type, n)


def test_sum_2_pow_n1_is_p2():
    for n in range(0, 13):
        total = sum(2 ** sy.n1(s) for s in sy.enumerate_symbols(2 * n + 1, True))
        assert total == counting.p2(n)
