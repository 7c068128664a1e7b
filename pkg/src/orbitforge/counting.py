"""Partition counting, orbit-count formulas, and Weyl-group irreducible counts.

p(k) is the partition count, p2(n) = sum_k p(k) p(n-k) counts bipartitions.
The orbit-count formulas are exact (not just bounds); the Dminus formula is
derived from the Plus/Minus split symmetry and validated by enumeration,
it is not quoted from anywhere.
"""

from __future__ import annotations

from functools import lru_cache

from . import symbols as sy


@lru_cache(maxsize=None)
def p(k: int) -> int:
    """Number of partitions of k."""
    if k < 0:
        raise ValueError("partition counts need k >= 0")
    table = [1] + [0] * k
    for part in range(1, k + 1):
        for total in range(part, k + 1):
            table[total] += table[total - part]
    return table[k]


def p2(n: int) -> int:
    """Number of ordered bipartitions (alpha, beta) with |alpha|+|beta| = n."""
    if n < 0:
        raise ValueError("bipartition counts need n >= 0")
    return sum(p(k) * p(n - k) for k in range(n + 1))


def p_half(n: int) -> int:
    """p(n/2), taken to be 0 for odd n so the formulas stay uniform."""
    return p(n // 2) if n % 2 == 0 else 0


SERIES = ("B", "Dplus", "Dminus", "SOplus")


def orbit_count(series: str, n: int) -> int:
    """Exact nilpotent orbit counts by series and rank.

    B: O_{2n+1}(F_q) orbits = p2(n).
    Dplus/Dminus: O^+/O^-_{2n}(F_q) orbits = (p2(n) +/- p(n/2)) / 2.
    SOplus: SO^+_{2n}(F_q) orbits = (p2(n) + 3 p(n/2)) / 2.
    All are q-independent.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    if series == "B":
        return p2(n)
    if series == "Dplus":
        return (p2(n) + p_half(n)) // 2
    if series == "Dminus":
        return (p2(n) - p_half(n)) // 2
    if series == "SOplus":
        return (p2(n) + 3 * p_half(n)) // 2
    raise ValueError(f"unknown series {series!r}")


def bipartitions(n: int):
    """All ordered bipartitions of n, deterministic order."""
    for k in range(n, -1, -1):
        for a in sy._partitions(k):
            for b in sy._partitions(n - k):
                yield (a, b)


def unordered_bipartition_count(n: int) -> int:
    """Unordered {alpha, beta} with the diagonal (alpha, alpha) counted twice."""
    seen = set()
    doubled = 0
    for a, b in bipartitions(n):
        if a == b:
            doubled += 1
        seen.add((a, b) if (a, b) >= (b, a) else (b, a))
    return len(seen) + doubled


def weyl_irrep_count(weyl_type: str, n: int) -> int:
    """Number of irreducible Weyl-group representations.

    Type B_n: ordered bipartitions of n.  Type D_n: unordered
    bipartitions with each (alpha, alpha) counted twice.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    if weyl_type == "B":
        return p2(n)
    if weyl_type == "D":
        return (p2(n) + 3 * p_half(n)) // 2
    raise ValueError(f"unknown Weyl type {weyl_type!r}")


def local_system_count(weyl_type: str, n: int) -> int:
    """Total count of (orbit, equivariant local system) pairs from symbols.

    Type B sums 2^{n1} over the defective symbols of dimension 2n+1.
    Type D sums, over the non-defective symbols of dimension 2n, the
    component-group size 2^{n2-1} for n2 >= 1 and 2 for the split
    (all-index-half) orbits.
    """
    if weyl_type == "B":
        return sum(2 ** sy.n1(s) for s in sy.enumerate_symbols(2 * n + 1, True))
    if weyl_type == "D":
        total = 0
        for s in sy.enumerate_symbols(2 * n, False):
            k = sy.n2(s)
            total += 2 ** (k - 1) if k >= 1 else 2
        return total
    raise ValueError(f"unknown Weyl type {weyl_type!r}")


def check_springer_cardinality(weyl_type: str, n: int) -> bool:
    """Does the orbit/local-system count match the Weyl irreducible count."""
    return local_system_count(weyl_type, n) == weyl_irrep_count(weyl_type, n)
