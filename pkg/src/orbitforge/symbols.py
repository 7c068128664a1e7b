"""Closed-field orbit labels and the Spaltenstein bipartition coordinates.

A symbol records the Jordan parts of a nilpotent form-module together
with their multiplicities and index values: entries (part)^mult_index,
parts strictly decreasing.  Validity is the four-condition test of the
classification; the defective (odd-dimensional) symbols are exactly the
ones whose odd-multiplicity parts form a set {m, m-1} (intersected with
the positive integers), realized by the unique defective indecomposable.

Text grammar (the single interchange format): ``(part)_index^mult``
concatenated, with ``^1`` omitted, e.g. ``(3)_2^2(1)_1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache


def index_fn(m: int, l: int):
    """The indecomposable index function n -> max(0, min(n - m + l, l))."""
    if not (m + 1) // 2 <= l <= m:
        raise ValueError(f"index {l} out of range for part {m}")

    def fn(n: int) -> int:
        return index_value(m, l, n)

    return fn


def index_value(m: int, l: int, n: int) -> int:
    return max(0, min(n - m + l, l))


@dataclass(frozen=True)
class PartitionPair:
    """Ordered pair of partitions (alpha, beta); trailing zeros stripped."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self):
        for name in ("alpha", "beta"):
            parts = tuple(getattr(self, name))
            if any(p < 0 for p in parts):
                raise ValueError("partition parts must be non-negative")
            if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
                raise ValueError(f"{name} must be weakly decreasing")
            while parts and parts[-1] == 0:
                parts = parts[:-1]
            object.__setattr__(self, name, parts)

    @property
    def n(self) -> int:
        return sum(self.alpha) + sum(self.beta)

    def swapped(self) -> "PartitionPair":
        return PartitionPair(self.beta, self.alpha)

    def canonical_unordered(self) -> "PartitionPair":
        """Deterministic representative of {(a,b), (b,a)}: the lex-greater one."""
        return max(self, self.swapped(), key=lambda p: (p.alpha, p.beta))

    def to_json_dict(self):
        return {"alpha": list(self.alpha), "beta": list(self.beta)}

    def __str__(self):
        return f"({list(self.alpha)}, {list(self.beta)})"


@dataclass(frozen=True)
class Symbol:
    """Entries (part, index, mult) with parts strictly decreasing."""

    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for lam, chi, mult in self.entries:
            if lam < 1 or mult < 1 or chi < 0:
                raise ValueError("symbol entries need part >= 1, mult >= 1")
        parts = [e[0] for e in self.entries]
        if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("symbol parts must be strictly decreasing")

    @property
    def dim(self) -> int:
        return sum(lam * mult for lam, _, mult in self.entries)

    @property
    def defective(self) -> bool:
        return any(mult % 2 for _, _, mult in self.entries)

    def jordan_partition(self) -> tuple[int, ...]:
        out = []
        for lam, _, mult in self.entries:
            out.extend([lam] * mult)
        return tuple(out)

    def chi_at(self, n: int) -> int:
        """The module-level index value: pointwise max over the entries."""
        return max((index_value(lam, chi, n) for lam, chi, _ in self.entries), default=0)

    def text(self) -> str:
        out = []
        for lam, chi, mult in self.entries:
            out.append(f"({lam})_{chi}" + (f"^{mult}" if mult != 1 else ""))
        return "".join(out)

    def __str__(self):
        return self.text()


_ENTRY_RE = re.compile(r"\((\d+)\)_(\d+)(?:\^(\d+))?")


def parse_symbol(text: str) -> Symbol:
    pos = 0
    entries = []
    stripped = text.strip()
    for m in _ENTRY_RE.finditer(stripped):
        if m.start() != pos:
            raise ValueError(f"cannot parse symbol at {stripped[pos:]!r}")
        lam, chi = int(m.group(1)), int(m.group(2))
        mult = int(m.group(3)) if m.group(3) else 1
        entries.append((lam, chi, mult))
        pos = m.end()
    if pos != len(stripped) or not entries:
        raise ValueError(f"cannot parse symbol {text!r}")
    sym = Symbol(tuple(entries))
    err = validate_symbol(sym)
    if err:
        raise ValueError(f"invalid symbol {text!r}: {err}")
    return sym


def validate_symbol(sym: Symbol) -> str | None:
    """None when valid, else a report naming the first violated condition."""
    e = sym.entries
    s = len(e)
    for i in range(s - 1):
        if e[i][1] < e[i + 1][1]:
            return f"monotonicity: index rises from part {e[i][0]} to part {e[i+1][0]}"
        if e[i][0] - e[i][1] < e[i + 1][0] - e[i + 1][1]:
            return (
                f"monotonicity: co-index (part - index) rises from part "
                f"{e[i][0]} to part {e[i+1][0]}"
            )
    for lam, chi, _ in e:
        if not lam <= 2 * chi:
            return f"range: index {chi} below half of part {lam}"
        if chi > lam:
            return f"range: index {chi} exceeds part {lam}"
    for lam, chi, mult in e:
        if mult % 2 and chi != lam:
            return f"odd multiplicity at part {lam} requires full index, got {chi}"
    odd_parts = sorted((lam for lam, _, mult in e if mult % 2), reverse=True)
    if odd_parts:
        if len(odd_parts) == 1:
            if odd_parts != [1]:
                return (
                    f"odd-multiplicity parts {odd_parts} are not a consecutive "
                    "pair {m, m-1} (or the single part 1)"
                )
        elif len(odd_parts) != 2 or odd_parts[0] != odd_parts[1] + 1:
            return (
                f"odd-multiplicity parts {odd_parts} are not a consecutive pair "
                "{m, m-1}"
            )
    return None


def n1(sym: Symbol) -> int:
    """Break count over entries 1..s-1: index_i + index_{i+1} <= part_i
    with index_i != part_i/2."""
    e = sym.entries
    return sum(
        1
        for i in range(len(e) - 1)
        if e[i][1] + e[i + 1][1] <= e[i][0] and 2 * e[i][1] != e[i][0]
    )


def n2(sym: Symbol) -> int:
    """Same count over entries 1..s, with a zero sentinel index after the last."""
    e = sym.entries
    count = 0
    for i in range(len(e)):
        nxt = e[i + 1][1] if i + 1 < len(e) else 0
        if e[i][1] + nxt <= e[i][0] and 2 * e[i][1] != e[i][0]:
            count += 1
    return count


def break_positions(sym: Symbol) -> tuple[int, ...]:
    """Entry indices carrying one rational marker bit each (n1 or n2 style)."""
    e = sym.entries
    rng = range(len(e) - 1) if sym.defective else range(len(e))
    out = []
    for i in rng:
        nxt = e[i + 1][1] if i + 1 < len(e) else 0
        if e[i][1] + nxt <= e[i][0] and 2 * e[i][1] != e[i][0]:
            out.append(i)
    return tuple(out)


def defective_part(sym: Symbol) -> int | None:
    """The m with odd-multiplicity parts {m, m-1} (None when non-defective)."""
    odd = [lam for lam, _, mult in sym.entries if mult % 2]
    if not odd:
        return None
    return max(odd)


def paired_summands(sym: Symbol):
    """The normalized orthogonal decomposition, as (kind, part, index, entry#).

    Entries split into multiplicity-2 pieces W_index(part); the
    odd-multiplicity pair {m, m-1} yields the single defective piece
    ('D', m, m, entry#).  Pieces with part >= m precede it, the rest
    follow, matching the symbol order.
    """
    md = defective_part(sym)
    pre, post = [], []
    d_piece = None
    for idx, (lam, chi, mult) in enumerate(sym.entries):
        copies = mult // 2
        target = pre if (md is not None and lam >= md) else post
        target.extend([("W", lam, chi, idx)] * copies)
        if mult % 2:
            if lam == md:
                d_piece = ("D", md, md, idx)
            # the part m-1 copy is absorbed into the defective piece
    if md is None:
        return pre + post
    assert d_piece is not None
    return pre + [d_piece] + post


def enumerate_symbols(n_dim: int, defective: bool) -> list[Symbol]:
    """All valid symbols of total dimension n_dim with the requested parity."""
    if n_dim < 1:
        raise ValueError("dimension must be >= 1")
    if (n_dim % 2 == 1) != defective:
        raise ValueError("odd dimension is defective, even dimension is not")
    out = []
    for partition in _partitions(n_dim):
        distinct = []
        for lam in partition:
            if distinct and distinct[-1][0] == lam:
                distinct[-1][1] += 1
            else:
                distinct.append([lam, 1])
        odd = [lam for lam, mult in distinct if mult % 2]
        if defective:
            if len(odd) == 1:
                if odd != [1]:
                    continue
            elif len(odd) != 2 or odd[0] != odd[1] + 1:
                continue
        elif odd:
            continue
        out.extend(_assign_indices(distinct))
    return out


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    cap = min(n, max_part) if max_part else n
    out = []
    for first in range(cap, 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _assign_indices(distinct) -> list[Symbol]:
    out = []
    s = len(distinct)

    def rec(i, acc):
        if i == s:
            out.append(Symbol(tuple(acc)))
            return
        lam, mult = distinct[i]
        if mult % 2:
            choices = [lam]
        else:
            choices = range(lam, (lam + 1) // 2 - 1, -1)
        for chi in choices:
            if acc:
                plam, pchi, _ = acc[-1]
                if chi > pchi or lam - chi > plam - pchi:
                    continue
            rec(i + 1, acc + [(lam, chi, mult)])

    rec(0, [])
    return out


def symbol_to_pair(sym: Symbol) -> PartitionPair:
    """Spaltenstein coordinates of a symbol (odd and even conventions)."""
    if sym.defective:
        alpha, beta = _odd_pair_lists(sym)
    else:
        alpha, beta = _even_pair_lists(sym)
    return PartitionPair(tuple(alpha), tuple(beta))


def _odd_pair_lists(sym: Symbol):
    """Pair-level (alpha, beta) lists of a defective symbol, zeros kept.

    Pieces before the defective one give alpha = index - 1 and
    beta = part - index + 1; the defective piece gives alpha = m - 1 and
    no beta; trailing pieces give alpha = part.
    """
    md = defective_part(sym)
    alpha, beta = [], []
    for kind, lam, chi, _ in paired_summands(sym):
        if kind == "D":
            alpha.append(md - 1)
        elif lam >= md:
            alpha.append(chi - 1)
            beta.append(lam - chi + 1)
        else:
            alpha.append(lam)
    return alpha, beta


def _even_pair_lists(sym: Symbol):
    alpha, beta = [], []
    for _, lam, chi, _ in paired_summands(sym):
        alpha.append(chi)
        beta.append(lam - chi)
    return alpha, beta


def pair_to_symbol(pair: PartitionPair, odd: bool) -> Symbol:
    """Inverse of symbol_to_pair on its image (Delta, resp. Delta')."""
    alpha, beta = pair.alpha, pair.beta
    parts: dict[int, list[int]] = {}

    def add(lam, chi, mult):
        if lam < 1:
            return
        ent = parts.setdefault(lam, [chi, 0])
        if ent[0] != chi:
            raise ValueError("pair is outside the image set: conflicting index values")
        ent[1] += mult

    if odd:
        t = len(beta)
        pad = lambda i: alpha[i] if i < len(alpha) else 0
        for i in range(t):
            if beta[i] > pad(i) + 2:
                raise ValueError("pair is outside the image set: beta_i > alpha_i + 2")
            add(pad(i) + beta[i], pad(i) + 1, 2)
        md = pad(t) + 1
        add(md, md, 1)
        add(md - 1, md - 1, 1)
        for i in range(t + 1, len(alpha)):
            add(alpha[i], alpha[i], 2)
    else:
        if len(beta) > len(alpha):
            raise ValueError("pair is outside the image set: beta longer than alpha")
        for i, a in enumerate(alpha):
            b = beta[i] if i < len(beta) else 0
            if b > a:
                raise ValueError("pair is outside the image set: beta_i > alpha_i")
            add(a + b, a, 2)
    entries = tuple(
        (lam, parts[lam][0], parts[lam][1]) for lam in sorted(parts, reverse=True)
    )
    sym = Symbol(entries)
    err = validate_symbol(sym)
    if err:
        raise ValueError(f"pair maps to an invalid symbol: {err}")
    return sym
