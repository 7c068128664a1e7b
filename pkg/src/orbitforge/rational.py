"""Classification over F_q: decorated decompositions, the marker-rewriting
system, canonical rational orbit labels, exact splitting counts, component
groups, and explicit matrix representatives.

Over the closure field a nilpotent orbit is a symbol; over F_q each
indecomposable piece W_l(part) with l > part/2 acquires a two-valued
marker (0 or the fixed Artin-Schreier non-member delta), and sums of
decorated pieces are isomorphic exactly when their marker vectors differ
by the span of the rewriting moves:

  * two comparable W pieces flip both markers when l1 + l2 > part1;
  * next to the defective piece D(m), a W_l(k) with k >= m flips its
    marker alone when l + m > k, and a full-index W_k(k) with k < m
    always flips.

Every move is an involution whose applicability does not depend on the
current markers, so reachability classes are cosets of an F_2 span and
the canonical form is the unique coset member supported on the symbol's
break positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import symbols as sy
from .errors import InconsistencyError
from .gf2 import FieldCtx
from .invariants import is_nilpotent_matrix, symbol_of
from .quadform import QuadraticSpace, WittType, witt_type
from .symbols import PartitionPair, Symbol


@dataclass(frozen=True)
class Summand:
    """Indecomposable piece: W_index(part) with a marker, or D(part)."""

    kind: str  # 'W' | 'D'
    part: int
    index: int | None = None
    eps: int = 0  # 0 or 1; 1 means the delta-marked twist

    def __post_init__(self):
        if self.kind == "W":
            if self.index is None or not (self.part + 1) // 2 <= self.index <= self.part:
                raise ValueError(f"W index out of range: {self}")
            if self.eps and not self.can_twist:
                raise ValueError(f"no delta twist exists at index = part/2: {self}")
        elif self.kind == "D":
            if self.index is not None or self.eps:
                raise ValueError("D pieces carry no index or marker")
            if self.part < 1:
                raise ValueError("D part must be >= 1")
        else:
            raise ValueError(f"unknown summand kind {self.kind!r}")

    @property
    def can_twist(self) -> bool:
        return self.kind == "W" and 2 * self.index > self.part

    @property
    def dim(self) -> int:
        return 2 * self.part if self.kind == "W" else 2 * self.part - 1

    def __str__(self):
        if self.kind == "D":
            return f"D({self.part})"
        return f"W_{self.index}^{'d' if self.eps else '0'}({self.part})"


def _sort_key(s: Summand):
    # Symbol order: parts descending; at equal part the W pieces precede
    # the defective piece; delta-marked copies first for a canonical tuple.
    return (-s.part, 0 if s.kind == "W" else 1, -(s.eps if s.kind == "W" else 0))


@dataclass(frozen=True)
class DecoratedDecomposition:
    """Multiset of summands, kept in sorted canonical order."""

    summands: tuple[Summand, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=_sort_key)))
        if sum(1 for s in self.summands if s.kind == "D") > 1:
            raise ValueError("at most one defective piece (non-degeneracy)")

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.summands)

    @property
    def defective(self) -> bool:
        return any(s.kind == "D" for s in self.summands)

    def undecorated(self) -> tuple[tuple[str, int, int | None], ...]:
        return tuple((s.kind, s.part, s.index) for s in self.summands)

    def delta_count(self) -> int:
        return sum(s.eps for s in self.summands if s.kind == "W")

    def __str__(self):
        return " + ".join(str(s) for s in self.summands)


def symbol_of_decomposition(dec: DecoratedDecomposition) -> Symbol:
    """The symbol of a normalized decomposition; rejects non-normal multisets.

    Normal means: one index value per part (the symbol's), and the
    undecorated multiset is exactly the symbol's paired form.
    """
    counts: dict[int, int] = {}
    chis: dict[int, int] = {}

    def add(part, chi, mult):
        if part < 1:
            return
        if chis.setdefault(part, chi) != chi:
            raise ValueError("not a normalized decomposition: two index values at one part")
        counts[part] = counts.get(part, 0) + mult

    for s in dec.summands:
        if s.kind == "W":
            add(s.part, s.index, 2)
        else:
            add(s.part, s.part, 1)
            add(s.part - 1, s.part - 1, 1)
    entries = tuple((p, chis[p], counts[p]) for p in sorted(counts, reverse=True))
    sym = Symbol(entries)
    err = sy.validate_symbol(sym)
    if err:
        raise ValueError(f"not a normalized decomposition: {err}")
    expected = sorted(
        (k, p, i if k == "W" else -1) for k, p, i, _ in sy.paired_summands(sym)
    )
    actual = sorted((k, p, i if k == "W" else -1) for k, p, i in dec.undecorated())
    if expected != actual:
        raise ValueError("not a normalized decomposition: multiset differs from the paired form")
    return sym


def decomposition_of_symbol(sym: Symbol, bits: tuple[int, ...] = ()) -> DecoratedDecomposition:
    """The paired-form decomposition; marker bits land on the first copy
    of each break entry."""
    breaks = sy.break_positions(sym)
    if len(bits) != len(breaks):
        raise ValueError(f"expected {len(breaks)} bits, got {len(bits)}")
    marked = {entry: bit for entry, bit in zip(breaks, bits)}
    used = set()
    out = []
    for kind, part, index, entry in sy.paired_summands(sym):
        if kind == "D":
            out.append(Summand("D", part))
            continue
        eps = 0
        if marked.get(entry) and entry not in used:
            eps = 1
            used.add(entry)
        out.append(Summand("W", part, index, eps))
    return DecoratedDecomposition(tuple(out))


def _move_span(dec: DecoratedDecomposition):
    """Capable-copy positions and the F_2 move vectors (as bitmasks)."""
    summands = dec.summands
    capable = [i for i, s in enumerate(summands) if s.kind == "W" and s.can_twist]
    pos = {idx: bit for bit, idx in enumerate(capable)}
    d_part = next((s.part for s in summands if s.kind == "D"), None)
    vecs = []
    for a_i, a in enumerate(capable):
        sa = summands[a]
        for b in capable[a_i + 1 :]:
            sb = summands[b]
            if sa.index >= sb.index and sa.part - sa.index >= sb.part - sb.index:
                part1, l1, l2 = sa.part, sa.index, sb.index
            elif sb.index >= sa.index and sb.part - sb.index >= sa.part - sa.index:
                part1, l1, l2 = sb.part, sb.index, sa.index
            else:
                continue
            if l1 + l2 > part1:
                vecs.append((1 << pos[a]) | (1 << pos[b]))
        if d_part is not None:
            if sa.part >= d_part and sa.index >= d_part:
                if sa.index + d_part > sa.part:
                    vecs.append(1 << pos[a])
            elif d_part > sa.part and sa.index == sa.part:
                vecs.append(1 << pos[a])
    return capable, vecs


def _f2_rank(vecs) -> int:
    basis = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
        basis.sort(reverse=True)
    return len(basis)


def _reduce_onto(d_vec: int, vecs, allowed: int) -> int:
    """The unique w = d_vec + (span element) with w & ~allowed == 0.

    Uniqueness and existence are the classification's 2^{breaks} count;
    their failure is an internal error, never a data error.
    """
    outside = ~allowed
    pivots: dict[int, tuple[int, int]] = {}  # low bit of restriction -> (r, f)
    for v in vecs:
        r, f = v & outside, v
        while r:
            b = r & -r
            if b not in pivots:
                pivots[b] = (r, f)
                break
            rb, fb = pivots[b]
            r ^= rb
            f ^= fb
        else:
            if f:
                raise InconsistencyError("rewriting span meets the break-bit space")
    r, f = d_vec & outside, d_vec
    while r:
        b = r & -r
        if b not in pivots:
            raise InconsistencyError("marker vector not reducible onto the break positions")
        rb, fb = pivots[b]
        r ^= rb
        f ^= fb
    return f


def iso_equivalent(a: DecoratedDecomposition, b: DecoratedDecomposition) -> bool:
    """Are two decorations of the same underlying multiset isomorphic."""
    if a.undecorated() != b.undecorated():
        raise ValueError("iso_equivalent compares decorations of one multiset")
    capable, vecs = _move_span(a)
    da = sum((s.eps << i) for i, s in enumerate(a.summands[j] for j in capable))
    db = sum((s.eps << i) for i, s in enumerate(b.summands[j] for j in capable))
    diff = da ^ db
    for rb in _span_basis(vecs):
        diff = min(diff, diff ^ rb)
    return diff == 0


def _span_basis(vecs):
    basis = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def move_closure(dec: DecoratedDecomposition) -> set[DecoratedDecomposition]:
    """Explicit reachability closure under single moves (test oracle)."""
    capable, vecs = _move_span(dec)
    seen = {dec}
    frontier = [dec]
    while frontier:
        new = []
        for cur in frontier:
            eps_vec = sum(cur.summands[j].eps << i for i, j in enumerate(capable))
            for v in vecs:
                flipped = eps_vec ^ v
                nxt = _with_eps(cur, capable, flipped)
                if nxt not in seen:
                    seen.add(nxt)
                    new.append(nxt)
        frontier = new
    return seen


def _with_eps(dec: DecoratedDecomposition, capable, eps_vec: int) -> DecoratedDecomposition:
    reps = list(dec.summands)
    for i, j in enumerate(capable):
        s = reps[j]
        reps[j] = Summand(s.kind, s.part, s.index, (eps_vec >> i) & 1)
    return DecoratedDecomposition(tuple(reps))


def witt_sign(dec: DecoratedDecomposition) -> WittType:
    """Plus exactly when the number of delta markers is even."""
    if dec.defective:
        raise ValueError("witt_sign applies to non-defective decompositions")
    return WittType.PLUS if dec.delta_count() % 2 == 0 else WittType.MINUS


@dataclass(frozen=True)
class RationalOrbitLabel:
    """Canonical name of one rational orbit: symbol, break bits, form type.

    `tag` distinguishes the two SO-orbits of a split orthogonal orbit
    (the all-index-half symbols); the naming is conventional: tag I
    holds the constructed representative, tag II its twist by any
    Dickson-1 element.
    """

    symbol: Symbol
    bits: tuple[int, ...]
    form_type: WittType
    tag: str | None = None

    def __post_init__(self):
        breaks = sy.break_positions(self.symbol)
        if len(self.bits) != len(breaks):
            raise ValueError(f"label needs {len(breaks)} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        if self.symbol.defective:
            if self.form_type is not WittType.ODD_DEFECTIVE:
                raise ValueError("defective symbols live in odd-defective spaces")
            if self.tag is not None:
                raise ValueError("tags only mark SO-split orbits of even spaces")
        else:
            if self.form_type is WittType.ODD_DEFECTIVE:
                raise ValueError("non-defective symbols live in even spaces")
            parity = WittType.PLUS if sum(self.bits) % 2 == 0 else WittType.MINUS
            if self.form_type is not parity:
                raise ValueError("form type must match the marker parity")
            if self.tag is not None and (sy.n2(self.symbol) != 0 or self.tag not in ("I", "II")):
                raise ValueError("tags I/II mark exactly the split orbits (n2 = 0)")

    @property
    def break_count(self) -> int:
        return len(self.bits)

    def bits_text(self) -> str:
        return "".join(str(b) for b in self.bits) if self.bits else "-"

    def text(self) -> str:
        base = f"{self.symbol.text()} | bits={self.bits_text()} | type={self.form_type.value}"
        return base + (f" | tag={self.tag}" if self.tag else "")

    def __str__(self):
        return self.text()

    def to_json_dict(self) -> dict:
        sym = self.symbol
        if sym.defective:
            n_count = sy.n1(sym)
            rank = n_count
        else:
            n_count = sy.n2(sym)
            rank = max(n_count - 1, 0)
        data = {
            "symbol": sym.text(),
            "bits": self.bits_text(),
            "type": self.form_type.value,
            "n1_or_n2": n_count,
            "component_group_rank": rank,
            "pair": label_to_pair(self).to_json_dict(),
        }
        if not sym.defective:
            data["so_split"] = n_count == 0
        if self.tag:
            data["tag"] = self.tag
        return data


def parse_label(text: str) -> RationalOrbitLabel:
    fields = [f.strip() for f in text.split("|")]
    if not fields:
        raise ValueError("empty label text")
    symbol = sy.parse_symbol(fields[0])
    bits: tuple[int, ...] = ()
    form = None
    tag = None
    for f in fields[1:]:
        if f.startswith("bits="):
            raw = f[5:]
            bits = () if raw in ("", "-") else tuple(int(c) for c in raw)
        elif f.startswith("type="):
            form = WittType(f[5:])
        elif f.startswith("tag="):
            tag = f[4:]
        else:
            raise ValueError(f"unknown label field {f!r}")
    if form is None:
        raise ValueError("label text needs a type= field")
    return RationalOrbitLabel(symbol, bits, form, tag)


def canonicalize(dec: DecoratedDecomposition) -> RationalOrbitLabel:
    """Reduce a decoration onto the break bits: constant on move-closure
    classes, and distinct on non-equivalent decorations."""
    sym = symbol_of_decomposition(dec)
    capable, vecs = _move_span(dec)
    breaks = sy.break_positions(sym)
    entry_of_part = {lam: i for i, (lam, _, _) in enumerate(sym.entries)}
    by_entry: dict[int, int] = {}
    for bit_pos, j in enumerate(capable):
        by_entry.setdefault(entry_of_part[dec.summands[j].part], bit_pos)
    allowed = 0
    for entry in breaks:
        if entry not in by_entry:
            raise InconsistencyError("break entry has no twistable copy")
        allowed |= 1 << by_entry[entry]
    if len(capable) - _f2_rank(vecs) != len(breaks):
        raise InconsistencyError("move span rank disagrees with the break count")
    d_vec = sum(dec.summands[j].eps << i for i, j in enumerate(capable))
    reduced = _reduce_onto(d_vec, vecs, allowed)
    bits = tuple((reduced >> by_entry[entry]) & 1 for entry in breaks)
    if sym.defective:
        form = WittType.ODD_DEFECTIVE
    else:
        form = witt_sign(dec)
    return RationalOrbitLabel(sym, bits, form)


def component_group(sym: Symbol, flavor: str):
    """Component group of the centralizer: rank of the elementary abelian
    2-group, for flavor 'O_odd' (defective) or 'SO_even' (non-defective).

    For SO_even with n2 = 0 the group is trivial and the orthogonal
    orbit splits into two special-orthogonal orbits; the returned pair
    flags that case.
    """
    if flavor == "O_odd":
        if not sym.defective:
            raise ValueError("O_odd flavor needs a defective symbol")
        return sy.n1(sym), False
    if flavor == "SO_even":
        if sym.defective:
            raise ValueError("SO_even flavor needs a non-defective symbol")
        k = sy.n2(sym)
        if k == 0:
            return 0, True
        return k - 1, False
    raise ValueError(f"unknown flavor {flavor!r}")


def component_group_rank(sym: Symbol, flavor: str) -> int:
    return component_group(sym, flavor)[0]


def split_orbit(sym: Symbol, ambient: WittType) -> list[RationalOrbitLabel]:
    """The rational orbits a symbol contributes to the given space."""
    breaks = sy.break_positions(sym)
    if sym.defective:
        if ambient is not WittType.ODD_DEFECTIVE:
            raise ValueError("defective symbols need the odd-defective ambient type")
        return [
            RationalOrbitLabel(sym, bits, WittType.ODD_DEFECTIVE)
            for bits in _bit_vectors(len(breaks))
        ]
    if ambient is WittType.ODD_DEFECTIVE:
        raise ValueError("non-defective symbols need an even ambient type")
    out = []
    for bits in _bit_vectors(len(breaks)):
        parity = WittType.PLUS if sum(bits) % 2 == 0 else WittType.MINUS
        if parity is ambient:
            out.append(RationalOrbitLabel(sym, bits, ambient))
    return out


def _bit_vectors(k: int):
    return [tuple((v >> i) & 1 for i in range(k)) for v in range(1 << k)]


def enumerate_rational_orbits(
    n_dim: int, ambient: WittType, flavor: str = "O"
) -> list[RationalOrbitLabel]:
    """All rational orbit labels of o_N for the given space and group.

    flavor 'SO' duplicates exactly the split orbits (even, n2 = 0) with
    tags I and II; on odd-defective spaces SO(V) = O(V) and the O list
    is returned unchanged.
    """
    if flavor not in ("O", "SO"):
        raise ValueError(f"unknown flavor {flavor!r}")
    defective = ambient is WittType.ODD_DEFECTIVE
    if (n_dim % 2 == 1) != defective:
        raise ValueError("ambient type parity does not match the dimension")
    out = []
    for sym in sy.enumerate_symbols(n_dim, defective):
        for lab in split_orbit(sym, ambient):
            if flavor == "SO" and not defective and sy.n2(sym) == 0:
                out.append(RationalOrbitLabel(sym, lab.bits, lab.form_type, "I"))
                out.append(RationalOrbitLabel(sym, lab.bits, lab.form_type, "II"))
            else:
                out.append(lab)
    return out


def label_to_pair(lab: RationalOrbitLabel) -> PartitionPair:
    """Bipartition coordinates of a rational orbit.

    The base pair comes from the symbol; each delta bit transforms its
    block of the pair (chunk maps beta-2/alpha+2 in the defective case,
    a plain chunk swap in the even case, where the result is
    normalized up to a global swap).
    """
    sym = lab.symbol
    if sym.defective:
        alpha, beta = sy._odd_pair_lists(sym)
        t = len(beta)
        apad = alpha + [0]
        breaks = [
            r
            for r in range(1, t + 1)
            if apad[r] + 2 <= beta[r - 1] < apad[r - 1] + 2
        ]
        shift = 2
    else:
        alpha, beta = sy._even_pair_lists(sym)
        t = len(alpha)
        apad = alpha + [0]
        breaks = [r for r in range(1, t + 1) if apad[r] <= beta[r - 1] < apad[r - 1]]
        shift = 0
    if len(breaks) != len(lab.bits):
        raise InconsistencyError("pair-level break count disagrees with the label")
    out_a: list[int] = []
    out_b: list[int] = []
    prev = 0
    for bit, r in zip(lab.bits, breaks):
        a_chunk, b_chunk = alpha[prev:r], beta[prev:r]
        if bit:
            a_chunk, b_chunk = [b - shift for b in b_chunk], [a + shift for a in a_chunk]
        out_a.extend(a_chunk)
        out_b.extend(b_chunk)
        prev = r
    out_a.extend(alpha[prev:])
    out_b.extend(beta[prev:])
    pair = PartitionPair(tuple(out_a), tuple(out_b))
    return pair if sym.defective else pair.canonical_unordered()


def representative(lab: RationalOrbitLabel, ctx: FieldCtx):
    """Explicit (space, nilpotent matrix) realizing a rational orbit.

    Block construction from the normalized pieces: W_l^eps(part) spans
    chains v1, T v1, ..., and v2, ..., with Q(T^{l-1} v1) = 1,
    Q(T^{part-l} v2) = eps * delta, <T^a v1, T^b v2> = 1 iff
    a + b = part - 1; D(part) analogously with the shorter second chain.
    The result is verified: T in o(V), nilpotent, symbol and Witt type
    match the label (failure is an internal error).
    """
    if any(part > 62 for part, _, _ in lab.symbol.entries):
        raise ValueError("parts above 62 exceed the word-size guard")
    delta = ctx.pick_delta()
    dec = decomposition_of_symbol(lab.symbol, lab.bits)
    n = dec.dim
    qd = [0] * n
    gram = [[0] * n for _ in range(n)]
    tmat = [[0] * n for _ in range(n)]
    base = 0
    for s in dec.summands:
        m = s.part
        if s.kind == "W":
            l = s.index
            qd[base + l - 1] = 1
            if s.eps:
                qd[base + m + (m - l)] = delta
            for a in range(m):
                b = m - 1 - a
                gram[base + a][base + m + b] = 1
                gram[base + m + b][base + a] = 1
            for a in range(m - 1):
                tmat[base + a + 1][base + a] = 1
                tmat[base + m + a + 1][base + m + a] = 1
            base += 2 * m
        else:
            qd[base + m - 1] = 1
            for a in range(m - 1):
                b = m - 2 - a
                gram[base + a][base + m + b] = 1
                gram[base + m + b][base + a] = 1
            for a in range(m - 1):
                tmat[base + a + 1][base + a] = 1
            for a in range(m - 2):
                tmat[base + m + a + 1][base + m + a] = 1
            base += 2 * m - 1
    assert base == n
    space = QuadraticSpace(ctx, tuple(qd), tuple(tuple(r) for r in gram))
    t = tuple(tuple(r) for r in tmat)

    _verify_in_lie_algebra(space, t)
    if not is_nilpotent_matrix(ctx, t, n):
        raise InconsistencyError("representative is not nilpotent")
    if symbol_of(space, t) != lab.symbol:
        raise InconsistencyError("representative symbol mismatch")
    if witt_type(space) is not lab.form_type:
        raise InconsistencyError("representative Witt type mismatch")
    return space, t


def _verify_in_lie_algebra(space: QuadraticSpace, t) -> None:
    from .quadform import bilinear

    ctx = space.ctx
    n = space.dim
    cols = [tuple(t[r][i] for r in range(n)) for i in range(n)]
    basis = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    trace = 0
    for i in range(n):
        trace ^= t[i][i]
        if bilinear(space, cols[i], basis[i]) != 0:
            raise InconsistencyError("representative violates <T v, v> = 0")
        for j in range(i + 1, n):
            if bilinear(space, cols[i], basis[j]) != bilinear(space, cols[j], basis[i]):
                raise InconsistencyError("representative violates the symmetry condition")
    if trace != 0:
        raise InconsistencyError("representative has nonzero trace")
