"""Quadratic spaces over F_q in characteristic 2 and their orthogonal groups.

A space carries a quadratic form Q through the values Q(e_i) on a basis
plus the Gram matrix of the polarization <v,w> = Q(v+w) + Q(v) + Q(w),
which is alternating (zero diagonal) in characteristic 2.  Only
non-degenerate spaces are admitted: the bilinear radical has dimension
at most 1 and Q is nonzero on its nonzero vectors.

The orthogonal group machinery (transvections, Dickson invariant, group
closure certified against the classical order formulas) feeds the
brute-force oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _linalg as la
from . import kernels
from .errors import ClosureLimitError, InconsistencyError, ResourceGuardError
from .gf2 import FieldCtx


class WittType(str, Enum):
    PLUS = "+"
    MINUS = "-"
    ODD_DEFECTIVE = "odd"

    def __repr__(self):
        return f"WittType({self.value!r})"


@dataclass(frozen=True)
class QuadraticSpace:
    """Non-degenerate quadratic space: per-basis Q values and Gram matrix."""

    ctx: FieldCtx
    q_diag: tuple[int, ...]
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.q_diag)
        ctx = self.ctx
        if n < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ValueError("gram matrix shape mismatch")
        for v in self.q_diag:
            ctx.validate(v)
        for i in range(n):
            if self.gram[i][i] != 0:
                raise ValueError("polarization is alternating; gram diagonal must be 0")
            for j in range(n):
                ctx.validate(self.gram[i][j])
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        rad = la.nullspace(ctx, [list(r) for r in self.gram])
        if len(rad) > 1:
            raise ValueError("degenerate space: bilinear radical has dimension >= 2")
        for v in rad:
            if eval_q(self, v) == 0:
                raise ValueError("degenerate space: Q vanishes on a nonzero radical vector")

    @property
    def dim(self) -> int:
        return len(self.q_diag)

    @property
    def q(self) -> int:
        return self.ctx.q

    def __repr__(self):
        return f"QuadraticSpace(q={self.q}, dim={self.dim}, type={witt_type(self).value})"


def standard_space(ctx: FieldCtx, n_dim: int, wt: WittType) -> QuadraticSpace:
    """The reference space of each Witt type in fixed coordinates.

    Plus: n hyperbolic pairs (e_i, e_{n+i}).  Minus: same with the last
    pair replaced by the anisotropic plane x^2 + xy + delta y^2.
    OddDefective: n hyperbolic pairs plus a radical vector with Q = 1.
    """
    if wt is WittType.ODD_DEFECTIVE:
        if n_dim % 2 == 0:
            raise ValueError("odd-defective spaces have odd dimension")
    elif n_dim % 2 != 0:
        raise ValueError(f"Witt type {wt.value} needs even dimension")
    n = n_dim // 2
    qd = [0] * n_dim
    gram = la.zeros(n_dim)
    for i in range(n):
        gram[i][n + i] = gram[n + i][i] = 1
    if wt is WittType.ODD_DEFECTIVE:
        qd[2 * n] = 1
    elif wt is WittType.MINUS:
        if n == 0:
            raise ValueError("Minus type needs dimension >= 2")
        qd[n - 1] = 1
        qd[2 * n - 1] = ctx.pick_delta()
    space = QuadraticSpace(ctx, tuple(qd), la.mat_freeze(gram))
    if witt_type(space) is not wt:
        raise InconsistencyError("standard space failed its Witt round-trip")
    return space


def eval_q(space: QuadraticSpace, v) -> int:
    """Q(sum c_i e_i) = sum c_i^2 Q(e_i) + sum_{i<j} c_i c_j <e_i, e_j>."""
    ctx = space.ctx
    s = 0
    for i, c in enumerate(v):
        if c:
            s ^= ctx.mul(ctx.sqr(c), space.q_diag[i])
    for i in range(space.dim):
        ci = v[i]
        if not ci:
            continue
        row = space.gram[i]
        for j in range(i + 1, space.dim):
            if v[j] and row[j]:
                s ^= ctx.mul(ctx.mul(ci, v[j]), row[j])
    return s


def bilinear(space: QuadraticSpace, v, w) -> int:
    ctx = space.ctx
    s = 0
    for i, ci in enumerate(v):
        if not ci:
            continue
        row = space.gram[i]
        for j, dj in enumerate(w):
            if dj and row[j]:
                s ^= ctx.mul(ctx.mul(ci, dj), row[j])
    return s


def radical(space: QuadraticSpace):
    """Basis of the bilinear radical (empty, or one vector)."""
    return la.nullspace(space.ctx, [list(r) for r in space.gram])


def _symplectic_pairs(space: QuadraticSpace):
    """Hyperbolic-pair basis (a_i, b_i) of the bilinear form modulo radical."""
    ctx = space.ctx
    n = space.dim
    vecs = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    pairs = []
    while vecs:
        v = vecs.pop(0)
        w = next((u for u in vecs if bilinear(space, v, u) != 0), None)
        if w is None:
            continue  # radical direction
        vecs.remove(w)
        w = la.vec_scale(ctx, ctx.inv(bilinear(space, v, w)), w)
        reduced = []
        for u in vecs:
            u = la.vec_add(u, la.vec_scale(ctx, bilinear(space, u, w), v))
            u = la.vec_add(u, la.vec_scale(ctx, bilinear(space, u, v), w))
            if any(u):
                reduced.append(u)
        vecs = reduced
        pairs.append((v, w))
    return pairs


def arf_invariant(space: QuadraticSpace) -> int:
    """sum Q(a_i) Q(b_i) over a symplectic basis, well defined mod {y^2+y}."""
    ctx = space.ctx
    s = 0
    for a, b in _symplectic_pairs(space):
        s ^= ctx.mul(eval_q(space, a), eval_q(space, b))
    return s


def witt_type(space: QuadraticSpace) -> WittType:
    """Odd dimension is defective; even splits by the Arf invariant.

    Plus holds exactly when a totally singular subspace of dimension
    N/2 exists, equivalently when the Arf sum lies in {y^2 + y}.
    """
    if space.dim % 2 == 1:
        return WittType.ODD_DEFECTIVE
    if space.ctx.is_artin_schreier(arf_invariant(space)):
        return WittType.PLUS
    return WittType.MINUS


def witt_index(space: QuadraticSpace) -> int:
    """Dimension of a maximal totally singular subspace (even dim only)."""
    if space.dim % 2 == 1:
        raise ValueError("witt_index is defined here for non-defective spaces")
    n = space.dim // 2
    return n if witt_type(space) is WittType.PLUS else n - 1


def max_totally_singular_dim(space: QuadraticSpace) -> int:
    """Exhaustive search oracle for the Witt index; exponential, tiny dims only."""
    ctx = space.ctx
    n = space.dim
    if ctx.q**n > 1 << 16:
        raise ResourceGuardError("exhaustive singular-subspace search is gated to q^dim <= 65536")
    all_vecs = [v for v in itertools.product(range(ctx.q), repeat=n) if any(v)]
    singular = [v for v in all_vecs if eval_q(space, v) == 0]

    def extend(chosen, start):
        best = len(chosen)
        for idx in range(start, len(singular)):
            v = singular[idx]
            if any(bilinear(space, v, c) != 0 for c in chosen):
                continue
            if la.in_span(ctx, chosen, v):
                continue
            # Q must vanish on the whole span; with <v,c> = 0 it does.
            best = max(best, extend(chosen + [v], idx + 1))
        return best

    return extend([], 0)


def lie_algebra_basis(space: QuadraticSpace):
    """Basis of {x : <x v, v> = 0 for all v, tr x = 0} as matrices.

    Char-2 polarization reduces the quadratic condition to <x e_i, e_i> = 0
    and <x e_i, e_j> = <x e_j, e_i>, which is the linear system solved here.
    """
    ctx = space.ctx
    n = space.dim
    g = space.gram

    rows = []
    # <x e_i, e_i> = sum_r x[r][i] g[r][i]
    for i in range(n):
        row = [0] * (n * n)
        for r in range(n):
            row[r * n + i] = g[r][i]
        rows.append(row)
    # <x e_i, e_j> + <x e_j, e_i> = 0 for i < j
    for i in range(n):
        for j in range(i + 1, n):
            row = [0] * (n * n)
            for r in range(n):
                row[r * n + i] ^= g[r][j]
                row[r * n + j] ^= g[r][i]
            rows.append(row)
    rows.append([1 if i == j else 0 for i in range(n) for j in range(n)])  # trace
    basis = la.nullspace(ctx, rows)
    return [tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n)) for v in basis]


@dataclass(frozen=True)
class OrthMap:
    """An element of O(V) as a matrix on column vectors; Q-preservation
    is verified at construction (basis values plus all basis pairs)."""

    space: QuadraticSpace
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        space = self.space
        n = space.dim
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError("matrix shape mismatch")
        cols = [tuple(self.matrix[r][i] for r in range(n)) for i in range(n)]
        for i in range(n):
            if eval_q(space, cols[i]) != space.q_diag[i]:
                raise ValueError("map does not preserve Q on a basis vector")
            for j in range(i + 1, n):
                if bilinear(space, cols[i], cols[j]) != space.gram[i][j]:
                    raise ValueError("map does not preserve the bilinear form")
        if la.rank(space.ctx, [list(r) for r in self.matrix]) != n:
            raise ValueError("map is singular")

    def __mul__(self, other: "OrthMap") -> "OrthMap":
        return OrthMap(self.space, la.mat_freeze(la.mat_mul(self.space.ctx, self.matrix, other.matrix)))

    def inverse(self) -> "OrthMap":
        return OrthMap(self.space, la.mat_freeze(la.inverse(self.space.ctx, self.matrix)))

    def apply(self, v):
        return la.mat_vec(self.space.ctx, self.matrix, v)


def identity_map(space: QuadraticSpace) -> OrthMap:
    return OrthMap(space, la.mat_freeze(la.identity(space.dim)))


def transvection(space: QuadraticSpace, v) -> OrthMap:
    """x -> x + <x, v> Q(v)^{-1} v; requires Q(v) != 0.  An involution."""
    ctx = space.ctx
    qv = eval_q(space, v)
    if qv == 0:
        raise ValueError("transvection needs an anisotropic vector")
    inv_qv = ctx.inv(qv)
    n = space.dim
    m = la.identity(n)
    for i in range(n):
        e_i = tuple(1 if j == i else 0 for j in range(n))
        c = ctx.mul(bilinear(space, e_i, v), inv_qv)
        if c:
            for r in range(n):
                m[r][i] ^= ctx.mul(c, v[r])
    return OrthMap(space, la.mat_freeze(m))


def all_transvections(space: QuadraticSpace) -> list[OrthMap]:
    """One transvection per projective anisotropic point, in vector order.

    t_{cv} = t_v, so vectors are normalized to leading coefficient 1.
    """
    ctx = space.ctx
    out = []
    for v in itertools.product(range(ctx.q), repeat=space.dim):
        lead = next((c for c in v if c), None)
        if lead != 1:
            continue
        if eval_q(space, v) != 0:
            out.append(transvection(space, v))
    return out


def dickson(space: QuadraticSpace, g: OrthMap) -> int:
    """rank(g + 1) mod 2; separates SO from O on non-defective spaces."""
    if space.dim % 2 == 1:
        raise ValueError("Dickson invariant is used here for non-defective spaces only")
    m = la.mat_add(g.matrix, la.identity(space.dim))
    return la.rank(space.ctx, m) % 2


def classical_group_order(n_dim: int, wt: WittType, q: int, special: bool = False) -> int:
    """Orders of the finite orthogonal groups (standard external formulas).

    In characteristic 2: |O_{2n+1}(F_q)| = |Sp_{2n}(F_q)|, and
    |O^±_{2n}(F_q)| = 2 q^{n(n-1)} (q^n ∓ 1) prod_{i<n} (q^{2i} - 1),
    with SO the index-2 Dickson kernel.
    """
    if wt is WittType.ODD_DEFECTIVE:
        if n_dim % 2 == 0:
            raise ValueError("odd type needs odd dimension")
        if special:
            raise ValueError("odd orthogonal groups are connected; use special=False")
        n = n_dim // 2
        order = q ** (n * n)
        for i in range(1, n + 1):
            order *= q ** (2 * i) - 1
        return order
    if n_dim % 2:
        raise ValueError("even type needs even dimension")
    n = n_dim // 2
    order = 2 * q ** (n * (n - 1))
    order *= (q**n - 1) if wt is WittType.PLUS else (q**n + 1)
    for i in range(1, n):
        order *= q ** (2 * i) - 1
    return order // 2 if special else order


assert classical_group_order(3, WittType.ODD_DEFECTIVE, 2) == 6
assert classical_group_order(5, WittType.ODD_DEFECTIVE, 2) == 720
assert classical_group_order(4, WittType.PLUS, 2) == 72
assert classical_group_order(4, WittType.MINUS, 2) == 120


# Full closure certification is bounded; beyond this the order comes from
# the formula alone (documented: only the optional o_8 runs exceed it).
CLOSURE_CERTIFY_LIMIT = 4_000_000

# Exhaustive augmentation search is gated as q^(dim^2) <= 2^24.
AUGMENT_SEARCH_BITS = 24


@dataclass(frozen=True)
class GeneratorSet:
    """Generators of O(V) or SO(V) with an order certificate when feasible.

    `elements` is the sorted packed array of the full group when the
    closure certificate ran, else None and `order` is the formula value.
    """

    space: QuadraticSpace
    special: bool
    maps: tuple[OrthMap, ...]
    order: int
    certified: bool
    augmented: bool
    elements: np.ndarray | None = field(repr=False, default=None)


def _pack_map(g: OrthMap) -> tuple[int, ...]:
    return kernels.pack_matrix(g.matrix, g.space.ctx.k)


def _iter_candidate_maps(space: QuadraticSpace):
    """All orthogonal maps, by exhaustive scan (augmentation fallback)."""
    ctx = space.ctx
    n = space.dim
    bits = ctx.k * n * n
    if bits > AUGMENT_SEARCH_BITS:
        raise ResourceGuardError("augmentation search space exceeds 2^24 matrices")
    mask = ctx.q - 1
    for val in range(1 << bits):
        rows = tuple(
            tuple((val >> (ctx.k * (i * n + j))) & mask for j in range(n)) for i in range(n)
        )
        try:
            yield OrthMap(space, rows)
        except ValueError:
            continue


def generators(
    space: QuadraticSpace,
    special: bool = False,
    certify: bool | None = None,
    closure_limit: int = CLOSURE_CERTIFY_LIMIT,
) -> GeneratorSet:
    """Generators of O(V) (special=False) or of the Dickson kernel SO(V).

    O(V) generators are all transvections; SO(V) generators are the
    pair products t_{v0} t_v.  When the classical order target fits the
    closure limit the generated group is built by BFS and its order is
    certified to equal the formula; a shortfall triggers the exhaustive
    augmentation search (the dim-4/q=2/Plus case), and failing to reach
    the target after augmentation is a hard error.
    """
    wt = witt_type(space)
    if special and wt is WittType.ODD_DEFECTIVE:
        raise ValueError("O_{2n+1} is connected in characteristic 2: SO(V) = O(V)")
    transvections = all_transvections(space)
    if special:
        if not transvections:
            raise InconsistencyError("no anisotropic vectors in a non-degenerate space")
        t0 = transvections[0]
        maps = [t0 * t for t in transvections[1:]]
        if not maps:
            maps = [identity_map(space)]
    else:
        maps = list(transvections)
    target = classical_group_order(space.dim, wt, space.ctx.q, special)
    if certify is None:
        certify = target <= closure_limit
    if not certify:
        return GeneratorSet(space, special, tuple(maps), target, False, False, None)

    ctx = space.ctx
    redc = kernels.redc_table(ctx)
    augmented = False

    def close(current):
        gens_arr = kernels.pack_many([g.matrix for g in current], ctx.k)
        try:
            return kernels.closure(gens_arr, space.dim, ctx.k, redc, target)
        except ClosureLimitError:
            raise InconsistencyError(
                "generated group exceeded the classical order formula"
            ) from None

    elems = close(maps)
    while len(elems) < target:
        augmented = True
        extra = None
        for cand in _iter_candidate_maps(space):
            if special and dickson(space, cand) != 0:
                continue
            if kernels.find_packed(elems, _pack_map(cand)) < 0:
                extra = cand
                break
        if extra is None:
            raise InconsistencyError(
                f"augmentation exhausted without reaching group order {target}"
            )
        maps.append(extra)
        elems = close(maps)
    return GeneratorSet(space, special, tuple(maps), target, True, augmented, elems)


def isometry(src: QuadraticSpace, dst: QuadraticSpace):
    """A matrix g with Q_dst(g v) = Q_src(v); columns are images of src's basis.

    Backtracking over destination vectors; spaces of equal dimension,
    field and Witt type are always isometric, so this must succeed.
    """
    if src.ctx != dst.ctx or src.dim != dst.dim:
        raise ValueError("isometry needs equal field and dimension")
    ctx = src.ctx
    n = src.dim
    candidates = list(itertools.product(range(ctx.q), repeat=n))
    by_q: dict[int, list] = {}
    for v in candidates:
        if any(v):
            by_q.setdefault(eval_q(dst, v), []).append(v)

    chosen: list[tuple] = []

    def extend(i: int) -> bool:
        if i == n:
            return True
        for w in by_q.get(src.q_diag[i], ()):
            if any(bilinear(dst, w, chosen[j]) != src.gram[i][j] for j in range(i)):
                continue
            if la.in_span(ctx, chosen, w):
                continue
            chosen.append(w)
            if extend(i + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        raise InconsistencyError("no isometry found between isometric spaces")
    g = tuple(tuple(chosen[i][r] for i in range(n)) for r in range(n))
    return g
