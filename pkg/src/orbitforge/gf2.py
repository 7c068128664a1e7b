"""Arithmetic in the binary fields GF(2^k), k <= 8.

Field elements are plain ints in [0, 2^k): the bits of an element are
the coefficients of its polynomial residue modulo a fixed irreducible
polynomial, so 0 and 1 are always the additive and multiplicative
identities and addition is xor.  A :class:`FieldCtx` carries the
extension degree and the reduction polynomial; it is immutable after
construction and safe to share between threads.

The Artin-Schreier machinery (membership in {x^2 + x} and the choice of
the canonical non-member delta) lives here because the classification
of quadratic forms in characteristic 2 hangs off that single element.
"""

from __future__ import annotations

from functools import lru_cache

# One fixed irreducible polynomial per degree: the numerically smallest
# irreducible bitmask (bit i = coefficient of x^i).  Frozen so element
# encodings and delta are reproducible across runs.
REDUCTION_POLY = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}

MAX_DEGREE = 8


class FieldCtx:
    """The field GF(2^k) with its fixed reduction polynomial.

    All arithmetic methods take and return ints below 2^k.
    """

    __slots__ = ("k", "q", "poly", "_mul", "_inv", "_sqrt", "_delta")

    def __init__(self, k: int):
        if not 1 <= k <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in [1, {MAX_DEGREE}], got {k}")
        self.k = k
        self.q = 1 << k
        self.poly = REDUCTION_POLY[k]
        q = self.q
        mul = [0] * (q * q)
        for a in range(q):
            for b in range(a, q):
                v = _clmul_mod(a, b, self.poly, k)
                mul[a * q + b] = v
                mul[b * q + a] = v
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self._inv = inv
        # Frobenius x -> x^2 is a bijection; invert it once.
        sqrt = [0] * q
        for a in range(q):
            sqrt[mul[a * q + a]] = a
        self._sqrt = sqrt
        self._delta = None

    def __repr__(self):
        return f"FieldCtx(k={self.k})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.k == self.k

    def __hash__(self):
        return hash(("FieldCtx", self.k))

    def validate(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element of GF(2^{self.k})")
        return a

    def elements(self):
        return range(self.q)

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self._mul[a * self.q + b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of 0 in GF(2^k)")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqr(self, a: int) -> int:
        return self._mul[a * self.q + a]

    def sqrt(self, a: int) -> int:
        """The unique square root (Frobenius is bijective in char 2)."""
        return self._sqrt[a]

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.sqr(a)
            e >>= 1
        return r

    def trace(self, a: int) -> int:
        """Absolute trace a + a^2 + a^4 + ... + a^(2^(k-1)), valued in {0, 1}."""
        t = 0
        v = a
        for _ in range(self.k):
            t ^= v
            v = self.sqr(v)
        return t

    def is_artin_schreier(self, a: int) -> bool:
        """True iff a = y^2 + y for some y in the field."""
        return any(self.sqr(y) ^ y == a for y in range(self.q))

    def pick_delta(self) -> int:
        """Smallest element outside {y^2 + y}; exists since that image has index 2."""
        if self._delta is None:
            image = {self.sqr(y) ^ y for y in range(self.q)}
            self._delta = min(a for a in range(self.q) if a not in image)
        return self._delta


def _clmul_mod(a: int, b: int, poly: int, k: int) -> int:
    """Carry-less multiply of a and b, reduced modulo poly of degree k."""
    r = 0
    top = 1 << k
    for _ in range(k):
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


@lru_cache(maxsize=None)
def field(k: int) -> FieldCtx:
    """Shared FieldCtx instances keyed by extension degree."""
    return FieldCtx(k)


@lru_cache(maxsize=None)
def field_of_order(q: int) -> FieldCtx:
    k = q.bit_length() - 1
    if q != 1 << k or k < 1:
        raise ValueError(f"q must be a power of 2 in [2, 256], got {q}")
    return field(k)


def is_irreducible(poly: int) -> bool:
    """Exhaustive factor test for small polynomials over F_2 (degree <= 8)."""
    k = poly.bit_length() - 1
    if k < 1:
        return False

    def clmul(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
        return r

    for a in range(2, 1 << k):
        da = a.bit_length() - 1
        if da < 1 or da >= k:
            continue
        for b in range(2, 1 << k):
            if (b.bit_length() - 1) + da != k:
                continue
            if clmul(a, b) == poly:
                return False
    return True


def reduction_planes(ctx: FieldCtx) -> tuple[int, ...]:
    """x^d mod poly as element bits, for d = 0 .. 2k-2.

    This is the fold table the packed-matrix kernels use to reduce
    plane-products of degree up to 2k-2 back onto the k bit-planes.
    """
    out = []
    v = 1
    for _ in range(2 * ctx.k - 1):
        out.append(v)
        v = ctx.mul(v, 2) if ctx.k > 1 else v  # x == 1 in GF(2)
    if ctx.k == 1:
        return (1,)
    return tuple(out)
