# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled twin of orbitforge._purekern: bit-packed GF(2^k) matrix kernels.

Same packing (k planes per matrix, byte i of a plane = row i) and the
same entry points; this is the import-time default.  The span scan can
fan out over a thread pool (the Gray walk restarts cheaply at any
offset), everything else is single-threaded C.
"""

import numpy as np

cimport cython
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy, memset

from .errors import ClosureLimitError, InconsistencyError

cnp.import_array()

cdef uint64_t COL = 0x0101010101010101ULL


cdef inline uint64_t f2mul(uint64_t a, uint64_t b) noexcept nogil:
    cdef uint64_t c = 0, col
    cdef int j
    for j in range(8):
        col = (a >> j) & COL
        if col:
            c ^= col * ((b >> (8 * j)) & 0xFFULL)
    return c


cdef inline void mat_mul_c(const uint64_t* a, const uint64_t* b, uint64_t* out,
                           int k, const uint64_t* redc) noexcept nogil:
    cdef uint64_t tmp[15]
    cdef uint64_t v, mask
    cdef int p, r, d
    if k == 1:
        out[0] = f2mul(a[0], b[0])
        return
    for d in range(2 * k - 1):
        tmp[d] = 0
    for p in range(k):
        if a[p]:
            for r in range(k):
                if b[r]:
                    tmp[p + r] ^= f2mul(a[p], b[r])
    for p in range(k):
        out[p] = 0
    for d in range(2 * k - 1):
        v = tmp[d]
        if v:
            mask = redc[d]
            p = 0
            while mask:
                if mask & 1:
                    out[p] ^= v
                mask >>= 1
                p += 1


cdef inline bint is_nilpotent_c(const uint64_t* a, int k, const uint64_t* redc) noexcept nogil:
    # n <= 8: nilpotent iff a^8 = 0 (three squarings).
    cdef uint64_t t1[8]
    cdef uint64_t t2[8]
    cdef int p
    mat_mul_c(a, a, t1, k, redc)
    mat_mul_c(t1, t1, t2, k, redc)
    mat_mul_c(t2, t2, t1, k, redc)
    for p in range(k):
        if t1[p]:
            return False
    return True


cdef inline uint64_t hash_planes(const uint64_t* x, int k) noexcept nogil:
    cdef uint64_t h = 0x9E3779B97F4A7C15ULL
    cdef int p
    for p in range(k):
        h ^= x[p]
        h *= 0xBF58476D1CE4E5B9ULL
        h ^= h >> 27
    return h


cdef inline bint eq_planes(const uint64_t* a, const uint64_t* b, int k) noexcept nogil:
    cdef int p
    for p in range(k):
        if a[p] != b[p]:
            return False
    return True


def mat_mul(a, b, int n, int k, redc):
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] bb = np.ascontiguousarray(b, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] rr = np.ascontiguousarray(redc, dtype=np.uint64)
    out = np.zeros(k, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] oo = out
    mat_mul_c(<const uint64_t*> aa.data, <const uint64_t*> bb.data,
              <uint64_t*> oo.data, k, <const uint64_t*> rr.data)
    return out


def _sort_rows(arr):
    if len(arr) == 0:
        return arr
    k = arr.shape[1]
    order = np.lexsort(tuple(arr[:, p] for p in range(k - 1, -1, -1)))
    return np.ascontiguousarray(arr[order])


def _span_range(flips, int n, int k, redc, int64_t t0, int64_t t1):
    """Nilpotent members of the Gray walk over steps (t0, t1], plus the
    state at t0 itself when t0 == 0."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] fl = np.ascontiguousarray(flips, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] rr = np.ascontiguousarray(redc, dtype=np.uint64)
    cdef const uint64_t* fp = <const uint64_t*> fl.data
    cdef const uint64_t* redc_p = <const uint64_t*> rr.data
    cdef int nb = fl.shape[0]
    cdef uint64_t cur[8]
    cdef int p, j
    cdef int64_t t, cap, cnt
    cdef uint64_t g
    cdef uint64_t* buf

    for p in range(k):
        cur[p] = 0
    g = (<uint64_t> t0) ^ ((<uint64_t> t0) >> 1)
    for j in range(nb):
        if (g >> j) & 1:
            for p in range(k):
                cur[p] ^= fp[j * k + p]

    cap = 1024
    cnt = 0
    buf = <uint64_t*> malloc(cap * k * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            if t0 == 0 and is_nilpotent_c(cur, k, redc_p):
                for p in range(k):
                    buf[cnt * k + p] = cur[p]
                cnt += 1
            t = t0
            while t < t1:
                t += 1
                j = 0
                while not ((t >> j) & 1):
                    j += 1
                for p in range(k):
                    cur[p] ^= fp[j * k + p]
                if is_nilpotent_c(cur, k, redc_p):
                    if cnt == cap:
                        with gil:
                            buf = <uint64_t*> realloc(buf, 2 * cap * k * sizeof(uint64_t))
                            if buf == NULL:
                                raise MemoryError()
                        cap *= 2
                    for p in range(k):
                        buf[cnt * k + p] = cur[p]
                    cnt += 1
        out = np.empty((cnt, k), dtype=np.uint64)
        if cnt:
            memcpy(<void*> (<cnp.ndarray> out).data, buf, cnt * k * sizeof(uint64_t))
        return out
    finally:
        free(buf)


def nilpotent_span(flips, int n, int k, redc, int threads=1):
    """All nilpotent matrices in the F_2-span of the flips, lex-sorted."""
    cdef int nb = len(flips)
    cdef int64_t total = (<int64_t> 1) << nb
    if threads <= 1 or nb < 16:
        chunks = [_span_range(flips, n, k, redc, 0, total - 1)]
    else:
        from concurrent.futures import ThreadPoolExecutor

        bounds = [total * i // threads for i in range(threads + 1)]
        bounds[-1] = total - 1
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_span_range, flips, n, k, redc, bounds[i], bounds[i + 1])
                for i in range(threads)
                if bounds[i] < bounds[i + 1] or i == 0
            ]
            chunks = [f.result() for f in futures]
    arr = np.concatenate(chunks) if len(chunks) > 1 else chunks[0]
    return _sort_rows(arr)


cdef struct PackedSet:
    uint64_t* keys      # slots * k words; key_used marks occupancy
    uint8_t* used
    int64_t* slot_index  # optional payload (element index), may be NULL
    int64_t slots        # power of two
    int64_t count
    int k


cdef int set_init(PackedSet* s, int64_t slots, int k, bint with_index) except -1:
    s.slots = slots
    s.count = 0
    s.k = k
    s.keys = <uint64_t*> malloc(slots * k * sizeof(uint64_t))
    s.used = <uint8_t*> malloc(slots)
    s.slot_index = <int64_t*> malloc(slots * sizeof(int64_t)) if with_index else NULL
    if s.keys == NULL or s.used == NULL or (with_index and s.slot_index == NULL):
        set_free(s)
        raise MemoryError()
    memset(s.used, 0, slots)
    return 0


cdef void set_free(PackedSet* s) noexcept:
    if s.keys != NULL:
        free(s.keys)
        s.keys = NULL
    if s.used != NULL:
        free(s.used)
        s.used = NULL
    if s.slot_index != NULL:
        free(s.slot_index)
        s.slot_index = NULL


cdef inline int64_t set_probe(PackedSet* s, const uint64_t* key) noexcept nogil:
    """Slot holding the key, or the empty slot where it would go."""
    cdef uint64_t h = hash_planes(key, s.k)
    cdef int64_t mask = s.slots - 1
    cdef int64_t slot = <int64_t> (h & <uint64_t> mask)
    while s.used[slot] and not eq_planes(&s.keys[slot * s.k], key, s.k):
        slot = (slot + 1) & mask
    return slot


cdef inline void set_place(PackedSet* s, int64_t slot, const uint64_t* key, int64_t payload) noexcept nogil:
    cdef int p
    for p in range(s.k):
        s.keys[slot * s.k + p] = key[p]
    s.used[slot] = 1
    if s.slot_index != NULL:
        s.slot_index[slot] = payload
    s.count += 1


cdef int set_grow(PackedSet* s) except -1:
    cdef PackedSet bigger
    cdef int64_t i, slot
    set_init(&bigger, s.slots * 2, s.k, s.slot_index != NULL)
    for i in range(s.slots):
        if s.used[i]:
            slot = set_probe(&bigger, &s.keys[i * s.k])
            set_place(&bigger, slot, &s.keys[i * s.k],
                      s.slot_index[i] if s.slot_index != NULL else 0)
    set_free(s)
    s[0] = bigger
    return 0


def closure(gens, int n, int k, redc, int64_t limit):
    """BFS group closure from the identity; sorted packed elements.

    Raises ClosureLimitError as soon as the count would pass `limit`.
    """
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] gg = np.ascontiguousarray(gens, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] rr = np.ascontiguousarray(redc, dtype=np.uint64)
    cdef const uint64_t* gp = <const uint64_t*> gg.data
    cdef const uint64_t* redc_p = <const uint64_t*> rr.data
    cdef int ng = gg.shape[0]
    cdef uint64_t ident[8]
    cdef uint64_t prod[8]
    cdef int p, gi
    cdef int64_t cap, cnt, pos, slot
    cdef uint64_t* elems
    cdef PackedSet seen
    cdef bint overflow = False

    for p in range(k):
        ident[p] = 0
    for p in range(n):
        ident[0] |= (<uint64_t> 1) << (9 * p)

    cap = 1024
    elems = <uint64_t*> malloc(cap * k * sizeof(uint64_t))
    if elems == NULL:
        raise MemoryError()
    set_init(&seen, 4096, k, False)
    try:
        memcpy(elems, ident, k * sizeof(uint64_t))
        cnt = 1
        slot = set_probe(&seen, ident)
        set_place(&seen, slot, ident, 0)
        pos = 0
        while pos < cnt and not overflow:
            for gi in range(ng):
                mat_mul_c(&elems[pos * k], &gp[gi * k], prod, k, redc_p)
                slot = set_probe(&seen, prod)
                if seen.used[slot]:
                    continue
                if cnt >= limit:
                    overflow = True
                    break
                set_place(&seen, slot, prod, 0)
                if cnt == cap:
                    cap *= 2
                    elems = <uint64_t*> realloc(elems, cap * k * sizeof(uint64_t))
                    if elems == NULL:
                        raise MemoryError()
                memcpy(&elems[cnt * k], prod, k * sizeof(uint64_t))
                cnt += 1
                if 2 * seen.count >= seen.slots:
                    set_grow(&seen)
            pos += 1
        if overflow:
            raise ClosureLimitError(f"group closure exceeded limit {limit}")
        out = np.empty((cnt, k), dtype=np.uint64)
        memcpy(<void*> (<cnp.ndarray> out).data, elems, cnt * k * sizeof(uint64_t))
        return _sort_rows(out)
    finally:
        free(elems)
        set_free(&seen)


def orbit_ids(elems, gens, ginvs, int n, int k, redc):
    """Conjugation-orbit ids over a sorted closed element set.

    Ids count up in first-element order, so each orbit's seed is its
    lexicographically smallest member.  Returns (int32 ids, count).
    """
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] ee = np.ascontiguousarray(elems, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] gg = np.ascontiguousarray(gens, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] vv = np.ascontiguousarray(ginvs, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] rr = np.ascontiguousarray(redc, dtype=np.uint64)
    cdef const uint64_t* ep = <const uint64_t*> ee.data
    cdef const uint64_t* gp = <const uint64_t*> gg.data
    cdef const uint64_t* vp = <const uint64_t*> vv.data
    cdef const uint64_t* redc_p = <const uint64_t*> rr.data
    cdef int64_t m = ee.shape[0]
    cdef int ng = gg.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] ids = np.full(m, -1, dtype=np.int32)
    cdef int32_t* idp = <int32_t*> ids.data
    cdef PackedSet index
    cdef int64_t i, slot, top, j
    cdef int32_t next_id = 0
    cdef int gi
    cdef uint64_t half[8]
    cdef uint64_t conj[8]
    cdef int64_t* stack = <int64_t*> malloc(m * sizeof(int64_t))
    cdef bint missing = False

    if stack == NULL:
        raise MemoryError()
    cdef int64_t slots = 1
    while slots < 2 * m + 4:
        slots <<= 1
    set_init(&index, slots, k, True)
    try:
        with nogil:
            for i in range(m):
                slot = set_probe(&index, &ep[i * k])
                set_place(&index, slot, &ep[i * k], i)
            for i in range(m):
                if idp[i] >= 0:
                    continue
                idp[i] = next_id
                top = 0
                stack[top] = i
                top += 1
                while top > 0:
                    top -= 1
                    j = stack[top]
                    for gi in range(ng):
                        mat_mul_c(&gp[gi * k], &ep[j * k], half, k, redc_p)
                        mat_mul_c(half, &vp[gi * k], conj, k, redc_p)
                        slot = set_probe(&index, conj)
                        if not index.used[slot]:
                            missing = True
                            break
                        if idp[index.slot_index[slot]] < 0:
                            idp[index.slot_index[slot]] = next_id
                            stack[top] = index.slot_index[slot]
                            top += 1
                    if missing:
                        break
                if missing:
                    break
                next_id += 1
        if missing:
            raise InconsistencyError("conjugation left the element set")
        return ids, int(next_id)
    finally:
        free(stack)
        set_free(&index)


def commutes_mask(group, x, int n, int k, redc):
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] gg = np.ascontiguousarray(group, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] xx = np.ascontiguousarray(x, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] rr = np.ascontiguousarray(redc, dtype=np.uint64)
    cdef const uint64_t* gp = <const uint64_t*> gg.data
    cdef const uint64_t* xp = <const uint64_t*> xx.data
    cdef const uint64_t* redc_p = <const uint64_t*> rr.data
    cdef int64_t m = gg.shape[0]
    out = np.zeros(m, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] oo = out
    cdef uint8_t* op = <uint8_t*> oo.data
    cdef uint64_t left[8]
    cdef uint64_t right[8]
    cdef int64_t i
    cdef int p
    with nogil:
        for i in range(m):
            mat_mul_c(&gp[i * k], xp, left, k, redc_p)
            mat_mul_c(xp, &gp[i * k], right, k, redc_p)
            op[i] = 1
            for p in range(k):
                if left[p] != right[p]:
                    op[i] = 0
                    break
    return out
