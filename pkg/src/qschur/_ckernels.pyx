# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernels with the same contract as _purekernels.

Fast paths use 64-bit keys and coefficients with overflow checks; anything
that does not fit falls back to the Python implementation.
"""

from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

from . import _purekernels as _py

FIELD = _py.FIELD

cdef uint64_t KEY_LIMIT = (<uint64_t>1) << 63
cdef int64_t COEF_LIMIT = (<int64_t>1) << 62


cdef extern from *:
    """
    static inline int qs_mul_overflow(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int qs_add_overflow(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    bint qs_mul_overflow(long long a, long long b, long long *r)
    bint qs_add_overflow(long long a, long long b, long long *r)


cdef bint _load(dict terms, vector[uint64_t]& keys, vector[int64_t]& coefs):
    """Copy a term dict into C arrays; False if something does not fit."""
    keys.reserve(len(terms))
    coefs.reserve(len(terms))
    for k, c in terms.items():
        if type(c) is not int or k < 0 or k >= KEY_LIMIT or not (-COEF_LIMIT < c < COEF_LIMIT):
            return False
        keys.push_back(<uint64_t>k)
        coefs.push_back(<int64_t>c)
    return True


cdef dict _dump(unordered_map[uint64_t, int64_t]& m, int64_t modulus):
    cdef dict out = {}
    cdef int64_t c
    it = m.begin()
    while it != m.end():
        c = deref(it).second
        if modulus:
            c = c % modulus
            if c < 0:
                c += modulus
        if c:
            out[deref(it).first] = c
        inc(it)
    return out


def mul_terms(dict a, dict b, zmask, modulus=0):
    cdef vector[uint64_t] ka, kb
    cdef vector[int64_t] ca, cb
    cdef unordered_map[uint64_t, int64_t] out
    cdef uint64_t z, k
    cdef long long prod, acc
    cdef int64_t mod = 0
    cdef size_t i, j
    if zmask < 0 or zmask >= KEY_LIMIT or (modulus and modulus >= COEF_LIMIT):
        return _py.mul_terms(a, b, zmask, modulus)
    if not _load(a, ka, ca) or not _load(b, kb, cb):
        return _py.mul_terms(a, b, zmask, modulus)
    z = <uint64_t>zmask
    mod = <int64_t>modulus
    out.reserve(ka.size() * kb.size())
    for i in range(ka.size()):
        for j in range(kb.size()):
            if ka[i] & kb[j] & z:
                continue
            k = ka[i] + kb[j]
            if qs_mul_overflow(ca[i], cb[j], &prod):
                return _py.mul_terms(a, b, zmask, modulus)
            if mod:
                prod = prod % mod
            acc = out[k]
            if qs_add_overflow(acc, prod, &acc):
                return _py.mul_terms(a, b, zmask, modulus)
            if mod:
                acc = acc % mod
            out[k] = acc
    return _dump(out, mod)


def div_difference(dict terms, int si, int sj, modulus=0):
    cdef vector[uint64_t] keys
    cdef vector[int64_t] coefs
    cdef unordered_map[uint64_t, int64_t] q, r
    cdef uint64_t key, k, ui, uj, rk
    cdef long long acc
    cdef int64_t mod = 0
    cdef size_t idx
    cdef int a, t
    if si >= 63 or sj >= 63 or (modulus and modulus >= COEF_LIMIT) or not _load(terms, keys, coefs):
        return _py.div_difference(terms, si, sj, modulus)
    mod = <int64_t>modulus
    ui = (<uint64_t>1) << si
    uj = (<uint64_t>1) << sj
    for idx in range(keys.size()):
        key = keys[idx]
        a = <int>((key >> si) & 0xFF)
        k = key - ui
        for t in range(a):
            acc = q[k]
            if qs_add_overflow(acc, coefs[idx], &acc):
                return _py.div_difference(terms, si, sj, modulus)
            q[k] = acc
            k = k - ui + uj
        rk = key - (<uint64_t>a) * ui + (<uint64_t>a) * uj
        acc = r[rk]
        if qs_add_overflow(acc, coefs[idx], &acc):
            return _py.div_difference(terms, si, sj, modulus)
        r[rk] = acc
    return _dump(q, mod), _dump(r, mod)


def swap_fields(dict terms, pairs):
    cdef uint64_t k, ea, eb
    cdef int sa, sb
    cdef list shifts = list(pairs)
    for sa, sb in shifts:
        if sa >= 56 or sb >= 56:
            return _py.swap_fields(terms, pairs)
    cdef vector[int] sav, sbv
    for sa, sb in shifts:
        sav.push_back(sa)
        sbv.push_back(sb)
    cdef dict out = {}
    cdef size_t p
    for key, c in terms.items():
        if key < 0 or key >= KEY_LIMIT:
            return _py.swap_fields(terms, pairs)
        k = <uint64_t>key
        for p in range(sav.size()):
            ea = (k >> sav[p]) & 0xFF
            eb = (k >> sbv[p]) & 0xFF
            if ea != eb:
                k = k - (ea << sav[p]) + (eb << sav[p])
                k = k - (eb << sbv[p]) + (ea << sbv[p])
        out[k] = c
    return out


cdef class IncrementalRank:
    """Row echelon basis over GF(p), p < 2^31, growing one vector at a time."""

    cdef public int length
    cdef public long long p
    cdef vector[vector[long long]] rows
    cdef vector[int] pivot_of_row
    cdef vector[int] row_of_col

    def __init__(self, int length, long long p):
        if p >= (1 << 31):
            raise ValueError("prime must be below 2^31")
        self.length = length
        self.p = p
        self.row_of_col.assign(length, -1)

    @property
    def rank(self):
        return self.rows.size()

    cdef long long _inv(self, long long a):
        cdef long long result = 1, base = a % self.p, e = self.p - 2
        while e:
            if e & 1:
                result = (result * base) % self.p
            base = (base * base) % self.p
            e >>= 1
        return result

    def add(self, vec):
        cdef vector[long long] v
        cdef long long p = self.p, f, x, inv
        cdef int c, j, r
        v.reserve(self.length)
        for obj in vec:
            v.push_back(obj % p)
        for c in range(self.length):
            f = v[c]
            if f == 0:
                continue
            r = self.row_of_col[c]
            if r < 0:
                inv = self._inv(f)
                for j in range(c, self.length):
                    v[j] = (v[j] * inv) % p
                self.row_of_col[c] = self.rows.size()
                self.rows.push_back(v)
                self.pivot_of_row.push_back(c)
                return True
            for j in range(c, self.length):
                x = self.rows[r][j]
                if x:
                    v[j] = (v[j] - f * x) % p
                    if v[j] < 0:
                        v[j] += p
        return False
