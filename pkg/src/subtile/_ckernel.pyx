# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled frontier search kernel.

Same state space, move order, budget accounting and results as
``_pykernel``; masks are 64-bit words, so callers must check
``fits(...)`` first and fall back to the Python kernel otherwise.
"""
from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.set cimport set as cset
from libcpp.pair cimport pair
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from cython.operator cimport dereference as deref, preincrement as inc

from .errors import BudgetExceeded

ctypedef unsigned long long ull

BACKEND = "cython"

cdef extern from *:
    """
    static inline int subtile_add_ovf(unsigned long long a, unsigned long long b,
                                      unsigned long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int subtile_ctz(unsigned long long v) {
        return __builtin_ctzll(v);
    }
    static inline int subtile_popcount(unsigned long long v) {
        return __builtin_popcountll(v);
    }
    """
    bint subtile_add_ovf(unsigned long long a, unsigned long long b, unsigned long long *r)
    int subtile_ctz(unsigned long long v)
    int subtile_popcount(unsigned long long v)


class CountOverflow(Exception):
    pass


cdef struct Move:
    int shape
    int cls
    uint64_t bits
    int reach


cdef inline int advance(uint64_t mask):
    # trailing ones; the caller guarantees mask != all-ones
    return subtile_ctz(~mask)


cdef class _Table:
    cdef int n
    cdef int m
    cdef vector[vector[Move]] rows

    def __init__(self, int n, int m, rows):
        cdef Move mv
        self.n = n
        self.m = m
        self.rows.resize(n)
        for y in range(n):
            for shape, cls, bits, reach in rows[y]:
                mv.shape = shape
                mv.cls = cls
                mv.bits = <uint64_t>bits
                mv.reach = reach
                self.rows[y].push_back(mv)


def fits(int n, int m, rows):
    """True when every move pattern fits in a 64-bit window."""
    for y in range(n):
        for _shape, _cls, bits, _reach in rows[y]:
            if bits.bit_length() > 63:
                return False
    return True


def count(int n, int m, rows, budget=None):
    cdef _Table tab = _Table(n, m, rows)
    cdef int total = n * m
    cdef long long cap = -1 if budget is None else budget
    cdef long long steps = 0
    cdef vector[unordered_map[uint64_t, ull]] layers
    layers.resize(total + 1)
    layers[0][0] = 1
    cdef int p, y0, room, t
    cdef size_t k
    cdef uint64_t mask, nm, key
    cdef unsigned long long ways, acc
    cdef Move mv
    cdef unordered_map[uint64_t, ull].iterator it
    for p in range(total):
        if layers[p].empty():
            continue
        y0 = p % n
        room = m - p // n
        it = layers[p].begin()
        while it != layers[p].end():
            mask = deref(it).first
            ways = deref(it).second
            for k in range(tab.rows[y0].size()):
                mv = tab.rows[y0][k]
                if mv.reach >= room or (mask & mv.bits):
                    continue
                steps += 1
                if cap >= 0 and steps > cap:
                    raise BudgetExceeded(budget)
                nm = mask | mv.bits
                t = advance(nm)
                key = nm >> t
                acc = layers[p + t][key]
                if subtile_add_ovf(acc, ways, &acc):
                    raise CountOverflow()
                layers[p + t][key] = acc
            inc(it)
        layers[p].clear()
    if layers[total].count(0):
        return layers[total][0]
    return 0


cdef class _Searcher:
    cdef _Table tab
    cdef int total
    cdef bint capped
    cdef vector[long long] caps
    cdef vector[ull] stride
    cdef unsigned long long code
    cdef unsigned long long space
    cdef long long nodes
    cdef long long budget
    cdef object budget_obj
    cdef cset[pair[uint64_t, uint64_t]] failed
    cdef vector[int] path_shape
    cdef vector[int] path_at

    cdef int rec(self, int p, uint64_t mask) except -1:
        cdef pair[uint64_t, uint64_t] key
        cdef int room, t, found
        cdef size_t k
        cdef Move mv
        cdef uint64_t nm
        cdef int n = self.tab.n
        if p == self.total:
            return 1 if (not self.capped or self.code == 0) else 0
        key.first = mask
        key.second = <uint64_t>p * self.space + self.code
        if self.failed.count(key):
            return 0
        self.nodes += 1
        if self.budget >= 0 and self.nodes > self.budget:
            raise BudgetExceeded(self.budget_obj)
        room = self.tab.m - p // n
        for k in range(self.tab.rows[p % n].size()):
            mv = self.tab.rows[p % n][k]
            if mv.reach >= room or (mask & mv.bits):
                continue
            if self.capped:
                if self.caps[mv.cls] == 0:
                    continue
                self.caps[mv.cls] -= 1
                self.code -= self.stride[mv.cls]
            nm = mask | mv.bits
            t = advance(nm)
            self.path_shape.push_back(mv.shape)
            self.path_at.push_back(p)
            found = self.rec(p + t, nm >> t)
            if found:
                return 1
            self.path_shape.pop_back()
            self.path_at.pop_back()
            if self.capped:
                self.caps[mv.cls] += 1
                self.code += self.stride[mv.cls]
        self.failed.insert(key)
        return 0


def search_fits(int n, int m, caps):
    """True when the memo key ``(p, residual code)`` fits in 64 bits."""
    space = 1
    if caps is not None:
        for c in caps:
            space *= c + 1
    return space * (n * m + 1) < (1 << 63)


def search(int n, int m, rows, caps=None, budget=None):
    cdef _Searcher s = _Searcher()
    cdef unsigned long long stride = 1
    s.tab = _Table(n, m, rows)
    s.total = n * m
    s.capped = caps is not None
    s.code = 0
    s.space = 1
    if caps is not None:
        for c in caps:
            s.caps.push_back(c)
            s.stride.push_back(stride)
            s.code += c * stride
            stride *= c + 1
        s.space = stride
    s.nodes = 0
    s.budget = -1 if budget is None else budget
    s.budget_obj = budget
    if s.rec(0, 0):
        return [(s.path_shape[i], s.path_at[i]) for i in range(s.path_shape.size())]
    return None


def class_caps(int n, int m, rows, int nclasses):
    """Largest count of each class that could fit on the board by area."""
    area = [0] * nclasses
    for y in range(n):
        for _shape, cls, bits, _reach in rows[y]:
            area[cls] = max(area[cls], subtile_popcount(<uint64_t>bits))
    return [(n * m) // a if a else 0 for a in area]


def reachable_fits(caps):
    space = 1
    for c in caps:
        space *= c + 1
    return space < (1 << 63)


def reachable(int n, int m, rows, int nclasses, caps=None, budget=None):
    cdef _Table tab = _Table(n, m, rows)
    cdef int total = n * m
    cdef long long cap = -1 if budget is None else budget
    cdef long long steps = 0
    cdef vector[ull] stride
    cdef vector[ull] radix
    cdef unsigned long long s = 1
    if caps is None:
        caps = class_caps(n, m, rows, nclasses)
    for c in caps:
        stride.push_back(s)
        radix.push_back(c + 1)
        s *= c + 1
    cdef vector[unordered_map[uint64_t, unordered_set[ull]]] layers
    layers.resize(total + 1)
    layers[0][0].insert(0)
    cdef int p, y0, room, t
    cdef size_t k
    cdef uint64_t mask, nm, key
    cdef unsigned long long code
    cdef Move mv
    cdef unordered_map[uint64_t, unordered_set[ull]].iterator it
    cdef unordered_set[ull].iterator vit
    cdef unordered_set[ull]* src
    cdef unordered_set[ull]* dst
    for p in range(total):
        if layers[p].empty():
            continue
        y0 = p % tab.n
        room = m - p // tab.n
        it = layers[p].begin()
        while it != layers[p].end():
            mask = deref(it).first
            src = &deref(it).second
            for k in range(tab.rows[y0].size()):
                mv = tab.rows[y0][k]
                if mv.reach >= room or (mask & mv.bits):
                    continue
                nm = mask | mv.bits
                t = advance(nm)
                key = nm >> t
                dst = &layers[p + t][key]
                vit = src.begin()
                while vit != src.end():
                    code = deref(vit)
                    inc(vit)
                    if (code // stride[mv.cls]) % radix[mv.cls] >= radix[mv.cls] - 1:
                        continue
                    steps += 1
                    if cap >= 0 and steps > cap:
                        raise BudgetExceeded(budget)
                    dst.insert(code + stride[mv.cls])
            inc(it)
        layers[p].clear()
    out = set()
    if layers[total].count(0):
        vit = layers[total][0].begin()
        while vit != layers[total][0].end():
            code = deref(vit)
            inc(vit)
            vec = []
            for k in range(nclasses):
                vec.append((code // stride[k]) % radix[k])
            out.add(tuple(vec))
    return out
