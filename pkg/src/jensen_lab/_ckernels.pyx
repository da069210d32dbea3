# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the routines in ``_pykernels``."""

from libc.stdint cimport uint64_t, int64_t


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    z = z + <uint64_t>0x9E3779B97F4A7C15ULL
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef uint64_t _bytes_hash(const unsigned char[:] data) noexcept nogil:
    cdef Py_ssize_t n = data.shape[0]
    cdef Py_ssize_t i, j
    cdef uint64_t h = <uint64_t>n
    cdef uint64_t w
    i = 0
    while i < n:
        w = 0
        for j in range(8):
            w <<= 8
            if i + j < n:
                w |= data[i + j]
        h = _mix(h ^ w)
        i += 8
    return h


def splitmix64(z):
    return _mix(<uint64_t>(z & 0xFFFFFFFFFFFFFFFF))


def bytes_hash(data):
    return _bytes_hash(data)


def noise_values(data, seed, int dim, double epsilon):
    cdef uint64_t h = _bytes_hash(data)
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t z
    cdef int i
    cdef double unit
    out = []
    for i in range(dim):
        z = _mix(s ^ h ^ <uint64_t>i)
        unit = <double>(z >> 11) * (1.0 / 9007199254740992.0)
        out.append(epsilon * (2.0 * unit - 1.0))
    return out


def heisenberg_box_scan(int64_t radius, int64_t a, int64_t b, int64_t cmn, int64_t ck):
    cdef int64_t m, n, k, m1, n1, k1, mp, mm, np_, nm, m1n, m1n1, base, fx2, d, ad
    cdef int64_t pairs = 0, nonzero = 0, max_abs = 0
    cdef bint found = False
    cdef int64_t w0 = 0, w1 = 0, w2 = 0, w3 = 0, w4 = 0, w5 = 0
    with nogil:
        for m in range(-radius, radius + 1):
            for n in range(-radius, radius + 1):
                for k in range(-radius, radius + 1):
                    fx2 = 2 * (a * m + b * n + cmn * m * n + ck * k)
                    for m1 in range(-radius, radius + 1):
                        mp = m + m1
                        mm = m - m1
                        m1n = m1 * n
                        for n1 in range(-radius, radius + 1):
                            np_ = n + n1
                            nm = n - n1
                            base = a * (mp + mm) + b * (np_ + nm) + cmn * (mp * np_ + mm * nm)
                            m1n1 = m1 * n1
                            for k1 in range(-radius, radius + 1):
                                d = base + ck * ((m1n + k + k1) + (m1n1 - m1n + k - k1)) - fx2
                                pairs += 1
                                if d != 0:
                                    nonzero += 1
                                    ad = d if d > 0 else -d
                                    if ad > max_abs:
                                        max_abs = ad
                                    if not found:
                                        found = True
                                        w0 = m; w1 = n; w2 = k; w3 = m1; w4 = n1; w5 = k1
    witness = (w0, w1, w2, w3, w4, w5) if found else None
    return pairs, nonzero, max_abs, witness
