# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: pairwise distance profiles and the X-mixer sweep."""

from libc.math cimport cos, sin

import numpy as np

cdef extern from *:
    """
    static inline unsigned long long qlp_popcount(unsigned long long x)
    {
        return (unsigned long long)__builtin_popcountll(x);
    }
    """
    unsigned long long qlp_popcount(unsigned long long x) nogil


def pairwise_profiles(states, int n):
    """(m, n+1) int64 matrix; row i histograms distances from states[i] to all states."""
    cdef const unsigned long long[::1] s = np.ascontiguousarray(states, dtype=np.uint64)
    cdef Py_ssize_t m = s.shape[0]
    out = np.zeros((m, n + 1), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef Py_ssize_t i, j
    cdef unsigned long long si
    with nogil:
        for i in range(m):
            si = s[i]
            for j in range(m):
                o[i, <Py_ssize_t>qlp_popcount(si ^ s[j])] += 1
    return out


def apply_mixer(double complex[::1] amps, double beta, int n):
    """Apply exp(-i*beta*X) qubit by qubit, in place on a 2^n statevector.

    The butterfly multiplies by cos(beta) (real) and -i*sin(beta) (purely
    imaginary), so the update is written in real arithmetic on the
    interleaved (re, im) layout; this sidesteps the libgcc complex-multiply
    helper and lets the compiler vectorise the loop.
    """
    cdef double c = cos(beta)
    cdef double s = sin(beta)
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef double* a = <double*> &amps[0]
    cdef Py_ssize_t blk, base, low, hi, q
    cdef double a0r, a0i, a1r, a1i
    with nogil:
        for q in range(n):
            blk = (<Py_ssize_t>1) << q
            base = 0
            while base < size:
                for low in range(base, base + blk):
                    hi = low + blk
                    a0r = a[2 * low]
                    a0i = a[2 * low + 1]
                    a1r = a[2 * hi]
                    a1i = a[2 * hi + 1]
                    a[2 * low] = c * a0r + s * a1i
                    a[2 * low + 1] = c * a0i - s * a1r
                    a[2 * hi] = c * a1r + s * a0i
                    a[2 * hi + 1] = c * a1i - s * a0r
                base += blk << 1
