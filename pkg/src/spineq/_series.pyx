# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled series kernels; contract mirrored by spineq._series_py."""

cdef extern from "complex.h" nogil:
    double cabs(double complex)

DEF _MAX_TERMS = 20000
DEF _REL_EPS = 1e-16
DEF _STREAK = 3

MAX_TERMS = _MAX_TERMS
REL_EPS = _REL_EPS
STREAK = _STREAK

COMPILED = True


def hyp2f1_series(double complex a, double complex b, double complex c, double complex z):
    """Raw Gauss hypergeometric power series at z."""
    cdef double complex term = 1.0
    cdef double complex total = 1.0
    cdef int k, streak = 0, n_used = -1
    cdef double t_abs, s_abs = 1.0
    with nogil:
        for k in range(_MAX_TERMS):
            term = term * (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
            total = total + term
            t_abs = cabs(term)
            s_abs = cabs(total)
            if t_abs < _REL_EPS * s_abs:
                streak += 1
                if streak >= _STREAK:
                    n_used = k + 1
                    break
            else:
                streak = 0
    if s_abs < 1e-300:
        s_abs = 1e-300
    return total, n_used, cabs(term) / s_abs


def hyp1f1_series(double complex a, double complex c, double complex z):
    """Raw confluent hypergeometric (Kummer) power series at z."""
    cdef double complex term = 1.0
    cdef double complex total = 1.0
    cdef int k, streak = 0, n_used = -1
    cdef double t_abs, s_abs = 1.0
    with nogil:
        for k in range(_MAX_TERMS):
            term = term * (a + k) / ((c + k) * (k + 1.0)) * z
            total = total + term
            t_abs = cabs(term)
            s_abs = cabs(total)
            if t_abs < _REL_EPS * s_abs:
                streak += 1
                if streak >= _STREAK:
                    n_used = k + 1
                    break
            else:
                streak = 0
    if s_abs < 1e-300:
        s_abs = 1e-300
    return total, n_used, cabs(term) / s_abs
