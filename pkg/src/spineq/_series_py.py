"""Pure-Python series kernels; same contract as the compiled spineq._series.

Both return (value, terms_used, relative_truncation_estimate); terms_used
== -1 signals that the term cap was reached before convergence.
"""

MAX_TERMS = 20000
REL_EPS = 1e-16
STREAK = 3

COMPILED = False


def hyp2f1_series(a, b, c, z):
    """Raw Gauss hypergeometric power series at z."""
    term = 1.0 + 0j
    total = 1.0 + 0j
    streak = 0
    n_used = MAX_TERMS
    for k in range(MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) < REL_EPS * abs(total):
            streak += 1
            if streak >= STREAK:
                n_used = k + 1
                break
        else:
            streak = 0
    else:
        return total, -1, abs(term) / max(abs(total), 1e-300)
    return total, n_used, abs(term) / max(abs(total), 1e-300)


def hyp1f1_series(a, c, z):
    """Raw confluent hypergeometric (Kummer) power series at z."""
    term = 1.0 + 0j
    total = 1.0 + 0j
    streak = 0
    n_used = MAX_TERMS
    for k in range(MAX_TERMS):
        term *= (a + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if abs(term) < REL_EPS * abs(total):
            streak += 1
            if streak >= STREAK:
                n_used = k + 1
                break
        else:
            streak = 0
    else:
        return total, -1, abs(term) / max(abs(total), 1e-300)
    return total, n_used, abs(term) / max(abs(total), 1e-300)
