import numpy as np
import pytest

from spineq.spinors import CVec3, Spinor


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def rand_spinor(rng, scale=1.0):
    re = rng.normal(size=4) * scale
    return Spinor(complex(re[0], re[1]), complex(re[2], re[3]))


def rand_cvec3(rng, scale=1.0):
    re = rng.normal(size=6) * scale
    return CVec3(complex(re[0], re[1]), complex(re[2], re[3]), complex(re[4], re[5]))


def assert_rel(got, want, tol, scale=None):
    got = complex(got) if np.isscalar(got) else np.asarray(got)
    want = complex(want) if np.isscalar(want) else np.asarray(want)
    if scale is None:
        scale = max(1.0, float(np.max(np.abs(np.atleast_1d(want)))))
    err = float(np.max(np.abs(np.atleast_1d(got - want))))
    assert err <= tol * scale, f"|got - want| = {err:.3e} > {tol:.1e} * {scale:.3e}"
