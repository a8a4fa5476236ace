import numpy as np


def eig_multiset_close(got, want, tol):
    """Multiset comparison of complex spectra with a greedy nearest match."""
    want = list(want)
    if len(got) != len(want):
        return False
    for lam in got:
        j = min(range(len(want)), key=lambda i: abs(want[i] - lam))
        if abs(want[j] - lam) > tol:
            return False
        want.pop(j)
    return True


def svd_sigma_min(a):
    s = np.linalg.svd(a, compute_uv=False)
    return float(s[-1]) if s.size else 0.0
