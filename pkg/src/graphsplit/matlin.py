"""Dense real linear algebra kernel for small, well-scaled matrices.

Everything operates on plain float64 numpy arrays. Factorizations are
implemented directly rather than delegated: Householder QR with optional
column pivoting, cyclic Jacobi for symmetric eigenproblems, and Hessenberg
reduction followed by Francis double-shift QR iteration for general
(possibly complex) spectra. This keeps the numerical behavior fully under
our control at the desk scale this library targets (a few hundred rows).
"""

import numpy as np

# Relative threshold shared by every rank decision in the package.
RANK_TOL = 1e-10


class NotSymmetricError(ValueError):
    """Input to the symmetric eigensolver is not symmetric."""


class NoConvergenceError(RuntimeError):
    """QR eigenvalue iteration exhausted its sweep budget."""


def _as_matrix(a):
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _house_vec(x):
    """Householder vector v (v[0] = 1) and coefficient beta for a column x.

    (I - beta v v^T) x is a multiple of e1. beta = 0 means no reflection is
    needed (x already has zero tail).
    """
    v = np.array(x, dtype=float)
    x0 = v[0]
    sigma = float(np.dot(v[1:], v[1:]))
    v[0] = 1.0
    if sigma == 0.0:
        return v, 0.0
    mu = np.hypot(x0, np.sqrt(sigma))
    if x0 <= 0.0:
        v0 = x0 - mu
    else:
        v0 = -sigma / (x0 + mu)
    beta = 2.0 * v0 * v0 / (sigma + v0 * v0)
    v[1:] /= v0
    return v, beta


def qr(a, pivoting=False):
    """Householder QR factorization, optionally with column pivoting.

    Returns (q, r, perm) with q orthogonal (full, m x m), r upper
    trapezoidal, and q @ r == a[:, perm]. Without pivoting perm is the
    identity. With pivoting the diagonal of r has non-increasing magnitude,
    which makes the factorization rank-revealing for the matrices handled
    here.
    """
    a = _as_matrix(a)
    m, n = a.shape
    r = a.copy()
    q = np.eye(m)
    perm = np.arange(n)
    for k in range(min(m, n)):
        if pivoting:
            lens = np.einsum("ij,ij->j", r[k:, k:], r[k:, k:])
            j = k + int(np.argmax(lens))
            if j != k:
                r[:, [k, j]] = r[:, [j, k]]
                perm[[k, j]] = perm[[j, k]]
        v, beta = _house_vec(r[k:, k])
        if beta != 0.0:
            r[k:, k:] -= beta * np.outer(v, v @ r[k:, k:])
            q[:, k:] -= beta * np.outer(q[:, k:] @ v, v)
            r[k + 1 :, k] = 0.0
    return q, r, perm


def null_space(a, tol=RANK_TOL):
    """Orthonormal basis (as columns) of the kernel of a.

    The numerical rank is read off the pivoted-QR diagonal of a.T at the
    relative threshold tol; the trailing columns of the corresponding q
    span the kernel.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    a = _as_matrix(a)
    n = a.shape[1]
    q, r, _ = qr(a.T, pivoting=True)
    diag = np.abs(np.diagonal(r))
    if diag.size == 0 or diag[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(diag > tol * diag[0]))
    return q[:, rank:].copy() if rank < n else np.zeros((n, 0))


def symmetric_eigen(a):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (values, vectors) with values sorted ascending and vectors
    orthogonal, such that a @ vectors == vectors @ diag(values). Rotations
    stop once the off-diagonal Frobenius mass falls below 1e-14 * ||a||_F.
    """
    a = _as_matrix(a)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    fro = float(np.linalg.norm(a))
    if fro > 0.0 and float(np.linalg.norm(a - a.T)) > 1e-10 * fro:
        raise NotSymmetricError("matrix is not symmetric")
    w = 0.5 * (a + a.T)
    v = np.eye(n)
    if n < 2 or fro == 0.0:
        return np.diagonal(w).copy(), v
    off_tol = 1e-14 * fro
    # Rotating on entries below skip_tol cannot move the off-diagonal norm
    # past the stopping threshold, and avoids overflow in the tau quotient.
    skip_tol = off_tol / n
    for _ in range(60):
        strict = w.copy()
        np.fill_diagonal(strict, 0.0)
        off = float(np.linalg.norm(strict))
        if off <= off_tol:
            break
        for p in range(n - 1):
            for q_ in range(p + 1, n):
                apq = w[p, q_]
                if abs(apq) <= skip_tol:
                    continue
                tau = (w[q_, q_] - w[p, p]) / (2.0 * apq)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0.0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                wp, wq = w[:, p].copy(), w[:, q_].copy()
                w[:, p] = c * wp - s * wq
                w[:, q_] = s * wp + c * wq
                wp, wq = w[p, :].copy(), w[q_, :].copy()
                w[p, :] = c * wp - s * wq
                w[q_, :] = s * wp + c * wq
                vp, vq = v[:, p].copy(), v[:, q_].copy()
                v[:, p] = c * vp - s * vq
                v[:, q_] = s * vp + c * vq
    values = np.diagonal(w).copy()
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


def _hessenberg(a):
    """Householder reduction to upper Hessenberg form (similarity)."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        v, beta = _house_vec(h[k + 1 :, k])
        if beta == 0.0:
            continue
        h[k + 1 :, k:] -= beta * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= beta * np.outer(h[:, k + 1 :] @ v, v)
        h[k + 2 :, k] = 0.0
    return h


def _eig2x2(a, b, c, d):
    """Closed-form eigenvalues of [[a, b], [c, d]] as a conjugate-safe pair."""
    p = 0.5 * (a + d)
    det = a * d - b * c
    disc = p * p - det
    if disc >= 0.0:
        q = np.sqrt(disc)
        l1 = p + q if p >= 0.0 else p - q
        l2 = det / l1 if l1 != 0.0 else 0.0
        return [complex(l1), complex(l2)]
    im = np.sqrt(-disc)
    return [complex(p, im), complex(p, -im)]


def _francis_sweep(h, lo, hi, exceptional):
    """One implicit double-shift QR sweep on the active block h[lo:hi+1]."""
    if exceptional:
        # Ad-hoc shift pair to break stalled symmetric cycles.
        s = abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2])
        tr = 1.5 * s
        det = -0.4375 * s * s
    else:
        tr = h[hi - 1, hi - 1] + h[hi, hi]
        det = h[hi - 1, hi - 1] * h[hi, hi] - h[hi - 1, hi] * h[hi, hi - 1]
    x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - tr * h[lo, lo] + det
    y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - tr)
    z = h[lo + 1, lo] * h[lo + 2, lo + 1]
    for j in range(lo, hi - 1):
        v, beta = _house_vec(np.array([x, y, z]))
        if beta != 0.0:
            h[j : j + 3, :] -= beta * np.outer(v, v @ h[j : j + 3, :])
            h[:, j : j + 3] -= beta * np.outer(h[:, j : j + 3] @ v, v)
        if j > lo:
            h[j + 1, j - 1] = 0.0
            h[j + 2, j - 1] = 0.0
        x = h[j + 1, j]
        y = h[j + 2, j]
        z = h[j + 3, j] if j < hi - 2 else 0.0
    v, beta = _house_vec(np.array([x, y]))
    if beta != 0.0:
        h[hi - 1 : hi + 1, :] -= beta * np.outer(v, v @ h[hi - 1 : hi + 1, :])
        h[:, hi - 1 : hi + 1] -= beta * np.outer(h[:, hi - 1 : hi + 1] @ v, v)
    h[hi, hi - 2] = 0.0


def general_eigenvalues(a):
    """All eigenvalues of a real square matrix, closed under conjugation.

    Hessenberg reduction followed by implicit double-shift (Francis) QR
    iteration; 1x1 and 2x2 trailing blocks are solved in closed form as
    they deflate. Raises NoConvergenceError if the budget of 100 n sweeps
    is exhausted, which does not happen for the well-scaled inputs this
    package produces.
    """
    a = _as_matrix(a)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    if n == 0:
        return []
    if n == 1:
        return [complex(a[0, 0])]
    h = _hessenberg(a)
    scale = float(np.linalg.norm(h)) or 1.0
    eps = float(np.finfo(float).eps)
    eigs = []
    hi = n - 1
    budget = 100 * n
    sweeps = 0
    stall = 0
    while hi >= 0:
        if hi == 0:
            eigs.append(complex(h[0, 0]))
            break
        lo = hi
        while lo > 0:
            # Zeroing a subdiagonal below eps * ||H||_F is a backward-stable
            # perturbation (the Frobenius norm is invariant across sweeps),
            # and the norm floor is what lets clusters of close eigenvalues
            # deflate once they have converged to round-off level.
            small = eps * max(abs(h[lo - 1, lo - 1]) + abs(h[lo, lo]), scale)
            if abs(h[lo, lo - 1]) <= small:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs.append(complex(h[hi, hi]))
            hi -= 1
            stall = 0
        elif lo == hi - 1:
            eigs.extend(_eig2x2(h[lo, lo], h[lo, lo + 1], h[lo + 1, lo], h[lo + 1, lo + 1]))
            hi -= 2
            stall = 0
        else:
            sweeps += 1
            stall += 1
            if sweeps > budget:
                raise NoConvergenceError(f"no deflation after {budget} QR sweeps")
            _francis_sweep(h, lo, hi, exceptional=(stall % 10 == 0))
    return eigs


def operator_norm(a):
    """Spectral norm sqrt(lambda_max(a^T a)), via the symmetric eigensolver."""
    a = _as_matrix(a)
    if a.size == 0 or not a.any():
        return 0.0
    g = a.T @ a if a.shape[0] >= a.shape[1] else a @ a.T
    g = 0.5 * (g + g.T)
    values, _ = symmetric_eigen(g)
    return float(np.sqrt(max(values[-1], 0.0)))


def kron_lift(z, d):
    """Blockwise lift z -> z (x) I_d: every entry becomes a d x d scalar block."""
    if d < 1:
        raise ValueError("block size d must be at least 1")
    return np.kron(_as_matrix(z), np.eye(d))
