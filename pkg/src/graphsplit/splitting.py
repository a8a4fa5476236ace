"""Graph splitting operators on the lifted space and their certificates.

Given a graph pair (G, G') and one subspace per node, the fixed-point map
acts on n-1 stacked copies of the ambient space. It is assembled both as a
dense matrix T = I - C, with C = Zbar^T M^{-1} P Zbar, and as a matrix-free
forward-substitution sweep; the two routes are kept in agreement by tests
and serve as each other's oracle.

Certificates quantify how far T is from being normal (T^T T = T T^T), from
being the average of an isometry and the identity (2 T^T T = T + T^T), and
how far 2T - I is from an isometry. The second property is what makes the
relaxed map's convergence rate an explicit function of the relaxation
parameter.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import graphs, matlin, subspaces

# Defects scale like ||T||^2, so classification thresholds do too.
DEFECT_TOL = 1e-9
EIGENVALUE_ONE_TOL = 1e-7


class SelfCheckFailedError(RuntimeError):
    """An internal algebraic identity failed beyond tolerance (kernel bug)."""


class NotOrthogonalError(ValueError):
    """Rebase matrix is not orthogonal."""


class DomainError(ValueError):
    """Relaxation parameter outside the open interval (0, 2)."""


class BadFactorError(ValueError):
    """Supplied Z does not factor the subgraph Laplacian."""


@dataclass(frozen=True, eq=False)
class SplittingOperator:
    """Dense operator plus the ingredients of its matrix-free form."""

    n: int
    d: int
    T: np.ndarray
    Z: np.ndarray
    graph_pair: graphs.GraphPair
    spaces: object  # ProductSubspace
    degrees: tuple
    in_neighbors: tuple

    @property
    def size(self):
        return self.d * (self.n - 1)

    @property
    def C(self):
        return np.eye(self.size) - self.T


def m_b(spaces, b):
    """The block map P B-lifted P + (I - P) on the n-fold product space.

    P is the block-diagonal projector of the product subspace. The map acts
    as the identity on the orthogonal complement and is invertible thanks
    to the forward orientation of the graph edges.
    """
    p = spaces.projector()
    bbar = matlin.kron_lift(b, spaces.ambient)
    return p @ bbar @ p + (np.eye(p.shape[0]) - p)


def build(graph_pair, spaces, z=None):
    """Assemble the splitting operator for a graph pair and node subspaces.

    The dense matrix is produced by columnwise linear solves against the
    block map (never an explicit inverse), followed by a build-time check
    of the two algebraic identities the construction relies on: the block
    map's inverse commutes with the product projector, and it inverts the
    projected lift on the product subspace. A failure of either beyond
    1e-9 signals a kernel bug, not bad input.

    z defaults to the QR-based Laplacian factor of the subgraph; a custom
    factor (for instance a tree incidence matrix) may be supplied as long
    as z z^T reproduces the subgraph Laplacian.
    """
    n = graph_pair.g.n
    d = spaces.ambient
    if spaces.n != n:
        raise ValueError("need exactly one subspace per node")
    if n < 2:
        raise ValueError("need at least two nodes")
    _, _, _, b = graphs.matrices(graph_pair.g)
    lap_sub = graphs.edge_laplacian(n, graph_pair.gp.edges)
    if z is None:
        z = graphs.laplacian_factor(graph_pair.gp)
    else:
        z = np.asarray(z, dtype=float)
        if z.shape != (n, n - 1):
            raise BadFactorError(f"Z must be {n} x {n - 1}, got {z.shape}")
        if np.linalg.norm(z @ z.T - lap_sub) > 1e-9 * (1.0 + np.linalg.norm(lap_sub)):
            raise BadFactorError("Z Z^T does not reproduce the subgraph Laplacian")

    p = spaces.projector()
    zbar = matlin.kron_lift(z, d)
    bbar = matlin.kron_lift(b, d)
    m = m_b(spaces, b)

    x = np.linalg.solve(m, p @ zbar)
    c = zbar.T @ x
    t = np.eye((n - 1) * d) - c

    minv = np.linalg.solve(m, np.eye(n * d))
    scale = 1.0 + np.linalg.norm(minv)
    if np.linalg.norm(minv @ p - p @ minv) > 1e-9 * scale:
        raise SelfCheckFailedError("block-map inverse does not commute with the projector")
    pbp = p @ bbar @ p
    lift_scale = 1e-9 * scale * (1.0 + np.linalg.norm(bbar))
    if (
        np.linalg.norm(minv @ pbp - p) > lift_scale
        or np.linalg.norm(pbp @ minv - p) > lift_scale
    ):
        raise SelfCheckFailedError("block-map inverse does not invert the projected lift")

    return SplittingOperator(
        n=n,
        d=d,
        T=t,
        Z=z,
        graph_pair=graph_pair,
        spaces=spaces,
        degrees=tuple(int(k) for k in graph_pair.g.degrees()),
        in_neighbors=graph_pair.g.in_neighbors(),
    )


def apply_iterative(op, v):
    """One application of the operator by forward substitution.

    Returns (v_next, xs) where xs are the n per-node points: each node
    projects a weighted combination of its upstream points and its slice of
    the lifted input, legal in one sweep because every edge points forward.
    Agrees with the dense matrix to round-off.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (op.size,):
        raise ValueError(f"expected a vector of length {op.size}")
    vmat = v.reshape(op.n - 1, op.d)
    zv = op.Z @ vmat
    xs = []
    for i in range(op.n):
        deg = op.degrees[i]
        acc = zv[i] / deg
        for h in op.in_neighbors[i]:
            acc = acc + (2.0 / deg) * xs[h]
        xs.append(op.spaces.factors[i].project(acc))
    xmat = np.stack(xs)
    v_next = vmat - op.Z.T @ xmat
    return v_next.ravel(), xs


def relax(t, theta):
    """theta t + (1 - theta) I; fixed points are preserved for theta != 0."""
    t = np.asarray(t, dtype=float)
    return theta * t + (1.0 - theta) * np.eye(t.shape[0])


def certificates(t):
    """Structural defect norms of a square matrix.

    Returns (normality_defect, iso_defect, isometry_defect): the spectral
    norms of T^T T - T T^T, of 2 T^T T - T - T^T, and of
    (2T - I)^T (2T - I) - I. All three vanish exactly when T is the
    average of an isometry and the identity.
    """
    t = np.asarray(t, dtype=float)
    gram = t.T @ t
    normality = matlin.operator_norm(gram - t @ t.T)
    iso = matlin.operator_norm(2.0 * gram - t - t.T)
    s = 2.0 * t - np.eye(t.shape[0])
    isometry = matlin.operator_norm(s.T @ s - np.eye(t.shape[0]))
    return normality, iso, isometry


def fix_basis(t):
    """Orthonormal basis of the fixed subspace ker(T - I).

    Ranks T - I at a threshold tied to the scale of T itself: when T is the
    identity up to round-off, every direction is fixed, which a rank
    decision relative to the (noise-level) difference matrix would miss.
    """
    t = np.asarray(t, dtype=float)
    n = t.shape[0]
    delta = t - np.eye(n)
    if matlin.operator_norm(delta) <= matlin.RANK_TOL * (1.0 + matlin.operator_norm(t)):
        return np.eye(n)
    return matlin.null_space(delta)


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: tuple  # complex, sorted by (re, im)
    fix_dim: int
    rho1: float
    normality_defect: float
    iso_defect: float
    is_normal: bool
    is_iso_averaged: bool


def spectral_report(t):
    """Eigenvalues, fixed-subspace dimension, subdominant radius, and flags.

    The subdominant radius is the largest eigenvalue modulus after removing
    the eigenvalues identified with 1 (within 1e-7 (1 + ||T||)), with 0 as
    the floor when nothing remains. When the map is classified iso-averaged
    every eigenvalue must sit on the circle of radius 1/2 centered at 1/2;
    a violation means the eigensolver and the certificate disagree, which
    is reported as a self-check failure.
    """
    t = np.asarray(t, dtype=float)
    eigs = sorted(matlin.general_eigenvalues(t), key=lambda lam: (lam.real, lam.imag))
    nrm = matlin.operator_norm(t)
    fix_dim = fix_basis(t).shape[1]
    one_band = EIGENVALUE_ONE_TOL * (1.0 + nrm)
    ones = [lam for lam in eigs if abs(lam - 1.0) <= one_band]
    if len(ones) != fix_dim:
        warnings.warn(
            f"eigenvalues at 1 ({len(ones)}) disagree with the fixed-subspace "
            f"dimension ({fix_dim}); the map may be defective at 1",
            RuntimeWarning,
            stacklevel=2,
        )
    rest = [abs(lam) for lam in eigs if abs(lam - 1.0) > one_band]
    rho1 = max(rest, default=0.0)
    normality, iso, _ = certificates(t)
    threshold = DEFECT_TOL * (1.0 + nrm * nrm)
    is_normal = normality <= threshold
    is_iso = iso <= threshold
    if is_iso:
        worst = max(abs(abs(lam - 0.5) - 0.5) for lam in eigs)
        if worst > EIGENVALUE_ONE_TOL:
            raise SelfCheckFailedError(
                f"iso-averaged map has an eigenvalue off the half-circle (distance {worst:.3e})"
            )
    return SpectralReport(
        eigenvalues=tuple(eigs),
        fix_dim=fix_dim,
        rho1=float(rho1),
        normality_defect=float(normality),
        iso_defect=float(iso),
        is_normal=is_normal,
        is_iso_averaged=is_iso,
    )


def predicted_rate(rho1, theta):
    """Linear rate of the relaxed map from the unrelaxed subdominant radius.

    sqrt(theta (2 - theta) rho1^2 + (1 - theta)^2): equal to rho1 at
    theta = 1, symmetric under theta -> 2 - theta, and strictly increasing
    in |theta - 1|. Valid for maps whose eigenvalues lie on the half-circle
    (iso-averaged maps).
    """
    if not 0.0 < theta < 2.0:
        raise DomainError("relaxation parameter must lie in (0, 2)")
    if not 0.0 <= rho1 < 1.0:
        raise ValueError("subdominant radius must lie in [0, 1)")
    return float(np.sqrt(theta * (2.0 - theta) * rho1 * rho1 + (1.0 - theta) ** 2))


def dr_rate(u1, u2, theta):
    """Douglas-Rachford rate for two subspaces: the Friedrichs cosine relaxed."""
    return predicted_rate(subspaces.friedrichs_cosine(u1, u2), theta)


def rebase(op, o):
    """Rebuild the operator with the Laplacian factor Z O (O orthogonal).

    The new C matrix is the O-lift conjugate of the old one, so spectra and
    structural defects are unchanged; this realizes the independence of the
    construction from the particular factorization of the Laplacian.
    """
    o = np.asarray(o, dtype=float)
    if o.shape != (op.n - 1, op.n - 1):
        raise NotOrthogonalError(f"O must be {op.n - 1} x {op.n - 1}")
    if np.linalg.norm(o.T @ o - np.eye(op.n - 1)) > 1e-10:
        raise NotOrthogonalError("O^T O deviates from the identity beyond 1e-10")
    return build(op.graph_pair, op.spaces, z=op.Z @ o)
