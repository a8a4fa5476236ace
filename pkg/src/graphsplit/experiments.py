"""Convergence runs, relaxation sweeps, behavioral checks, and golden examples.

The experiments here drive a splitting operator (or any square matrix) as a
fixed-point iteration and measure what the theory predicts: the linear rate
as a function of the relaxation parameter, the symmetry of the iterate
norms about parameter 1, midpoint convexity for normal maps, strict norm
decrease, and the coordinate-subspace witnesses that separate graph pairs
with unequal graph and subgraph.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import graphs, matlin, splitting, subspaces
from ._rng import SplitMix64

DEFAULT_EPS = 1e-6
DEFAULT_K_MAX = 10000
WITNESS_TOL = 1e-6
RATE_FLOOR = 1e-13


class ExcludedInputError(ValueError):
    """Start point lies in the subspace where strict decrease cannot hold."""


class NotNormalError(ValueError):
    """Convexity check demands a normal map."""


class UnknownExampleError(KeyError):
    """Requested golden example is not in the catalog."""


def _dense(op):
    if isinstance(op, splitting.SplittingOperator):
        return op.T
    return np.asarray(op, dtype=float)


fix_basis = splitting.fix_basis


@dataclass
class ConvergenceTrace:
    theta: float
    points: list  # (iteration, distance to the limit point)
    k_stop: object  # int or None
    measured_rate: object  # float or None


def _fit_rate(points):
    usable = [(k, dist) for k, dist in points if dist > RATE_FLOOR]
    tail = usable[len(usable) // 2 :]
    if len(tail) < 2:
        return None
    ks = np.array([k for k, _ in tail], dtype=float)
    logs = np.array([math.log(dist) for _, dist in tail])
    slope = np.polyfit(ks, logs, 1)[0]
    return float(np.exp(slope))


def converge(op, theta, v0, eps=DEFAULT_EPS, k_max=DEFAULT_K_MAX):
    """Iterate the relaxed map and track the distance to the limit point.

    The limit is the projection of the start onto the fixed subspace of the
    unrelaxed map (relaxation does not move fixed points). k_stop is the
    first iteration whose distance drops below eps, or None if the budget
    runs out; the measured rate is a least-squares fit of the log-distance
    over the last half of the usable trace.
    """
    if not 0.0 < theta < 2.0:
        raise splitting.DomainError("relaxation parameter must lie in (0, 2)")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    t = _dense(op)
    v = np.asarray(v0, dtype=float).copy()
    t_theta = splitting.relax(t, theta)
    f = fix_basis(t)
    limit = f @ (f.T @ v)
    points = []
    k_stop = None
    for k in range(k_max + 1):
        dist = float(np.linalg.norm(v - limit))
        points.append((k, dist))
        if dist < eps:
            k_stop = k
            break
        if k < k_max:
            v = t_theta @ v
    return ConvergenceTrace(theta, points, k_stop, _fit_rate(points))


@dataclass
class SweepRecord:
    theta: float
    k_stop: object  # int or None
    rho1_predicted: float
    rho1_measured: object  # float or None


def theta_sweep(op, thetas, v0, eps=DEFAULT_EPS, k_max=DEFAULT_K_MAX):
    """One convergence run per relaxation parameter.

    The predicted rate comes from the closed-form relaxation formula when
    the map is iso-averaged, and from the spectrum of the relaxed matrix
    otherwise.
    """
    t = _dense(op)
    report = splitting.spectral_report(t)
    records = []
    for theta in thetas:
        trace = converge(t, theta, v0, eps=eps, k_max=k_max)
        if report.is_iso_averaged:
            predicted = splitting.predicted_rate(report.rho1, theta)
        else:
            predicted = splitting.spectral_report(splitting.relax(t, theta)).rho1
        records.append(SweepRecord(theta, trace.k_stop, predicted, trace.measured_rate))
    return records


def symmetry_check(t, x, thetas, k_max):
    """Worst gap between iterate norms at parameters theta and 2 - theta.

    Vanishes (to round-off) exactly for iso-averaged maps.
    """
    t = _dense(t)
    x = np.asarray(x, dtype=float)
    worst = 0.0
    for theta in thetas:
        ya = x.copy()
        yb = x.copy()
        ta = splitting.relax(t, theta)
        tb = splitting.relax(t, 2.0 - theta)
        for _ in range(k_max):
            ya = ta @ ya
            yb = tb @ yb
            worst = max(worst, abs(float(np.linalg.norm(ya)) - float(np.linalg.norm(yb))))
    return worst


def convexity_check(t, x, k, grid, require_normal=True):
    """Worst midpoint-convexity gap of theta -> ||T_theta^k x|| on a grid.

    For each adjacent grid pair the midpoint value is compared against the
    endpoint average; a positive gap beyond round-off refutes convexity.
    Normality is required (it is what makes the function convex); pass
    require_normal=False to probe counterexamples.
    """
    t = _dense(t)
    x = np.asarray(x, dtype=float)
    if require_normal:
        normality, _, _ = splitting.certificates(t)
        nrm = matlin.operator_norm(t)
        if normality > splitting.DEFECT_TOL * (1.0 + nrm * nrm):
            raise NotNormalError(f"normality defect {normality:.3e} is too large")

    def f(theta):
        y = x.copy()
        t_theta = splitting.relax(t, theta)
        for _ in range(k):
            y = t_theta @ y
        return float(np.linalg.norm(y))

    grid = sorted(float(g) for g in grid)
    worst = -math.inf
    for lo, hi in zip(grid, grid[1:]):
        gap = f(0.5 * (lo + hi)) - 0.5 * (f(lo) + f(hi))
        worst = max(worst, gap)
    return worst


def monotonicity_check(op, theta, x, k_max=DEFAULT_K_MAX):
    """Whether the iterate norms decrease strictly until the round-off floor.

    Only meaningful for iso-averaged maps. The start must avoid the
    subspace where the sequence is constant: the fixed subspace for
    theta != 1, and its sum with the kernel for theta = 1.
    """
    t = _dense(op)
    _, iso, _ = splitting.certificates(t)
    nrm = matlin.operator_norm(t)
    if iso > splitting.DEFECT_TOL * (1.0 + nrm * nrm):
        raise ValueError("strict decrease is only guaranteed for iso-averaged maps")
    if not 0.0 < theta < 2.0:
        raise splitting.DomainError("relaxation parameter must lie in (0, 2)")
    x = np.asarray(x, dtype=float)
    f = fix_basis(t)
    if theta == 1.0:
        kernel = matlin.null_space(t)
        excluded = subspaces.from_generators(
            [col for col in np.hstack([f, kernel]).T], t.shape[0]
        ).basis
    else:
        excluded = f
    inside = excluded @ (excluded.T @ x)
    if float(np.linalg.norm(x - inside)) <= 1e-12 * (1.0 + float(np.linalg.norm(x))):
        raise ExcludedInputError("start lies in the excluded subspace")
    limit = f @ (f.T @ x)
    t_theta = splitting.relax(t, theta)
    y = x.copy()
    prev = float(np.linalg.norm(y))
    for _ in range(k_max):
        if float(np.linalg.norm(y - limit)) <= 1e-12:
            break
        y = t_theta @ y
        cur = float(np.linalg.norm(y))
        if not cur < prev:
            return False
        prev = cur
    return True


@dataclass
class WitnessResult:
    found: bool
    index: object  # 1-based node index or None
    defect: float


def witness_search(graph_pair, d):
    """Look for a coordinate-product subspace that breaks iso-averagedness.

    Tries, for each node i, the product that is trivial everywhere except
    the full space at i; returns the first index whose defect exceeds the
    witness threshold. When the graph and subgraph coincide no witness
    exists and the maximal defect observed stays at round-off level.
    """
    n = graph_pair.g.n
    worst = 0.0
    for i in range(1, n + 1):
        op = splitting.build(graph_pair, subspaces.coordinate_product(n, i, d))
        _, iso, _ = splitting.certificates(op.T)
        if iso > WITNESS_TOL:
            return WitnessResult(True, i, float(iso))
        worst = max(worst, float(iso))
    return WitnessResult(False, None, worst)


# ---------------------------------------------------------------------------
# Seeded operator factory and the randomized graph-pair check.

def random_operator(seed, n_lo=2, n_hi=6, d_lo=1, d_hi=4):
    """Seeded splitting operator on a preset graph with G = G'.

    Such operators are iso-averaged whatever the subspaces, which makes the
    factory a convenient source of test subjects for the rate and symmetry
    experiments. Draws that collapse to the identity map (every node space
    the full space on two nodes, say) carry no subdominant spectrum and are
    deterministically redrawn.
    """
    rng = SplitMix64(seed)
    for _ in range(32):
        name = rng.choice(graphs.PRESETS)
        n_min = 3 if name in ("ring", "biparallel") else 2
        n = rng.randint(max(n_lo, n_min), max(n_hi, n_min))
        d = rng.randint(d_lo, d_hi)
        factors = [
            subspaces.random_subspace(d, rng.randint(1, d), rng.next_uint64()) for _ in range(n)
        ]
        op = splitting.build(graphs.pair(graphs.preset(name, n)), subspaces.product(factors))
        if np.max(np.abs(op.T - np.eye(op.size))) > 1e-12:
            return op
    raise RuntimeError("could not draw a non-identity operator")


def with_extra_edge(gp, edge):
    """Pair a graph, as the subgraph, with itself plus one forward edge."""
    g = graphs.validate(gp.n, tuple(gp.edges) + (edge,))
    return graphs.pair(g, gp)


def pair_catalog():
    """Named graph-pair builders with their G = G' status and minimal size."""
    same = [(name, (lambda nm: lambda n: graphs.pair(graphs.preset(nm, n)))(name), True,
             3 if name in ("ring", "biparallel") else 2)
            for name in graphs.PRESETS]
    diff = [
        ("parallel_down+edge/parallel_down",
         lambda n: with_extra_edge(graphs.preset("parallel_down", n), (1, 2)), False, 3),
        ("biparallel/parallel_up",
         lambda n: graphs.pair(graphs.preset("biparallel", n), graphs.preset("parallel_up", n)),
         False, 3),
        ("ring/sequential",
         lambda n: graphs.pair(graphs.preset("ring", n), graphs.preset("sequential", n)),
         False, 3),
    ]
    return same + diff


@dataclass
class TrialRecord:
    pair_name: str
    n: int
    d: int
    same: bool
    consistent: bool
    defect: float
    witness_index: object  # 1-based index or None


def graph_equality_trials(seed, trials):
    """Randomized consistency check of iso-averagedness against G = G'.

    For pairs with G = G', random subspaces must always yield an
    iso-averaged operator; for pairs with G != G', the coordinate-product
    witness search must succeed. Every trial is deterministic in the seed.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = SplitMix64(seed)
    records = []
    for name, make, same, n_min in pair_catalog():
        for _ in range(trials):
            n = rng.randint(max(n_min, 3), 6)
            d = rng.randint(1, 3)
            gp = make(n)
            if same:
                factors = [
                    subspaces.random_subspace(d, rng.randint(0, d), rng.next_uint64())
                    for _ in range(n)
                ]
                op = splitting.build(gp, subspaces.product(factors))
                _, iso, _ = splitting.certificates(op.T)
                nrm = matlin.operator_norm(op.T)
                consistent = iso <= splitting.DEFECT_TOL * (1.0 + nrm * nrm)
                records.append(TrialRecord(name, n, d, True, consistent, float(iso), None))
            else:
                res = witness_search(gp, d)
                records.append(TrialRecord(name, n, d, False, res.found, res.defect, res.index))
    return records


# ---------------------------------------------------------------------------
# Golden worked examples.

@dataclass(frozen=True)
class CheckLine:
    label: str
    measured: str
    expected: str
    passed: bool


@dataclass(frozen=True)
class DemoReport:
    name: str
    lines: tuple

    @property
    def passed(self):
        return all(line.passed for line in self.lines)


def _close(label, measured, expected, tol):
    ok = abs(measured - expected) <= tol
    return CheckLine(label, f"{measured:.12g}", f"{expected:.12g} (tol {tol:.1g})", ok)


def _bound(label, measured, relation, bound):
    ok = {
        "<=": measured <= bound,
        "<": measured < bound,
        ">=": measured >= bound,
        ">": measured > bound,
    }[relation]
    return CheckLine(label, f"{measured:.12g}", f"{relation} {bound:.12g}", ok)


def _demo_not_normal():
    t = np.array([[0.0, 1.0], [0.0, 0.0]])
    x = np.array([0.0, 1.0])

    def f(theta):
        tt = splitting.relax(t, theta)
        return float(np.linalg.norm(tt @ (tt @ x)))

    target = math.sqrt(5.0) / 4.0
    normality, _, _ = splitting.certificates(t)
    lines = (
        _close("norm of squared relaxed iterate at 1/2", f(0.5), target, 1e-12),
        _bound("midpoint value vs endpoint average 1/2", f(0.5), ">", 0.5 * (f(0.0) + f(1.0))),
        _close("endpoint average", 0.5 * (f(0.0) + f(1.0)), 0.5, 1e-12),
        _close("normality defect of the shift block", normality, 1.0, 1e-12),
        _close("convexity gap at the midpoint", f(0.5) - 0.5, target - 0.5, 1e-12),
    )
    return DemoReport("not-normal", lines)


def _demo_relaxed_projector():
    t = np.diag([1.0, 0.0])
    # Eighth-steps keep 1 - theta and theta + (1 - theta) exact in binary.
    thetas = [i / 8.0 for i in range(0, 17)]
    worst_exact = 0.0
    worst_normal = 0.0
    off_defects = []
    for theta in thetas:
        tt = splitting.relax(t, theta)
        worst_exact = max(worst_exact, float(np.max(np.abs(tt - np.diag([1.0, 1.0 - theta])))))
        normality, iso, _ = splitting.certificates(tt)
        worst_normal = max(worst_normal, normality)
        if theta not in (0.0, 1.0):
            off_defects.append(iso)
    _, iso0, _ = splitting.certificates(splitting.relax(t, 0.0))
    _, iso1, _ = splitting.certificates(splitting.relax(t, 1.0))
    lines = (
        _close("worst deviation from diag(1, 1-theta)", worst_exact, 0.0, 0.0),
        _close("iso defect at theta = 0", iso0, 0.0, 1e-12),
        _close("iso defect at theta = 1", iso1, 0.0, 1e-12),
        _bound("smallest iso defect off {0, 1}", min(off_defects), ">", 1e-12),
        _close("worst normality defect over the grid", worst_normal, 0.0, 1e-12),
    )
    return DemoReport("relaxed-projector", lines)


def three_lines_example():
    """The three-lines configuration with its closed-form limit point.

    Three hyperplanes (lines) through the origin in the plane, the chain
    graph on three nodes with G = G', and the tree incidence matrix as the
    Laplacian factor, so the iteration matches the textbook three-step
    substitution system. Returns (op, v0, mu, limit).
    """
    a1 = np.array([-1.0, 6.0])
    a2 = np.array([-3.0, 1.0])
    a3 = np.array([-3.0, -4.0])
    v0 = np.array([1.0, -10.0, -8.0, 1.0])

    g = graphs.preset("sequential", 3)
    op = splitting.build(
        graphs.pair(g),
        subspaces.product([subspaces.hyperplane(a) for a in (a1, a2, a3)]),
        z=graphs.incidence(g),
    )

    def det2(u, v):
        return u[0] * v[1] - u[1] * v[0]

    mu = det2(a3, a2) / det2(a1, a2)
    w = np.concatenate([mu * a1, a3])
    coeff = (mu * (a1 @ v0[:2]) + a3 @ v0[2:]) / (mu * mu * (a1 @ a1) + a3 @ a3)
    return op, v0, mu, coeff * w


def _demo_geometric():
    op, v0, mu, limit = three_lines_example()
    f = fix_basis(op.T)
    numeric_limit = f @ (f.T @ v0)

    v = v0.copy()
    for _ in range(5000):
        v = op.T @ v
    final_dist = float(np.linalg.norm(v - limit))

    thetas = [i / 5.0 for i in range(1, 10)]
    stops = {}
    for theta in thetas:
        stops[theta] = converge(op, theta, v0).k_stop

    sym = 0.0
    trace_lo = converge(op, 0.2, v0, eps=1e-30, k_max=200)
    trace_hi = converge(op, 1.8, v0, eps=1e-30, k_max=200)
    for (_, da), (_, db) in zip(trace_lo.points, trace_hi.points):
        sym = max(sym, abs(da - db))

    lines = (
        _close("line-mixing coefficient", mu, -15.0 / 17.0, 1e-12),
        _close("fixed-subspace dimension", float(f.shape[1]), 1.0, 0.0),
        _close("numeric limit vs closed form", float(np.linalg.norm(numeric_limit - limit)), 0.0, 1e-9),
        _bound("distance to closed-form limit after 5000 steps", final_dist, "<=", 1e-8),
        _bound("stop-iteration gap between 0.2 and 1.8", abs(stops[0.2] - stops[1.8]), "<=", 1.0),
        _bound("stop iterations at 1 vs grid best", float(stops[1.0]), "<=", float(min(stops.values()))),
        _bound("distance symmetry of 0.2 and 1.8 over 200 steps", sym, "<=", 1e-8),
    )
    return DemoReport("geometric", lines)


def parallel_down_extra_c(n):
    """Closed-form C for the star-to-last graph plus the edge (1, 2)."""
    m = n - 3
    c = np.zeros((n - 1, n - 1))
    c[0, 0] = 0.5 * m
    c[1, 0] = 0.5 * m
    c[1, 1] = 0.5 * (n - 1)
    c[0, 2:] = -1.0
    c[1, 2:] = -1.0
    c[2:, 0] = -1.0
    c[2:, 2:] = (n - 1) * np.eye(m) - np.ones((m, m))
    return c / (n - 1)


def _demo_parallel_down_extra():
    n, d = 4, 1
    gp = with_extra_edge(graphs.preset("parallel_down", n), (1, 2))
    spaces = subspaces.product([subspaces.full(d)] * n)
    z = graphs.incidence(gp.gp)
    op = splitting.build(gp, spaces, z=z)
    expected = matlin.kron_lift(parallel_down_extra_c(n), d)
    normality, _, _ = splitting.certificates(op.T)
    lines = (
        _close("deviation from the closed-form C", float(np.max(np.abs(op.C - expected))), 0.0, 1e-10),
        _bound("normality defect", normality, ">", 1e-3),
    )
    return DemoReport("parallel-down-extra", lines)


def malitsky_tam_c(n):
    """Closed-form C for the ring-over-chain pair with full node spaces."""
    c = 0.5 * np.eye(n - 1)
    for i in range(n - 2):
        c[i, i + 1] = -0.5
    c[n - 2, 0] = -0.5
    return c


def _demo_biparallel():
    n, d = 4, 1
    gp = graphs.pair(graphs.preset("biparallel", n), graphs.preset("parallel_up", n))
    spaces = subspaces.product([subspaces.full(d)] * n)
    op = splitting.build(gp, spaces, z=graphs.incidence(gp.gp))
    expected = matlin.kron_lift(np.diag([0.5] * (n - 2) + [0.0]), d)
    normality, iso, _ = splitting.certificates(op.T)
    witness = witness_search(gp, d)
    lines = (
        _close("deviation from block-diagonal C", float(np.max(np.abs(op.C - expected))), 0.0, 1e-10),
        _bound("normality defect", normality, "<=", 1e-9),
        _close("iso defect (eigenvalue 1/2 off the circle)", iso, 0.5, 1e-9),
        _bound("coordinate-product witness defect", witness.defect, ">", WITNESS_TOL),
    )
    return DemoReport("biparallel", lines)


def _demo_malitsky_tam():
    n, d = 3, 1
    gp = graphs.pair(graphs.preset("ring", n), graphs.preset("sequential", n))
    spaces = subspaces.product([subspaces.full(d)] * n)
    op = splitting.build(gp, spaces, z=graphs.incidence(gp.gp))
    expected = matlin.kron_lift(malitsky_tam_c(n), d)
    _, iso, _ = splitting.certificates(op.T)
    witness = witness_search(gp, d)
    lines = (
        _close("deviation from the half-permutation C", float(np.max(np.abs(op.C - expected))), 0.0, 1e-10),
        _bound("iso defect with full node spaces", iso, "<=", 1e-9),
        _bound("witness defect for unequal graphs", witness.defect, ">", WITNESS_TOL),
    )
    return DemoReport("malitsky-tam", lines)


_DEMOS = {
    "not-normal": _demo_not_normal,
    "relaxed-projector": _demo_relaxed_projector,
    "geometric": _demo_geometric,
    "parallel-down-extra": _demo_parallel_down_extra,
    "biparallel": _demo_biparallel,
    "malitsky-tam": _demo_malitsky_tam,
}


def demo_names():
    return list(_DEMOS)


def run_demo(name):
    """Run one golden worked example and report its measured-vs-expected lines."""
    try:
        fn = _DEMOS[name]
    except KeyError:
        raise UnknownExampleError(
            f"unknown example {name!r}; available: {', '.join(_DEMOS)}"
        ) from None
    return fn()
