"""Algorithmic graphs and their matrix companions.

An algorithmic graph is a connected directed graph on nodes 1..n whose
every edge (i, j) satisfies i < j; the orientation is what later makes the
splitting operator computable by forward substitution. This module builds
the adjacency, degree, Laplacian and update matrices, and factors the
Laplacian of a connected spanning subgraph as Z Z^T with Z of full column
rank n-1.

Node indices are 1-based at the boundary (matching the usual convention
for these methods) and 0-based in array code.
"""

from dataclasses import dataclass

import numpy as np

from . import matlin

PRESETS = ("sequential", "ring", "parallel_up", "parallel_down", "biparallel", "complete")


class GraphError(ValueError):
    """Base class for graph construction problems."""


class BadOrientationError(GraphError):
    """An edge (i, j) violates i < j or leaves the node range."""


class DisconnectedError(GraphError):
    """The underlying undirected graph is not connected."""


class DuplicateEdgeError(GraphError):
    """The same edge appears twice."""


class BadSizeError(GraphError):
    """Preset requested with too few nodes."""


class NotSubgraphError(GraphError):
    """Subgraph edges are not a subset of the graph edges."""


@dataclass(frozen=True)
class AlgorithmicGraph:
    """Directed graph on nodes 1..n with every edge (i, j) satisfying i < j."""

    n: int
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))
        if self.n < 1:
            raise BadSizeError("need at least one node")
        seen = set()
        for i, j in self.edges:
            if not (1 <= i < j <= self.n):
                raise BadOrientationError(f"edge ({i}, {j}) must satisfy 1 <= i < j <= {self.n}")
            if (i, j) in seen:
                raise DuplicateEdgeError(f"edge ({i}, {j}) appears twice")
            seen.add((i, j))
        if not _connected(self.n, self.edges):
            raise DisconnectedError("underlying undirected graph is not connected")

    def degrees(self):
        """Undirected degree of every node (in-edges plus out-edges)."""
        d = np.zeros(self.n, dtype=int)
        for i, j in self.edges:
            d[i - 1] += 1
            d[j - 1] += 1
        return d

    def in_neighbors(self):
        """For each node i (0-based), the 0-based sources h of edges (h, i)."""
        inn = [[] for _ in range(self.n)]
        for i, j in self.edges:
            inn[j - 1].append(i - 1)
        return [tuple(t) for t in inn]


def _connected(n, edges):
    if n == 1:
        return True
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i - 1].append(j - 1)
        adj[j - 1].append(i - 1)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def validate(n, edges):
    """Check orientation, duplicates and connectivity; return the graph."""
    return AlgorithmicGraph(n, tuple(tuple(e) for e in edges))


@dataclass(frozen=True)
class GraphPair:
    """A graph together with a connected spanning subgraph."""

    g: AlgorithmicGraph
    gp: AlgorithmicGraph

    def __post_init__(self):
        if self.g.n != self.gp.n:
            raise NotSubgraphError("graph and subgraph must share the node set")
        missing = set(self.gp.edges) - set(self.g.edges)
        if missing:
            raise NotSubgraphError(f"subgraph edges not in graph: {sorted(missing)}")

    @property
    def same(self):
        return set(self.g.edges) == set(self.gp.edges)


def pair(g, gp=None):
    """Bundle a graph with its spanning subgraph (defaults to the graph itself)."""
    return GraphPair(g, g if gp is None else gp)


def edge_laplacian(n, edges):
    """Laplacian Deg - Adj - Adj^T of an arbitrary edge set on n nodes.

    No connectivity check: this also serves the difference graph that keeps
    the nodes of a graph but drops the edges of its subgraph.
    """
    lap = np.zeros((n, n))
    for i, j in edges:
        lap[i - 1, i - 1] += 1.0
        lap[j - 1, j - 1] += 1.0
        lap[i - 1, j - 1] -= 1.0
        lap[j - 1, i - 1] -= 1.0
    return lap


def matrices(g):
    """Adjacency, degree, Laplacian and update matrix B = Deg - 2 Adj^T."""
    n = g.n
    adj = np.zeros((n, n))
    for i, j in g.edges:
        adj[i - 1, j - 1] = 1.0
    deg = np.diag(g.degrees().astype(float))
    lap = deg - adj - adj.T
    b = deg - 2.0 * adj.T
    return adj, deg, lap, b


def incidence(g):
    """Oriented incidence matrix: +1 at the edge source, -1 at the target.

    One column per edge in listed order; E E^T equals the Laplacian. For a
    spanning tree this is already a valid n x (n-1) Laplacian factor.
    """
    e = np.zeros((g.n, len(g.edges)))
    for col, (i, j) in enumerate(g.edges):
        e[i - 1, col] = 1.0
        e[j - 1, col] = -1.0
    return e


def laplacian_factor(g):
    """Full-column-rank Z of shape n x (n-1) with Z Z^T = Lap(g).

    Built from the pivoted QR of the transposed incidence matrix, so the
    reconstruction is exact up to round-off and no eigen-solve is needed.
    """
    n = g.n
    e = incidence(g)
    _, r, perm = matlin.qr(e.T, pivoting=True)
    z0 = r[: n - 1, :].T
    z = np.zeros((n, n - 1))
    z[perm, :] = z0
    return z


def preset(name, n):
    """One of the named graph families on n nodes."""
    if name not in PRESETS:
        raise GraphError(f"unknown preset {name!r}, expected one of {PRESETS}")
    if n < 2:
        raise BadSizeError("presets need at least two nodes")
    if name in ("ring", "biparallel") and n < 3:
        raise BadSizeError(f"{name} needs at least three nodes")
    if name == "sequential":
        edges = [(i, i + 1) for i in range(1, n)]
    elif name == "ring":
        edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    elif name == "parallel_up":
        edges = [(1, i) for i in range(2, n + 1)]
    elif name == "parallel_down":
        edges = [(i, n) for i in range(1, n)]
    elif name == "biparallel":
        edges = sorted({(1, i) for i in range(2, n + 1)} | {(i, n) for i in range(1, n)})
    else:  # complete
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return AlgorithmicGraph(n, tuple(edges))


def from_json(obj):
    """Graph from a JSON fragment: {"preset": name, "n": k} or {"n": k, "edges": [...]}."""
    if not isinstance(obj, dict):
        raise GraphError("graph fragment must be an object")
    if "preset" in obj:
        return preset(obj["preset"], int(obj["n"]))
    if "edges" not in obj or "n" not in obj:
        raise GraphError('graph fragment needs either "preset"/"n" or "n"/"edges"')
    return validate(int(obj["n"]), [tuple(e) for e in obj["edges"]])
