"""Entangled graphs and the class labels of 2-, 3- and 4-qubit pure states.

A state is mapped to a graph whose vertices are qubits and whose weighted
edges are the nonzero pairwise concurrences.  A *circle* marks a subset of
three or more qubits carrying nonzero global (tri- or four-partite)
concurrence.  The class label follows from the tensor-factor structure and
the isomorphism type of the edge set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .concurrence import PURE_EPS, ConcurrenceReport, full_report
from .qcore import _minor_entropy, _split_matrix, as_state

EDGE_EPS = 1e-7


class ClassLabel(str, Enum):
    SEP2 = "sep2"
    ENT2 = "ent2"
    C1A = "1a"
    C1B = "1b"
    C1C = "1c"
    C1D = "1d"
    C1E = "1e"
    C1F = "1f"
    C2A = "2a"
    C2B = "2b"
    C2C = "2c"
    C2D = "2d"
    C2E = "2e"
    C2F = "2f"
    C2G = "2g"
    C2H = "2h"
    C2I = "2i"
    C2J = "2j"
    C2K = "2k"
    C2L = "2l"
    C2M = "2m"
    C2N = "2n"
    C2O = "2o"
    C2P = "2p"
    C2Q = "2q"
    C2X_PAIRPAIR = "2x-pairpair"

    def __str__(self):
        return self.value

    @property
    def n_qubits(self) -> int:
        if self in (ClassLabel.SEP2, ClassLabel.ENT2):
            return 2
        return 3 if self.value.startswith("1") else 4


# labels that come with a representative family
REPRESENTATIVE_LABELS = tuple(
    ClassLabel(f"{k}{c}") for k, cs in (("1", "abcdef"), ("2", "abcdefghijklmnopq")) for c in cs
)

# fully inseparable four-qubit labels by edge-set shape
SHAPE_TO_LABEL = {
    "empty": ClassLabel.C2G,
    "one-edge": ClassLabel.C2H,
    "two-adjacent": ClassLabel.C2I,
    "two-disjoint": ClassLabel.C2J,
    "triangle": ClassLabel.C2K,
    "star": ClassLabel.C2L,
    "path3": ClassLabel.C2M,
    "paw": ClassLabel.C2N,
    "cycle4": ClassLabel.C2O,
    "five-edge": ClassLabel.C2P,
    "complete": ClassLabel.C2Q,
}
_THREE_QUBIT_BY_EDGES = [ClassLabel.C1C, ClassLabel.C1D, ClassLabel.C1E, ClassLabel.C1F]
_BISEPARABLE_BY_EDGES = [ClassLabel.C2C, ClassLabel.C2D, ClassLabel.C2E, ClassLabel.C2F]


@dataclass
class EntangledGraph:
    """Vertices ``1..n``, weighted edges ``(i, j) -> C_ij`` with ``i < j``,
    and circles ``(subset, value)``."""

    n: int
    edges: dict = field(default_factory=dict)
    circles: list = field(default_factory=list)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def relabel(self, perm: dict) -> "EntangledGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        edges = {}
        for (i, j), w in self.edges.items():
            a, b = sorted((perm[i], perm[j]))
            edges[(a, b)] = w
        circles = [(tuple(sorted(perm[v] for v in s)), val) for s, val in self.circles]
        return EntangledGraph(self.n, dict(sorted(edges.items())), sorted(circles))


@dataclass(frozen=True)
class GraphShape:
    n: int
    shape: str


@dataclass
class ClassReport:
    label: ClassLabel
    graph: EntangledGraph
    factorization: list
    measures: ConcurrenceReport

    @property
    def shape(self) -> GraphShape:
        return graph_shape(self.graph)


def factorization_structure(psi, purity_eps: float = PURE_EPS, entropies=None) -> list:
    """Finest tensor-factor partition of the qubits, e.g. ``[(1, 2), (3,), (4,)]``.

    A subset is a factor when its marginal is pure to within ``purity_eps``
    (``1 - Tr rho_S^2 <= purity_eps``).  Singletons are checked first, then
    pairs among the remaining qubits; whatever is left forms one block.
    ``entropies`` may carry linear entropies already computed (see
    :class:`ConcurrenceReport`); a subset is looked up directly or through
    its complement.
    """
    psi = as_state(psi)
    n = psi.n_qubits
    t = psi.tensor()
    known = entropies or {}

    def pure(subset):
        rest = tuple(q for q in range(1, n + 1) if q not in subset)
        value = known.get(subset, known.get(rest))
        if value is None:
            value = _minor_entropy(_split_matrix(t, subset))
        return value <= purity_eps

    blocks = [(q,) for q in range(1, n + 1) if pure((q,))]
    rest = [q for q in range(1, n + 1) if (q,) not in blocks]
    if len(rest) >= 4:
        for pair in itertools.combinations(rest, 2):
            if pure(pair):
                blocks.append(pair)
                blocks.append(tuple(q for q in rest if q not in pair))
                rest = []
                break
    if rest:
        blocks.append(tuple(rest))
    return sorted(blocks, key=lambda b: (len(b), b))


def build_graph(report: ConcurrenceReport, factorization=None, edge_eps: float = EDGE_EPS) -> EntangledGraph:
    """Edges for pairwise concurrences above ``edge_eps``; circles for global ones.

    ``factorization`` is accepted for interface symmetry; circle placement
    already follows from which triples in the report are pure.
    """
    n = report.n_qubits
    edges = {p: w for p, w in sorted(report.pairwise.items()) if w > edge_eps}
    circles = []
    if n >= 3 and report.global_value > edge_eps:
        circles.append((tuple(range(1, n + 1)), report.global_value))
    if n == 4:
        for triple, value in sorted(report.triples.items()):
            if value > edge_eps:
                circles.append((triple, value))
    return EntangledGraph(n, edges, circles)


def _has_triangle(edges) -> bool:
    es = set(edges)
    verts = sorted({v for e in es for v in e})
    return any(
        {(a, b), (a, c), (b, c)} <= es for a, b, c in itertools.combinations(verts, 3)
    )


def graph_shape(g: EntangledGraph) -> GraphShape:
    """Isomorphism class of the (unweighted) edge set on 3 or 4 vertices."""
    m = len(g.edges)
    if g.n == 3 or g.n == 2:
        names = ["empty", "one-edge", "two-edge", "triangle"]
        return GraphShape(g.n, names[m])
    if m == 0:
        shape = "empty"
    elif m == 1:
        shape = "one-edge"
    elif m == 2:
        (a, b), (c, d) = g.edges
        shape = "two-adjacent" if {a, b} & {c, d} else "two-disjoint"
    elif m == 3:
        if max(g.degree(v) for v in range(1, 5)) == 3:
            shape = "star"
        elif _has_triangle(g.edges):
            shape = "triangle"
        else:
            shape = "path3"
    elif m == 4:
        shape = "paw" if _has_triangle(g.edges) else "cycle4"
    elif m == 5:
        shape = "five-edge"
    else:
        shape = "complete"
    return GraphShape(g.n, shape)


def label_for(factorization, graph: EntangledGraph) -> ClassLabel:
    """Class label from the factor structure and the graph."""
    n = graph.n
    sizes = sorted(len(b) for b in factorization)
    if n == 2:
        return ClassLabel.SEP2 if sizes == [1, 1] else ClassLabel.ENT2
    if n == 3:
        if sizes == [1, 1, 1]:
            return ClassLabel.C1A
        if sizes == [1, 2]:
            return ClassLabel.C1B
        return _THREE_QUBIT_BY_EDGES[len(graph.edges)]
    if sizes == [1, 1, 1, 1]:
        return ClassLabel.C2A
    if sizes == [1, 1, 2]:
        return ClassLabel.C2B
    if sizes == [2, 2]:
        return ClassLabel.C2X_PAIRPAIR
    if sizes == [1, 3]:
        triple = next(b for b in factorization if len(b) == 3)
        inside = [e for e in graph.edges if set(e) <= set(triple)]
        return _BISEPARABLE_BY_EDGES[len(inside)]
    return SHAPE_TO_LABEL[graph_shape(graph).shape]


def classify(psi, edge_eps: float = EDGE_EPS, purity_eps: float = PURE_EPS) -> ClassReport:
    psi = as_state(psi)
    measures = full_report(psi, purity_eps=purity_eps)
    factorization = factorization_structure(psi, purity_eps, measures.entropies)
    graph = build_graph(measures, factorization, edge_eps)
    return ClassReport(label_for(factorization, graph), graph, factorization, measures)
