"""Hamiltonian-cycle encodings with a knowledge-based notion of critical edges."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import FrozenSet, List, Optional, Tuple

from ..textio import SourceProgram, parse_program

Edge = Tuple[str, str]

MAX_VERTICES = 6
ORACLE_MAX_VERTICES = 7


@dataclass(frozen=True)
class Digraph:
    vertices: Tuple[str, ...]
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be distinct")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u},{v}) leaves the vertex set")
        object.__setattr__(self, "edges", frozenset(self.edges))

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def non_edges(self) -> List[Edge]:
        return [(u, v) for u in self.vertices for v in self.vertices
                if u != v and (u, v) not in self.edges]

    def with_edges(self, extra) -> "Digraph":
        return Digraph(self.vertices, self.edges | frozenset(extra))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}


def edge_atom(pred: str, e: Edge) -> str:
    return f"{pred}({e[0]},{e[1]})"


# -- encodings ------------------------------------------------------------------

def _facts(g: Digraph) -> List[str]:
    lines = [f"vtx({v})." for v in g.vertices]
    lines += [f"edge({u},{v})." for u, v in g.sorted_edges()]
    return lines


def hc_rules(edge_pred: str = "edge", start: Optional[str] = None) -> List[str]:
    """A choice-free Hamiltonian cycle encoding over ``vtx`` and *edge_pred*.

    Every edge is in or out of the cycle, each vertex has at most one
    outgoing and one incoming cycle edge, and every vertex (the start vertex
    included) is reached from the start along cycle edges.
    """
    e = edge_pred
    lines = [
        f"hc(X,Y) :- {e}(X,Y), not nhc(X,Y).",
        f"nhc(X,Y) :- {e}(X,Y), not hc(X,Y).",
        f":- vtx(X), 2 {{ hc(X,Y) : {e}(X,Y) }}.",
        f":- vtx(Y), 2 {{ hc(X,Y) : {e}(X,Y) }}.",
        "reach(Y) :- start(X), hc(X,Y).",
        "reach(Y) :- reach(X), hc(X,Y).",
        ":- vtx(X), not reach(X).",
    ]
    if start is not None:
        lines.append(f"start({start}).")
    return lines


def gen_hc_critical(g: Digraph) -> SourceProgram:
    """Facts for *g*, the cycle encoding, and ``critical(X,Y) :- edge(X,Y), K hc(X,Y)``."""
    if len(g.vertices) > MAX_VERTICES:
        raise ValueError(f"at most {MAX_VERTICES} vertices")
    lines = _facts(g) + hc_rules("edge", g.vertices[0] if g.vertices else None)
    lines.append("critical(X,Y) :- edge(X,Y), K hc(X,Y).")
    return parse_program("\n".join(lines) + "\n", "lk")


def gen_extension(g: Digraph, p: int, k: int) -> SourceProgram:
    """Pick at most *p* new edges so that at most *k* edges are known cycle edges.

    New edges are guessed with an even loop over the non-edges of *g*.
    """
    if len(g.vertices) > MAX_VERTICES:
        raise ValueError(f"at most {MAX_VERTICES} vertices")
    if p < 0 or k < 0:
        raise ValueError("p and k must be nonnegative")
    lines = _facts(g) + [
        "newEdge(X,Y) :- vtx(X), vtx(Y), X != Y, not edge(X,Y), not nnewEdge(X,Y).",
        "nnewEdge(X,Y) :- vtx(X), vtx(Y), X != Y, not edge(X,Y), not newEdge(X,Y).",
        ":- newEdge(X,Y), edge(X,Y).",
        f":- {p + 1} {{ newEdge(X,Y) : vtx(X), vtx(Y) }}.",
        "edgeEG(X,Y) :- edge(X,Y).",
        "edgeEG(X,Y) :- newEdge(X,Y).",
    ]
    lines += hc_rules("edgeEG", g.vertices[0] if g.vertices else None)
    lines += [
        "critical(X,Y) :- edgeEG(X,Y), K hc(X,Y).",
        f":- {k + 1} {{ critical(X,Y) : edgeEG(X,Y) }}.",
    ]
    return parse_program("\n".join(lines) + "\n", "lk")


# -- oracles --------------------------------------------------------------------

def hamiltonian_cycles(g: Digraph) -> List[FrozenSet[Edge]]:
    if len(g.vertices) > ORACLE_MAX_VERTICES:
        raise ValueError(f"at most {ORACLE_MAX_VERTICES} vertices")
    if len(g.vertices) < 2:
        return []
    first, rest = g.vertices[0], g.vertices[1:]
    cycles = set()
    for order in permutations(rest):
        tour = (first,) + order
        edges = frozenset(zip(tour, tour[1:] + tour[:1]))
        if edges <= g.edges:
            cycles.add(edges)
    return sorted(cycles, key=sorted)


def hamiltonian_oracle(g: Digraph) -> Tuple[List[FrozenSet[Edge]], FrozenSet[Edge]]:
    """All Hamiltonian cycles and the edges lying on every one of them.

    With no cycle at all, every edge is critical.
    """
    cycles = hamiltonian_cycles(g)
    critical = set(g.edges)
    for c in cycles:
        critical &= c
    return cycles, frozenset(critical)


def _extensions(g: Digraph, p: int):
    candidates = g.non_edges()
    for size in range(0, min(p, len(candidates)) + 1):
        for extra in combinations(candidates, size):
            yield frozenset(extra)


def extension_oracle(g: Digraph, p: int, k: int) -> Optional[FrozenSet[Edge]]:
    """Some set of at most *p* new edges leaving at most *k* critical edges, if any.

    Critical is per extended graph: on every Hamiltonian cycle, or every
    edge when the extended graph has no cycle.
    """
    if len(g.vertices) > 3 or p > 2 or k > 2:
        raise ValueError("extension oracle is limited to 3 vertices and p, k <= 2")
    for extra in _extensions(g, p):
        _, critical = hamiltonian_oracle(g.with_edges(extra))
        if len(critical) <= k:
            return extra
    return None


def pooled_extension_oracle(g: Digraph, p: int, k: int) -> Optional[FrozenSet[Edge]]:
    """What the extension encoding computes: cycles pooled over all admissible extensions.

    Returns the edges lying on every cycle of every extended graph with at
    most *p* new edges, provided some extension has a cycle and there are at
    most *k* such edges; otherwise ``None``.
    """
    if len(g.vertices) > 4:
        raise ValueError("pooled extension oracle is limited to 4 vertices")
    common = None
    for extra in _extensions(g, p):
        for c in hamiltonian_cycles(g.with_edges(extra)):
            common = set(c) if common is None else common & c
    if common is None or len(common) > k:
        return None
    return frozenset(common)


def random_digraph(rng: random.Random, n: int = 4, density: float = 0.5) -> Digraph:
    vertices = tuple(f"v{i}" for i in range(n))
    edges = {(u, v) for u in vertices for v in vertices if u != v and rng.random() < density}
    return Digraph(vertices, frozenset(edges))
