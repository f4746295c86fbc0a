"""The poset D_P of a partition, given by its cover diagram.

Vertices are triples ``(u, i, k)``: position ``u`` in the ``k``-th Jordan
block of size ``i``.  Edges come from the elementary maps commuting with
the Jordan matrix J_P; each edge carries one variable of the polynomial
ring used for the simply adequate matrix.
"""

from __future__ import annotations

import graphlib
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple

from .partitions import Partition, consecutive_runs


class Vertex(NamedTuple):
    u: int
    i: int
    k: int

    def __str__(self) -> str:
        return f"({self.u},{self.i},{self.k})"


class EdgeVar(NamedTuple):
    """Variable attached to an elementary map.

    ``kind`` is one of ``"s"`` (beta_i), ``"t"`` (alpha_i), ``"e"``
    (e_{i,k}, written t_{i,k}) or ``"z"`` (w_i).
    """

    kind: str
    i: int
    k: int = 0

    @property
    def name(self) -> str:
        if self.kind == "e":
            return f"t_{{{self.i},{self.k}}}"
        return f"{self.kind}_{self.i}"

    def sort_key(self) -> tuple:
        # source-to-sink reading order: betas going down, then the
        # within-level maps, alphas going back up, the w maps last
        if self.kind == "s":
            return (0, -self.i, 0)
        if self.kind == "e":
            return (1, -self.i, self.k)
        if self.kind == "t":
            return (2, self.i, 0)
        return (3, -self.i, 0)

    def __str__(self) -> str:
        return self.name


def Beta(i: int) -> EdgeVar:
    return EdgeVar("s", i)


def Alpha(i: int) -> EdgeVar:
    return EdgeVar("t", i)


def E(i: int, k: int) -> EdgeVar:
    return EdgeVar("e", i, k)


def Z(i: int) -> EdgeVar:
    return EdgeVar("z", i)


class Edge(NamedTuple):
    source: Vertex
    target: Vertex
    var: EdgeVar
    augmented: bool = False


def basis_key(v: Vertex) -> tuple[int, int, int]:
    """Global basis order: level descending, then row, then position."""
    return (-v.i, v.k, v.u)


def vertices_of(P: Partition) -> list[Vertex]:
    vs = [Vertex(u, i, k) for i, m in P.multiplicity.items()
          for k in range(1, m + 1) for u in range(1, i + 1)]
    return sorted(vs, key=basis_key)


def s_double_prime(P: Partition) -> frozenset[int]:
    """Minima of the odd-length maximal runs of consecutive part sizes."""
    return frozenset(run[0] for run in consecutive_runs(P.support) if len(run) % 2 == 1)


def is_isolated(P: Partition, i: int) -> bool:
    return i in P.multiplicity and (i - 1) not in P.multiplicity and (i + 1) not in P.multiplicity


@dataclass(frozen=True, eq=False)
class PosetDiagram:
    partition: Partition
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    augmented: bool = False

    @cached_property
    def index(self) -> dict[Vertex, int]:
        return {v: j for j, v in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> dict[Vertex, list[Vertex]]:
        succ: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for e in self.edges:
            succ[e.source].append(e.target)
        return succ

    @cached_property
    def predecessors(self) -> dict[Vertex, list[Vertex]]:
        pred: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for e in self.edges:
            pred[e.target].append(e.source)
        return pred

    @cached_property
    def edge_map(self) -> dict[tuple[Vertex, Vertex], Edge]:
        return {(e.source, e.target): e for e in self.edges}

    @cached_property
    def topological_order(self) -> tuple[Vertex, ...]:
        ts = graphlib.TopologicalSorter({v: self.predecessors[v] for v in self.vertices})
        return tuple(ts.static_order())

    @cached_property
    def upsets(self) -> dict[Vertex, frozenset[Vertex]]:
        """For each vertex, the set of vertices reachable from it (itself included)."""
        up: dict[Vertex, frozenset[Vertex]] = {}
        for v in reversed(self.topological_order):
            acc = {v}
            for w in self.successors[v]:
                acc |= up[w]
            up[v] = frozenset(acc)
        return up

    def comparable_pairs(self) -> Iterator[tuple[Vertex, Vertex]]:
        """All pairs ``v < w`` of the partial order."""
        for v in self.vertices:
            for w in self.upsets[v]:
                if w != v:
                    yield v, w

    def to_dot(self) -> str:
        lines = ["digraph D_P {", f'  label="P = {self.partition}";', "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  "{v.u},{v.i},{v.k}" [label="{v}"];')
        for e in self.edges:
            s, t = e.source, e.target
            style = ", style=dashed" if e.augmented else ""
            lines.append(f'  "{s.u},{s.i},{s.k}" -> "{t.u},{t.i},{t.k}" [label="{e.var.name}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "partition": str(self.partition),
            "augmented": self.augmented,
            "vertices": [list(v) for v in self.vertices],
            "edges": [
                {"source": list(e.source), "target": list(e.target),
                 "var": e.var.name, "augmented": e.augmented}
                for e in self.edges
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@lru_cache(maxsize=4096)
def build_diagram(P: Partition, augmented: bool = False) -> PosetDiagram:
    """Cover diagram of D_P; with ``augmented`` the extra w-edges on the
    non-isolated minima of odd runs are added."""
    mult = P.multiplicity
    levels = P.support  # decreasing
    sdp = s_double_prime(P)
    edges: list[Edge] = []
    for idx, i in enumerate(levels):
        ni = mult[i]
        if idx + 1 < len(levels):
            im = levels[idx + 1]
            nim = mult[im]
            for u in range(1, im + 1):
                edges.append(Edge(Vertex(u, i, ni), Vertex(u, im, 1), Beta(i)))
            for u in range(1, im + 1):
                edges.append(Edge(Vertex(u, im, nim), Vertex(u + i - im, i, 1), Alpha(i)))
        for k in range(1, ni):
            for u in range(1, i + 1):
                edges.append(Edge(Vertex(u, i, k), Vertex(u, i, k + 1), E(i, k)))
        isolated = is_isolated(P, i)
        if isolated or (augmented and i in sdp):
            for u in range(1, i):
                edges.append(Edge(Vertex(u, i, ni), Vertex(u + 1, i, 1), Z(i), augmented=not isolated))
    return PosetDiagram(P, tuple(vertices_of(P)), tuple(edges), augmented)


def check_vertex(P: Partition, v: Vertex) -> Vertex:
    v = Vertex(*v)
    if v.i not in P.multiplicity or not (1 <= v.u <= v.i) or not (1 <= v.k <= P.mult(v.i)):
        raise ValueError(f"{v} is not a vertex of D_P for P = {P}")
    return v


def tau(P: Partition, v: Vertex) -> Vertex:
    """Order reversing involution of D_P."""
    v = check_vertex(P, v)
    return Vertex(v.i + 1 - v.u, v.i, P.mult(v.i) + 1 - v.k)


def rho(v: Vertex) -> int:
    """Signed offset of a vertex from the vertical axis of symmetry."""
    return 2 * v[0] - v[1] - 1


def leq(D: PosetDiagram, v: Vertex, v2: Vertex) -> bool:
    return Vertex(*v2) in D.upsets[Vertex(*v)]


def longest_chain(D: PosetDiagram) -> int:
    """Number of vertices on a longest directed path."""
    best: dict[Vertex, int] = {}
    for v in reversed(D.topological_order):
        best[v] = 1 + max((best[w] for w in D.successors[v]), default=0)
    return max(best.values())


def chains_between(D: PosetDiagram, v: Vertex, v2: Vertex, length: int) -> list[tuple[Vertex, ...]]:
    """All directed paths from v to v2 with exactly ``length`` vertices."""
    v, v2 = Vertex(*v), Vertex(*v2)
    if length < 1:
        return []
    # shortest/longest edge counts from every vertex to v2, for pruning
    lo: dict[Vertex, int] = {v2: 0}
    hi: dict[Vertex, int] = {v2: 0}
    for x in reversed(D.topological_order):
        if x == v2:
            continue
        d = [(lo[w], hi[w]) for w in D.successors[x] if w in lo]
        if d:
            lo[x] = 1 + min(a for a, _ in d)
            hi[x] = 1 + max(b for _, b in d)
    steps = length - 1
    if v not in lo or not (lo[v] <= steps <= hi[v]):
        return []
    out: list[tuple[Vertex, ...]] = []
    path = [v]

    def walk(x: Vertex, remaining: int):
        if remaining == 0:
            if x == v2:
                out.append(tuple(path))
            return
        for w in D.successors[x]:
            if w in lo and lo[w] <= remaining - 1 <= hi[w]:
                path.append(w)
                walk(w, remaining - 1)
                path.pop()

    walk(v, steps)
    return out


def all_paths(D: PosetDiagram, v: Vertex) -> Iterator[tuple[Vertex, ...]]:
    """Every directed path starting at v (including the trivial one)."""
    path = [Vertex(*v)]

    def walk(x):
        yield tuple(path)
        for w in D.successors[x]:
            path.append(w)
            yield from walk(w)
            path.pop()

    yield from walk(path[0])
