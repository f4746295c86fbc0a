"""Greene-Kleitman chain partition of a finite poset given as a DAG.

``c_i`` (largest number of vertices covered by ``i`` chains) is computed as
a min-cost flow on the vertex-split transitive closure; an exhaustive
antichain oracle is provided for small inputs.
"""

from __future__ import annotations

import graphlib
from typing import Hashable, Sequence

from .partitions import Partition
from .poset import PosetDiagram

BRUTE_FORCE_LIMIT = 14


class CyclicGraphError(ValueError):
    pass


def _normalize(D, edges=None) -> tuple[list[Hashable], dict[Hashable, list[Hashable]]]:
    if isinstance(D, PosetDiagram):
        nodes = list(D.vertices)
        edges = [(e.source, e.target) for e in D.edges]
    else:
        nodes = list(D)
        edges = list(edges or [])
    succ: dict[Hashable, list[Hashable]] = {v: [] for v in nodes}
    for a, b in edges:
        if a not in succ or b not in succ:
            raise ValueError(f"edge ({a}, {b}) has an unknown endpoint")
        succ[a].append(b)
    return nodes, succ


def transitive_closure(nodes: Sequence[Hashable], succ: dict) -> dict[Hashable, set]:
    """Strict upsets; raises :class:`CyclicGraphError` on a cycle."""
    pred = {v: [] for v in nodes}
    for a, bs in succ.items():
        for b in bs:
            pred[b].append(a)
    try:
        order = list(graphlib.TopologicalSorter(pred).static_order())
    except graphlib.CycleError as exc:
        raise CyclicGraphError("input graph has a cycle") from exc
    above: dict[Hashable, set] = {}
    for v in reversed(order):
        acc: set = set()
        for w in succ[v]:
            acc.add(w)
            acc |= above[w]
        above[v] = acc
    return above


def chain_cover_profile(D, edges=None) -> list[int]:
    """``[c_0, c_1, ..., c_a]`` where a is the minimum number of covering chains.

    Successive shortest augmenting paths (Bellman-Ford on the residual
    graph) in the network s -> v_in -> v_out -> t, with v_out -> w_in for
    every v < w and cost -1 on each v_in -> v_out arc.  The marginal gains
    of successive augmentations are weakly decreasing.
    """
    nodes, succ = _normalize(D, edges)
    if not nodes:
        return [0]
    above = transitive_closure(nodes, succ)
    idx = {v: j for j, v in enumerate(nodes)}
    n = len(nodes)
    S, T = 2 * n, 2 * n + 1
    # adjacency lists of arc ids; arc j and j ^ 1 are a residual pair
    head: list[int] = []
    cap: list[int] = []
    cost: list[int] = []
    out: list[list[int]] = [[] for _ in range(2 * n + 2)]

    def add(a: int, b: int, c: int):
        for x, y, cc, cp in ((a, b, c, 1), (b, a, -c, 0)):
            out[x].append(len(head))
            head.append(y)
            cost.append(cc)
            cap.append(cp)

    for v in nodes:
        j = idx[v]
        add(S, 2 * j, 0)
        add(2 * j, 2 * j + 1, -1)
        add(2 * j + 1, T, 0)
        for w in above[v]:
            add(2 * j + 1, 2 * idx[w], 0)

    profile = [0]
    covered = 0
    while covered < n:
        dist = [None] * (2 * n + 2)
        via = [-1] * (2 * n + 2)
        dist[S] = 0
        for _ in range(2 * n + 1):
            changed = False
            for x in range(2 * n + 2):
                if dist[x] is None:
                    continue
                for arc in out[x]:
                    if cap[arc] > 0:
                        y = head[arc]
                        nd = dist[x] + cost[arc]
                        if dist[y] is None or nd < dist[y]:
                            dist[y] = nd
                            via[y] = arc
                            changed = True
            if not changed:
                break
        if dist[T] is None:  # cannot happen while a vertex is uncovered
            raise RuntimeError("no augmenting path")
        y = T
        while y != S:
            arc = via[y]
            cap[arc] -= 1
            cap[arc ^ 1] += 1
            y = head[arc ^ 1]
        covered += -dist[T]
        profile.append(covered)
    return profile


def greene_lambda(D, edges=None) -> Partition:
    """First differences of the chain cover profile, as a partition."""
    c = chain_cover_profile(D, edges)
    return Partition(tuple(c[i] - c[i - 1] for i in range(1, len(c))))


def chain_cover_number(D, edges=None) -> int:
    return len(chain_cover_profile(D, edges)) - 1


def _comparability_masks(D, edges=None) -> tuple[int, list[int]]:
    nodes, succ = _normalize(D, edges)
    if len(nodes) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {len(nodes)}")
    above = transitive_closure(nodes, succ)
    idx = {v: j for j, v in enumerate(nodes)}
    comp = [0] * len(nodes)
    for v in nodes:
        for w in above[v]:
            comp[idx[v]] |= 1 << idx[w]
            comp[idx[w]] |= 1 << idx[v]
    return len(nodes), comp


def subset_widths(D, edges=None) -> list[int]:
    """Largest antichain inside every vertex subset (bitmask indexed)."""
    n, comp = _comparability_masks(D, edges)
    size = 1 << n
    antichain = bytearray(size)
    antichain[0] = 1
    width = [0] * size
    for S in range(1, size):
        low = (S & -S).bit_length() - 1
        rest = S & (S - 1)
        antichain[S] = antichain[rest] and not (comp[low] & rest)
        if antichain[S]:
            width[S] = bin(S).count("1")
        else:
            best = 0
            T = S
            while T:
                b = T & -T
                w = width[S ^ b]
                if w > best:
                    best = w
                T ^= b
            width[S] = best
    return width


def brute_force_profile(D, edges=None) -> list[int]:
    """``c_i`` for i up to the width, by Dilworth: a subset is a union of
    at most i chains iff its largest antichain has at most i elements."""
    width = subset_widths(D, edges)
    n = (len(width) - 1).bit_length()
    top = width[-1]
    best = [0] * (top + 1)
    for S, w in enumerate(width):
        size = bin(S).count("1")
        if size > best[w]:
            best[w] = size
    for i in range(1, top + 1):
        best[i] = max(best[i], best[i - 1])
    assert best[top] == n
    return best


def brute_force_c(D, i: int, edges=None) -> int:
    profile = brute_force_profile(D, edges)
    return profile[min(i, len(profile) - 1)]

