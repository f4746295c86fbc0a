"""Simple and multi U-chains of D_P, the partition lambda_U and the
Oblak peeling recursion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .partitions import Partition, PartitionError, ob, r_P
from .poset import Vertex, basis_key, build_diagram, leq, tau


class UChainError(ValueError):
    pass


@dataclass(frozen=True)
class UChainSpec:
    """Strictly decreasing levels ``(a_1, ..., a_s)`` with gaps of at least two."""

    levels: tuple[int, ...]

    def __post_init__(self):
        levels = tuple(int(a) for a in self.levels)
        if not levels:
            raise UChainError("empty U-chain spec")
        for a, b in zip(levels, levels[1:]):
            if a < b + 2:
                raise UChainError(f"spec levels must decrease by at least 2: {levels}")
        object.__setattr__(self, "levels", levels)

    @property
    def s(self) -> int:
        return len(self.levels)

    def level_set(self) -> frozenset[int]:
        """The levels a_j and a_j - 1 (some may be absent from the partition)."""
        return frozenset(x for a in self.levels for x in (a, a - 1))

    def base_level(self, component: int) -> int:
        """Level of the almost rectangular part of component ``component``
        (1 = outermost, whose base is the smallest spec level)."""
        return self.levels[self.s - component]

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.levels)


def as_spec(spec) -> UChainSpec:
    if isinstance(spec, UChainSpec):
        return spec
    if isinstance(spec, int):
        return UChainSpec((spec,))
    if isinstance(spec, str):
        try:
            return UChainSpec(tuple(int(x) for x in spec.split(",")))
        except ValueError as exc:
            raise UChainError(f"malformed spec {spec!r}") from exc
    return UChainSpec(tuple(spec))


def validate_spec(P: Partition, spec) -> UChainSpec:
    spec = as_spec(spec)
    for a in spec.levels:
        if a not in P.multiplicity:
            raise UChainError(f"spec level {a} is not a part of {P}")
    return spec


def parse_spec(text: str) -> UChainSpec:
    return as_spec(text)


@dataclass(frozen=True)
class SUChain:
    partition: Partition
    spec: UChainSpec
    components: tuple[tuple[Vertex, ...], ...]

    @cached_property
    def vertex_set(self) -> frozenset[Vertex]:
        return frozenset(v for c in self.components for v in c)

    @property
    def length(self) -> int:
        return sum(len(c) for c in self.components)

    @cached_property
    def is_saturated(self) -> bool:
        """True when every component is a directed path of the augmented diagram."""
        D = build_diagram(self.partition, True)
        return all((a, b) in D.edge_map for c in self.components for a, b in zip(c, c[1:]))

    def column_order(self) -> list[Vertex]:
        """Vertices ordered by component, then position along the component."""
        return [v for c in self.components for v in c]

    def to_json(self) -> dict:
        return {
            "spec": list(self.spec.levels),
            "length": self.length,
            "components": [[list(v) for v in c] for c in self.components],
        }


def spec_vertex_set(P: Partition, spec) -> frozenset[Vertex]:
    """Vertex set of the s-U-chain read directly off the spec: full levels of
    the spec, plus left and right hooks on the remaining higher levels."""
    spec = validate_spec(P, spec)
    lv = spec.level_set()
    a_s = spec.levels[-1]
    out = set()
    for ell, m in P.multiplicity.items():
        if ell in lv:
            out.update(Vertex(u, ell, k) for u in range(1, ell + 1) for k in range(1, m + 1))
        elif ell > a_s:
            c = sum(1 for a in spec.levels if a < ell)
            for k in range(1, m + 1):
                for u in range(1, ell + 1):
                    if u <= c or u >= ell + 1 - c:
                        out.add(Vertex(u, ell, k))
    return frozenset(out)


def component_vertex_set(P: Partition, spec: UChainSpec, component: int) -> set[Vertex]:
    """Vertices of component ``component`` (1-based from the outside).

    Component j keeps what the j - 1 outer components leave: positions
    j .. ell+1-j on its own two levels, and the two endpoints j and
    ell+1-j of every row on the higher levels.
    """
    b = spec.base_level(component)
    j = component
    out = set()
    for ell, m in P.multiplicity.items():
        if ell in (b, b - 1):
            out.update(Vertex(u, ell, k) for u in range(j, ell + 2 - j) for k in range(1, m + 1))
        elif ell > b and j <= ell + 1 - j:
            for k in range(1, m + 1):
                out.add(Vertex(j, ell, k))
                out.add(Vertex(ell + 1 - j, ell, k))
    return out


def _order_as_chain(P: Partition, vertices: Iterable[Vertex]) -> tuple[Vertex, ...]:
    D = build_diagram(P, True)
    pos = {v: j for j, v in enumerate(D.topological_order)}
    ordered = tuple(sorted(vertices, key=lambda v: pos[v]))
    for a, b in zip(ordered, ordered[1:]):
        if not leq(D, a, b):
            raise UChainError(f"component is not a chain of D_P: {a} and {b} incomparable")
    return ordered


@lru_cache(maxsize=65536)
def _s_uchain(P: Partition, spec: UChainSpec) -> SUChain:
    comps = []
    seen: set[Vertex] = set()
    for j in range(1, spec.s + 1):
        vs = component_vertex_set(P, spec, j)
        if seen & vs:
            raise UChainError(f"components of U_{spec} overlap")
        seen |= vs
        comps.append(_order_as_chain(P, vs))
    return SUChain(P, spec, tuple(comps))


def s_uchain(P: Partition, spec) -> SUChain:
    return _s_uchain(P, validate_spec(P, spec))


def simple_uchain(P: Partition, a: int) -> SUChain:
    if a not in P.multiplicity:
        raise PartitionError(f"level {a} is not a part of {P}")
    return s_uchain(P, (a,))


def uchain_length(P: Partition, spec) -> int:
    return s_uchain(P, spec).length


def uchain_length_formula(P: Partition, spec) -> int:
    """Closed form for the number of vertices of U_spec."""
    spec = validate_spec(P, spec)
    lv = spec.level_set()
    total = sum(ell * m for ell, m in P.multiplicity.items() if ell in lv)
    for ell, m in P.multiplicity.items():
        if ell not in lv and ell > spec.levels[-1]:
            c = sum(1 for a in spec.levels if a < ell)
            total += m * min(ell, 2 * c)
    return total


def valid_specs(P: Partition, s: int | None = None) -> Iterator[UChainSpec]:
    """All specs for P (of length ``s`` if given), decreasing lexicographically."""
    levels = P.support

    def gen(start: int, prefix: list[int]):
        if prefix and (s is None or len(prefix) == s):
            yield UChainSpec(tuple(prefix))
        if s is not None and len(prefix) == s:
            return
        for j in range(start, len(levels)):
            a = levels[j]
            if prefix and prefix[-1] < a + 2:
                continue
            prefix.append(a)
            yield from gen(j + 1, prefix)
            prefix.pop()

    yield from gen(0, [])


@lru_cache(maxsize=8192)
def u_sequence(P: Partition) -> tuple[int, ...]:
    """``(u_0, u_1, ..., u_r)``: largest s-U-chain sizes for s up to r_P."""
    r = r_P(P)
    best = [0] * (r + 1)
    found = [False] * (r + 1)
    for spec in valid_specs(P):
        if spec.s > r:
            raise UChainError(f"spec {spec} longer than r_P = {r} for {P}")
        size = uchain_length(P, spec)
        if size > best[spec.s]:
            best[spec.s] = size
        found[spec.s] = True
    if not all(found[1:]):
        missing = [s for s in range(1, r + 1) if not found[s]]
        raise UChainError(f"no s-U-chain for s in {missing} (P = {P})")
    return tuple(best)


def lambda_U(P: Partition) -> Partition:
    u = u_sequence(P)
    parts = tuple(u[s] - u[s - 1] for s in range(1, len(u)))
    try:
        return Partition(parts)
    except PartitionError as exc:
        raise UChainError(f"first differences {parts} of {u} are not a partition") from exc


def oblak_recursion(P: Partition, tie_break: str = "largest") -> Partition:
    """Repeatedly peel a longest simple U-chain and record its length."""
    if tie_break not in ("largest", "smallest"):
        raise ValueError("tie_break must be 'largest' or 'smallest'")
    lengths = []
    parts = list(P.parts)
    while parts:
        Q = Partition.from_parts(parts)
        scores = [(ob(Q, a), a if tie_break == "largest" else -a) for a in Q.support]
        length, key = max(scores)
        a = key if tie_break == "largest" else -key
        lengths.append(length)
        parts = [p - 2 if p > a else p for p in parts if p not in (a, a - 1)]
        parts = [p for p in parts if p > 0]
    return Partition.from_parts(lengths)


def is_maximal(P: Partition, spec) -> bool:
    spec = validate_spec(P, spec)
    mine = s_uchain(P, spec).vertex_set
    for other in valid_specs(P, spec.s):
        if other != spec and mine < s_uchain(P, other).vertex_set:
            return False
    return True


def maximal_specs(P: Partition, s: int | None = None) -> list[UChainSpec]:
    found = []
    for spec in itertools.chain.from_iterable(
            valid_specs(P, t) for t in ([s] if s is not None else range(1, r_P(P) + 1))):
        if is_maximal(P, spec):
            found.append(spec)
    return found


def singleton_levels(P: Partition, spec) -> frozenset[int]:
    spec = validate_spec(P, spec)
    return frozenset(a for a in spec.levels if (a - 1) not in P.multiplicity)


def is_tau_symmetric(P: Partition, vertices: Iterable[Vertex]) -> bool:
    vs = set(vertices)
    return {tau(P, v) for v in vs} == vs


def sorted_vertices(vertices: Iterable[Vertex]) -> list[Vertex]:
    return sorted(vertices, key=basis_key)
