"""Integer partitions: parsing, dominance order, conjugation and the
almost-rectangular decomposition number."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


class PartitionError(ValueError):
    pass


class Dominance(enum.Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Partition:
    """A partition of ``n`` stored as a weakly decreasing tuple of parts.

    Use :func:`parse_partition` or :meth:`from_parts` to build one from
    unsorted data; the constructor only validates.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise PartitionError("empty partition")
        if any(p < 1 for p in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(parts[j] < parts[j + 1] for j in range(len(parts) - 1)):
            raise PartitionError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(sorted((int(p) for p in parts), reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, j):
        return self.parts[j]

    @cached_property
    def multiplicity(self) -> dict[int, int]:
        """Map part size ``i`` to its multiplicity ``n_i`` (only nonzero ones)."""
        m: dict[int, int] = {}
        for p in self.parts:
            m[p] = m.get(p, 0) + 1
        return m

    def mult(self, i: int) -> int:
        return self.multiplicity.get(i, 0)

    @cached_property
    def support(self) -> tuple[int, ...]:
        """Distinct part sizes, in decreasing order."""
        return tuple(sorted(self.multiplicity, reverse=True))

    @property
    def largest(self) -> int:
        return self.parts[0]

    @property
    def smallest(self) -> int:
        return self.parts[-1]

    def __str__(self) -> str:
        return format_partition(self)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)})"


_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


def parse_partition(text: str) -> Partition:
    """Parse ``"5,4,3^3,2^3,1^2"`` style text into a canonical partition."""
    if text is None or not str(text).strip():
        raise PartitionError("empty partition text")
    parts: list[int] = []
    for token in str(text).split(","):
        m = _TOKEN.match(token)
        if not m:
            raise PartitionError(f"malformed token {token!r} in {text!r}")
        value = int(m.group(1))
        count = int(m.group(2)) if m.group(2) is not None else 1
        if value < 1:
            raise PartitionError(f"part must be positive: {token!r}")
        if count < 1:
            raise PartitionError(f"exponent must be positive: {token!r}")
        parts.extend([value] * count)
    return Partition.from_parts(parts)


def format_partition(P: Partition | Iterable[int]) -> str:
    """Comma separated, with ``i^m`` for repeated parts."""
    parts = P.parts if isinstance(P, Partition) else tuple(P)
    out = []
    j = 0
    while j < len(parts):
        k = j
        while k < len(parts) and parts[k] == parts[j]:
            k += 1
        m = k - j
        out.append(str(parts[j]) if m == 1 else f"{parts[j]}^{m}")
        j = k
    return ",".join(out)


def _prefix_sums(parts: tuple[int, ...], length: int) -> list[int]:
    sums, total = [], 0
    for j in range(length):
        total += parts[j] if j < len(parts) else 0
        sums.append(total)
    return sums


def dominance_cmp(P: Partition, P2: Partition) -> Dominance:
    if P.n != P2.n:
        raise PartitionError(f"cannot compare partitions of {P.n} and {P2.n}")
    if P.parts == P2.parts:
        return Dominance.EQUAL
    length = max(len(P), len(P2))
    a, b = _prefix_sums(P.parts, length), _prefix_sums(P2.parts, length)
    if all(x >= y for x, y in zip(a, b)):
        return Dominance.GREATER
    if all(x <= y for x, y in zip(a, b)):
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def dominates(P: Partition, P2: Partition) -> bool:
    """True iff ``P >= P2`` in dominance order."""
    return dominance_cmp(P, P2) in (Dominance.GREATER, Dominance.EQUAL)


def conjugate(P: Partition) -> Partition:
    return Partition(tuple(sum(1 for p in P.parts if p > c) for c in range(P.largest)))


def is_almost_rectangular(P: Partition) -> bool:
    return P.largest - P.smallest <= 1


def consecutive_runs(levels: Iterable[int]) -> list[tuple[int, ...]]:
    """Maximal runs of consecutive integers, each run in increasing order."""
    runs: list[list[int]] = []
    for x in sorted(set(levels)):
        if runs and runs[-1][-1] == x - 1:
            runs[-1].append(x)
        else:
            runs.append([x])
    return [tuple(r) for r in runs]


def r_P(P: Partition) -> int:
    """Minimum number of almost rectangular subpartitions whose union is P.

    Each subpartition uses one level or two adjacent levels of the support,
    so a run of m consecutive levels needs ceil(m/2) of them.
    """
    return sum((len(run) + 1) // 2 for run in consecutive_runs(P.support))


def ob(P: Partition, a: int) -> int:
    """Number of vertices of the simple U-chain through levels a and a-1."""
    if a not in P.multiplicity:
        raise PartitionError(f"level {a} is not a part of {P}")
    hooks = sum(2 * m for c, m in P.multiplicity.items() if c > a)
    return a * P.mult(a) + (a - 1) * P.mult(a - 1) + hooks


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if n < 1:
        raise PartitionError("n must be positive")

    def gen(remaining: int, cap: int, prefix: list[int]):
        if remaining == 0:
            yield Partition(tuple(prefix))
            return
        for p in range(min(remaining, cap), 0, -1):
            prefix.append(p)
            yield from gen(remaining - p, p, prefix)
            prefix.pop()

    yield from gen(n, n, [])


def all_partitions(max_n: int) -> Iterator[Partition]:
    for n in range(1, max_n + 1):
        yield from partitions_of(n)
