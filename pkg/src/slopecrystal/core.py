"""Partitions, colored multi-partitions, and addable/removable nodes.

Partitions are plain tuples of positive, weakly decreasing integers.  Boxes
are addressed as ``(k; i, j)`` with 1-based component, row and column.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

Partition = tuple[int, ...]


class Box(NamedTuple):
    k: int
    i: int
    j: int

    def __str__(self) -> str:
        return f"({self.k};{self.i},{self.j})"


def check_partition(parts: Sequence[int]) -> Partition:
    """Return ``parts`` as a canonical partition tuple, or raise ValueError."""
    parts = tuple(int(p) for p in parts)
    for a, b in zip(parts, parts[1:]):
        if b > a:
            raise ValueError(f"parts not weakly decreasing: {parts}")
    if parts and parts[-1] <= 0:
        raise ValueError(f"parts must be positive (no trailing zeros): {parts}")
    return parts


def part(lam: Partition, i: int) -> int:
    """The i-th part (1-based), zero past the end."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def dual(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for r in lam if r >= j) for j in range(1, lam[0] + 1))


def dual_part(lam: Partition, j: int) -> int:
    """lam'_j without building the whole conjugate."""
    count = 0
    for r in lam:
        if r < j:
            break
        count += 1
    return count


def arm(lam: Partition, i: int, j: int) -> int:
    # the box need not lie in lam; negative values are meaningful
    return part(lam, i) - j


def leg(lam: Partition, i: int, j: int) -> int:
    return dual_part(lam, j) - i


def hook(lam: Partition, i: int, j: int) -> int:
    return arm(lam, i, j) + leg(lam, i, j) + 1


def partition_boxes(lam: Partition) -> Iterator[tuple[int, int]]:
    for i, r in enumerate(lam, start=1):
        for j in range(1, r + 1):
            yield i, j


def addable_cells(lam: Partition) -> list[tuple[int, int]]:
    """Cells (i, j) whose addition keeps lam a partition, top row first."""
    cells = []
    padded = list(lam) + [0]
    for idx, r in enumerate(padded):
        if idx == 0 or padded[idx - 1] > r:
            cells.append((idx + 1, r + 1))
    return cells


def removable_cells(lam: Partition) -> list[tuple[int, int]]:
    return [
        (idx + 1, r)
        for idx, r in enumerate(lam)
        if idx == len(lam) - 1 or r > lam[idx + 1]
    ]


def partitions_of(m: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of m in reverse lexicographic order."""
    if m == 0:
        yield ()
        return
    top = m if max_part is None else min(m, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of(m - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class MultiPartition:
    """An l-tuple of partitions with a coloring ``p: {1..l} -> Z/n``.

    ``coloring[k-1]`` is p(k), stored reduced to ``0..n-1``.
    """

    n: int
    coloring: tuple[int, ...]
    partitions: tuple[Partition, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"modulus n must be at least 2, got {self.n}")
        coloring = tuple(int(c) % self.n for c in self.coloring)
        partitions = tuple(check_partition(p) for p in self.partitions)
        if not coloring:
            raise ValueError("need at least one component")
        if len(coloring) != len(partitions):
            raise ValueError(
                f"coloring has {len(coloring)} entries but there are "
                f"{len(partitions)} partitions"
            )
        object.__setattr__(self, "coloring", coloring)
        object.__setattr__(self, "partitions", partitions)

    @classmethod
    def empty(cls, n: int, coloring: Sequence[int]) -> MultiPartition:
        return cls(n, tuple(coloring), ((),) * len(coloring))

    @property
    def ell(self) -> int:
        return len(self.coloring)

    @property
    def size(self) -> int:
        return sum(sum(p) for p in self.partitions)

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, k: int) -> Partition:
        """Component k, 1-based."""
        return self.partitions[k - 1]

    def __contains__(self, b: object) -> bool:
        if not isinstance(b, tuple) or len(b) != 3:
            return False
        k, i, j = b
        return 1 <= k <= self.ell and i >= 1 and 1 <= j <= part(self[k], i)

    def boxes(self) -> Iterator[Box]:
        for k, lam in enumerate(self.partitions, start=1):
            for i, j in partition_boxes(lam):
                yield Box(k, i, j)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "coloring": list(self.coloring),
            "partitions": [list(p) for p in self.partitions],
        }

    @classmethod
    def from_dict(cls, data: dict) -> MultiPartition:
        try:
            return cls(
                int(data["n"]),
                tuple(data["coloring"]),
                tuple(tuple(p) for p in data["partitions"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed multi-partition: {data!r}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> MultiPartition:
        return cls.from_dict(json.loads(text))

    @property
    def key(self) -> str:
        """Canonical JSON; used as the vertex key everywhere."""
        return self.to_json()

    def shape_str(self) -> str:
        inner = ",".join("(" + ",".join(map(str, p)) + ")" for p in self.partitions)
        return f"({inner})"

    def __str__(self) -> str:
        return self.shape_str()


def color_of(mp: MultiPartition, b: Box) -> int:
    k, i, j = b
    return (mp.coloring[k - 1] - i + j) % mp.n


def content(mp: MultiPartition) -> tuple[int, ...]:
    counts = [0] * mp.n
    for b in mp.boxes():
        counts[color_of(mp, b)] += 1
    return tuple(counts)


def addable_nodes(mp: MultiPartition, residue: int | None = None) -> list[Box]:
    """Addable nodes, optionally restricted to one color."""
    out = []
    for k, lam in enumerate(mp.partitions, start=1):
        for i, j in addable_cells(lam):
            b = Box(k, i, j)
            if residue is None or color_of(mp, b) == residue % mp.n:
                out.append(b)
    return out


def removable_nodes(mp: MultiPartition, residue: int | None = None) -> list[Box]:
    out = []
    for k, lam in enumerate(mp.partitions, start=1):
        for i, j in removable_cells(lam):
            b = Box(k, i, j)
            if residue is None or color_of(mp, b) == residue % mp.n:
                out.append(b)
    return out


def _replace(mp: MultiPartition, k: int, lam: list[int]) -> MultiPartition:
    while lam and lam[-1] == 0:
        lam.pop()
    parts = list(mp.partitions)
    parts[k - 1] = tuple(lam)
    return MultiPartition(mp.n, mp.coloring, tuple(parts))


def add_box(mp: MultiPartition, b: Box) -> MultiPartition:
    k, i, j = b
    if not 1 <= k <= mp.ell or (i, j) not in addable_cells(mp[k]):
        raise ValueError(f"box {Box(*b)} is not addable to {mp}")
    lam = list(mp[k])
    if i > len(lam):
        lam.append(1)
    else:
        lam[i - 1] += 1
    return _replace(mp, k, lam)


def remove_box(mp: MultiPartition, b: Box) -> MultiPartition:
    k, i, j = b
    if not 1 <= k <= mp.ell or (i, j) not in removable_cells(mp[k]):
        raise ValueError(f"box {Box(*b)} is not removable from {mp}")
    lam = list(mp[k])
    lam[i - 1] -= 1
    return _replace(mp, k, lam)


def multipartitions_of(n: int, coloring: Sequence[int], m: int) -> Iterator[MultiPartition]:
    """Every multi-partition with exactly m boxes and the given coloring."""
    ell = len(coloring)

    def compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, slots - 1):
                yield (first,) + rest

    for sizes in compositions(m, ell):
        for parts in itertools.product(*(list(partitions_of(s)) for s in sizes)):
            yield MultiPartition(n, tuple(coloring), parts)


def multipartitions_up_to(n: int, coloring: Sequence[int], max_boxes: int) -> Iterator[MultiPartition]:
    for m in range(max_boxes + 1):
        yield from multipartitions_of(n, coloring, m)
