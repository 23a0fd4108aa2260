"""Bracket-string crystal operators on multi-partitions and crystal graphs."""
from __future__ import annotations

import enum
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import (
    Box,
    MultiPartition,
    add_box,
    addable_nodes,
    content,
    remove_box,
    removable_nodes,
)
from .slope import SlopeDatum, is_aligned, sort_by_height


class Bracket(enum.Enum):
    OPEN = "("
    CLOSE = ")"


@dataclass(frozen=True)
class BracketString:
    """Brackets for one residue in decreasing height, plus the cancellation mask."""

    entries: tuple[tuple[Bracket, Box], ...]
    canceled: tuple[bool, ...]

    def __str__(self) -> str:
        return "".join(br.value for br, _ in self.entries)

    def reduced(self) -> str:
        """Only the uncanceled brackets, which always read ``)))...(((``."""
        return "".join(br.value for (br, _), c in zip(self.entries, self.canceled) if not c)

    def uncanceled(self, kind: Bracket) -> list[Box]:
        return [b for (br, b), c in zip(self.entries, self.canceled) if br is kind and not c]

    @property
    def phi(self) -> int:
        return len(self.uncanceled(Bracket.OPEN))

    @property
    def eps(self) -> int:
        return len(self.uncanceled(Bracket.CLOSE))


def cancel_brackets(kinds: Sequence[Bracket]) -> tuple[bool, ...]:
    """Cancellation mask from repeatedly deleting adjacent ``()`` pairs."""
    canceled = [False] * len(kinds)
    open_stack: list[int] = []
    for idx, kind in enumerate(kinds):
        if kind is Bracket.OPEN:
            open_stack.append(idx)
        elif open_stack:
            canceled[open_stack.pop()] = True
            canceled[idx] = True
    return tuple(canceled)


def bracket_string(xi: SlopeDatum, mp: MultiPartition, residue: int) -> BracketString:
    kind = {b: Bracket.OPEN for b in addable_nodes(mp, residue)}
    kind.update({b: Bracket.CLOSE for b in removable_nodes(mp, residue)})
    ordered = sort_by_height(xi, kind, descending=True)
    entries = tuple((kind[b], b) for b in ordered)
    return BracketString(entries, cancel_brackets([br for br, _ in entries]))


def f_op(xi: SlopeDatum, mp: MultiPartition, residue: int) -> Optional[MultiPartition]:
    """Add the box of the leftmost uncanceled ``(``; None when there is none."""
    opens = bracket_string(xi, mp, residue).uncanceled(Bracket.OPEN)
    return add_box(mp, opens[0]) if opens else None


def e_op(xi: SlopeDatum, mp: MultiPartition, residue: int) -> Optional[MultiPartition]:
    """Remove the box of the rightmost uncanceled ``)``; None when there is none."""
    closes = bracket_string(xi, mp, residue).uncanceled(Bracket.CLOSE)
    return remove_box(mp, closes[-1]) if closes else None


def weight_content(mp: MultiPartition) -> tuple[int, ...]:
    return content(mp)


def parse_word(word: str | Iterable[str]) -> list[tuple[str, int]]:
    """Parse whitespace-separated tokens like ``f0 e2`` into (op, residue)."""
    tokens = word.split() if isinstance(word, str) else list(word)
    out = []
    for tok in tokens:
        if len(tok) < 2 or tok[0] not in "ef" or not tok[1:].isdigit():
            raise ValueError(f"bad operator token {tok!r}; expected f<r> or e<r>")
        out.append((tok[0], int(tok[1:])))
    return out


def apply_word(xi: SlopeDatum, mp: MultiPartition, word) -> Optional[MultiPartition]:
    """Apply operators left to right (the first token acts first)."""
    current: Optional[MultiPartition] = mp
    for op, r in parse_word(word):
        if r >= mp.n:
            raise ValueError(f"residue {r} out of range for n={mp.n}")
        if current is None:
            return None
        current = (f_op if op == "f" else e_op)(xi, current, r)
    return current


class NonAlignedError(ValueError):
    """Generation was asked for a non-aligned datum without an override."""


@dataclass
class CrystalGraph:
    n: int
    coloring: tuple[int, ...]
    max_boxes: int
    vertices: list[MultiPartition] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    datum: Optional[dict] = None

    def __post_init__(self) -> None:
        self._reindex()

    def _reindex(self) -> None:
        self.index = {v.key: t for t, v in enumerate(self.vertices)}
        self.out = {(s, r): d for s, r, d in self.edges}

    @property
    def root(self) -> MultiPartition:
        return self.vertices[0]

    def f_target(self, source: int, residue: int) -> Optional[int]:
        return self.out.get((source, residue))

    def is_frontier(self, idx: int) -> bool:
        return self.vertices[idx].size >= self.max_boxes

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_keys(self) -> set[str]:
        return set(self.index)

    def to_dict(self) -> dict:
        data = {
            "n": self.n,
            "coloring": list(self.coloring),
            "max_boxes": self.max_boxes,
            "vertices": [v.to_dict() for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }
        if self.datum is not None:
            data["slope"] = self.datum
        return data

    @classmethod
    def from_dict(cls, data: dict) -> CrystalGraph:
        return cls(
            n=int(data["n"]),
            coloring=tuple(data["coloring"]),
            max_boxes=int(data["max_boxes"]),
            vertices=[MultiPartition.from_dict(v) for v in data["vertices"]],
            edges=[tuple(e) for e in data["edges"]],
            datum=data.get("slope"),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrystalGraph):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def generate(
    xi: SlopeDatum,
    n: int,
    coloring: Sequence[int],
    max_boxes: int,
    allow_nonaligned: bool = False,
) -> CrystalGraph:
    """Breadth-first closure of the empty multi-partition under the f operators.

    Vertices with ``max_boxes`` boxes are left unexpanded.
    """
    if max_boxes < 0:
        raise ValueError("max_boxes must be non-negative")
    if not xi.mode.perturbed:
        raise ValueError("generation needs a perturbed datum (generic, row or row_prime)")
    if len(coloring) != xi.ell:
        raise ValueError(f"coloring has {len(coloring)} entries, datum has {xi.ell} components")
    if not allow_nonaligned and not is_aligned(xi):
        raise NonAlignedError(
            f"slope datum {xi} is not aligned (need |xi_k - xi_k'| < omega + omega_bar); "
            "the regular-set characterisation only holds for aligned data"
        )
    root = MultiPartition.empty(n, coloring)
    g = CrystalGraph(n, root.coloring, max_boxes, [root], [], xi.to_dict())
    index = {root.key: 0}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        v = g.vertices[s]
        if v.size >= max_boxes:
            continue
        for r in range(n):
            w = f_op(xi, v, r)
            if w is None:
                continue
            d = index.get(w.key)
            if d is None:
                d = index[w.key] = len(g.vertices)
                g.vertices.append(w)
                queue.append(d)
            g.edges.append((s, r, d))
    g._reindex()
    return g


@dataclass(frozen=True)
class MismatchWitness:
    """Operator word from the root (residues of f) where two graphs disagree."""

    word: tuple[int, ...]
    residue: int
    reason: str

    def word_str(self) -> str:
        return " ".join(f"f{r}" for r in self.word + (self.residue,))

    def to_dict(self) -> dict:
        return {"word": self.word_str(), "residue": self.residue, "reason": self.reason}


def parallel_iso_check(g1: CrystalGraph, g2: CrystalGraph) -> Optional[MismatchWitness]:
    """Walk both graphs from their roots in lockstep; None means isomorphic.

    Frontier vertices (at the box bound) are exempt from the out-edge check.
    """
    if (g1.n, tuple(g1.coloring), g1.max_boxes) != (g2.n, tuple(g2.coloring), g2.max_boxes):
        raise ValueError("graphs were generated with different (n, coloring, max_boxes)")
    match = {0: 0}
    back = {0: 0}
    words = {0: ()}
    queue = deque([0])
    while queue:
        s1 = queue.popleft()
        s2 = match[s1]
        if g1.is_frontier(s1) or g2.is_frontier(s2):
            continue
        for r in range(g1.n):
            d1, d2 = g1.f_target(s1, r), g2.f_target(s2, r)
            if (d1 is None) != (d2 is None):
                side = "first" if d1 is not None else "second"
                return MismatchWitness(words[s1], r, f"edge present only in the {side} graph")
            if d1 is None:
                continue
            if d1 in match or d2 in back:
                if match.get(d1) != d2 or back.get(d2) != d1:
                    return MismatchWitness(words[s1], r, "edge targets are matched inconsistently")
                continue
            match[d1], back[d2] = d2, d1
            words[d1] = words[s1] + (r,)
            queue.append(d1)
    if len(match) != len(g1) or len(back) != len(g2):
        return MismatchWitness((), 0, "unreachable vertices present")
    return None


def weight_multiplicities(g: CrystalGraph) -> dict[tuple[int, ...], int]:
    return dict(Counter(content(v) for v in g.vertices))


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(g: CrystalGraph) -> str:
    lines = ["digraph crystal {", "  node [shape=box];"]
    for t, v in enumerate(g.vertices):
        lines.append(f'  v{t} [label="{_dot_escape(v.key)}"];')
    for s, r, d in g.edges:
        lines.append(f'  v{s} -> v{d} [label="{r}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: CrystalGraph) -> str:
    return json.dumps(g.to_dict(), sort_keys=True, indent=1) + "\n"


def graph_from_json(text: str) -> CrystalGraph:
    return CrystalGraph.from_dict(json.loads(text))


def export_text(g: CrystalGraph) -> str:
    lines = [f"# n={g.n} coloring={list(g.coloring)} max_boxes={g.max_boxes}"]
    lines += [f"v{t} {v.shape_str()} content={list(content(v))}" for t, v in enumerate(g.vertices)]
    lines += [f"v{s} -f{r}-> v{d}" for s, r, d in g.edges]
    return "\n".join(lines) + "\n"
