"""Laurent monomials in Y_{r,k}, the monomial crystal, and the map Psi.

Edge constants are stored per residue and direction: ``c_plus[r]`` shifts the
level of the ``Y_{r+1}`` factor of ``A_{r,k}`` and ``c_minus[r]`` that of the
``Y_{r-1}`` factor.  This keeps ``A`` unambiguous when n = 2.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Optional

from .core import (
    Box,
    MultiPartition,
    addable_nodes,
    color_of,
    content,
    removable_nodes,
)
from .crystal import Bracket, CrystalGraph, cancel_brackets, e_op
from .slope import Mode, SlopeDatum, box_compare, Order, height, make_datum


class Monomial:
    """A Laurent monomial; ``exponents`` maps (residue, level) to a nonzero int."""

    __slots__ = ("n", "_exp", "_hash")

    def __init__(self, n: int, exponents: Mapping[tuple[int, int], int] | Iterable = ()):
        if n < 2:
            raise ValueError("n must be at least 2")
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[tuple[int, int], int] = {}
        for (r, k), e in items:
            key = (int(r) % n, int(k))
            acc[key] = acc.get(key, 0) + int(e)
        self.n = n
        self._exp = {key: e for key, e in sorted(acc.items()) if e}
        self._hash = hash((n, tuple(self._exp.items())))

    @classmethod
    def Y(cls, n: int, residue: int, level: int, exp: int = 1) -> Monomial:
        return cls(n, {(residue, level): exp})

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls(n)

    @property
    def exponents(self) -> dict[tuple[int, int], int]:
        return dict(self._exp)

    def exp(self, residue: int, level: int) -> int:
        return self._exp.get((residue % self.n, level), 0)

    def levels(self, residue: int) -> list[tuple[int, int]]:
        """(level, exponent) pairs for one residue, increasing level."""
        residue %= self.n
        return [(k, e) for (r, k), e in self._exp.items() if r == residue]

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("cannot multiply monomials with different n")
        merged = dict(self._exp)
        for key, e in other._exp.items():
            merged[key] = merged.get(key, 0) + e
        return Monomial(self.n, merged)

    def inverse(self) -> Monomial:
        return Monomial(self.n, {key: -e for key, e in self._exp.items()})

    def __pow__(self, power: int) -> Monomial:
        return Monomial(self.n, {key: e * power for key, e in self._exp.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.n == other.n and self._exp == other._exp

    def __hash__(self) -> int:
        return self._hash

    def is_one(self) -> bool:
        return not self._exp

    def weight(self) -> tuple[int, ...]:
        """Coefficient of each fundamental weight."""
        wt = [0] * self.n
        for (r, _), e in self._exp.items():
            wt[r] += e
        return tuple(wt)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "factors": [{"residue": r, "level": k, "exp": e} for (r, k), e in self._exp.items()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Monomial:
        try:
            return cls(
                int(data["n"]),
                [((f["residue"], f["level"]), f["exp"]) for f in data["factors"]],
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed monomial: {data!r}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def __repr__(self) -> str:
        if not self._exp:
            return "1"
        return " ".join(
            f"Y[{r},{k}]" + ("" if e == 1 else f"^{e}") for (r, k), e in self._exp.items()
        )


@dataclass(frozen=True)
class EdgeConstants:
    n: int
    c_plus: tuple[int, ...]
    c_minus: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.c_plus) != self.n or len(self.c_minus) != self.n:
            raise ValueError("need one c_plus and one c_minus per residue")
        sums = {self.c_plus[r] + self.c_minus[(r + 1) % self.n] for r in range(self.n)}
        if len(sums) != 1:
            raise ValueError(
                f"c_plus[r] + c_minus[r+1] must be constant over r, got {sorted(sums)}"
            )

    @classmethod
    def uniform(cls, n: int, c_plus: int, c_minus: int) -> EdgeConstants:
        return cls(n, (c_plus,) * n, (c_minus,) * n)

    @property
    def K(self) -> int:
        return self.c_plus[0] + self.c_minus[1 % self.n]


def constants_from_slope(xi: SlopeDatum, n: int) -> EdgeConstants:
    """c_plus = omega_bar, c_minus = omega on every residue (integral base only)."""
    if not xi.is_integral():
        raise ValueError(f"slope datum {xi} is not integral")
    omega, omega_bar = xi.base_values[:2]
    return EdgeConstants.uniform(n, int(omega_bar), int(omega))


def a_monomial(c: EdgeConstants, residue: int, k: int) -> Monomial:
    n = c.n
    r = residue % n
    return Monomial(n, [
        ((r, k), 1),
        ((r, k + c.K), 1),
        ((r + 1, k + c.c_plus[r]), -1),
        ((r - 1, k + c.c_minus[r]), -1),
    ])


class MonomialStats(NamedTuple):
    wt: tuple[int, ...]
    eps: int
    phi: int
    k_e: Optional[int]
    k_f: Optional[int]


def stats(M: Monomial, residue: int) -> MonomialStats:
    """eps, phi and the levels k_e, k_f at which e and f act.

    Partial sums are scanned over the support; the sentinels at -inf and +inf
    (sums wt and 0) make both eps and phi non-negative.  ``k_e`` is the
    largest level with ``-sum_{s >= k} y_s = eps``, which is the level of the
    ``Y^{-1}`` factor that e consumes.
    """
    levels = M.levels(residue)
    # suffix sums S(k) = sum_{s >= k} y_s, evaluated at each support level
    suffix = {}
    running = 0
    for k, e in reversed(levels):
        running += e
        suffix[k] = running
    eps = max([0] + [-s for s in suffix.values()])
    k_e = max((k for k, s in suffix.items() if -s == eps), default=None) if eps > 0 else None
    prefix = {}
    running = 0
    for k, e in levels:
        running += e
        prefix[k] = running
    phi = max([0] + list(prefix.values()))
    k_f = min((k for k, s in prefix.items() if s == phi), default=None) if phi > 0 else None
    return MonomialStats(M.weight(), eps, phi, k_e, k_f)


def f_direct(c: EdgeConstants, M: Monomial, residue: int) -> Optional[Monomial]:
    st = stats(M, residue)
    if st.phi == 0:
        return None
    return a_monomial(c, residue, st.k_f).inverse() * M


def e_direct(c: EdgeConstants, M: Monomial, residue: int) -> Optional[Monomial]:
    st = stats(M, residue)
    if st.eps == 0:
        return None
    return a_monomial(c, residue, st.k_e - c.K) * M


def monomial_brackets(M: Monomial, residue: int) -> list[tuple[Bracket, int]]:
    """One bracket per unit of exponent, in decreasing level."""
    out = []
    for k, e in reversed(M.levels(residue)):
        kind = Bracket.OPEN if e > 0 else Bracket.CLOSE
        out.extend([(kind, k)] * abs(e))
    return out


def monomial_bracket_str(M: Monomial, residue: int) -> str:
    return "".join(kind.value for kind, _ in monomial_brackets(M, residue))


def _uncanceled(M: Monomial, residue: int) -> list[tuple[Bracket, int]]:
    brackets = monomial_brackets(M, residue)
    mask = cancel_brackets([kind for kind, _ in brackets])
    return [br for br, dead in zip(brackets, mask) if not dead]


def f_bracket(c: EdgeConstants, M: Monomial, residue: int) -> Optional[Monomial]:
    opens = [k for kind, k in _uncanceled(M, residue) if kind is Bracket.OPEN]
    if not opens:
        return None
    return a_monomial(c, residue, opens[0]).inverse() * M


def e_bracket(c: EdgeConstants, M: Monomial, residue: int) -> Optional[Monomial]:
    closes = [k for kind, k in _uncanceled(M, residue) if kind is Bracket.CLOSE]
    if not closes:
        return None
    return a_monomial(c, residue, closes[-1] - c.K) * M


def _int_height(xi: SlopeDatum, b: Box) -> int:
    h = height(xi, b).base
    if h.denominator != 1:
        raise ValueError(f"height of {b} is not an integer under {xi}")
    return int(h)


def psi(xi: SlopeDatum, mp: MultiPartition) -> Monomial:
    """Addable nodes give Y at their height, removable ones Y^{-1} at height + K.

    Heights use the standard part of the datum, which must be integral.
    """
    if not xi.is_integral():
        raise ValueError(f"Psi needs an integral slope datum, got {xi}")
    K = int(xi.K.base)
    factors = [((color_of(mp, a), _int_height(xi, a)), 1) for a in addable_nodes(mp)]
    factors += [((color_of(mp, r), _int_height(xi, r) + K), -1) for r in removable_nodes(mp)]
    return Monomial(mp.n, factors)


def is_dominant(M: Monomial) -> bool:
    return all(e > 0 for e in M.exponents.values())


def is_aligned_dominant(M: Monomial, K: int) -> bool:
    if not is_dominant(M):
        return False
    levels = [k for _, k in M.exponents]
    return not levels or max(levels) - min(levels) < K


def expected_weight(mp: MultiPartition) -> tuple[int, ...]:
    """Lambda minus the sum of c_r alpha_r, written in fundamental weights.

    ``alpha_r = 2 Lambda_r - Lambda_{r+1} - Lambda_{r-1}``.
    """
    n = mp.n
    wt = [0] * n
    for p in mp.coloring:
        wt[p] += 1
    for r, c_r in enumerate(content(mp)):
        wt[r] -= 2 * c_r
        wt[(r + 1) % n] += c_r
        wt[(r - 1) % n] += c_r
    return tuple(wt)


@dataclass(frozen=True)
class PsiWitness:
    vertex: str
    residue: Optional[int]
    check: str
    detail: str

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "residue": self.residue, "check": self.check,
                "detail": self.detail}


def verify_psi_commutes(xi: SlopeDatum, c: EdgeConstants, g: CrystalGraph) -> Optional[PsiWitness]:
    """Check that Psi intertwines the operators on every vertex of ``g``.

    ``xi`` is the datum the graph was generated with (normally the ROW order on
    an integral aligned base).  Returns None when every check passes.
    """
    images = [psi(xi, v) for v in g.vertices]
    for s, v in enumerate(g.vertices):
        if images[s].weight() != expected_weight(v):
            return PsiWitness(v.key, None, "weight",
                              f"wt(Psi)={images[s].weight()} expected {expected_weight(v)}")
        for r in range(g.n):
            down = e_op(xi, v, r)
            want = None if down is None else psi(xi, down)
            got = e_direct(c, images[s], r)
            if want != got:
                return PsiWitness(v.key, r, "e", f"Psi(e v)={want!r} but e(Psi v)={got!r}")
            if g.is_frontier(s):
                continue
            d = g.f_target(s, r)
            want = None if d is None else images[d]
            got = f_direct(c, images[s], r)
            if want != got:
                return PsiWitness(v.key, r, "f", f"Psi(f v)={want!r} but f(Psi v)={got!r}")
    for s, r, d in g.edges:
        (b,) = set(g.vertices[d].boxes()) - set(g.vertices[s].boxes())
        step = a_monomial(c, color_of(g.vertices[s], b), _int_height(xi, b)).inverse()
        if images[d] != step * images[s]:
            return PsiWitness(g.vertices[s].key, r, "one-step",
                              f"adding {b} does not multiply Psi by A^-1")
    return None


def corner_order_consistent(xi: SlopeDatum, mp: MultiPartition) -> bool:
    """For same-color a addable, r=(k;i,j) removable: a below r iff a below (k;i+1,j+1)."""
    for residue in range(mp.n):
        for r in removable_nodes(mp, residue):
            corner = Box(r.k, r.i + 1, r.j + 1)
            for a in addable_nodes(mp, residue):
                below_r = box_compare(xi, a, r) is Order.LESS
                below_corner = box_compare(xi, a, corner) is Order.LESS
                if below_r != below_corner:
                    return False
    return True


@dataclass
class MonomialGraph:
    n: int
    vertices: list[Monomial]
    edges: list[tuple[int, int, int]]
    depth: dict[int, int]


def monomial_closure(c: EdgeConstants, M: Monomial, max_depth: int) -> MonomialGraph:
    """Breadth-first closure of M under the f operators, up to max_depth steps."""
    vertices = [M]
    index = {M: 0}
    depth = {0: 0}
    edges = []
    queue = deque([0])
    while queue:
        s = queue.popleft()
        if depth[s] >= max_depth:
            continue
        for r in range(c.n):
            w = f_direct(c, vertices[s], r)
            if w is None:
                continue
            d = index.get(w)
            if d is None:
                d = index[w] = len(vertices)
                vertices.append(w)
                depth[d] = depth[s] + 1
                queue.append(d)
            edges.append((s, r, d))
    return MonomialGraph(c.n, vertices, edges, depth)


def check_psi_isomorphism(xi: SlopeDatum, c: EdgeConstants, g: CrystalGraph) -> Optional[str]:
    """Psi is a bijection from ``g`` onto the f-closure of Psi(empty), edges included.

    Returns None on success, otherwise a description of the first failure.
    """
    closure = monomial_closure(c, psi(xi, g.root), g.max_boxes)
    images = [psi(xi, v) for v in g.vertices]
    if len(set(images)) != len(images):
        return "Psi is not injective on the generated vertices"
    if set(images) != set(closure.vertices):
        missing = set(closure.vertices) - set(images)
        extra = set(images) - set(closure.vertices)
        return f"vertex sets differ: {len(missing)} only in closure, {len(extra)} only in image"
    mapped = {(images[s], r, images[d]) for s, r, d in g.edges}
    closure_edges = {(closure.vertices[s], r, closure.vertices[d]) for s, r, d in closure.edges}
    if mapped != closure_edges:
        return "edge sets differ"
    return None


def datum_for_dominant(
    M: Monomial, omega: int, omega_bar: int, mode: Mode | str = Mode.ROW
) -> tuple[tuple[int, ...], SlopeDatum, int]:
    """An aligned integral datum and coloring whose Psi(empty) is M shifted in level.

    Each factor ``Y_{r,k}^m`` becomes m components colored r with
    ``xi = k - omega - omega_bar + shift``; ``shift`` keeps every xi positive.
    Returns (coloring, datum, shift); Psi(empty) equals M with levels + shift.
    """
    K = omega + omega_bar
    if not is_aligned_dominant(M, K):
        raise ValueError(f"{M!r} is not an aligned dominant monomial for K={K}")
    if M.is_one():
        raise ValueError("the trivial monomial has no components")
    lowest = min(k for _, k in M.exponents)
    shift = max(0, K + 1 - lowest)
    coloring, xis = [], []
    for (r, k), e in M.exponents.items():
        coloring += [r] * e
        xis += [k - K + shift] * e
    return tuple(coloring), make_datum([omega, omega_bar, *xis], mode), shift


def shift_levels(M: Monomial, shift: int) -> Monomial:
    return Monomial(M.n, {(r, k + shift): e for (r, k), e in M.exponents.items()})


__all__ = [
    "Monomial", "EdgeConstants", "constants_from_slope", "a_monomial", "stats",
    "MonomialStats", "f_direct", "e_direct", "f_bracket", "e_bracket",
    "monomial_brackets", "monomial_bracket_str", "psi", "is_dominant",
    "is_aligned_dominant", "expected_weight", "verify_psi_commutes", "PsiWitness",
    "corner_order_consistent", "monomial_closure", "MonomialGraph",
    "check_psi_isomorphism", "datum_for_dominant", "shift_levels",
]
