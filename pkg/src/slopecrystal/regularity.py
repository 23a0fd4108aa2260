"""Regularity via illegal triples, and the tangent-weight oracle.

Two independent routes decide whether a multi-partition is a crystal vertex:
the illegal-triple test on slope inequalities, and counting negative torus
eigenvalues on the tangent space at the fixed point.  Component indices are
named ``k`` (the box's component) and ``k2`` (the partner component).
"""
from __future__ import annotations

from typing import NamedTuple

from .core import Box, MultiPartition, addable_nodes, arm, color_of, leg, removable_nodes
from .slope import LexScalar, SlopeDatum, height


class HookTriple(NamedTuple):
    b: Box
    k: int
    k2: int

    def __str__(self) -> str:
        return f"({self.b},{self.k},{self.k2})"


class TangentWeightPair(NamedTuple):
    triple: HookTriple
    e_minus: LexScalar
    e_plus: LexScalar


class ZeroEigenvalueError(ArithmeticError):
    """A tangent weight vanished, so the datum is not general for this point."""


class BoxCounts(NamedTuple):
    dim_ge: int
    dim_gt: int
    removable_ge: int
    addable_ge: int


def _arm_leg(mp: MultiPartition, b: Box, k2: int) -> tuple[int, int]:
    _, i, j = b
    return arm(mp[b.k], i, j), leg(mp[k2], i, j)


def hook_triples(mp: MultiPartition) -> list[HookTriple]:
    """Triples (b, k, k2), b in component k, meeting the mod-n hook condition.

    Their number is half the dimension of the quiver variety at this point.
    """
    out = []
    for b in mp.boxes():
        for k2 in range(1, mp.ell + 1):
            a, l = _arm_leg(mp, b, k2)
            if (mp.coloring[b.k - 1] - mp.coloring[k2 - 1] + a + l + 1) % mp.n == 0:
                out.append(HookTriple(b, b.k, k2))
    return out


def _middle(xi: SlopeDatum, mp: MultiPartition, t: HookTriple) -> LexScalar:
    a, l = _arm_leg(mp, t.b, t.k2)
    return xi.xi_k(t.k2) - xi.xi_k(t.k) + xi.omega * l - xi.omega_bar * a


def tangent_character(xi: SlopeDatum, mp: MultiPartition) -> list[TangentWeightPair]:
    pairs = []
    for t in hook_triples(mp):
        a, l = _arm_leg(mp, t.b, t.k2)
        e_minus = -xi.xi_k(t.k2) + xi.xi_k(t.k) - xi.omega * l + xi.omega_bar * (a + 1)
        e_plus = xi.xi_k(t.k2) - xi.xi_k(t.k) + xi.omega * (l + 1) - xi.omega_bar * a
        pairs.append(TangentWeightPair(t, e_minus, e_plus))
    return pairs


def attracting_dimension(xi: SlopeDatum, mp: MultiPartition) -> int:
    """Number of strictly negative tangent eigenvalues."""
    count = 0
    for pair in tangent_character(xi, mp):
        for e in (pair.e_minus, pair.e_plus):
            s = e.sign()
            if s == 0:
                raise ZeroEigenvalueError(
                    f"zero eigenvalue at triple {pair.triple} of {mp} under {xi}"
                )
            count += s < 0
    return count


def illegal_triples(xi: SlopeDatum, mp: MultiPartition) -> list[HookTriple]:
    lower, upper = -xi.omega, xi.omega_bar
    return [t for t in hook_triples(mp) if lower < _middle(xi, mp, t) < upper]


def is_regular(xi: SlopeDatum, mp: MultiPartition) -> bool:
    return not illegal_triples(xi, mp)


def graded_box_counts(xi: SlopeDatum, mp: MultiPartition, residue: int, threshold) -> BoxCounts:
    """Counts of residue-colored boxes / removable / addable nodes at height >= threshold.

    ``dim_gt`` uses a strict inequality; the others are inclusive.
    """
    residue %= mp.n
    threshold = LexScalar.coerce(threshold)
    heights = [height(xi, b) for b in mp.boxes() if color_of(mp, b) == residue]
    return BoxCounts(
        dim_ge=sum(h >= threshold for h in heights),
        dim_gt=sum(h > threshold for h in heights),
        removable_ge=sum(height(xi, b) >= threshold for b in removable_nodes(mp, residue)),
        addable_ge=sum(height(xi, b) >= threshold for b in addable_nodes(mp, residue)),
    )


def height_count_identity(xi: SlopeDatum, mp: MultiPartition, residue: int, threshold) -> bool:
    """Check the graded box-count identity at one threshold H > max xi_k.

    A (residue+1)-box sits at offset omega_bar from its residue neighbour and a
    (residue-1)-box at offset omega, so those are the shifts used below.
    """
    threshold = LexScalar.coerce(threshold)
    if not threshold > max(xi.xi):
        raise ValueError("threshold must exceed every xi_k")

    def dim(r: int, h: LexScalar) -> int:
        return graded_box_counts(xi, mp, r, h).dim_ge

    K = xi.K
    lhs = (
        dim(residue, threshold)
        + dim(residue, threshold + K)
        - dim(residue + 1, threshold + xi.omega_bar)
        - dim(residue - 1, threshold + xi.omega)
    )
    rhs = (
        graded_box_counts(xi, mp, residue, threshold).removable_ge
        - graded_box_counts(xi, mp, residue, threshold + K).addable_ge
    )
    return lhs == rhs


def gap_pairs(xi: SlopeDatum, mp: MultiPartition, residue: int) -> list[tuple[Box, Box]]:
    """Removable/addable pairs (r, a) with h(r) < h(a) < h(r) + omega + omega_bar.

    Any such pair forces an illegal triple.
    """
    K = xi.K
    out = []
    addable = [(a, height(xi, a)) for a in addable_nodes(mp, residue)]
    for r in removable_nodes(mp, residue):
        hr = height(xi, r)
        for a, ha in addable:
            if hr < ha < hr + K:
                out.append((r, a))
    return out
