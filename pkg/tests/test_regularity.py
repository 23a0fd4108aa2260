import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slopecrystal.core import Box, MultiPartition, color_of, multipartitions_up_to
from slopecrystal.core import addable_nodes, removable_nodes
from slopecrystal.regularity import (
    HookTriple,
    ZeroEigenvalueError,
    attracting_dimension,
    gap_pairs,
    graded_box_counts,
    height_count_identity,
    hook_triples,
    illegal_triples,
    is_regular,
    tangent_character,
)
from slopecrystal.slope import LexScalar, Mode, height, make_datum, make_generic, make_plain

from conftest import multipartitions

XI = make_generic((1, 1, 1))


def mp(n, coloring, *parts):
    return MultiPartition(n, coloring, tuple(parts))


def test_hook_triples_examples():
    assert hook_triples(mp(2, (0,), (1,))) == []
    assert hook_triples(mp(2, (0,), (1, 1))) == [HookTriple(Box(1, 1, 1), 1, 1)]
    assert hook_triples(mp(2, (0,), (2,))) == [HookTriple(Box(1, 1, 1), 1, 1)]
    assert hook_triples(MultiPartition.empty(3, (0, 1))) == []


def test_tangent_character_examples():
    (pair,) = tangent_character(XI, mp(2, (0,), (1, 1)))
    assert pair.e_minus == XI.omega_bar - XI.omega
    assert pair.e_minus < 0
    assert pair.e_plus == XI.omega * 2
    (pair,) = tangent_character(XI, mp(2, (0,), (2,)))
    assert pair.e_minus == XI.omega_bar * 2 and pair.e_minus > 0
    assert pair.e_plus == XI.omega - XI.omega_bar and pair.e_plus > 0
    assert tangent_character(XI, MultiPartition.empty(2, (0,))) == []


def test_attracting_dimension_examples():
    assert attracting_dimension(XI, mp(2, (0,), (1, 1))) == 1
    assert attracting_dimension(XI, mp(2, (0,), (2,))) == 0
    assert attracting_dimension(XI, MultiPartition.empty(2, (0,))) == 0


def test_zero_eigenvalue_is_an_error():
    # with plain (1,1,1) the pair for (2) has e_plus = omega - omega_bar = 0
    with pytest.raises(ZeroEigenvalueError):
        attracting_dimension(make_plain((1, 1, 1)), mp(2, (0,), (2,)))


def test_illegal_and_regular_examples():
    assert illegal_triples(XI, mp(2, (0,), (2,))) == [HookTriple(Box(1, 1, 1), 1, 1)]
    assert illegal_triples(XI, mp(2, (0,), (1, 1))) == []
    assert illegal_triples(XI, MultiPartition.empty(2, (0,))) == []
    assert is_regular(XI, mp(2, (0,), (1, 1)))
    assert not is_regular(XI, mp(2, (0,), (2,)))
    assert is_regular(XI, MultiPartition.empty(2, (0,)))


def test_graded_box_counts_examples():
    one = mp(2, (0,), (1,))
    h = height(XI, Box(1, 1, 1))
    counts = graded_box_counts(XI, one, 0, h)
    assert (counts.dim_ge, counts.dim_gt, counts.removable_ge) == (1, 0, 1)
    assert graded_box_counts(XI, one, 1, 0).addable_ge == 2
    empty = graded_box_counts(XI, MultiPartition.empty(2, (0,)), 0, 0)
    assert empty[:3] == (0, 0, 0) and empty.addable_ge == 1


def brute_identity_sides(xi, lam, residue, H):
    """Both sides of the graded count identity from raw box lists."""
    n = lam.n
    boxes = [(color_of(lam, b), height(xi, b)) for b in lam.boxes()]

    def dim(r, t):
        return sum(1 for c, h in boxes if c == r % n and h >= t)

    K = xi.omega + xi.omega_bar
    lhs = (dim(residue, H) + dim(residue, H + K) - dim(residue + 1, H + xi.omega_bar)
           - dim(residue - 1, H + xi.omega))
    rhs = (sum(1 for b in removable_nodes(lam, residue) if height(xi, b) >= H)
           - sum(1 for b in addable_nodes(lam, residue) if height(xi, b) >= H + K))
    return lhs, rhs


def test_height_count_identity_examples(four_component_example):
    two = mp(2, (0,), (1, 1))
    just_above = XI.xi[0] + LexScalar((0, 0, 0, 0, 1))
    assert height_count_identity(XI, two, 0, just_above)
    lhs, rhs = brute_identity_sides(XI, two, 0, just_above)
    # R_0 empty; A_0 = {(1;3,1)} above H+K; LHS = 1 + 0 - 1 - 1
    assert lhs == rhs == -1
    xi = make_generic((2, 1, 1, 2, 2, 3))
    rng = random.Random(3)
    for _ in range(50):
        H = LexScalar((Fraction(rng.randint(31, 200), 10), rng.choice([-1, 0, 1])))
        for r in range(3):
            assert height_count_identity(xi, four_component_example, r, H)
            lhs, rhs = brute_identity_sides(xi, four_component_example, r, H)
            assert lhs == rhs


def test_height_count_identity_precondition():
    with pytest.raises(ValueError):
        height_count_identity(XI, mp(2, (0,), (1,)), 0, 1)


def test_gap_pairs_examples():
    two = mp(2, (0,), (2,))
    # R_0 = {(1;1,2)}? no: (1;1,2) has color 1; removable 0-nodes are empty
    assert removable_nodes(two, 0) == []
    assert gap_pairs(XI, two, 0) == []
    # (2) is irregular through the residue-1 pair r=(1;1,2), a=(1;2,1)
    assert gap_pairs(XI, two, 1) == [(Box(1, 1, 2), Box(1, 2, 1))]
    assert gap_pairs(XI, MultiPartition.empty(2, (0,)), 0) == []
    assert gap_pairs(XI, mp(2, (0,), (1, 1)), 0) == []


DATA = [make_datum(b, m) for b in [(1, 1, 1), (2, 1, 1), (1, 3, 2)]
        for m in (Mode.GENERIC, Mode.ROW, Mode.ROW_PRIME)]
DATA2 = [make_datum(b, m) for b in [(1, 1, 1, 1), (3, 2, 1, 2), (1, 2, 2, 1)]
         for m in (Mode.GENERIC, Mode.ROW, Mode.ROW_PRIME)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tangent_oracle_exhaustive_level_one(n):
    for xi in DATA:
        for lam in multipartitions_up_to(n, (0,), 7):
            check_pairs(xi, lam)


@pytest.mark.parametrize("coloring", [(0, 1), (0, 0), (1, 2)])
def test_tangent_oracle_exhaustive_level_two(coloring):
    for xi in DATA2:
        for lam in multipartitions_up_to(3, coloring, 6):
            check_pairs(xi, lam)


def check_pairs(xi, lam):
    pairs = tangent_character(xi, lam)
    assert len(pairs) == len(hook_triples(lam))
    illegal = set(illegal_triples(xi, lam))
    for p in pairs:
        assert p.e_minus + p.e_plus == xi.omega + xi.omega_bar
        negatives = (p.e_minus < 0) + (p.e_plus < 0)
        assert negatives == (0 if p.triple in illegal else 1)
    att = attracting_dimension(xi, lam)
    assert att == len(pairs) - len(illegal)
    assert (att == len(pairs)) == is_regular(xi, lam)
    for r in range(lam.n):
        if gap_pairs(xi, lam, r):
            assert not is_regular(xi, lam)


@settings(max_examples=200, deadline=None)
@given(multipartitions(max_size=9), st.integers(0, 4), st.integers(1, 60), st.integers(-1, 1),
       st.sampled_from([(1, 1), (2, 1), (1, 3), (5, 2)]))
def test_height_count_identity_property(lam, residue, tenths, eps, slopes):
    base = (*slopes, *[1 + (k % 2) for k in range(lam.ell)])
    xi = make_generic(base)
    H = LexScalar((max(x.base for x in xi.xi) + Fraction(tenths, 10), eps))
    assert height_count_identity(xi, lam, residue % lam.n, H)
