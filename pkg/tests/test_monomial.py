import json

import pytest
from hypothesis import given, settings, strategies as st

from slopecrystal.core import MultiPartition
from slopecrystal.crystal import f_op, generate
from slopecrystal.monomial import (
    EdgeConstants,
    Monomial,
    a_monomial,
    check_psi_isomorphism,
    constants_from_slope,
    corner_order_consistent,
    datum_for_dominant,
    e_bracket,
    e_direct,
    expected_weight,
    f_bracket,
    f_direct,
    is_aligned_dominant,
    monomial_closure,
    monomial_bracket_str,
    psi,
    shift_levels,
    stats,
    verify_psi_commutes,
)
from slopecrystal.slope import make_generic, make_row

Y = Monomial.Y


def stats_by_definition(M, r):
    """eps/phi/k_e/k_f from partial sums over every integer level in range."""
    levels = dict(M.levels(r))
    if not levels:
        return 0, 0, None, None
    lo, hi = min(levels) - 1, max(levels) + 1
    ks = range(lo, hi + 1)
    head = {k: sum(levels.get(s, 0) for s in range(lo, k + 1)) for k in ks}
    tail = {k: sum(levels.get(s, 0) for s in range(k, hi + 1)) for k in ks}
    phi = max(head.values())
    eps = max(-t for t in tail.values())
    k_f = min(k for k in ks if head[k] == phi) if phi else None
    k_e = max(k for k in ks if -tail[k] == eps) if eps else None
    return eps, phi, k_e, k_f


def monomials(n, lo=0, hi=8):
    entry = st.tuples(st.integers(0, n - 1), st.integers(lo, hi), st.integers(-3, 3))
    return st.lists(entry, max_size=6).map(lambda es: Monomial(n, [((r, k), e) for r, k, e in es]))


def test_a_monomial_examples():
    assert a_monomial(EdgeConstants.uniform(2, 1, 1), 0, 3) == Y(2, 0, 3) * Y(2, 0, 5) * Y(2, 1, 4, -2)
    assert a_monomial(EdgeConstants.uniform(3, 1, 1), 0, 3) == (
        Y(3, 0, 3) * Y(3, 0, 5) * Y(3, 1, 4, -1) * Y(3, 2, 4, -1)
    )
    c = EdgeConstants(3, (1, 2, 0), (3, 2, 1))
    assert c.K == 3
    assert a_monomial(c, 2, 0) == Y(3, 2, 0) * Y(3, 2, 3) * Y(3, 0, 0, -1) * Y(3, 1, 1, -1)


def test_edge_constants_validation():
    with pytest.raises(ValueError):
        EdgeConstants(3, (1, 1, 2), (1, 1, 1))
    with pytest.raises(ValueError):
        EdgeConstants(3, (1, 1), (1, 1, 1))


def test_monomial_algebra():
    m = Y(3, 1, 4, 2) * Y(3, 0, 5, -1)
    assert m * m.inverse() == Monomial.one(3)
    assert (m ** 2).exp(1, 4) == 4
    assert Y(3, 4, 0) == Y(3, 1, 0)  # residues reduce mod n
    assert m.weight() == (-1, 2, 0)
    assert Monomial.from_dict(json.loads(m.to_json())) == m


def test_stats_examples():
    M = Y(4, 1, 4, 2) * Y(4, 1, 5, -1)
    s = stats(M, 1)
    assert (s.eps, s.phi, s.k_e, s.k_f) == (1, 2, 5, 4)
    assert monomial_bracket_str(M, 1) == ")(("
    assert stats(Monomial.one(2), 0)[1:] == (0, 0, None, None)


def test_bracket_string_example():
    M = Y(4, 1, 1) * Y(4, 1, 2, -1) * Y(4, 1, 4, 2) * Y(4, 1, 5, -2) * Y(4, 1, 6)
    assert monomial_bracket_str(M, 1) == "())(()("
    assert stats(M, 1)[1:] == stats_by_definition(M, 1)


@settings(max_examples=300)
@given(monomials(3))
def test_stats_match_definition(M):
    for r in range(3):
        s = stats(M, r)
        assert (s.eps, s.phi, s.k_e, s.k_f) == stats_by_definition(M, r)
        assert s.phi - s.eps == s.wt[r]


@pytest.mark.parametrize("c", [
    EdgeConstants.uniform(2, 1, 1),
    EdgeConstants.uniform(3, 1, 2),
    EdgeConstants(3, (1, 2, 0), (3, 2, 1)),
])
@settings(max_examples=200)
@given(data=st.data())
def test_direct_and_bracket_operators_agree(c, data):
    M = data.draw(monomials(c.n))
    for r in range(c.n):
        assert f_direct(c, M, r) == f_bracket(c, M, r)
        assert e_direct(c, M, r) == e_bracket(c, M, r)


def test_inverse_fails_off_aligned_components():
    # f can place its Y^-1 above an uncanceled Y^-1 when K > 1, so e f != id here
    c = EdgeConstants(3, (1, 2, 0), (3, 2, 1))
    M = Y(3, 1, 0) * Y(3, 1, 1, -1)
    assert e_direct(c, f_direct(c, M, 1), 1) != M


@pytest.mark.parametrize("c, M", [
    (EdgeConstants.uniform(2, 1, 1), Y(2, 0, 3)),
    (EdgeConstants.uniform(3, 1, 2), Y(3, 0, 3) * Y(3, 1, 4)),
    (EdgeConstants(3, (1, 2, 0), (3, 2, 1)), Y(3, 0, 5) * Y(3, 2, 6)),
])
def test_operators_are_inverse_on_aligned_closure(c, M):
    assert is_aligned_dominant(M, c.K)
    closure = monomial_closure(c, M, 7)
    for v in closure.vertices:
        for r in range(c.n):
            up = f_direct(c, v, r)
            if up is not None:
                assert e_direct(c, up, r) == v
            down = e_direct(c, v, r)
            if down is not None:
                assert f_direct(c, down, r) == v


def test_psi_examples():
    xi = make_row((1, 1, 1))
    empty = MultiPartition.empty(2, (0,))
    assert psi(xi, empty) == Y(2, 0, 3)
    one = f_op(xi, empty, 0)
    assert psi(xi, one) == Y(2, 1, 4, 2) * Y(2, 0, 5, -1)
    assert psi(xi, one) == a_monomial(constants_from_slope(xi, 2), 0, 3).inverse() * psi(xi, empty)
    assert psi(xi, empty).weight() == expected_weight(empty) == (1, 0)
    with pytest.raises(ValueError):
        psi(make_row((1, "1/2", 1)), empty)


def test_constants_from_slope():
    c = constants_from_slope(make_row((2, 3, 1)), 3)
    assert c.c_plus == (3, 3, 3) and c.c_minus == (2, 2, 2) and c.K == 5
    with pytest.raises(ValueError):
        constants_from_slope(make_row(("3/2", 1, 1)), 3)


def test_aligned_dominant():
    assert is_aligned_dominant(Y(3, 0, 3) * Y(3, 1, 4), 2)
    assert not is_aligned_dominant(Y(3, 0, 3) * Y(3, 1, 5), 2)
    assert not is_aligned_dominant(Y(3, 0, 3) * Y(3, 1, 4, -1), 2)
    assert is_aligned_dominant(Monomial.one(3), 2)


@pytest.mark.parametrize("n, coloring, base", [
    (2, (0,), (1, 1, 1)),
    (2, (0,), (2, 1, 3)),
    (3, (0,), (1, 2, 1)),
    (3, (0, 1), (1, 1, 1, 1)),
    (3, (0, 2), (2, 1, 3, 4)),
])
def test_psi_intertwines_operators(n, coloring, base):
    xi = make_row(base)
    c = constants_from_slope(xi, n)
    g = generate(xi, n, coloring, 6)
    assert verify_psi_commutes(xi, c, g) is None
    assert check_psi_isomorphism(xi, c, g) is None
    assert all(corner_order_consistent(xi, v) for v in g.vertices)


def test_psi_detects_wrong_constants():
    xi = make_row((1, 1, 1, 1))
    g = generate(xi, 3, (0, 1), 4)
    wrong = EdgeConstants.uniform(3, 2, 1)
    assert verify_psi_commutes(xi, wrong, g) is not None


def test_datum_for_dominant():
    M = Y(3, 0, 2) * Y(3, 2, 3, 2)
    coloring, xi, shift = datum_for_dominant(M, 1, 1)
    assert sorted(coloring) == [0, 2, 2]
    empty = MultiPartition.empty(3, coloring)
    assert psi(xi, empty) == shift_levels(M, shift)
    g = generate(xi, 3, coloring, 5)
    assert check_psi_isomorphism(xi, constants_from_slope(xi, 3), g) is None
    with pytest.raises(ValueError):
        datum_for_dominant(Y(3, 0, 0) * Y(3, 1, 5), 1, 1)


def test_generic_mode_psi_also_commutes_on_integral_base():
    # GENERIC shares the ROW tie-breaking, so the same check applies
    xi = make_generic((1, 1, 1))
    g = generate(xi, 2, (0,), 5)
    assert verify_psi_commutes(xi, constants_from_slope(xi, 2), g) is None
