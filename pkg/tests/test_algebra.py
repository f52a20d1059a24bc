from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relrep.algebra import (
    FinitePoset,
    JoinSemilatticeSemigroup,
    Plus,
    ResiduatedSemigroup,
    Semi,
    Var,
    derive_residuals,
    down_cone,
    eval_term,
    order_from_join,
    up_close,
    validate_jsl,
    validate_poset,
    validate_residuated_semigroup,
)
from relrep.bitset import to_mask
from relrep.enumeration import enumerate_algebras
from relrep.errors import InvalidSemilattice, MalformedInput, NotResiduated, UnboundVariable


class TestPoset:
    def test_single_point(self):
        assert validate_poset([[1]]).ok

    def test_two_chain(self):
        assert validate_poset([[1, 1], [0, 1]]).ok

    def test_irreflexive(self):
        report = validate_poset([[0]])
        assert not report.ok
        assert report.violations == [("reflexive", (0,))]

    def test_antisymmetry_and_transitivity_witnesses(self):
        assert ("antisymmetric", (0, 1)) in validate_poset([[1, 1], [1, 1]]).violations
        bad = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
        assert ("transitive", (0, 1, 2)) in validate_poset(bad).violations

    def test_non_square(self):
        with pytest.raises(MalformedInput):
            validate_poset([[1, 0]])


class TestResiduatedSemigroup:
    def test_one_element(self, one_element_rs):
        assert validate_residuated_semigroup(one_element_rs).ok

    def test_two_chain_min(self):
        rs = ResiduatedSemigroup.build([[1, 1], [0, 1]], [[0, 0], [0, 1]],
                                       [[1, 1], [0, 1]], [[1, 0], [1, 1]])
        assert validate_residuated_semigroup(rs).ok

    def test_broken_residual(self):
        rs = ResiduatedSemigroup.build([[1, 1], [0, 1]], [[0, 0], [0, 1]],
                                       [[1, 1], [1, 1]], [[1, 0], [1, 1]])
        report = validate_residuated_semigroup(rs)
        assert report.violations == [("adjunction", (1, 1, 0))]

    def test_dimension_mismatch(self):
        with pytest.raises(MalformedInput):
            ResiduatedSemigroup.build([[1, 1], [0, 1]], [[0, 0]])

    def test_violation_cap(self):
        # constant-1 composition on a 3-antichain breaks the adjunction many times
        poset = FinitePoset.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        zeros = ((0,) * 3,) * 3
        rs = ResiduatedSemigroup(poset, ((1,) * 3,) * 3, zeros, zeros)
        report = validate_residuated_semigroup(rs, cap=2)
        assert sum(1 for law, _ in report.violations if law == "adjunction") == 2


class TestDeriveResiduals:
    def test_two_chain(self):
        lres, rres = derive_residuals([[0, 0], [0, 1]], [[1, 1], [0, 1]])
        assert lres == ((1, 1), (0, 1))
        assert rres == ((1, 0), (1, 1))

    def test_one_element(self):
        assert derive_residuals([[0]], [[1]]) == (((0,),), ((0,),))

    def test_constant_on_antichain(self):
        with pytest.raises(NotResiduated) as info:
            derive_residuals([[0] * 3] * 3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert (info.value.a, info.value.c) == (0, 0)

    def test_adjunction_on_every_enumerated(self, rs_upto3):
        for rs in rs_upto3:
            lres, rres = derive_residuals(rs.compose, rs.leq)
            le, op = rs.leq, rs.compose
            for a, b, c in product(range(rs.size), repeat=3):
                assert le[b][lres[a][c]] == le[op[a][b]][c] == le[a][rres[c][b]]


def _brute_jsl_ok(compose, join):
    n = len(join)
    r = range(n)
    return (all(join[a][a] == a for a in r)
            and all(join[a][b] == join[b][a] for a, b in product(r, r))
            and all(join[a][join[b][c]] == join[join[a][b]][c] for a, b, c in product(r, r, r))
            and all(compose[a][compose[b][c]] == compose[compose[a][b]][c] for a, b, c in product(r, r, r))
            and all(compose[a][join[b][c]] == join[compose[a][b]][compose[a][c]]
                    for a, b, c in product(r, r, r))
            and all(compose[join[a][b]][c] == join[compose[a][c]][compose[b][c]]
                    for a, b, c in product(r, r, r)))


class TestJsl:
    def test_one_element(self, one_element_jsl):
        assert validate_jsl(one_element_jsl).ok

    def test_max_max(self, two_chain_max):
        assert validate_jsl(two_chain_max).ok

    def test_constant_zero(self):
        alg = JoinSemilatticeSemigroup.build([[0, 0], [0, 0]], [[0, 1], [1, 1]])
        assert validate_jsl(alg).ok == _brute_jsl_ok(alg.compose, alg.join) is True

    def test_agrees_with_brute_force_on_all_2x2(self):
        for cells in product(range(2), repeat=8):
            compose = [list(cells[0:2]), list(cells[2:4])]
            join = [list(cells[4:6]), list(cells[6:8])]
            alg = JoinSemilatticeSemigroup.build(compose, join)
            assert validate_jsl(alg).ok == _brute_jsl_ok(compose, join)

    def test_distributivity_failure(self):
        # x;y = x+y fails left distribution: 0;(0+0) fine but 1;(0+0)=1 while 1;0+1;0 = 1 ...
        alg = JoinSemilatticeSemigroup.build([[1, 0], [0, 0]], [[0, 1], [1, 1]])
        report = validate_jsl(alg)
        assert not report.ok
        assert "left-distributive" in report.laws() or "associative" in report.laws()


class TestOrderFromJoin:
    def test_single(self):
        assert order_from_join([[0]]) == ((True,),)

    def test_max(self):
        assert order_from_join([[0, 1], [1, 1]]) == ((True, True), (False, True))

    def test_not_a_semilattice(self):
        with pytest.raises(InvalidSemilattice):
            order_from_join([[0, 0], [1, 1]])

    def test_outputs_valid_poset(self):
        for alg in enumerate_algebras("jsl", 3):
            assert validate_poset(order_from_join(alg.join)).ok


class TestTerms:
    def test_variable(self, two_chain_max):
        assert eval_term(Var(0), {0: 1}, two_chain_max) == 1

    def test_idempotence(self, two_chain_max):
        for e in range(2):
            assert eval_term(Plus(Var(0), Var(0)), {0: e}, two_chain_max) == e

    def test_mixed(self, two_chain_max):
        t = Plus(Semi(Var(0), Var(1)), Var(0))
        assert eval_term(t, {0: 0, 1: 1}, two_chain_max) == 1

    def test_unbound(self, two_chain_max):
        with pytest.raises(UnboundVariable):
            eval_term(Semi(Var(0), Var(3)), {0: 0}, two_chain_max)

    def test_negative_index(self):
        with pytest.raises(MalformedInput):
            Var(-1)


def terms(depth):
    leaf = st.builds(Var, st.integers(0, 2))
    if depth == 0:
        return leaf
    sub = terms(depth - 1)
    return st.one_of(leaf, st.builds(Plus, sub, sub), st.builds(Semi, sub, sub))


def rewrite_plus(t, data):
    """Randomly apply commutativity/associativity of + somewhere in ``t``."""
    if isinstance(t, Var):
        return t
    left, right = rewrite_plus(t.left, data), rewrite_plus(t.right, data)
    if isinstance(t, Semi):
        return Semi(left, right)
    choice = data.draw(st.integers(0, 2))
    if choice == 1:
        return Plus(right, left)
    if choice == 2 and isinstance(left, Plus):
        return Plus(left.left, Plus(left.right, right))
    return Plus(left, right)


JSL3 = list(enumerate_algebras("jsl", 3, modulo_iso=True))


@settings(max_examples=200, deadline=None)
@given(t=terms(4), idx=st.integers(0, len(JSL3) - 1), vals=st.lists(st.integers(0, 2), min_size=3, max_size=3),
       data=st.data())
def test_eval_invariant_under_plus_rewrites(t, idx, vals, data):
    alg = JSL3[idx]
    v = dict(enumerate(vals))
    assert eval_term(rewrite_plus(t, data), v, alg) == eval_term(t, v, alg)


class TestCones:
    def test_examples(self):
        chain = FinitePoset.from_matrix([[1, 1], [0, 1]])
        assert up_close(to_mask([1]), chain) == to_mask([1])
        assert up_close(to_mask([0]), chain) == to_mask([0, 1])
        assert down_cone(1, chain) == to_mask([0, 1])

    def test_up_close_is_least_upset(self):
        for alg in enumerate_algebras("jsl", 3):
            P = alg.poset
            for S in range(8):
                U = up_close(S, P)
                assert S & ~U == 0
                upsets = [T for T in range(8) if up_close(T, P) == T and S & ~T == 0]
                assert all(U & ~T == 0 for T in upsets)
