from itertools import product

import pytest

from relrep.algebra import ResiduatedSemigroup
from relrep.bitset import members, popcount, sort_key, to_mask
from relrep.completion import (
    build_quantale,
    check_quantale_laws,
    check_quantic_nucleus,
    closed_sets,
    dm_embed,
    galois_closure,
    lower_bounds,
    pointwise_product,
    quantale_residuals,
    upper_bounds,
)
from relrep.enumeration import enumerate_algebras


def naive_closure(X, rs):
    n = rs.size
    ub = [y for y in range(n) if all(rs.leq[x][y] for x in members(X))]
    lb = [z for z in range(n) if all(rs.leq[z][y] for y in ub)]
    return to_mask(lb)


@pytest.fixture(scope="module")
def rs_upto4():
    out = [a for n in (1, 2, 3) for a in enumerate_algebras("rs", n)]
    out += list(enumerate_algebras("rs", 4, modulo_iso=True, cap=4))
    return out


class TestBounds:
    def test_two_chain(self, two_chain_rs):
        assert lower_bounds(to_mask([1]), two_chain_rs) == to_mask([0, 1])
        assert upper_bounds(to_mask([0]), two_chain_rs) == to_mask([0, 1])
        assert galois_closure(0, two_chain_rs) == to_mask([0])
        assert galois_closure(to_mask([1]), two_chain_rs) == to_mask([0, 1])

    def test_empty_set_on_antichain(self):
        rs = ResiduatedSemigroup.build([[1, 0], [0, 1]], [[0, 1], [1, 0]])
        # nothing is below both points, so m(empty) is empty
        assert galois_closure(0, rs) == 0
        assert galois_closure(to_mask([0, 1]), rs) == to_mask([0, 1])

    def test_pointwise(self, two_chain_rs):
        assert pointwise_product(to_mask([0, 1]), to_mask([1]), two_chain_rs) == to_mask([0, 1])
        assert pointwise_product(0, to_mask([1]), two_chain_rs) == 0


class TestClosure:
    def test_closure_laws_all_subsets(self, rs_upto4):
        for rs in rs_upto4:
            n = 1 << rs.size
            m = [galois_closure(X, rs) for X in range(n)]
            for X in range(n):
                assert m[X] == naive_closure(X, rs)
                assert X & ~m[X] == 0
                assert m[m[X]] == m[X]
            for X, Y in product(range(n), repeat=2):
                if X & ~Y == 0:
                    assert m[X] & ~m[Y] == 0
                lhs = pointwise_product(m[X], m[Y], rs)
                assert lhs & ~m[pointwise_product(X, Y, rs)] == 0

    def test_closed_sets_equal_filter(self, rs_upto4):
        for rs in rs_upto4:
            expected = sorted((X for X in range(1 << rs.size) if naive_closure(X, rs) == X),
                              key=sort_key)
            assert closed_sets(rs) == expected

    def test_canonical_order(self, two_chain_rs):
        assert closed_sets(two_chain_rs) == [to_mask([0]), to_mask([0, 1])]

    def test_nucleus_report(self, rs_upto4):
        for rs in rs_upto4:
            report = check_quantic_nucleus(rs)
            assert report.is_nucleus and report.exhaustive and not report.witnesses

    def test_sampled_nucleus_above_four(self):
        chain = [[int(a <= b) for b in range(5)] for a in range(5)]
        rs = ResiduatedSemigroup.build(chain, [[min(a, b) for b in range(5)] for a in range(5)])
        report = check_quantic_nucleus(rs, seed=7)
        assert report.is_nucleus and not report.exhaustive


class TestQuantale:
    def test_laws(self, rs_upto4):
        for rs in rs_upto4:
            assert check_quantale_laws(build_quantale(rs)) == []

    def test_two_chain(self, two_chain_rs):
        Q = build_quantale(two_chain_rs)
        assert Q.size == 2
        assert Q.product == ((0, 0), (0, 1))
        assert Q.top == 1 and Q.bottom == 0

    def test_sup_and_meet_are_bounds(self, rs_upto4):
        for rs in rs_upto4:
            Q = build_quantale(rs)
            for i, j in product(range(Q.size), repeat=2):
                s, m = Q.sup((i, j)), Q.meet((i, j))
                assert Q.leq[i][s] and Q.leq[j][s]
                assert Q.leq[m][i] and Q.leq[m][j]
                uppers = [k for k in range(Q.size) if Q.leq[i][k] and Q.leq[j][k]]
                assert all(Q.leq[s][k] for k in uppers)

    def test_empty_sup_is_bottom(self, rs_upto4):
        for rs in rs_upto4:
            Q = build_quantale(rs)
            assert Q.sup(()) == Q.bottom
            assert Q.meet(()) == Q.top

    def test_residuals_against_search(self, rs_upto4):
        for rs in rs_upto4:
            Q = build_quantale(rs)
            lres, rres = quantale_residuals(Q)
            le, n = Q.leq, Q.size
            for a, b in product(range(n), repeat=2):
                # the greatest c with a;c <= b, found by scanning
                cands = [c for c in range(n) if le[Q.mul(a, c)][b]]
                assert lres[a][b] in cands and all(le[c][lres[a][b]] for c in cands)
                cands = [c for c in range(n) if le[Q.mul(c, a)][b]]
                assert rres[b][a] in cands and all(le[c][rres[b][a]] for c in cands)


class TestEmbedding:
    def test_commutes_with_operations(self, rs_upto3):
        for rs in rs_upto3:
            Q = build_quantale(rs)
            lres, rres = quantale_residuals(Q)
            f = [dm_embed(a, rs, Q) for a in range(rs.size)]
            assert len(set(f)) == rs.size
            for a, b in product(range(rs.size), repeat=2):
                assert rs.leq[a][b] == Q.leq[f[a]][f[b]]
                assert f[rs.compose[a][b]] == Q.mul(f[a], f[b])
                assert f[rs.lres[a][b]] == lres[f[a]][f[b]]
                assert f[rs.rres[a][b]] == rres[f[a]][f[b]]

    def test_preserves_existing_joins(self, rs_upto3):
        for rs in rs_upto3:
            Q = build_quantale(rs)
            n = rs.size
            for a, b in product(range(n), repeat=2):
                ubs = [c for c in range(n) if rs.leq[a][c] and rs.leq[b][c]]
                least = [c for c in ubs if all(rs.leq[c][d] for d in ubs)]
                if least:
                    got = Q.sup((dm_embed(a, rs, Q), dm_embed(b, rs, Q)))
                    assert got == dm_embed(least[0], rs, Q)

    def test_down_cone(self, two_chain_rs):
        Q = build_quantale(two_chain_rs)
        assert [popcount(Q.sets[dm_embed(a, two_chain_rs, Q)]) for a in (0, 1)] == [1, 2]
