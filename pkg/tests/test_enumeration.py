from itertools import product

import pytest

from relrep.algebra import validate_jsl, validate_residuated_semigroup
from relrep.enumeration import all_posets, canonical_form, enumerate_algebras
from relrep.errors import MalformedInput, SizeCapExceeded


def brute_jsl(n):
    """Every (join, compose) pair on n points, filtered by the axioms."""
    r = range(n)
    cells = n * n
    found = []
    for jflat in product(r, repeat=cells):
        join = [jflat[i * n:(i + 1) * n] for i in r]
        if not (all(join[a][a] == a for a in r)
                and all(join[a][b] == join[b][a] for a, b in product(r, r))
                and all(join[a][join[b][c]] == join[join[a][b]][c] for a, b, c in product(r, r, r))):
            continue
        for cflat in product(r, repeat=cells):
            t = [cflat[i * n:(i + 1) * n] for i in r]
            if all(t[a][t[b][c]] == t[t[a][b]][c]
                   and t[a][join[b][c]] == join[t[a][b]][t[a][c]]
                   and t[join[a][b]][c] == join[t[a][c]][t[b][c]]
                   for a, b, c in product(r, r, r)):
                found.append((tuple(map(tuple, join)), tuple(map(tuple, t))))
    return found


def brute_rs(n):
    """Every (order, compose) pair with composition residuated, by searching
    for residual tables directly rather than deriving them."""
    r = range(n)
    found = []
    for leq in all_posets(n):
        for cflat in product(r, repeat=n * n):
            t = [cflat[i * n:(i + 1) * n] for i in r]
            if any(t[a][t[b][c]] != t[t[a][b]][c] for a, b, c in product(r, r, r)):
                continue
            # a\c must exist: some x with (b <= x iff a;b <= c) for all b
            left = all(any(all(leq[b][x] == leq[t[a][b]][c] for b in r) for x in r)
                       for a, c in product(r, r))
            right = all(any(all(leq[a][x] == leq[t[a][b]][c] for a in r) for x in r)
                        for b, c in product(r, r))
            if left and right:
                found.append((leq, tuple(map(tuple, t))))
    return found


class TestCounts:
    def test_jsl_size2_labelled(self):
        assert len(list(enumerate_algebras("jsl", 2))) == 12

    def test_jsl_size2_matches_brute_force(self):
        got = {(a.join, a.compose) for a in enumerate_algebras("jsl", 2)}
        assert got == set(brute_jsl(2))

    def test_jsl_size1(self):
        assert len(list(enumerate_algebras("jsl", 1))) == 1

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_rs_matches_brute_force(self, n):
        got = {(tuple(map(tuple, a.leq)), a.compose) for a in enumerate_algebras("rs", n)}
        expected = {(tuple(map(tuple, leq)), t) for leq, t in brute_rs(n)}
        assert got == expected

    def test_iso_counts(self):
        assert len(list(enumerate_algebras("jsl", 2, modulo_iso=True))) == 6
        assert len(list(enumerate_algebras("rs", 2, modulo_iso=True))) == 3
        assert len(list(enumerate_algebras("rs", 3, modulo_iso=True))) == 16
        assert len(list(enumerate_algebras("jsl", 3, modulo_iso=True))) == 61


class TestOutputsValid:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_jsl(self, n):
        for alg in enumerate_algebras("jsl", n):
            assert validate_jsl(alg).ok

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_rs(self, n):
        for alg in enumerate_algebras("rs", n):
            assert validate_residuated_semigroup(alg).ok


class TestIsomorphism:
    def test_representatives_pairwise_distinct(self):
        keys = [canonical_form(a.join, a.compose, True)
                for a in enumerate_algebras("jsl", 3, modulo_iso=True)]
        assert len(keys) == len(set(keys))

    def test_every_labelled_algebra_has_a_representative(self):
        reps = {canonical_form(a.join, a.compose, True)
                for a in enumerate_algebras("jsl", 3, modulo_iso=True)}
        for a in enumerate_algebras("jsl", 3):
            assert canonical_form(a.join, a.compose, True) in reps


class TestErrors:
    def test_size_cap(self):
        with pytest.raises(SizeCapExceeded):
            list(enumerate_algebras("rs", 4))

    def test_cap_can_be_raised(self):
        assert next(enumerate_algebras("jsl", 4, modulo_iso=True, cap=4)) is not None

    def test_bad_kind(self):
        with pytest.raises(MalformedInput):
            list(enumerate_algebras("lattice", 2))

    def test_bad_size(self):
        with pytest.raises(MalformedInput):
            list(enumerate_algebras("rs", 0))


def test_poset_counts():
    # labelled posets on 1..4 points: OEIS A001035
    assert [len(list(all_posets(n))) for n in range(1, 5)] == [1, 3, 19, 219]
