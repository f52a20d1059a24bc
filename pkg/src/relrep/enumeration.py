"""Exhaustive generation of small residuated semigroups and join
semilattice-ordered semigroups, optionally up to isomorphism.

Tables are filled cell by cell with associativity, monotonicity and
distributivity checked as soon as the entries they mention are defined.
"""

from __future__ import annotations

from itertools import permutations, product

from .algebra import (
    FinitePoset,
    JoinSemilatticeSemigroup,
    ResiduatedSemigroup,
    derive_residuals,
)
from .errors import MalformedInput, NotResiduated, SizeCapExceeded

DEFAULT_SIZE_CAP = 3
KINDS = ("rs", "jsl")


def all_posets(n):
    """Every labelled partial order on ``n`` points, as boolean matrices."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a < b]
    # each unordered pair is incomparable, a<b or b<a
    for choice in product(range(3), repeat=len(pairs)):
        leq = [[a == b for b in range(n)] for a in range(n)]
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                leq[a][b] = True
            elif c == 2:
                leq[b][a] = True
        if all(not (leq[a][b] and leq[b][c]) or leq[a][c]
               for a, b, c in product(range(n), repeat=3)):
            yield tuple(map(tuple, leq))


def _relabel_matrix(m, perm):
    n = len(m)
    out = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[perm[a]][perm[b]] = m[a][b]
    return out


def _relabel_table(t, perm):
    n = len(t)
    out = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[perm[a]][perm[b]] = perm[t[a][b]]
    return out


def _flat(*tables):
    return tuple(int(x) for t in tables for row in t for x in row)


def canonical_form(order_or_join, compose, is_table):
    """Lexicographically least encoding over all carrier permutations."""
    n = len(compose)
    best = None
    for perm in permutations(range(n)):
        first = (_relabel_table(order_or_join, perm) if is_table
                 else _relabel_matrix(order_or_join, perm))
        key = _flat(first, _relabel_table(compose, perm))
        if best is None or key < best:
            best = key
    return best


def poset_representatives(n):
    seen = set()
    for leq in all_posets(n):
        key = canonical_form(leq, [[0] * n for _ in range(n)], False)
        if key not in seen:
            seen.add(key)
            yield leq


def join_table(leq):
    """Join table of a poset, or None when some pair lacks a least upper bound."""
    n = len(leq)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            ubs = [c for c in range(n) if leq[a][c] and leq[b][c]]
            least = [c for c in ubs if all(leq[c][d] for d in ubs)]
            if not least:
                return None
            table[a][b] = least[0]
    return tuple(map(tuple, table))


def _fill_tables(n, cell_ok):
    """Depth-first search over ``n``x``n`` tables; ``cell_ok(t, a, b)`` checks
    constraints touching the newly set cell ``t[a][b]``."""
    t = [[None] * n for _ in range(n)]
    cells = [(a, b) for a in range(n) for b in range(n)]

    def go(k):
        if k == len(cells):
            yield tuple(map(tuple, t))
            return
        a, b = cells[k]
        for v in range(n):
            t[a][b] = v
            if cell_ok(t, a, b):
                yield from go(k + 1)
        t[a][b] = None

    yield from go(0)


def _assoc_ok(t, n):
    for x, y, z in product(range(n), repeat=3):
        xy, yz = t[x][y], t[y][z]
        if xy is None or yz is None:
            continue
        left, right = t[xy][z], t[x][yz]
        if left is not None and right is not None and left != right:
            return False
    return True


def _rs_tables(leq):
    n = len(leq)

    def ok(t, a, b):
        v = t[a][b]
        for c in range(n):
            # monotone in the left argument
            w = t[c][b]
            if w is not None and ((leq[a][c] and not leq[v][w]) or (leq[c][a] and not leq[w][v])):
                return False
            w = t[a][c]
            if w is not None and ((leq[b][c] and not leq[v][w]) or (leq[c][b] and not leq[w][v])):
                return False
        return _assoc_ok(t, n)

    for compose in _fill_tables(n, ok):
        try:
            lres, rres = derive_residuals(compose, leq)
        except NotResiduated:
            continue
        yield ResiduatedSemigroup(FinitePoset.from_matrix(leq), compose, lres, rres)


def _jsl_tables(join):
    n = len(join)

    def ok(t, a, b):
        if not _assoc_ok(t, n):
            return False
        for x, y, z in product(range(n), repeat=3):
            lhs, p, q = t[x][join[y][z]], t[x][y], t[x][z]
            if None not in (lhs, p, q) and lhs != join[p][q]:
                return False
            lhs, p, q = t[join[x][y]][z], t[x][z], t[y][z]
            if None not in (lhs, p, q) and lhs != join[p][q]:
                return False
        return True

    for compose in _fill_tables(n, ok):
        yield JoinSemilatticeSemigroup(compose, join)


def enumerate_algebras(kind, size, modulo_iso=False, cap=DEFAULT_SIZE_CAP):
    """Yield every algebra of the given kind on ``size`` elements.

    With ``modulo_iso`` one representative per isomorphism class is kept.
    """
    if kind not in KINDS:
        raise MalformedInput(f"unknown kind {kind!r}")
    if size < 1:
        raise MalformedInput("size must be positive")
    if size > cap:
        raise SizeCapExceeded(f"size {size} exceeds cap {cap}")
    orders = poset_representatives(size) if modulo_iso else all_posets(size)
    seen = set()
    for leq in orders:
        if kind == "rs":
            algebras = _rs_tables(leq)
        else:
            join = join_table(leq)
            if join is None:
                continue
            algebras = _jsl_tables(join)
        for alg in algebras:
            if modulo_iso:
                if kind == "rs":
                    key = canonical_form(alg.leq, alg.compose, False)
                else:
                    key = canonical_form(alg.join, alg.compose, True)
                if key in seen:
                    continue
                seen.add(key)
            yield alg
