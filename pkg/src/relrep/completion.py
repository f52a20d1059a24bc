"""Galois closure ``m = l . u`` on subsets of a finite residuated semigroup and
the finite quantale of m-closed sets.

Closed sets are identified by their position ("SubsetId") in a canonical list
ordered by cardinality, then by sorted member tuple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .bitset import full_mask, members, sort_key, subset
from .errors import InternalError

EXHAUSTIVE_LIMIT = 4
SAMPLE_PAIRS = 10_000
SAMPLE_SEED = 20240917


def lower_bounds(X, rs):
    """``{y : y <= x for all x in X}``; the empty set maps to the carrier."""
    out = full_mask(rs.size)
    for x in members(X):
        out &= rs.poset.down[x]
    return out


def upper_bounds(X, rs):
    out = full_mask(rs.size)
    for x in members(X):
        out &= rs.poset.up[x]
    return out


def galois_closure(X, rs):
    return lower_bounds(upper_bounds(X, rs), rs)


def pointwise_product(X, Y, rs):
    out = 0
    for x in members(X):
        row = rs.compose[x]
        for y in members(Y):
            out |= 1 << row[y]
    return out


def closed_sets(rs):
    """All m-closed subsets, as intersections of principal down-cones plus the
    full carrier, in canonical order."""
    found = {full_mask(rs.size)}
    for cone in rs.poset.down:
        found |= {s & cone for s in found}
    out = sorted(found, key=sort_key)
    for s in out:
        if galois_closure(s, rs) != s:
            raise InternalError(f"intersection {s:b} is not closed")
    return out


@dataclass(frozen=True)
class FiniteQuantale:
    """Quantale on a finite list of closed sets. ``product[i][j]`` is the
    SubsetId of ``m(X_i . X_j)``; the order is inclusion."""

    rs: object
    sets: tuple
    product: tuple
    index: dict = field(compare=False, repr=False)

    @property
    def size(self):
        return len(self.sets)

    @cached_property
    def leq(self):
        return tuple(tuple(subset(a, b) for b in self.sets) for a in self.sets)

    def closure(self, mask):
        return galois_closure(mask, self.rs)

    def id_of(self, mask):
        return self.index[mask]

    def sup(self, ids):
        """Join of an arbitrary family: closure of the union."""
        union = 0
        for i in ids:
            union |= self.sets[i]
        return self.index[self.closure(union)]

    def meet(self, ids):
        inter = full_mask(self.rs.size)
        for i in ids:
            inter &= self.sets[i]
        return self.index[inter]

    @cached_property
    def join_table(self):
        return tuple(tuple(self.sup((i, j)) for j in range(self.size)) for i in range(self.size))

    @property
    def top(self):
        return self.size - 1

    @property
    def bottom(self):
        return 0

    def mul(self, i, j):
        return self.product[i][j]


def build_quantale(rs):
    sets = tuple(closed_sets(rs))
    index = {s: i for i, s in enumerate(sets)}
    table = tuple(
        tuple(index[galois_closure(pointwise_product(x, y, rs), rs)] for y in sets)
        for x in sets
    )
    return FiniteQuantale(rs, sets, table, index)


def check_quantale_laws(Q, max_family=None):
    """Associativity and distribution of the product over every subfamily
    (or every subfamily up to ``max_family`` members)."""
    bad = []
    n = Q.size
    for a, b, c in product(range(n), repeat=3):
        if Q.mul(a, Q.mul(b, c)) != Q.mul(Q.mul(a, b), c):
            bad.append(("associative", (a, b, c)))
    limit = n if max_family is None else min(n, max_family)
    for k in range(limit + 1):
        for fam in combinations(range(n), k):
            s = Q.sup(fam)
            for a in range(n):
                if Q.mul(a, s) != Q.sup(Q.mul(a, q) for q in fam):
                    bad.append(("left-distributive", (a, fam)))
                if Q.mul(s, a) != Q.sup(Q.mul(q, a) for q in fam):
                    bad.append(("right-distributive", (a, fam)))
    return bad


@dataclass
class NucleusReport:
    is_closure: bool
    is_nucleus: bool
    witnesses: list
    exhaustive: bool


def _subset_pairs(n, seed):
    full = 1 << n
    if n <= EXHAUSTIVE_LIMIT:
        return list(product(range(full), repeat=2)), True
    rng = random.Random(seed)
    return [(rng.randrange(full), rng.randrange(full)) for _ in range(SAMPLE_PAIRS)], False


def check_quantic_nucleus(rs, seed=SAMPLE_SEED):
    """Check that m is a closure operator on subsets and that
    ``m(X) . m(Y)`` is contained in ``m(X . Y)``.

    Exhaustive over all subset pairs up to four elements, a seeded sample
    of subset pairs above that.
    """
    pairs, exhaustive = _subset_pairs(rs.size, seed)
    witnesses = []
    closure_ok = nucleus_ok = True
    m = {}

    def close(X):
        if X not in m:
            m[X] = galois_closure(X, rs)
        return m[X]

    for X, Y in pairs:
        mx = close(X)
        if not subset(X, mx) or close(mx) != mx:
            closure_ok = False
            witnesses.append(("closure", (X,)))
        if subset(X, Y) and not subset(mx, close(Y)):
            closure_ok = False
            witnesses.append(("monotone", (X, Y)))
        if not subset(pointwise_product(mx, close(Y), rs), close(pointwise_product(X, Y, rs))):
            nucleus_ok = False
            witnesses.append(("nucleus", (X, Y)))
    return NucleusReport(closure_ok, closure_ok and nucleus_ok, witnesses[:32], exhaustive)


def quantale_residuals(Q):
    """``lres[a][b] = sup{c : a;c <= b}`` and ``rres[b][a] = sup{c : c;a <= b}``,
    with the same index orientation as residuated semigroups."""
    n = Q.size
    le = Q.leq
    lres = tuple(tuple(Q.sup(c for c in range(n) if le[Q.mul(a, c)][b]) for b in range(n))
                 for a in range(n))
    rres = tuple(tuple(Q.sup(c for c in range(n) if le[Q.mul(c, a)][b]) for a in range(n))
                 for b in range(n))
    return lres, rres


def dm_embed(a, rs, Q):
    cone = rs.poset.down[a]
    try:
        return Q.id_of(cone)
    except KeyError:
        raise InternalError(f"down-cone of {a} missing from closed sets") from None
