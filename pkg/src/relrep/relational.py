"""Binary relations over a finite base, generator sets of a finite quantale,
the hat map ``a -> {(g, p) : g in G, g <= a;p}`` and the end-to-end
representation of a finite residuated semigroup.

A relation is stored as a tuple of row bitmasks: bit ``y`` of ``rows[x]``
is set iff ``(x, y)`` is in the relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import ValidationReport, validate_residuated_semigroup
from .bitset import full_mask, members
from .completion import build_quantale, dm_embed
from .errors import BaseMismatch, InvalidGenerators, ValidationError


@dataclass(frozen=True)
class FiniteBase:
    labels: tuple

    def __post_init__(self):
        if not self.labels:
            raise ValueError("base must be non-empty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("base labels must be distinct")

    @classmethod
    def of_size(cls, n):
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self):
        return len(self.labels)


@dataclass(frozen=True)
class Rel:
    base: FiniteBase
    rows: tuple

    def __post_init__(self):
        n = self.base.size
        if len(self.rows) != n or any(r >> n for r in self.rows):
            raise BaseMismatch("relation rows do not match the base size")

    @classmethod
    def from_pairs(cls, base, pairs):
        rows = [0] * base.size
        for x, y in pairs:
            rows[x] |= 1 << y
        return cls(base, tuple(rows))

    @classmethod
    def from_matrix(cls, base, matrix):
        return cls.from_pairs(base, [(x, y) for x, row in enumerate(matrix)
                                     for y, v in enumerate(row) if v])

    @classmethod
    def empty(cls, base):
        return cls(base, (0,) * base.size)

    @classmethod
    def full(cls, base):
        return cls(base, (full_mask(base.size),) * base.size)

    @classmethod
    def identity(cls, base):
        return cls(base, tuple(1 << i for i in range(base.size)))

    def __contains__(self, pair):
        x, y = pair
        return bool(self.rows[x] >> y & 1)

    def pairs(self):
        return [(x, y) for x, row in enumerate(self.rows) for y in members(row)]

    def __len__(self):
        return sum(bin(r).count("1") for r in self.rows)

    def issubset(self, other):
        _same_base(self, other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def union(self, other):
        _same_base(self, other)
        return Rel(self.base, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def intersection(self, other):
        _same_base(self, other)
        return Rel(self.base, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def domain(self):
        return [x for x, row in enumerate(self.rows) if row]


def _same_base(r, s):
    if r.base != s.base:
        raise BaseMismatch("relations live on different bases")


def rel_compose(r, s):
    _same_base(r, s)
    rows = []
    for row in r.rows:
        out = 0
        for y in members(row):
            out |= s.rows[y]
        rows.append(out)
    return Rel(r.base, tuple(rows))


def _columns(r):
    n = r.base.size
    cols = [0] * n
    for x, row in enumerate(r.rows):
        for y in members(row):
            cols[y] |= 1 << x
    return cols


def rel_lres(a, b):
    """``{(x, y) : for all z, (z, x) in a implies (z, y) in b}``."""
    _same_base(a, b)
    ca, cb = _columns(a), _columns(b)
    n = a.base.size
    rows = []
    for x in range(n):
        rows.append(sum(1 << y for y in range(n) if ca[x] & ~cb[y] == 0))
    return Rel(a.base, tuple(rows))


def rel_rres(a, b):
    """``{(x, y) : for all z, (y, z) in b implies (x, z) in a}``."""
    _same_base(a, b)
    n = a.base.size
    rows = []
    for x in range(n):
        rows.append(sum(1 << y for y in range(n) if b.rows[y] & ~a.rows[x] == 0))
    return Rel(a.base, tuple(rows))


def is_transitive(r):
    return rel_compose(r, r).issubset(r)


# -- generators ----------------------------------------------------------------

def check_generators(Q, G):
    G = sorted(set(G))
    report = ValidationReport()
    le = Q.leq
    for q in range(Q.size):
        below = [g for g in G if le[g][q]]
        if not le[q][Q.sup(below)]:
            report.add("covering", (q,))
    for g, q1, q2 in product(G, range(Q.size), range(Q.size)):
        if le[g][Q.mul(q1, q2)]:
            if not any(le[r][q2] and le[g][Q.mul(q1, r)] for r in G):
                report.add("factorization", (g, q1, q2))
    return report


def minimize_generators(Q):
    """Greedy removal from the full carrier, in canonical order; never
    removes the last generator, since an empty set maps every element to the
    empty relation."""
    G = list(range(Q.size))
    for q in range(Q.size):
        if len(G) == 1:
            break
        trial = [g for g in G if g != q]
        if check_generators(Q, trial).ok:
            G = trial
    return frozenset(G)


def quantale_base(Q, names=None):
    labels = []
    for s in Q.sets:
        pts = [names[e] if names else str(e) for e in members(s)]
        labels.append("{" + ",".join(pts) + "}")
    return FiniteBase(tuple(labels))


def hat(a, Q, G, base=None, checked=False):
    if not checked:
        report = check_generators(Q, G)
        if not report.ok:
            raise InvalidGenerators("not a generator set: " + report.summary(), report)
    base = base or quantale_base(Q)
    le = Q.leq
    rows = [0] * Q.size
    for g in G:
        rows[g] = sum(1 << p for p in range(Q.size) if le[g][Q.mul(a, p)])
    return Rel(base, tuple(rows))


# -- representation --------------------------------------------------------------

@dataclass(frozen=True)
class Representation:
    base: FiniteBase
    relations: tuple

    def __post_init__(self):
        if any(r.base != self.base for r in self.relations):
            raise BaseMismatch("all relations must share the representation base")

    def __getitem__(self, a):
        return self.relations[a]

    def __len__(self):
        return len(self.relations)


def represent(rs, minimize=False, names=None):
    report = validate_residuated_semigroup(rs)
    if not report.ok:
        raise ValidationError("not a residuated semigroup: " + report.summary(), report)
    Q = build_quantale(rs)
    G = minimize_generators(Q) if minimize else frozenset(range(Q.size))
    gen_report = check_generators(Q, G)
    if not gen_report.ok:
        raise InvalidGenerators("generator set rejected: " + gen_report.summary(), gen_report)
    base = quantale_base(Q, names)
    hats = {}
    rels = []
    for a in range(rs.size):
        q = dm_embed(a, rs, Q)
        if q not in hats:
            hats[q] = hat(q, Q, G, base, checked=True)
        rels.append(hats[q])
    return Representation(base, tuple(rels))


def verify_representation(rs, rep):
    """Hard checks: injectivity, order, composition and both residuals.

    Diagnostics (never failures): transitivity of the union of all relations,
    whether every base point is in the domain of that union, and whether the
    residual equalities hold once the relational residuals are intersected
    with the union.
    """
    if len(rep) != rs.size:
        raise BaseMismatch("representation is not total on the carrier")
    base = rep.base
    for r in rep.relations:
        if r.base != base:
            raise BaseMismatch("relations do not share the base")
    n = rs.size
    report = ValidationReport()
    for a, b in product(range(n), repeat=2):
        ra, rb = rep[a], rep[b]
        if a < b and ra == rb:
            report.add("injective", (a, b))
        if rs.leq[a][b] != ra.issubset(rb):
            report.add("order", (a, b))
        if rep[rs.compose[a][b]] != rel_compose(ra, rb):
            report.add("compose", (a, b))
        if rep[rs.lres[a][b]] != rel_lres(ra, rb):
            report.add("left-residual", (a, b))
        if rep[rs.rres[a][b]] != rel_rres(ra, rb):
            report.add("right-residual", (a, b))

    union = Rel.empty(base)
    for r in rep.relations:
        union = union.union(r)
    relative = all(
        rep[rs.lres[a][b]] == rel_lres(rep[a], rep[b]).intersection(union)
        and rep[rs.rres[a][b]] == rel_rres(rep[a], rep[b]).intersection(union)
        for a, b in product(range(n), repeat=2)
    )
    report.diagnostics = {
        "union_transitive": is_transitive(union),
        "base_is_domain": len(union.domain()) == base.size,
        "residuals_relative_to_union": relative,
    }
    return report
