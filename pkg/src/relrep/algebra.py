"""Finite ordered algebras: posets, residuated semigroups and join
semilattice-ordered semigroups, with law checking, residual derivation,
cone utilities and term evaluation.

Elements are integers ``0..n-1``. Element sets are int bitmasks
(see :mod:`relrep.bitset`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Mapping

from .bitset import full_mask, members, to_mask
from .errors import InvalidSemilattice, MalformedInput, NotResiduated, UnboundVariable

DEFAULT_CAP = 32


def _square(table, name, n=None, values=None):
    rows = tuple(tuple(int(x) for x in row) for row in table)
    size = len(rows) if n is None else n
    if len(rows) != size or any(len(r) != size for r in rows):
        raise MalformedInput(f"{name} must be a {size}x{size} table")
    if values is not None:
        for row in rows:
            for x in row:
                if not 0 <= x < values:
                    raise MalformedInput(f"{name} entry {x} out of range [0, {values})")
    return rows


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    cap: int = DEFAULT_CAP
    diagnostics: dict = field(default_factory=dict)
    _counts: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self):
        return not self.violations

    def add(self, law, witness):
        n = self._counts.get(law, 0)
        self._counts[law] = n + 1
        if n < self.cap:
            self.violations.append((law, tuple(witness)))

    def extend(self, other):
        for law, witness in other.violations:
            self.add(law, witness)

    def laws(self):
        return sorted({law for law, _ in self.violations})

    def summary(self):
        if self.ok:
            return "ok"
        parts = [f"{law} x{self._counts.get(law, 1)}" for law in self.laws()]
        return "violations: " + ", ".join(parts)


@dataclass(frozen=True)
class FinitePoset:
    leq: tuple

    @classmethod
    def from_matrix(cls, leq):
        rows = tuple(tuple(bool(x) for x in row) for row in leq)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise MalformedInput("order matrix must be non-empty and square")
        return cls(rows)

    @property
    def size(self):
        return len(self.leq)

    @cached_property
    def up(self):
        """``up[a]`` is the mask of ``{x : a <= x}``."""
        return tuple(to_mask(x for x in range(self.size) if self.leq[a][x])
                     for a in range(self.size))

    @cached_property
    def down(self):
        return tuple(to_mask(x for x in range(self.size) if self.leq[x][a])
                     for a in range(self.size))

    def le(self, a, b):
        return self.leq[a][b]


def validate_poset(leq, cap=DEFAULT_CAP):
    rows = [list(r) for r in leq]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MalformedInput("order matrix must be square")
    report = ValidationReport(cap=cap)
    _check_order(rows, n, report)
    return report


def _check_order(leq, n, report):
    for a in range(n):
        if not leq[a][a]:
            report.add("reflexive", (a,))
    for a, b in product(range(n), repeat=2):
        if a < b and leq[a][b] and leq[b][a]:
            report.add("antisymmetric", (a, b))
    for a, b, c in product(range(n), repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            report.add("transitive", (a, b, c))


@dataclass(frozen=True)
class ResiduatedSemigroup:
    """``lres[a][c]`` is ``a\\c``; ``rres[c][b]`` is ``c/b``."""

    poset: FinitePoset
    compose: tuple
    lres: tuple
    rres: tuple

    @classmethod
    def build(cls, leq, compose, lres=None, rres=None):
        """Build from plain tables, deriving residuals when they are omitted."""
        poset = FinitePoset.from_matrix(leq)
        n = poset.size
        compose = _square(compose, "compose", n, n)
        if lres is None or rres is None:
            dl, dr = derive_residuals(compose, poset.leq)
            lres = dl if lres is None else lres
            rres = dr if rres is None else rres
        return cls(poset, compose, _square(lres, "lres", n, n), _square(rres, "rres", n, n))

    @property
    def size(self):
        return self.poset.size

    @property
    def leq(self):
        return self.poset.leq

    def mul(self, a, b):
        return self.compose[a][b]

    def ldiv(self, a, c):
        return self.lres[a][c]

    def rdiv(self, c, b):
        return self.rres[c][b]


def _check_semigroup(op, n, report, law="associative"):
    for a, b, c in product(range(n), repeat=3):
        if op[a][op[b][c]] != op[op[a][b]][c]:
            report.add(law, (a, b, c))


def validate_residuated_semigroup(rs, cap=DEFAULT_CAP):
    n = rs.size
    for name in ("compose", "lres", "rres"):
        _square(getattr(rs, name), name, n, n)
    leq, op = rs.leq, rs.compose
    report = ValidationReport(cap=cap)
    _check_order(leq, n, report)
    _check_semigroup(op, n, report)
    for a, b, c in product(range(n), repeat=3):
        if leq[a][b]:
            if not leq[op[a][c]][op[b][c]]:
                report.add("monotone-left", (a, b, c))
            if not leq[op[c][a]][op[c][b]]:
                report.add("monotone-right", (a, b, c))
    for a, b, c in product(range(n), repeat=3):
        middle = leq[op[a][b]][c]
        if leq[b][rs.lres[a][c]] != middle or leq[a][rs.rres[c][b]] != middle:
            report.add("adjunction", (a, b, c))
    return report


def derive_residuals(compose, leq):
    """Return ``(lres, rres)`` as the maxima of the residual candidate sets.

    Raises NotResiduated when a candidate set is not a principal down-set
    (empty, or lacking a maximum).
    """
    poset = leq if isinstance(leq, FinitePoset) else FinitePoset.from_matrix(leq)
    n = poset.size
    op = _square(compose, "compose", n, n)
    le = poset.leq

    def top_of(candidates):
        mask = to_mask(candidates)
        for m in candidates:
            if poset.down[m] == mask:
                return m
        return None

    lres = [[0] * n for _ in range(n)]
    rres = [[0] * n for _ in range(n)]
    for a, c in product(range(n), repeat=2):
        best = top_of([b for b in range(n) if le[op[a][b]][c]])
        if best is None:
            raise NotResiduated(a, c, f"{{b : {a};b <= {c}}} has no maximum")
        lres[a][c] = best
    for c, b in product(range(n), repeat=2):
        best = top_of([a for a in range(n) if le[op[a][b]][c]])
        if best is None:
            raise NotResiduated(c, b, f"{{a : a;{b} <= {c}}} has no maximum")
        rres[c][b] = best
    return tuple(map(tuple, lres)), tuple(map(tuple, rres))


@dataclass(frozen=True)
class JoinSemilatticeSemigroup:
    compose: tuple
    join: tuple

    @classmethod
    def build(cls, compose, join):
        join = _square(join, "join")
        n = len(join)
        if n == 0:
            raise MalformedInput("empty carrier")
        return cls(_square(compose, "compose", n, n), _square(join, "join", n, n))

    @property
    def size(self):
        return len(self.join)

    @cached_property
    def poset(self):
        return FinitePoset.from_matrix(order_from_join(self.join))

    @property
    def leq(self):
        return self.poset.leq

    def mul(self, a, b):
        return self.compose[a][b]

    def plus(self, a, b):
        return self.join[a][b]


def _check_semilattice(join, n, report):
    for a in range(n):
        if join[a][a] != a:
            report.add("join-idempotent", (a,))
    for a, b in product(range(n), repeat=2):
        if a < b and join[a][b] != join[b][a]:
            report.add("join-commutative", (a, b))
    _check_semigroup(join, n, report, law="join-associative")


def validate_jsl(alg, cap=DEFAULT_CAP):
    n = alg.size
    op = _square(alg.compose, "compose", n, n)
    join = _square(alg.join, "join", n, n)
    report = ValidationReport(cap=cap)
    _check_semilattice(join, n, report)
    _check_semigroup(op, n, report)
    for a, b, c in product(range(n), repeat=3):
        if op[a][join[b][c]] != join[op[a][b]][op[a][c]]:
            report.add("left-distributive", (a, b, c))
        if op[join[a][b]][c] != join[op[a][c]][op[b][c]]:
            report.add("right-distributive", (a, b, c))
    return report


def order_from_join(join):
    rows = _square(join, "join")
    n = len(rows)
    for row in rows:
        if any(not 0 <= x < n for x in row):
            raise MalformedInput("join entry out of range")
    report = ValidationReport()
    _check_semilattice(rows, n, report)
    if not report.ok:
        raise InvalidSemilattice("join table is not a semilattice: " + report.summary(), report)
    return tuple(tuple(rows[a][b] == b for b in range(n)) for a in range(n))


# -- cones -------------------------------------------------------------------

def up_close(elements, poset):
    """Smallest up-set containing ``elements`` (a mask)."""
    out = 0
    for e in members(elements):
        out |= poset.up[e]
    return out


def down_cone(a, poset):
    return poset.down[a]


def is_up_closed(mask, poset):
    return up_close(mask, poset) == mask


def carrier_mask(alg):
    return full_mask(alg.size)


# -- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise MalformedInput("variable index must be non-negative")

    def __str__(self):
        return f"v{self.index}"


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Semi:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"({self.left} ; {self.right})"


Term = Var | Plus | Semi


def term_vars(t):
    if isinstance(t, Var):
        return {t.index}
    return term_vars(t.left) | term_vars(t.right)


def eval_term(t, valuation: Mapping[int, int], alg):
    if isinstance(t, Var):
        try:
            return valuation[t.index]
        except KeyError:
            raise UnboundVariable(t.index) from None
    left = eval_term(t.left, valuation, alg)
    right = eval_term(t.right, valuation, alg)
    if isinstance(t, Plus):
        return alg.join[left][right]
    return alg.compose[left][right]

