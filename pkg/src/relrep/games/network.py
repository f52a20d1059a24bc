"""Prenetworks over a join semilattice-ordered semigroup and the moves of the
representability game played on them.

Nodes are integers ``0..n-1``; in game positions node 0 and node 1 are the
two nodes of the round-0 network. Labels are bitmasks of up-closed element
sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from ..algebra import up_close, validate_jsl
from ..bitset import members
from ..errors import IllegalMove, InvalidGoal, MalformedPrenetwork, ValidationError

PRUNE_LEVELS = ("none", "absorbed", "dominance")


@dataclass(frozen=True)
class Prenetwork:
    """``labels`` holds ``((u, v), mask)`` pairs sorted by edge; every listed
    edge is in the edge set, labels may be empty."""

    nodes: int
    labels: tuple = ()

    @classmethod
    def from_dict(cls, nodes, labels):
        return cls(nodes, tuple(sorted(labels.items())))

    @cached_property
    def label_map(self):
        return dict(self.labels)

    def label(self, u, v):
        return self.label_map.get((u, v), 0)

    @property
    def edges(self):
        return [e for e, _ in self.labels]

    def with_labels(self, updates, nodes=None):
        """Copy with ``updates[(u, v)]`` OR-ed into the existing labels."""
        merged = dict(self.labels)
        for edge, mask in updates.items():
            merged[edge] = merged.get(edge, 0) | mask
        return Prenetwork.from_dict(self.nodes if nodes is None else nodes, merged)

    def node_list(self):
        return list(range(self.nodes))


@dataclass
class NetworkCheck:
    saturated: bool
    coherent: bool
    join_prime: bool
    witnesses: list

    @property
    def is_network(self):
        return self.saturated and self.coherent and self.join_prime


def validate_prenetwork(p, alg):
    full = (1 << alg.size) - 1
    for (u, v), mask in p.labels:
        if not (0 <= u < p.nodes and 0 <= v < p.nodes):
            raise MalformedPrenetwork(f"edge {(u, v)} references a missing node")
        if mask & ~full:
            raise MalformedPrenetwork(f"label on {(u, v)} mentions unknown elements")
        if up_close(mask, alg.poset) != mask:
            raise MalformedPrenetwork(f"label on {(u, v)} is not upward closed")


def check_network(p, alg):
    validate_prenetwork(p, alg)
    n, size = p.nodes, alg.size
    op, join = alg.compose, alg.join
    witnesses = []
    saturated = coherent = join_prime = True
    le = alg.leq
    for u, v in product(range(n), repeat=2):
        luv = p.label(u, v)
        for z in members(luv):
            for x, y in product(range(size), repeat=2):
                if le[z][op[x][y]] and not any(
                        p.label(u, w) >> x & 1 and p.label(w, v) >> y & 1 for w in range(n)):
                    saturated = False
                    witnesses.append(("saturation", (u, v, x, y, z)))
        for a, b in product(range(size), repeat=2):
            if luv >> join[a][b] & 1 and not (luv >> a & 1 or luv >> b & 1):
                join_prime = False
                witnesses.append(("join-prime", (u, v, a, b)))
    for u, v, w in product(range(n), repeat=3):
        for b in members(p.label(u, v)):
            for c in members(p.label(v, w)):
                if not p.label(u, w) >> op[b][c] & 1:
                    coherent = False
                    witnesses.append(("coherence", (u, v, w, b, c)))
    return NetworkCheck(saturated, coherent, join_prime, witnesses)


def initial_network(alg, goal):
    a, b = goal
    if not (0 <= a < alg.size and 0 <= b < alg.size):
        raise InvalidGoal(f"goal {goal} out of range")
    if alg.leq[a][b]:
        raise InvalidGoal(f"goal requires a not <= b, but {a} <= {b}")
    return Prenetwork.from_dict(2, {(0, 1): alg.poset.up[a]})


def goal_pairs(alg):
    n = alg.size
    return [(a, b) for a in range(n) for b in range(n) if not alg.leq[a][b]]


def require_jsl(alg):
    report = validate_jsl(alg)
    if not report.ok:
        raise ValidationError("not a join semilattice-ordered semigroup: " + report.summary(), report)


# -- moves -------------------------------------------------------------------

@dataclass(frozen=True)
class Composition:
    x: int
    y: int
    z: int
    b: int
    c: int
    kind = "composition"


@dataclass(frozen=True)
class Witness:
    x: int
    y: int
    d: int
    e: int
    c: int
    kind = "witness"


@dataclass(frozen=True)
class Join:
    x: int
    y: int
    c: int
    d: int
    kind = "join"


def move_to_dict(m):
    out = {"type": m.kind}
    out.update({k: getattr(m, k) for k in m.__dataclass_fields__})
    return out


def move_from_dict(d):
    cls = {"composition": Composition, "witness": Witness, "join": Join}.get(d.get("type"))
    if cls is None:
        raise MalformedPrenetwork(f"unknown move type {d.get('type')!r}")
    return cls(**{k: int(d[k]) for k in cls.__dataclass_fields__})


def _minimal(items, le2):
    """Items not strictly dominated under the preorder ``le2``."""
    return [i for i in items if not any(j != i and le2(j, i) and not le2(i, j) for j in items)]


def legal_forall_moves(p, alg, prune="dominance"):
    """Moves available to the attacker.

    ``none``: every instance of the three move rules. ``absorbed``: one move
    per distinct effect, dropping moves that cannot change the position.
    ``dominance``: additionally keep only moves adding order-minimal elements,
    which is verdict-preserving because larger labels only help the attacker.
    """
    if prune not in PRUNE_LEVELS:
        raise ValueError(f"prune must be one of {PRUNE_LEVELS}")
    n, size = p.nodes, alg.size
    op, join, le = alg.compose, alg.join, alg.leq
    edges = [(e, m) for e, m in p.labels if m]
    moves = []

    # composition
    comp = {}
    for (x, y), lxy in edges:
        for z in range(n):
            lyz = p.label(y, z)
            for b in members(lxy):
                for c in members(lyz):
                    m = Composition(x, y, z, b, c)
                    if prune == "none":
                        moves.append(m)
                        continue
                    k = op[b][c]
                    if p.label(x, z) >> k & 1:
                        continue
                    comp.setdefault((x, z), {}).setdefault(k, m)
    for (x, z), by_elem in comp.items():
        keep = by_elem
        if prune == "dominance":
            keep = {k: by_elem[k] for k in _minimal(list(by_elem), lambda i, j: le[i][j])}
        moves.extend(keep[k] for k in sorted(keep))

    # witness
    for (x, y), lxy in edges:
        found = {}
        for d, e in product(range(size), repeat=2):
            de = op[d][e]
            justs = [c for c in members(lxy) if le[c][de]]
            if prune == "none":
                moves.extend(Witness(x, y, d, e, c) for c in justs)
                continue
            if not justs:
                continue
            if any(p.label(x, w) >> d & 1 and p.label(w, y) >> e & 1 for w in range(n)):
                continue
            found[(d, e)] = Witness(x, y, d, e, justs[0])
        keys = list(found)
        if prune == "dominance":
            keys = _minimal(keys, lambda s, t: le[s[0]][t[0]] and le[s[1]][t[1]])
        moves.extend(found[k] for k in sorted(keys))

    # join
    for (x, y), lxy in edges:
        found = {}
        for c, d in product(range(size), repeat=2):
            if not lxy >> join[c][d] & 1:
                continue
            if prune == "none":
                moves.append(Join(x, y, c, d))
                continue
            if lxy >> c & 1 or lxy >> d & 1 or (d, c) in found:
                continue
            found[(c, d)] = Join(x, y, c, d)
        keys = list(found)
        if prune == "dominance":
            keys = _minimal(keys, lambda s, t: (le[s[0]][t[0]] and le[s[1]][t[1]])
                            or (le[s[0]][t[1]] and le[s[1]][t[0]]))
        moves.extend(found[k] for k in sorted(keys))
    return moves


def is_legal(p, m, alg):
    n = p.nodes
    if isinstance(m, Composition):
        return (all(0 <= v < n for v in (m.x, m.y, m.z))
                and p.label(m.x, m.y) >> m.b & 1 == 1
                and p.label(m.y, m.z) >> m.c & 1 == 1)
    if isinstance(m, Witness):
        return ((m.x, m.y) in p.label_map
                and all(0 <= e < alg.size for e in (m.d, m.e))
                and p.label(m.x, m.y) >> m.c & 1 == 1
                and alg.leq[m.c][alg.compose[m.d][m.e]])
    if isinstance(m, Join):
        return ((m.x, m.y) in p.label_map
                and all(0 <= e < alg.size for e in (m.c, m.d))
                and p.label(m.x, m.y) >> alg.join[m.c][m.d] & 1 == 1)
    return False


def exists_responses(p, m, alg):
    """Successor positions the defender may choose after ``m``.

    Witness responses list the existing nodes in order, then one fresh node.
    """
    if not is_legal(p, m, alg):
        raise IllegalMove(f"{m} is not legal here")
    up = alg.poset.up
    if isinstance(m, Composition):
        k = alg.compose[m.b][m.c]
        return [p.with_labels({(m.x, m.z): up[k]})]
    if isinstance(m, Witness):
        out = []
        for z in range(p.nodes + 1):
            # labels are OR-ed, so x == z or z == y need no special casing
            out.append(p.with_labels({(m.x, z): up[m.d]}, nodes=max(p.nodes, z + 1)))
            out[-1] = out[-1].with_labels({(z, m.y): up[m.e]})
        return out
    return [p.with_labels({(m.x, m.y): up[m.c]}), p.with_labels({(m.x, m.y): up[m.d]})]


def forall_has_won(p, goal):
    return bool(p.label(0, 1) >> goal[1] & 1)
