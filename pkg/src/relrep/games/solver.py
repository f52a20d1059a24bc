"""Bounded minimax for the representability game, with a memo keyed on
canonicalised positions, certificate extraction and certificate replay."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial

from ..errors import DepthCapExceeded, MalformedCertificate
from .network import (
    Prenetwork,
    exists_responses,
    forall_has_won,
    goal_pairs,
    initial_network,
    is_legal,
    legal_forall_moves,
    move_from_dict,
    move_to_dict,
    require_jsl,
)

EXISTS = "EXISTS"
FORALL = "FORALL"
DEFAULT_DEPTH_CAP = 6
PERMUTATION_LIMIT = 720


def canonical_key(p):
    """Isomorphism-invariant-ish key fixing nodes 0 and 1.

    Non-root nodes are ordered by a local signature; ties are broken by trying
    every permutation inside each tie class when that is cheap, otherwise by
    original index. Any relabelling gives a sound key, only the hit rate varies.
    """
    n = p.nodes
    lab = p.label_map
    others = list(range(2, n))

    def signature(u):
        outs = sorted(m for (s, _), m in lab.items() if s == u)
        ins = sorted(m for (_, t), m in lab.items() if t == u)
        return (lab.get((0, u), 0), lab.get((u, 0), 0), lab.get((1, u), 0),
                lab.get((u, 1), 0), lab.get((u, u), 0), tuple(outs), tuple(ins))

    sig = {u: signature(u) for u in others}
    others.sort(key=lambda u: (sig[u], u))
    classes = []
    for u in others:
        if classes and sig[classes[-1][0]] == sig[u]:
            classes[-1].append(u)
        else:
            classes.append([u])
    count = 1
    for c in classes:
        count *= factorial(len(c))

    def encode(order):
        pos = {0: 0, 1: 1}
        for i, u in enumerate(order):
            pos[u] = i + 2
        return (n, tuple(sorted(((pos[u], pos[v]), m) for (u, v), m in lab.items() if m)))

    if count == 1 or count > PERMUTATION_LIMIT:
        return encode(others)
    best = None
    for choice in product(*(permutations(c) for c in classes)):
        key = encode([u for block in choice for u in block])
        if best is None or key < best:
            best = key
    return best


@dataclass
class GameSolver:
    """Memoised solver for one algebra and one goal.

    ``memo[key] = (exists_depth, forall_depth)``: the defender survives
    ``exists_depth`` further rounds, the attacker wins within ``forall_depth``.
    """

    alg: object
    goal: tuple
    prune: str = "dominance"
    memo: dict = field(default_factory=dict)
    canonicalize: bool = True

    def key(self, p):
        return canonical_key(p) if self.canonicalize else (p.nodes, p.labels)

    def value(self, p, k):
        if forall_has_won(p, self.goal):
            return FORALL
        if k == 0:
            return EXISTS
        key = self.key(p)
        ex, fa = self.memo.get(key, (-1, None))
        if k <= ex:
            return EXISTS
        if fa is not None and k >= fa:
            return FORALL
        if self.winning_move(p, k) is not None:
            self.memo[key] = (ex, k if fa is None else min(fa, k))
            return FORALL
        self.memo[key] = (max(ex, k), fa)
        return EXISTS

    def winning_move(self, p, k):
        for m in legal_forall_moves(p, self.alg, self.prune):
            if all(self.value(q, k - 1) == FORALL for q in exists_responses(p, m, self.alg)):
                return m
        return None

    def defending_response(self, p, m, k):
        """Index of the first response that survives ``k`` more rounds."""
        for i, q in enumerate(exists_responses(p, m, self.alg)):
            if self.value(q, k) == EXISTS:
                return i
        return None

    def certificate(self, p, k):
        node = {"position": position_to_dict(p)}
        if forall_has_won(p, self.goal):
            node["move"] = None
            node["children"] = []
            return node
        m = self.winning_move(p, k)
        if m is None:
            raise ValueError("position is not a win for the attacker")
        node["move"] = move_to_dict(m)
        node["children"] = [self.certificate(q, k - 1) for q in exists_responses(p, m, self.alg)]
        return node


@dataclass
class Verdict:
    goal: tuple
    depth: int
    winner: str
    certificate: dict = None

    def to_dict(self):
        out = {"goal": list(self.goal), "winner": self.winner}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _check_depth(n, cap):
    if n < 0:
        raise ValueError("depth must be non-negative")
    if n > cap:
        raise DepthCapExceeded(f"depth {n} exceeds cap {cap}")


def solve_goal(alg, goal, n, prune="dominance", certificates=True, solver=None):
    solver = solver or GameSolver(alg, tuple(goal), prune)
    start = initial_network(alg, goal)
    winner = solver.value(start, n)
    cert = solver.certificate(start, n) if winner == FORALL and certificates else None
    return Verdict(tuple(goal), n, winner, cert)


def solve_game(alg, n, goal=None, prune="dominance", depth_cap=DEFAULT_DEPTH_CAP,
               certificates=True, validate=True):
    """Verdict for one goal, or ``{goal: Verdict}`` over every goal when
    ``goal`` is omitted."""
    _check_depth(n, depth_cap)
    if validate:
        require_jsl(alg)
    if goal is not None:
        return solve_goal(alg, tuple(goal), n, prune, certificates)
    return {g: solve_goal(alg, g, n, prune, certificates) for g in goal_pairs(alg)}


def all_goals_exist(alg, n, **kw):
    return all(v.winner == EXISTS for v in solve_game(alg, n, certificates=False, **kw).values())


# -- serialisation and replay --------------------------------------------------

def position_to_dict(p):
    return {
        "nodes": p.nodes,
        "labels": [[u, v, mask] for (u, v), mask in p.labels],
    }


def position_from_dict(d):
    try:
        return Prenetwork(int(d["nodes"]),
                          tuple(sorted(((int(u), int(v)), int(m)) for u, v, m in d["labels"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(f"bad position: {exc}") from None


def verify_certificate(alg, goal, cert, n):
    """Replay ``cert`` from the round-0 network against every defender
    response; True iff every branch ends in an attacker win within ``n``
    rounds using only legal moves and recorded positions match."""
    if not isinstance(cert, dict):
        raise MalformedCertificate("certificate must be a mapping")
    return _replay(alg, tuple(goal), cert, initial_network(alg, goal), n)


def _replay(alg, goal, node, p, k):
    if not isinstance(node, dict) or "position" not in node:
        raise MalformedCertificate("certificate node lacks a position")
    if position_from_dict(node["position"]) != p:
        return False
    move = node.get("move")
    if move is None:
        return forall_has_won(p, goal)
    if k <= 0:
        return False
    try:
        m = move_from_dict(move)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(f"bad move: {exc}") from None
    if not is_legal(p, m, alg):
        return False
    responses = exists_responses(p, m, alg)
    children = node.get("children") or []
    if len(children) != len(responses):
        return False
    return all(_replay(alg, goal, c, q, k - 1) for c, q in zip(children, responses))
