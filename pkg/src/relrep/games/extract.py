"""Bounded construction of a relational representation candidate from
defender strategies, one saturated network per goal pair."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..algebra import ValidationReport
from ..errors import BudgetExhausted, NotKnownExistsWin
from ..relational import FiniteBase, Rel, Representation, rel_compose
from .network import (
    Composition,
    Join,
    Prenetwork,
    Witness,
    exists_responses,
    forall_has_won,
    goal_pairs,
    initial_network,
    legal_forall_moves,
    require_jsl,
)
from .solver import EXISTS, GameSolver

DEFAULT_LOOKAHEAD = 2
INCONCLUSIVE = "BUDGET-INCONCLUSIVE"


@dataclass
class GoalRun:
    goal: tuple
    network: Prenetwork
    rounds: int
    complete: bool
    note: str = ""


@dataclass
class ExtractionReport:
    status: str
    validation: ValidationReport
    runs: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status == "ok"


def _next_obligation(p, alg, turn):
    """First unmet network obligation, rotating over the three move kinds."""
    moves = legal_forall_moves(p, alg, prune="absorbed")
    kinds = (Composition, Witness, Join)
    for i in range(3):
        kind = kinds[(turn + i) % 3]
        for m in moves:
            if isinstance(m, kind):
                return m
    return None


def _saturate(alg, goal, solver, node_budget, round_budget, lookahead):
    p = initial_network(alg, goal)
    rounds = 0
    while True:
        m = _next_obligation(p, alg, rounds)
        if m is None:
            return GoalRun(goal, p, rounds, True)
        if rounds >= round_budget:
            return GoalRun(goal, p, rounds, False, "round budget reached")
        choice = None
        for q in exists_responses(p, m, alg):
            if q.nodes > node_budget:
                continue
            if solver.value(q, lookahead) == EXISTS:
                choice = q
                break
        if choice is None:
            return GoalRun(goal, p, rounds, False, f"no surviving response to {m} within budget")
        p = choice
        rounds += 1


def saturate_and_extract_rep(alg, node_budget, round_budget, lookahead=DEFAULT_LOOKAHEAD):
    """Play every goal with the attacker scheduling all obligations and the
    defender following a ``lookahead``-round solver strategy; return the
    candidate ``rep(a) = {(x, y) : a in l(x, y)}`` over the disjoint union
    and a report on the join, composition and injectivity laws.
    """
    require_jsl(alg)
    if node_budget < 2 or round_budget < 0:
        raise BudgetExhausted("budgets cannot hold the round-0 network")
    goals = goal_pairs(alg)
    solvers = {}
    for g in goals:
        solvers[g] = GameSolver(alg, g)
        if solvers[g].value(initial_network(alg, g), lookahead) != EXISTS:
            raise NotKnownExistsWin(f"attacker wins goal {g} within {lookahead} rounds")

    if goals:
        runs = [_saturate(alg, g, solvers[g], node_budget, round_budget, lookahead) for g in goals]
    else:
        # a one-element algebra has no goals: one reflexive point carries everything
        full = (1 << alg.size) - 1
        runs = [GoalRun(None, Prenetwork.from_dict(1, {(0, 0): full}), 0, True)]

    labels, offsets = [], []
    for i, run in enumerate(runs):
        offsets.append(len(labels))
        labels.extend(f"g{i}.n{v}" for v in range(run.network.nodes))
    base = FiniteBase(tuple(labels))
    relations = []
    for a in range(alg.size):
        pairs = []
        for run, off in zip(runs, offsets):
            for (u, v), mask in run.network.labels:
                if mask >> a & 1:
                    pairs.append((u + off, v + off))
        relations.append(Rel.from_pairs(base, pairs))
    rep = Representation(base, tuple(relations))

    report = ValidationReport()
    n = alg.size
    for a, b in product(range(n), repeat=2):
        if rep[alg.join[a][b]] != rep[a].union(rep[b]):
            report.add("join", (a, b))
        if rep[alg.compose[a][b]] != rel_compose(rep[a], rep[b]):
            report.add("compose", (a, b))
        if a < b and rep[a] == rep[b]:
            report.add("injective", (a, b))
    for run in runs:
        if run.goal is not None and forall_has_won(run.network, run.goal):
            report.add("goal-separation", run.goal)
    complete = all(r.complete for r in runs)
    status = "ok" if report.ok else (INCONCLUSIVE if not complete else "FAILED")
    report.diagnostics = {"complete": complete, "base_size": base.size}
    return rep, ExtractionReport(status, report, runs)
