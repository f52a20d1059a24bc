"""First-order sentences saying the defender survives ``n`` rounds, built
from term networks, together with a printer, a parser and a finite-model
evaluator.

Text syntax (fully parenthesised, ASCII)::

    term    ::= vN | (term + term) | (term ; term)
    formula ::= true | false | term <= term | ~formula
              | (formula & formula & ...) | (formula | formula | ...)
              | (formula -> formula) | forall vN. formula | exists vN. formula
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from ..algebra import Plus, Semi, Var, eval_term, term_vars
from ..errors import ParseError, UnboundVariable


@dataclass(frozen=True)
class Leq:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    premise: object
    conclusion: object


@dataclass(frozen=True)
class Forall:
    var: int
    body: object


@dataclass(frozen=True)
class Exists:
    var: int
    body: object


TRUE = And(())
FALSE = Or(())


def conj(parts):
    parts = tuple(p for p in parts if p != TRUE)
    if any(p == FALSE for p in parts):
        return FALSE
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts):
    parts = tuple(p for p in parts if p != FALSE)
    if any(p == TRUE for p in parts):
        return TRUE
    return parts[0] if len(parts) == 1 else Or(parts)


# -- printing and parsing ------------------------------------------------------

def to_text(f):
    out = []
    _emit(f, out)
    return "".join(out)


def _emit(f, out):
    # explicit stack keeps deep sentences away from the recursion limit
    stack = [f]
    while stack:
        f = stack.pop()
        if isinstance(f, str):
            out.append(f)
        elif isinstance(f, Leq):
            out.append(f"{f.left} <= {f.right}")
        elif isinstance(f, Not):
            out.append("~")
            stack.append(f.body)
        elif isinstance(f, (And, Or)):
            if not f.parts:
                out.append("true" if isinstance(f, And) else "false")
                continue
            sep = " & " if isinstance(f, And) else " | "
            items = ["("]
            for i, p in enumerate(f.parts):
                if i:
                    items.append(sep)
                items.append(p)
            items.append(")")
            stack.extend(reversed(items))
        elif isinstance(f, Implies):
            stack.extend(reversed(["(", f.premise, " -> ", f.conclusion, ")"]))
        elif isinstance(f, (Forall, Exists)):
            q = "forall" if isinstance(f, Forall) else "exists"
            out.append(f"{q} v{f.var}. ")
            stack.append(f.body)
        else:
            raise TypeError(f"not a formula: {f!r}")


_TOKEN = re.compile(r"\s*(?:(v\d+)|(forall|exists|true|false)|(<=|->|[()~&|+;.]))")


def _tokenize(text):
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            pos = len(text) - len(text[pos:].lstrip())
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        tokens.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def error(self, msg):
        pos = self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return ParseError(msg, line, col)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise self.error(f"expected {expected or 'token'}, found {tok!r}")
        self.i += 1
        return tok

    def var(self):
        tok = self.take()
        if not tok.startswith("v"):
            raise self.error(f"expected variable, found {tok!r}")
        return int(tok[1:])

    def term(self):
        if self.peek() == "(":
            self.take("(")
            left = self.term()
            op = self.take()
            if op not in "+;":
                raise self.error(f"expected + or ;, found {op!r}")
            right = self.term()
            self.take(")")
            return Plus(left, right) if op == "+" else Semi(left, right)
        return Var(self.var())

    def formula(self):
        tok = self.peek()
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if tok == "~":
            self.take()
            return Not(self.formula())
        if tok in ("forall", "exists"):
            self.take()
            v = self.var()
            self.take(".")
            body = self.formula()
            return Forall(v, body) if tok == "forall" else Exists(v, body)
        if tok == "(":
            start = self.i
            try:
                return self.atom()
            except ParseError:
                self.i = start
            self.take("(")
            first = self.formula()
            op = self.take()
            if op == "->":
                second = self.formula()
                self.take(")")
                return Implies(first, second)
            if op not in ("&", "|"):
                raise self.error(f"expected connective, found {op!r}")
            parts = [first, self.formula()]
            while self.peek() == op:
                self.take(op)
                parts.append(self.formula())
            self.take(")")
            return And(tuple(parts)) if op == "&" else Or(tuple(parts))
        return self.atom()

    def atom(self):
        left = self.term()
        self.take("<=")
        return Leq(left, self.term())


def parse_formula(text):
    p = _Parser(text)
    f = p.formula()
    if p.peek() is not None:
        raise p.error("trailing input")
    return f


# -- evaluation ----------------------------------------------------------------

def free_vars(f):
    if isinstance(f, Leq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        out = set()
        for p in f.parts:
            out |= free_vars(p)
        return out
    if isinstance(f, Implies):
        return free_vars(f.premise) | free_vars(f.conclusion)
    return free_vars(f.body) - {f.var}


def eval_formula(f, alg, valuation=None):
    """Truth of ``f`` in the finite algebra; quantifiers range over the carrier."""
    env = dict(valuation or {})
    return _eval(f, alg, env)


def _eval(f, alg, env):
    if isinstance(f, Leq):
        a = eval_term(f.left, env, alg)
        b = eval_term(f.right, env, alg)
        return alg.join[a][b] == b
    if isinstance(f, Not):
        return not _eval(f.body, alg, env)
    if isinstance(f, And):
        return all(_eval(p, alg, env) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval(p, alg, env) for p in f.parts)
    if isinstance(f, Implies):
        return not _eval(f.premise, alg, env) or _eval(f.conclusion, alg, env)
    if isinstance(f, (Forall, Exists)):
        saved = env.get(f.var)
        test = all if isinstance(f, Forall) else any
        try:
            return test(_eval_with(f, alg, env, x) for x in range(alg.size))
        finally:
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
    raise TypeError(f"not a formula: {f!r}")


def _eval_with(f, alg, env, x):
    env[f.var] = x
    return _eval(f.body, alg, env)


# -- term networks and the sentences ------------------------------------------

@dataclass(frozen=True)
class TermNetwork:
    """Finite network whose labels are tuples of terms; nodes 0 and 1 carry
    the goal edge."""

    nodes: int
    labels: tuple = ()

    @classmethod
    def single(cls, term):
        return cls(2, (((0, 1), (term,)),))

    def label(self, u, v):
        return dict(self.labels).get((u, v), ())

    def add(self, updates, nodes=None):
        merged = dict(self.labels)
        for edge, term in updates:
            old = merged.get(edge, ())
            if term not in old:
                merged[edge] = old + (term,)
        return TermNetwork(self.nodes if nodes is None else nodes, tuple(sorted(
            merged.items(), key=lambda kv: kv[0])))

    def max_var(self):
        out = -1
        for _, terms in self.labels:
            for t in terms:
                out = max(out, *term_vars(t))
        return out


class _Fresh:
    def __init__(self, start):
        self.next = start

    def __call__(self):
        v = self.next
        self.next += 1
        return v


def emit_sigma(n, network, goal_var, _fresh=None):
    """Sentence (free in the network's variables and ``goal_var``) true iff the
    defender survives ``n`` rounds from the network's valuation, with goal
    ``goal_var``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    goal = goal_var if not isinstance(goal_var, int) else Var(goal_var)
    fresh = _fresh or _Fresh(max(network.max_var(), *term_vars(goal)) + 1)
    if n == 0:
        return conj(Not(Leq(t, goal)) for t in network.label(0, 1))

    nodes = range(network.nodes)
    edges = [(e, ts) for e, ts in network.labels if ts]
    parts = []
    # composition moves
    for (x, y), lxy in edges:
        for z in nodes:
            for t1 in lxy:
                for t2 in network.label(y, z):
                    parts.append(emit_sigma(n - 1, network.add([((x, z), Semi(t1, t2))]),
                                            goal, fresh))
    # witness moves: old nodes and one fresh node
    for (x, y), lxy in edges:
        for t in lxy:
            u1, u2 = fresh(), fresh()
            options = []
            for w in range(network.nodes + 1):
                ext = network.add([((x, w), Var(u1)), ((w, y), Var(u2))],
                                  nodes=max(network.nodes, w + 1))
                options.append(emit_sigma(n - 1, ext, goal, fresh))
            parts.append(Forall(u1, Forall(u2, Implies(
                Leq(t, Semi(Var(u1), Var(u2))), disj(options)))))
    # join moves, restricted to sums already in the label
    for (x, y), lxy in edges:
        a, b = fresh(), fresh()
        inside = disj(Leq(t, Plus(Var(a), Var(b))) for t in lxy)
        split = disj([emit_sigma(n - 1, network.add([((x, y), Var(a))]), goal, fresh),
                      emit_sigma(n - 1, network.add([((x, y), Var(b))]), goal, fresh)])
        parts.append(Forall(a, Forall(b, Implies(inside, split))))
    return conj(parts)


def emit_rho(n):
    """``forall v0 forall v1 (~(v0 <= v1) -> sigma_n(N_v0, v1))``."""
    v0, v1 = Var(0), Var(1)
    body = emit_sigma(n, TermNetwork.single(v0), v1)
    return Forall(0, Forall(1, Implies(Not(Leq(v0, v1)), body)))


def formula_size(f):
    if isinstance(f, Leq):
        return 1
    if isinstance(f, (And, Or)):
        return 1 + sum(formula_size(p) for p in f.parts)
    if isinstance(f, Implies):
        return 1 + formula_size(f.premise) + formula_size(f.conclusion)
    return 1 + formula_size(f.body)


def valuations(variables, size):
    variables = sorted(variables)
    for values in product(range(size), repeat=len(variables)):
        yield dict(zip(variables, values))


__all__ = [
    "And", "Exists", "FALSE", "Forall", "Implies", "Leq", "Not", "Or", "TRUE",
    "TermNetwork", "emit_rho", "emit_sigma", "eval_formula", "formula_size",
    "free_vars", "parse_formula", "to_text", "UnboundVariable",
]
