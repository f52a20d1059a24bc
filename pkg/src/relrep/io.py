"""JSON file formats for algebras, representations and game verdicts.

Output is canonical: keys sorted, one top-level key per line, integers only,
so files are byte-stable across runs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .algebra import (
    JoinSemilatticeSemigroup,
    ResiduatedSemigroup,
    validate_jsl,
    validate_poset,
    validate_residuated_semigroup,
)
from .errors import MalformedInput, ParseError, ValidationError
from .relational import FiniteBase, Rel, Representation


def dumps(obj):
    """Canonical text: sorted keys, each top-level value on its own line."""
    if not isinstance(obj, dict):
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    lines = [
        f"  {json.dumps(k)}: {json.dumps(obj[k], sort_keys=True, separators=(', ', ': '))}"
        for k in sorted(obj)
    ]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def loads(data):
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


@dataclass(frozen=True)
class AlgebraFile:
    kind: str
    names: tuple
    algebra: object
    explicit_residuals: bool = False

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise MalformedInput(f"unknown element {name!r}") from None


def _table(doc, key, required=True):
    if key not in doc:
        if required:
            raise MalformedInput(f"missing field {key!r}")
        return None
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise MalformedInput(f"field {key!r} must be a list of rows")
    for row in value:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise MalformedInput(f"field {key!r} must contain integers")
    return value


def algebra_from_doc(doc):
    if not isinstance(doc, dict):
        raise MalformedInput("algebra file must be a JSON object")
    kind = doc.get("kind")
    if kind not in ("rs", "jsl"):
        raise MalformedInput("kind must be 'rs' or 'jsl'")
    names = doc.get("elements")
    if not isinstance(names, list) or not names or not all(isinstance(x, str) for x in names):
        raise MalformedInput("elements must be a non-empty list of names")
    if len(set(names)) != len(names):
        raise MalformedInput("element names must be distinct")
    compose = _table(doc, "compose")
    if kind == "rs":
        order = _table(doc, "order")
        report = validate_poset(order)
        if not report.ok:
            raise ValidationError("order is not a partial order: " + report.summary(), report)
        lres = _table(doc, "left_residual", required=False)
        rres = _table(doc, "right_residual", required=False)
        if (lres is None) != (rres is None):
            raise MalformedInput("give both residual tables or neither")
        alg = ResiduatedSemigroup.build(order, compose, lres, rres)
        if alg.size != len(names):
            raise MalformedInput("table size does not match the element list")
        report = validate_residuated_semigroup(alg)
        explicit = lres is not None
    else:
        alg = JoinSemilatticeSemigroup.build(compose, _table(doc, "join"))
        if alg.size != len(names):
            raise MalformedInput("table size does not match the element list")
        for row in alg.compose + alg.join:
            if any(not 0 <= x < alg.size for x in row):
                raise MalformedInput("table entry out of range")
        report = validate_jsl(alg)
        explicit = False
    if not report.ok:
        raise ValidationError(f"not a valid {kind} algebra: " + report.summary(), report)
    return AlgebraFile(kind, tuple(names), alg, explicit)


def parse_algebra(data):
    return algebra_from_doc(loads(data))


def algebra_to_doc(af):
    alg = af.algebra
    doc = {"kind": af.kind, "elements": list(af.names),
           "compose": [list(r) for r in alg.compose]}
    if af.kind == "rs":
        doc["order"] = [[int(x) for x in r] for r in alg.leq]
        if af.explicit_residuals:
            doc["left_residual"] = [list(r) for r in alg.lres]
            doc["right_residual"] = [list(r) for r in alg.rres]
    else:
        doc["join"] = [list(r) for r in alg.join]
    return doc


def serialize_algebra(af):
    return dumps(algebra_to_doc(af))


def wrap(alg, names=None, explicit_residuals=False):
    kind = "rs" if isinstance(alg, ResiduatedSemigroup) else "jsl"
    names = tuple(names or (f"e{i}" for i in range(alg.size)))
    return AlgebraFile(kind, names, alg, explicit_residuals)


def algebra_hash(af):
    doc = algebra_to_doc(af)
    doc.pop("elements")
    return hashlib.sha256(dumps(doc).encode()).hexdigest()


# -- representations ---------------------------------------------------------------

def representation_to_doc(rep, names):
    return {
        "base": list(rep.base.labels),
        "relations": {name: [list(p) for p in sorted(r.pairs())] for name, r in zip(names, rep.relations)},
    }


def serialize_representation(rep, names):
    return dumps(representation_to_doc(rep, names))


def parse_representation(data, af):
    doc = loads(data)
    if not isinstance(doc, dict) or "base" not in doc or "relations" not in doc:
        raise MalformedInput("representation file needs 'base' and 'relations'")
    try:
        base = FiniteBase(tuple(str(x) for x in doc["base"]))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    relations = doc["relations"]
    if not isinstance(relations, dict):
        raise MalformedInput("'relations' must map element names to pair lists")
    missing = [n for n in af.names if n not in relations]
    if missing:
        raise MalformedInput(f"no relation for elements {missing}")
    rels = []
    for name in af.names:
        pairs = relations[name]
        for p in pairs:
            if (not isinstance(p, list) or len(p) != 2
                    or not all(isinstance(i, int) and 0 <= i < base.size for i in p)):
                raise MalformedInput(f"bad pair {p!r} for {name!r}")
        rels.append(Rel.from_pairs(base, [tuple(p) for p in pairs]))
    return Representation(base, tuple(rels))


# -- verdicts -----------------------------------------------------------------------

def verdicts_to_doc(af, depth, verdicts, certificates=True):
    goals = []
    for g in sorted(verdicts):
        v = verdicts[g]
        entry = {"goal": [af.names[g[0]], af.names[g[1]]], "winner": v.winner}
        if certificates and v.certificate is not None:
            entry["certificate"] = v.certificate
        goals.append(entry)
    return {"algebra": algebra_hash(af), "depth": depth, "goals": goals}
