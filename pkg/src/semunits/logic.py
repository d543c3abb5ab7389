"""A small stratified Datalog evaluator with weak and strong negation.

Strongly negated atoms use the predicate key ``-p``; after solving, a model
holding both ``p(a)`` and ``-p(a)`` is rejected as inconsistent. Weak
negation (``not``) is evaluated against completed lower strata.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx

from .errors import Inconsistent, NotStratifiable, RuleSyntaxError, UnsafeRule
from .terms import Iri, Literal, compact


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()
    negated: bool = False  # strong negation

    @property
    def key(self) -> str:
        return ("-" if self.negated else "") + self.predicate

    @property
    def variables(self) -> set:
        return {a for a in self.args if isinstance(a, Var)}

    @property
    def ground(self) -> bool:
        return not self.variables

    def substitute(self, binding: dict) -> "Atom":
        return Atom(self.predicate, tuple(binding.get(a, a) if isinstance(a, Var) else a for a in self.args),
                    self.negated)

    def complement(self) -> "Atom":
        return Atom(self.predicate, self.args, not self.negated)

    def __str__(self):
        return format_atom(self)


Fact = Atom


@dataclass(frozen=True)
class Rule:
    head: Atom
    body: tuple = ()
    naf: tuple = ()
    id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        object.__setattr__(self, "naf", tuple(self.naf))
        bound = set().union(*(a.variables for a in self.body)) if self.body else set()
        loose = (self.head.variables | set().union(*(a.variables for a in self.naf))) - bound if self.naf \
            else self.head.variables - bound
        if loose:
            names = ", ".join(sorted(v.name for v in loose))
            raise UnsafeRule(f"variables {names} do not occur in a positive body atom of rule {self.id or self.head}")

    def __str__(self):
        return format_rule(self)


@dataclass
class Program:
    rules: list = field(default_factory=list)
    facts: set = field(default_factory=set)

    def add(self, other: "Program") -> "Program":
        return Program(self.rules + other.rules, self.facts | other.facts)


class Model:
    """A set of ground atoms with a per-predicate index."""

    def __init__(self, atoms: Iterable[Atom] = ()):
        self._index: dict[str, set] = {}
        self.atoms: set = set()
        for a in atoms:
            self.add(a)

    def add(self, atom: Atom) -> bool:
        if atom in self.atoms:
            return False
        self.atoms.add(atom)
        self._index.setdefault(atom.key, set()).add(atom.args)
        return True

    def __contains__(self, atom):
        return atom in self.atoms

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def tuples(self, key: str) -> set:
        return self._index.get(key, set())

    def frozen(self) -> frozenset:
        return frozenset(self.atoms)


def _unify_args(pattern: tuple, ground: tuple, binding: dict) -> dict | None:
    if len(pattern) != len(ground):
        return None
    out = binding
    for p, g in zip(pattern, ground):
        if isinstance(p, Var):
            bound = out.get(p)
            if bound is None:
                if out is binding:
                    out = dict(binding)
                out[p] = g
            elif bound != g:
                return None
        elif p != g:
            return None
    return out


def match_body(body: tuple, model: Model, binding: dict | None = None) -> Iterator[dict]:
    """Enumerate bindings satisfying a conjunction of positive atoms."""
    binding = binding or {}
    if not body:
        yield binding
        return
    # pick the atom with the fewest candidate tuples first
    k = min(range(len(body)), key=lambda j: len(model.tuples(body[j].key)))
    first, rest = body[k], body[:k] + body[k + 1:]
    pattern = first.substitute(binding).args
    for args in sorted(model.tuples(first.key), key=_sort_key):
        b = _unify_args(pattern, args, binding)
        if b is not None:
            yield from match_body(rest, model, b)


def _sort_key(args):
    return tuple((1, a.lexical) if isinstance(a, Literal) else (0, str(a)) for a in args)


def stratify(rules: list[Rule]) -> list[list[Rule]]:
    graph = nx.DiGraph()
    for r in rules:
        graph.add_node(r.head.key)
        for a in r.body:
            _add_edge(graph, a.key, r.head.key, False)
        for a in r.naf:
            _add_edge(graph, a.key, r.head.key, True)
    cond = nx.condensation(graph)
    members = cond.graph["mapping"]
    for u, v, data in graph.edges(data=True):
        if data["negative"] and members[u] == members[v]:
            raise NotStratifiable(f"recursion through negation between {u} and {v}")
    level: dict[int, int] = {}
    for comp in nx.topological_sort(cond):
        best = 0
        for node in cond.nodes[comp]["members"]:
            for q in graph.predecessors(node):
                if members[q] == comp:
                    continue
                step = 1 if graph.edges[q, node]["negative"] else 0
                best = max(best, level[members[q]] + step)
        level[comp] = best
    strata: dict[int, list] = {}
    for r in rules:
        strata.setdefault(level[members[r.head.key]], []).append(r)
    return [strata[k] for k in sorted(strata)]


def _add_edge(graph, src, dst, negative):
    if graph.has_edge(src, dst):
        graph.edges[src, dst]["negative"] |= negative
    else:
        graph.add_edge(src, dst, negative=negative)


def solve(program: Program, check_consistency: bool = True) -> frozenset:
    """Return the stratified model of ``program``."""
    for f in program.facts:
        if not f.ground:
            raise UnsafeRule(f"fact {f} is not ground")
    model = Model(program.facts)
    for stratum in stratify(program.rules):
        changed = True
        while changed:
            changed = False
            for rule in stratum:
                new = []
                for b in match_body(rule.body, model):
                    if any(n.substitute(b) in model for n in rule.naf):
                        continue
                    new.append(rule.head.substitute(b))
                for atom in new:
                    changed |= model.add(atom)
    if check_consistency:
        for atom in model:
            if atom.negated and atom.complement() in model:
                raise Inconsistent(f"both {atom.complement()} and {atom} hold", atom=str(atom.complement()))
    return model.frozen()


# text format --------------------------------------------------------------

def format_term(t, prefixes: dict | None = None) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Literal):
        return '"' + t.lexical.replace("\\", "\\\\").replace('"', '\\"') + '"'
    text = str(t)
    if isinstance(t, Iri) and prefixes:
        short = compact(t, prefixes)
        if short != text:
            return short
        return f"<{text}>"
    if isinstance(t, Iri):
        return f"<{text}>"
    return text


def format_atom(a: Atom, prefixes: dict | None = None) -> str:
    name = ("-" if a.negated else "") + a.predicate
    if not a.args:
        return name
    return f"{name}({', '.join(format_term(x, prefixes) for x in a.args)})"


def format_rule(r: Rule, prefixes: dict | None = None) -> str:
    head = format_atom(r.head, prefixes)
    parts = [format_atom(a, prefixes) for a in r.body] + ["not " + format_atom(a, prefixes) for a in r.naf]
    if not parts:
        return head + "."
    return f"{head} :- {', '.join(parts)}."


def format_program(p: Program, prefixes: dict | None = None) -> str:
    lines = sorted(format_atom(f, prefixes) + "." for f in p.facts)
    lines += [format_rule(r, prefixes) for r in p.rules]
    return "\n".join(lines) + ("\n" if lines else "")


_VAR = re.compile(r"^[a-z][0-9]*$|^\?[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN = re.compile(r'\s*(:-|<[^>]*>|"(?:[^"\\]|\\.)*"|[(),.]|[^\s(),."<]+)')


def _tokens(text: str):
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise RuleSyntaxError(f"unexpected character {text[pos]!r} on line {line}")
        tok = m.group(1)
        line += text.count("\n", pos, m.end())
        pos = m.end()
        if tok.startswith("%"):
            nl = text.find("\n", pos)
            pos = len(text) if nl < 0 else nl
            continue
        yield tok, line
        while pos < len(text) and text[pos].isspace():
            line += text[pos] == "\n"
            pos += 1


def parse_term(tok: str, prefixes: dict | None = None):
    if tok.startswith("<") and tok.endswith(">"):
        return Iri(tok[1:-1])
    if tok.startswith('"'):
        return Literal(re.sub(r"\\(.)", r"\1", tok[1:-1]))
    if _VAR.match(tok):
        return Var(tok.lstrip("?"))
    if prefixes and ":" in tok:
        prefix, local = tok.split(":", 1)
        if prefix in prefixes:
            return Iri(prefixes[prefix] + local)
    return tok


def parse_program(text: str, prefixes: dict | None = None) -> Program:
    """Parse rules written as ``head :- body, not other.`` with ``-p`` for strong negation.

    Variables are single lowercase letters, optionally followed by digits
    (``x``, ``y1``), or any name written with a leading ``?``.
    """
    toks = list(_tokens(text))
    i = 0
    program = Program()

    def peek():
        return toks[i][0] if i < len(toks) else None

    def take(expected=None):
        nonlocal i
        if i >= len(toks):
            raise RuleSyntaxError("unexpected end of program")
        tok, line = toks[i]
        if expected is not None and tok != expected:
            raise RuleSyntaxError(f"expected {expected!r} but found {tok!r} on line {line}")
        i += 1
        return tok

    def atom():
        name = take()
        negated = name.startswith("-") and len(name) > 1
        if negated:
            name = name[1:]
        args = []
        if peek() == "(":
            take("(")
            while True:
                args.append(parse_term(take(), prefixes))
                if peek() == ",":
                    take(",")
                    continue
                take(")")
                break
        return Atom(name, tuple(args), negated)

    n = 0
    while i < len(toks):
        head = atom()
        body, naf = [], []
        if peek() == ":-":
            take(":-")
            while True:
                if peek() == "not":
                    take("not")
                    naf.append(atom())
                else:
                    body.append(atom())
                if peek() == ",":
                    take(",")
                    continue
                break
        take(".")
        if body or naf:
            n += 1
            program.rules.append(Rule(head, tuple(body), tuple(naf), id=f"r{n}"))
        else:
            if not head.ground:
                raise UnsafeRule(f"fact {head} contains variables")
            program.facts.add(head)
    return program
