"""Abstract syntax for the OWL fragment produced by the bridge.

All constructors share one node type, ``Axiom``, with a constructor name and
an argument tuple; structural equality is plain dataclass equality. Names
follow the abstract syntax used in this package and are rendered in OWL
functional-style syntax.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..logic import Var
from ..terms import Iri, Literal, compact

# constructor name -> (functional-syntax name, arity or None for n-ary)
CONSTRUCTORS = {
    "Declaration": ("Declaration", 1),
    "AnnotationAssertion": ("AnnotationAssertion", 3),
    "ClassAssertion": ("ClassAssertion", 2),
    "ObjectPropertyAssertion": ("ObjectPropertyAssertion", 3),
    "NegativeObjectPropertyAssertion": ("NegativeObjectPropertyAssertion", 3),
    "DataPropertyAssertion": ("DataPropertyAssertion", 3),
    "SubClassOf": ("SubClassOf", 2),
    "EquivalentClasses": ("EquivalentClasses", 2),
    "DisjointClasses": ("DisjointClasses", 2),
    "SameIndividual": ("SameIndividual", 2),
    "ComplementOf": ("ObjectComplementOf", 1),
    "SomeValuesFrom": ("ObjectSomeValuesFrom", 2),
    "AllValuesFrom": ("ObjectAllValuesFrom", 2),
    "QualifiedCardinality": ("ObjectExactCardinality", 3),
    "OneOf": ("ObjectOneOf", None),
    "IntersectionOf": ("ObjectIntersectionOf", None),
    "Class": ("Class", 1),
}
AXIOM_ORDER = [
    "Declaration", "AnnotationAssertion", "ClassAssertion", "ObjectPropertyAssertion",
    "NegativeObjectPropertyAssertion", "DataPropertyAssertion", "SubClassOf", "EquivalentClasses",
    "DisjointClasses", "SameIndividual",
]
AXIOM_NAMES = frozenset(AXIOM_ORDER)


@dataclass(frozen=True)
class Axiom:
    name: str
    args: tuple

    def __post_init__(self):
        if self.name not in CONSTRUCTORS:
            raise ValueError(f"unknown constructor {self.name}")
        arity = CONSTRUCTORS[self.name][1]
        if arity is not None and len(self.args) != arity:
            raise ValueError(f"{self.name} takes {arity} arguments, got {len(self.args)}")
        if arity is None and not self.args:
            raise ValueError(f"{self.name} needs at least one argument")

    @property
    def is_axiom(self) -> bool:
        return self.name in AXIOM_NAMES

    def variables(self) -> set:
        out = set()
        for a in self.args:
            if isinstance(a, Var):
                out.add(a)
            elif isinstance(a, Axiom):
                out |= a.variables()
        return out

    def substitute(self, binding: dict) -> "Axiom":
        return Axiom(self.name, tuple(
            binding.get(a, a) if isinstance(a, Var) else a.substitute(binding) if isinstance(a, Axiom) else a
            for a in self.args))

    def render(self, prefixes: dict | None = None) -> str:
        return render_axiom(self, prefixes)

    def __str__(self):
        return self.render()


def _c(name):
    def make(*args):
        return Axiom(name, tuple(args))
    make.__name__ = name
    return make


Declaration = _c("Declaration")
AnnotationAssertion = _c("AnnotationAssertion")
ClassAssertion = _c("ClassAssertion")
ObjectPropertyAssertion = _c("ObjectPropertyAssertion")
NegativeObjectPropertyAssertion = _c("NegativeObjectPropertyAssertion")
DataPropertyAssertion = _c("DataPropertyAssertion")
SubClassOf = _c("SubClassOf")
EquivalentClasses = _c("EquivalentClasses")
DisjointClasses = _c("DisjointClasses")
SameIndividual = _c("SameIndividual")
ComplementOf = _c("ComplementOf")
SomeValuesFrom = _c("SomeValuesFrom")
AllValuesFrom = _c("AllValuesFrom")
OneOf = _c("OneOf")
IntersectionOf = _c("IntersectionOf")
ClassEntity = _c("Class")


def QualifiedCardinality(prop, n, filler) -> Axiom:
    """Exact qualified cardinality; the argument order follows the abstract syntax (property, n, filler)."""
    return Axiom("QualifiedCardinality", (prop, n, filler))


def _render_term(t, prefixes) -> str:
    if isinstance(t, Axiom):
        return render_axiom(t, prefixes)
    if isinstance(t, Var):
        return "?" + t.name
    if isinstance(t, Literal):
        text = json.dumps(t.lexical, ensure_ascii=False)
        if t.language:
            return f"{text}@{t.language}"
        return f"{text}^^{_render_term(t.datatype, prefixes)}"
    if isinstance(t, int):
        return str(t)
    text = str(t)
    if prefixes:
        short = compact(text, prefixes)
        if short != text:
            return short
    return f"<{text}>"


def render_axiom(ax: Axiom, prefixes: dict | None = None) -> str:
    fss, _ = CONSTRUCTORS[ax.name]
    args = ax.args
    if ax.name == "QualifiedCardinality":
        prop, n, filler = args
        args = (n, prop, filler)
    elif ax.name == "OneOf":
        args = tuple(sorted(args, key=str))
    return f"{fss}({' '.join(_render_term(a, prefixes) for a in args)})"


def axiom_sort_key(ax: Axiom) -> tuple:
    return (AXIOM_ORDER.index(ax.name) if ax.name in AXIOM_ORDER else len(AXIOM_ORDER), render_axiom(ax))


def iris_in(ax) -> set:
    out = set()
    for a in ax.args:
        if isinstance(a, Axiom):
            out |= iris_in(a)
        elif isinstance(a, Literal):
            out.add(a.datatype)
        elif isinstance(a, Iri):
            out.add(a)
    return out


@dataclass
class OntologyDocument:
    iri: Iri
    axioms: list = field(default_factory=list)
    prefixes: dict = field(default_factory=dict)
    translated: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def __post_init__(self):
        self.axioms = sorted(set(self.axioms), key=axiom_sort_key)

    def to_functional(self) -> str:
        used = set()
        for ax in self.axioms:
            for iri in iris_in(ax):
                short = compact(iri, self.prefixes)
                if short != iri:
                    used.add(short.split(":", 1)[0])
        lines = [f"Prefix({p}:=<{self.prefixes[p]}>)" for p in sorted(used)]
        lines.append(f"Ontology(<{self.iri}>")
        lines += [render_axiom(ax, self.prefixes) for ax in self.axioms]
        lines.append(")")
        return "\n".join(lines) + "\n"

    def report(self) -> dict:
        return {
            "ontology": str(self.iri),
            "axiom_count": len(self.axioms),
            "translated": [str(g) for g in self.translated],
            "skipped": self.skipped,
            "flags": self.flags,
        }
