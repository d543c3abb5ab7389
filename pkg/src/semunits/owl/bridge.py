"""Unit-level logic programs and the translation patterns that turn them into axioms.

For each unit a small program is built: facts describing its kinds, subject,
data-graph triples and the categories of the resources it mentions, plus a
fixed set of bridge rules (negated vs. plain statement units, relational
triples, non-marker types). Translation patterns then match their
precondition against the solved model and instantiate axiom templates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .. import vocab as V
from ..errors import (
    NotNegated, RangeFormNotTranslatable, TooManyVariables, UnboundVariable, UnsupportedNegation,
)
from ..logic import Atom, Model, Program, Var, match_body, parse_program, solve
from ..resources import MARKERS, ResourceCategory
from ..statements import StatementCategory, unit_category
from ..store import LayeredStore
from ..terms import Iri, Literal
from . import axioms as A

CATEGORY_PREDICATE = {
    ResourceCategory.NAMED_INDIVIDUAL: "named-individual",
    ResourceCategory.SOME_INSTANCE: "some-instance",
    ResourceCategory.MOST_INSTANCES: "most-instances",
    ResourceCategory.EVERY_INSTANCE: "every-instance",
    ResourceCategory.ALL_INSTANCES: "all-instances",
}
ANNOTATION_PREDICATES = (V.RDFS_LABEL, V.DC_IDENTIFIER, V.RDFS_IS_DEFINED_BY, V.OWL_VERSION_IRI)
NON_RELATIONAL = ANNOTATION_PREDICATES + (
    V.RDF_TYPE, V.OWL_QUALIFIED_CARDINALITY, V.OWL_MIN_QUALIFIED_CARDINALITY, V.OWL_MAX_QUALIFIED_CARDINALITY,
    V.RDFS_SUBCLASS_OF, V.OWL_EQUIVALENT_CLASS, V.OWL_DISJOINT_WITH, V.OWL_SAME_AS,
    V.su("has-minimum-count"), V.su("has-maximum-count"), V.su("has-count-unit"),
)

BRIDGE_RULES = """
negated-statement-unit(x) :- negation-unit(x), statement-unit(x).
plain-statement-unit(x) :- statement-unit(x), not negation-unit(x), not directive-unit(x).
plain-simple-unit(x) :- plain-statement-unit(x), not complex-statement-unit(x).
target-type(y, z) :- triple(y, rdf:type, z), not marker-class(z).
relation(y, p, o) :- has-semantic-unit-subject(x, y), triple(y, p, o), not non-relational(p).
abox-object(s, p, o) :- triple(s, p, o), resource-term(o), not non-relational(p).
abox-data(s, p, o) :- triple(s, p, o), literal-term(o), not annotation-predicate(p).
"""


def _kind_predicate(kind: Iri) -> str:
    return kind.local_name


def unit_program(store: LayeredStore, g: Iri) -> Program:
    """Facts for unit ``g`` together with the bridge rules."""
    unit = store.unit(g)
    facts = {Atom(_kind_predicate(k), (g,)) for k in unit.kinds}
    if unit.subject is not None:
        facts.add(Atom("has-semantic-unit-subject", (g, unit.subject)))
    triples = store.data_graph(g)
    terms = set()
    for t in triples:
        facts.add(Atom("triple", tuple(t)))
        terms.update((t.subject, t.object))
        facts.add(Atom("resource-term" if isinstance(t.object, Iri) else "literal-term", (t.object,)))
    if unit.subject is not None:
        terms.add(unit.subject)
    for term in terms:
        r = store.resources.get(term) if isinstance(term, Iri) else None
        if r is None:
            continue
        if r.category in CATEGORY_PREDICATE:
            name = CATEGORY_PREDICATE[r.category]
            facts.add(Atom(name, (term,)))
            facts.add(Atom(name + "-of", (term, r.target_class)))
        elif r.category is ResourceCategory.CLASS_REF:
            facts.add(Atom("class", (term,)))
    facts |= {Atom("marker-class", (m,)) for m in MARKERS.values()}
    facts |= {Atom("non-relational", (p,)) for p in NON_RELATIONAL}
    facts |= {Atom("annotation-predicate", (p,)) for p in ANNOTATION_PREDICATES}
    # relation units elsewhere that point at this unit's subject (used to link cardinality collections)
    if unit.subject is not None:
        for other in store.statement_units():
            if other.gupri == g or V.NEGATION_UNIT in other.kinds or V.DIRECTIVE_UNIT in other.kinds:
                continue
            for t in store.data_graph(other.gupri):
                if t.object == unit.subject and t.predicate not in NON_RELATIONAL and t.subject != unit.subject:
                    facts.add(Atom("referenced-by", (unit.subject, t.subject, t.predicate)))
    rules = parse_program(BRIDGE_RULES, store.prefix_map).rules
    return Program(rules, facts)


# patterns -----------------------------------------------------------------

@dataclass(frozen=True)
class TranslationPattern:
    name: str
    trigger: Iri
    precondition: tuple
    axioms: tuple
    fresh: tuple = ()
    scope: tuple | None = None
    route: str | None = None
    group: str = "statement"

    def __post_init__(self):
        bound = set().union(*(a.variables for a in self.precondition)) if self.precondition else set()
        fresh = {Var(f) for f in self.fresh}
        for ax in self.axioms:
            loose = ax.variables() - bound - fresh
            if loose:
                raise UnboundVariable(f"pattern {self.name}: template variables "
                                      f"{', '.join(sorted(v.name for v in loose))} are not bound")

    @property
    def variables(self) -> set:
        out = set()
        for ax in self.axioms:
            out |= ax.variables()
        return out


class PatternRegistry:
    def __init__(self, patterns: Iterable[TranslationPattern] = ()):
        self._patterns: list[TranslationPattern] = []
        for p in patterns:
            self.register(p)

    def register(self, p: TranslationPattern) -> None:
        if not isinstance(p, TranslationPattern):
            raise TypeError("expected a TranslationPattern")
        self._patterns.append(p)

    def __iter__(self):
        return iter(self._patterns)

    def __len__(self):
        return len(self._patterns)

    def names(self) -> list[str]:
        return [p.name for p in self._patterns]

    def for_kinds(self, kinds) -> list[TranslationPattern]:
        return [p for p in self._patterns if p.trigger in kinds]


def _pre(text: str, prefixes: dict) -> tuple:
    """Parse a comma-separated conjunction of atoms."""
    return parse_program(f"goal :- {text}.", prefixes).rules[0].body


x, y, z, w, o, p, s, c, d, l = (Var(n) for n in "xyzwopscdl")
cX = Var("cX")


def builtin_patterns(prefixes: dict | None = None) -> list[TranslationPattern]:
    pf = dict(V.DEFAULT_PREFIXES)
    pf.update(prefixes or {})
    out = []

    def add(name, trigger, pre, axioms, **kw):
        out.append(TranslationPattern(name, trigger, _pre(pre, pf), tuple(axioms), **kw))

    for kind, word in ((V.NAMED_INDIVIDUAL_IDENT, "named-individual"),
                       (V.SOME_INSTANCE_IDENT, "some-instance"),
                       (V.MOST_INSTANCES_IDENT, "most-instances")):
        add(f"{word}-identification", kind,
            f"plain-statement-unit(x), {kind.local_name}(x), has-semantic-unit-subject(x, y), target-type(y, z)",
            [A.ClassAssertion(z, y)], group="identification")
    for kind, word in ((V.EVERY_INSTANCE_IDENT, "every-instance"), (V.ALL_INSTANCES_IDENT, "all-instances")):
        add(f"{word}-identification", kind,
            f"plain-statement-unit(x), {kind.local_name}(x), has-semantic-unit-subject(x, y), target-type(y, z)",
            [A.ClassAssertion(V.COLLECTION, y),
             A.SubClassOf(z, A.SomeValuesFrom(V.MEMBER_OF, A.OneOf(y))),
             A.SubClassOf(A.OneOf(y), A.AllValuesFrom(V.HAS_MEMBER, z))], group="identification")
    add("class-identification", V.CLASS_IDENT,
        "plain-statement-unit(x), class-identification-unit(x), has-semantic-unit-subject(x, y), "
        "triple(y, rdfs:label, l)",
        [A.Declaration(A.ClassEntity(y)), A.AnnotationAssertion(V.RDFS_LABEL, y, l)], group="identification")

    add("assertional-type", V.ASSERTIONAL_UNIT,
        "plain-simple-unit(x), assertional-statement-unit(x), target-type(s, c)",
        [A.ClassAssertion(c, s)], group="abox")
    add("assertional-object", V.ASSERTIONAL_UNIT,
        "plain-simple-unit(x), assertional-statement-unit(x), abox-object(s, p, o)",
        [A.ObjectPropertyAssertion(p, s, o)], group="abox")
    add("assertional-data", V.ASSERTIONAL_UNIT,
        "plain-simple-unit(x), assertional-statement-unit(x), abox-data(s, p, o)",
        [A.DataPropertyAssertion(p, s, o)], group="abox")

    add("universal-some", V.UNIVERSAL_UNIT,
        "plain-simple-unit(x), universal-statement-unit(x), has-semantic-unit-subject(x, y), "
        "every-instance-of(y, c), relation(y, p, o), some-instance-of(o, d)",
        [A.SubClassOf(c, A.SomeValuesFrom(p, d))], route="direct", group="universal")
    add("universal-value", V.UNIVERSAL_UNIT,
        "plain-simple-unit(x), universal-statement-unit(x), has-semantic-unit-subject(x, y), "
        "every-instance-of(y, c), relation(y, p, o), named-individual(o)",
        [A.SubClassOf(c, A.SomeValuesFrom(p, A.OneOf(o)))], route="direct", group="universal")
    add("universal-collection", V.UNIVERSAL_UNIT,
        "plain-simple-unit(x), universal-statement-unit(x), has-semantic-unit-subject(x, y), "
        "every-instance-of(y, c), relation(y, p, o)",
        [A.ObjectPropertyAssertion(p, y, o)], route="collection", group="universal")
    add("all-instances-collection", V.UNIVERSAL_UNIT,
        "plain-simple-unit(x), universal-statement-unit(x), has-semantic-unit-subject(x, y), "
        "all-instances-of(y, c), relation(y, p, o)",
        [A.ObjectPropertyAssertion(p, y, o)], route="collection", group="universal")
    for pred, ctor in ((V.RDFS_SUBCLASS_OF, A.SubClassOf), (V.OWL_EQUIVALENT_CLASS, A.EquivalentClasses),
                       (V.OWL_DISJOINT_WITH, A.DisjointClasses)):
        add(f"class-{pred.local_name}", V.UNIVERSAL_UNIT,
            f"plain-simple-unit(x), universal-statement-unit(x), has-semantic-unit-subject(x, y), "
            f"triple(y, <{pred}>, o)",
            [ctor(y, o)], group="class-axiom")
    add("same-as", V.STATEMENT_UNIT,
        "plain-simple-unit(x), has-semantic-unit-subject(x, y), triple(y, owl:sameAs, o)",
        [A.SameIndividual(y, o)], group="class-axiom")

    add("negated-type", V.NEGATION_UNIT,
        "negated-statement-unit(x), has-semantic-unit-subject(x, y), named-individual(y), target-type(y, z)",
        [A.ClassAssertion(A.ComplementOf(z), y)], group="negation")
    add("negated-relation", V.NEGATION_UNIT,
        "negated-statement-unit(x), assertional-statement-unit(x), has-semantic-unit-subject(x, y), "
        "relation(y, p, o), named-individual(o)",
        [A.NegativeObjectPropertyAssertion(p, y, o)], group="negation")
    add("negated-existential", V.NEGATION_UNIT,
        "negated-statement-unit(x), assertional-statement-unit(x), has-semantic-unit-subject(x, y), "
        "relation(y, p, o), some-instance-of(o, d)",
        [A.ClassAssertion(A.ComplementOf(A.SomeValuesFrom(p, d)), y)], group="negation")

    card = ("cardinality-restriction-unit(x), has-semantic-unit-subject(x, y), "
            "triple(y, owl:qualifiedCardinality, z), some-instance-of(y, w)")
    add("cardinality-collection", V.CARDINALITY_UNIT, card,
        [A.ClassAssertion(A.IntersectionOf(V.COLLECTION, A.QualifiedCardinality(V.HAS_MEMBER, z, w)), cX)],
        fresh=("cX",), scope=("x", "y", "z", "w"), group="cardinality")
    add("cardinality-link", V.CARDINALITY_UNIT, card + ", referenced-by(y, s, p)",
        [A.ObjectPropertyAssertion(p, s, cX)],
        fresh=("cX",), scope=("x", "y", "z", "w"), group="cardinality")
    return out


_DEFAULT_REGISTRY: PatternRegistry | None = None


def builtin_registry() -> PatternRegistry:
    """The shared registry, created on first use with the built-in patterns."""
    global _DEFAULT_REGISTRY
    if _DEFAULT_REGISTRY is None:
        _DEFAULT_REGISTRY = PatternRegistry(builtin_patterns())
    return _DEFAULT_REGISTRY


def register_pattern(p: TranslationPattern, registry: PatternRegistry | None = None) -> None:
    (registry or builtin_registry()).register(p)


# translation --------------------------------------------------------------

def _normalize(ax: A.Axiom) -> A.Axiom:
    args = tuple(_normalize(a) if isinstance(a, A.Axiom) else a for a in ax.args)
    if ax.name == "QualifiedCardinality" and isinstance(args[1], Literal):
        args = (args[0], int(args[1].lexical), args[2])
    return A.Axiom(ax.name, args)


@dataclass
class UnitTranslation:
    unit: Iri
    axioms: list = field(default_factory=list)
    flags: list = field(default_factory=list)


def _apply(patterns, model: Model, g: Iri, routes) -> list:
    out, skolems = [], {}
    for pat in patterns:
        if pat.route is not None and pat.route not in routes:
            continue
        scope = [Var(v) for v in pat.scope] if pat.scope else None
        for b in match_body(pat.precondition, model):
            b = dict(b)
            for f in pat.fresh:
                key_vars = scope if scope is not None else sorted(b)
                key = (f, tuple(str(b.get(v)) for v in key_vars))
                if key not in skolems:
                    skolems[key] = Iri(f"{g}#sk{len(skolems) + 1}")
                b[Var(f)] = skolems[key]
            for template in pat.axioms:
                ax = _normalize(template.substitute(b))
                if ax not in out:
                    out.append(ax)
    return out


def _translate(store: LayeredStore, g: Iri, registry: PatternRegistry | None,
               routes: Sequence[str], groups: set | None = None) -> UnitTranslation:
    registry = registry or builtin_registry()
    unit = store.unit(g)
    result = UnitTranslation(g)
    if not unit.is_statement:
        result.flags.append("compound-unit")
        return result
    model = Model(solve(unit_program(store, g)))
    patterns = [p for p in registry.for_kinds(unit.kinds) if groups is None or p.group in groups]
    result.axioms = _apply(patterns, model, g, routes)
    cat = unit_category(unit)
    negated = V.NEGATION_UNIT in unit.kinds
    if V.DIRECTIVE_UNIT in unit.kinds:
        result.flags.append("directive-not-translated")
    if negated and cat in (StatementCategory.CONTINGENT, StatementCategory.PROTOTYPICAL, StatementCategory.UNIVERSAL):
        result.flags.append("unsupported-negation")
    elif negated and not any(p.group == "negation" for p in patterns if _fired(p, model)):
        result.flags.append("no-negation-pattern")
    if V.CARDINALITY_UNIT in unit.kinds and not _exact_cardinality(store, g):
        result.flags.append("range-form-not-translatable")
    if not negated and cat in (StatementCategory.CONTINGENT, StatementCategory.PROTOTYPICAL):
        result.flags.append("no-owl-pattern")
    if not result.axioms and not result.flags:
        result.flags.append("no-axioms")
    return result


def _fired(p: TranslationPattern, model: Model) -> bool:
    return next(match_body(p.precondition, model), None) is not None


def _exact_cardinality(store, g) -> bool:
    return any(t.predicate == V.OWL_QUALIFIED_CARDINALITY for t in store.data_graph(g))


def translate_unit(store: LayeredStore, g: Iri, registry: PatternRegistry | None = None,
                   routes: Sequence[str] = ("direct", "collection")) -> list:
    return _translate(store, Iri(g), registry, routes).axioms


def translate_negation(store: LayeredStore, g: Iri, registry: PatternRegistry | None = None) -> list:
    unit = store.unit(g)
    if V.NEGATION_UNIT not in unit.kinds:
        raise NotNegated(f"{g} carries no negation tag")
    cat = unit_category(unit)
    if cat in (StatementCategory.CONTINGENT, StatementCategory.PROTOTYPICAL, StatementCategory.UNIVERSAL):
        raise UnsupportedNegation(f"negated {cat.word} units have no OWL translation")
    return _translate(store, Iri(g), registry, ("direct", "collection"), {"negation"}).axioms


def translate_cardinality(store: LayeredStore, g: Iri, registry: PatternRegistry | None = None) -> list:
    unit = store.unit(g)
    if V.CARDINALITY_UNIT not in unit.kinds:
        raise RangeFormNotTranslatable(f"{g} carries no cardinality restriction")
    if not _exact_cardinality(store, g):
        raise RangeFormNotTranslatable(f"{g} stores a range or frequency, which is not translated")
    return _translate(store, Iri(g), registry, ("direct", "collection"), {"cardinality"}).axioms


def translate_store(store: LayeredStore, framework_filter: str | None = None,
                    registry: PatternRegistry | None = None,
                    routes: Sequence[str] = ("direct", "collection")) -> A.OntologyDocument:
    """Translate every statement unit that passes the logic-framework filter.

    Compound units carry no content of their own and are not visited.
    """
    axioms, translated, skipped, flags = [], [], [], []
    for unit in store.statement_units():
        fw = unit.metadata.logic_framework
        if framework_filter is not None and fw != framework_filter:
            skipped.append({"unit": str(unit.gupri), "logic_framework": fw, "reason": "framework-filter"})
            continue
        tr = _translate(store, unit.gupri, registry, routes)
        translated.append(unit.gupri)
        axioms += tr.axioms
        flags += [{"unit": str(unit.gupri), "flag": f} for f in tr.flags]
    return A.OntologyDocument(Iri(f"{store.base}ontology"), axioms, dict(store.prefix_map),
                              translated, skipped, flags)


# entailment ---------------------------------------------------------------

def _member_collections(axs: set) -> dict:
    """Map collection individual e -> classes C with C SubClassOf member-of some {e}."""
    out: dict = {}
    for ax in axs:
        if ax.name == "SubClassOf":
            sup = ax.args[1]
            if (isinstance(sup, A.Axiom) and sup.name == "SomeValuesFrom" and sup.args[0] == V.MEMBER_OF
                    and isinstance(sup.args[1], A.Axiom) and sup.args[1].name == "OneOf"
                    and len(sup.args[1].args) == 1):
                out.setdefault(sup.args[1].args[0], set()).add(ax.args[0])
    return out


def materialize(axioms: Iterable[A.Axiom]) -> frozenset:
    """Bounded closure used for entailment checks.

    Rules: SubClassOf is transitive; ClassAssertion propagates along
    SubClassOf; a property asserted of an every-instance collection
    distributes to the member class (C member-of some {e}, e p o, o : D
    gives C SubClassOf p some D).
    """
    closure = set(axioms)
    while True:
        new = set()
        subs = [ax for ax in closure if ax.name == "SubClassOf"]
        for a in subs:
            for b in subs:
                if a.args[1] == b.args[0]:
                    new.add(A.SubClassOf(a.args[0], b.args[1]))
        for ca in [ax for ax in closure if ax.name == "ClassAssertion"]:
            for sc in subs:
                if sc.args[0] == ca.args[0]:
                    new.add(A.ClassAssertion(sc.args[1], ca.args[1]))
        members = _member_collections(closure)
        collections = {ax.args[1] for ax in closure if ax.name == "ClassAssertion" and ax.args[0] == V.COLLECTION}
        types: dict = {}
        for ax in closure:
            if ax.name == "ClassAssertion" and isinstance(ax.args[0], Iri):
                types.setdefault(ax.args[1], set()).add(ax.args[0])
        for ax in closure:
            if ax.name == "ObjectPropertyAssertion":
                prop, subj, obj = ax.args
                if subj in collections:
                    for cls in members.get(subj, ()):
                        for dcls in types.get(obj, ()):
                            if dcls != V.COLLECTION:
                                new.add(A.SubClassOf(cls, A.SomeValuesFrom(prop, dcls)))
        new -= closure
        if not new:
            return frozenset(closure)
        closure |= new


def pattern_entailment(pattern: TranslationPattern | Sequence[A.Axiom], ontology: Iterable[A.Axiom],
                       entities: Iterable[Iri]) -> list[dict]:
    """Brute-force all |E|^n substitutions of the pattern's template variables."""
    templates = list(pattern.axioms if isinstance(pattern, TranslationPattern) else pattern)
    variables = sorted(set().union(*(t.variables() for t in templates)) if templates else set())
    if len(variables) > 3:
        raise TooManyVariables(f"pattern has {len(variables)} variables, at most 3 are allowed")
    closure = materialize(ontology)
    if not closure:
        return []
    entities = sorted(set(entities), key=str)
    found = []
    for combo in itertools.product(entities, repeat=len(variables)):
        b = dict(zip(variables, combo))
        if all(t.substitute(b) in closure for t in templates):
            found.append({v.name: e for v, e in b.items()})
    return found


def relational_pattern(prop: Iri) -> TranslationPattern:
    """The ``?X SubClassOf: prop some ?Y`` pattern as a template-only pattern."""
    X, Y = Var("X"), Var("Y")
    return TranslationPattern(f"{prop.local_name}-some", V.UNIVERSAL_UNIT,
                              (Atom("class", (X,)), Atom("class", (Y,))),
                              (A.SubClassOf(X, A.SomeValuesFrom(prop, Y)),))
