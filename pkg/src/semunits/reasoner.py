"""Default reasoning for prototypical statements and evaluation of argument units.

Statement units are lowered to a logic program:

* ``instanceOf(i, C)`` for named individuals typed by identification or instance-of units;
* ``p(s, D)`` for assertional relation units, where a some-instance object is
  lifted to its class ``D`` ("Anton has-quality some white");
* ``-p(s, D)`` for negated assertional units (strong negation);
* ``p(x, D) :- instanceOf(x, C)`` for universal units;
* ``p(C, D)`` plus ``p(x, D) :- p(C, D), instanceOf(x, C), not -p(x, D)`` for
  prototypical units. The class-level atom acts as the unit's trigger.

Inferred facts never touch the data layer. They are kept in
``store.inference_layer`` keyed by the content hash of the store they were
computed from.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import vocab as V
from .discourse import ArgumentKind, argument_view
from .logic import Atom, Model, Program, Rule, Var, format_program, match_body, solve
from .resources import MARKERS, MostInstancesSemantics, ResourceCategory
from .statements import StatementCategory, unit_category
from .store import LayeredStore
from .terms import Iri, compact

INSTANCE_OF = "instanceOf"
NON_RELATIONAL = frozenset({V.RDF_TYPE, V.RDFS_LABEL, V.DC_IDENTIFIER, V.RDFS_IS_DEFINED_BY,
                            V.OWL_VERSION_IRI, V.OWL_QUALIFIED_CARDINALITY})
_MARKERS = frozenset(MARKERS.values())


@dataclass(frozen=True)
class InferredFact:
    fact: Atom
    rule_id: str
    premises: tuple
    modality: str
    defeasible: bool = False

    def to_dict(self, prefixes: dict | None = None) -> dict:
        from .logic import format_atom
        return {"fact": format_atom(self.fact, prefixes), "rule": self.rule_id,
                "premises": [str(p) for p in self.premises], "modality": self.modality,
                "defeasible": self.defeasible}


@dataclass
class StoreProgram:
    program: Program
    provenance: dict = field(default_factory=dict)  # rule id -> unit gupri
    defaults: list = field(default_factory=list)  # default rules


def _pred(store: LayeredStore, p: Iri) -> str:
    return compact(p, store.prefix_map)


def _individual(store, term) -> bool:
    if not isinstance(term, Iri):
        return False
    r = store.resources.get(term)
    return r is None or r.category is ResourceCategory.NAMED_INDIVIDUAL


def _lift(store, term):
    """Quantified resources stand for their class in facts and rule heads."""
    r = store.resources.get(term) if isinstance(term, Iri) else None
    if r is not None and r.category.quantified:
        return r.target_class
    return term


def _relations(store, unit):
    for t in sorted(store.data_graph(unit.gupri), key=lambda t: (str(t.predicate), str(t.object))):
        if t.subject == unit.subject and t.predicate not in NON_RELATIONAL:
            yield t


def unit_facts(store: LayeredStore, g: Iri) -> list[Atom]:
    """Ground atoms expressing the content of one statement unit.

    For rule-like units (universal, prototypical, contingent) the atoms are
    class-level, e.g. ``has-quality(Cygnus, White)``.
    """
    unit = store.unit(g)
    out = []
    negated = V.NEGATION_UNIT in unit.kinds
    for t in store.data_graph(g):
        if t.predicate == V.RDF_TYPE and t.object not in _MARKERS and _individual(store, t.subject):
            out.append(Atom(INSTANCE_OF, (t.subject, t.object), negated))
    if unit.subject is None or V.IDENTIFICATION_UNIT in unit.kinds:
        return sorted(set(out), key=str)
    subj = _lift(store, unit.subject)
    for t in _relations(store, unit):
        out.append(Atom(_pred(store, t.predicate), (subj, _lift(store, t.object)), negated))
    return sorted(set(out), key=str)


def build_program(store: LayeredStore) -> StoreProgram:
    facts, rules, prov, defaults = set(), [], {}, []
    x = Var("x")
    n = 0
    for unit in store.statement_units():
        if V.DIRECTIVE_UNIT in unit.kinds or V.LOGICAL_ARGUMENT_UNIT in unit.kinds:
            continue
        cat = unit_category(unit)
        negated = V.NEGATION_UNIT in unit.kinds
        if cat in (StatementCategory.ASSERTIONAL, StatementCategory.LEXICAL) or unit.subject is None:
            if cat is StatementCategory.LEXICAL and V.NAMED_INDIVIDUAL_IDENT not in unit.kinds:
                continue
            facts.update(unit_facts(store, unit.gupri))
            continue
        if negated:
            continue
        r = store.resources.get(unit.subject)
        cls = r.target_class if r is not None and r.category.quantified else unit.subject
        for t in _relations(store, unit):
            obj = _lift(store, t.object)
            pred = _pred(store, t.predicate)
            if t.predicate == V.RDFS_SUBCLASS_OF and cat is StatementCategory.UNIVERSAL:
                head = Atom(INSTANCE_OF, (x, obj))
            else:
                head = Atom(pred, (x, obj))
            if cat is StatementCategory.UNIVERSAL:
                n += 1
                rule = Rule(head, (Atom(INSTANCE_OF, (x, cls)),), id=f"u{n}")
                rules.append(rule)
                prov[rule.id] = unit.gupri
            elif cat is StatementCategory.PROTOTYPICAL:
                n += 1
                trigger = Atom(pred, (cls, obj))
                facts.add(trigger)
                rule = Rule(head, (trigger, Atom(INSTANCE_OF, (x, cls))), (head.complement(),), id=f"d{n}")
                rules.append(rule)
                defaults.append(rule)
                prov[rule.id] = unit.gupri
    return StoreProgram(Program(rules, facts), prov, defaults)


def export_program(store: LayeredStore) -> str:
    """The generated program as text, one fact or rule per line."""
    return format_program(build_program(store).program, store.prefix_map)


def apply_prototypical_defaults(store: LayeredStore) -> list[InferredFact]:
    sp = build_program(store)
    model = Model(solve(sp.program))
    strict = Model(solve(Program([r for r in sp.program.rules if r not in sp.defaults], sp.program.facts)))
    found = {}
    for rule in sp.defaults:
        for b in match_body(rule.body, model):
            if any(a.substitute(b) in model for a in rule.naf):
                continue
            head = rule.head.substitute(b)
            if head in strict or head in found:
                continue
            found[head] = InferredFact(head, rule.id, (sp.provenance[rule.id],), "probable", True)
    out = sorted(found.values(), key=lambda f: (str(f.fact), f.rule_id))
    _store_layer(store, "defaults", out)
    return out


def _store_layer(store, key, value):
    with store._lock:
        h = store.content_hash()
        layer = dict(store.inference_layer) if store.inference_layer.get("hash") == h else {}
        layer.update({"hash": h, key: value})
        store.inference_layer = layer


# most-instances condition -------------------------------------------------

@dataclass(frozen=True)
class MostCheck:
    holds: bool
    with_property: int
    without_property: int
    no_evidence: bool = False

    @property
    def counts(self) -> dict:
        return {"with": self.with_property, "without": self.without_property}


def check_most_condition(sem: MostInstancesSemantics, store: LayeredStore) -> MostCheck:
    """Closed-world count of known instances inside and outside the distinguishing subclass."""
    # only asserted facts count as evidence, nothing derived by rules
    model = Model(build_program(store).program.facts)
    instances = sorted({args[0] for args in model.tuples(INSTANCE_OF) if args[1] == sem.target_class}, key=str)

    def member(i) -> bool:
        if sem.distinguishing_subclass is not None and (i, sem.distinguishing_subclass) in model.tuples(INSTANCE_OF):
            return True
        props = sem.distinguishing_properties
        return bool(props) and all((i, cls) in model.tuples(_pred(store, p)) for p, cls in props)

    d = sum(1 for i in instances if member(i))
    rest = len(instances) - d
    return MostCheck(d > rest, d, rest, no_evidence=not instances)


def semantics_of_rule(store: LayeredStore, g: Iri) -> MostInstancesSemantics | None:
    """Read a rule-like unit (most swans are white) as a most-instances claim."""
    unit = store.unit(g)
    r = store.resources.get(unit.subject)
    if r is None or r.target_class is None:
        return None
    props = tuple((t.predicate, _lift(store, t.object)) for t in _relations(store, unit))
    return MostInstancesSemantics(r.target_class, None, props)


# arguments ----------------------------------------------------------------

@dataclass
class ArgumentOutcome:
    unit: Iri
    kind: ArgumentKind
    status: str  # inferred | accepted | rejected | premise-missing
    facts: list = field(default_factory=list)
    proposal: dict | None = None
    missing: list = field(default_factory=list)

    def to_dict(self, prefixes: dict | None = None) -> dict:
        return {"unit": str(self.unit), "kind": self.kind.value, "status": self.status,
                "facts": [f.to_dict(prefixes) for f in self.facts], "proposal": self.proposal,
                "missing": [str(m) for m in self.missing]}


def _present(store, g) -> bool:
    return store.has_unit(g) and V.NEGATION_UNIT not in store.unit(g).kinds


def _induce(store, view) -> tuple[str, dict]:
    bold = view.boldness
    proposal = {"rule": str(view.rule), "boldness": bold.value, "defeasible": True}
    if bold is StatementCategory.CONTINGENT:
        return "accepted", proposal
    sem = semantics_of_rule(store, view.rule)
    check = check_most_condition(sem, store) if sem else MostCheck(False, 0, 0, True)
    proposal["counts"] = check.counts
    if check.no_evidence:
        proposal["no_evidence"] = True
    if bold is StatementCategory.PROTOTYPICAL:
        return ("accepted" if check.holds else "rejected"), proposal
    # universal: any known counterexample refutes the generalization
    return ("accepted" if check.with_property > 0 and check.without_property == 0 else "rejected"), proposal


def argue(store: LayeredStore) -> list[ArgumentOutcome]:
    """Evaluate every logical argument unit. Missing premises are reported, not raised."""
    out = []
    for unit in store.units_of_kind(V.LOGICAL_ARGUMENT_UNIT):
        view = argument_view(store, unit.gupri)
        missing = [p for p in view.premises if not _present(store, p)]
        if missing:
            out.append(ArgumentOutcome(unit.gupri, view.kind, "premise-missing", missing=missing))
            continue
        conclusion = view.conclusion
        facts = [InferredFact(a, view.kind.value.lower(), view.premises, view.modality,
                              view.kind is not ArgumentKind.DEDUCTION)
                 for a in unit_facts(store, conclusion)]
        if view.kind is ArgumentKind.INDUCTION:
            status, proposal = _induce(store, view)
            out.append(ArgumentOutcome(unit.gupri, view.kind, status,
                                       facts if status == "accepted" else [], proposal))
        elif view.kind is ArgumentKind.ABDUCTION:
            out.append(ArgumentOutcome(unit.gupri, view.kind, "inferred", facts,
                                       {"case": str(conclusion), "hypothesis": view.hypothesis}))
        else:
            out.append(ArgumentOutcome(unit.gupri, view.kind, "inferred", facts))
    _store_layer(store, "arguments", out)
    return out
