"""Epistemic, directive, conditional and logical-argument units."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import vocab as V
from .errors import (
    ClauseTypeViolation, IfClauseNotAssertional, MissingBoldness, NotAStatementUnit, UnsupportedCategory,
)
from .modifiers import boolean_parts
from .statements import StatementCategory, create_statement_unit, unit_category
from .store import LayeredStore, SemanticUnit, UnitMetadata
from .terms import Iri, Literal, Triple, XSDType


class Stance(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    AGNOSTIC = "Agnostic"


STANCE_SCHEMA = {Stance.POSITIVE: "asserts", Stance.NEGATIVE: "negates", Stance.AGNOSTIC: "is-agnostic-about"}
STANCE_PREDICATE = {Stance.POSITIVE: V.ASSERTS, Stance.NEGATIVE: V.NEGATES, Stance.AGNOSTIC: V.IS_AGNOSTIC_ABOUT}


@dataclass(frozen=True)
class EpistemicUnit:
    gupri: Iri
    agent: Iri
    stance: Stance
    target: Iri
    referential: bool


def assert_stance(store: LayeredStore, agent: Iri, stance: Stance | str, target: Iri) -> EpistemicUnit:
    stance = Stance(stance) if not isinstance(stance, Stance) else stance
    target = Iri(target)
    with store._lock:
        referential = V.EPISTEMIC_UNIT in store.unit(target).kinds
        word = stance.value.lower()
        kinds = [V.EPISTEMIC_UNIT, V.su(f"{word}-epistemic-unit")]
        if referential:
            kinds += [V.REFERENTIAL_EPISTEMIC_UNIT, V.su(f"{word}-referential-epistemic-unit")]
        unit = create_statement_unit(store, STANCE_SCHEMA[stance], Iri(agent), [target],
                                     extra_kinds=kinds, hint=f"{store.label(agent)} {word} stance")
    return EpistemicUnit(unit.gupri, Iri(agent), stance, target, referential)


def epistemic_view(store: LayeredStore, g: Iri) -> EpistemicUnit | None:
    unit = store.unit(g)
    if V.EPISTEMIC_UNIT not in unit.kinds:
        return None
    for t in store.data_graph(g):
        for stance, pred in STANCE_PREDICATE.items():
            if t.predicate == pred:
                return EpistemicUnit(g, t.subject, stance, t.object, V.REFERENTIAL_EPISTEMIC_UNIT in unit.kinds)
    return None


def stance_map(store: LayeredStore, target: Iri) -> dict:
    out = {s: set() for s in Stance}
    for u in store.units_of_kind(V.EPISTEMIC_UNIT):
        if V.REFERENTIAL_EPISTEMIC_UNIT in u.kinds:
            continue
        view = epistemic_view(store, u.gupri)
        if view is not None and view.target == target:
            out[view.stance].add(view.agent)
    return out


# directives ---------------------------------------------------------------

@dataclass(frozen=True)
class DirectiveUnit:
    gupri: Iri
    target: Iri
    subtype: StatementCategory


def build_directive(store: LayeredStore, target: Iri) -> DirectiveUnit:
    """Mark a statement unit as a directive: its content is to be made true, not asserted.

    The statement itself becomes the directive unit, so its Gupri is returned
    as both ``gupri`` and ``target``.
    """
    with store._lock:
        unit = store.unit(target)
        if not unit.is_statement:
            raise NotAStatementUnit(f"{target} is not a statement unit")
        cat = unit_category(unit)
        if cat is None or cat is StatementCategory.LEXICAL:
            raise UnsupportedCategory("only assertional, contingent, prototypical and universal "
                                      "statements can become directives")
        store.add_kinds(target, V.DIRECTIVE_UNIT, V.su(f"{cat.word}-directive-unit"))
    return DirectiveUnit(Iri(target), Iri(target), cat)


def directive_view(store: LayeredStore, g: Iri) -> DirectiveUnit | None:
    unit = store.unit(g)
    if V.DIRECTIVE_UNIT not in unit.kinds:
        return None
    return DirectiveUnit(g, g, unit_category(unit))


# conditionals -------------------------------------------------------------

@dataclass(frozen=True)
class ConditionalUnit:
    gupri: Iri
    if_clause: Iri
    then_clause: Iri
    directive: bool


def _is_assertional_fact(store, g) -> bool:
    unit = store.unit(g)
    if V.BOOLEAN_UNIT in unit.kinds:
        _, operands = boolean_parts(unit)
        return all(_is_assertional_fact(store, o) for o in operands)
    return (unit.is_statement and V.ASSERTIONAL_UNIT in unit.kinds and V.DIRECTIVE_UNIT not in unit.kinds)


def _register_complex(store, hint, kinds, subject, roles, triples, attributes=(), schema_id=None):
    g = store.mint_gupri(store.base, hint)
    unit = SemanticUnit(g, frozenset({V.STATEMENT_UNIT, V.COMPLEX_STATEMENT_UNIT, *kinds}), subject=subject,
                        associated_units=tuple(roles), attributes=tuple(attributes),
                        metadata=UnitMetadata(schema_id=schema_id, logic_framework="None"))
    return store.register_unit(unit, [Triple(*t) for t in triples(g)])


def build_conditional(store: LayeredStore, if_clause: Iri, then_clause: Iri) -> ConditionalUnit:
    if_clause, then_clause = Iri(if_clause), Iri(then_clause)
    with store._lock:
        if not _is_assertional_fact(store, if_clause):
            raise IfClauseNotAssertional(f"if-clause {if_clause} is not an assertional statement unit")
        then = store.unit(then_clause)
        if not then.is_statement:
            raise NotAStatementUnit(f"then-clause {then_clause} is not a statement unit")
        directive = V.DIRECTIVE_UNIT in then.kinds
        kinds = {V.CONDITIONAL_UNIT, V.ASSERTIONAL_UNIT}
        if directive:
            kinds.add(V.DIRECTIVE_CONDITIONAL_UNIT)
        unit = _register_complex(
            store, "conditional", kinds, if_clause,
            [(V.HAS_IF_CLAUSE, if_clause), (V.HAS_THEN_CLAUSE, then_clause)],
            lambda g: [(if_clause, V.IS_IF_OF_THEN, then_clause)],
            schema_id=V.su("schema/is-if-of-then"))
    return ConditionalUnit(unit.gupri, if_clause, then_clause, directive)


def conditional_view(store: LayeredStore, g: Iri) -> ConditionalUnit | None:
    unit = store.unit(g)
    if V.CONDITIONAL_UNIT not in unit.kinds or V.LOGICAL_ARGUMENT_UNIT in unit.kinds:
        return None
    return ConditionalUnit(g, unit.members(V.HAS_IF_CLAUSE)[0], unit.members(V.HAS_THEN_CLAUSE)[0],
                           V.DIRECTIVE_CONDITIONAL_UNIT in unit.kinds)


# logical arguments --------------------------------------------------------

class ArgumentKind(Enum):
    DEDUCTION = "Deduction"
    INDUCTION = "Induction"
    ABDUCTION = "Abduction"

    @property
    def conclusion_role(self) -> str:
        return {"Deduction": "result", "Induction": "rule", "Abduction": "case"}[self.value]

    @property
    def modality(self) -> str:
        return {"Deduction": "necessary", "Induction": "probable", "Abduction": "possible"}[self.value]

    @property
    def kind(self) -> Iri:
        return {"Deduction": V.DEDUCTION_UNIT, "Induction": V.INDUCTION_UNIT,
                "Abduction": V.ABDUCTION_UNIT}[self.value]


@dataclass(frozen=True)
class ArgumentUnit:
    gupri: Iri
    kind: ArgumentKind
    case: Iri
    rule: Iri
    result: Iri
    boldness: StatementCategory | None = None
    hypothesis: bool = False

    @property
    def conclusion_role(self) -> str:
        return self.kind.conclusion_role

    @property
    def conclusion(self) -> Iri:
        return getattr(self, self.conclusion_role)

    @property
    def premises(self) -> tuple:
        return tuple(getattr(self, r) for r in ("case", "rule", "result") if r != self.conclusion_role)

    @property
    def modality(self) -> str:
        return self.kind.modality


RULE_CATEGORIES = (StatementCategory.UNIVERSAL, StatementCategory.PROTOTYPICAL, StatementCategory.CONTINGENT)


def _check_fact_clause(store, g, role):
    unit = store.unit(g)
    ok = unit.is_statement and (V.ASSERTIONAL_UNIT in unit.kinds or V.NAMED_INDIVIDUAL_IDENT in unit.kinds)
    if not ok:
        raise ClauseTypeViolation(f"{role} clause must be an assertional or named-individual identification unit")


def build_argument(store: LayeredStore, kind: ArgumentKind | str, case: Iri, rule: Iri, result: Iri,
                   boldness: StatementCategory | str | None = None, hypothesis: bool = False) -> ArgumentUnit:
    kind = ArgumentKind(kind) if not isinstance(kind, ArgumentKind) else kind
    if isinstance(boldness, str):
        boldness = StatementCategory(boldness)
    case, rule, result = Iri(case), Iri(rule), Iri(result)
    with store._lock:
        _check_fact_clause(store, case, "case")
        _check_fact_clause(store, result, "result")
        rule_unit = store.unit(rule)
        if not rule_unit.is_statement or unit_category(rule_unit) not in RULE_CATEGORIES:
            raise ClauseTypeViolation("rule clause must be a universal, prototypical or contingent unit")
        if kind is ArgumentKind.INDUCTION:
            if boldness is None:
                raise MissingBoldness("induction units need a boldness")
            if boldness not in RULE_CATEGORIES:
                raise ClauseTypeViolation(f"boldness {boldness.value} is not a rule category")
        elif boldness is not None:
            raise ClauseTypeViolation("boldness applies to induction units only")
        if hypothesis and kind is not ArgumentKind.ABDUCTION:
            raise ClauseTypeViolation("the hypothesis flag applies to abduction units only")
        attrs = [(V.HAS_MODALITY, Literal(kind.modality))]
        if boldness is not None:
            attrs.append((V.HAS_BOLDNESS, Literal(boldness.value)))
        if kind is ArgumentKind.ABDUCTION:
            attrs.append((V.IS_HYPOTHESIS, Literal("true" if hypothesis else "false", XSDType.boolean)))
        unit = _register_complex(
            store, kind.value.lower(),
            {V.CONDITIONAL_UNIT, V.LOGICAL_ARGUMENT_UNIT, kind.kind, V.ASSERTIONAL_UNIT},
            case,
            [(V.HAS_CASE_CLAUSE, case), (V.HAS_RULE_CLAUSE, rule), (V.HAS_RESULT_CLAUSE, result)],
            lambda g: [], attrs)
    return ArgumentUnit(unit.gupri, kind, case, rule, result, boldness, hypothesis)


def argument_view(store: LayeredStore, g: Iri) -> ArgumentUnit | None:
    unit = store.unit(g)
    if V.LOGICAL_ARGUMENT_UNIT not in unit.kinds:
        return None
    kind = next(k for k in ArgumentKind if k.kind in unit.kinds)
    bold = unit.attribute(V.HAS_BOLDNESS)
    hyp = unit.attribute(V.IS_HYPOTHESIS)
    return ArgumentUnit(g, kind, unit.members(V.HAS_CASE_CLAUSE)[0], unit.members(V.HAS_RULE_CLAUSE)[0],
                        unit.members(V.HAS_RESULT_CLAUSE)[0],
                        StatementCategory(str(bold)) if bold is not None else None,
                        hyp is not None and hyp.value is True)
