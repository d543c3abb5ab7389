"""Negation, cardinality restriction and Boolean units."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Sequence

from . import vocab as V
from .errors import (
    ArityViolation, InvalidSpec, ModifierConflict, NotAStatementUnit, NotSomeInstanceUnit, UnknownUnit,
)
from .store import LayeredStore, SemanticUnit, UnitMetadata
from .terms import Iri, Literal, Triple, decimal, integer

HAS_MIN = V.su("has-minimum-count")
HAS_MAX = V.su("has-maximum-count")
HAS_COUNT_UNIT = V.su("has-count-unit")


def _statement(store, g) -> SemanticUnit:
    unit = store.unit(g)
    if not unit.is_statement:
        raise NotAStatementUnit(f"{g} is a compound unit")
    return unit


def negate(store: LayeredStore, g: Iri) -> SemanticUnit:
    """Tag a statement unit as negated. Calling it twice changes nothing."""
    with store._lock:
        unit = _statement(store, g)
        if V.CARDINALITY_UNIT in unit.kinds:
            raise ModifierConflict("negating a cardinality restriction is not defined")
        return store.add_kinds(g, V.NEGATION_UNIT)


def unnegate(store: LayeredStore, g: Iri) -> SemanticUnit:
    with store._lock:
        _statement(store, g)
        return store.remove_kinds(g, V.NEGATION_UNIT)


def is_negated(unit: SemanticUnit) -> bool:
    return V.NEGATION_UNIT in unit.kinds


@dataclass(frozen=True)
class CardinalitySpec:
    exact: int | None = None
    min: Decimal | float | int | None = None
    max: Decimal | float | int | None = None
    value_unit: Iri | None = None

    def validate(self):
        ranged = self.min is not None or self.max is not None
        if (self.exact is None) == (not ranged):
            raise InvalidSpec("give either an exact count or a min/max range")
        if self.exact is not None:
            if isinstance(self.exact, bool) or not isinstance(self.exact, int) or self.exact < 0:
                raise InvalidSpec(f"exact count must be a non-negative integer, got {self.exact!r}")
            return
        if self.value_unit is None:
            raise InvalidSpec("a range form needs a count unit or percent")
        lo = Decimal(str(self.min)) if self.min is not None else None
        hi = Decimal(str(self.max)) if self.max is not None else None
        for v in (lo, hi):
            if v is not None and v < 0:
                raise InvalidSpec("bounds must be non-negative")
            if v is not None and self.value_unit == V.PERCENT and v > 100:
                raise InvalidSpec("percent bounds must lie within [0, 100]")
        if lo is not None and hi is not None and lo > hi:
            raise InvalidSpec(f"min {lo} exceeds max {hi}")

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def triples(self, subject: Iri) -> list[Triple]:
        if self.exact is not None:
            return [Triple(subject, V.OWL_QUALIFIED_CARDINALITY, integer(self.exact))]
        out = [Triple(subject, HAS_COUNT_UNIT, Iri(self.value_unit))]
        if self.min is not None:
            out.append(Triple(subject, HAS_MIN, decimal(self.min)))
        if self.max is not None:
            out.append(Triple(subject, HAS_MAX, decimal(self.max)))
        return out


def cardinality_of(store: LayeredStore, g: Iri) -> CardinalitySpec | None:
    unit = store.unit(g)
    if V.CARDINALITY_UNIT not in unit.kinds:
        return None
    kw = {}
    for t in store.data_graph(g):
        if t.subject != unit.subject:
            continue
        if t.predicate == V.OWL_QUALIFIED_CARDINALITY:
            kw["exact"] = int(t.object.lexical)
        elif t.predicate == HAS_MIN:
            kw["min"] = t.object.value
        elif t.predicate == HAS_MAX:
            kw["max"] = t.object.value
        elif t.predicate == HAS_COUNT_UNIT:
            kw["value_unit"] = t.object
    return CardinalitySpec(**kw)


def restrict_cardinality(store: LayeredStore, g: Iri, spec: CardinalitySpec) -> SemanticUnit:
    spec.validate()
    with store._lock:
        unit = _statement(store, g)
        if V.SOME_INSTANCE_IDENT not in unit.kinds:
            raise NotSomeInstanceUnit(f"{g} is not a some-instance identification unit")
        if V.NEGATION_UNIT in unit.kinds:
            raise ModifierConflict("restricting the cardinality of a negated unit is not defined")
        if V.CARDINALITY_UNIT in unit.kinds:
            raise InvalidSpec(f"{g} already carries a cardinality restriction")
        for t in spec.triples(unit.subject):
            store.add_triple(g, t)
        return store.add_kinds(g, V.CARDINALITY_UNIT)


class BooleanOperator(Enum):
    AND = "AND"
    OR = "OR"
    XOR = "XOR"
    NOT = "NOT"
    EQUAL = "EQUAL"

    @property
    def kind(self) -> Iri:
        return V.su(f"boolean-{self.value.lower()}-unit")

    def check_arity(self, n: int):
        if self is BooleanOperator.NOT and n != 1:
            raise ArityViolation(f"NOT takes exactly one operand, got {n}")
        if self is BooleanOperator.EQUAL and n != 2:
            raise ArityViolation(f"EQUAL takes exactly two operands, got {n}")
        if self in (BooleanOperator.AND, BooleanOperator.OR, BooleanOperator.XOR) and n < 2:
            raise ArityViolation(f"{self.value} takes at least two operands, got {n}")


def build_boolean_unit(store: LayeredStore, operator: BooleanOperator | str,
                       operands: Sequence[Iri]) -> SemanticUnit:
    """Combine statement units or question units under a Boolean operator.

    Operand order is kept through an index attribute so EQUAL and NOT stay
    unambiguous after a round trip.
    """
    op = BooleanOperator(operator) if not isinstance(operator, BooleanOperator) else operator
    operands = [Iri(o) for o in operands]
    op.check_arity(len(operands))
    for o in operands:
        if not store.has_unit(o) and o not in store.questions:
            raise UnknownUnit(f"unknown operand {o}", unit=o)
    over_questions = [o in store.questions for o in operands]
    if any(over_questions) and not all(over_questions):
        raise ArityViolation("operands must be all statement units or all question units")
    with store._lock:
        g = store.mint_gupri(store.base, f"boolean {op.value}")
        attrs = [(V.HAS_OPERATOR, Literal(op.value))]
        attrs += [(V.su("has-operand-order"), Literal(f"{i}:{o}")) for i, o in enumerate(operands)]
        unit = SemanticUnit(g, frozenset({V.BOOLEAN_UNIT, op.kind}),
                            associated_units=tuple((V.HAS_OPERAND, o) for o in operands),
                            is_statement=False, attributes=tuple(attrs),
                            metadata=UnitMetadata(logic_framework="None"))
        if all(over_questions):
            # questions live in their own registry, outside the exchanged graph
            store.questions[g] = unit
            return unit
        return store.register_unit(unit)


def boolean_parts(unit: SemanticUnit) -> tuple[BooleanOperator, list[Iri]]:
    op = BooleanOperator(str(unit.attribute(V.HAS_OPERATOR)))
    order = sorted((int(str(v).split(":", 1)[0]), Iri(str(v).split(":", 1)[1]))
                   for p, v in unit.attributes if p == V.su("has-operand-order"))
    return op, [o for _, o in order]
