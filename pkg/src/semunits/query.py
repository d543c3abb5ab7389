"""Question units and their evaluation.

A question unit is a copy of a statement unit's slots in which some slots
are underspecified: a ``TypedVariable`` asks "which instance of C", a
``Range`` asks for a literal inside bounds. Compilation yields a plan that
filters candidate statement units by schema and category and applies the
slot constraints. Plans run natively over the store; no query text is emitted.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from decimal import Decimal
from itertools import product
from typing import Mapping

from . import vocab as V
from .errors import MixedModes, NotAStatementUnit, SlotTypeMismatch, UnknownRole, UnsatisfiableRange
from .modifiers import BooleanOperator, boolean_parts
from .schemas import _term_from_json, _term_to_json
from .statements import StatementCategory, get_schema, slots_of, unit_category
from .store import LayeredStore, SemanticUnit
from .terms import Iri, Literal, XSDType, term_key


@dataclass(frozen=True)
class Fixed:
    value: object


@dataclass(frozen=True)
class TypedVariable:
    target_class: Iri | None = None
    category: str = "SomeInstance"


@dataclass(frozen=True)
class Range:
    datatype: Iri = XSDType.decimal
    min: Decimal | None = None
    max: Decimal | None = None
    min_inclusive: bool = True
    max_inclusive: bool = True

    def __post_init__(self):
        for name in ("min", "max"):
            v = getattr(self, name)
            if v is not None and not isinstance(v, Decimal):
                object.__setattr__(self, name, Decimal(str(v)))

    @property
    def well_ordered(self) -> bool:
        return self.min is None or self.max is None or self.min <= self.max

    def contains(self, v: Decimal) -> bool:
        if self.min is not None and (v < self.min or (v == self.min and not self.min_inclusive)):
            return False
        if self.max is not None and (v > self.max or (v == self.max and not self.max_inclusive)):
            return False
        return True


Slot = Fixed | TypedVariable | Range


@dataclass(frozen=True)
class QuestionUnit:
    source_schema: Iri | None
    slots: tuple = ()  # sorted (role, Slot) pairs
    category: StatementCategory = StatementCategory.ASSERTIONAL
    boolean_tree: tuple | None = None  # (BooleanOperator, tuple of QuestionUnit)
    gupri: Iri | None = None

    @property
    def slot_map(self) -> dict:
        return dict(self.slots)

    @property
    def variable_roles(self) -> tuple:
        return tuple(r for r, s in self.slots if not isinstance(s, Fixed))

    @property
    def is_boolean(self) -> bool:
        if self.boolean_tree is not None:
            return all(q.is_boolean for q in self.boolean_tree[1])
        return not self.variable_roles

    @property
    def kind(self) -> Iri:
        return V.su(f"{self.category.word}-question-unit")


def _slots(mapping: Mapping) -> tuple:
    return tuple(sorted(mapping.items()))


def derive_question(store: LayeredStore, source: Iri) -> QuestionUnit:
    """Copy a statement unit's slot values into a fully fixed question."""
    unit = store.unit(source)
    if not unit.is_statement:
        raise NotAStatementUnit(f"{source} is not a statement unit")
    values = slots_of(store, Iri(source))
    if values is None:
        raise NotAStatementUnit(f"{source} has no schema to derive a question from")
    return QuestionUnit(unit.metadata.schema_id, _slots({r: Fixed(v) for r, v in values.items()}),
                        unit_category(unit))


def underspecify(q: QuestionUnit, role: str, slot: Slot, store: LayeredStore | None = None) -> QuestionUnit:
    """Replace one slot. A TypedVariable without a class takes the class of the fixed value it replaces."""
    current = q.slot_map
    if role not in current:
        raise UnknownRole(f"question has no role {role!r}")
    old = current[role]
    literal_slot = isinstance(old, Range) or (isinstance(old, Fixed) and isinstance(old.value, Literal))
    if isinstance(slot, Range) and not literal_slot:
        raise SlotTypeMismatch(f"a range cannot replace resource slot {role!r}")
    if isinstance(slot, TypedVariable):
        if literal_slot:
            raise SlotTypeMismatch(f"a typed variable cannot replace literal slot {role!r}")
        if slot.target_class is None:
            cls = store.class_of(old.value) if store is not None and isinstance(old, Fixed) else None
            if cls is None:
                raise SlotTypeMismatch(f"typed variable for {role!r} needs a class")
            slot = replace(slot, target_class=cls)
    current[role] = slot
    return replace(q, slots=_slots(current), gupri=None)


def register_question(store: LayeredStore, q: QuestionUnit, hint: str = "question") -> QuestionUnit:
    with store._lock:
        g = store.mint_gupri(store.base, hint)
        q = replace(q, gupri=g)
        store.questions[g] = q
        return q


def combine(op: BooleanOperator | str, *operands: QuestionUnit) -> QuestionUnit:
    op = BooleanOperator(op) if not isinstance(op, BooleanOperator) else op
    op.check_arity(len(operands))
    return QuestionUnit(None, (), operands[0].category, (op, tuple(operands)))


# plans --------------------------------------------------------------------

@dataclass(frozen=True)
class QueryPlan:
    schema_id: Iri | None
    categories: frozenset
    constraints: tuple  # sorted (role, Slot)
    projection: tuple
    mode: str  # "Boolean" | "Bindings"
    operator: BooleanOperator | None = None
    children: tuple = ()


def _categories(cat: StatementCategory) -> frozenset:
    if cat is StatementCategory.CONTINGENT:
        # a fact is a proof for a possibility
        return frozenset({StatementCategory.CONTINGENT, StatementCategory.ASSERTIONAL})
    return frozenset({cat})


def compile(q, store: LayeredStore | None = None) -> QueryPlan:  # noqa: A001
    if isinstance(q, SemanticUnit):
        op, operands = boolean_parts(q)
        q = QuestionUnit(None, (), StatementCategory.ASSERTIONAL,
                         (op, tuple(store.questions[o] for o in operands)))
    if q.boolean_tree is not None:
        op, operands = q.boolean_tree
        op.check_arity(len(operands))
        children = tuple(compile(o, store) for o in operands)
        modes = {c.mode for c in children}
        if len(modes) != 1:
            raise MixedModes("Boolean operands mix yes/no questions and binding questions")
        projection = tuple(sorted({r for c in children for r in c.projection}))
        return QueryPlan(None, frozenset(), (), projection, modes.pop(), op, children)
    if not q.slots:
        raise UnknownRole("a question needs at least one slot")
    for role, s in q.slots:
        if isinstance(s, Range) and not s.well_ordered:
            raise UnsatisfiableRange(f"range for {role!r} has min {s.min} above max {s.max}")
        if isinstance(s, TypedVariable) and s.target_class is None:
            raise SlotTypeMismatch(f"typed variable for {role!r} needs a class")
    projection = q.variable_roles
    return QueryPlan(q.source_schema, _categories(q.category), q.slots, projection,
                     "Boolean" if not projection else "Bindings")


# execution ----------------------------------------------------------------

@dataclass(frozen=True)
class BindingRow:
    values: tuple  # sorted (role, value)
    units: tuple = ()

    def get(self, role, default=None):
        return dict(self.values).get(role, default)

    @property
    def key(self) -> tuple:
        return tuple((r, term_key(v)) for r, v in self.values)


def _lift(store, v):
    r = store.resources.get(v) if isinstance(v, Iri) else None
    return r.target_class if r is not None and r.target_class is not None else v


def _matches(store, slot, value) -> bool:
    if isinstance(slot, Fixed):
        if value == slot.value:
            return True
        r = store.resources.get(slot.value) if isinstance(slot.value, Iri) else None
        return r is not None and r.category.quantified and _lift(store, value) == r.target_class
    if isinstance(slot, TypedVariable):
        return isinstance(value, Iri) and store.class_of(value) == slot.target_class
    if isinstance(slot, Range):
        return isinstance(value, Literal) and value.is_numeric and slot.contains(Decimal(str(value.value)))
    return False


def candidates(plan: QueryPlan, store: LayeredStore) -> list:
    """Statement units passing the schema and category filter, with their slot values."""
    out = []
    for unit in store.statement_units():
        if unit.metadata.schema_id != plan.schema_id:
            continue
        if V.NEGATION_UNIT in unit.kinds or V.DIRECTIVE_UNIT in unit.kinds:
            continue
        if unit_category(unit) not in plan.categories:
            continue
        values = slots_of(store, unit.gupri)
        if values is not None:
            out.append((unit.gupri, values))
    return out


def _row(plan, gupri, values) -> BindingRow:
    return BindingRow(tuple((r, values.get(r)) for r in plan.projection), (gupri,))


def _rows(plan: QueryPlan, store) -> dict:
    out = {}
    for g, values in candidates(plan, store):
        if all(role in values and _matches(store, s, values[role]) for role, s in plan.constraints):
            row = _row(plan, g, values)
            prev = out.get(row.key)
            out[row.key] = row if prev is None else BindingRow(row.values, tuple(sorted({*prev.units, g})))
    return out


def _universe(plan: QueryPlan, store) -> dict:
    if plan.operator is None:
        return {(row := _row(plan, g, v)).key: row for g, v in candidates(plan, store)}
    out = {}
    for c in plan.children:
        out.update(_universe(c, store))
    return out


def _join(a: dict, b: dict) -> dict:
    out = {}
    for ra, rb in product(a.values(), b.values()):
        da, db = dict(ra.values), dict(rb.values)
        if all(term_key(da[k]) == term_key(db[k]) for k in da.keys() & db.keys()):
            merged = BindingRow(tuple(sorted({**da, **db}.items())), tuple(sorted({*ra.units, *rb.units})))
            out[merged.key] = merged
    return out


def _eval(plan: QueryPlan, store) -> dict | bool:
    if plan.operator is None:
        rows = _rows(plan, store)
        return bool(rows) if plan.mode == "Boolean" else rows
    op = plan.operator
    results = [_eval(c, store) for c in plan.children]
    if plan.mode == "Boolean":
        if op is BooleanOperator.AND:
            return all(results)
        if op is BooleanOperator.OR:
            return any(results)
        if op is BooleanOperator.XOR:
            return sum(results) % 2 == 1
        if op is BooleanOperator.NOT:
            return not results[0]
        return results[0] == results[1]
    if op is BooleanOperator.AND:
        out = results[0]
        for r in results[1:]:
            out = _join(out, r)
        return out
    if op is BooleanOperator.OR:
        out = {}
        for r in results:
            out.update(r)
        return out
    if op is BooleanOperator.XOR:
        counts: dict = {}
        rows = {}
        for r in results:
            for k, row in r.items():
                counts[k] = counts.get(k, 0) + 1
                rows.setdefault(k, row)
        return {k: rows[k] for k, n in counts.items() if n % 2 == 1}
    universe = _universe(plan, store)
    if op is BooleanOperator.NOT:
        return {k: row for k, row in universe.items() if k not in results[0]}
    a, b = results
    return {k: row for k, row in universe.items() if (k in a) == (k in b)}


def _row_sort(row: BindingRow):
    d = dict(row.values)
    return (str(d.get("subject", "")), tuple((r, term_key(v)) for r, v in row.values))


def execute(plan: QueryPlan, store: LayeredStore):
    """True/False for yes/no plans, otherwise binding rows sorted by subject then role."""
    result = _eval(plan, store)
    if isinstance(result, bool):
        return result
    return sorted(result.values(), key=_row_sort)


def ask(store: LayeredStore, q: QuestionUnit):
    return execute(compile(q, store), store)


# JSON ---------------------------------------------------------------------

def _slot_to_json(slot, prefixes):
    if isinstance(slot, Fixed):
        return {"fixed": _term_to_json(slot.value, prefixes)}
    if isinstance(slot, TypedVariable):
        return {"variable": _term_to_json(slot.target_class, prefixes), "category": slot.category}
    d = {"range": _term_to_json(slot.datatype, prefixes)}
    if slot.min is not None:
        d["min"] = str(slot.min)
    if slot.max is not None:
        d["max"] = str(slot.max)
    if not slot.min_inclusive:
        d["min_inclusive"] = False
    if not slot.max_inclusive:
        d["max_inclusive"] = False
    return d


def _slot_from_json(d, prefixes):
    if "fixed" in d:
        return Fixed(_term_from_json(d["fixed"], prefixes))
    if "variable" in d:
        cls = d["variable"]
        return TypedVariable(_term_from_json(cls, prefixes) if cls else None, d.get("category", "SomeInstance"))
    return Range(_term_from_json(d["range"], prefixes), d.get("min"), d.get("max"),
                 d.get("min_inclusive", True), d.get("max_inclusive", True))


def question_to_dict(q: QuestionUnit, prefixes: dict) -> dict:
    if q.boolean_tree is not None:
        op, operands = q.boolean_tree
        return {"operator": op.value, "operands": [question_to_dict(o, prefixes) for o in operands]}
    out = {"schema": _term_to_json(q.source_schema, prefixes), "category": q.category.value,
           "slots": {r: _slot_to_json(s, prefixes) for r, s in q.slots}}
    if q.gupri is not None:
        out["gupri"] = str(q.gupri)
    return out


def question_from_dict(d: dict, prefixes: dict) -> QuestionUnit:
    if "operator" in d:
        return combine(d["operator"], *(question_from_dict(o, prefixes) for o in d["operands"]))
    slots = {r: _slot_from_json(s, prefixes) for r, s in d["slots"].items()}
    return QuestionUnit(_term_from_json(d["schema"], prefixes), _slots(slots),
                        StatementCategory(d.get("category", "Assertional")),
                        gupri=Iri(d["gupri"]) if d.get("gupri") else None)


def schema_of_question(store: LayeredStore, q: QuestionUnit):
    return get_schema(store, q.source_schema) if q.source_schema is not None else None
