"""Statement units: categories, builders and metadata."""
from __future__ import annotations

from enum import Enum
from typing import Mapping, Sequence

from . import vocab as V
from .errors import SlotMismatch, SubjectCategoryConflict, UnknownSchema, UnknownUnit
from .resources import ResourceCategory, TypedResource
from .schemas import SchemaTemplate, instantiate
from .store import LayeredStore, SemanticUnit, UnitMetadata
from .terms import Iri, Literal


class StatementCategory(Enum):
    ASSERTIONAL = "Assertional"
    CONTINGENT = "Contingent"
    PROTOTYPICAL = "Prototypical"
    UNIVERSAL = "Universal"
    LEXICAL = "Lexical"

    @property
    def kind(self) -> Iri:
        return CATEGORY_KIND[self]

    @property
    def word(self) -> str:
        return self.value.lower()


CATEGORY_KIND = {
    StatementCategory.ASSERTIONAL: V.ASSERTIONAL_UNIT,
    StatementCategory.CONTINGENT: V.CONTINGENT_UNIT,
    StatementCategory.PROTOTYPICAL: V.PROTOTYPICAL_UNIT,
    StatementCategory.UNIVERSAL: V.UNIVERSAL_UNIT,
    StatementCategory.LEXICAL: V.LEXICAL_UNIT,
}
KIND_CATEGORY = {k: c for c, k in CATEGORY_KIND.items()}

_BY_RESOURCE = {
    ResourceCategory.NAMED_INDIVIDUAL: StatementCategory.ASSERTIONAL,
    ResourceCategory.SOME_INSTANCE: StatementCategory.CONTINGENT,
    ResourceCategory.MOST_INSTANCES: StatementCategory.PROTOTYPICAL,
    ResourceCategory.EVERY_INSTANCE: StatementCategory.UNIVERSAL,
    ResourceCategory.ALL_INSTANCES: StatementCategory.UNIVERSAL,
    ResourceCategory.CLASS_REF: StatementCategory.UNIVERSAL,
    ResourceCategory.PROPERTY_REF: StatementCategory.UNIVERSAL,
}


def classify_category(subject: TypedResource) -> StatementCategory:
    return _BY_RESOURCE[subject.category]


def unit_category(unit: SemanticUnit) -> StatementCategory | None:
    """Category of a unit. Lexical wins because identification units are lexical."""
    if V.LEXICAL_UNIT in unit.kinds:
        return StatementCategory.LEXICAL
    for kind, cat in KIND_CATEGORY.items():
        if kind in unit.kinds:
            return cat
    return None


def get_schema(store: LayeredStore, schema) -> SchemaTemplate:
    if isinstance(schema, SchemaTemplate):
        if schema.id not in store.schemas:
            store.schemas[schema.id] = schema
        return schema
    if schema in store.schemas:
        return store.schemas[schema]
    for s in store.schemas.values():
        if s.name == schema:
            return s
    raise UnknownSchema(f"no schema named {schema!r}")


def _resolve_category(store, value) -> StatementCategory:
    if isinstance(value, TypedResource):
        return classify_category(value)
    if store.has_unit(value):
        return StatementCategory.ASSERTIONAL
    r = store.resources.get(value)
    if r is not None:
        return classify_category(r)
    # undeclared IRIs (agents, places) are treated as named individuals
    return StatementCategory.ASSERTIONAL


def _check_value(store, slot, value):
    if value is None:
        if slot.optional:
            return None
        raise SlotMismatch(f"slot {slot.role} is required")
    if isinstance(value, TypedResource):
        value_iri = value.iri
    else:
        value_iri = value
    if slot.kind == "literal":
        if not isinstance(value, Literal):
            raise SlotMismatch(f"slot {slot.role} expects a literal, got {value!r}")
        if slot.expected is not None and value.datatype != slot.expected:
            raise SlotMismatch(f"slot {slot.role} expects datatype {slot.expected.local_name}, "
                               f"got {value.datatype.local_name}")
        return value
    if isinstance(value, Literal):
        raise SlotMismatch(f"slot {slot.role} expects a resource, got literal {value.lexical!r}")
    value_iri = Iri(value_iri)
    if slot.kind == "unit":
        if not store.has_unit(value_iri):
            raise UnknownUnit(f"slot {slot.role} refers to unregistered unit {value_iri}", unit=value_iri)
        return value_iri
    r = value if isinstance(value, TypedResource) else store.resources.get(value_iri)
    if slot.kind == "class":
        if r is not None and r.category.instance_like:
            raise SlotMismatch(f"slot {slot.role} expects a class, got {r.category.value} resource")
    elif slot.kind == "resource":
        if store.has_unit(value_iri):
            raise SlotMismatch(f"slot {slot.role} expects a resource, got unit {value_iri}")
        if slot.expected is not None and r is not None and r.target_class not in (None, slot.expected):
            raise SlotMismatch(f"slot {slot.role} expects an instance of {slot.expected}")
    if isinstance(value, TypedResource):
        store.resources.setdefault(value.iri, value)
    return value_iri


def bind_slots(store: LayeredStore, schema: SchemaTemplate, subject, objects) -> dict:
    slots = schema.object_slots
    if isinstance(objects, Mapping):
        unknown = set(objects) - {s.role for s in slots}
        if unknown:
            raise SlotMismatch(f"unknown roles {sorted(unknown)} for schema {schema.name}")
        given = dict(objects)
    else:
        objects = list(objects)
        required = [s for s in slots if not s.optional]
        if not len(required) <= len(objects) <= len(slots):
            raise SlotMismatch(f"schema {schema.name} takes {len(required)} to {len(slots)} objects, "
                               f"got {len(objects)}")
        given = {s.role: v for s, v in zip(slots, objects)}
    values = {schema.subject_slot.role: _check_value(store, schema.subject_slot, subject)}
    for s in slots:
        v = _check_value(store, s, given.get(s.role))
        if v is not None:
            values[s.role] = v
    return values


def _default_meta(store, meta, schema):
    if meta is None:
        return UnitMetadata(schema_id=schema.id, logic_framework=store.default_logic_framework)
    return UnitMetadata(**{**meta.__dict__, "schema_id": schema.id})


def create_statement_unit(store: LayeredStore, schema, subject, objects: Sequence | Mapping,
                          meta: UnitMetadata | None = None, *, category: StatementCategory | None = None,
                          extra_kinds: Sequence[Iri] = (), hint: str | None = None) -> SemanticUnit:
    """Build a statement unit from a schema. Unit-valued slots make it a complex unit."""
    schema = get_schema(store, schema)
    with store._lock:
        values = bind_slots(store, schema, subject, objects)
        derived = StatementCategory.LEXICAL if schema.lexical else _resolve_category(store, subject)
        if category is not None and category != derived:
            raise SubjectCategoryConflict(
                f"subject implies {derived.value}, explicit category is {category.value}")
        units = [(s.role, values[s.role]) for s in schema.slots
                 if s.role in values and isinstance(values[s.role], Iri) and store.has_unit(values[s.role])]
        kinds = {V.STATEMENT_UNIT, schema.relation_class, derived.kind, *extra_kinds}
        if units:
            kinds.add(V.COMPLEX_STATEMENT_UNIT)
        subj = values[schema.subject_slot.role]
        label = hint or f"{store.label(subj)} {schema.name}"
        g = store.mint_gupri(store.base, label)
        unit = SemanticUnit(g, frozenset(kinds), subject=subj,
                            associated_units=tuple((V.HAS_ASSOCIATED, u) for _, u in units),
                            metadata=_default_meta(store, meta, schema))
        store.register_unit(unit, instantiate(schema, values, g))
        return unit


def create_complex_statement_unit(store: LayeredStore, schema, subject, objects,
                                  meta: UnitMetadata | None = None, **kw) -> SemanticUnit:
    """Like create_statement_unit, but at least one position must hold a unit Gupri."""
    schema = get_schema(store, schema)
    if not any(s.kind == "unit" for s in schema.slots):
        raise SlotMismatch(f"schema {schema.name} has no unit-valued slot")
    return create_statement_unit(store, schema, subject, objects, meta, **kw)


def attach_metadata(store: LayeredStore, g: Iri, meta: UnitMetadata) -> None:
    unit = store.unit(g)
    if meta.schema_id is None and unit.metadata.schema_id is not None:
        meta = UnitMetadata(**{**meta.__dict__, "schema_id": unit.metadata.schema_id})
    store.set_metadata(g, meta)


def is_plain_statement(unit: SemanticUnit) -> bool:
    return unit.is_statement and V.NEGATION_UNIT not in unit.kinds and V.DIRECTIVE_UNIT not in unit.kinds


def schema_of(store: LayeredStore, unit: SemanticUnit) -> SchemaTemplate | None:
    sid = unit.metadata.schema_id
    return store.schemas.get(sid) if sid is not None else None


def slots_of(store: LayeredStore, g: Iri) -> dict | None:
    from .schemas import extract_slots
    unit = store.unit(g)
    schema = schema_of(store, unit)
    if schema is None:
        return None
    return extract_slots(schema, store.data_graph(g))
