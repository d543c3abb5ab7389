"""Resource categories and identification units."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import vocab as V
from .errors import DuplicateIdentification, MissingTargetClass
from .store import LayeredStore, SemanticUnit, UnitMetadata
from .terms import Iri, Literal, Triple, compact


class ResourceCategory(Enum):
    NAMED_INDIVIDUAL = "NamedIndividual"
    SOME_INSTANCE = "SomeInstance"
    MOST_INSTANCES = "MostInstances"
    EVERY_INSTANCE = "EveryInstance"
    ALL_INSTANCES = "AllInstances"
    CLASS_REF = "ClassRef"
    PROPERTY_REF = "PropertyRef"

    @property
    def instance_like(self) -> bool:
        return self not in (ResourceCategory.CLASS_REF, ResourceCategory.PROPERTY_REF)

    @property
    def quantified(self) -> bool:
        return self.instance_like and self is not ResourceCategory.NAMED_INDIVIDUAL


MARKERS = {
    ResourceCategory.NAMED_INDIVIDUAL: V.OWL_NAMED_INDIVIDUAL,
    ResourceCategory.SOME_INSTANCE: V.SOME_INSTANCE_RESOURCE,
    ResourceCategory.MOST_INSTANCES: V.MOST_INSTANCES_RESOURCE,
    ResourceCategory.EVERY_INSTANCE: V.EVERY_INSTANCE_RESOURCE,
    ResourceCategory.ALL_INSTANCES: V.ALL_INSTANCES_RESOURCE,
}
MARKER_CATEGORY = {m: c for c, m in MARKERS.items()}

IDENT_KINDS = {
    ResourceCategory.NAMED_INDIVIDUAL: V.NAMED_INDIVIDUAL_IDENT,
    ResourceCategory.SOME_INSTANCE: V.SOME_INSTANCE_IDENT,
    ResourceCategory.MOST_INSTANCES: V.MOST_INSTANCES_IDENT,
    ResourceCategory.EVERY_INSTANCE: V.EVERY_INSTANCE_IDENT,
    ResourceCategory.ALL_INSTANCES: V.ALL_INSTANCES_IDENT,
    ResourceCategory.CLASS_REF: V.CLASS_IDENT,
}

IDENT_SCHEMA_IDS = {
    ResourceCategory.NAMED_INDIVIDUAL: V.su("schema/named-individual-identification"),
    ResourceCategory.SOME_INSTANCE: V.su("schema/some-instance-identification"),
    ResourceCategory.MOST_INSTANCES: V.su("schema/most-instances-identification"),
    ResourceCategory.EVERY_INSTANCE: V.su("schema/every-instance-identification"),
    ResourceCategory.ALL_INSTANCES: V.su("schema/all-instances-identification"),
}
CLASS_IDENT_SCHEMA = V.su("schema/class-identification")


@dataclass(frozen=True)
class TypedResource:
    iri: Iri
    category: ResourceCategory
    target_class: Iri | None
    label: str

    def typing_triples(self) -> list[Triple]:
        if not self.category.instance_like:
            return []
        return [Triple(self.iri, V.RDF_TYPE, MARKERS[self.category]),
                Triple(self.iri, V.RDF_TYPE, self.target_class)]

    def __str__(self):
        return str(self.iri)


@dataclass(frozen=True)
class MostInstancesSemantics:
    """Checkable claim that most instances of ``target_class`` fall into the subclass.

    ``distinguishing_properties`` lists (predicate, value-class) pairs that define
    membership of the distinguishing subclass, for example ``[(has-quality, White)]``.
    """

    target_class: Iri
    distinguishing_subclass: Iri
    distinguishing_properties: tuple = ()


def category_from_types(types) -> ResourceCategory:
    """Recover a category from the rdf:type objects of a resource."""
    found = [MARKER_CATEGORY[t] for t in types if t in MARKER_CATEGORY]
    if len(found) == 1:
        return found[0]
    if not found and V.OWL_CLASS in types:
        return ResourceCategory.CLASS_REF
    raise ValueError(f"cannot determine a category from {sorted(map(str, types))}")


def declare_resource(store: LayeredStore, label: str, category: ResourceCategory,
                     target_class: Iri | None = None, iri: Iri | None = None) -> TypedResource:
    if category.instance_like and target_class is None:
        raise MissingTargetClass(f"{category.value} resource {label!r} needs a target class")
    if iri is None:
        if category.instance_like:
            iri = store.mint_gupri(store.resource_base, label)
        else:
            raise MissingTargetClass("class and property references need an explicit IRI")
    r = TypedResource(Iri(iri), category, Iri(target_class) if target_class else None, label)
    with store._lock:
        store.resources[r.iri] = r
        store.reserve(r.iri)
    return r


def _meta(store, meta, schema_id):
    if meta is None:
        return UnitMetadata(schema_id=schema_id, logic_framework=store.default_logic_framework)
    return UnitMetadata(**{**meta.__dict__, "schema_id": schema_id})


def create_identification_unit(store: LayeredStore, r: TypedResource,
                               meta: UnitMetadata | None = None) -> SemanticUnit:
    if not r.category.instance_like:
        raise ValueError("use create_class_identification_unit for class references")
    with store._lock:
        if r.iri in store.identification_of:
            raise DuplicateIdentification(f"{r.label!r} already has identification unit "
                                          f"{store.identification_of[r.iri]}")
        store.resources.setdefault(r.iri, r)
        g = store.mint_gupri(store.base, f"{r.label} identification")
        kinds = {V.STATEMENT_UNIT, V.LEXICAL_UNIT, V.IDENTIFICATION_UNIT, IDENT_KINDS[r.category]}
        triples = r.typing_triples() + [Triple(r.iri, V.RDFS_LABEL, Literal(r.label))]
        unit = SemanticUnit(g, frozenset(kinds), subject=r.iri,
                            metadata=_meta(store, meta, IDENT_SCHEMA_IDS[r.category]))
        store.register_unit(unit, triples)
        store.identification_of[r.iri] = g
        return unit


def create_class_identification_unit(store: LayeredStore, class_iri: Iri, label: str,
                                     ontology: Iri | None = None, ontology_version: Iri | None = None,
                                     meta: UnitMetadata | None = None) -> SemanticUnit:
    class_iri = Iri(class_iri)
    with store._lock:
        if class_iri in store.identification_of:
            raise DuplicateIdentification(f"class {class_iri} already identified")
        triples = [Triple(class_iri, V.RDFS_LABEL, Literal(label)),
                   Triple(class_iri, V.DC_IDENTIFIER, Literal(compact(class_iri, store.prefix_map)))]
        schema = CLASS_IDENT_SCHEMA
        if ontology is not None:
            triples.append(Triple(class_iri, V.RDFS_IS_DEFINED_BY, Iri(ontology)))
            if ontology_version is not None:
                triples.append(Triple(Iri(ontology), V.OWL_VERSION_IRI, Iri(ontology_version)))
        g = store.mint_gupri(store.base, f"{label} class identification")
        kinds = {V.STATEMENT_UNIT, V.LEXICAL_UNIT, V.IDENTIFICATION_UNIT, V.CLASS_IDENT}
        unit = SemanticUnit(g, frozenset(kinds), subject=class_iri, metadata=_meta(store, meta, schema))
        store.register_unit(unit, triples)
        store.resources[class_iri] = TypedResource(class_iri, ResourceCategory.CLASS_REF, None, label)
        store.identification_of[class_iri] = g
        return unit


def identify(store: LayeredStore, label: str, category: ResourceCategory, target_class: Iri,
             iri: Iri | None = None, meta: UnitMetadata | None = None) -> TypedResource:
    """Declare a resource and create its identification unit in one step."""
    r = declare_resource(store, label, category, target_class, iri)
    create_identification_unit(store, r, meta)
    return r


def resource_of(store: LayeredStore, value) -> TypedResource | None:
    if isinstance(value, TypedResource):
        return value
    if isinstance(value, Literal):
        return None
    return store.resources.get(value)


def identification_coverage(store: LayeredStore) -> list[Iri]:
    """Typed resources used in a statement's data graph that lack an identification unit."""
    missing = set()
    for u in store.statement_units():
        if V.IDENTIFICATION_UNIT in u.kinds:
            continue
        for t in store.data_graph(u.gupri):
            for term in (t.subject, t.object):
                r = store.resources.get(term)
                if r is not None and r.category.instance_like and term not in store.identification_of:
                    missing.add(term)
    return sorted(missing)
