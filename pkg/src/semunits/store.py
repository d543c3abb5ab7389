"""Layered triple store.

The data layer is a partition: every triple lives in exactly one statement
unit's named graph. The units layer describes the units themselves (kinds,
subject, associations, metadata) and is derived from the unit records.
"""
from __future__ import annotations

import copy
import hashlib
import re
import threading
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

from . import vocab as V
from .errors import (
    CertaintyOutOfRange, CycleDetected, DuplicateUnit, PartitionViolation,
    UnitReferenced, UnknownUnit,
)
from .terms import Iri, Literal, Triple, Term, XSDType, term_key, triple_key

LOGIC_FRAMEWORKS = ("OWL-DL", "FOL", "LogicProgram", "None")
DEFAULT_BASE = "https://kg.example/su/"
DEFAULT_RESOURCE_BASE = "https://kg.example/res/"


@dataclass(frozen=True)
class UnitMetadata:
    schema_id: Iri | None = None
    authors: tuple[Iri, ...] = ()
    logic_framework: str = "OWL-DL"
    certainty: float | None = None
    source: Term | None = None
    extraction_method: str | None = None
    creator: Iri | None = None
    created_at: Literal | None = None
    license: Iri | None = None
    version: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "authors", tuple(sorted(Iri(a) for a in self.authors)))
        if self.logic_framework not in LOGIC_FRAMEWORKS:
            raise ValueError(f"unknown logic framework {self.logic_framework!r}")
        if self.certainty is not None and not 0.0 <= float(self.certainty) <= 1.0:
            raise CertaintyOutOfRange(f"certainty {self.certainty} outside [0, 1]")

    def triples(self, g: Iri) -> list[Triple]:
        out = [Triple(g, V.HAS_LOGIC_FRAMEWORK, Literal(self.logic_framework))]
        if self.schema_id:
            out.append(Triple(g, V.HAS_SCHEMA, self.schema_id))
        out += [Triple(g, V.HAS_AUTHOR, a) for a in self.authors]
        if self.certainty is not None:
            out.append(Triple(g, V.HAS_CERTAINTY, Literal(repr(float(self.certainty)), XSDType.decimal)))
        if self.source is not None:
            out.append(Triple(g, V.DC_SOURCE, self.source))
        if self.extraction_method:
            out.append(Triple(g, V.HAS_EXTRACTION_METHOD, Literal(self.extraction_method)))
        if self.creator:
            out.append(Triple(g, V.DC_CREATOR, self.creator))
        if self.created_at is not None:
            out.append(Triple(g, V.DC_CREATED, self.created_at))
        if self.license:
            out.append(Triple(g, V.DC_LICENSE, self.license))
        if self.version:
            out.append(Triple(g, V.OWL_VERSION_INFO, Literal(self.version)))
        return out

    @classmethod
    def from_triples(cls, triples: Iterable[Triple]) -> "UnitMetadata":
        kw: dict = {"authors": [], "logic_framework": "None"}
        for t in triples:
            p, o = t.predicate, t.object
            if p == V.HAS_LOGIC_FRAMEWORK:
                kw["logic_framework"] = str(o)
            elif p == V.HAS_SCHEMA:
                kw["schema_id"] = o
            elif p == V.HAS_AUTHOR:
                kw["authors"].append(o)
            elif p == V.HAS_CERTAINTY:
                kw["certainty"] = float(o.lexical)
            elif p == V.DC_SOURCE:
                kw["source"] = o
            elif p == V.HAS_EXTRACTION_METHOD:
                kw["extraction_method"] = str(o)
            elif p == V.DC_CREATOR:
                kw["creator"] = o
            elif p == V.DC_CREATED:
                kw["created_at"] = o
            elif p == V.DC_LICENSE:
                kw["license"] = o
            elif p == V.OWL_VERSION_INFO:
                kw["version"] = str(o)
        kw["authors"] = tuple(kw["authors"])
        return cls(**kw)


@dataclass(frozen=True)
class SemanticUnit:
    """Record of one semantic unit. ``is_statement`` units own a data graph."""

    gupri: Iri
    kinds: frozenset
    subject: Iri | None = None
    associated_units: tuple = ()
    is_statement: bool = True
    metadata: UnitMetadata = field(default_factory=UnitMetadata)
    anchor: Iri | None = None
    attributes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kinds", frozenset(Iri(k) for k in self.kinds))
        assoc = tuple(sorted({(Iri(r), Iri(g)) for r, g in self.associated_units}))
        object.__setattr__(self, "associated_units", assoc)
        attrs = tuple(sorted(set(self.attributes), key=lambda pv: (str(pv[0]), term_key(pv[1]))))
        object.__setattr__(self, "attributes", attrs)

    @property
    def data_graph(self) -> Iri | None:
        return self.gupri if self.is_statement else None

    @property
    def is_compound(self) -> bool:
        return not self.is_statement

    def has(self, kind: Iri) -> bool:
        return kind in self.kinds

    def members(self, role: Iri | None = None) -> list[Iri]:
        return [g for r, g in self.associated_units if role is None or r == role]

    def attribute(self, predicate: Iri, default=None):
        for p, v in self.attributes:
            if p == predicate:
                return v
        return default

    def triples(self) -> list[Triple]:
        """Units-layer triples describing this record."""
        g = self.gupri
        out = [Triple(g, V.RDF_TYPE, k) for k in self.kinds]
        if self.subject is not None:
            out.append(Triple(g, V.HAS_SUBJECT, self.subject))
        if self.anchor is not None:
            out.append(Triple(g, V.DESCRIBES, self.anchor))
        out += [Triple(g, r, a) for r, a in self.associated_units]
        out += [Triple(g, p, v) for p, v in self.attributes]
        out += self.metadata.triples(g)
        return out


UNIT_RECORD_PREDICATES = frozenset({V.HAS_SUBJECT, V.DESCRIBES}) | V.ASSOCIATION_ROLES | V.METADATA_PREDICATES


def unit_from_triples(g: Iri, triples: Iterable[Triple], is_statement: bool) -> SemanticUnit:
    """Rebuild a record from its units-layer triples."""
    kinds, assoc, attrs, meta = set(), [], [], []
    subject = anchor = None
    for t in triples:
        p = t.predicate
        if p == V.RDF_TYPE and isinstance(t.object, Iri):
            kinds.add(t.object)
        elif p == V.HAS_SUBJECT:
            subject = t.object
        elif p == V.DESCRIBES:
            anchor = t.object
        elif p in V.ASSOCIATION_ROLES:
            assoc.append((p, t.object))
        elif p in V.METADATA_PREDICATES:
            meta.append(t)
        else:
            attrs.append((p, t.object))
    return SemanticUnit(g, frozenset(kinds), subject, tuple(assoc), is_statement,
                        UnitMetadata.from_triples(meta), anchor, tuple(attrs))


@dataclass
class PartitionReport:
    duplicates: list = field(default_factory=list)     # (triple, [gupris])
    orphans: list = field(default_factory=list)        # triples in no graph
    unregistered_graphs: list = field(default_factory=list)
    layer_violations: list = field(default_factory=list)  # (gupri, triple)

    @property
    def empty(self) -> bool:
        return not (self.duplicates or self.orphans or self.unregistered_graphs or self.layer_violations)

    def __bool__(self):
        return not self.empty

    def to_dict(self) -> dict:
        def t3(t):
            return [str(x) for x in t]
        return {
            "duplicates": [{"triple": t3(t), "graphs": [str(g) for g in gs]} for t, gs in self.duplicates],
            "orphans": [t3(t) for t in self.orphans],
            "unregistered_graphs": [str(g) for g in self.unregistered_graphs],
            "layer_violations": [{"graph": str(g), "triple": t3(t)} for g, t in self.layer_violations],
        }


def slugify(hint: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", hint.lower()).strip("-")
    return slug or "unit"


def is_units_layer_triple(t: Triple) -> bool:
    if t.predicate in UNIT_RECORD_PREDICATES:
        return True
    return t.predicate == V.RDF_TYPE and isinstance(t.object, Iri) and V.is_unit_kind(t.object)


class LayeredStore:
    """In-memory layered store. Mutations are serialized by an internal lock."""

    def __init__(self, base: str = DEFAULT_BASE, resource_base: str = DEFAULT_RESOURCE_BASE,
                 prefixes: dict | None = None, default_logic_framework: str = "OWL-DL"):
        self.base = Iri(base)
        self.resource_base = Iri(resource_base)
        self.prefix_map: dict[str, str] = dict(V.DEFAULT_PREFIXES)
        self.prefix_map.update(prefixes or {})
        self.default_logic_framework = default_logic_framework
        self._lock = threading.RLock()
        self._units: dict[Iri, SemanticUnit] = {}
        self._data: dict[Iri, set] = {}
        self._owner: dict[Triple, Iri] = {}
        self._counters: dict[tuple, int] = {}
        self._issued: set[str] = set()
        # content that sits outside every unit; only reachable through import or tests
        self.loose_triples: set[Triple] = set()
        self.extra_units_layer: set[Triple] = set()
        self.resources: dict = {}
        self.identification_of: dict[Iri, Iri] = {}
        self.schemas: dict = {}
        self.profiles: dict = {}
        self.questions: dict = {}
        self.inference_layer: dict = {}
        from .schemas import builtin_schemas
        from .compound import builtin_profiles
        for s in builtin_schemas():
            self.schemas[s.id] = s
        for p in builtin_profiles():
            self.profiles[p.name] = p

    # identifiers -----------------------------------------------------------
    def mint_gupri(self, base: str | None = None, hint: str = "unit") -> Iri:
        base = Iri(base or self.base)
        slug = slugify(hint)
        with self._lock:
            n = self._counters.get((base, slug), 0)
            while True:
                n += 1
                candidate = f"{base}{slug}-{n:04d}"
                if candidate not in self._issued:
                    break
            self._counters[(base, slug)] = n
            self._issued.add(candidate)
            return Iri(candidate)

    def reserve(self, iri: str) -> None:
        self._issued.add(str(iri))

    # unit records ----------------------------------------------------------
    def register_unit(self, unit: SemanticUnit, triples: Iterable[Triple] = ()) -> SemanticUnit:
        """Insert a unit record and its data graph atomically."""
        triples = list(triples)
        with self._lock:
            if unit.gupri in self._units:
                raise DuplicateUnit(f"unit {unit.gupri} already registered")
            for _, g in unit.associated_units:
                if g not in self._units and g not in self.questions:
                    raise UnknownUnit(f"associated unit {g} is not registered", unit=g)
            if not unit.is_statement and triples:
                raise PartitionViolation("compound units own no data-layer triples")
            seen = set()
            for t in triples:
                owner = self._owner.get(t)
                if owner is not None:
                    raise PartitionViolation(
                        f"triple already belongs to {owner}", triple=list(t), graphs=[owner, unit.gupri])
                seen.add(t)
            self._units[unit.gupri] = unit
            self._issued.add(str(unit.gupri))
            if unit.is_statement:
                self._data[unit.gupri] = set(seen)
                for t in seen:
                    self._owner[t] = unit.gupri
            return unit

    def replace_unit(self, unit: SemanticUnit) -> SemanticUnit:
        with self._lock:
            old = self.unit(unit.gupri)
            if old.is_statement != unit.is_statement:
                raise ValueError("cannot change the statement/compound nature of a unit")
            self._units[unit.gupri] = unit
            return unit

    def add_kinds(self, g: Iri, *kinds: Iri) -> SemanticUnit:
        with self._lock:
            u = self.unit(g)
            return self.replace_unit(replace(u, kinds=u.kinds | set(kinds)))

    def remove_kinds(self, g: Iri, *kinds: Iri) -> SemanticUnit:
        with self._lock:
            u = self.unit(g)
            return self.replace_unit(replace(u, kinds=u.kinds - set(kinds)))

    def set_metadata(self, g: Iri, meta: UnitMetadata) -> None:
        with self._lock:
            self.replace_unit(replace(self.unit(g), metadata=meta))

    def unit(self, g: Iri) -> SemanticUnit:
        try:
            return self._units[g]
        except KeyError:
            raise UnknownUnit(f"unknown unit {g}", unit=g) from None

    def has_unit(self, g) -> bool:
        return g in self._units

    def units(self) -> list[SemanticUnit]:
        return [self._units[g] for g in sorted(self._units)]

    def statement_units(self) -> list[SemanticUnit]:
        return [u for u in self.units() if u.is_statement]

    def units_of_kind(self, kind: Iri) -> list[SemanticUnit]:
        return [u for u in self.units() if kind in u.kinds]

    def referencing_units(self, g: Iri) -> list[Iri]:
        return sorted(u.gupri for u in self._units.values() if g in u.members())

    def remove_unit(self, g: Iri) -> None:
        """Delete an unreferenced unit together with its data graph."""
        with self._lock:
            self.unit(g)
            refs = self.referencing_units(g)
            refs += [str(t.subject) for t in self._data_triples() if t.object == g]
            if refs:
                raise UnitReferenced(f"unit {g} is referenced by {sorted(set(refs))[0]}", by=sorted(set(refs)))
            for t in self._data.pop(g, set()):
                self._owner.pop(t, None)
            del self._units[g]
            if self.identification_of:
                for r, ident in list(self.identification_of.items()):
                    if ident == g:
                        del self.identification_of[r]

    # data layer ------------------------------------------------------------
    def add_triple(self, g: Iri, t: Triple) -> None:
        with self._lock:
            u = self.unit(g)
            if not u.is_statement:
                raise PartitionViolation(f"compound unit {g} cannot own triples")
            t = Triple(*t)
            owner = self._owner.get(t)
            if owner is not None and owner != g:
                raise PartitionViolation(f"triple already belongs to {owner}", triple=list(t), graphs=[owner, g])
            self._data[g].add(t)
            self._owner[t] = g

    def remove_triple(self, g: Iri, t: Triple) -> None:
        with self._lock:
            self.unit(g)
            if self.referencing_units(g):
                raise UnitReferenced(f"unit {g} is referenced by compound units")
            if self._owner.get(t) == g:
                self._data[g].discard(t)
                del self._owner[t]

    def data_graph(self, g: Iri) -> frozenset:
        u = self.unit(g)
        return frozenset(self._data.get(g, ())) if u.is_statement else frozenset()

    def owner_of(self, t: Triple) -> Iri | None:
        return self._owner.get(t)

    def merged_data_graph(self, gs: Iterable[Iri]) -> frozenset:
        out: set = set()
        done: set = set()

        def visit(g, path):
            if g in path:
                raise CycleDetected(f"association cycle through {g}", unit=g)
            if g in done:
                return
            u = self.unit(g)
            if u.is_statement:
                out.update(self._data.get(g, ()))
            for member in u.members():
                if member in self._units:
                    visit(member, path | {g})
            done.add(g)

        for g in gs:
            visit(g, frozenset())
        return frozenset(out)

    def _data_triples(self) -> Iterator[Triple]:
        for g in sorted(self._data):
            yield from self._data[g]

    def all_data_triples(self) -> frozenset:
        return frozenset(self._owner)

    def units_layer(self) -> frozenset:
        out = set(self.extra_units_layer)
        for u in self._units.values():
            out.update(u.triples())
        return frozenset(out)

    # checks ----------------------------------------------------------------
    def verify_partition(self) -> PartitionReport:
        report = PartitionReport()
        holders: dict[Triple, list] = {}
        for g, ts in self._data.items():
            for t in ts:
                holders.setdefault(t, []).append(g)
        for t, gs in sorted(holders.items(), key=lambda kv: triple_key(kv[0])):
            if len(gs) > 1:
                report.duplicates.append((t, sorted(gs)))
        report.orphans = sorted(self.loose_triples, key=triple_key)
        for g in sorted(self._data):
            u = self._units.get(g)
            if u is None or not u.is_statement:
                report.unregistered_graphs.append(g)
            for t in sorted(self._data[g], key=triple_key):
                if is_units_layer_triple(t):
                    report.layer_violations.append((g, t))
        return report

    # labels ----------------------------------------------------------------
    def label(self, iri) -> str:
        if isinstance(iri, Literal):
            return iri.lexical
        r = self.resources.get(iri)
        if r is not None and r.label:
            return r.label
        for t in self._owner:
            if t.subject == iri and t.predicate == V.RDFS_LABEL and isinstance(t.object, Literal):
                return t.object.lexical
        return Iri(iri).local_name

    def class_of(self, iri) -> Iri | None:
        r = self.resources.get(iri)
        return r.target_class if r is not None else None

    # snapshots and hashing -------------------------------------------------
    def snapshot(self) -> "LayeredStore":
        with self._lock:
            clone = copy.copy(self)
            clone._lock = threading.RLock()
            clone._units = dict(self._units)
            clone._data = {g: set(ts) for g, ts in self._data.items()}
            clone._owner = dict(self._owner)
            clone._counters = dict(self._counters)
            clone._issued = set(self._issued)
            clone.loose_triples = set(self.loose_triples)
            clone.extra_units_layer = set(self.extra_units_layer)
            clone.resources = dict(self.resources)
            clone.identification_of = dict(self.identification_of)
            clone.schemas = dict(self.schemas)
            clone.profiles = dict(self.profiles)
            clone.questions = dict(self.questions)
            clone.inference_layer = {}
            return clone

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for g in sorted(self._data):
            for t in sorted(self._data[g], key=triple_key):
                h.update(repr((str(g), triple_key(t))).encode())
        for t in sorted(self.units_layer(), key=triple_key):
            h.update(repr(triple_key(t)).encode())
        return h.hexdigest()


def mint_gupri(store: LayeredStore, base: str, hint: str) -> Iri:
    return store.mint_gupri(base, hint)


def verify_partition(store: LayeredStore) -> PartitionReport:
    return store.verify_partition()
