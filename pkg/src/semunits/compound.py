"""Compound units: item, item group, class profile, standard information and contextual units."""
from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime
from typing import Iterable, Sequence

import networkx as nx

from . import vocab as V
from .errors import (
    Disconnected, InvalidCoordinates, InvalidInterval, InvalidPosition, MissingMandatory,
    NoStatements, PreconditionError, UnknownProfile,
)
from .resources import ResourceCategory, TypedResource
from .store import LayeredStore, SemanticUnit, UnitMetadata
from .terms import Iri, Literal, Triple, XSDType, decimal, integer


@dataclass(frozen=True)
class InformationProfile:
    name: str
    mandatory: tuple = ()
    optional: tuple = ()


def builtin_profiles() -> list[InformationProfile]:
    return [
        InformationProfile("material-data-sheet", mandatory=(V.su("weight-statement-unit"),)),
        InformationProfile("publication-findings"),
    ]


ITEM_SUBTYPE = {
    ResourceCategory.NAMED_INDIVIDUAL: V.su("assertional-item-unit"),
    ResourceCategory.SOME_INSTANCE: V.su("contingent-item-unit"),
    ResourceCategory.MOST_INSTANCES: V.su("prototypical-item-unit"),
    ResourceCategory.EVERY_INSTANCE: V.su("universal-item-unit"),
    ResourceCategory.CLASS_REF: V.su("universal-item-unit"),
    ResourceCategory.PROPERTY_REF: V.su("universal-item-unit"),
    ResourceCategory.ALL_INSTANCES: V.su("all-instances-item-unit"),
}
PROFILE_ITEM_KINDS = frozenset({V.su("universal-item-unit"), V.su("contingent-item-unit"),
                                V.su("prototypical-item-unit")})


def _gupri(x) -> Iri:
    if isinstance(x, SemanticUnit):
        return x.gupri
    if isinstance(x, TypedResource):
        return x.iri
    return Iri(x)


def _register_compound(store, hint, kinds, members, anchor=None, attributes=()) -> SemanticUnit:
    with store._lock:
        g = store.mint_gupri(store.base, hint)
        unit = SemanticUnit(g, frozenset({V.COMPOUND_UNIT, *kinds}), associated_units=tuple(members),
                            is_statement=False, anchor=anchor, attributes=tuple(attributes),
                            metadata=UnitMetadata(logic_framework="None"))
        return store.register_unit(unit)


def build_item_unit(store: LayeredStore, subject, sufficient: bool = False) -> SemanticUnit:
    """Snapshot every statement unit whose subject is ``subject``."""
    s = _gupri(subject)
    members = [u.gupri for u in store.statement_units() if u.subject == s]
    if not members:
        raise NoStatements(f"no statement units about {s}")
    r = store.resources.get(s)
    category = r.category if r is not None else ResourceCategory.NAMED_INDIVIDUAL
    kinds = {V.ITEM_UNIT, ITEM_SUBTYPE[category]}
    if sufficient:
        if ITEM_SUBTYPE[category] != V.su("universal-item-unit"):
            raise PreconditionError("only universal item units can be sufficient")
        kinds.add(V.SUFFICIENT_UNIVERSAL_ITEM_UNIT)
    return _register_compound(store, f"{store.label(s)} item unit", kinds,
                              [(V.HAS_ASSOCIATED, m) for m in members], anchor=s)


def _linking_resources(store, g) -> set:
    out = set()
    for t in store.merged_data_graph([g]):
        out.add(t.subject)
        # classes and labels are shared vocabulary, not co-reference
        if t.predicate in (V.RDF_TYPE, V.RDFS_LABEL, V.DC_IDENTIFIER):
            continue
        if isinstance(t.object, Iri):
            out.add(t.object)
    return out


def build_item_group_unit(store: LayeredStore, members: Sequence, variant: str | None = None) -> SemanticUnit:
    """Group item units whose statements chain through shared resources.

    ``variant`` is None, "universal" or "sufficient-universal".
    """
    gs = [_gupri(m) for m in members]
    if len(gs) < 2:
        raise PreconditionError("an item group unit needs at least two item units")
    for g in gs:
        store.unit(g)
    graph = nx.Graph()
    graph.add_nodes_from(gs)
    resources = {g: _linking_resources(store, g) for g in gs}
    for i, a in enumerate(gs):
        for b in gs[i + 1:]:
            if resources[a] & resources[b]:
                graph.add_edge(a, b)
    if not nx.is_connected(graph):
        parts = sorted(sorted(c) for c in nx.connected_components(graph))
        raise Disconnected("item units do not share resources", components=parts)
    kinds = {V.ITEM_GROUP_UNIT}
    if variant == "universal":
        kinds.add(V.UNIVERSAL_ITEM_GROUP_UNIT)
    elif variant == "sufficient-universal":
        kinds |= {V.UNIVERSAL_ITEM_GROUP_UNIT, V.SUFFICIENT_UNIVERSAL_ITEM_GROUP_UNIT}
    elif variant is not None:
        raise PreconditionError(f"unknown item group variant {variant!r}")
    first = store.unit(gs[0])
    anchor = first.anchor or first.subject
    return _register_compound(store, f"{store.label(anchor) if anchor else 'item'} item group unit", kinds,
                              [(V.HAS_ASSOCIATED, g) for g in gs], anchor=anchor)


def _targets(store, anchor, target_class) -> bool:
    if anchor is None:
        return False
    if anchor == target_class:
        return True
    r = store.resources.get(anchor)
    return r is not None and r.target_class == target_class


def build_class_profile_unit(store: LayeredStore, target_class: Iri) -> SemanticUnit:
    """Collect universal, contingent and prototypical item (group) units about a class.

    Item units already contained in a collected group are left out so that
    the profile does not list the same content twice.
    """
    target_class = Iri(target_class)
    groups = [u for u in store.units_of_kind(V.ITEM_GROUP_UNIT)
              if _targets(store, u.anchor, target_class)
              and (V.UNIVERSAL_ITEM_GROUP_UNIT in u.kinds
                   or any(PROFILE_ITEM_KINDS & store.unit(m).kinds for m in u.members()))]
    covered = {m for grp in groups for m in grp.members()}
    items = [u for u in store.units_of_kind(V.ITEM_UNIT)
             if PROFILE_ITEM_KINDS & u.kinds and _targets(store, u.anchor, target_class)
             and u.gupri not in covered]
    members = sorted({u.gupri for u in groups + items})
    return _register_compound(store, f"{store.label(target_class)} class profile unit", {V.CLASS_PROFILE_UNIT},
                              [(V.HAS_ASSOCIATED, m) for m in members], anchor=target_class)


def build_standard_information_unit(store: LayeredStore, anchor: Iri, members: Iterable,
                                    profile_name: str) -> SemanticUnit:
    anchor = Iri(anchor)
    profile = store.profiles.get(profile_name)
    if profile is None:
        raise UnknownProfile(f"no information profile named {profile_name!r}")
    gs = sorted({_gupri(m) for m in members})
    units = [store.unit(g) for g in gs]
    present = set().union(*(u.kinds for u in units)) if units else set()
    missing = [k for k in profile.mandatory if k not in present]
    if missing:
        raise MissingMandatory(f"profile {profile_name} lacks {', '.join(k.local_name for k in missing)}",
                               missing=missing)
    roles = []
    for u in units:
        role = V.HAS_MANDATORY_MEMBER if set(profile.mandatory) & u.kinds else V.HAS_OPTIONAL_MEMBER
        roles.append((role, u.gupri))
    with store._lock:
        unit = _register_compound(store, f"{store.label(anchor)} {profile_name}", {V.STANDARD_INFO_UNIT},
                                  roles, anchor=anchor, attributes=[(V.HAS_PROFILE, Literal(profile_name))])
        store.extra_units_layer.add(Triple(anchor, V.HAS_STANDARD_INFO, unit.gupri))
    return unit


def standard_information_units(store: LayeredStore, anchor: Iri) -> list[Iri]:
    return sorted(t[2] for t in store.extra_units_layer if t[0] == anchor and t[1] == V.HAS_STANDARD_INFO)


# contextual units ---------------------------------------------------------

def _time_literal(text: str) -> Literal:
    try:
        if "T" in text:
            return Literal(text, XSDType.dateTime)
        return Literal(text, XSDType.date)
    except Exception as exc:
        raise InvalidInterval(f"not an ISO 8601 date or date-time: {text!r}") from exc


def _time_value(lit: Literal):
    if lit.datatype == XSDType.date:
        return datetime.combine(date.fromisoformat(lit.lexical), datetime.min.time())
    text = lit.lexical
    dt = datetime.fromisoformat(text[:-1] + "+00:00" if text.endswith("Z") else text)
    return dt.replace(tzinfo=None)


@dataclass(frozen=True)
class TimeIndex:
    start: str
    end: str | None = None

    def literals(self) -> tuple:
        start = _time_literal(self.start)
        end = _time_literal(self.end) if self.end is not None else None
        if end is not None and _time_value(start) > _time_value(end):
            raise InvalidInterval(f"interval start {self.start} is after end {self.end}")
        return start, end


@dataclass(frozen=True)
class GeoIndex:
    place: Iri | None = None
    lat: float | None = None
    long: float | None = None

    def validate(self):
        if (self.lat is None) != (self.long is None):
            raise InvalidCoordinates("latitude and longitude must be given together")
        if self.place is None and self.lat is None:
            raise InvalidCoordinates("a geo index needs a place or coordinates")
        if self.lat is not None and not (-90 <= self.lat <= 90 and -180 <= self.long <= 180):
            raise InvalidCoordinates(f"coordinates out of range: {self.lat}, {self.long}")


@dataclass(frozen=True)
class TimeOrder:
    sequence: Iri
    position: int

    def validate(self):
        if not isinstance(self.position, int) or isinstance(self.position, bool) or self.position < 1:
            raise InvalidPosition(f"position must be a positive integer, got {self.position!r}")


def build_contextual_unit(store: LayeredStore, core: Iterable, time: TimeIndex | None = None,
                          geo: GeoIndex | None = None, order: TimeOrder | None = None,
                          subject=None) -> SemanticUnit:
    """Attach time, place and order context to a set of core units.

    The index statements are about ``subject``, which defaults to the subject
    of the first core unit.
    """
    from .statements import create_statement_unit

    if time is None and geo is None and order is None:
        raise PreconditionError("a contextual unit needs a time, geo or order index")
    core = sorted({_gupri(c) for c in core})
    if not core:
        raise PreconditionError("a contextual unit needs at least one core unit")
    units = [store.unit(g) for g in core]
    # validate everything before writing anything
    times = time.literals() if time else None
    if geo:
        geo.validate()
    if order:
        order.validate()
    if subject is None:
        subject = next((u.subject for u in units if u.subject is not None), None) or units[0].anchor
    if subject is None:
        raise PreconditionError("cannot determine the subject of the index statements")
    subject = _gupri(subject)
    with store._lock:
        index, kinds = [], {V.CONTEXTUAL_UNIT}
        if time:
            start, end = times
            objs = {"start": start}
            if end is not None:
                objs["end"] = end
            index.append(create_statement_unit(store, "time-index", subject, objs).gupri)
            kinds.add(V.TIME_INDEXED_UNIT)
        if geo:
            objs = {}
            if geo.place is not None:
                objs["place"] = Iri(geo.place)
            if geo.lat is not None:
                objs["lat"] = decimal(geo.lat)
                objs["long"] = decimal(geo.long)
            index.append(create_statement_unit(store, "geo-index", subject, objs).gupri)
            kinds.add(V.GEO_INDEXED_UNIT)
        if order:
            objs = {"sequence": Iri(order.sequence), "position": integer(order.position)}
            index.append(create_statement_unit(store, "time-order", subject, objs).gupri)
            kinds.add(V.TIME_ORDERED_UNIT)
        members = [(V.HAS_CORE_UNIT, g) for g in core] + [(V.HAS_INDEX_UNIT, g) for g in index]
        return _register_compound(store, f"{store.label(subject)} context", kinds, members, anchor=subject)
