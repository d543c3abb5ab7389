"""JSON interchange documents.

A document carries a full store dump (``units``) and may add authoring
operations (``build``) that are replayed on top of it. Saving always writes
the dump form with sorted keys and sorted lists, so save(load(doc)) is stable.

Terms are written as compact IRIs (``obo:PATO_0000323``) or literal objects
(``{"@value": "204.56", "@type": "xsd:decimal"}``). In ``build`` operations a
string starting with ``@`` names the result of an earlier operation.
"""
from __future__ import annotations

import json
from dataclasses import replace
from decimal import Decimal
from graphlib import CycleError, TopologicalSorter

from .. import vocab as V
from ..compound import (
    GeoIndex, InformationProfile, TimeIndex, TimeOrder, build_class_profile_unit, build_contextual_unit,
    build_item_group_unit, build_item_unit, build_standard_information_unit,
)
from ..discourse import assert_stance, build_argument, build_conditional, build_directive
from ..errors import CycleDetected, InvalidSchema, PreconditionError, UnknownUnit
from ..modifiers import CardinalitySpec, build_boolean_unit, negate, restrict_cardinality
from ..query import derive_question, question_from_dict, question_to_dict, register_question, underspecify
from ..query import _slot_from_json  # noqa: PLC2701 shared slot codec
from ..resources import (
    ResourceCategory, TypedResource, create_class_identification_unit, declare_resource, identify,
)
from ..schemas import _term_from_json, _term_to_json, builtin_schemas, schema_from_dict, schema_to_dict
from ..compound import builtin_profiles
from ..statements import create_statement_unit
from ..store import LayeredStore, SemanticUnit, UnitMetadata
from ..terms import Iri, Literal, Triple, XSDType, decimal, integer, triple_key

FORMAT = "semunits-interchange"
VERSION = 1


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# saving -------------------------------------------------------------------

def _term(t, prefixes):
    return _term_to_json(t, prefixes)


def _meta_to_dict(m: UnitMetadata, prefixes) -> dict:
    out = {"logic_framework": m.logic_framework}
    if m.schema_id:
        out["schema"] = _term(m.schema_id, prefixes)
    if m.authors:
        out["authors"] = [_term(a, prefixes) for a in m.authors]
    if m.certainty is not None:
        out["certainty"] = m.certainty
    for key in ("source", "creator", "created_at", "license"):
        v = getattr(m, key)
        if v is not None:
            out[key] = _term(v, prefixes)
    for key in ("extraction_method", "version"):
        v = getattr(m, key)
        if v:
            out[key] = v
    return out


def _meta_from_dict(d: dict, prefixes) -> UnitMetadata:
    kw = {"logic_framework": d.get("logic_framework", "OWL-DL")}
    if d.get("schema"):
        kw["schema_id"] = _term_from_json(d["schema"], prefixes)
    kw["authors"] = tuple(_term_from_json(a, prefixes) for a in d.get("authors", ()))
    if d.get("certainty") is not None:
        kw["certainty"] = float(d["certainty"])
    for key in ("source", "creator", "created_at", "license"):
        if d.get(key) is not None:
            kw[key] = _term_from_json(d[key], prefixes)
    for key in ("extraction_method", "version"):
        if d.get(key):
            kw[key] = d[key]
    return UnitMetadata(**kw)


def unit_to_dict(unit: SemanticUnit, store: LayeredStore) -> dict:
    p = store.prefix_map
    out = {
        "gupri": str(unit.gupri),
        "kinds": sorted(_term(k, p) for k in unit.kinds),
        "statement": unit.is_statement,
        "metadata": _meta_to_dict(unit.metadata, p),
    }
    if unit.subject is not None:
        out["subject"] = _term(unit.subject, p)
    if unit.anchor is not None:
        out["anchor"] = _term(unit.anchor, p)
    if unit.associated_units:
        out["associations"] = [[_term(r, p), str(g)] for r, g in unit.associated_units]
    if unit.attributes:
        out["attributes"] = [[_term(k, p), _term(v, p)] for k, v in unit.attributes]
    if unit.is_statement and store.has_unit(unit.gupri):
        out["triples"] = [[_term(x, p) for x in t] for t in sorted(store.data_graph(unit.gupri), key=triple_key)]
    return out


def unit_from_dict(d: dict, prefixes) -> tuple[SemanticUnit, list]:
    f = lambda v: _term_from_json(v, prefixes)  # noqa: E731
    unit = SemanticUnit(
        Iri(d["gupri"]), frozenset(f(k) for k in d["kinds"]),
        subject=f(d["subject"]) if d.get("subject") else None,
        associated_units=tuple((f(r), Iri(g)) for r, g in d.get("associations", ())),
        is_statement=bool(d.get("statement", True)),
        metadata=_meta_from_dict(d.get("metadata", {}), prefixes),
        anchor=f(d["anchor"]) if d.get("anchor") else None,
        attributes=tuple((f(k), f(v)) for k, v in d.get("attributes", ())),
    )
    triples = [Triple(*(f(x) for x in row)) for row in d.get("triples", ())]
    return unit, triples


def store_to_dict(store: LayeredStore) -> dict:
    p = store.prefix_map
    builtin_ids = {s.id for s in builtin_schemas()}
    builtin_profile_names = {pr.name for pr in builtin_profiles()}
    questions = []
    for g in sorted(store.questions):
        q = store.questions[g]
        if isinstance(q, SemanticUnit):
            questions.append({"boolean": unit_to_dict(q, store)})
        else:
            questions.append(question_to_dict(q, p))
    return {
        "format": FORMAT,
        "version": VERSION,
        "base": str(store.base),
        "resource_base": str(store.resource_base),
        "default_logic_framework": store.default_logic_framework,
        "prefixes": dict(sorted(p.items())),
        "resources": [_resource_to_dict(r, p) for _, r in sorted(store.resources.items())],
        "schemas": [schema_to_dict(s, p) for sid, s in sorted(store.schemas.items()) if sid not in builtin_ids],
        "profiles": [{"name": pr.name, "mandatory": [_term(k, p) for k in pr.mandatory],
                      "optional": [_term(k, p) for k in pr.optional]}
                     for name, pr in sorted(store.profiles.items()) if name not in builtin_profile_names],
        "units": [unit_to_dict(u, store) for u in store.units()],
        "units_layer_extra": [[_term(x, p) for x in t] for t in sorted(store.extra_units_layer, key=triple_key)],
        "questions": questions,
    }


def _resource_to_dict(r: TypedResource, p) -> dict:
    out = {"iri": _term(r.iri, p), "category": r.category.value, "label": r.label}
    if r.target_class is not None:
        out["class"] = _term(r.target_class, p)
    return out


def save_store(store: LayeredStore) -> str:
    return dumps(store_to_dict(store))


# loading ------------------------------------------------------------------

def store_from_dict(doc: dict, config=None) -> LayeredStore:
    if doc.get("format", FORMAT) != FORMAT:
        raise InvalidSchema(f"not an interchange document: format {doc.get('format')!r}")
    kw = {}
    if config is not None:
        kw.update(base=config.base, resource_base=config.resource_base, prefixes=config.prefixes,
                  default_logic_framework=config.default_logic_framework)
    for key in ("base", "resource_base", "default_logic_framework"):
        if doc.get(key):
            kw[key] = doc[key]
    prefixes = dict(kw.pop("prefixes", None) or {})
    prefixes.update(doc.get("prefixes", {}))
    store = LayeredStore(prefixes=prefixes, **kw)
    p = store.prefix_map
    if config is not None:
        for s in config.schemas:
            store.schemas[s.id] = s
        for pr in config.profiles:
            store.profiles[pr.name] = pr
    for sd in doc.get("schemas", ()):
        s = schema_from_dict(sd, p)
        store.schemas[s.id] = s
    for pd in doc.get("profiles", ()):
        pr = profile_from_dict(pd, p)
        store.profiles[pr.name] = pr
    for rd in doc.get("resources", ()):
        r = TypedResource(_term_from_json(rd["iri"], p), ResourceCategory(rd["category"]),
                          _term_from_json(rd["class"], p) if rd.get("class") else None, rd.get("label", ""))
        store.resources[r.iri] = r
        store.reserve(r.iri)
    _load_units(store, doc.get("units", ()), doc.get("questions", ()))
    store.extra_units_layer = {Triple(*(_term_from_json(x, p) for x in row))
                               for row in doc.get("units_layer_extra", ())}
    for u in store.units_of_kind(V.IDENTIFICATION_UNIT):
        if u.subject is not None:
            store.identification_of[u.subject] = u.gupri
    if doc.get("build"):
        Builder(store).run(doc["build"])
    return store


def profile_from_dict(d: dict, prefixes) -> InformationProfile:
    return InformationProfile(d["name"], tuple(_term_from_json(k, prefixes) for k in d.get("mandatory", ())),
                              tuple(_term_from_json(k, prefixes) for k in d.get("optional", ())))


def _load_units(store, unit_docs, question_docs):
    p = store.prefix_map
    for qd in question_docs:
        if "boolean" in qd:
            continue
        q = question_from_dict(qd, p)
        if q.gupri is not None:
            store.questions[q.gupri] = q
            store.reserve(q.gupri)
    for qd in question_docs:
        if "boolean" in qd:
            unit, _ = unit_from_dict(qd["boolean"], p)
            store.questions[unit.gupri] = unit
            store.reserve(unit.gupri)
    parsed = {}
    for d in unit_docs:
        unit, triples = unit_from_dict(d, p)
        parsed[unit.gupri] = (unit, triples)
    deps = {}
    for g, (unit, _) in parsed.items():
        for m in unit.members():
            if m not in parsed and m not in store.questions:
                raise UnknownUnit(f"unit {g} references unknown unit {m}", unit=m)
        deps[g] = {m for m in unit.members() if m in parsed}
    try:
        order = list(TopologicalSorter(deps).static_order())
    except CycleError as exc:
        raise CycleDetected("association cycle in document", units=[str(x) for x in exc.args[1]]) from None
    for g in order:
        unit, triples = parsed[g]
        store.register_unit(unit, triples)


def load_store(text: str, config=None) -> LayeredStore:
    return store_from_dict(json.loads(text), config)


# authoring operations -----------------------------------------------------

class Builder:
    """Replays ``build`` operations. Each op may name its result with ``"ref"``."""

    def __init__(self, store: LayeredStore):
        self.store = store
        self.refs: dict[str, object] = {}

    def run(self, ops) -> dict:
        for i, op in enumerate(ops):
            name = op.get("op")
            handler = getattr(self, "op_" + str(name).replace("-", "_"), None)
            if handler is None:
                raise PreconditionError(f"build step {i}: unknown op {name!r}", step=i)
            result = handler(op)
            if op.get("ref"):
                self.refs[op["ref"]] = result
        return self.refs

    # value resolution
    def term(self, v):
        if isinstance(v, str) and v.startswith("@"):
            if v[1:] not in self.refs:
                raise UnknownUnit(f"unknown reference {v}", ref=v)
            r = self.refs[v[1:]]
            return r.iri if isinstance(r, TypedResource) else Iri(getattr(r, "gupri", r))
        if isinstance(v, bool):
            return Literal("true" if v else "false", XSDType.boolean)
        if isinstance(v, int):
            return integer(v)
        if isinstance(v, float):
            return decimal(repr(v))
        return _term_from_json(v, self.store.prefix_map)

    def meta(self, op) -> UnitMetadata | None:
        if not any(k in op for k in ("framework", "certainty", "authors", "source")):
            return None
        return UnitMetadata(logic_framework=op.get("framework", self.store.default_logic_framework),
                            certainty=op.get("certainty"),
                            authors=tuple(self.term(a) for a in op.get("authors", ())),
                            source=self.term(op["source"]) if op.get("source") else None)

    # ops
    def op_class(self, op):
        iri = self.term(op["iri"])
        create_class_identification_unit(self.store, iri, op["label"],
                                         self.term(op["ontology"]) if op.get("ontology") else None,
                                         self.term(op["version"]) if op.get("version") else None)
        return iri

    def _resource(self, op, fn):
        cat = ResourceCategory(op["category"])
        cls = self.term(op["class"]) if op.get("class") else None
        iri = self.term(op["iri"]) if op.get("iri") else None
        return fn(self.store, op["label"], cat, cls, iri)

    def op_identify(self, op):
        return self._resource(op, identify)

    def op_declare(self, op):
        return self._resource(op, declare_resource)

    def op_statement(self, op):
        objects = op.get("objects", [])
        if isinstance(objects, dict):
            objects = {k: self.term(v) for k, v in objects.items()}
        else:
            objects = [self.term(v) for v in objects]
        return create_statement_unit(self.store, op["schema"], self.term(op["subject"]), objects, self.meta(op))

    def op_negate(self, op):
        return negate(self.store, self.term(op["unit"]))

    def op_cardinality(self, op):
        spec = CardinalitySpec(op.get("exact"), _num(op.get("min")), _num(op.get("max")),
                               self.term(op["unit_of_count"]) if op.get("unit_of_count") else None)
        return restrict_cardinality(self.store, self.term(op["unit"]), spec)

    def op_item(self, op):
        return build_item_unit(self.store, self.term(op["subject"]), bool(op.get("sufficient", False)))

    def op_item_group(self, op):
        return build_item_group_unit(self.store, [self.term(m) for m in op["members"]], op.get("variant"))

    def op_class_profile(self, op):
        return build_class_profile_unit(self.store, self.term(op["class"]))

    def op_standard_information(self, op):
        return build_standard_information_unit(self.store, self.term(op["anchor"]),
                                               [self.term(m) for m in op["members"]], op["profile"])

    def op_context(self, op):
        time = TimeIndex(op["time"]["start"], op["time"].get("end")) if op.get("time") else None
        geo = None
        if op.get("geo"):
            g = op["geo"]
            geo = GeoIndex(self.term(g["place"]) if g.get("place") else None, g.get("lat"), g.get("long"))
        order = TimeOrder(self.term(op["order"]["sequence"]), op["order"]["position"]) if op.get("order") else None
        return build_contextual_unit(self.store, [self.term(c) for c in op["core"]], time, geo, order,
                                     self.term(op["subject"]) if op.get("subject") else None)

    def op_boolean(self, op):
        return build_boolean_unit(self.store, op["operator"], [self.term(o) for o in op["operands"]])

    def op_directive(self, op):
        return build_directive(self.store, self.term(op["target"]))

    def op_conditional(self, op):
        return build_conditional(self.store, self.term(op["if"]), self.term(op["then"]))

    def op_argument(self, op):
        return build_argument(self.store, op["kind"], self.term(op["case"]), self.term(op["rule"]),
                              self.term(op["result"]), op.get("boldness"), bool(op.get("hypothesis", False)))

    def op_stance(self, op):
        return assert_stance(self.store, self.term(op["agent"]), op["stance"], self.term(op["target"]))

    def op_question(self, op):
        """Derive a question from a unit, then replace the listed slots."""
        p = self.store.prefix_map
        if "question" in op:
            q = question_from_dict(op["question"], p)
        else:
            q = derive_question(self.store, self.term(op["unit"]))
            for role, slot in sorted(op.get("slots", {}).items()):
                q = underspecify(q, role, _slot_from_json(slot, p), self.store)
        return register_question(self.store, replace(q, gupri=None), op.get("hint", "question"))


def _num(v):
    return None if v is None else Decimal(str(v))
