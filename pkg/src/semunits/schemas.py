"""Semantic graph schema templates.

A schema lists the slots of a statement (one subject and one or more objects)
and the triple pattern that realizes it. Pattern positions hold either a
constant term, a ``SlotRef`` naming a slot, or a ``NodeRef`` naming an
internal node whose IRI is derived from the unit's Gupri.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import vocab as V
from .errors import InvalidSchema
from .terms import Iri, Literal, Triple, XSDType, compact, expand

SLOT_KINDS = ("resource", "class", "literal", "unit", "any")


@dataclass(frozen=True)
class SlotRef:
    role: str


@dataclass(frozen=True)
class NodeRef:
    name: str


@dataclass(frozen=True)
class SlotSpec:
    role: str
    position: str = "object"
    kind: str = "resource"
    expected: Iri | None = None
    optional: bool = False


@dataclass(frozen=True)
class PatternTriple:
    s: object
    p: object
    o: object
    optional: bool = False


@dataclass(frozen=True)
class SchemaTemplate:
    id: Iri
    name: str
    relation_class: Iri
    slots: tuple
    pattern: tuple
    label_templates: dict = field(default_factory=dict, hash=False, compare=False)
    question_templates: dict = field(default_factory=dict, hash=False, compare=False)
    map_template: tuple = ()
    lexical: bool = False
    builtin: bool = False

    def __post_init__(self):
        subjects = [s for s in self.slots if s.position == "subject"]
        objects = [s for s in self.slots if s.position == "object"]
        if len(subjects) != 1:
            raise InvalidSchema(f"schema {self.name} needs exactly one subject slot")
        if not objects:
            raise InvalidSchema(f"schema {self.name} needs at least one object slot")
        roles = [s.role for s in self.slots]
        if len(set(roles)) != len(roles):
            raise InvalidSchema(f"schema {self.name} repeats a role")
        for s in self.slots:
            if s.kind not in SLOT_KINDS:
                raise InvalidSchema(f"slot kind {s.kind!r} unknown")
        used = set()
        for pt in self.pattern:
            for term in (pt.s, pt.p, pt.o):
                if isinstance(term, SlotRef):
                    if term.role not in roles:
                        raise InvalidSchema(f"pattern uses undeclared role {term.role}")
                    used.add(term.role)
        missing = set(roles) - used
        if missing:
            raise InvalidSchema(f"roles {sorted(missing)} never appear in the pattern")

    @property
    def subject_slot(self) -> SlotSpec:
        return next(s for s in self.slots if s.position == "subject")

    @property
    def object_slots(self) -> list[SlotSpec]:
        return [s for s in self.slots if s.position == "object"]

    def slot(self, role: str) -> SlotSpec | None:
        return next((s for s in self.slots if s.role == role), None)

    @property
    def roles(self) -> list[str]:
        return [s.role for s in self.slots]


def node_iri(gupri: Iri, name: str) -> Iri:
    return Iri(f"{gupri}#{name}")


def instantiate(schema: SchemaTemplate, values: dict, gupri: Iri) -> list[Triple]:
    """Fill the pattern. Optional pattern triples are dropped when a slot is unbound."""
    out = []
    for pt in schema.pattern:
        terms = []
        for term in (pt.s, pt.p, pt.o):
            if isinstance(term, SlotRef):
                term = values.get(term.role)
            elif isinstance(term, NodeRef):
                term = node_iri(gupri, term.name)
            terms.append(term)
        if any(t is None for t in terms):
            if pt.optional:
                continue
            raise InvalidSchema(f"required slot unbound in schema {schema.name}")
        out.append(Triple(*terms))
    return out


def _unify(pattern_term, value, binding):
    if isinstance(pattern_term, (SlotRef, NodeRef)):
        key = pattern_term
        if key in binding:
            return binding if binding[key] == value else None
        if isinstance(pattern_term, NodeRef) and isinstance(value, Literal):
            return None
        new = dict(binding)
        new[key] = value
        return new
    return binding if pattern_term == value else None


def _match_all(patterns, triples, binding, used=frozenset()):
    """Each pattern triple must match a different data triple."""
    if not patterns:
        yield binding
        return
    pt, rest = patterns[0], patterns[1:]
    for t in triples:
        if t in used:
            continue
        b = binding
        for pterm, value in zip((pt.s, pt.p, pt.o), t):
            b = _unify(pterm, value, b)
            if b is None:
                break
        if b is not None:
            yield from _match_all(rest, triples, b, used | {t})


def extract_slots(schema: SchemaTemplate, triples: Iterable[Triple]) -> dict | None:
    """Read slot values back from a data graph; None when the pattern does not match."""
    triples = sorted(triples, key=lambda t: (str(t.subject), str(t.predicate), str(t.object)))
    required = [pt for pt in schema.pattern if not pt.optional]
    optional = [pt for pt in schema.pattern if pt.optional]
    for binding in _match_all(required, triples, {}):
        for pt in optional:
            ext = next(_match_all([pt], triples, binding), None)
            if ext is not None:
                binding = ext
        return {k.role: v for k, v in binding.items() if isinstance(k, SlotRef)}
    return None


# built-in schemas --------------------------------------------------------

S, O = "subject", "object"


def _sid(name: str) -> Iri:
    return V.su(f"schema/{name}")


def binary_schema(name: str, predicate: Iri, relation_class: Iri | None = None, *,
                  subject_kind: str = "resource", object_kind: str = "resource",
                  expected: Iri | None = None, labels: dict | None = None,
                  questions: dict | None = None, edge: str | None = None,
                  builtin: bool = False, schema_id: Iri | None = None) -> SchemaTemplate:
    """Schema for a single-triple statement ``subject predicate object``."""
    return SchemaTemplate(
        id=schema_id or _sid(name),
        name=name,
        relation_class=relation_class or V.su(f"{name}-statement-unit"),
        slots=(SlotSpec(S, "subject", subject_kind), SlotSpec(O, "object", object_kind, expected)),
        pattern=(PatternTriple(SlotRef(S), predicate, SlotRef(O)),),
        label_templates=labels or {"default": "{subject} " + name.replace("-", " ") + " {object}"},
        question_templates=questions or {},
        map_template=((S, edge or name.replace("-", " "), O),),
        builtin=builtin,
    )


def _identification_schema(category_word: str, marker: Iri, label: str) -> SchemaTemplate:
    name = f"{category_word}-identification"
    return SchemaTemplate(
        id=_sid(name), name=name, relation_class=V.su(f"{name}-unit"),
        slots=(SlotSpec(S, "subject"), SlotSpec("class", "object", "class"),
               SlotSpec("label", "object", "literal", XSDType.string)),
        pattern=(PatternTriple(SlotRef(S), V.RDF_TYPE, marker),
                 PatternTriple(SlotRef(S), V.RDF_TYPE, SlotRef("class")),
                 PatternTriple(SlotRef(S), V.RDFS_LABEL, SlotRef("label"))),
        label_templates={"default": label},
        map_template=((S, "type", "class"),),
        lexical=True, builtin=True,
    )


QUALITY_QUESTIONS = {
    "Assertional:": "Is {subject} {object:class}?",
    "Contingent:": "Can {subject:plural} be {object:class}?",
    "Prototypical:": "Are most {subject:plural} {object:class}?",
    "Universal:": "Are all {subject:plural} {object:class}?",
    "object": "Which quality does {subject} have?",
    "subject": "Which {subject:class} is {object:class}?",
}

WEIGHT_QUESTIONS = {
    "": "Does {subject} have a weight of {value} {unit:class}s?",
    "value": "What is the weight of {subject}?",
    "subject,value": "Which {subject:class} has a weight of {value} {unit:class}s?",
    "subject": "Which {subject:class} has a weight of {value} {unit:class}s?",
}


def weight_schema() -> SchemaTemplate:
    return SchemaTemplate(
        id=_sid("weight"), name="weight", relation_class=V.su("weight-statement-unit"),
        slots=(SlotSpec(S, "subject"), SlotSpec("unit", "object"),
               SlotSpec("value", "object", "literal", XSDType.decimal)),
        pattern=(PatternTriple(SlotRef(S), V.HAS_QUALITY, NodeRef("weight")),
                 PatternTriple(NodeRef("weight"), V.RDF_TYPE, V.WEIGHT),
                 PatternTriple(NodeRef("weight"), V.HAS_MEASUREMENT_UNIT, SlotRef("unit")),
                 PatternTriple(NodeRef("weight"), V.HAS_VALUE, SlotRef("value"))),
        label_templates={"default": "{subject} has a weight of {value} {unit:class}s",
                         "negated": "{subject} does not have a weight of {value} {unit:class}s"},
        question_templates=WEIGHT_QUESTIONS,
        map_template=((S, "weight", "value"), ("value", "unit", "unit")),
        builtin=True,
    )


def builtin_schemas() -> list[SchemaTemplate]:
    out = [
        _identification_schema("named-individual", V.OWL_NAMED_INDIVIDUAL, "{subject} is a {class}"),
        _identification_schema("some-instance", V.SOME_INSTANCE_RESOURCE,
                               "{subject} refers to some instance of {class}"),
        _identification_schema("most-instances", V.MOST_INSTANCES_RESOURCE,
                               "{subject} refers to most instances of {class}"),
        _identification_schema("every-instance", V.EVERY_INSTANCE_RESOURCE,
                               "{subject} refers to every instance of {class}"),
        _identification_schema("all-instances", V.ALL_INSTANCES_RESOURCE,
                               "{subject} refers to all instances of {class}"),
        SchemaTemplate(
            id=_sid("class-identification"), name="class-identification",
            relation_class=V.CLASS_IDENT,
            slots=(SlotSpec(S, "subject", "class"), SlotSpec("label", "object", "literal", XSDType.string),
                   SlotSpec("identifier", "object", "literal", XSDType.string),
                   SlotSpec("ontology", "object", "any", optional=True),
                   SlotSpec("version", "object", "any", optional=True)),
            pattern=(PatternTriple(SlotRef(S), V.RDFS_LABEL, SlotRef("label")),
                     PatternTriple(SlotRef(S), V.DC_IDENTIFIER, SlotRef("identifier")),
                     PatternTriple(SlotRef(S), V.RDFS_IS_DEFINED_BY, SlotRef("ontology"), True),
                     PatternTriple(SlotRef("ontology"), V.OWL_VERSION_IRI, SlotRef("version"), True)),
            label_templates={"default": "{label} ({identifier}) is a class[ from {ontology}]"},
            map_template=((S, "identifier", "identifier"),),
            lexical=True, builtin=True,
        ),
        binary_schema("instance-of", V.RDF_TYPE, object_kind="class",
                      labels={"default": "{subject} is{¬} a {object}"}, edge="type",
                      questions={"": "Is {subject} a {object}?", "subject": "Which {subject:class} is a {object}?"},
                      builtin=True),
        binary_schema("has-quality", V.HAS_QUALITY,
                      labels={"default": "{subject} is{¬} {object:class}",
                              "Prototypical": "{subject} are{¬} {object:class}",
                              "Contingent": "{subject} are{¬} {object:class}",
                              "Universal": "{subject} is{¬} {object:class}"},
                      questions=QUALITY_QUESTIONS, edge="has quality", builtin=True),
        binary_schema("has-part", V.HAS_PART,
                      labels={"default": "{subject} has part {object}",
                              "negated": "{subject} has no {object:noun}"},
                      questions={"": "Does {subject} have part {object}?",
                                 "object": "Which part does {subject} have?"},
                      edge="has part", builtin=True),
        binary_schema("part-of", V.PART_OF,
                      labels={"default": "{subject} is{¬} part of {object}"},
                      questions={"": "Is {subject} part of {object}?",
                                 "object": "What is {subject} part of?",
                                 "subject": "Which {subject:class} is part of {object}?"},
                      edge="part of", builtin=True),
        binary_schema("inheres-in", V.INHERES_IN,
                      labels={"default": "{subject} does{¬} inhere in {object}"}, edge="inheres in",
                      builtin=True),
        binary_schema("increased-relative-to", V.INCREASED_RELATIVE_TO,
                      labels={"default": "{subject} is{¬} increased relative to {object}"},
                      edge="increased relative to", builtin=True),
        binary_schema("subclass-of", V.RDFS_SUBCLASS_OF, subject_kind="class", object_kind="class",
                      labels={"default": "{subject} is{¬} a subclass of {object}"}, edge="subclass of",
                      builtin=True),
        binary_schema("equivalent-class", V.OWL_EQUIVALENT_CLASS, subject_kind="class", object_kind="class",
                      labels={"default": "{subject} is{¬} equivalent to {object}"}, edge="equivalent to",
                      builtin=True),
        binary_schema("disjoint-with", V.OWL_DISJOINT_WITH, subject_kind="class", object_kind="class",
                      labels={"default": "{subject} is{¬} disjoint with {object}"}, edge="disjoint with",
                      builtin=True),
        binary_schema("same-as", V.OWL_SAME_AS,
                      labels={"default": "{subject} is{¬} the same as {object}"}, edge="same as",
                      builtin=True),
        binary_schema("asserts", V.ASSERTS, subject_kind="any", object_kind="unit",
                      labels={"default": "{subject} asserts: '{object}'"}, builtin=True),
        binary_schema("negates", V.NEGATES, subject_kind="any", object_kind="unit",
                      labels={"default": "{subject} negates: '{object}'"}, builtin=True),
        binary_schema("is-agnostic-about", V.IS_AGNOSTIC_ABOUT, subject_kind="any", object_kind="unit",
                      labels={"default": "{subject} is agnostic about: '{object}'"}, edge="agnostic about",
                      builtin=True),
        binary_schema("relates-statements", V.su("relates-to-statement"), subject_kind="unit",
                      object_kind="unit", labels={"default": "'{subject}' relates to '{object}'"},
                      builtin=True),
        binary_schema("is-if-of-then", V.IS_IF_OF_THEN, subject_kind="unit", object_kind="unit",
                      relation_class=V.CONDITIONAL_UNIT,
                      labels={"default": "If {subject} then {object}"}, edge="if-then", builtin=True),
        weight_schema(),
        SchemaTemplate(
            id=_sid("time-index"), name="time-index", relation_class=V.TIME_INDEX_UNIT,
            slots=(SlotSpec(S, "subject", "any"), SlotSpec("start", "object", "literal"),
                   SlotSpec("end", "object", "literal", optional=True)),
            pattern=(PatternTriple(SlotRef(S), V.su("has-time-index"), NodeRef("time")),
                     PatternTriple(NodeRef("time"), V.su("has-start"), SlotRef("start")),
                     PatternTriple(NodeRef("time"), V.su("has-end"), SlotRef("end"), True)),
            label_templates={"default": "{subject} holds from {start}[ to {end}]"},
            map_template=((S, "from", "start"), (S, "to", "end")),
            builtin=True,
        ),
        SchemaTemplate(
            id=_sid("geo-index"), name="geo-index", relation_class=V.GEO_INDEX_UNIT,
            slots=(SlotSpec(S, "subject", "any"), SlotSpec("place", "object", "any", optional=True),
                   SlotSpec("lat", "object", "literal", XSDType.decimal, optional=True),
                   SlotSpec("long", "object", "literal", XSDType.decimal, optional=True)),
            pattern=(PatternTriple(SlotRef(S), V.su("has-geo-index"), NodeRef("geo")),
                     PatternTriple(NodeRef("geo"), V.su("has-place"), SlotRef("place"), True),
                     PatternTriple(NodeRef("geo"), Iri(V.WGS84 + "lat"), SlotRef("lat"), True),
                     PatternTriple(NodeRef("geo"), Iri(V.WGS84 + "long"), SlotRef("long"), True)),
            label_templates={"default": "{subject} is located[ in {place}][ at {lat}, {long}]"},
            map_template=((S, "located in", "place"), (S, "lat", "lat"), (S, "long", "long")),
            builtin=True,
        ),
        SchemaTemplate(
            id=_sid("time-order"), name="time-order", relation_class=V.TIME_ORDER_UNIT,
            slots=(SlotSpec(S, "subject", "any"), SlotSpec("sequence", "object", "any"),
                   SlotSpec("position", "object", "literal", XSDType.integer)),
            pattern=(PatternTriple(SlotRef(S), V.su("has-time-order"), NodeRef("order")),
                     PatternTriple(NodeRef("order"), V.su("in-sequence"), SlotRef("sequence")),
                     PatternTriple(NodeRef("order"), V.su("has-position"), SlotRef("position"))),
            label_templates={"default": "{subject} is number {position} in {sequence}"},
            map_template=((S, "position", "position"), (S, "in sequence", "sequence")),
            builtin=True,
        ),
    ]
    return out


# JSON representation ------------------------------------------------------

def _term_to_json(term, prefixes):
    if isinstance(term, SlotRef):
        return "?" + term.role
    if isinstance(term, NodeRef):
        return "$" + term.name
    if isinstance(term, Literal):
        out = {"@value": term.lexical, "@type": compact(term.datatype, prefixes)}
        if term.language:
            out["@language"] = term.language
        return out
    return compact(term, prefixes)


def _term_from_json(value, prefixes):
    if isinstance(value, dict):
        dt = expand(value.get("@type", "xsd:string"), prefixes)
        return Literal(value["@value"], dt, value.get("@language"))
    if value.startswith("?"):
        return SlotRef(value[1:])
    if value.startswith("$"):
        return NodeRef(value[1:])
    return expand(value, prefixes)


def schema_to_dict(schema: SchemaTemplate, prefixes: dict) -> dict:
    return {
        "id": str(schema.id),
        "name": schema.name,
        "relation_class": compact(schema.relation_class, prefixes),
        "slots": [{"role": s.role, "position": s.position, "kind": s.kind,
                   "expected": compact(s.expected, prefixes) if s.expected else None,
                   "optional": s.optional} for s in schema.slots],
        "pattern": [[_term_to_json(x, prefixes) for x in (pt.s, pt.p, pt.o)] + ([True] if pt.optional else [])
                    for pt in schema.pattern],
        "labels": dict(schema.label_templates),
        "questions": dict(schema.question_templates),
        "map": [list(e) for e in schema.map_template],
        "lexical": schema.lexical,
    }


def schema_from_dict(d: dict, prefixes: dict) -> SchemaTemplate:
    try:
        slots = tuple(SlotSpec(s["role"], s.get("position", "object"), s.get("kind", "resource"),
                               expand(s["expected"], prefixes) if s.get("expected") else None,
                               bool(s.get("optional", False))) for s in d["slots"])
        pattern = tuple(PatternTriple(*[_term_from_json(x, prefixes) for x in row[:3]],
                                      bool(row[3]) if len(row) > 3 else False) for row in d["pattern"])
        return SchemaTemplate(
            id=expand(d["id"], prefixes), name=d["name"],
            relation_class=expand(d.get("relation_class") or f"semunit:{d['name']}-statement-unit", prefixes),
            slots=slots, pattern=pattern,
            label_templates=dict(d.get("labels", {})),
            question_templates=dict(d.get("questions", {})),
            map_template=tuple(tuple(e) for e in d.get("map", [])),
            lexical=bool(d.get("lexical", False)),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidSchema(f"malformed schema document: {exc}") from exc
