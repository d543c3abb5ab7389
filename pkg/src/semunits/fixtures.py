"""Small stores reproducing the worked examples used in tests, docs and the CLI.

Each builder returns a ``Fixture`` holding the store and a dict of handles
(resource IRIs and unit Gupris) keyed by short names.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import vocab as V
from .compound import (
    GeoIndex, TimeIndex, TimeOrder, build_contextual_unit, build_item_group_unit, build_item_unit,
)
from .discourse import ArgumentKind, Stance, assert_stance, build_argument, build_conditional, build_directive
from .modifiers import CardinalitySpec, negate, restrict_cardinality
from .resources import ResourceCategory as RC
from .resources import create_class_identification_unit, declare_resource, identify
from .statements import create_statement_unit
from .store import LayeredStore, UnitMetadata
from .terms import Iri, decimal


def obo(local: str) -> Iri:
    return Iri(V.OBO + local)


# classes used across the examples
APPLE = obo("NCBITaxon_3750")
GRAM = obo("UO_0000021")
SWAN = obo("NCBITaxon_8867")
WHITE = obo("PATO_0000323")
RED = obo("PATO_0000322")
FRUIT = obo("PO_0009001")
POME_FRUIT = obo("PO_0030108")
ORANGE_PLANT = obo("NCBITaxon_2711")
HEAD = obo("UBERON_0000033")
EYE = obo("UBERON_0000970")
ANTENNA = obo("UBERON_0000972")
ANTENNA_TYPE_1 = Iri("https://kg.example/class/antenna-type-1")
ORGANISM = obo("UBERON_0000468")
LENGTH = obo("PATO_0000122")
PERSON = obo("NCBITaxon_9606")
PRESIDENT = Iri("https://kg.example/class/us-president")
SUMMIT = Iri("https://kg.example/class/summit-meeting")
EVENT = Iri("https://kg.example/class/event")

CLASS_LABELS = {
    APPLE: "apple", GRAM: "gram", SWAN: "swan", WHITE: "white", RED: "red", FRUIT: "fruit",
    POME_FRUIT: "pome fruit", ORANGE_PLANT: "orange plant", HEAD: "head", EYE: "eye", ANTENNA: "antenna",
    ANTENNA_TYPE_1: "antenna type 1", ORGANISM: "multicellular organism", LENGTH: "length",
    PERSON: "human", PRESIDENT: "president of the United States", SUMMIT: "summit meeting", EVENT: "event",
}


@dataclass
class Fixture:
    store: LayeredStore
    refs: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.refs[key]


def _store() -> LayeredStore:
    return LayeredStore()


def _classes(store, *classes):
    for c in classes:
        create_class_identification_unit(store, c, CLASS_LABELS[c])


def weight_fixture() -> Fixture:
    """A single apple with a measured weight."""
    s = _store()
    _classes(s, APPLE, GRAM)
    apple = identify(s, "apple X", RC.NAMED_INDIVIDUAL, APPLE)
    gram = identify(s, "gram X", RC.NAMED_INDIVIDUAL, GRAM)
    w = create_statement_unit(s, "weight", apple, {"unit": gram, "value": decimal("204.56")})
    return Fixture(s, {"apple": apple.iri, "gram": gram.iri, "weight": w.gupri})


def three_apples_fixture() -> Fixture:
    s = _store()
    _classes(s, APPLE, GRAM)
    gram = identify(s, "gram X", RC.NAMED_INDIVIDUAL, GRAM)
    refs = {"gram": gram.iri}
    for name, value in (("X", "204.56"), ("Y", "150"), ("Z", "350")):
        apple = identify(s, f"apple {name}", RC.NAMED_INDIVIDUAL, APPLE)
        w = create_statement_unit(s, "weight", apple, {"unit": gram, "value": decimal(value)})
        refs[f"apple{name}"] = apple.iri
        refs[f"weight{name}"] = w.gupri
    return Fixture(s, refs)


def item_fixture() -> Fixture:
    """An item unit collecting three statements about apple X."""
    f = weight_fixture()
    s = f.store
    _classes(s, RED)
    red = identify(s, "some red", RC.SOME_INSTANCE, RED)
    q = create_statement_unit(s, "has-quality", f["apple"], [red])
    item = build_item_unit(s, f["apple"])
    f.refs.update({"red": red.iri, "quality": q.gupri, "item": item.gupri})
    return f


def swan_fixture() -> Fixture:
    """Identification units for swans plus assertional and universal has-quality units."""
    s = _store()
    _classes(s, SWAN, WHITE)
    every = identify(s, "every swan", RC.EVERY_INSTANCE, SWAN)
    white = identify(s, "some white", RC.SOME_INSTANCE, WHITE)
    anton = identify(s, "Swan Anton", RC.NAMED_INDIVIDUAL, SWAN)
    universal = create_statement_unit(s, "has-quality", every, [white])
    anton_white = create_statement_unit(s, "has-quality", anton, [white])
    return Fixture(s, {"everySwan": every.iri, "someWhite": white.iri, "anton": anton.iri,
                       "universal": universal.gupri, "antonWhite": anton_white.gupri,
                       "everySwanIdent": s.identification_of[every.iri],
                       "antonIdent": s.identification_of[anton.iri]})


def defaults_fixture(blocked: bool = False) -> Fixture:
    """Most swans are white; Anton and Berta are swans. ``blocked`` adds Berta's exception."""
    s = _store()
    _classes(s, SWAN, WHITE)
    most = identify(s, "most swans", RC.MOST_INSTANCES, SWAN)
    white = identify(s, "some white", RC.SOME_INSTANCE, WHITE)
    anton = identify(s, "Swan Anton", RC.NAMED_INDIVIDUAL, SWAN)
    berta = identify(s, "Swan Berta", RC.NAMED_INDIVIDUAL, SWAN)
    proto = create_statement_unit(s, "has-quality", most, [white])
    f = Fixture(s, {"mostSwans": most.iri, "someWhite": white.iri, "anton": anton.iri, "berta": berta.iri,
                    "prototypical": proto.gupri})
    if blocked:
        add_blocker(f)
    return f


def add_blocker(f: Fixture) -> Iri:
    """Record that Berta is not white (a negated assertional unit)."""
    u = create_statement_unit(f.store, "has-quality", f["berta"], [f["someWhite"]])
    negate(f.store, u.gupri)
    f.refs["blocker"] = u.gupri
    return u.gupri


def negation_fixture() -> Fixture:
    """This fruit is not a pome fruit."""
    s = _store()
    _classes(s, FRUIT, POME_FRUIT)
    fruit = identify(s, "this fruit", RC.NAMED_INDIVIDUAL, FRUIT)
    u = create_statement_unit(s, "instance-of", fruit, [POME_FRUIT])
    negate(s, u.gupri)
    return Fixture(s, {"fruit": fruit.iri, "negated": u.gupri})


def absence_fixture() -> Fixture:
    """Head X has no antenna."""
    s = _store()
    _classes(s, HEAD, ANTENNA)
    head = identify(s, "head X", RC.NAMED_INDIVIDUAL, HEAD)
    antenna = identify(s, "some antenna", RC.SOME_INSTANCE, ANTENNA)
    u = create_statement_unit(s, "has-part", head, [antenna])
    negate(s, u.gupri)
    return Fixture(s, {"head": head.iri, "antenna": antenna.iri, "negated": u.gupri})


def negative_relation_fixture() -> Fixture:
    """Fruit X is not part of orange plant Y."""
    s = _store()
    _classes(s, FRUIT, ORANGE_PLANT)
    fruit = identify(s, "fruit X", RC.NAMED_INDIVIDUAL, FRUIT)
    plant = identify(s, "orange plant Y", RC.NAMED_INDIVIDUAL, ORANGE_PLANT)
    u = create_statement_unit(s, "part-of", fruit, [plant])
    negate(s, u.gupri)
    return Fixture(s, {"fruit": fruit.iri, "plant": plant.iri, "negated": u.gupri})


def cardinality_fixture(exact: int | None = 3, range_: tuple | None = None) -> Fixture:
    """Head X and exactly three eyes, linked by a part-of companion unit."""
    s = _store()
    _classes(s, HEAD, EYE)
    head = identify(s, "head X", RC.NAMED_INDIVIDUAL, HEAD)
    eyes = identify(s, "some eyes", RC.SOME_INSTANCE, EYE)
    ident = s.identification_of[eyes.iri]
    if range_ is not None:
        spec = CardinalitySpec(min=range_[0], max=range_[1], value_unit=V.COUNT_UNIT)
    else:
        spec = CardinalitySpec(exact=exact)
    restrict_cardinality(s, ident, spec)
    link = create_statement_unit(s, "part-of", head, [eyes])
    return Fixture(s, {"head": head.iri, "eyes": eyes.iri, "cardinality": ident, "link": link.gupri})


def antenna_fixture() -> Fixture:
    """Antenna type 1: its antenna is longer than the eye of the same organism."""
    s = _store()
    _classes(s, ANTENNA_TYPE_1, ORGANISM, LENGTH, EYE)
    every = identify(s, "every antenna type 1", RC.EVERY_INSTANCE, ANTENNA_TYPE_1)
    organism = identify(s, "some multicellular organism", RC.SOME_INSTANCE, ORGANISM)
    length_a = identify(s, "some antenna length", RC.SOME_INSTANCE, LENGTH)
    length_e = identify(s, "some eye length", RC.SOME_INSTANCE, LENGTH)
    eye = identify(s, "some eye", RC.SOME_INSTANCE, EYE)
    units = {
        "antennaPartOf": create_statement_unit(s, "part-of", every, [organism]),
        "antennaLength": create_statement_unit(s, "has-quality", every, [length_a]),
        "longer": create_statement_unit(s, "increased-relative-to", length_a, [length_e]),
        "eyeLength": create_statement_unit(s, "inheres-in", length_e, [eye]),
        "eyePartOf": create_statement_unit(s, "part-of", eye, [organism]),
    }
    items = [build_item_unit(s, r) for r in (every, length_a, length_e, eye, organism)]
    group = build_item_group_unit(s, items, variant="universal")
    refs = {k: u.gupri for k, u in units.items()}
    refs.update({"every": every.iri, "organism": organism.iri, "eye": eye.iri, "group": group.gupri,
                 "items": [i.gupri for i in items]})
    return Fixture(s, refs)


def epistemic_fixture() -> Fixture:
    f = swan_fixture()
    s = f.store
    agent = Iri("https://orcid.org/0000-0002-1825-0097")
    identify(s, "Josiah Carberry", RC.NAMED_INDIVIDUAL, PERSON, agent)
    pos = assert_stance(s, agent, Stance.POSITIVE, f["universal"])
    doubter = Iri("https://orcid.org/0000-0001-5109-3700")
    identify(s, "Jane Roe", RC.NAMED_INDIVIDUAL, PERSON, doubter)
    neg = assert_stance(s, doubter, Stance.NEGATIVE, f["universal"])
    ref = assert_stance(s, doubter, Stance.AGNOSTIC, pos.gupri)
    f.refs.update({"agent": agent, "doubter": doubter, "positive": pos.gupri, "negative": neg.gupri,
                   "referential": ref.gupri})
    return f


def contextual_fixture() -> Fixture:
    s = _store()
    _classes(s, PERSON, PRESIDENT, SUMMIT, EVENT)
    jfk = identify(s, "John F. Kennedy", RC.NAMED_INDIVIDUAL, PERSON)
    office = create_statement_unit(s, "instance-of", jfk, [PRESIDENT])
    presidents = Iri("https://kg.example/res/us-presidency")
    identify(s, "US presidency", RC.NAMED_INDIVIDUAL, PRESIDENT, presidents)
    ctx = build_contextual_unit(s, [office], time=TimeIndex("1961-01-20", "1963-11-22"),
                                order=TimeOrder(presidents, 35))
    g7 = identify(s, "G7 summit 2022", RC.NAMED_INDIVIDUAL, EVENT)
    summit = create_statement_unit(s, "instance-of", g7, [SUMMIT])
    place = Iri("https://www.wikidata.org/wiki/Q314981")
    geo = build_contextual_unit(s, [summit], time=TimeIndex("2022-06-26", "2022-06-28"),
                                geo=GeoIndex(place, 47.4422, 11.1478))
    return Fixture(s, {"jfk": jfk.iri, "office": office.gupri, "context": ctx.gupri, "g7": g7.iri,
                       "summit": summit.gupri, "geoContext": geo.gupri})


def directive_fixture() -> Fixture:
    """Make Swan Anton white, if Swan Berta is white."""
    f = swan_fixture()
    s = f.store
    berta = identify(s, "Swan Berta", RC.NAMED_INDIVIDUAL, SWAN)
    berta_white = create_statement_unit(s, "has-quality", berta, [f["someWhite"]])
    directive = build_directive(s, f["antonWhite"])
    cond = build_conditional(s, berta_white.gupri, directive.gupri)
    f.refs.update({"berta": berta.iri, "bertaWhite": berta_white.gupri, "directive": directive.gupri,
                   "conditional": cond.gupri})
    return f


def argument_fixture(white: int = 1, other: int = 1) -> Fixture:
    """Deduction, induction and abduction over swans.

    ``white`` known swans are recorded as white (the first is Anton) and
    ``other`` further swans carry no colour statement.
    """
    s = _store()
    _classes(s, SWAN, WHITE)
    every = identify(s, "every swan", RC.EVERY_INSTANCE, SWAN)
    most = identify(s, "most swans", RC.MOST_INSTANCES, SWAN)
    some = identify(s, "some swans", RC.SOME_INSTANCE, SWAN)
    colour = identify(s, "some white", RC.SOME_INSTANCE, WHITE)
    names = ["Anton", "Carla", "Dora", "Emil", "Frida"]
    swans = [identify(s, f"Swan {names[i]}", RC.NAMED_INDIVIDUAL, SWAN) for i in range(white)]
    whites = [create_statement_unit(s, "has-quality", w, [colour]) for w in swans]
    others = [identify(s, f"Swan Other {i + 1}", RC.NAMED_INDIVIDUAL, SWAN) for i in range(other)]
    anton = swans[0]
    case = s.identification_of[anton.iri]
    result = whites[0].gupri
    universal = create_statement_unit(s, "has-quality", every, [colour]).gupri
    proto = create_statement_unit(s, "has-quality", most, [colour]).gupri
    contingent = create_statement_unit(s, "has-quality", some, [colour]).gupri
    ded = build_argument(s, ArgumentKind.DEDUCTION, case, universal, result)
    ind_c = build_argument(s, ArgumentKind.INDUCTION, case, contingent, result, boldness="Contingent")
    ind_p = build_argument(s, ArgumentKind.INDUCTION, case, proto, result, boldness="Prototypical")
    abd = build_argument(s, ArgumentKind.ABDUCTION, case, universal, result, hypothesis=True)
    return Fixture(s, {"anton": anton.iri, "case": case, "result": result, "universal": universal,
                       "prototypical": proto, "contingent": contingent, "deduction": ded.gupri,
                       "inductionContingent": ind_c.gupri, "inductionPrototypical": ind_p.gupri,
                       "abduction": abd.gupri, "others": [o.iri for o in others]})


def mixed_framework_fixture() -> Fixture:
    """One OWL-DL unit and one logic-program unit, with no identification units."""
    s = _store()
    anton = declare_resource(s, "Swan Anton", RC.NAMED_INDIVIDUAL, SWAN)
    most = declare_resource(s, "most swans", RC.MOST_INSTANCES, SWAN)
    white = declare_resource(s, "some white", RC.SOME_INSTANCE, WHITE)
    owl = create_statement_unit(s, "instance-of", anton, [SWAN], UnitMetadata(logic_framework="OWL-DL"))
    lp = create_statement_unit(s, "has-quality", most, [white], UnitMetadata(logic_framework="LogicProgram"))
    return Fixture(s, {"owl": owl.gupri, "lp": lp.gupri})


FIXTURES: dict[str, Callable[[], Fixture]] = {
    "weight": weight_fixture,
    "three-apples": three_apples_fixture,
    "item": item_fixture,
    "swans": swan_fixture,
    "defaults": defaults_fixture,
    "negation": negation_fixture,
    "absence": absence_fixture,
    "negative-relation": negative_relation_fixture,
    "cardinality": cardinality_fixture,
    "antenna": antenna_fixture,
    "epistemic": epistemic_fixture,
    "contextual": contextual_fixture,
    "directive": directive_fixture,
    "arguments": argument_fixture,
    "mixed-framework": mixed_framework_fixture,
}


def build(name: str) -> Fixture:
    return FIXTURES[name]()
