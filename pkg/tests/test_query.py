"""Question units: derivation, underspecification, execution and Boolean combination."""
from __future__ import annotations

from decimal import Decimal

import pytest
from hypothesis import given, settings

from semunits import fixtures as F
from semunits.errors import MixedModes, SlotTypeMismatch, UnknownRole, UnsatisfiableRange
from semunits.modifiers import build_boolean_unit, negate
from semunits.query import (
    Fixed, Range, TypedVariable, ask, candidates, combine, compile, derive_question, question_from_dict,
    question_to_dict, register_question, underspecify,
)
from semunits.statements import StatementCategory
from semunits.terms import decimal

from strategies import weight_store, weights


def weight_question(apples, **slots):
    q = derive_question(apples.store, apples["weightX"])
    for role, slot in slots.items():
        q = underspecify(q, role, slot, apples.store)
    return q


def test_derived_question_is_fully_fixed(apples):
    q = derive_question(apples.store, apples["weightX"])
    assert q.is_boolean
    assert q.slot_map == {"subject": Fixed(apples["appleX"]), "unit": Fixed(apples["gram"]),
                          "value": Fixed(decimal("204.56"))}
    assert q.category is StatementCategory.ASSERTIONAL


def test_range_without_matches(apples):
    q = weight_question(apples, value=Range(min=300, max=301))
    assert compile(q, apples.store).mode == "Bindings"
    assert ask(apples.store, q) == []


def test_typed_variable_takes_class_from_replaced_value(apples):
    q = weight_question(apples, subject=TypedVariable())
    assert q.slot_map["subject"] == TypedVariable(F.APPLE)
    rows = ask(apples.store, q)
    assert [r.get("subject") for r in rows] == [apples["appleX"]]


def test_all_weights_question(apples):
    q = weight_question(apples, subject=TypedVariable(F.APPLE), value=Range())
    got = {(r.get("subject"), r.get("value")) for r in ask(apples.store, q)}
    assert got == {(apples["appleX"], decimal("204.56")), (apples["appleY"], decimal("150")),
                   (apples["appleZ"], decimal("350"))}


def test_rows_name_their_source_units(apples):
    q = weight_question(apples, value=Range())
    (row,) = ask(apples.store, q)
    assert row.units == (apples["weightX"],)


def test_exclusive_bounds(apples):
    q = weight_question(apples, subject=TypedVariable(F.APPLE),
                        value=Range(min=Decimal("150"), max=Decimal("350"), min_inclusive=False, max_inclusive=False))
    assert {r.get("subject") for r in ask(apples.store, q)} == {apples["appleX"]}


def test_negated_units_are_not_answers(apples):
    negate(apples.store, apples["weightX"])
    assert ask(apples.store, derive_question(apples.store, apples["weightX"])) is False


def test_underspecification_errors(apples):
    q = derive_question(apples.store, apples["weightX"])
    with pytest.raises(UnknownRole):
        underspecify(q, "colour", Range(), apples.store)
    with pytest.raises(SlotTypeMismatch):
        underspecify(q, "subject", Range(), apples.store)
    with pytest.raises(SlotTypeMismatch):
        underspecify(q, "value", TypedVariable(F.APPLE), apples.store)
    with pytest.raises(SlotTypeMismatch):
        underspecify(q, "subject", TypedVariable())
    bad = underspecify(q, "value", Range(min=5, max=1), apples.store)
    with pytest.raises(UnsatisfiableRange):
        ask(apples.store, bad)


def test_mixed_modes_are_rejected(apples):
    yes_no = derive_question(apples.store, apples["weightX"])
    what = weight_question(apples, value=Range())
    with pytest.raises(MixedModes):
        ask(apples.store, combine("AND", yes_no, what))


def test_contingent_question_accepts_facts(swans):
    s = swans.store
    q = derive_question(s, swans["antonWhite"])
    q = q.__class__(q.source_schema, q.slots, StatementCategory.CONTINGENT)
    assert {c[0] for c in candidates(compile(q, s), s)} == {swans["antonWhite"]}


def test_boolean_unit_over_registered_questions(apples):
    s = apples.store
    yes = register_question(s, derive_question(s, apples["weightX"]))
    no = register_question(s, underspecify(derive_question(s, apples["weightY"]), "value",
                                           Fixed(decimal("151")), s))
    assert ask(s, no) is False
    unit = build_boolean_unit(s, "XOR", [yes.gupri, no.gupri])
    assert ask(s, unit) is True
    unit = build_boolean_unit(s, "EQUAL", [yes.gupri, no.gupri])
    assert ask(s, unit) is False


def test_question_json_round_trip(apples):
    p = apples.store.prefix_map
    q = weight_question(apples, subject=TypedVariable(F.APPLE), value=Range(min=200, max=300))
    assert question_from_dict(question_to_dict(q, p), p) == q
    combo = combine("NOT", q)
    assert question_from_dict(question_to_dict(combo, p), p) == combo


# properties -----------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(weight_store(), weights, weights, weights, weights)
def test_widening_a_range_never_loses_answers(built, a, b, c, d):
    store, universe, _ = built
    lo, hi = sorted((a, b))
    outer_lo, outer_hi = min(lo, c), max(hi, d)
    base = derive_question(store, next(u.gupri for u in store.statement_units()
                                       if u.metadata.schema_id and u.metadata.schema_id.endswith("weight")))
    base = underspecify(base, "subject", TypedVariable(F.APPLE), store)

    def answers(low, high):
        q = underspecify(base, "value", Range(min=low, max=high), store)
        return {(r.get("subject"), r.get("value")) for r in ask(store, q)}

    inner, outer = answers(lo, hi), answers(outer_lo, outer_hi)
    assert inner <= outer
    assert inner == {(s, v) for s, v in universe if lo <= v.value <= hi}
