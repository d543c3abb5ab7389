"""Translation of statement units into OWL axioms and the entailment check."""
from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semunits import fixtures as F
from semunits import vocab as V
from semunits.errors import (
    NotNegated, RangeFormNotTranslatable, TooManyVariables, UnboundVariable, UnsupportedNegation,
)
from semunits.logic import Atom, Var
from semunits.modifiers import negate
from semunits.owl import axioms as A
from semunits.owl.bridge import (
    PatternRegistry, TranslationPattern, _translate, builtin_patterns, materialize, pattern_entailment,
    relational_pattern, translate_cardinality, translate_negation, translate_store, translate_unit,
)
from semunits.resources import ResourceCategory as RC
from semunits.resources import identify
from semunits.statements import create_statement_unit


def test_assertional_relation_links_the_individuals(swans):
    got = translate_unit(swans.store, swans["antonWhite"])
    assert got == [A.ObjectPropertyAssertion(V.HAS_QUALITY, swans["anton"], swans["someWhite"])]


def test_named_individual_identification(swans):
    got = translate_unit(swans.store, swans["antonIdent"])
    assert A.ClassAssertion(F.SWAN, swans["anton"]) in got


def test_absence_translates_to_negated_existential():
    f = F.absence_fixture()
    assert translate_negation(f.store, f["negated"]) == [
        A.ClassAssertion(A.ComplementOf(A.SomeValuesFrom(V.HAS_PART, F.ANTENNA)), f["head"])]


def test_negation_entry_point_checks(swans):
    with pytest.raises(NotNegated):
        translate_negation(swans.store, swans["antonWhite"])
    negate(swans.store, swans["universal"])
    with pytest.raises(UnsupportedNegation):
        translate_negation(swans.store, swans["universal"])
    assert "unsupported-negation" in _translate(swans.store, swans["universal"], None, ("direct",)).flags


def test_negated_unit_emits_no_positive_axiom(swans):
    negate(swans.store, swans["antonWhite"])
    got = translate_unit(swans.store, swans["antonWhite"])
    assert A.ObjectPropertyAssertion(V.HAS_QUALITY, swans["anton"], swans["someWhite"]) not in got
    # the object is a some-instance resource, so the negation is existential
    assert got == [A.ClassAssertion(A.ComplementOf(A.SomeValuesFrom(V.HAS_QUALITY, F.WHITE)), swans["anton"])]


def test_range_cardinality_is_not_translated():
    f = F.cardinality_fixture(range_=(2, 4))
    with pytest.raises(RangeFormNotTranslatable):
        translate_cardinality(f.store, f["cardinality"])
    flags = [x["flag"] for x in translate_store(f.store).flags]
    assert "range-form-not-translatable" in flags


def test_cardinality_entry_point():
    f = F.cardinality_fixture()
    sk = f"{f['cardinality']}#sk1"
    got = translate_cardinality(f.store, f["cardinality"])
    assert A.ClassAssertion(A.IntersectionOf(V.COLLECTION, A.QualifiedCardinality(V.HAS_MEMBER, 3, F.EYE)),
                            sk) in got
    with pytest.raises(RangeFormNotTranslatable):
        translate_cardinality(f.store, f["link"])


def test_rule_like_units_are_flagged():
    f = F.argument_fixture()
    assert "no-owl-pattern" in _translate(f.store, f["prototypical"], None, ("direct",)).flags
    assert "no-owl-pattern" in _translate(f.store, f["contingent"], None, ("direct",)).flags
    d = F.directive_fixture()
    assert "directive-not-translated" in _translate(d.store, d["directive"], None, ("direct",)).flags
    assert _translate(d.store, d["conditional"], None, ("direct",)).flags == ["no-axioms"]


def test_compound_units_are_not_visited():
    f = F.antenna_fixture()
    doc = translate_store(f.store)
    assert f["group"] not in doc.translated
    assert _translate(f.store, f["group"], None, ("direct",)).flags == ["compound-unit"]


def test_translation_is_deterministic_and_deduplicated():
    for name, build in F.FIXTURES.items():
        a = translate_store(build().store).to_functional()
        assert a == translate_store(build().store).to_functional(), name
        body = [line for line in a.splitlines() if not line.startswith(("Prefix", "Ontology", ")"))]
        assert len(body) == len(set(body)), name


def test_functional_document_shape():
    text = translate_store(F.swan_fixture().store).to_functional()
    assert text.startswith("Prefix(")
    assert "Ontology(<https://kg.example/su/ontology>" in text
    assert text.endswith(")\n")


def test_report_lists_translated_and_skipped():
    f = F.mixed_framework_fixture()
    report = translate_store(f.store, "LogicProgram").report()
    assert report["translated"] == [str(f["lp"])]
    assert [x["reason"] for x in report["skipped"]] == ["framework-filter"]


# patterns -------------------------------------------------------------------

def test_patterns_reject_unbound_template_variables():
    X, Y = Var("X"), Var("Y")
    with pytest.raises(UnboundVariable):
        TranslationPattern("bad", V.UNIVERSAL_UNIT, (Atom("class", (X,)),), (A.SubClassOf(X, Y),))


def test_custom_registry_replaces_builtin(swans):
    X = Var("X")
    p = TranslationPattern("mark", V.NAMED_INDIVIDUAL_IDENT, (Atom("named-individual", (X,)),),
                           (A.ClassAssertion(F.ORGANISM, X),))
    reg = PatternRegistry([p])
    assert translate_unit(swans.store, swans["antonIdent"], reg) == [A.ClassAssertion(F.ORGANISM, swans["anton"])]
    with pytest.raises(TypeError):
        reg.register("not a pattern")


def test_builtin_patterns_have_unique_names():
    names = [p.name for p in builtin_patterns()]
    assert len(names) == len(set(names))


def test_entailment_limits_variables():
    X, Y, Z, W = (Var(n) for n in "XYZW")
    templates = [A.SubClassOf(X, Y), A.SubClassOf(Z, W)]
    with pytest.raises(TooManyVariables):
        pattern_entailment(templates, [], [])


def test_entailment_on_empty_ontology():
    assert pattern_entailment(relational_pattern(V.HAS_QUALITY), [], [F.SWAN, F.WHITE]) == []


def test_materialize_subclass_chains():
    a, b, c = F.SWAN, F.ORGANISM, F.EVENT
    closure = materialize([A.SubClassOf(a, b), A.SubClassOf(b, c), A.ClassAssertion(a, F.PERSON)])
    assert A.SubClassOf(a, c) in closure
    assert A.ClassAssertion(c, F.PERSON) in closure


CHAIN = [F.SWAN, F.ORGANISM, F.EVENT, F.PERSON, F.HEAD]


@given(st.lists(st.tuples(st.sampled_from(CHAIN), st.sampled_from(CHAIN)), max_size=8))
def test_materialized_subclass_relation_is_the_transitive_closure(edges):
    closure = materialize([A.SubClassOf(a, b) for a, b in edges])
    got = {(ax.args[0], ax.args[1]) for ax in closure if ax.name == "SubClassOf"}
    # reachability by repeated relational composition
    expected = set(edges)
    while True:
        more = {(a, d) for a, b in expected for c, d in expected if b == c} - expected
        if not more:
            break
        expected |= more
    assert got == expected


def test_every_instance_route_agrees_for_a_new_universal():
    s = F.swan_fixture().store
    every = identify(s, "every head", RC.EVERY_INSTANCE, F.HEAD)
    eye = identify(s, "some eye", RC.SOME_INSTANCE, F.EYE)
    create_statement_unit(s, "has-part", every, [eye])
    collection = translate_store(s, routes=("collection",)).axioms
    found = pattern_entailment(relational_pattern(V.HAS_PART), collection, {F.HEAD, F.EYE, F.SWAN, F.WHITE})
    assert found == [{"X": F.HEAD, "Y": F.EYE}]
