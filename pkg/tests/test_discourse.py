"""Epistemic, directive, conditional and logical argument units."""
from __future__ import annotations

import pytest

from semunits import fixtures as F
from semunits import vocab as V
from semunits.discourse import (
    ArgumentKind, Stance, argument_view, build_argument, build_conditional, build_directive,
    conditional_view, directive_view, epistemic_view, stance_map,
)
from semunits.errors import ClauseTypeViolation, IfClauseNotAssertional, MissingBoldness, UnsupportedCategory
from semunits.modifiers import build_boolean_unit
from semunits.resources import ResourceCategory as RC
from semunits.resources import identify
from semunits.statements import StatementCategory, create_statement_unit
from semunits.terms import Triple


def test_stances_about_one_statement():
    f = F.epistemic_fixture()
    s = f.store
    stances = stance_map(s, f["universal"])
    assert stances[Stance.POSITIVE] == {f["agent"]}
    assert stances[Stance.NEGATIVE] == {f["doubter"]}
    assert stances[Stance.AGNOSTIC] == set()


def test_referential_stance():
    f = F.epistemic_fixture()
    view = epistemic_view(f.store, f["referential"])
    assert view.referential
    assert (view.agent, view.stance, view.target) == (f["doubter"], Stance.AGNOSTIC, f["positive"])
    assert V.REFERENTIAL_EPISTEMIC_UNIT in f.store.unit(f["referential"]).kinds


def test_stance_graph_links_agent_and_unit():
    f = F.epistemic_fixture()
    assert f.store.data_graph(f["positive"]) == {Triple(f["agent"], V.ASSERTS, f["universal"])}
    assert epistemic_view(f.store, f["universal"]) is None


def test_directive_keeps_content_and_tags_subtype():
    f = F.directive_fixture()
    s = f.store
    d = directive_view(s, f["directive"])
    assert d.subtype is StatementCategory.ASSERTIONAL
    assert V.su("assertional-directive-unit") in s.unit(f["directive"]).kinds
    assert directive_view(s, f["bertaWhite"]) is None


def test_identification_units_cannot_be_directives(swans):
    with pytest.raises(UnsupportedCategory):
        build_directive(swans.store, swans["antonIdent"])


def test_conditional_with_directive_then_clause():
    f = F.directive_fixture()
    c = conditional_view(f.store, f["conditional"])
    assert (c.if_clause, c.then_clause, c.directive) == (f["bertaWhite"], f["directive"], True)
    assert f.store.data_graph(f["conditional"]) == {Triple(f["bertaWhite"], V.IS_IF_OF_THEN, f["directive"])}


def test_if_clause_must_be_assertional():
    f = F.directive_fixture()
    with pytest.raises(IfClauseNotAssertional):
        build_conditional(f.store, f["universal"], f["antonWhite"])
    with pytest.raises(IfClauseNotAssertional):
        build_conditional(f.store, f["directive"], f["bertaWhite"])


def test_boolean_if_clause_of_facts(swans):
    s = swans.store
    other = identify(s, "Swan Berta", RC.NAMED_INDIVIDUAL, F.SWAN)
    berta_white = create_statement_unit(s, "has-quality", other, [swans["someWhite"]])
    both = build_boolean_unit(s, "AND", [berta_white.gupri, swans["antonWhite"]])
    c = build_conditional(s, both.gupri, swans["universal"])
    assert c.if_clause == both.gupri and not c.directive


def test_argument_views():
    f = F.argument_fixture()
    s = f.store
    ded = argument_view(s, f["deduction"])
    assert ded.kind is ArgumentKind.DEDUCTION
    assert ded.conclusion == f["result"]
    assert ded.premises == (f["case"], f["universal"])
    ind = argument_view(s, f["inductionPrototypical"])
    assert ind.boldness is StatementCategory.PROTOTYPICAL
    assert ind.conclusion == f["prototypical"]
    abd = argument_view(s, f["abduction"])
    assert abd.hypothesis and abd.conclusion == f["case"] and abd.modality == "possible"
    assert argument_view(s, f["result"]) is None


def test_argument_clause_checks():
    f = F.argument_fixture()
    s = f.store
    with pytest.raises(MissingBoldness):
        build_argument(s, "Induction", f["case"], f["contingent"], f["result"])
    with pytest.raises(ClauseTypeViolation):
        build_argument(s, "Deduction", f["case"], f["universal"], f["result"], boldness="Universal")
    with pytest.raises(ClauseTypeViolation):
        build_argument(s, "Deduction", f["case"], f["result"], f["result"])
    with pytest.raises(ClauseTypeViolation):
        build_argument(s, "Deduction", f["universal"], f["universal"], f["result"])
    with pytest.raises(ClauseTypeViolation):
        build_argument(s, "Deduction", f["case"], f["universal"], f["result"], hypothesis=True)
    with pytest.raises(ClauseTypeViolation):
        build_argument(s, "Induction", f["case"], f["contingent"], f["result"], boldness="Assertional")
