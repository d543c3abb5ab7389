"""Datalog evaluator, default reasoning and argument evaluation."""
from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semunits import fixtures as F
from semunits.errors import Inconsistent, NotStratifiable, RuleSyntaxError, UnsafeRule
from semunits.logic import Atom, Program, Rule, Var, format_program, parse_program, solve
from semunits.modifiers import negate
from semunits.reasoner import (
    apply_prototypical_defaults, argue, build_program, check_most_condition, export_program,
    semantics_of_rule, unit_facts,
)
from semunits.resources import MostInstancesSemantics

HQ = "obo:RO_0000086"
x, y = Var("x"), Var("y")


# evaluator ------------------------------------------------------------------

def test_transitive_closure():
    nodes = ["ka", "kb", "kc", "kd"]
    edges = " ".join(f"e({a}, {b})." for a, b in zip(nodes, nodes[1:]))
    p = parse_program(edges + "\npath(x, y) :- e(x, y).\npath(x, z) :- path(x, y), e(y, z).\n")
    model = solve(p)
    paths = {a.args for a in model if a.predicate == "path"}
    assert paths == set(itertools.combinations(nodes, 2))


def test_weak_negation_uses_lower_strata():
    p = parse_program("bird(tweety). bird(pingu). penguin(pingu).\n"
                      "flies(x) :- bird(x), not penguin(x).\n")
    assert {a.args[0] for a in solve(p) if a.predicate == "flies"} == {"tweety"}


def test_strong_negation_blocks_and_conflicts():
    p = parse_program("bird(tweety). -flies(tweety).\nflies(x) :- bird(x), not -flies(x).\n")
    assert Atom("flies", ("tweety",)) not in solve(p)
    bad = parse_program("bird(tweety). -flies(tweety).\nflies(x) :- bird(x).\n")
    with pytest.raises(Inconsistent):
        solve(bad)


def test_negative_cycles_are_rejected():
    p = parse_program("a(kk). p(x) :- a(x), not q(x).\nq(x) :- a(x), not p(x).\n")
    with pytest.raises(NotStratifiable):
        solve(p)


def test_unsafe_rules_are_rejected():
    with pytest.raises(UnsafeRule):
        Rule(Atom("p", (x,)), (Atom("q", (y,)),))
    with pytest.raises(UnsafeRule):
        Rule(Atom("p", (x,)), (Atom("q", (x,)),), (Atom("r", (y,)),))


@pytest.mark.parametrize("text", ["p(a", "p(a) :- .", "p(a) q(b)."])
def test_syntax_errors(text):
    with pytest.raises(RuleSyntaxError):
        parse_program(text)


def test_program_text_round_trip():
    text = export_program(F.defaults_fixture(blocked=True).store)
    prefixes = F.defaults_fixture().store.prefix_map
    again = format_program(parse_program(text, prefixes), prefixes)
    assert again == text


# random positive programs against a naive evaluator --------------------------

CONSTS = ["a", "b", "c", "d"]
PREDS = ["p", "q", "r"]
VARS = [x, y]


def _naive(program: Program) -> set:
    """Apply every rule to every variable assignment until nothing changes."""
    model = set(program.facts)
    while True:
        new = set()
        for rule in program.rules:
            vars_ = sorted({v for a in (rule.head, *rule.body) for v in a.variables}, key=str)
            for values in itertools.product(CONSTS, repeat=len(vars_)):
                b = dict(zip(vars_, values))
                if all(a.substitute(b) in model for a in rule.body):
                    new.add(rule.head.substitute(b))
        if new <= model:
            return model
        model |= new


atom_st = st.builds(lambda p, a, b: Atom(p, (a, b)), st.sampled_from(PREDS),
                    st.sampled_from(CONSTS + VARS), st.sampled_from(CONSTS + VARS))
fact_st = st.builds(lambda p, a, b: Atom(p, (a, b)), st.sampled_from(PREDS),
                    st.sampled_from(CONSTS), st.sampled_from(CONSTS))


@st.composite
def rule_st(draw):
    body = draw(st.lists(atom_st, min_size=1, max_size=2))
    bound = sorted({v for a in body for v in a.variables}, key=str) or CONSTS
    head = Atom(draw(st.sampled_from(PREDS)), (draw(st.sampled_from(bound)), draw(st.sampled_from(bound))))
    return Rule(head, tuple(body))


@settings(max_examples=150, deadline=None)
@given(st.sets(fact_st, max_size=6), st.lists(rule_st(), max_size=4), st.randoms(use_true_random=False))
def test_solve_matches_naive_fixpoint_and_is_order_independent(facts, rules, rnd):
    program = Program(rules, facts)
    model = solve(program)
    assert set(model) == _naive(program)
    shuffled = list(rules)
    rnd.shuffle(shuffled)
    assert solve(Program(shuffled, set(facts))) == model


# defaults -------------------------------------------------------------------

def test_defaults_are_probable_and_traceable():
    f = F.defaults_fixture()
    out = apply_prototypical_defaults(f.store)
    assert [x.modality for x in out] == ["probable", "probable"]
    assert all(x.defeasible and x.premises == (f["prototypical"],) for x in out)
    assert f.store.inference_layer["defaults"] == out


def test_defaults_never_touch_the_data_layer():
    f = F.defaults_fixture()
    before = f.store.content_hash()
    apply_prototypical_defaults(f.store)
    assert f.store.content_hash() == before


def test_universal_knowledge_is_not_reported_as_default():
    f = F.swan_fixture()
    assert apply_prototypical_defaults(f.store) == []
    model = solve(build_program(f.store).program)
    assert Atom(HQ, (f["anton"], F.WHITE)) in model


def test_negated_rule_units_are_ignored():
    f = F.defaults_fixture()
    negate(f.store, f["prototypical"])
    assert apply_prototypical_defaults(f.store) == []


def test_unit_facts_lift_quantified_resources():
    f = F.swan_fixture()
    assert unit_facts(f.store, f["antonWhite"]) == [Atom(HQ, (f["anton"], F.WHITE))]
    assert unit_facts(f.store, f["universal"]) == [Atom(HQ, (F.SWAN, F.WHITE))]
    assert unit_facts(f.store, f["antonIdent"]) == [Atom("instanceOf", (f["anton"], F.SWAN))]


@pytest.mark.parametrize("white,other,holds", [(0, 0, False), (1, 1, False), (2, 1, True), (1, 2, False),
                                                (3, 0, True)])
def test_most_condition_counts(white, other, holds):
    if white == 0:
        f = F.defaults_fixture()  # swans without any colour statement
        sem = MostInstancesSemantics(F.SWAN, None, ((F.obo("RO_0000086"), F.WHITE),))
        check = check_most_condition(sem, f.store)
        assert (check.with_property, check.without_property) == (0, 2)
        return
    f = F.argument_fixture(white=white, other=other)
    sem = semantics_of_rule(f.store, f["prototypical"])
    check = check_most_condition(sem, f.store)
    assert (check.holds, check.with_property, check.without_property) == (holds, white, other)


def test_missing_premise_is_reported():
    f = F.argument_fixture()
    negate(f.store, f["universal"])
    out = {o.unit: o for o in argue(f.store)}
    assert out[f["deduction"]].status == "premise-missing"
    assert out[f["deduction"]].missing == [f["universal"]]


def test_argument_outcomes_serialize():
    f = F.argument_fixture()
    docs = [o.to_dict(f.store.prefix_map) for o in argue(f.store)]
    assert {d["kind"] for d in docs} == {"Deduction", "Induction", "Abduction"}
    assert all(d["unit"].startswith("https://") for d in docs)
