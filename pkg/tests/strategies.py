"""Hypothesis strategies and brute-force oracles shared by the test modules."""
from __future__ import annotations

from decimal import Decimal

from hypothesis import strategies as st

from semunits import fixtures as F
from semunits.query import Fixed, QuestionUnit, Range, TypedVariable
from semunits.resources import ResourceCategory as RC
from semunits.resources import create_class_identification_unit, identify
from semunits.statements import create_statement_unit
from semunits.store import LayeredStore
from semunits.terms import decimal

weights = st.decimals(min_value=0, max_value=500, places=2, allow_nan=False, allow_infinity=False)


@st.composite
def weight_store(draw, max_units: int = 10):
    """A store of 1..max_units weight statements plus leaf questions with their oracle answers.

    Returns ``(store, universe, questions)``. ``questions`` holds
    ``(QuestionUnit, oracle)`` pairs, all of one mode: the oracle is a bool for
    yes/no questions and a set of ``(subject, value)`` pairs otherwise.
    """
    s = LayeredStore()
    for cls in (F.APPLE, F.GRAM):
        create_class_identification_unit(s, cls, F.CLASS_LABELS[cls])
    gram = identify(s, "gram X", RC.NAMED_INDIVIDUAL, F.GRAM)
    values = draw(st.lists(weights, min_size=1, max_size=max_units))
    apples = []
    schema = None
    for i, v in enumerate(values):
        apple = identify(s, f"apple {i}", RC.NAMED_INDIVIDUAL, F.APPLE)
        u = create_statement_unit(s, "weight", apple, {"unit": gram, "value": decimal(str(v))})
        schema = u.metadata.schema_id
        apples.append(apple.iri)
    universe = {(a, decimal(str(v))) for a, v in zip(apples, values)}

    def q(subject, value):
        return QuestionUnit(schema, tuple(sorted({"subject": subject, "unit": Fixed(gram.iri),
                                                  "value": value}.items())))

    questions = []
    if draw(st.booleans()):
        for _ in range(draw(st.integers(1, 4))):
            lo, hi = sorted(draw(st.tuples(weights, weights)))
            oracle = {(a, v) for a, v in universe if lo <= Decimal(str(v.value)) <= hi}
            questions.append((q(TypedVariable(F.APPLE), Range(min=lo, max=hi)), oracle))
    else:
        for _ in range(draw(st.integers(1, 4))):
            a = draw(st.sampled_from(apples))
            v = draw(st.one_of(st.sampled_from(values), weights))
            lit = decimal(str(v))
            questions.append((q(Fixed(a), Fixed(lit)), (a, lit) in universe))
    return s, universe, questions


def brute_force(op: str, oracles: list, universe: set):
    """Reference semantics of the Boolean combinators, by plain set arithmetic."""
    if isinstance(oracles[0], bool):
        if op == "AND":
            return all(oracles)
        if op == "OR":
            return any(oracles)
        if op == "XOR":
            return sum(oracles) % 2 == 1
        if op == "NOT":
            return not oracles[0]
        return oracles[0] == oracles[1]
    if op == "AND":
        return set.intersection(*oracles)
    if op == "OR":
        return set.union(*oracles)
    if op == "XOR":
        return {r for r in universe if sum(r in o for o in oracles) % 2 == 1}
    if op == "NOT":
        return universe - oracles[0]
    return {r for r in universe if (r in oracles[0]) == (r in oracles[1])}
