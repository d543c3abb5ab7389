"""Structural checks behind ``semunits validate``.

One check per minimal structural requirement: partitionability, GUPRI
assignment, composable referencing, retrievability and typed instantiation.
"""
from __future__ import annotations

from . import vocab as V
from .errors import CycleDetected, UnknownUnit
from .resources import identification_coverage
from .store import LayeredStore


def _partition(store):
    report = store.verify_partition()
    d = report.to_dict()
    return [{"check": k, "items": v} for k, v in d.items() if v]


def _gupris(store):
    problems = []
    for u in store.units():
        if u.is_statement and u.gupri not in store._data:
            problems.append({"unit": str(u.gupri), "problem": "statement unit without data graph"})
        if not u.kinds:
            problems.append({"unit": str(u.gupri), "problem": "unit record without kinds"})
    return problems


def _referencing(store):
    problems = []
    for u in store.units():
        for _, m in u.associated_units:
            if not store.has_unit(m) and m not in store.questions:
                problems.append({"unit": str(u.gupri), "problem": f"dangling association to {m}"})
        if not u.is_statement and store._data.get(u.gupri):
            problems.append({"unit": str(u.gupri), "problem": "compound unit owns data triples"})
    return problems


def _retrievable(store):
    problems = []
    for u in store.units():
        try:
            store.merged_data_graph([u.gupri])
        except (CycleDetected, UnknownUnit) as exc:
            problems.append({"unit": str(u.gupri), "problem": exc.code})
    return problems


def _typed(store):
    problems = [{"resource": str(r), "problem": "no identification unit"} for r in identification_coverage(store)]
    for u in store.statement_units():
        if V.STATEMENT_UNIT not in u.kinds:
            problems.append({"unit": str(u.gupri), "problem": "statement unit lacks the statement-unit kind"})
    return problems


CHECKS = (
    ("partitionability", _partition),
    ("gupri_assignment", _gupris),
    ("composable_referencing", _referencing),
    ("retrievability", _retrievable),
    ("typed_instantiation", _typed),
)


def structural_report(store: LayeredStore) -> dict:
    checks = {name: fn(store) for name, fn in CHECKS}
    return {"valid": not any(checks.values()), "checks": checks}
