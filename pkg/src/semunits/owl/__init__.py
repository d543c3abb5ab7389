"""Translation of semantic units into OWL axioms."""
from .axioms import (
    AllValuesFrom, AnnotationAssertion, Axiom, ClassAssertion, ComplementOf, DataPropertyAssertion,
    Declaration, DisjointClasses, EquivalentClasses, IntersectionOf, NegativeObjectPropertyAssertion,
    ObjectPropertyAssertion, OneOf, OntologyDocument, QualifiedCardinality, SameIndividual, SomeValuesFrom,
    SubClassOf, render_axiom,
)
from .bridge import (
    PatternRegistry, TranslationPattern, builtin_registry, materialize, pattern_entailment, register_pattern,
    translate_cardinality, translate_negation, translate_store, translate_unit,
)

__all__ = [
    "noqa",
    "F401",
    "AllValuesFrom",
    "AnnotationAssertion",
    "Axiom",
    "ClassAssertion",
    "ComplementOf",
    "DataPropertyAssertion",
    "Declaration",
    "DisjointClasses",
    "EquivalentClasses",
    "IntersectionOf",
    "NegativeObjectPropertyAssertion",
    "ObjectPropertyAssertion",
    "OneOf",
    "OntologyDocument",
    "QualifiedCardinality",
    "SameIndividual",
    "SomeValuesFrom",
    "SubClassOf",
    "render_axiom",
    "noqa",
    "F401",
    "PatternRegistry",
    "TranslationPattern",
    "builtin_registry",
    "materialize",
    "pattern_entailment",
    "register_pattern",
    "translate_cardinality",
    "translate_negation",
    "translate_store",
    "translate_unit",
]
