"""Fixed vocabulary: namespaces, unit kinds, marker classes and unit-level predicates.

These IRIs are part of the exchange format and must stay bit-exact.
"""
from __future__ import annotations

from .terms import Iri

SEMUNIT = "https://w3id.org/semunit/"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
DCTERMS_NS = "http://purl.org/dc/terms/"
OBO = "http://purl.obolibrary.org/obo/"
WGS84 = "http://www.w3.org/2003/01/geo/wgs84_pos#"

DEFAULT_PREFIXES = {
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "owl": OWL_NS,
    "xsd": XSD_NS,
    "dcterms": DCTERMS_NS,
    "semunit": SEMUNIT,
    "obo": OBO,
    "geo": WGS84,
}


def su(local: str) -> Iri:
    return Iri(SEMUNIT + local)


RDF_TYPE = Iri(RDF_NS + "type")
RDFS_LABEL = Iri(RDFS_NS + "label")
RDFS_SUBCLASS_OF = Iri(RDFS_NS + "subClassOf")
RDFS_IS_DEFINED_BY = Iri(RDFS_NS + "isDefinedBy")
OWL_CLASS = Iri(OWL_NS + "Class")
OWL_NAMED_INDIVIDUAL = Iri(OWL_NS + "NamedIndividual")
OWL_EQUIVALENT_CLASS = Iri(OWL_NS + "equivalentClass")
OWL_DISJOINT_WITH = Iri(OWL_NS + "disjointWith")
OWL_SAME_AS = Iri(OWL_NS + "sameAs")
OWL_QUALIFIED_CARDINALITY = Iri(OWL_NS + "qualifiedCardinality")
OWL_MIN_QUALIFIED_CARDINALITY = Iri(OWL_NS + "minQualifiedCardinality")
OWL_MAX_QUALIFIED_CARDINALITY = Iri(OWL_NS + "maxQualifiedCardinality")
OWL_VERSION_INFO = Iri(OWL_NS + "versionInfo")
OWL_VERSION_IRI = Iri(OWL_NS + "versionIRI")
DC_IDENTIFIER = Iri(DCTERMS_NS + "identifier")
DC_CREATOR = Iri(DCTERMS_NS + "creator")
DC_CREATED = Iri(DCTERMS_NS + "created")
DC_LICENSE = Iri(DCTERMS_NS + "license")
DC_SOURCE = Iri(DCTERMS_NS + "source")
DC_CONTRIBUTOR = Iri(DCTERMS_NS + "contributor")

# OBO relations used by built-in schemas and translation patterns
HAS_QUALITY = Iri(OBO + "RO_0000086")
HAS_PART = Iri(OBO + "BFO_0000051")
PART_OF = Iri(OBO + "BFO_0000050")
INHERES_IN = Iri(OBO + "RO_0000052")
MEMBER_OF = Iri(OBO + "RO_0002350")
HAS_MEMBER = Iri(OBO + "RO_0002351")
HAS_MEASUREMENT_UNIT = Iri(OBO + "IAO_0000039")
HAS_VALUE = Iri(OBO + "OBI_0001937")
WEIGHT = Iri(OBO + "PATO_0000128")
INCREASED_RELATIVE_TO = Iri(OBO + "pato#increased_in_magnitude_relative_to")
COUNT_UNIT = Iri(OBO + "UO_0000189")
PERCENT = Iri(OBO + "UO_0000187")
COLLECTION = su("Collection")

# resource marker classes
SOME_INSTANCE_RESOURCE = su("some-instance-resource")
MOST_INSTANCES_RESOURCE = su("most-instances-resource")
EVERY_INSTANCE_RESOURCE = su("every-instance-resource")
ALL_INSTANCES_RESOURCE = su("all-instances-resource")

# units layer predicates
HAS_SUBJECT = su("has-semantic-unit-subject")
HAS_ASSOCIATED = su("has-associated-semantic-unit")
HAS_IF_CLAUSE = su("has-if-clause")
HAS_THEN_CLAUSE = su("has-then-clause")
HAS_CASE_CLAUSE = su("has-case-clause")
HAS_RULE_CLAUSE = su("has-rule-clause")
HAS_RESULT_CLAUSE = su("has-result-clause")
HAS_OPERAND = su("has-operand")
HAS_MANDATORY_MEMBER = su("has-mandatory-member")
HAS_OPTIONAL_MEMBER = su("has-optional-member")
HAS_CORE_UNIT = su("has-core-unit")
HAS_INDEX_UNIT = su("has-index-unit")
DESCRIBES = su("describes")
HAS_STANDARD_INFO = su("has-associated-standard-information-unit")
HAS_SCHEMA = su("has-semantic-graph-schema")
HAS_LOGIC_FRAMEWORK = su("has-logic-framework")
HAS_CERTAINTY = su("has-certainty")
HAS_AUTHOR = su("has-content-author")
HAS_EXTRACTION_METHOD = su("has-extraction-method")

ASSOCIATION_ROLES = frozenset({
    HAS_ASSOCIATED, HAS_IF_CLAUSE, HAS_THEN_CLAUSE, HAS_CASE_CLAUSE, HAS_RULE_CLAUSE,
    HAS_RESULT_CLAUSE, HAS_OPERAND, HAS_MANDATORY_MEMBER, HAS_OPTIONAL_MEMBER,
    HAS_CORE_UNIT, HAS_INDEX_UNIT,
})
METADATA_PREDICATES = frozenset({
    HAS_SCHEMA, HAS_LOGIC_FRAMEWORK, HAS_CERTAINTY, HAS_AUTHOR, HAS_EXTRACTION_METHOD,
    DC_CREATOR, DC_CREATED, DC_LICENSE, DC_SOURCE, OWL_VERSION_INFO,
})

# attribute predicates for scalar unit annotations
HAS_BOLDNESS = su("has-boldness")
IS_HYPOTHESIS = su("is-hypothesis")
HAS_MODALITY = su("has-modality")
HAS_OPERATOR = su("has-boolean-operator")
HAS_PROFILE = su("has-information-profile")
HAS_STANCE = su("has-stance")

# data-layer predicates of discourse units
IS_IF_OF_THEN = su("is-if-of-then")
ASSERTS = su("asserts")
NEGATES = su("negates")
IS_AGNOSTIC_ABOUT = su("is-agnostic-about")

# unit kinds
SEMANTIC_UNIT = su("semantic-unit")
STATEMENT_UNIT = su("statement-unit")
COMPOUND_UNIT = su("compound-unit")
COMPLEX_STATEMENT_UNIT = su("complex-statement-unit")

ASSERTIONAL_UNIT = su("assertional-statement-unit")
CONTINGENT_UNIT = su("contingent-statement-unit")
PROTOTYPICAL_UNIT = su("prototypical-statement-unit")
UNIVERSAL_UNIT = su("universal-statement-unit")
LEXICAL_UNIT = su("lexical-statement-unit")
CATEGORY_KINDS = (ASSERTIONAL_UNIT, CONTINGENT_UNIT, PROTOTYPICAL_UNIT, UNIVERSAL_UNIT, LEXICAL_UNIT)

IDENTIFICATION_UNIT = su("identification-unit")
NAMED_INDIVIDUAL_IDENT = su("named-individual-identification-unit")
SOME_INSTANCE_IDENT = su("some-instance-identification-unit")
MOST_INSTANCES_IDENT = su("most-instances-identification-unit")
EVERY_INSTANCE_IDENT = su("every-instance-identification-unit")
ALL_INSTANCES_IDENT = su("all-instances-identification-unit")
CLASS_IDENT = su("class-identification-unit")

NEGATION_UNIT = su("negation-unit")
CARDINALITY_UNIT = su("cardinality-restriction-unit")
BOOLEAN_UNIT = su("boolean-unit")

ITEM_UNIT = su("item-unit")
ITEM_GROUP_UNIT = su("item-group-unit")
CLASS_PROFILE_UNIT = su("class-profile-unit")
STANDARD_INFO_UNIT = su("standard-information-unit")
CONTEXTUAL_UNIT = su("contextual-unit")
TIME_INDEXED_UNIT = su("time-indexed-unit")
GEO_INDEXED_UNIT = su("geo-indexed-unit")
TIME_ORDERED_UNIT = su("time-ordered-unit")
SUFFICIENT_UNIVERSAL_ITEM_UNIT = su("sufficient-universal-item-unit")
UNIVERSAL_ITEM_GROUP_UNIT = su("universal-item-group-unit")
SUFFICIENT_UNIVERSAL_ITEM_GROUP_UNIT = su("sufficient-universal-item-group-unit")
GRANULARITY_TREE_UNIT = su("granularity-tree-unit")

TIME_INDEX_UNIT = su("time-index-statement-unit")
GEO_INDEX_UNIT = su("geo-index-statement-unit")
TIME_ORDER_UNIT = su("time-order-statement-unit")

EPISTEMIC_UNIT = su("epistemic-unit")
REFERENTIAL_EPISTEMIC_UNIT = su("referential-epistemic-unit")
DIRECTIVE_UNIT = su("directive-unit")
CONDITIONAL_UNIT = su("conditional-unit")
DIRECTIVE_CONDITIONAL_UNIT = su("directive-conditional-unit")
LOGICAL_ARGUMENT_UNIT = su("logical-argument-unit")
DEDUCTION_UNIT = su("deduction-unit")
INDUCTION_UNIT = su("induction-unit")
ABDUCTION_UNIT = su("abduction-unit")
QUESTION_UNIT = su("question-unit")

# parent of every kind, used for stats and kind-based retrieval
TAXONOMY: dict[Iri, Iri | None] = {
    SEMANTIC_UNIT: None,
    STATEMENT_UNIT: SEMANTIC_UNIT,
    COMPOUND_UNIT: SEMANTIC_UNIT,
    COMPLEX_STATEMENT_UNIT: STATEMENT_UNIT,
    IDENTIFICATION_UNIT: LEXICAL_UNIT,
    NEGATION_UNIT: STATEMENT_UNIT,
    CARDINALITY_UNIT: STATEMENT_UNIT,
    BOOLEAN_UNIT: SEMANTIC_UNIT,
    QUESTION_UNIT: SEMANTIC_UNIT,
    EPISTEMIC_UNIT: COMPLEX_STATEMENT_UNIT,
    REFERENTIAL_EPISTEMIC_UNIT: EPISTEMIC_UNIT,
    DIRECTIVE_UNIT: STATEMENT_UNIT,
    CONDITIONAL_UNIT: COMPLEX_STATEMENT_UNIT,
    DIRECTIVE_CONDITIONAL_UNIT: CONDITIONAL_UNIT,
    LOGICAL_ARGUMENT_UNIT: CONDITIONAL_UNIT,
    DEDUCTION_UNIT: LOGICAL_ARGUMENT_UNIT,
    INDUCTION_UNIT: LOGICAL_ARGUMENT_UNIT,
    ABDUCTION_UNIT: LOGICAL_ARGUMENT_UNIT,
    ITEM_UNIT: COMPOUND_UNIT,
    ITEM_GROUP_UNIT: COMPOUND_UNIT,
    UNIVERSAL_ITEM_GROUP_UNIT: ITEM_GROUP_UNIT,
    SUFFICIENT_UNIVERSAL_ITEM_GROUP_UNIT: UNIVERSAL_ITEM_GROUP_UNIT,
    SUFFICIENT_UNIVERSAL_ITEM_UNIT: ITEM_UNIT,
    CLASS_PROFILE_UNIT: COMPOUND_UNIT,
    STANDARD_INFO_UNIT: COMPOUND_UNIT,
    CONTEXTUAL_UNIT: COMPOUND_UNIT,
    TIME_INDEXED_UNIT: CONTEXTUAL_UNIT,
    GEO_INDEXED_UNIT: CONTEXTUAL_UNIT,
    TIME_ORDERED_UNIT: CONTEXTUAL_UNIT,
    GRANULARITY_TREE_UNIT: COMPOUND_UNIT,
    TIME_INDEX_UNIT: STATEMENT_UNIT,
    GEO_INDEX_UNIT: STATEMENT_UNIT,
    TIME_ORDER_UNIT: STATEMENT_UNIT,
}
for _k in CATEGORY_KINDS:
    TAXONOMY[_k] = STATEMENT_UNIT
for _k in (NAMED_INDIVIDUAL_IDENT, SOME_INSTANCE_IDENT, MOST_INSTANCES_IDENT,
           EVERY_INSTANCE_IDENT, ALL_INSTANCES_IDENT, CLASS_IDENT):
    TAXONOMY[_k] = IDENTIFICATION_UNIT

_CATEGORY_WORDS = ("assertional", "contingent", "prototypical", "universal")
for _w in _CATEGORY_WORDS:
    TAXONOMY[su(f"{_w}-item-unit")] = ITEM_UNIT
    TAXONOMY[su(f"{_w}-directive-unit")] = DIRECTIVE_UNIT
TAXONOMY[su("all-instances-item-unit")] = ITEM_UNIT
for _w in ("positive", "negative", "agnostic"):
    TAXONOMY[su(f"{_w}-epistemic-unit")] = EPISTEMIC_UNIT
    TAXONOMY[su(f"{_w}-referential-epistemic-unit")] = REFERENTIAL_EPISTEMIC_UNIT
for _op in ("and", "or", "xor", "not", "equal"):
    TAXONOMY[su(f"boolean-{_op}-unit")] = BOOLEAN_UNIT


def ancestors(kind: Iri) -> list[Iri]:
    out = []
    cur = TAXONOMY.get(kind)
    while cur is not None and cur not in out:
        out.append(cur)
        cur = TAXONOMY.get(cur)
    return out


def is_unit_kind(iri: str) -> bool:
    return iri.startswith(SEMUNIT) and (Iri(iri) in TAXONOMY or iri.endswith("-unit"))
