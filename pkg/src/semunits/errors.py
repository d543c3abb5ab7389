"""Exception hierarchy.

Every error raised by the library derives from ``SemUnitError`` so callers
(and the CLI) can catch one type and report a machine-readable code.
"""


class SemUnitError(Exception):
    code = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_dict(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        for key, value in sorted(self.details.items()):
            out[key] = value if isinstance(value, (int, float, bool)) or value is None else _jsonable(value)
        return out


def _jsonable(value):
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


def _make(name: str, code: str, base=SemUnitError):
    return type(name, (base,), {"code": code})


# terms
InvalidIri = _make("InvalidIri", "invalid-iri")
InvalidLiteral = _make("InvalidLiteral", "invalid-literal")

# store
PartitionViolation = _make("PartitionViolation", "partition-violation")
UnknownUnit = _make("UnknownUnit", "unknown-unit")
CycleDetected = _make("CycleDetected", "cycle-detected")
UnitReferenced = _make("UnitReferenced", "unit-referenced")
DuplicateUnit = _make("DuplicateUnit", "duplicate-unit")
InvalidStore = _make("InvalidStore", "invalid-store")

# resources and statements
MissingTargetClass = _make("MissingTargetClass", "missing-target-class")
DuplicateIdentification = _make("DuplicateIdentification", "duplicate-identification")
SlotMismatch = _make("SlotMismatch", "slot-mismatch")
SubjectCategoryConflict = _make("SubjectCategoryConflict", "subject-category-conflict")
CertaintyOutOfRange = _make("CertaintyOutOfRange", "certainty-out-of-range")
InvalidSchema = _make("InvalidSchema", "invalid-schema")
UnknownSchema = _make("UnknownSchema", "unknown-schema")

# compound units
PreconditionError = _make("PreconditionError", "precondition")
NoStatements = _make("NoStatements", "no-statements", PreconditionError)
Disconnected = _make("Disconnected", "disconnected")
MissingMandatory = _make("MissingMandatory", "missing-mandatory")
UnknownProfile = _make("UnknownProfile", "unknown-profile")
InvalidInterval = _make("InvalidInterval", "invalid-interval")
InvalidCoordinates = _make("InvalidCoordinates", "invalid-coordinates")
InvalidPosition = _make("InvalidPosition", "invalid-position")

# modifiers
NotAStatementUnit = _make("NotAStatementUnit", "not-a-statement-unit")
NotSomeInstanceUnit = _make("NotSomeInstanceUnit", "not-some-instance-unit")
InvalidSpec = _make("InvalidSpec", "invalid-spec")
ArityViolation = _make("ArityViolation", "arity-violation")
ModifierConflict = _make("ModifierConflict", "modifier-conflict")

# discourse
IfClauseNotAssertional = _make("IfClauseNotAssertional", "if-clause-not-assertional")
ClauseTypeViolation = _make("ClauseTypeViolation", "clause-type-violation")
MissingBoldness = _make("MissingBoldness", "missing-boldness")
UnsupportedCategory = _make("UnsupportedCategory", "unsupported-category")

# queries
UnknownRole = _make("UnknownRole", "unknown-role")
SlotTypeMismatch = _make("SlotTypeMismatch", "slot-type-mismatch")
UnsatisfiableRange = _make("UnsatisfiableRange", "unsatisfiable-range")
MixedModes = _make("MixedModes", "mixed-modes")

# owl bridge
UnboundVariable = _make("UnboundVariable", "unbound-variable")
NotNegated = _make("NotNegated", "not-negated")
UnsupportedNegation = _make("UnsupportedNegation", "unsupported-negation")
RangeFormNotTranslatable = _make("RangeFormNotTranslatable", "range-form-not-translatable")
TooManyVariables = _make("TooManyVariables", "too-many-variables")

# reasoner
NotStratifiable = _make("NotStratifiable", "not-stratifiable")
Inconsistent = _make("Inconsistent", "inconsistent")
UnsafeRule = _make("UnsafeRule", "unsafe-rule")
RuleSyntaxError = _make("RuleSyntaxError", "rule-syntax")

# render
MissingTemplate = _make("MissingTemplate", "missing-template")

# io
UnknownFixture = _make("UnknownFixture", "unknown-fixture")


class ParseError(SemUnitError):
    code = "parse-error"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}", line=line, column=column)
        self.line = line
        self.column = column


class BlankNodeRejected(ParseError):
    code = "blank-node-rejected"
