"""Dynamic labels and mind-map graphs.

Label templates use ``{role}`` placeholders with optional modifiers:

``{role}``         label of the resource, or the lexical form of a literal
``{role:class}``   label of the resource's class
``{role:noun}``    resource label without its quantifier ("some antenna" -> "antenna")
``{role:plural}``  the noun with a plural ending ("every swan" -> "swans")
``{¬}``            " not" when the unit is negated, nothing otherwise
``[ ... ]``        optional segment, dropped when a placeholder inside it has no value
"""
from __future__ import annotations

import re

from . import vocab as V
from .discourse import argument_view, conditional_view
from .errors import MissingTemplate
from .modifiers import boolean_parts
from .query import Fixed, QuestionUnit, Range, TypedVariable
from .schemas import SchemaTemplate
from .statements import get_schema, schema_of, slots_of, unit_category
from .store import LayeredStore, SemanticUnit
from .terms import Iri, Literal

QUANTIFIERS = ("some ", "most ", "every ", "all ", "a ", "an ")
NEGATION_INSERT = "{¬}"
_PLACEHOLDER = re.compile(r"\{([A-Za-z_][\w-]*)(?::(class|noun|plural))?\}")
_WITH_ARTICLE = re.compile(r"(?:\b(a) )?\{([A-Za-z_][\w-]*)(?::(class|noun|plural))?\}")
_OPTIONAL = re.compile(r"\[([^\[\]]*)\]")


def _noun(text: str) -> str:
    for q in QUANTIFIERS:
        if text.lower().startswith(q):
            return text[len(q):]
    return text


def _plural(text: str) -> str:
    noun = _noun(text)
    return noun if noun.endswith("s") else noun + "s"


class _Values:
    """Resolves placeholders against slot values (statement units or questions)."""

    def __init__(self, store: LayeredStore, values: dict):
        self.store = store
        self.values = values

    def text(self, role: str, mod: str | None) -> str | None:
        if role not in self.values:
            return None
        v = self.values[role]
        store = self.store
        if isinstance(v, Range):
            return _range_text(v)
        if isinstance(v, TypedVariable):
            base = store.label(v.target_class)
            return _plural(base) if mod == "plural" else base
        if isinstance(v, Fixed):
            v = v.value
        if isinstance(v, Literal):
            return v.lexical
        if store.has_unit(v):
            return dynamic_label(store, v)
        if mod == "class":
            cls = store.class_of(v)
            return store.label(cls if cls is not None else v)
        text = store.label(v)
        if mod == "noun":
            return _noun(text)
        if mod == "plural":
            return _plural(text)
        return text


def _range_text(r: Range) -> str:
    if r.min is not None and r.max is not None:
        return f"{r.min} to {r.max}"
    if r.min is not None:
        return f"at least {r.min}"
    if r.max is not None:
        return f"at most {r.max}"
    return "any value"


def fill(template: str, resolve, negated: bool = False) -> str:
    """Fill ``template`` using ``resolve(role, modifier) -> str | None``."""
    def segment(m):
        inner = m.group(1)
        for ph in _PLACEHOLDER.finditer(inner):
            if resolve(ph.group(1), ph.group(2)) is None:
                return ""
        return inner

    text = _OPTIONAL.sub(segment, template)

    def sub(m):
        value = resolve(m.group(2), m.group(3))
        if value is None:
            raise MissingTemplate(f"no value for placeholder {m.group(0)}")
        if m.group(1):
            # "a {x}" becomes "an {x}" before a vowel
            return ("an " if value[:1].lower() in ("a", "e", "i", "o", "u") else "a ") + value
        return value

    text = _WITH_ARTICLE.sub(sub, text)
    return text.replace(NEGATION_INSERT, " not" if negated else "")


def _template(schema: SchemaTemplate, keys) -> str:
    for k in keys:
        if k in schema.label_templates:
            return schema.label_templates[k]
    raise MissingTemplate(f"schema {schema.name} has no label template for {', '.join(keys)}")


def _statement_label(store: LayeredStore, unit: SemanticUnit) -> str:
    schema = schema_of(store, unit)
    if schema is None:
        raise MissingTemplate(f"unit {unit.gupri} has no schema")
    values = slots_of(store, unit.gupri)
    if values is None:
        raise MissingTemplate(f"data graph of {unit.gupri} does not match schema {schema.name}")
    negated = V.NEGATION_UNIT in unit.kinds
    cat = unit_category(unit)
    keys = []
    if negated:
        keys.append("negated")
    if cat is not None:
        keys.append(cat.value)
    keys.append("default")
    template = _template(schema, keys)
    if negated and template is schema.label_templates.get("default") and NEGATION_INSERT not in template:
        raise MissingTemplate(f"schema {schema.name} has no negated label")
    return fill(template, _Values(store, values).text, negated)


def _capitalize(text: str) -> str:
    return text[:1].upper() + text[1:]


ARGUMENT_PHRASES = {"Deduction": "necessarily", "Induction": "probably", "Abduction": "possibly"}

COMPOUND_NAMES = (
    (V.SUFFICIENT_UNIVERSAL_ITEM_GROUP_UNIT, "sufficient universal item group"),
    (V.UNIVERSAL_ITEM_GROUP_UNIT, "universal item group"),
    (V.ITEM_GROUP_UNIT, "item group"),
    (V.SUFFICIENT_UNIVERSAL_ITEM_UNIT, "sufficient universal item"),
    (V.ITEM_UNIT, "item"),
    (V.CLASS_PROFILE_UNIT, "class profile"),
    (V.STANDARD_INFO_UNIT, "standard information"),
    (V.CONTEXTUAL_UNIT, "context"),
    (V.GRANULARITY_TREE_UNIT, "granularity tree"),
)


def _compound_label(store, unit) -> str:
    name = next((n for k, n in COMPOUND_NAMES if k in unit.kinds), "compound unit")
    anchor = unit.anchor or unit.subject
    n = len(unit.associated_units)
    about = f" of {store.label(anchor)}" if anchor is not None else ""
    return f"{name}{about} ({n} unit{'s' if n != 1 else ''})"


def question_label(store: LayeredStore, q: QuestionUnit) -> str:
    if q.boolean_tree is not None:
        op, operands = q.boolean_tree
        return _boolean_text(op.value, [question_label(store, o) for o in operands])
    schema = get_schema(store, q.source_schema)
    roles = ",".join(sorted(q.variable_roles))
    keys = [f"{q.category.value}:{roles}", roles]
    for k in keys:
        if k in schema.question_templates:
            return fill(schema.question_templates[k], _Values(store, q.slot_map).text)
    raise MissingTemplate(f"schema {schema.name} has no question template for {keys[0]!r}")


def _boolean_text(op: str, parts: list[str]) -> str:
    if op == "NOT":
        return f"NOT ({parts[0]})"
    return f" {op} ".join(f"({p})" for p in parts)


def dynamic_label(store: LayeredStore, g) -> str:
    """Human-readable text for a unit or question."""
    if isinstance(g, QuestionUnit):
        return question_label(store, g)
    g = Iri(g)
    if g in store.questions:
        q = store.questions[g]
        if isinstance(q, QuestionUnit):
            return question_label(store, q)
        op, operands = boolean_parts(q)
        return _boolean_text(op.value, [dynamic_label(store, o) for o in operands])
    unit = store.unit(g)
    if V.BOOLEAN_UNIT in unit.kinds:
        op, operands = boolean_parts(unit)
        return _boolean_text(op.value, [dynamic_label(store, o) for o in operands])
    if not unit.is_statement:
        return _compound_label(store, unit)
    arg = argument_view(store, g)
    if arg is not None:
        premises = " and ".join(dynamic_label(store, p) for p in arg.premises)
        return f"If {premises}, then {ARGUMENT_PHRASES[arg.kind.value]} {dynamic_label(store, arg.conclusion)}"
    cond = conditional_view(store, g)
    if cond is not None:
        return f"If {dynamic_label(store, cond.if_clause)} then {dynamic_label(store, cond.then_clause)}"
    if V.DIRECTIVE_UNIT in unit.kinds:
        schema = schema_of(store, unit)
        if schema is not None and "directive" in schema.label_templates:
            return fill(schema.label_templates["directive"], _Values(store, slots_of(store, g) or {}).text)
        return f"Make: {_capitalize(_statement_label(store, unit))}!"
    return _statement_label(store, unit)


# mind maps ----------------------------------------------------------------

def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


class _Dot:
    def __init__(self, store):
        self.store = store
        self.nodes: dict = {}  # term key -> (id, label, is_literal)
        self.lines: list = []
        self.clusters = 0

    def node(self, term) -> str:
        key = (type(term).__name__, str(term), getattr(term, "lexical", ""))
        if key not in self.nodes:
            if isinstance(term, Literal):
                label, literal = term.lexical, True
            elif self.store.has_unit(term):
                label, literal = dynamic_label(self.store, term), False
            else:
                label, literal = self.store.label(term), False
            self.nodes[key] = (f"n{len(self.nodes)}", label, literal)
        return self.nodes[key][0]

    def statement(self, unit: SemanticUnit, indent: str):
        schema = schema_of(self.store, unit)
        values = slots_of(self.store, unit.gupri) if schema is not None else None
        if schema is None or values is None or not schema.map_template:
            if unit.associated_units:
                self.compound(unit, indent)
                return
            raise MissingTemplate(f"unit {unit.gupri} has no mind-map template")
        style = ", style=dashed" if V.NEGATION_UNIT in unit.kinds else ""
        for src, label, dst in schema.map_template:
            if src not in values or dst not in values:
                continue
            a, b = self.node(values[src]), self.node(values[dst])
            self.lines.append(f'{indent}{a} -> {b} [label="{_esc(label)}"{style}];')

    def compound(self, unit: SemanticUnit, indent: str):
        for role, member in unit.associated_units:
            sub = self.store.unit(member)
            cluster = f"cluster_{self.clusters}"
            self.clusters += 1
            self.lines.append(f"{indent}subgraph {cluster} {{")
            self.lines.append(f'{indent}  label="{_esc(dynamic_label(self.store, member))}";')
            if sub.is_statement:
                self.statement(sub, indent + "  ")
            else:
                self.compound(sub, indent + "  ")
            self.lines.append(f"{indent}}}")

    def render(self, g: Iri) -> str:
        unit = self.store.unit(g)
        if unit.is_statement:
            self.statement(unit, "  ")
        else:
            self.compound(unit, "  ")
        head = [f'digraph "{_esc(str(g))}" {{', "  rankdir=LR;", "  node [shape=box];"]
        for nid, label, literal in self.nodes.values():
            shape = ", shape=ellipse" if literal else ""
            head.append(f'  {nid} [label="{_esc(label)}"{shape}];')
        return "\n".join(head + self.lines + ["}"]) + "\n"


def dynamic_mind_map(store: LayeredStore, g: Iri) -> str:
    """DOT text for a unit. Compound units draw each member as a cluster."""
    return _Dot(store).render(Iri(g))
