"""Canonical TriG export and a parser for the blank-node-free TriG subset.

Layout of an exported document::

    @prefix ... .            sorted by prefix name

    <units-layer triples>    default graph, sorted

    <gupri> {                one block per statement unit, sorted by gupri
      <data triples>
    }

Every statement is written on its own line with full subject and predicate,
so the output is canonical: the same store always yields the same bytes.
"""
from __future__ import annotations

import re
from graphlib import CycleError, TopologicalSorter

from .. import vocab as V
from ..errors import (
    BlankNodeRejected, CycleDetected, InvalidStore, ParseError, PartitionViolation, UnknownUnit,
)
from ..resources import MARKER_CATEGORY, ResourceCategory, TypedResource, category_from_types
from ..store import LayeredStore, is_units_layer_triple, unit_from_triples
from ..terms import Iri, Literal, Triple, XSDType, compact, triple_key

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t", "'": "'", "b": "\b", "f": "\f"}


# writing ------------------------------------------------------------------

def _iri(term: str, prefixes: dict) -> str:
    short = compact(term, prefixes)
    return short if short != term else f"<{term}>"


def _literal(lit: Literal, prefixes: dict) -> str:
    text = '"' + "".join(_ESCAPES.get(c, c) for c in lit.lexical) + '"'
    if lit.language:
        return f"{text}@{lit.language}"
    if lit.datatype == XSDType.string:
        return text
    return f"{text}^^{_iri(lit.datatype, prefixes)}"


def format_term(term, prefixes: dict) -> str:
    return _literal(term, prefixes) if isinstance(term, Literal) else _iri(term, prefixes)


def _line(t: Triple, prefixes: dict) -> str:
    p = "a" if t.predicate == V.RDF_TYPE else _iri(t.predicate, prefixes)
    return f"{_iri(t.subject, prefixes)} {p} {format_term(t.object, prefixes)} ."


def export_trig(store: LayeredStore) -> str:
    report = store.verify_partition()
    if not report.empty:
        raise InvalidStore("store violates the partition invariant", report=report.to_dict())
    prefixes = dict(store.prefix_map)
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in sorted(prefixes.items())]
    default = sorted(store.units_layer(), key=triple_key)
    if default:
        lines.append("")
        lines += [_line(t, prefixes) for t in default]
    for unit in store.statement_units():
        lines.append("")
        triples = sorted(store.data_graph(unit.gupri), key=triple_key)
        if not triples:
            lines.append(f"{_iri(unit.gupri, prefixes)} {{ }}")
            continue
        lines.append(f"{_iri(unit.gupri, prefixes)} {{")
        lines += ["  " + _line(t, prefixes) for t in triples]
        lines.append("}")
    return "\n".join(lines) + "\n"


# reading ------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<iri><[^<>"{}|^`\\\s]*>)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<blank>_:[^\s;,.{}()\[\]]*|\[)
  | (?P<number>[+-]?(?:\d+\.\d+|\d+|\.\d+)(?![\w:]))
  | (?P<datatype>\^\^)
  | (?P<lang>@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*)
  | (?P<punct>[{}.;,])
  | (?P<name>[A-Za-z_][\w.\-]*?:[\w\-.%]*[\w\-%]|[A-Za-z_][\w.\-]*?:|[A-Za-z][\w\-]*)
""", re.VERBOSE)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text: str) -> list[_Tok]:
    out, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "blank":
            raise BlankNodeRejected("blank nodes are not allowed", line, col)
        if kind != "ws":
            out.append(_Tok(kind, m.group(), line, col))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    out.append(_Tok("eof", "", line, len(text) - start + 1))
    return out


def _unescape(body: str, tok: _Tok) -> str:
    out, i = [], 0
    while i < len(body):
        c = body[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        nxt = body[i + 1]
        if nxt in _UNESCAPES:
            out.append(_UNESCAPES[nxt])
            i += 2
        elif nxt in "uU":
            width = 4 if nxt == "u" else 8
            try:
                out.append(chr(int(body[i + 2:i + 2 + width], 16)))
            except ValueError:
                raise ParseError("bad unicode escape", tok.line, tok.col) from None
            i += 2 + width
        else:
            raise ParseError(f"unknown escape \\{nxt}", tok.line, tok.col)
    return "".join(out)


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes: dict[str, str] = {}
        self.default: list[Triple] = []
        self.graphs: dict[Iri, list[Triple]] = {}
        self.graph_order: list[Iri] = []

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind=None, text=None) -> _Tok:
        tok = self.toks[self.i]
        if (kind and tok.kind != kind) or (text is not None and tok.text != text):
            want = text or kind
            raise ParseError(f"expected {want}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def parse(self):
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind == "name" and tok.text in ("@prefix", "PREFIX", "prefix"):
                self.prefix(sparql=tok.text != "@prefix")
            elif tok.kind == "lang" and tok.text == "@prefix":
                self.prefix(sparql=False)
            elif tok.kind == "name" and tok.text.upper() == "GRAPH":
                self.take()
                self.block(self.iri(self.take()))
            else:
                self.statement_or_block()
        return self

    def prefix(self, sparql: bool):
        self.take()
        name = self.take("name")
        if not name.text.endswith(":"):
            self.fail("prefix name must end with ':'", name)
        ns = self.take("iri")
        self.prefixes[name.text[:-1]] = ns.text[1:-1]
        if not sparql:
            self.take("punct", ".")

    def statement_or_block(self):
        first = self.take()
        subject = self.iri(first)
        if self.peek().text == "{":
            self.block(subject)
            return
        self.predicate_objects(subject, self.default)
        self.take("punct", ".")

    def block(self, graph: Iri):
        self.take("punct", "{")
        if graph in self.graphs:
            self.fail(f"graph {graph} declared twice")
        triples = self.graphs[graph] = []
        self.graph_order.append(graph)
        while self.peek().text != "}":
            subject = self.iri(self.take())
            self.predicate_objects(subject, triples)
            if self.peek().text == ".":
                self.take()
            elif self.peek().text != "}":
                self.fail("expected '.' or '}'")
        self.take("punct", "}")

    def predicate_objects(self, subject, sink):
        while True:
            tok = self.take()
            pred = V.RDF_TYPE if tok.kind == "name" and tok.text == "a" else self.iri(tok)
            while True:
                sink.append(Triple(subject, pred, self.object()))
                if self.peek().text != ",":
                    break
                self.take()
            if self.peek().text != ";":
                return
            self.take()
            if self.peek().text in (".", "}"):
                return

    def iri(self, tok: _Tok) -> Iri:
        if tok.kind == "iri":
            text = tok.text[1:-1]
        elif tok.kind == "name" and ":" in tok.text:
            prefix, local = tok.text.split(":", 1)
            if prefix not in self.prefixes:
                raise ParseError(f"undeclared prefix {prefix!r}", tok.line, tok.col)
            text = self.prefixes[prefix] + local
        else:
            raise ParseError(f"expected an IRI, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        try:
            return Iri(text)
        except Exception as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None

    def object(self):
        tok = self.take()
        try:
            if tok.kind == "string":
                lexical = _unescape(tok.text[1:-1], tok)
                nxt = self.peek()
                if nxt.kind == "datatype":
                    self.take()
                    return Literal(lexical, self.iri(self.take()))
                if nxt.kind == "lang":
                    self.take()
                    return Literal(lexical, XSDType.string, nxt.text[1:])
                return Literal(lexical)
            if tok.kind == "number":
                dt = XSDType.decimal if "." in tok.text else XSDType.integer
                return Literal(tok.text, dt)
            if tok.kind == "name" and tok.text in ("true", "false"):
                return Literal(tok.text, XSDType.boolean)
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None
        return self.iri(tok)


def parse_trig(text: str) -> tuple[dict, list, dict]:
    """Return (prefixes, default-graph triples, named graphs)."""
    p = _Parser(text).parse()
    return p.prefixes, p.default, {g: p.graphs[g] for g in p.graph_order}


def import_trig(text: str, base: str | None = None, resource_base: str | None = None) -> LayeredStore:
    """Rebuild a store from TriG. Unit records come from the default graph."""
    prefixes, default, graphs = parse_trig(text)
    kw = {"prefixes": prefixes}
    if base:
        kw["base"] = base
    if resource_base:
        kw["resource_base"] = resource_base
    store = LayeredStore(**kw)
    store.prefix_map = dict(prefixes)

    described: dict[Iri, list] = {}
    unit_ids = set(graphs)
    for t in default:
        if t.predicate == V.RDF_TYPE and isinstance(t.object, Iri) and V.is_unit_kind(t.object):
            unit_ids.add(t.subject)
    extra = set()
    for t in default:
        if t.subject in unit_ids:
            described.setdefault(t.subject, []).append(t)
        else:
            extra.add(t)

    units = {g: unit_from_triples(g, described.get(g, []), g in graphs) for g in unit_ids}
    deps = {g: {m for m in u.members() if m in units} for g, u in units.items()}
    for g, u in sorted(units.items()):
        for m in u.members():
            if m not in units:
                raise UnknownUnit(f"unit {g} references unknown unit {m}", unit=m)
    try:
        order = list(TopologicalSorter(deps).static_order())
    except CycleError as exc:
        raise CycleDetected("association cycle in imported document", units=[str(x) for x in exc.args[1]]) from None

    for g in order:
        triples = graphs.get(g, [])
        for t in triples:
            if is_units_layer_triple(t):
                raise PartitionViolation(f"units-layer triple inside data graph {g}", triple=list(t), graphs=[g])
        store.register_unit(units[g], triples)
    store.extra_units_layer = extra
    _rebuild_resources(store)
    return store


def _rebuild_resources(store: LayeredStore) -> None:
    """Recover typed resources and identification links from identification units."""
    for unit in store.units_of_kind(V.IDENTIFICATION_UNIT):
        r = unit.subject
        if r is None:
            continue
        types, label = set(), None
        for t in store.data_graph(unit.gupri):
            if t.subject != r:
                continue
            if t.predicate == V.RDF_TYPE:
                types.add(t.object)
            elif t.predicate == V.RDFS_LABEL and isinstance(t.object, Literal):
                label = t.object.lexical
        label = label or r.local_name
        if V.CLASS_IDENT in unit.kinds:
            store.resources[r] = TypedResource(r, ResourceCategory.CLASS_REF, None, label)
        else:
            try:
                category = category_from_types(types)
            except ValueError:
                continue
            target = next((c for c in sorted(types) if c not in MARKER_CATEGORY), None)
            store.resources[r] = TypedResource(r, category, target, label)
        store.identification_of[r] = unit.gupri
        store.reserve(r)


def read_trig(path) -> LayeredStore:
    with open(path, encoding="utf-8") as fh:
        return import_trig(fh.read())
