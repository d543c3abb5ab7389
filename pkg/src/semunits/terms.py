"""RDF terms: IRIs, literals and triples."""
from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, datetime
from decimal import Decimal, InvalidOperation
from typing import NamedTuple, Union

from .errors import InvalidIri, InvalidLiteral

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_FORBIDDEN = re.compile(r"[\s<>\"{}|^`\\]")


class Iri(str):
    """An absolute identifier. Behaves as a plain string once validated."""

    __slots__ = ()

    def __new__(cls, value: str):
        if isinstance(value, Iri):
            return value
        if not isinstance(value, str) or not value:
            raise InvalidIri(f"empty or non-string IRI: {value!r}")
        if not _SCHEME.match(value) or _FORBIDDEN.search(value):
            raise InvalidIri(f"not an absolute IRI: {value!r}")
        return super().__new__(cls, value)

    def __repr__(self):
        return f"Iri({str.__repr__(self)})"

    @property
    def local_name(self) -> str:
        for sep in ("#", "/", ":"):
            if sep in self:
                tail = self.rsplit(sep, 1)[1]
                if tail:
                    return tail
        return str(self)


# Gupris are IRIs naming semantic units; kept as an alias for readability.
Gupri = Iri


class XSDType:
    decimal = Iri(XSD + "decimal")
    integer = Iri(XSD + "integer")
    string = Iri(XSD + "string")
    dateTime = Iri(XSD + "dateTime")
    date = Iri(XSD + "date")
    boolean = Iri(XSD + "boolean")
    lang_string = Iri(RDF + "langString")


NUMERIC = frozenset({XSDType.decimal, XSDType.integer})
DATATYPES = frozenset(
    {XSDType.decimal, XSDType.integer, XSDType.string, XSDType.dateTime,
     XSDType.date, XSDType.boolean, XSDType.lang_string}
)
_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_INTEGER = re.compile(r"^[+-]?\d+$")


def _parse_datetime(text: str) -> datetime:
    return datetime.fromisoformat(text[:-1] + "+00:00" if text.endswith("Z") else text)


@dataclass(frozen=True, eq=False)
class Literal:
    lexical: str
    datatype: Iri = XSDType.string
    language: str | None = None

    def __post_init__(self):
        dt = Iri(self.datatype)
        object.__setattr__(self, "datatype", dt)
        if self.language is not None:
            if dt not in (XSDType.string, XSDType.lang_string):
                raise InvalidLiteral("language tags need a string datatype")
            object.__setattr__(self, "datatype", XSDType.lang_string)
        elif dt == XSDType.lang_string:
            raise InvalidLiteral("rdf:langString literal without a language tag")
        if dt not in DATATYPES:
            raise InvalidLiteral(f"unsupported datatype {dt}")
        lex = self.lexical
        if not isinstance(lex, str):
            raise InvalidLiteral(f"lexical form must be a string: {lex!r}")
        if type(lex) is not str:
            lex = str.__str__(lex)
            object.__setattr__(self, "lexical", lex)
        ok = True
        if dt == XSDType.decimal:
            ok = bool(_DECIMAL.match(lex))
        elif dt == XSDType.integer:
            ok = bool(_INTEGER.match(lex))
        elif dt == XSDType.boolean:
            ok = lex in ("true", "false", "1", "0")
        elif dt == XSDType.date:
            try:
                date.fromisoformat(lex)
            except ValueError:
                ok = False
        elif dt == XSDType.dateTime:
            try:
                _parse_datetime(lex)
            except ValueError:
                ok = False
        if not ok:
            raise InvalidLiteral(f"{lex!r} is not a valid {dt.local_name}")

    @property
    def is_numeric(self) -> bool:
        return self.datatype in NUMERIC

    @property
    def value(self):
        if self.is_numeric:
            return Decimal(self.lexical)
        if self.datatype == XSDType.boolean:
            return self.lexical in ("true", "1")
        return self.lexical

    def _key(self):
        if self.is_numeric:
            return ("num", Decimal(self.lexical))
        return ("lex", self.lexical, self.datatype, (self.language or "").lower())

    def __eq__(self, other):
        if not isinstance(other, Literal):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        return self.lexical


def decimal(value) -> Literal:
    if isinstance(value, float):
        value = repr(value)
    try:
        Decimal(str(value))
    except InvalidOperation as exc:
        raise InvalidLiteral(str(value)) from exc
    return Literal(str(value), XSDType.decimal)


def integer(value: int) -> Literal:
    return Literal(str(int(value)), XSDType.integer)


def string(value: str, language: str | None = None) -> Literal:
    return Literal(value, XSDType.string, language)


Term = Union[Iri, Literal]


class Triple(NamedTuple):
    subject: Iri
    predicate: Iri
    object: Term


def term_key(term) -> tuple:
    """Total order over terms: IRIs before literals, literals by datatype then lexical."""
    if isinstance(term, Literal):
        return (1, str(term.datatype), term.lexical, term.language or "")
    return (0, str(term))


def triple_key(t: Triple) -> tuple:
    return (str(t.subject), str(t.predicate), term_key(t.object))


def compact(iri: str, prefixes: dict[str, str]) -> str:
    """Shorten ``iri`` with the longest matching namespace; return it unchanged otherwise."""
    best = None
    for prefix, ns in prefixes.items():
        if iri.startswith(ns) and (best is None or len(ns) > len(prefixes[best])):
            local = iri[len(ns):]
            if re.fullmatch(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*", local) and not local.endswith("."):
                best = prefix
    if best is None:
        return iri
    return f"{best}:{iri[len(prefixes[best]):]}"


def expand(curie: str, prefixes: dict[str, str]) -> Iri:
    if ":" in curie:
        prefix, local = curie.split(":", 1)
        if prefix in prefixes and not local.startswith("//"):
            return Iri(prefixes[prefix] + local)
    return Iri(curie)
