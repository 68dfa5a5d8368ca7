# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.terms implements the RDF term algebra.

    >>> prefixes = PrefixMap({"coc": IRI("http://purl.org/net/for-coc#")})
    >>> expand_curie("coc:Lay-off-from-job", prefixes)
    IRI('http://purl.org/net/for-coc#Lay-off-from-job')

Terms are immutable values. Literals always carry a datatype and
compare datatype-sensitively, so "true"^^xsd:boolean and the plain
string "true" are different terms.
"""
import re
import dataclasses
import typing as t

from rdflib.namespace import OWL as _OWL, RDF as _RDF, RDFS as _RDFS, XSD as _XSD

from cssdh._helpers import CssdhError, ParseDiagnostic


__all__ = [
    "IRI", "Literal", "BlankNode", "Term", "Triple", "Namespace",
    "PrefixMap", "expand_curie",
    "InvalidTerm", "InvalidTriple", "MalformedCurie", "UndefinedPrefix",
    "RDF", "RDFS", "OWL", "XSD", "XSD_STRING", "XSD_BOOLEAN",
    "TRUE", "FALSE", "boolean", "quote", "STANDARD_PREFIXES"
]


class InvalidTerm(CssdhError): pass
class InvalidTriple(CssdhError): pass
class MalformedCurie(CssdhError): pass


class UndefinedPrefix(CssdhError):

    #: Set when the prefix was used inside a parsed document.
    diagnostic: t.Optional[ParseDiagnostic]

    def __init__(self, label: str, diagnostic: t.Optional[ParseDiagnostic] = None):
        message = f"undefined prefix {label!r}"
        if diagnostic is not None:
            message = f"{diagnostic.line}:{diagnostic.column}: {message}"
        super().__init__(message)
        self.label = label
        self.diagnostic = diagnostic


_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")
# Characters an IRIREF cannot hold.
_IRI_FORBIDDEN_RE = re.compile(r'[\x00-\x20<>"{}|^`\\]')
_BNODE_RE = re.compile(r"^[A-Za-z0-9_][\w.-]*$")


@dataclasses.dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def __post_init__(self) -> None:
        if (
            not _SCHEME_RE.match(self.value)
            or _IRI_FORBIDDEN_RE.search(self.value)
            or any(c.isspace() for c in self.value)
        ):
            raise InvalidTerm(f"not an absolute IRI: {self.value!r}")

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"IRI({self.value!r})"

    def n3(self) -> str:
        return f"<{self.value}>"

    def sort_key(self) -> t.Tuple[int, str, str]:
        return (0, self.value, "")


@dataclasses.dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __post_init__(self) -> None:
        if not _BNODE_RE.match(self.label):
            raise InvalidTerm(f"invalid blank node label: {self.label!r}")

    def __str__(self) -> str:
        return f"_:{self.label}"

    def n3(self) -> str:
        return f"_:{self.label}"

    def sort_key(self) -> t.Tuple[int, str, str]:
        return (1, self.label, "")


def quote(value: str) -> str:
    return f'"{_escape(value)}"'


def _escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
             .replace('"', '\\"')
             .replace("\n", "\\n")
             .replace("\r", "\\r")
             .replace("\t", "\\t")
    )


@dataclasses.dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: IRI = dataclasses.field(default_factory=lambda: XSD_STRING)

    def __post_init__(self) -> None:
        if not isinstance(self.lexical, str) or not isinstance(self.datatype, IRI):
            raise InvalidTerm(f"invalid literal: {self.lexical!r}^^{self.datatype!r}")

    def __str__(self) -> str:
        return self.lexical

    def n3(self) -> str:
        return f'"{_escape(self.lexical)}"^^{self.datatype.n3()}'

    def sort_key(self) -> t.Tuple[int, str, str]:
        return (2, self.lexical, self.datatype.value)


Term = t.Union[IRI, Literal, BlankNode]


@dataclasses.dataclass(frozen=True, slots=True)
class Triple:
    subject: t.Union[IRI, BlankNode]
    predicate: IRI
    object: Term

    def __post_init__(self) -> None:
        if not isinstance(self.subject, (IRI, BlankNode)):
            raise InvalidTriple(f"subject must be an IRI or blank node, got {self.subject!r}")
        if not isinstance(self.predicate, IRI):
            raise InvalidTriple(f"predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (IRI, BlankNode, Literal)):
            raise InvalidTriple(f"object must be an RDF term, got {self.object!r}")

    def __iter__(self) -> t.Iterator[Term]:
        yield self.subject
        yield self.predicate
        yield self.object

    def sort_key(self) -> t.Tuple[t.Tuple[int, str, str], ...]:
        return (self.subject.sort_key(), self.predicate.sort_key(), self.object.sort_key())

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."


class Namespace:
    """
    Attribute and item access to IRIs below a namespace.
    """
    __slots__ = ("base",)

    def __init__(self, base: str) -> None:
        self.base = base

    def __getattr__(self, name: str) -> IRI:
        if name.startswith("__"):
            raise AttributeError(name)
        return IRI(self.base + name)

    def __getitem__(self, name: str) -> IRI:
        return IRI(self.base + name)

    def __contains__(self, iri: object) -> bool:
        return isinstance(iri, IRI) and iri.value.startswith(self.base)


# W3C vocabularies, from rdflib.
RDF = Namespace(str(_RDF))
RDFS = Namespace(str(_RDFS))
OWL = Namespace(str(_OWL))
XSD = Namespace(str(_XSD))

XSD_STRING = XSD.string
XSD_BOOLEAN = XSD.boolean

TRUE = Literal("true", XSD_BOOLEAN)
FALSE = Literal("false", XSD_BOOLEAN)


def boolean(value: bool) -> Literal:
    return TRUE if value else FALSE


class PrefixMap(t.Dict[str, IRI]):
    """
    Maps prefix labels onto namespace IRIs.

    Binding an existing label replaces its namespace.
    """

    def bind(self, label: str, namespace: t.Union[IRI, str]) -> None:
        self[label] = namespace if isinstance(namespace, IRI) else IRI(namespace)

    def compact(self, iri: IRI) -> t.Optional[t.Tuple[str, str]]:
        """
        Finds the longest namespace that abbreviates the IRI.

        :returns: (label, local part) or None if no namespace matches.
        """
        best = None
        for label, namespace in sorted(self.items()):
            if iri.value.startswith(namespace.value):
                if best is None or len(namespace.value) > len(self[best].value):
                    best = label
        if best is None:
            return None
        return best, iri.value[len(self[best].value):]


def expand_curie(curie: str, prefixes: t.Mapping[str, IRI]) -> IRI:
    """
    Expands a compact IRI like fhir:Patient.

    :raises MalformedCurie: When the text holds no colon.
    :raises UndefinedPrefix: When the label is not bound.
    """
    if ":" not in curie:
        raise MalformedCurie(f"not a CURIE: {curie!r}")
    label, local = curie.split(":", 1)
    if label not in prefixes:
        raise UndefinedPrefix(label)
    return IRI(prefixes[label].value + local)


STANDARD_PREFIXES = PrefixMap({
    "rdf": IRI(RDF.base),
    "rdfs": IRI(RDFS.base),
    "owl": IRI(OWL.base),
    "xsd": IRI(XSD.base),
})
