# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.turtle reads and writes the Turtle subset used for schemas and data.

    >>> graph, prefixes = parse_turtle(open("schema.ttl", encoding="utf-8").read())
    >>> text = serialize_turtle(graph, prefixes)

Supported: @prefix / PREFIX directives, <IRIs>, prefixed names, the `a`
keyword, string literals with an optional ^^datatype, the boolean
shorthands true and false, blank node labels, predicate lists (;),
object lists (,) and comments.

Collections, [ ] property lists, numbers, language tags and @base are
rejected with an "unsupported Turtle feature" diagnostic.

The serializer sorts subjects, predicates and objects, so equal graphs
always produce equal text.
"""
import re
import logging
import typing as t

from cssdh._helpers import DiagnosticError, diagnostic_at
from cssdh._lexer import Token, tokenize
from cssdh.graph import Graph
from cssdh.terms import IRI, BlankNode, Literal, Term, Triple, PrefixMap
from cssdh.terms import RDF, XSD_STRING, XSD_BOOLEAN, InvalidTerm, UndefinedPrefix, quote


__all__ = ["TurtleSyntaxError", "parse_turtle", "parse_term", "serialize_turtle", "render_term"]


logger = logging.getLogger(__name__)


class TurtleSyntaxError(DiagnosticError): pass


_UNSUPPORTED = "unsupported Turtle feature"
_SAFE_LOCAL_RE = re.compile(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?$")
_SAFE_LABEL_RE = re.compile(r"^(?:[A-Za-z](?:[\w.-]*[\w-])?)?$")

# A typed literal is kept as its (string, datatype) token pair until resolution.
RawTerm = t.Union[Token, t.Tuple[Token, Token]]


class _Parser:

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text, TurtleSyntaxError)
        self.pos = 0
        self.prefixes = PrefixMap()
        self.graph = Graph()

    ###
    # Token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def fail(self, message: str, token: t.Optional[Token] = None) -> t.NoReturn:
        token = token or self.current
        raise TurtleSyntaxError(diagnostic_at(self.text, token.offset, message))

    def describe(self, token: Token) -> str:
        if token.kind == "EOF":
            return "end of input"
        return repr(token.value)

    def expect_op(self, op: str) -> Token:
        if self.current.kind != "OP" or self.current.value != op:
            self.fail(f"expected {op!r}, found {self.describe(self.current)}")
        return self.advance()

    def is_op(self, op: str) -> bool:
        return self.current.kind == "OP" and self.current.value == op

    ###
    # Grammar

    def parse(self) -> t.Tuple[Graph, PrefixMap]:
        while self.current.kind != "EOF":
            token = self.current
            if token.kind == "AT" and token.value == "@prefix":
                self.advance()
                self.prefix_body()
                self.expect_op(".")
            elif token.kind == "NAME" and token.value.upper() == "PREFIX":
                self.advance()
                self.prefix_body()
            elif (token.kind == "AT" and token.value == "@base") or (token.kind == "NAME" and token.value.upper() == "BASE"):
                self.fail(f"{_UNSUPPORTED}: base IRIs")
            else:
                self.statement()
        return self.graph, self.prefixes

    def prefix_body(self) -> None:
        label = self.advance()
        if label.kind != "PNAME" or not label.value.endswith(":") or label.value.count(":") != 1:
            self.fail(f"expected a prefix label, found {self.describe(label)}", label)
        namespace = self.advance()
        if namespace.kind != "IRI":
            self.fail(f"expected a namespace IRI, found {self.describe(namespace)}", namespace)
        self.prefixes.bind(label.value[:-1], self.make_iri(namespace))

    def statement(self) -> None:
        # Collect the whole statement first; names are resolved once the
        # statement is syntactically complete.
        pending: t.List[t.Tuple[Token, Token, RawTerm]] = []
        subject = self.subject()
        while True:
            predicate = self.predicate()
            while True:
                pending.append((subject, predicate, self.object()))
                if not self.is_op(","):
                    break
                self.advance()

            if not self.is_op(";"):
                break
            while self.is_op(";"):
                self.advance()
            if self.is_op("."):
                break
        self.expect_op(".")

        for s, p, o in pending:
            self.graph.insert(Triple(
                t.cast(t.Union[IRI, BlankNode], self.resolve(s)),
                t.cast(IRI, self.resolve(p)),
                self.resolve(o)
            ))

    def check_unsupported(self, token: Token) -> None:
        if token.kind == "OP" and token.value in ("[", "("):
            self.fail(f"{_UNSUPPORTED}: {'blank node property lists' if token.value == '[' else 'collections'}", token)
        if token.kind == "NUMBER":
            self.fail(f"{_UNSUPPORTED}: numeric literals", token)

    def subject(self) -> Token:
        token = self.current
        self.check_unsupported(token)
        if token.kind not in ("IRI", "PNAME", "BNODE"):
            self.fail(f"expected a subject, found {self.describe(token)}")
        return self.advance()

    def predicate(self) -> Token:
        token = self.current
        if token.kind in ("IRI", "PNAME") or (token.kind == "NAME" and token.value == "a"):
            return self.advance()
        self.fail(f"expected a predicate, found {self.describe(token)}")

    def object(self) -> RawTerm:
        token = self.current
        self.check_unsupported(token)
        if token.kind in ("IRI", "PNAME", "BNODE"):
            return self.advance()
        if token.kind == "NAME" and token.value in ("true", "false"):
            return self.advance()
        if token.kind == "STRING":
            self.advance()
            if self.current.kind == "AT":
                self.fail(f"{_UNSUPPORTED}: language tags")
            if self.is_op("^^"):
                self.advance()
                datatype = self.current
                if datatype.kind not in ("IRI", "PNAME"):
                    self.fail(f"expected a datatype IRI, found {self.describe(datatype)}")
                self.advance()
                return (token, datatype)
            return token
        self.fail(f"expected an object, found {self.describe(token)}")

    ###
    # Term construction

    def make_iri(self, token: Token) -> IRI:
        try:
            return IRI(token.value)
        except InvalidTerm:
            self.fail(f"relative or malformed IRI <{token.value}>", token)

    def expand(self, token: Token) -> IRI:
        label, local = token.value.split(":", 1)
        if label not in self.prefixes:
            raise UndefinedPrefix(label, diagnostic_at(self.text, token.offset, f"undefined prefix {label!r}"))
        try:
            return IRI(self.prefixes[label].value + local)
        except InvalidTerm:
            self.fail(f"prefixed name {token.value!r} does not expand to an absolute IRI", token)

    def resolve(self, token: RawTerm) -> Term:
        if not isinstance(token, Token):
            lexical, datatype = token
            return Literal(lexical.value, t.cast(IRI, self.resolve(datatype)))
        if token.kind == "IRI":
            return self.make_iri(token)
        if token.kind == "PNAME":
            return self.expand(token)
        if token.kind == "BNODE":
            return BlankNode(token.value[2:])
        if token.kind == "NAME":
            if token.value == "a":
                return RDF.type
            return Literal(token.value, XSD_BOOLEAN)
        if token.kind == "STRING":
            return Literal(token.value, XSD_STRING)
        raise AssertionError(f"unresolvable token {token!r}")


def parse_turtle(text: t.Union[str, bytes]) -> t.Tuple[Graph, PrefixMap]:
    """
    Parses a Turtle document.

    :param text: The document, either as text or as UTF-8 bytes. A leading BOM is stripped.
    :returns: The asserted triples and the declared prefixes.
    :raises TurtleSyntaxError: On malformed or unsupported input.
    :raises UndefinedPrefix: When a prefixed name uses an undeclared label.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            raise TurtleSyntaxError(diagnostic_at("", 0, f"input is not UTF-8: {e.reason}")) from None
    elif text.startswith("\ufeff"):
        text = text[1:]

    graph, prefixes = _Parser(text).parse()
    logger.debug(f"Parsed {len(graph)} triples and {len(prefixes)} prefixes.")
    return graph, prefixes


def parse_term(text: str, prefixes: t.Optional[t.Mapping[str, IRI]] = None) -> Term:
    """
    Parses a single term written as it would appear in object position.

    >>> parse_term("coc:patient/p1", DEFAULT_PREFIXES)
    IRI('http://purl.org/net/for-coc#patient/p1')
    """
    parser = _Parser(text)
    parser.prefixes.update(prefixes or {})
    raw = parser.object()
    if parser.current.kind != "EOF":
        parser.fail(f"unexpected {parser.describe(parser.current)} after the term")
    return parser.resolve(raw)


###
# Serialization

def _usable_prefixes(prefixes: t.Mapping[str, IRI]) -> PrefixMap:
    return PrefixMap({
        label: namespace for label, namespace in prefixes.items()
        if _SAFE_LABEL_RE.match(label)
    })


def render_term(term: Term, prefixes: t.Optional[PrefixMap] = None) -> str:
    """
    Renders a single term in Turtle syntax, abbreviating where possible.
    """
    if isinstance(term, IRI):
        if prefixes:
            found = prefixes.compact(term)
            if found is not None and _SAFE_LOCAL_RE.match(found[1]):
                return f"{found[0]}:{found[1]}"
        return term.n3()

    if isinstance(term, Literal):
        if term.datatype == XSD_BOOLEAN and term.lexical in ("true", "false"):
            return term.lexical
        quoted = quote(term.lexical)
        if term.datatype == XSD_STRING:
            return quoted
        return f"{quoted}^^{render_term(term.datatype, prefixes)}"

    return term.n3()


def serialize_turtle(graph: Graph, prefixes: t.Optional[t.Mapping[str, IRI]] = None) -> str:
    """
    Serializes a graph deterministically.

    Subjects are written in sorted order, each followed by its sorted
    predicate/object pairs, one pair per line.
    """
    usable = _usable_prefixes(prefixes or {})
    lines = [f"@prefix {label}: <{namespace.value}> ." for label, namespace in sorted(usable.items())]

    by_subject: t.Dict[Term, t.List[Triple]] = {}
    for triple in graph:
        by_subject.setdefault(triple.subject, []).append(triple)

    for subject in sorted(by_subject, key=lambda term: term.sort_key()):
        if lines:
            lines.append("")
        triples = sorted(by_subject[subject], key=lambda tr: (tr.predicate.sort_key(), tr.object.sort_key()))
        lines.append(render_term(subject, usable))
        for index, triple in enumerate(triples):
            predicate = "a" if triple.predicate == RDF.type else render_term(triple.predicate, usable)
            end = " ." if index == len(triples) - 1 else " ;"
            lines.append(f"    {predicate} {render_term(triple.object, usable)}{end}")

    if not lines:
        return ""
    return "\n".join(lines) + "\n"
