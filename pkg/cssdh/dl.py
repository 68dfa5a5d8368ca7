# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.dl reads and writes class expressions in a Manchester-like syntax.

    >>> parse_dl("SubjectOfCare and (Lay-off-from-job value true)")
    And(operands=(Named(c=IRI('http://purl.org/net/for-coc#SubjectOfCare')), HasValue(...)))

    >>> parse_dl("some hasAppointment HospitalAppointment")
    Some(p=IRI('http://purl.org/net/for-coc#hasAppointment'), filler=Named(...))

Bare names are local names in the schema namespace. CURIEs and <IRI>s
are accepted anywhere a name is. "not" and "some <prop>" bind tighter
than "and", which binds tighter than "or".
"""
import re
import typing as t

from cssdh._helpers import DiagnosticError, diagnostic_at
from cssdh._lexer import unescape_string
from cssdh.terms import IRI, Literal, Term, PrefixMap, XSD_STRING, TRUE, FALSE
from cssdh.terms import expand_curie, InvalidTerm, UndefinedPrefix
from cssdh.turtle import render_term
from cssdh.owl import ClassExpression, Named, And, Or, Not, Some, HasValue
from cssdh.vocab import DEFAULT_NAMESPACE, DEFAULT_PREFIXES


__all__ = ["DlSyntaxError", "parse_dl", "render_dl"]


class DlSyntaxError(DiagnosticError): pass


_TOKEN_RE = re.compile(r'\s*(\(|\)|<[^>\s]*>|"(?:[^"\\]|\\.)*"(?:\^\^\S+?(?=[\s()]|$))?|[^\s()]+)')
_KEYWORDS = frozenset(("and", "or", "not", "some", "value"))


class _Parser:

    def __init__(self, text: str, namespace: str, prefixes: t.Mapping[str, IRI]) -> None:
        self.text = text
        self.namespace = namespace
        self.prefixes = prefixes
        self.tokens: t.List[t.Tuple[str, int]] = []

        position = 0
        while True:
            match = _TOKEN_RE.match(text, position)
            if match is None:
                if text[position:].strip():
                    self.fail("unexpected character", position)
                break
            self.tokens.append((match.group(1), match.start(1)))
            position = match.end()
        self.index = 0

    def fail(self, message: str, offset: t.Optional[int] = None) -> t.NoReturn:
        if offset is None:
            offset = self.offset()
        raise DlSyntaxError(diagnostic_at(self.text, offset, message))

    def peek(self) -> t.Optional[str]:
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def keyword(self, word: str) -> bool:
        token = self.peek()
        if token is not None and token.lower() == word:
            self.index += 1
            return True
        return False

    def take(self) -> str:
        token = self.peek()
        if token is None:
            self.fail("unexpected end of expression")
        self.index += 1
        return token

    def parse(self) -> ClassExpression:
        if not self.tokens:
            self.fail("empty class expression", 0)
        expr = self.disjunction()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return expr

    def disjunction(self) -> ClassExpression:
        operands = [self.conjunction()]
        while self.keyword("or"):
            operands.append(self.conjunction())
        return operands[0] if len(operands) == 1 else Or(tuple(_flatten(Or, operands)))

    def conjunction(self) -> ClassExpression:
        operands = [self.unary()]
        while self.keyword("and"):
            operands.append(self.unary())
        return operands[0] if len(operands) == 1 else And(tuple(_flatten(And, operands)))

    def offset(self) -> int:
        return self.tokens[self.index][1] if self.index < len(self.tokens) else len(self.text)

    def unary(self) -> ClassExpression:
        if self.keyword("not"):
            return Not(self.unary())

        if self.keyword("some"):
            offset = self.offset()
            prop = self.name(self.take(), offset)
            return Some(prop, self.unary())

        if self.peek() == "(":
            self.index += 1
            expr = self.disjunction()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.index += 1
            return expr

        offset = self.offset()
        name = self.name(self.take(), offset)
        if self.keyword("value"):
            return HasValue(name, self.value())
        return Named(name)

    def name(self, token: str, offset: int) -> IRI:
        if token in ("(", ")") or token.lower() in _KEYWORDS or token.startswith('"'):
            self.fail(f"expected a name, got {token!r}", offset)
        try:
            if token.startswith("<"):
                return IRI(token[1:-1])
            if ":" in token:
                return expand_curie(token, self.prefixes)
            return IRI(self.namespace + token)
        except UndefinedPrefix as e:
            raise UndefinedPrefix(e.label, diagnostic_at(self.text, offset, str(e))) from None
        except InvalidTerm:
            self.fail(f"{token} is not a valid IRI", offset)

    def value(self) -> Term:
        offset = self.offset()
        token = self.take()
        if token == "true":
            return TRUE
        if token == "false":
            return FALSE
        if token.startswith('"'):
            body, _, datatype = token.rpartition("^^") if '"^^' in token else (token, "", "")
            try:
                lexical = unescape_string(body[1:-1])
            except ValueError as e:
                self.fail(str(e), offset)
            return Literal(lexical, self.name(datatype, offset) if datatype else XSD_STRING)
        return self.name(token, offset)


def _flatten(kind: t.Type[t.Union[And, Or]], operands: t.Iterable[ClassExpression]) -> t.Iterator[ClassExpression]:
    for operand in operands:
        if isinstance(operand, kind):
            yield from operand.operands
        else:
            yield operand


def parse_dl(
        text: str,
        *,
        namespace: str = DEFAULT_NAMESPACE,
        prefixes: t.Optional[t.Mapping[str, IRI]] = None
) -> ClassExpression:
    """
    Parses a class expression.

    :param namespace: Namespace of bare names.
    :raises DlSyntaxError: With the position of the offending token.
    """
    return _Parser(text, namespace, DEFAULT_PREFIXES if prefixes is None else prefixes).parse()


def _name(iri: IRI, namespace: str, prefixes: PrefixMap) -> str:
    local = iri.value[len(namespace):]
    if iri.value.startswith(namespace) and local and re.fullmatch(r"[A-Za-z_][\w-]*", local) and local.lower() not in _KEYWORDS:
        return local
    return render_term(iri, prefixes)


def render_dl(
        expr: ClassExpression,
        *,
        namespace: str = DEFAULT_NAMESPACE,
        prefixes: t.Optional[t.Mapping[str, IRI]] = None
) -> str:
    """
    Renders a class expression so that parse_dl reads it back unchanged.
    """
    prefixes = PrefixMap(DEFAULT_PREFIXES if prefixes is None else prefixes)

    def render(e: ClassExpression, nested: bool) -> str:
        if isinstance(e, Named):
            return _name(e.c, namespace, prefixes)
        if isinstance(e, Not):
            return "not " + render(e.operand, True)
        if isinstance(e, Some):
            text = f"some {_name(e.p, namespace, prefixes)} {render(e.filler, True)}"
        elif isinstance(e, HasValue):
            if isinstance(e.v, IRI):
                value = _name(e.v, namespace, prefixes)
            elif e.v in (TRUE, FALSE):
                value = t.cast(Literal, e.v).lexical
            else:
                value = render_term(e.v, prefixes)
            text = f"{_name(e.p, namespace, prefixes)} value {value}"
        elif isinstance(e, (And, Or)):
            word = " and " if isinstance(e, And) else " or "
            text = word.join(render(operand, True) for operand in e.operands)
        else:
            raise TypeError(f"not a class expression: {e!r}")
        return f"({text})" if nested else text

    return render(expr, False)
