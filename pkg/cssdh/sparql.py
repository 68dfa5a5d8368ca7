# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.sparql implements the SELECT subset of SPARQL used by the
competency questions.

    >>> query = parse_query(open("cq2.rq", encoding="utf-8").read())
    >>> table = execute(query, materialize(data | schema, axioms))
    >>> print(format_table(table, fmt="tsv"))

Supported: PREFIX, SELECT [DISTINCT] (vars | *), WHERE with triple
patterns (including ; and , abbreviations and the `a` keyword),
OPTIONAL groups of triple patterns and FILTER with =, !=, &&, ||, !
and bound(). Anything else found in a query is rejected with an
"unsupported SPARQL feature" diagnostic.

Rows come out sorted by their cells, so equal inputs always give
byte-identical output.
"""
import logging
import dataclasses
import typing as t

from cssdh._helpers import DiagnosticError, diagnostic_at
from cssdh._lexer import Token, tokenize
from cssdh.graph import Graph
from cssdh.terms import IRI, Literal, Term, Triple, PrefixMap
from cssdh.terms import RDF, XSD_STRING, XSD_BOOLEAN, InvalidTerm, UndefinedPrefix
from cssdh.turtle import render_term


__all__ = [
    "QuerySyntaxError", "Variable", "TriplePattern", "Query", "ALL", "UNBOUND",
    "FilterExpr", "VarRef", "Constant", "Comparison", "Conjunction", "Disjunction",
    "Negation", "Bound",
    "SolutionTable", "parse_query", "execute", "format_table"
]


logger = logging.getLogger(__name__)


class QuerySyntaxError(DiagnosticError): pass


_UNSUPPORTED = "unsupported SPARQL feature"
_UNSUPPORTED_KEYWORDS = frozenset((
    "ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING", "UNION", "GRAPH", "MINUS",
    "BIND", "VALUES", "SERVICE", "FROM", "ASK", "CONSTRUCT", "DESCRIBE", "BASE",
    "INSERT", "DELETE", "LOAD", "CLEAR",
))
_PATH_OPERATORS = frozenset(("/", "|", "^", "*", "+"))

#: Projection of every variable (SELECT *).
ALL = "*"
#: Cell value of a variable an OPTIONAL block left unbound.
UNBOUND = None


@dataclasses.dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


Slot = t.Union[Term, Variable]


@dataclasses.dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: Slot
    predicate: Slot
    object: Slot

    def __iter__(self) -> t.Iterator[Slot]:
        yield self.subject
        yield self.predicate
        yield self.object

    def variables(self) -> t.List[str]:
        return [slot.name for slot in self if isinstance(slot, Variable)]


###
# Filter expressions

@dataclasses.dataclass(frozen=True, slots=True)
class VarRef:
    name: str


@dataclasses.dataclass(frozen=True, slots=True)
class Constant:
    term: Term


@dataclasses.dataclass(frozen=True, slots=True)
class Comparison:
    #: "=" or "!="
    op: str
    left: "FilterExpr"
    right: "FilterExpr"


@dataclasses.dataclass(frozen=True, slots=True)
class Conjunction:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclasses.dataclass(frozen=True, slots=True)
class Disjunction:
    left: "FilterExpr"
    right: "FilterExpr"


@dataclasses.dataclass(frozen=True, slots=True)
class Negation:
    operand: "FilterExpr"


@dataclasses.dataclass(frozen=True, slots=True)
class Bound:
    name: str


FilterExpr = t.Union[VarRef, Constant, Comparison, Conjunction, Disjunction, Negation, Bound]


@dataclasses.dataclass(frozen=True)
class Query:
    prefixes: PrefixMap
    #: Variable names without the leading "?", or ALL.
    projection: t.Union[t.Tuple[str, ...], str]
    required_patterns: t.Tuple[TriplePattern, ...]
    optional_blocks: t.Tuple[t.Tuple[TriplePattern, ...], ...] = ()
    filters: t.Tuple[FilterExpr, ...] = ()
    distinct: bool = False

    def variables(self) -> t.List[str]:
        """All pattern variables in order of first appearance."""
        seen: t.Dict[str, None] = {}
        for pattern in self.required_patterns:
            seen.update(dict.fromkeys(pattern.variables()))
        for block in self.optional_blocks:
            for pattern in block:
                seen.update(dict.fromkeys(pattern.variables()))
        return list(seen)

    @property
    def header(self) -> t.Tuple[str, ...]:
        if self.projection == ALL:
            return tuple(self.variables())
        return t.cast(t.Tuple[str, ...], self.projection)


###
# Parser

class _Parser:

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text, QuerySyntaxError)
        self.pos = 0
        self.prefixes = PrefixMap()

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
        raise QuerySyntaxError(diagnostic_at(self.text, token.offset, message))

    def describe(self, token: Token) -> str:
        if token.kind == "EOF":
            return "end of input"
        return repr(token.value)

    def is_op(self, op: str) -> bool:
        return self.current.kind == "OP" and self.current.value == op

    def expect_op(self, op: str) -> Token:
        if not self.is_op(op):
            self.fail(f"expected {op!r}, found {self.describe(self.current)}")
        return self.advance()

    def is_keyword(self, word: str) -> bool:
        return self.current.kind == "NAME" and self.current.value.upper() == word

    def check_keyword(self) -> None:
        token = self.current
        if token.kind == "NAME" and token.value.upper() in _UNSUPPORTED_KEYWORDS:
            self.fail(f"{_UNSUPPORTED}: {token.value.upper()}")

    ###
    # Grammar

    def parse(self) -> Query:
        while self.is_keyword("PREFIX"):
            self.advance()
            self.prefix_body()

        self.check_keyword()
        if not self.is_keyword("SELECT"):
            self.fail(f"expected SELECT, found {self.describe(self.current)}")
        self.advance()

        distinct = False
        if self.is_keyword("DISTINCT"):
            self.advance()
            distinct = True

        projection: t.Union[t.List[Token], str]
        if self.is_op("*"):
            self.advance()
            projection = ALL
        else:
            projection = []
            while self.current.kind == "VAR":
                projection.append(self.advance())
            if not projection:
                self.check_keyword()
                self.fail(f"expected variables or '*', found {self.describe(self.current)}")

        self.check_keyword()
        if self.is_keyword("WHERE"):
            self.advance()
        self.expect_op("{")

        required: t.List[TriplePattern] = []
        optional: t.List[t.Tuple[TriplePattern, ...]] = []
        filters: t.List[FilterExpr] = []
        while not self.is_op("}"):
            self.check_keyword()
            if self.current.kind == "EOF":
                self.fail("unclosed group, expected '}'")
            if self.is_keyword("OPTIONAL"):
                self.advance()
                optional.append(tuple(self.optional_block()))
            elif self.is_keyword("FILTER"):
                self.advance()
                filters.append(self.filter())
            elif self.is_op("."):
                self.advance()
            elif self.is_op("{"):
                self.fail(f"{_UNSUPPORTED}: nested groups")
            else:
                required.extend(self.triples())
                if not (self.is_op("}") or self.is_keyword("OPTIONAL") or self.is_keyword("FILTER")):
                    self.expect_op(".")
        self.advance()

        self.check_keyword()
        if self.current.kind != "EOF":
            self.fail(f"unexpected {self.describe(self.current)} after the query")

        query = Query(
            prefixes=self.prefixes,
            projection=ALL,
            required_patterns=tuple(required),
            optional_blocks=tuple(optional),
            filters=tuple(filters),
            distinct=distinct,
        )

        if projection != ALL:
            known = set(query.variables())
            for token in t.cast(t.List[Token], projection):
                if token.value[1:] not in known:
                    self.fail(f"projected variable {token.value} does not appear in any pattern", token)
            query = dataclasses.replace(query, projection=tuple(
                dict.fromkeys(token.value[1:] for token in t.cast(t.List[Token], projection))
            ))

        return query

    def prefix_body(self) -> None:
        label = self.advance()
        if label.kind != "PNAME" or not label.value.endswith(":") or label.value.count(":") != 1:
            self.fail(f"expected a prefix label, found {self.describe(label)}", label)
        namespace = self.advance()
        if namespace.kind != "IRI":
            self.fail(f"expected a namespace IRI, found {self.describe(namespace)}", namespace)
        self.prefixes.bind(label.value[:-1], self.make_iri(namespace))

    def optional_block(self) -> t.List[TriplePattern]:
        self.expect_op("{")
        patterns: t.List[TriplePattern] = []
        while not self.is_op("}"):
            self.check_keyword()
            if self.current.kind == "EOF":
                self.fail("unclosed OPTIONAL group, expected '}'")
            if self.is_keyword("OPTIONAL") or self.is_keyword("FILTER"):
                self.fail(f"{_UNSUPPORTED}: {self.current.value.upper()} inside OPTIONAL")
            if self.is_op("."):
                self.advance()
                continue
            patterns.extend(self.triples())
            if not (self.is_op("}") or self.is_keyword("FILTER")):
                self.expect_op(".")
        self.advance()
        if not patterns:
            self.fail("empty OPTIONAL group")
        return patterns

    def triples(self) -> t.List[TriplePattern]:
        patterns = []
        subject = self.slot("subject")
        while True:
            predicate = self.verb()
            while True:
                patterns.append(TriplePattern(subject, predicate, self.slot("object")))
                if not self.is_op(","):
                    break
                self.advance()
            if not self.is_op(";"):
                break
            while self.is_op(";"):
                self.advance()
            if self.is_op(".") or self.is_op("}"):
                break
        return patterns

    def verb(self) -> Slot:
        token = self.current
        if token.kind == "NAME" and token.value == "a":
            self.advance()
            slot: Slot = RDF.type
        elif token.kind in ("VAR", "IRI", "PNAME"):
            slot = self.slot("predicate")
        elif token.kind == "OP" and token.value in _PATH_OPERATORS | {"!", "("}:
            self.fail(f"{_UNSUPPORTED}: property paths")
        else:
            self.fail(f"expected a predicate, found {self.describe(token)}")

        if self.current.kind == "OP" and self.current.value in _PATH_OPERATORS:
            self.fail(f"{_UNSUPPORTED}: property paths")
        return slot

    def slot(self, position: str) -> Slot:
        token = self.current
        if token.kind == "VAR":
            self.advance()
            return Variable(token.value[1:])
        if token.kind == "BNODE" or (token.kind == "OP" and token.value in ("[", "(")):
            self.fail(f"{_UNSUPPORTED}: blank nodes in patterns")
        if token.kind == "NUMBER":
            self.fail(f"{_UNSUPPORTED}: numeric literals")
        term = self.term()
        if term is None:
            self.fail(f"expected a {position}, found {self.describe(token)}", token)
        if position != "object" and isinstance(term, Literal):
            self.fail(f"a literal cannot be a {position}", token)
        return term

    def term(self) -> t.Optional[Term]:
        token = self.current
        if token.kind == "IRI":
            self.advance()
            return self.make_iri(token)
        if token.kind == "PNAME":
            self.advance()
            return self.expand(token)
        if token.kind == "NAME" and token.value in ("true", "false"):
            self.advance()
            return Literal(token.value, XSD_BOOLEAN)
        if token.kind == "STRING":
            self.advance()
            if self.current.kind == "AT":
                self.fail(f"{_UNSUPPORTED}: language tags")
            if self.is_op("^^"):
                self.advance()
                datatype = self.current
                if datatype.kind == "IRI":
                    self.advance()
                    return Literal(token.value, self.make_iri(datatype))
                if datatype.kind == "PNAME":
                    self.advance()
                    return Literal(token.value, self.expand(datatype))
                self.fail(f"expected a datatype IRI, found {self.describe(datatype)}")
            return Literal(token.value, XSD_STRING)
        return None

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

    ###
    # FILTER

    def filter(self) -> FilterExpr:
        if self.is_keyword("BOUND"):
            return self.primary()
        self.expect_op("(")
        expr = self.disjunction()
        self.expect_op(")")
        return expr

    def disjunction(self) -> FilterExpr:
        expr = self.conjunction()
        while self.is_op("||"):
            self.advance()
            expr = Disjunction(expr, self.conjunction())
        return expr

    def conjunction(self) -> FilterExpr:
        expr = self.unary()
        while self.is_op("&&"):
            self.advance()
            expr = Conjunction(expr, self.unary())
        return expr

    def unary(self) -> FilterExpr:
        if self.is_op("!"):
            self.advance()
            return Negation(self.unary())
        return self.comparison()

    def comparison(self) -> FilterExpr:
        left = self.primary()
        if self.is_op("=") or self.is_op("!="):
            op = self.advance().value
            return Comparison(op, left, self.primary())
        if self.current.kind == "OP" and self.current.value in ("<", ">", "<=", ">=", "+", "-", "*", "/"):
            self.fail(f"{_UNSUPPORTED}: operator {self.current.value!r}")
        return left

    def primary(self) -> FilterExpr:
        token = self.current
        if self.is_op("("):
            self.advance()
            expr = self.disjunction()
            self.expect_op(")")
            return expr
        if token.kind == "VAR":
            self.advance()
            return VarRef(token.value[1:])
        if self.is_keyword("BOUND"):
            self.advance()
            self.expect_op("(")
            var = self.advance()
            if var.kind != "VAR":
                self.fail(f"expected a variable, found {self.describe(var)}", var)
            self.expect_op(")")
            return Bound(var.value[1:])
        if token.kind == "NAME" and token.value not in ("true", "false"):
            self.fail(f"{_UNSUPPORTED}: function {token.value}")
        if token.kind == "NUMBER":
            self.fail(f"{_UNSUPPORTED}: numeric literals")
        term = self.term()
        if term is None:
            self.fail(f"expected an expression, found {self.describe(token)}")
        return Constant(term)


def parse_query(text: t.Union[str, bytes]) -> Query:
    """
    Parses a SELECT query.

    :raises QuerySyntaxError: On malformed or unsupported input, with line and column.
    :raises UndefinedPrefix: When a prefixed name uses an undeclared label.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            raise QuerySyntaxError(diagnostic_at("", 0, f"query is not UTF-8: {e.reason}")) from None
    elif text.startswith("\ufeff"):
        text = text[1:]
    return _Parser(text).parse()


###
# Evaluation

Binding = t.Dict[str, Term]


def _extend(pattern: TriplePattern, binding: Binding, triple: Triple) -> t.Optional[Binding]:
    result = dict(binding)
    for slot, term in zip(pattern, triple):
        if isinstance(slot, Variable):
            if result.setdefault(slot.name, term) != term:
                return None
    return result


def _match(pattern: TriplePattern, binding: Binding, graph: Graph) -> t.Iterator[Binding]:
    concrete = [
        binding.get(slot.name) if isinstance(slot, Variable) else slot
        for slot in pattern
    ]
    for triple in graph.match(*concrete):
        extended = _extend(pattern, binding, triple)
        if extended is not None:
            yield extended


def _join(patterns: t.Iterable[TriplePattern], rows: t.List[Binding], graph: Graph) -> t.List[Binding]:
    for pattern in patterns:
        rows = [extended for row in rows for extended in _match(pattern, row, graph)]
        if not rows:
            break
    return rows


class _FilterError(Exception):
    pass


def _value(expr: FilterExpr, row: Binding) -> Term:
    if isinstance(expr, VarRef):
        if expr.name not in row:
            raise _FilterError(f"?{expr.name} is unbound")
        return row[expr.name]
    if isinstance(expr, Constant):
        return expr.term
    raise _FilterError("expected a term")


def _truth(expr: FilterExpr, row: Binding) -> t.Optional[bool]:
    """
    Evaluates to True, False or None (error).
    """
    if isinstance(expr, Bound):
        return expr.name in row

    if isinstance(expr, Comparison):
        try:
            left, right = _value(expr.left, row), _value(expr.right, row)
        except _FilterError:
            return None
        return (left == right) if expr.op == "=" else (left != right)

    if isinstance(expr, Negation):
        value = _truth(expr.operand, row)
        return None if value is None else not value

    if isinstance(expr, Conjunction):
        left, right = _truth(expr.left, row), _truth(expr.right, row)
        if left is False or right is False:
            return False
        if left is None or right is None:
            return None
        return True

    if isinstance(expr, Disjunction):
        left, right = _truth(expr.left, row), _truth(expr.right, row)
        if left is True or right is True:
            return True
        if left is None or right is None:
            return None
        return False

    # Effective boolean value of a bare term.
    try:
        term = _value(expr, row)
    except _FilterError:
        return None
    if isinstance(term, Literal):
        if term.datatype == XSD_BOOLEAN and term.lexical in ("true", "false"):
            return term.lexical == "true"
        if term.datatype == XSD_STRING:
            return term.lexical != ""
    return None


@dataclasses.dataclass(frozen=True)
class SolutionTable:
    header: t.Tuple[str, ...]
    #: One cell per header variable; UNBOUND cells are None.
    rows: t.Tuple[t.Tuple[t.Optional[Term], ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    def bindings(self) -> t.Iterator[t.Dict[str, t.Optional[Term]]]:
        for row in self.rows:
            yield dict(zip(self.header, row))

    def column(self, name: str) -> t.List[t.Optional[Term]]:
        index = self.header.index(name)
        return [row[index] for row in self.rows]


def _cell_key(cell: t.Optional[Term]) -> t.Tuple[int, str, str]:
    if cell is None:
        return (-1, "", "")
    return cell.sort_key()


def execute(query: Query, graph: Graph) -> SolutionTable:
    """
    Evaluates a query over a graph.

    Required patterns are joined, OPTIONAL blocks left-joined in order,
    filters applied last, then the projection and DISTINCT.
    """
    rows = _join(query.required_patterns, [{}], graph)

    for block in query.optional_blocks:
        joined: t.List[Binding] = []
        for row in rows:
            matches = _join(block, [row], graph)
            joined.extend(matches if matches else [row])
        rows = joined

    rows = [row for row in rows if all(_truth(f, row) is True for f in query.filters)]

    header = query.header
    cells = [tuple(row.get(name, UNBOUND) for name in header) for row in rows]
    if query.distinct:
        cells = list(dict.fromkeys(cells))
    cells.sort(key=lambda cells_: tuple(_cell_key(cell) for cell in cells_))

    logger.debug(f"Query produced {len(cells)} rows over {len(graph)} triples.")
    return SolutionTable(header, tuple(cells))


###
# Output

def format_table(
        table: SolutionTable,
        *,
        fmt: str = "table",
        prefixes: t.Optional[t.Mapping[str, IRI]] = None
) -> str:
    """
    Renders a solution table.

    :param fmt: "tsv" for tab-separated values with empty UNBOUND cells,
                "table" for aligned columns with an explicit UNBOUND marker.
    :param prefixes: Used to abbreviate IRIs.
    """
    usable = PrefixMap(prefixes or {})

    if fmt == "tsv":
        lines = ["\t".join(table.header)]
        for row in table.rows:
            lines.append("\t".join("" if cell is None else render_term(cell, usable) for cell in row))
        return "\n".join(lines) + "\n"

    if fmt != "table":
        raise ValueError(f"unknown table format {fmt!r}")

    rendered = [list(table.header)] + [
        ["UNBOUND" if cell is None else render_term(cell, usable) for cell in row]
        for row in table.rows
    ]
    widths = [max(len(line[i]) for line in rendered) for i in range(len(table.header))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() for line in rendered]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines) + "\n"
