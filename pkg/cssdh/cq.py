# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.cq runs competency questions against the schema.

A suite is a TOML file (or a directory of them) with one [[case]] table
per question:

    [prefixes]
    p = "http://purl.org/net/for-coc#patient/"

    [[case]]
    id = "CQ1"
    description = "Which subjects of care live in a low-income area?"
    kind = "dl"
    query = "SubjectOfCare and Lives-in-low-income-area value true"
    dataset = "patients.ttl"
    expected = ["p:p1", "p:p4"]

DL cases expect a list of individuals. SPARQL cases expect a list of
rows, each a table from variable name to term; a variable missing from
the table is expected to be unbound.

    >>> suite = load_suite("cq")
    >>> results = run_suite(suite, shipped_schema())
    >>> print(format_results(results))

Answers are compared as sets. A case that fails to load its dataset or
to parse its query is reported as an error of that case; the rest of the
suite still runs.
"""
import os
import enum
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
import dataclasses
import typing as t
from concurrent.futures import Future

from cssdh._helpers import CssdhError
from cssdh.graph import Graph
from cssdh.terms import IRI, Term, PrefixMap, UndefinedPrefix
from cssdh.owl import AxiomSet
from cssdh.turtle import TurtleSyntaxError, parse_turtle, parse_term, render_term
from cssdh.reasoner import materialize, evaluate
from cssdh.dl import parse_dl
from cssdh.sparql import parse_query, execute
from cssdh.ingest import load_records, to_graph
from cssdh.vocab import DEFAULT_NAMESPACE, DEFAULT_PREFIXES
from cssdh.loops import Runner, inline_runner


__all__ = [
    "CqKind", "CqCase", "CqResult", "SuiteFormatError",
    "load_suite", "run_suite", "format_results"
]


logger = logging.getLogger(__name__)


class SuiteFormatError(CssdhError):
    pass


class CqKind(str, enum.Enum):
    SPARQL = "sparql"
    DL = "dl"


#: A SPARQL answer row: the bound variables and their values.
Row = t.FrozenSet[t.Tuple[str, Term]]
Answer = t.Union[Term, Row]


@dataclasses.dataclass(frozen=True)
class CqCase:
    id: str
    description: str
    kind: CqKind
    query: str
    dataset: str
    expected: t.FrozenSet[Answer]
    prefixes: PrefixMap = dataclasses.field(default_factory=lambda: PrefixMap(DEFAULT_PREFIXES))


@dataclasses.dataclass(frozen=True)
class CqResult:
    id: str
    actual: t.FrozenSet[Answer] = frozenset()
    #: Answers that were returned but not expected.
    unexpected: t.FrozenSet[Answer] = frozenset()
    #: Answers that were expected but not returned.
    missing: t.FrozenSet[Answer] = frozenset()
    #: Set when the case could not be run at all.
    error: t.Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.unexpected and not self.missing


###
# Loading

_CASE_KEYS = {"id", "description", "kind", "query", "dataset", "expected"}
_REQUIRED_KEYS = _CASE_KEYS - {"description"}


def _term(text: t.Any, prefixes: PrefixMap, where: str) -> Term:
    if not isinstance(text, str):
        raise SuiteFormatError(f"{where}: expected a term written as text, found {text!r}")
    try:
        return parse_term(text, prefixes)
    except (TurtleSyntaxError, UndefinedPrefix) as e:
        raise SuiteFormatError(f"{where}: {e}") from None


def _expected(kind: CqKind, raw: t.Any, prefixes: PrefixMap, where: str) -> t.FrozenSet[Answer]:
    if not isinstance(raw, list):
        raise SuiteFormatError(f"{where}: expected must be a list")

    if kind == CqKind.DL:
        return frozenset(_term(item, prefixes, where) for item in raw)

    rows: t.Set[Answer] = set()
    for item in raw:
        if not isinstance(item, dict):
            raise SuiteFormatError(f"{where}: SPARQL rows must be tables of variable names")
        rows.add(frozenset(
            (name.lstrip("?$"), _term(value, prefixes, f"{where}, ?{name}"))
            for name, value in item.items()
        ))
    return frozenset(rows)


def _case(raw: t.Any, index: int, base: str, prefixes: PrefixMap, path: str) -> CqCase:
    where = f"{path}: case {index + 1}"
    if not isinstance(raw, dict):
        raise SuiteFormatError(f"{where}: expected a table")

    unknown = set(raw) - _CASE_KEYS
    if unknown:
        raise SuiteFormatError(f"{where}: unknown keys {', '.join(sorted(unknown))}")
    missing = _REQUIRED_KEYS - set(raw)
    if missing:
        raise SuiteFormatError(f"{where}: missing keys {', '.join(sorted(missing))}")

    for key in ("id", "query", "dataset", "kind"):
        if not isinstance(raw[key], str) or not raw[key]:
            raise SuiteFormatError(f"{where}: {key} must be a non-empty string")

    try:
        kind = CqKind(raw["kind"].lower())
    except ValueError:
        raise SuiteFormatError(f"{where}: unknown kind {raw['kind']!r}") from None

    where = f"{path}: case {raw['id']}"
    return CqCase(
        id=raw["id"],
        description=str(raw.get("description", "")),
        kind=kind,
        query=raw["query"],
        dataset=os.path.normpath(os.path.join(base, raw["dataset"])),
        expected=_expected(kind, raw["expected"], prefixes, where),
        prefixes=prefixes,
    )


def _load_file(path: str) -> t.List[CqCase]:
    with open(path, "rb") as f:
        try:
            document = tomllib.load(f)
        except (tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
            raise SuiteFormatError(f"{path}: {e}") from None

    unknown = set(document) - {"prefixes", "case"}
    if unknown:
        raise SuiteFormatError(f"{path}: unknown keys {', '.join(sorted(unknown))}")

    prefixes = PrefixMap(DEFAULT_PREFIXES)
    raw_prefixes = document.get("prefixes", {})
    if not isinstance(raw_prefixes, dict):
        raise SuiteFormatError(f"{path}: prefixes must be a table")
    for label, namespace in raw_prefixes.items():
        try:
            prefixes.bind(label, namespace)
        except CssdhError as e:
            raise SuiteFormatError(f"{path}: prefix {label}: {e}") from None

    cases = document.get("case", [])
    if not isinstance(cases, list):
        raise SuiteFormatError(f"{path}: case must be an array of tables")

    base = os.path.dirname(path)
    return [_case(raw, index, base, prefixes, path) for index, raw in enumerate(cases)]


def load_suite(path: str) -> t.List[CqCase]:
    """
    Loads a suite from a TOML file or from every *.toml file in a directory.

    Datasets are resolved relative to the file that names them.

    :raises SuiteFormatError: On malformed cases or duplicate ids.
    """
    if os.path.isdir(path):
        files = sorted(
            os.path.join(path, name) for name in os.listdir(path)
            if name.endswith(".toml")
        )
    else:
        files = [path]

    suite: t.List[CqCase] = []
    seen: t.Set[str] = set()
    for file in files:
        for case in _load_file(file):
            if case.id in seen:
                raise SuiteFormatError(f"{file}: duplicate case id {case.id!r}")
            seen.add(case.id)
            suite.append(case)

    logger.debug(f"Loaded {len(suite)} cases from {len(files)} suite files.")
    return suite


###
# Running

def _dataset(path: str) -> Graph:
    if path.endswith(".csv"):
        return to_graph(load_records(path))
    with open(path, "rb") as f:
        graph, _ = parse_turtle(f.read())
    return graph


def _answers(case: CqCase, graph: Graph, axioms: AxiomSet) -> t.FrozenSet[Answer]:
    if case.kind == CqKind.DL:
        expr = parse_dl(case.query, namespace=DEFAULT_NAMESPACE, prefixes=case.prefixes)
        return frozenset(evaluate(expr, graph, axioms))

    table = execute(parse_query(case.query), graph)
    return frozenset(
        frozenset((name, value) for name, value in binding.items() if value is not None)
        for binding in table.bindings()
    )


def _run_case(case: CqCase, schema: t.Tuple[Graph, AxiomSet]) -> CqResult:
    schema_graph, axioms = schema
    try:
        data = _dataset(case.dataset)
        actual = _answers(case, materialize(data | schema_graph, axioms), axioms)
    except (CssdhError, OSError) as e:
        logger.warning(f"Competency question {case.id} could not be run: {e}")
        return CqResult(case.id, error=str(e))

    return CqResult(
        case.id,
        actual=actual,
        unexpected=actual - case.expected,
        missing=case.expected - actual,
    )


def run_suite(
        suite: t.Sequence[CqCase],
        schema: t.Tuple[Graph, AxiomSet],
        *,
        runner: t.Optional[Runner] = None
) -> t.List[CqResult]:
    """
    Runs every case of the suite.

    Each case reads its own dataset, joins it with the schema graph and
    materializes the result before the query runs; cases share no state.

    :param runner: Decides where each case runs. Defaults to running the
                   cases one after another in the calling thread. Results
                   are always returned in suite order.
    """
    if runner is None:
        runner = inline_runner

    futures: t.List[Future[CqResult]] = [
        runner(lambda case=case: _run_case(case, schema))
        for case in suite
    ]
    results = [future.result() for future in futures]

    failed = sum(1 for result in results if not result.passed)
    logger.info(f"Ran {len(results)} competency questions, {failed} failed.")
    return results


###
# Output

def _render(answer: Answer, prefixes: PrefixMap) -> str:
    if isinstance(answer, frozenset):
        cells = sorted(answer, key=lambda cell: cell[0])
        return "{" + ", ".join(f"?{name}={render_term(value, prefixes)}" for name, value in cells) + "}"
    return render_term(answer, prefixes)


def _listing(answers: t.AbstractSet[Answer], prefixes: PrefixMap) -> str:
    return " ".join(sorted(_render(answer, prefixes) for answer in answers))


def format_results(results: t.Sequence[CqResult], prefixes: t.Optional[t.Mapping[str, IRI]] = None) -> str:
    """
    One line per case followed by a summary line.

        PASS CQ1: 2 answers
        FAIL CQ2: unexpected p:p3; missing p:p7
        CQ: 1 passed, 1 failed
    """
    usable = PrefixMap(DEFAULT_PREFIXES if prefixes is None else prefixes)
    lines = []
    for result in results:
        if result.error is not None:
            lines.append(f"ERROR {result.id}: {result.error}")
        elif result.passed:
            lines.append(f"PASS {result.id}: {len(result.actual)} answers")
        else:
            details = []
            if result.unexpected:
                details.append(f"unexpected {_listing(result.unexpected, usable)}")
            if result.missing:
                details.append(f"missing {_listing(result.missing, usable)}")
            lines.append(f"FAIL {result.id}: {'; '.join(details)}")

    passed = sum(1 for result in results if result.passed)
    lines.append(f"CQ: {passed} passed, {len(results) - passed} failed")
    return "\n".join(lines)
