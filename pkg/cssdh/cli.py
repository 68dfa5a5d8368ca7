# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
The cssdh command.

    $ cssdh schema build --out schema.ttl
    $ cssdh metrics schema.ttl
    classes=171 objectProperties=141 dataProperties=210 sdhDataProperties=171
    $ cssdh scan schema.ttl
    PITFALLS: 0

Exit status 0 means success, 1 a domain failure (inconsistent data,
pitfalls, failed competency questions or a failed verification) and
2 a usage error or unreadable input.
"""
import sys
import logging
import argparse
import typing as t

from cssdh._helpers import CssdhError
from cssdh.graph import Graph
from cssdh.terms import PrefixMap, UndefinedPrefix
from cssdh.owl import AxiomSet, extract_axioms, metrics
from cssdh.turtle import parse_turtle, serialize_turtle, render_term
from cssdh.reasoner import materialize, check_consistency, evaluate
from cssdh.dl import parse_dl
from cssdh.sparql import QuerySyntaxError, parse_query, execute, format_table
from cssdh.schema import Manifest, ManifestError, load_manifest, shipped_manifest, verify_manifest, build_schema, shipped_schema
from cssdh.ingest import RecordFormatError, load_records, to_graph
from cssdh.pitfalls import scan
from cssdh.cq import load_suite, run_suite, format_results
from cssdh.loops import inline_runner, to_thread
from cssdh.vocab import DEFAULT_PREFIXES


__all__ = ["dispatch", "main"]


logger = logging.getLogger(__name__)


OK = 0
FAILED = 1
USAGE = 2


class _InputError(CssdhError):
    """
    Input that cannot be read or parsed. Always reported with exit status 2.
    """


###
# Input

def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e:
        raise _InputError(f"{path}: {e.strerror}") from None


def _turtle(path: str) -> t.Tuple[Graph, PrefixMap]:
    data = _read(path)
    try:
        return parse_turtle(data)
    except CssdhError as e:
        raise _InputError(f"{path}:{e}") from None


def _schema(path: t.Optional[str]) -> t.Tuple[Graph, AxiomSet, PrefixMap]:
    if path is None:
        graph, axioms = shipped_schema()
        return graph, axioms, PrefixMap(shipped_manifest().prefix_map)
    graph, prefixes = _turtle(path)
    return graph, extract_axioms(graph), prefixes


def _manifest(path: t.Optional[str]) -> Manifest:
    if path is None:
        return shipped_manifest()
    try:
        return load_manifest(path)
    except OSError as e:
        raise _InputError(f"{path}: {e.strerror}") from None
    except ManifestError as e:
        raise _InputError(f"{path}: {e}") from None


def _prefixes(*maps: t.Mapping[str, t.Any]) -> PrefixMap:
    result = PrefixMap(DEFAULT_PREFIXES)
    for mapping in maps:
        result.update(mapping)
    return result


def _write(path: t.Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise _InputError(f"{path}: {e.strerror}") from None
    logger.info(f"Wrote {path}.")


###
# Commands

def _schema_build(args: argparse.Namespace) -> int:
    manifest = _manifest(args.manifest)
    try:
        graph, _ = build_schema(manifest)
    except ManifestError as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILED
    _write(args.out, serialize_turtle(graph, manifest.prefix_map))
    return OK


def _schema_verify(args: argparse.Namespace) -> int:
    report = verify_manifest(_manifest(args.manifest))
    print(report.format())
    if not report.passed:
        print(f"error: {len(report.failures)} checks failed", file=sys.stderr)
        return FAILED
    return OK


def _metrics(args: argparse.Namespace) -> int:
    graph, _ = _turtle(args.schema)
    print(metrics(graph).format())
    return OK


def _validate(args: argparse.Namespace) -> int:
    graph, axioms, _ = _schema(args.schema)
    if args.data is not None:
        data, _ = _turtle(args.data)
        graph = graph | data

    report = check_consistency(graph, axioms)
    print(report.format())
    if not report.consistent:
        print(f"error: {len(report.violations)} violations", file=sys.stderr)
        return FAILED
    return OK


def _query(args: argparse.Namespace) -> int:
    try:
        query = parse_query(_read(args.query))
    except (QuerySyntaxError, UndefinedPrefix) as e:
        raise _InputError(f"{args.query}:{e}") from None
    graph, data_prefixes = _turtle(args.data)
    schema_prefixes: t.Mapping[str, t.Any] = {}
    if args.schema is not None:
        schema, schema_prefixes = _turtle(args.schema)
        graph = graph | schema

    if not args.no_reason:
        graph = materialize(graph, extract_axioms(graph))

    table = execute(query, graph)
    _write(None, format_table(table, fmt=args.format, prefixes=_prefixes(schema_prefixes, data_prefixes, query.prefixes)))
    return OK


def _dlquery(args: argparse.Namespace) -> int:
    schema, axioms, schema_prefixes = _schema(args.schema)
    data, data_prefixes = _turtle(args.data)
    prefixes = _prefixes(schema_prefixes, data_prefixes)

    expr = parse_dl(args.expr, prefixes=prefixes)
    answers = evaluate(expr, materialize(data | schema, axioms), axioms)
    for answer in sorted(render_term(term, prefixes) for term in answers):
        print(answer)
    return OK


def _scan(args: argparse.Namespace) -> int:
    graph, prefixes = _turtle(args.schema)
    report = scan(graph)
    print(report.format(_prefixes(prefixes)))
    return OK if report.clean else FAILED


def _ingest(args: argparse.Namespace) -> int:
    manifest = _manifest(args.manifest)
    try:
        records = load_records(args.records, manifest, strict=not args.lenient)
    except OSError as e:
        raise _InputError(f"{args.records}: {e.strerror}") from None
    except RecordFormatError as e:
        raise _InputError(f"{args.records}: {e}") from None

    prefixes = manifest.prefix_map
    prefixes.bind("patient", f"{manifest.namespace}patient/")
    _write(args.out, serialize_turtle(to_graph(records, manifest), prefixes))
    return OK


def _cq_run(args: argparse.Namespace) -> int:
    try:
        suite = load_suite(args.suite)
    except OSError as e:
        raise _InputError(f"{args.suite}: {e.strerror}") from None
    graph, axioms, prefixes = _schema(args.schema)
    results = run_suite(suite, (graph, axioms), runner=to_thread if args.parallel else inline_runner)

    case_prefixes = suite[0].prefixes if suite else {}
    print(format_results(results, _prefixes(prefixes, case_prefixes)))
    return OK if all(result.passed for result in results) else FAILED


###
# Parser

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cssdh",
        description="Build, check and query the CSSDH ontology.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log progress (-vv for details).")
    commands = parser.add_subparsers(dest="command", required=True)

    schema = commands.add_parser("schema", help="Work with the term manifest.")
    schema_commands = schema.add_subparsers(dest="schema_command", required=True)

    build = schema_commands.add_parser("build", help="Generate the ontology from a manifest.")
    build.add_argument("--manifest", help="Manifest file. Defaults to the shipped manifest.")
    build.add_argument("--out", help="Turtle output file. Defaults to standard output.")
    build.set_defaults(func=_schema_build)

    verify = schema_commands.add_parser("verify", help="Check a manifest against the CSSDH profile.")
    verify.add_argument("--manifest", help="Manifest file. Defaults to the shipped manifest.")
    verify.set_defaults(func=_schema_verify)

    metrics_ = commands.add_parser("metrics", help="Count classes and properties of a schema.")
    metrics_.add_argument("schema", help="Schema in Turtle.")
    metrics_.set_defaults(func=_metrics)

    validate = commands.add_parser("validate", help="Materialize and check consistency.")
    validate.add_argument("schema", help="Schema in Turtle.")
    validate.add_argument("--data", help="Individuals in Turtle.")
    validate.set_defaults(func=_validate)

    query = commands.add_parser("query", help="Run a SPARQL SELECT query.")
    query.add_argument("--data", required=True, help="Individuals in Turtle.")
    query.add_argument("--schema", help="Schema in Turtle, joined with the data.")
    query.add_argument("--query", required=True, help="Query file.")
    query.add_argument("--format", choices=("table", "tsv"), default="table")
    query.add_argument("--no-reason", action="store_true", help="Query the asserted triples only.")
    query.set_defaults(func=_query)

    dlquery = commands.add_parser("dlquery", help="List the individuals of a class expression.")
    dlquery.add_argument("--data", required=True, help="Individuals in Turtle.")
    dlquery.add_argument("--schema", required=True, help="Schema in Turtle.")
    dlquery.add_argument("--expr", required=True, help="Class expression.")
    dlquery.set_defaults(func=_dlquery)

    scan_ = commands.add_parser("scan", help="Look for modelling pitfalls.")
    scan_.add_argument("schema", help="Schema in Turtle.")
    scan_.set_defaults(func=_scan)

    ingest = commands.add_parser("ingest", help="Convert patient records into individuals.")
    ingest.add_argument("--records", required=True, help="CSV file with a header row.")
    ingest.add_argument("--manifest", help="Manifest file. Defaults to the shipped manifest.")
    ingest.add_argument("--out", help="Turtle output file. Defaults to standard output.")
    ingest.add_argument("--lenient", action="store_true", help="Skip unknown columns instead of failing.")
    ingest.set_defaults(func=_ingest)

    cq = commands.add_parser("cq", help="Competency questions.")
    cq_commands = cq.add_subparsers(dest="cq_command", required=True)
    cq_run = cq_commands.add_parser("run", help="Run a suite.")
    cq_run.add_argument("--suite", required=True, help="Suite file or directory.")
    cq_run.add_argument("--schema", help="Schema in Turtle. Defaults to the shipped schema.")
    cq_run.add_argument("--parallel", action="store_true", help="Run cases concurrently.")
    cq_run.set_defaults(func=_cq_run)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def dispatch(argv: t.Sequence[str]) -> int:
    """
    Runs one invocation and returns its exit status.
    """
    parser = _parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE

    _configure_logging(args.verbose)

    try:
        return args.func(args)
    except CssdhError as e:
        print(f"error: {e}", file=sys.stderr)
    return USAGE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
