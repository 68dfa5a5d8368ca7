# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2

import io
import os
import tempfile
import unittest
import contextlib

from cssdh.cli import dispatch
from cssdh.turtle import parse_turtle
from cssdh.terms import RDF
from cssdh.vocab import PATIENT


DIR = os.path.dirname(__file__)
ROOT = os.path.dirname(DIR)
FIXTURES = os.path.join(DIR, "fixtures")
PATIENTS = os.path.join(ROOT, "cq", "patients.ttl")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = dispatch(argv)
    return code, out.getvalue(), err.getvalue()


class CliTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls._dir = tempfile.TemporaryDirectory()
        cls.dir = cls._dir.name
        cls.schema = os.path.join(cls.dir, "schema.ttl")
        code, _, err = run("schema", "build", "--out", cls.schema)
        assert code == 0, err

    @classmethod
    def tearDownClass(cls):
        cls._dir.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)


class TestSchema(CliTestCase):

    def test_build_to_stdout(self):
        code, out, _ = run("schema", "build")
        self.assertEqual(code, 0)
        with open(self.schema, encoding="utf-8") as f:
            self.assertEqual(out, f.read())

    def test_verify(self):
        code, out, _ = run("schema", "verify")
        self.assertEqual(code, 0)
        self.assertIn("PASS counts: classes=171 objectProperties=141 dataProperties=210 sdhDataProperties=171", out)

    def test_verify_failure(self):
        manifest = self.path("small.toml")
        with open(manifest, "w", encoding="utf-8") as f:
            f.write('entries = [ { term = "A", kind = "Class", label = "a", source = "DOLCE" } ]\n')
        code, out, err = run("schema", "verify", "--manifest", manifest)
        self.assertEqual(code, 1)
        self.assertIn("FAIL counts", out)
        self.assertIn("checks failed", err)

    def test_build_refuses_broken_manifest(self):
        manifest = self.path("broken.toml")
        with open(manifest, "w", encoding="utf-8") as f:
            f.write('entries = [ { term = "A", kind = "Class", label = "a", parent = "B", source = "DOLCE" } ]\n')
        code, _, err = run("schema", "build", "--manifest", manifest)
        self.assertEqual(code, 1)
        self.assertIn("referential-closure", err)

    def test_unreadable_manifest(self):
        code, _, err = run("schema", "verify", "--manifest", self.path("missing.toml"))
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith("error: "))

    def test_metrics(self):
        code, out, _ = run("metrics", self.schema)
        self.assertEqual(code, 0)
        self.assertEqual(out, "classes=171 objectProperties=141 dataProperties=210 sdhDataProperties=171\n")

    def test_scan(self):
        code, out, _ = run("scan", self.schema)
        self.assertEqual(code, 0)
        self.assertEqual(out, "PITFALLS: 0\n")

        code, out, _ = run("scan", os.path.join(FIXTURES, "pitfalls", "pf03.ttl"))
        self.assertEqual(code, 1)
        self.assertIn("PF03 Minor coc:Orphan", out)


class TestData(CliTestCase):

    def test_validate(self):
        code, out, _ = run("validate", self.schema, "--data", PATIENTS)
        self.assertEqual((code, out), (0, "CONSISTENT\n"))

        code, out, err = run("validate", self.schema, "--data", os.path.join(FIXTURES, "violation.ttl"))
        self.assertEqual(code, 1)
        self.assertTrue(out.startswith("INCONSISTENT\nDisjointnessViolation "))
        self.assertIn("1 violations", err)

    def test_query(self):
        code, out, _ = run(
            "query", "--data", os.path.join(FIXTURES, "patients3.ttl"),
            "--query", os.path.join(FIXTURES, "layoff_crowding.rq"), "--format", "tsv"
        )
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), [
            "subjectOfcare\tforename\tLayofffromjob\tCrowdingAtHome",
            'p:p1\t"Ana"\ttrue\ttrue',
            'p:p2\t"Bruno"\ttrue\t',
            'p:p3\t"Carla"\tfalse\tfalse',
        ])

    def test_query_with_schema(self):
        query = self.path("cq1.rq")
        with open(query, "w", encoding="utf-8") as f:
            f.write("PREFIX coc: <http://purl.org/net/for-coc#>\nSELECT ?s WHERE { ?s a coc:SubjectOfCare }\n")
        code, out, _ = run("query", "--data", PATIENTS, "--schema", self.schema, "--query", query, "--format", "tsv")
        self.assertEqual(code, 0)
        self.assertEqual(len(out.splitlines()), 7)

        code, out, _ = run("query", "--data", PATIENTS, "--query", query, "--no-reason")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[-1], "-")

    def test_malformed_query(self):
        raw = os.path.join(FIXTURES, "layoff_crowding_raw.rq")
        code, out, err = run("query", "--data", PATIENTS, "--query", raw)
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn(f"{raw}:1:8: expected a prefix label", err)

    def test_malformed_data(self):
        data = self.path("bad.ttl")
        with open(data, "w", encoding="utf-8") as f:
            f.write("<http://example.org/a> <http://example.org/b> .\n")
        code, _, err = run("validate", self.schema, "--data", data)
        self.assertEqual(code, 2)
        self.assertIn(f"{data}:1:", err)

    def test_dlquery(self):
        code, out, _ = run(
            "dlquery", "--data", PATIENTS, "--schema", self.schema,
            "--expr", "SubjectOfCare and Lives-in-low-income-area value true"
        )
        self.assertEqual((code, out), (0, "p:p1\np:p4\n"))

    def test_ingest(self):
        out_path = self.path("patients.ttl")
        code, _, _ = run("ingest", "--records", os.path.join(FIXTURES, "patients100.csv"), "--out", out_path)
        self.assertEqual(code, 0)
        with open(out_path, "rb") as f:
            graph, prefixes = parse_turtle(f.read())
        self.assertEqual(len(graph.subjects(RDF.type, PATIENT)), 100)
        self.assertIn("patient", prefixes)

    def test_ingest_rejects_bad_records(self):
        records = self.path("bad.csv")
        with open(records, "w", encoding="utf-8") as f:
            f.write("id,forename,Lay-off-from-job\np1,Ana,maybe\n")
        code, _, err = run("ingest", "--records", records)
        self.assertEqual(code, 2)
        self.assertIn("'maybe' is not true or false", err)

    def test_ingest_rejects_undecodable_records(self):
        records = self.path("latin1.csv")
        with open(records, "wb") as f:
            f.write(b"id,forename\np1,Ana\np2,Jos\xe9\n")
        code, out, err = run("ingest", "--records", records)
        self.assertEqual((code, out), (2, ""))
        self.assertEqual(err, f"error: {records}: row 3: not valid UTF-8\n")

    def test_cq_run(self):
        for extra in ((), ("--parallel",), ("--schema", self.schema)):
            with self.subTest(extra=extra):
                code, out, _ = run("cq", "run", "--suite", os.path.join(ROOT, "cq"), *extra)
                self.assertEqual(code, 0)
                self.assertEqual(out.splitlines()[-1], "CQ: 5 passed, 0 failed")
                self.assertIn("PASS CQ1: 2 answers", out)


class TestUsage(unittest.TestCase):

    def test_usage_errors(self):
        for argv in ((), ("frobnicate",), ("query", "--data", "x.ttl"), ("schema",)):
            with self.subTest(argv=argv):
                code, _, _ = run(*argv)
                self.assertEqual(code, 2)

    def test_help(self):
        code, out, _ = run("--help")
        self.assertEqual(code, 0)
        self.assertIn("cq", out)

    def test_missing_input(self):
        code, _, err = run("metrics", "does-not-exist.ttl")
        self.assertEqual(code, 2)
        self.assertEqual(err, "error: does-not-exist.ttl: No such file or directory\n")

    def test_missing_suite(self):
        code, out, err = run("cq", "run", "--suite", "does-not-exist.toml")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertEqual(err, "error: does-not-exist.toml: No such file or directory\n")

    def test_undecodable_suite(self):
        with tempfile.TemporaryDirectory() as dir:
            path = os.path.join(dir, "suite.toml")
            with open(path, "wb") as f:
                f.write(b'[[case]]\nid = "\xff"\n')
            code, _, err = run("cq", "run", "--suite", path)
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith(f"error: {path}: "))
