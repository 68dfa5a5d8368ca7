# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2

import os
import csv
import tempfile
import textwrap
import unittest

from cssdh.terms import IRI, PrefixMap, TRUE
from cssdh.schema import shipped_schema
from cssdh.ingest import patient_iri
from cssdh.loops import to_thread
from cssdh.cq import CqKind, SuiteFormatError, load_suite, run_suite, format_results
from cssdh.vocab import DEFAULT_PREFIXES


DIR = os.path.dirname(__file__)
ROOT = os.path.dirname(DIR)
SUITE = os.path.join(ROOT, "cq")
PATIENTS = os.path.join(SUITE, "patients.ttl")
RECORDS = os.path.join(DIR, "fixtures", "patients100.csv")
P = "http://purl.org/net/for-coc#patient/"


def prefixes():
    result = PrefixMap(DEFAULT_PREFIXES)
    result.bind("p", P)
    return result


class SuiteTestCase(unittest.TestCase):

    def setUp(self):
        self._dir = tempfile.TemporaryDirectory()
        self.dir = self._dir.name

    def tearDown(self):
        self._dir.cleanup()

    def write(self, text, name="suite.toml"):
        path = os.path.join(self.dir, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(textwrap.dedent(text))
        return path

    def case(self, id="X", kind="dl", query="SubjectOfCare and Lives-in-low-income-area value true",
             dataset=PATIENTS, expected='["p:p1", "p:p4"]'):
        return textwrap.dedent(f"""
            [[case]]
            id = "{id}"
            kind = "{kind}"
            query = '''{query}'''
            dataset = '{dataset}'
            expected = {expected}
        """)

    def suite(self, *cases, name="suite.toml"):
        return self.write(f'[prefixes]\np = "{P}"\n' + "".join(cases), name)


class TestLoad(SuiteTestCase):

    def test_shipped_suite(self):
        suite = load_suite(SUITE)
        self.assertEqual([case.id for case in suite], ["CQ1", "CQ1-sparql", "CQ2", "CQ2-sparql", "CQ2-listing"])
        self.assertEqual(suite[0].kind, CqKind.DL)
        self.assertEqual(suite[0].expected, {IRI(P + "p1"), IRI(P + "p4")})
        self.assertEqual(suite[0].dataset, os.path.normpath(PATIENTS))
        self.assertIn(frozenset({("patient", IRI(P + "p6"))}), suite[3].expected)

    def test_relative_datasets(self):
        path = self.suite(self.case(dataset="data/patients.ttl"))
        self.assertEqual(load_suite(path)[0].dataset, os.path.join(self.dir, "data", "patients.ttl"))

    def test_kind_ignores_case(self):
        path = self.suite(self.case(kind="DL"))
        self.assertEqual(load_suite(path)[0].kind, CqKind.DL)

    def test_sparql_rows(self):
        path = self.suite(self.case(
            kind="sparql", query="SELECT ?s WHERE { ?s ?p ?o }",
            expected='[{ "?s" = "p:p1", o = "true" }]'
        ))
        expected = load_suite(path)[0].expected
        self.assertEqual(expected, {frozenset({("s", IRI(P + "p1")), ("o", TRUE)})})

    def test_empty_suite(self):
        path = self.suite()
        self.assertEqual(load_suite(path), [])
        self.assertEqual(run_suite([], shipped_schema()), [])
        self.assertEqual(format_results([]), "CQ: 0 passed, 0 failed")

    def test_directory_is_sorted(self):
        self.suite(self.case(id="B"), name="b.toml")
        self.suite(self.case(id="A"), name="a.toml")
        self.write("not a suite", name="notes.txt")
        self.assertEqual([case.id for case in load_suite(self.dir)], ["A", "B"])

    def test_duplicate_ids(self):
        self.suite(self.case(id="A"), name="a.toml")
        self.suite(self.case(id="A"), name="b.toml")
        with self.assertRaises(SuiteFormatError) as cm:
            load_suite(self.dir)
        self.assertIn("duplicate case id 'A'", str(cm.exception))

    def test_malformed(self):
        cases = {
            "unknown key": self.case() + 'colour = "blue"\n',
            "bad kind": self.case(kind="cypher"),
            "bad expected": self.case(expected='"p:p1"'),
            "row is no table": self.case(kind="sparql", query="SELECT * { ?s ?p ?o }", expected='["p:p1"]'),
            "undefined prefix": self.case(expected='["q:p1"]'),
            "bad term": self.case(expected='["p:p1 p:p2"]'),
            "term is no text": self.case(expected="[1]"),
        }
        for reason, text in cases.items():
            with self.subTest(reason=reason):
                with self.assertRaises(SuiteFormatError):
                    load_suite(self.suite(text))

        for reason, text in {
            "invalid toml": "[[case]\n",
            "unknown top-level key": 'version = 2\n',
            "missing keys": '[[case]]\nid = "A"\n',
            "empty id": '[[case]]\nid = ""\nkind = "dl"\nquery = "A"\ndataset = "x"\nexpected = []\n',
        }.items():
            with self.subTest(reason=reason):
                with self.assertRaises(SuiteFormatError):
                    load_suite(self.write(text))


class TestRun(SuiteTestCase):

    @classmethod
    def setUpClass(cls):
        cls.schema = shipped_schema()

    def test_shipped_suite_passes(self):
        results = run_suite(load_suite(SUITE), self.schema)
        self.assertTrue(all(result.passed for result in results), format_results(results, prefixes()))
        self.assertTrue(format_results(results).endswith("CQ: 5 passed, 0 failed"))

    def test_listing_keeps_unbound_cells_out(self):
        results = {result.id: result for result in run_suite(load_suite(SUITE), self.schema)}
        listing = results["CQ2-listing"].actual
        p3 = [row for row in listing if ("subjectOfcare", IRI(P + "p3")) in row]
        self.assertEqual(len(p3), 1)
        self.assertNotIn("CrowdingAtHome", {name for name, _ in p3[0]})

    def test_dl_and_sparql_agree(self):
        results = {result.id: result for result in run_suite(load_suite(SUITE), self.schema)}
        for dl, sparql in (("CQ1", "CQ1-sparql"), ("CQ2", "CQ2-sparql")):
            with self.subTest(case=dl):
                rows = {dict(row)["patient"] for row in results[sparql].actual}
                self.assertEqual(results[dl].actual, rows)

    def test_wrong_expectation(self):
        path = self.suite(self.case(id="X", expected='["p:p1", "p:p7"]'))
        [result] = run_suite(load_suite(path), self.schema)
        self.assertFalse(result.passed)
        self.assertEqual(result.unexpected, {IRI(P + "p4")})
        self.assertEqual(result.missing, {IRI(P + "p7")})
        self.assertEqual(
            format_results([result], prefixes()),
            "FAIL X: unexpected p:p4; missing p:p7\nCQ: 0 passed, 1 failed"
        )

    def test_errors_are_reported_per_case(self):
        path = self.suite(
            self.case(id="missing-data", dataset="nowhere.ttl"),
            self.case(id="bad-query", query="SubjectOfCare and"),
            self.case(id="fine"),
        )
        results = run_suite(load_suite(path), self.schema)
        self.assertEqual([result.id for result in results], ["missing-data", "bad-query", "fine"])
        self.assertIsNotNone(results[0].error)
        self.assertIn("unexpected end of expression", results[1].error)
        self.assertTrue(results[2].passed)
        self.assertTrue(format_results(results).startswith("ERROR missing-data: "))

    def test_unreadable_records_fail_only_their_case(self):
        undecodable = os.path.join(self.dir, "latin1.csv")
        with open(undecodable, "wb") as f:
            f.write(b"id,forename\np1,Jos\xe9\n")
        unquoted = self.write('id,forename\np1,"Ana\n', "unquoted.csv")
        path = self.suite(
            self.case(id="latin1", dataset=undecodable, expected="[]"),
            self.case(id="unquoted", dataset=unquoted, expected="[]"),
            self.case(id="fine"),
        )
        results = run_suite(load_suite(path), self.schema)
        self.assertEqual(results[0].error, "row 2: not valid UTF-8")
        self.assertTrue(results[1].error.startswith("row 2: "), results[1].error)
        self.assertTrue(results[2].passed)

    def test_existential_question(self):
        dataset = self.write(f"""\
            @prefix coc: <http://purl.org/net/for-coc#> .
            @prefix p: <{P}> .
            p:a1 coc:isAppointmentOf p:p1 .
            p:p2 coc:hasAppointment p:a2 .
            p:p3 a coc:SubjectOfCare .
        """, "appointments.ttl")
        path = self.suite(self.case(
            query="some coc:hasAppointment coc:HospitalAppointment",
            dataset=dataset, expected='["p:p1", "p:p2"]'
        ))
        [result] = run_suite(load_suite(path), self.schema)
        self.assertTrue(result.passed, format_results([result], prefixes()))

    def test_csv_dataset(self):
        with open(RECORDS, newline="", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        expected = [
            f'"p:{row["id"]}"' for row in rows
            if row["Lay-off-from-job"] == "true" and row["Crowding_at_home"] == "true"
        ]
        path = self.suite(self.case(
            query="SubjectOfCare and Lay-off-from-job value true and Crowding_at_home value true",
            dataset=RECORDS, expected=f"[{', '.join(expected)}]"
        ))
        [result] = run_suite(load_suite(path), self.schema)
        self.assertTrue(result.passed, format_results([result], prefixes()))
        self.assertEqual(len(result.actual), 18)
        self.assertIn(patient_iri(expected[0].strip('"')[2:]), result.actual)

    def test_order_does_not_matter(self):
        suite = load_suite(SUITE)
        forward = {result.id: result for result in run_suite(suite, self.schema)}
        backward = {result.id: result for result in run_suite(list(reversed(suite)), self.schema)}
        self.assertEqual(forward, backward)

    def test_threaded_runner(self):
        suite = load_suite(SUITE)
        self.assertEqual(run_suite(suite, self.schema, runner=to_thread), run_suite(suite, self.schema))
