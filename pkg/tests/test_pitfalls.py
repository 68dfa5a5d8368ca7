# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2

import os
import unittest

from cssdh.graph import Graph
from cssdh.terms import Literal, RDF, RDFS, OWL
from cssdh.turtle import parse_turtle
from cssdh.owl import extract_axioms
from cssdh.schema import shipped_schema
from cssdh.pitfalls import PitfallCode, Severity, scan
from cssdh.vocab import COC, DEFAULT_PREFIXES, NAMING_ALLOWANCE


DIR = os.path.join(os.path.dirname(__file__), "fixtures", "pitfalls")


def load(name):
    with open(os.path.join(DIR, name), "rb") as f:
        graph, _ = parse_turtle(f.read())
    return graph


class TestCatalog(unittest.TestCase):

    def test_each_fixture_triggers_its_code(self):
        for code in PitfallCode:
            with self.subTest(code=code):
                report = scan(load(f"{code.value.lower()}.ttl"))
                self.assertEqual(report.codes(), {code}, report.format())
                self.assertFalse(report.clean)

    def test_subjects(self):
        self.assertEqual(scan(load("pf01.ttl")).subjects(PitfallCode.PF01), {COC.Carer, COC.Relative})
        self.assertEqual(scan(load("pf02.ttl")).subjects(PitfallCode.PF02), {COC.knows})
        self.assertEqual(scan(load("pf03.ttl")).subjects(PitfallCode.PF03), {COC.Orphan})
        self.assertEqual(scan(load("pf04.ttl")).subjects(PitfallCode.PF04), {COC.Event})
        self.assertEqual(scan(load("pf05.ttl")).subjects(PitfallCode.PF05), {COC.Chimera})
        self.assertEqual(scan(load("pf06.ttl")).subjects(PitfallCode.PF06), {COC.care_unit})
        self.assertEqual(scan(load("pf07.ttl")).subjects(PitfallCode.PF07), {COC.Ghost})
        self.assertEqual(scan(load("pf08.ttl")).subjects(PitfallCode.PF08), {COC.Smokes})

    def test_severities(self):
        self.assertEqual(PitfallCode.PF01.severity, Severity.CRITICAL)
        self.assertEqual(PitfallCode.PF02.severity, Severity.IMPORTANT)
        self.assertEqual(PitfallCode.PF06.severity, Severity.MINOR)

    def test_format(self):
        report = scan(load("pf02.ttl"))
        lines = report.format(DEFAULT_PREFIXES).splitlines()
        self.assertEqual(lines, ["PF02 Important coc:knows property has no range", "PITFALLS: 1"])

    def test_findings_are_sorted(self):
        graph = load("pf01.ttl") | load("pf06.ttl") | load("pf03.ttl")
        findings = scan(graph).findings
        self.assertEqual(list(findings), sorted(findings, key=lambda f: f.sort_key()))
        self.assertEqual(findings[0].code, PitfallCode.PF01)

    def test_equivalent_classes_are_no_cycle(self):
        graph = load("pf01.ttl")
        graph.add(COC.Carer, OWL.equivalentClass, COC.Relative)
        self.assertNotIn(PitfallCode.PF01, scan(graph).codes())

    def test_self_loop_is_a_cycle(self):
        graph = Graph()
        graph.add(COC.Loop, RDF.type, OWL.Class)
        graph.add(COC.Loop, RDFS.label, Literal("loop"))
        graph.add(COC.Loop, RDFS.subClassOf, COC.Loop)
        self.assertEqual(scan(graph).codes(), {PitfallCode.PF01})

    def test_allowance(self):
        self.assertTrue(scan(load("pf06.ttl"), allowance=["care_unit"]).clean)

        graph = load("pf06.ttl")
        graph.add(NAMING_ALLOWANCE, RDF.type, OWL.AnnotationProperty)
        graph.add(NAMING_ALLOWANCE, RDFS.label, Literal("naming allowance"))
        graph.add(COC.ontology, NAMING_ALLOWANCE, Literal("care_unit"))
        self.assertNotIn(PitfallCode.PF06, scan(graph).codes())

    def test_custom_annotation(self):
        graph = load("pf08.ttl")
        self.assertTrue(scan(graph, annotation=COC.unusedAnnotation).clean)

    def test_axioms_may_be_passed(self):
        graph = load("pf05.ttl")
        self.assertEqual(scan(graph, extract_axioms(graph)).codes(), {PitfallCode.PF05})

    def test_empty_graph(self):
        report = scan(Graph())
        self.assertTrue(report.clean)
        self.assertEqual(report.format(), "PITFALLS: 0")


class TestShippedSchema(unittest.TestCase):

    def test_clean(self):
        graph, axioms = shipped_schema()
        report = scan(graph, axioms)
        self.assertEqual(report.format(), "PITFALLS: 0")

    def test_allowance_is_needed(self):
        graph, _ = shipped_schema()
        stripped = Graph(triple for triple in graph if triple.predicate != NAMING_ALLOWANCE)
        report = scan(stripped)
        self.assertEqual(report.codes(), {PitfallCode.PF06})
        self.assertEqual(report.subjects(PitfallCode.PF06), {COC.Crowding_at_home})
