# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2

import unittest

import rdflib

from cssdh.terms import IRI, BlankNode, Literal, Triple, Namespace, PrefixMap
from cssdh.terms import RDF, OWL, XSD, XSD_BOOLEAN, XSD_STRING, TRUE, FALSE, STANDARD_PREFIXES
from cssdh.terms import InvalidTerm, InvalidTriple, MalformedCurie, UndefinedPrefix
from cssdh.terms import boolean, expand_curie, quote
from cssdh.vocab import COC, DEFAULT_PREFIXES


class TestTerms(unittest.TestCase):

    def test_iri_must_be_absolute(self):
        with self.assertRaises(InvalidTerm):
            IRI("Patient")
        with self.assertRaises(InvalidTerm):
            IRI("http://example.org/with space")

    def test_iri_rejects_characters_turtle_cannot_write(self):
        for char in '<>"{}|^`\\\x00':
            with self.subTest(char=char):
                with self.assertRaises(InvalidTerm):
                    IRI(f"http://example.org/a{char}b")

    def test_iri_keeps_other_characters(self):
        for local in ("a%20b", "q?x=1&y=2", "café", "it's", "p(1)"):
            self.assertEqual(IRI(f"http://example.org/{local}").value, f"http://example.org/{local}")

    def test_blank_node_label_is_checked(self):
        self.assertEqual(BlankNode("b0").n3(), "_:b0")
        with self.assertRaises(InvalidTerm):
            BlankNode("not valid")

    def test_literals_compare_by_datatype(self):
        self.assertNotEqual(Literal("true"), TRUE)
        self.assertEqual(Literal("true", XSD_BOOLEAN), TRUE)
        self.assertEqual(Literal("x").datatype, XSD_STRING)

    def test_boolean(self):
        self.assertEqual(boolean(True), TRUE)
        self.assertEqual(boolean(False), FALSE)

    def test_triple_rejects_literal_subject(self):
        with self.assertRaises(InvalidTriple):
            Triple(Literal("x"), RDF.type, OWL.Class)  # type: ignore[arg-type]

    def test_triple_rejects_non_iri_predicate(self):
        with self.assertRaises(InvalidTriple):
            Triple(COC.p1, BlankNode("b"), OWL.Class)  # type: ignore[arg-type]

    def test_builtin_namespaces_agree_with_rdflib(self):
        self.assertEqual(RDF.type.value, str(rdflib.RDF.type))
        self.assertEqual(OWL.Class.value, str(rdflib.OWL.Class))
        self.assertEqual(XSD.boolean.value, str(rdflib.XSD.boolean))

    def test_namespace_membership(self):
        ns = Namespace("http://example.org/ns#")
        self.assertIn(ns.Thing, ns)
        self.assertNotIn(COC.Thing, ns)
        self.assertEqual(ns["Lay-off-from-job"].value, "http://example.org/ns#Lay-off-from-job")

    def test_quote_escapes(self):
        self.assertEqual(quote('a "b"\n\\'), '"a \\"b\\"\\n\\\\"')


class TestCuries(unittest.TestCase):

    def test_expand(self):
        self.assertEqual(expand_curie("coc:Lay-off-from-job", DEFAULT_PREFIXES), COC["Lay-off-from-job"])
        self.assertEqual(expand_curie("fhir:Patient", DEFAULT_PREFIXES).value, "http://hl7.org/fhir/Patient")

    def test_expand_needs_colon(self):
        with self.assertRaises(MalformedCurie):
            expand_curie("Patient", DEFAULT_PREFIXES)

    def test_expand_unknown_prefix(self):
        with self.assertRaises(UndefinedPrefix) as cm:
            expand_curie("foo:Bar", STANDARD_PREFIXES)
        self.assertEqual(cm.exception.label, "foo")
        self.assertIsNone(cm.exception.diagnostic)

    def test_compact_prefers_longest_namespace(self):
        prefixes = PrefixMap(DEFAULT_PREFIXES)
        prefixes.bind("patient", COC.base + "patient/")
        self.assertEqual(prefixes.compact(IRI(COC.base + "patient/p1")), ("patient", "p1"))
        self.assertEqual(prefixes.compact(COC.SubjectOfCare), ("coc", "SubjectOfCare"))
        self.assertIsNone(prefixes.compact(IRI("urn:x:y")))
