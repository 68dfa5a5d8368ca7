# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2

import unittest

from cssdh.owl import AxiomSet, Declarations, Named, And, Or, Some, HasValue
from cssdh.owl import SubClassOf, EquivalentClasses, DisjointClasses, SubPropertyOf, InverseOf
from cssdh.owl import ObjectPropertyDomain, ObjectPropertyRange, DataPropertyDomain, DataPropertyRange
from cssdh.owl import extract_axioms, declarations_of, metrics, is_builtin
from cssdh.terms import OWL, RDF, RDFS, XSD, TRUE
from cssdh.turtle import parse_turtle
from cssdh.schema import shipped_schema
from cssdh.vocab import COC


PREAMBLE = """
@prefix coc: <http://purl.org/net/for-coc#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"""


def graph_of(text):
    graph, _ = parse_turtle(PREAMBLE + text)
    return graph


class TestClassExpressions(unittest.TestCase):

    def test_and_or_need_two_operands(self):
        with self.assertRaises(ValueError):
            And((Named(COC.A),))
        with self.assertRaises(ValueError):
            Or(())

    def test_expressions_are_values(self):
        self.assertEqual(Some(COC.p, Named(COC.A)), Some(COC.p, Named(COC.A)))
        self.assertEqual(len({HasValue(COC.p, TRUE), HasValue(COC.p, TRUE)}), 1)


class TestExtraction(unittest.TestCase):

    def test_reads_every_axiom_kind(self):
        axioms = extract_axioms(graph_of("""
            coc:A a owl:Class ; rdfs:subClassOf coc:B ; owl:equivalentClass coc:C ; owl:disjointWith coc:D .
            coc:B a owl:Class . coc:C a owl:Class . coc:D a owl:Class .
            coc:p a owl:ObjectProperty ; rdfs:subPropertyOf coc:q ; owl:inverseOf coc:q ;
                rdfs:domain coc:A ; rdfs:range coc:B .
            coc:q a owl:ObjectProperty .
            coc:d a owl:DatatypeProperty ; rdfs:domain coc:A ; rdfs:range xsd:boolean .
        """))
        self.assertEqual(axioms, {
            SubClassOf(COC.A, Named(COC.B)),
            EquivalentClasses(COC.A, COC.C),
            DisjointClasses(COC.A, COC.D),
            SubPropertyOf(COC.p, COC.q),
            InverseOf(COC.p, COC.q),
            ObjectPropertyDomain(COC.p, COC.A),
            ObjectPropertyRange(COC.p, COC.B),
            DataPropertyDomain(COC.d, COC.A),
            DataPropertyRange(COC.d, XSD.boolean),
        })
        self.assertEqual(axioms.dangling, ())
        self.assertEqual(axioms.unsupported, ())

    def test_declarations(self):
        graph = graph_of("""
            coc:A a owl:Class .
            coc:p a owl:ObjectProperty .
            coc:d a owl:DatatypeProperty .
            coc:n a owl:AnnotationProperty .
            coc:r a rdf:Property .
            coc:s a rdf:Property , owl:ObjectProperty .
        """)
        d = declarations_of(graph)
        self.assertEqual(d.classes, {COC.A})
        self.assertEqual(d.object_properties, {COC.p, COC.s})
        self.assertEqual(d.plain_properties, {COC.r})
        self.assertEqual(d.properties, {COC.p, COC.d, COC.n, COC.r, COC.s})
        self.assertTrue(d.is_class(OWL.Thing))
        self.assertTrue(d.is_datatype(XSD.string))
        self.assertTrue(d.is_property(RDFS.label))
        self.assertFalse(d.is_property(COC.zz))

    def test_dangling_references_are_collected(self):
        axioms = extract_axioms(graph_of("""
            coc:A a owl:Class ; rdfs:subClassOf coc:Ghost .
            coc:p rdfs:domain coc:A .
        """))
        self.assertIn(SubClassOf(COC.A, Named(COC.Ghost)), axioms)
        found = {(r.iri, r.expected) for r in axioms.dangling}
        self.assertEqual(found, {(COC.Ghost, "class"), (COC.p, "property")})

    def test_restrictions(self):
        axioms = extract_axioms(graph_of("""
            coc:A a owl:Class ;
                rdfs:subClassOf _:r1 , _:r2 .
            _:r1 a owl:Restriction ; owl:onProperty coc:p ; owl:someValuesFrom coc:B .
            _:r2 a owl:Restriction ; owl:onProperty coc:d ; owl:hasValue true .
            coc:B a owl:Class .
            coc:p a owl:ObjectProperty .
            coc:d a owl:DatatypeProperty .
        """))
        self.assertIn(SubClassOf(COC.A, Some(COC.p, Named(COC.B))), axioms)
        self.assertIn(SubClassOf(COC.A, HasValue(COC.d, TRUE)), axioms)

    def test_cardinality_is_reported_not_raised(self):
        axioms = extract_axioms(graph_of("""
            coc:A a owl:Class ; rdfs:subClassOf _:r .
            _:r a owl:Restriction ; owl:onProperty coc:p ; owl:minCardinality "1"^^xsd:nonNegativeInteger .
            coc:p a owl:ObjectProperty .
        """))
        self.assertEqual(len(axioms), 0)
        self.assertEqual(len(axioms.unsupported), 1)
        self.assertEqual(axioms.unsupported[0].subject, COC.A)
        self.assertIn("cardinality", axioms.unsupported[0].message)

    def test_undeclared_property_kind_follows_range(self):
        axioms = extract_axioms(graph_of("""
            coc:d rdfs:range xsd:boolean .
            coc:p rdfs:range coc:A .
            coc:A a owl:Class .
        """))
        self.assertIn(DataPropertyRange(COC.d, XSD.boolean), axioms)
        self.assertIn(ObjectPropertyRange(COC.p, COC.A), axioms)

    def test_axiom_set_merge(self):
        a = AxiomSet([SubClassOf(COC.A, Named(COC.B))], Declarations(classes=frozenset({COC.A})))
        b = AxiomSet([SubClassOf(COC.B, Named(COC.C))], Declarations(classes=frozenset({COC.B})))
        merged = a.merge(b)
        self.assertEqual(len(merged), 2)
        self.assertEqual(merged.declarations.classes, {COC.A, COC.B})
        self.assertEqual(merged.of_type(SubClassOf), list(merged))

    def test_axiom_set_equals_plain_set(self):
        axiom = SubClassOf(COC.A, Named(COC.B))
        self.assertEqual(AxiomSet([axiom]), {axiom})

    def test_is_builtin(self):
        self.assertTrue(is_builtin(RDF.type))
        self.assertTrue(is_builtin(XSD.boolean))
        self.assertFalse(is_builtin(COC.A))


class TestMetrics(unittest.TestCase):

    def test_shipped_schema(self):
        graph, _ = shipped_schema()
        summary = metrics(graph)
        self.assertEqual(
            (summary.class_count, summary.object_property_count, summary.data_property_count, summary.sdh_data_property_count),
            (171, 141, 210, 171)
        )
        self.assertEqual(summary.format(), "classes=171 objectProperties=141 dataProperties=210 sdhDataProperties=171")

    def test_blank_nodes_are_not_counted(self):
        summary = metrics(graph_of("""
            coc:A a owl:Class .
            _:x a owl:Class .
            coc:d a owl:DatatypeProperty ; coc:sdhCategory "EconomicStability" .
            coc:e a owl:DatatypeProperty .
        """))
        self.assertEqual(summary.format(), "classes=1 objectProperties=0 dataProperties=2 sdhDataProperties=1")
