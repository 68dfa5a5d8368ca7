# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh - An ontology engine for continuity of care and the social determinants of health.

Parts:
- terms, graph: RDF terms and an indexed in-memory triple store.
- turtle:       Read and write the Turtle subset used by the project.
- owl:          OWL axioms, declarations and schema metrics.
- reasoner:     Materialization, consistency, subsumption and class expressions.
- dl:           A small text syntax for class expressions.
- sparql:       SELECT queries with OPTIONAL and FILTER.
- schema:       Generate the CSSDH ontology from its term manifest.
- ingest:       Turn patient records into individuals.
- pitfalls:     Scan a schema for common modelling pitfalls.
- cq:           Run competency question suites.
- cli:          The cssdh command.
"""
