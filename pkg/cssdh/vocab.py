# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
Namespaces and terms of the CSSDH model itself.

The model keeps the continuity-of-care namespace (coc:) and types
patients additionally with fhir:Patient.
"""
from cssdh.terms import Namespace, PrefixMap, IRI, STANDARD_PREFIXES


__all__ = [
    "COC", "FHIR", "DEFAULT_NAMESPACE", "DEFAULT_PREFIXES",
    "SDH_CATEGORY", "NAMING_ALLOWANCE",
    "SUBJECT_OF_CARE", "PATIENT", "FORENAME", "SURNAME",
]


DEFAULT_NAMESPACE = "http://purl.org/net/for-coc#"

COC = Namespace(DEFAULT_NAMESPACE)
FHIR = Namespace("http://hl7.org/fhir/")

#: Annotation carried by every SDH data property; its value names the category.
SDH_CATEGORY = COC.sdhCategory
#: Ontology-header annotation listing local names exempt from naming checks.
NAMING_ALLOWANCE = COC.namingAllowance

SUBJECT_OF_CARE = COC.SubjectOfCare
PATIENT = FHIR.Patient
FORENAME = COC.forename
SURNAME = COC.surname

DEFAULT_PREFIXES = PrefixMap(STANDARD_PREFIXES)
DEFAULT_PREFIXES.bind("coc", IRI(COC.base))
DEFAULT_PREFIXES.bind("fhir", IRI(FHIR.base))
