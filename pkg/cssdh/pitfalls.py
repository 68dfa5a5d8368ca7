# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.pitfalls lints a schema graph against a catalog of modelling pitfalls.

    >>> report = scan(graph, axioms)
    >>> report.clean
    True
    >>> print(report.format())
    PITFALLS: 0

Catalog:

PF01  Critical   subclass cycle not explained by equivalence
PF02  Important  object or data property without domain or range
PF03  Minor      class without any hierarchy, domain or range link
PF04  Minor      declared entity without rdfs:label
PF05  Critical   class below two disjoint classes
PF06  Minor      local name breaking the naming convention of its kind
PF07  Important  reference to an undeclared class or property
PF08  Critical   SDH data property not ranged xsd:boolean

Findings are sorted by code, then subject.
"""
import re
import enum
import logging
import dataclasses
import typing as t

from cssdh._helpers import local_name
from cssdh.graph import Graph
from cssdh.terms import IRI, Literal, PrefixMap, Term
from cssdh.terms import OWL, RDF, RDFS, XSD_BOOLEAN
from cssdh.turtle import render_term
from cssdh.owl import Axiom, AxiomSet, Declarations, DisjointClasses, EquivalentClasses, Named, SubClassOf
from cssdh.owl import declarations_of, extract_axioms, is_builtin
from cssdh.reasoner import RuleIndex
from cssdh.vocab import SDH_CATEGORY, NAMING_ALLOWANCE


__all__ = ["PitfallCode", "Severity", "Pitfall", "PitfallReport", "scan"]


logger = logging.getLogger(__name__)


class Severity(str, enum.Enum):
    CRITICAL = "Critical"
    IMPORTANT = "Important"
    MINOR = "Minor"


class PitfallCode(str, enum.Enum):
    PF01 = "PF01"
    PF02 = "PF02"
    PF03 = "PF03"
    PF04 = "PF04"
    PF05 = "PF05"
    PF06 = "PF06"
    PF07 = "PF07"
    PF08 = "PF08"

    @property
    def severity(self) -> Severity:
        return _SEVERITIES[self]


_SEVERITIES = {
    PitfallCode.PF01: Severity.CRITICAL,
    PitfallCode.PF02: Severity.IMPORTANT,
    PitfallCode.PF03: Severity.MINOR,
    PitfallCode.PF04: Severity.MINOR,
    PitfallCode.PF05: Severity.CRITICAL,
    PitfallCode.PF06: Severity.MINOR,
    PitfallCode.PF07: Severity.IMPORTANT,
    PitfallCode.PF08: Severity.CRITICAL,
}


@dataclasses.dataclass(frozen=True, slots=True)
class Pitfall:
    code: PitfallCode
    subject: IRI
    message: str

    @property
    def severity(self) -> Severity:
        return self.code.severity

    def sort_key(self) -> t.Tuple[str, t.Tuple[int, str, str], str]:
        return (self.code.value, self.subject.sort_key(), self.message)

    def format(self, prefixes: t.Optional[PrefixMap] = None) -> str:
        return f"{self.code.value} {self.severity.value} {render_term(self.subject, prefixes)} {self.message}"


@dataclasses.dataclass(frozen=True)
class PitfallReport:
    findings: t.Tuple[Pitfall, ...] = ()

    @property
    def clean(self) -> bool:
        return not self.findings

    def codes(self) -> t.Set[PitfallCode]:
        return {finding.code for finding in self.findings}

    def subjects(self, code: PitfallCode) -> t.Set[IRI]:
        return {finding.subject for finding in self.findings if finding.code == code}

    def format(self, prefixes: t.Optional[PrefixMap] = None) -> str:
        lines = [finding.format(prefixes) for finding in self.findings]
        lines.append(f"PITFALLS: {len(self.findings)}")
        return "\n".join(lines)


_UPPER_CAMEL_RE = re.compile(r"^[A-Z][A-Za-z0-9]*$")
_LOWER_CAMEL_RE = re.compile(r"^[a-z][A-Za-z0-9]*$")
_HYPHENATED_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*(?:-[A-Za-z0-9]+)*$")


def _strongly_connected(edges: t.Mapping[IRI, t.Iterable[IRI]]) -> t.List[t.List[IRI]]:
    """
    Tarjan's algorithm without recursion.
    """
    index: t.Dict[IRI, int] = {}
    low: t.Dict[IRI, int] = {}
    stack: t.List[IRI] = []
    on_stack: t.Set[IRI] = set()
    components = []

    nodes = set(edges)
    for targets in edges.values():
        nodes.update(targets)

    for root in sorted(nodes, key=IRI.sort_key):
        if root in index:
            continue
        work = [(root, iter(sorted(edges.get(root, ()), key=IRI.sort_key)))]
        index[root] = low[root] = len(index)
        stack.append(root)
        on_stack.add(root)

        while work:
            node, successors = work[-1]
            advanced = False
            for nxt in successors:
                if nxt not in index:
                    index[nxt] = low[nxt] = len(index)
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(edges.get(nxt, ()), key=IRI.sort_key))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(component)

    return components


class _Scanner:

    def __init__(
            self,
            graph: Graph,
            axioms: AxiomSet,
            declarations: Declarations,
            annotation: IRI,
            allowance: t.Set[str]
    ) -> None:
        self.graph = graph
        self.axioms = axioms
        self.declarations = declarations
        self.annotation = annotation
        self.allowance = allowance
        self.findings: t.Set[Pitfall] = set()

    def report(self, code: PitfallCode, subject: IRI, message: str) -> None:
        self.findings.add(Pitfall(code, subject, message))

    def named_subclass_edges(self) -> t.Dict[IRI, t.Set[IRI]]:
        edges: t.Dict[IRI, t.Set[IRI]] = {}
        for axiom in self.axioms:
            if isinstance(axiom, SubClassOf) and isinstance(axiom.sup, Named):
                edges.setdefault(axiom.sub, set()).add(axiom.sup.c)
        return edges

    def pf01_cycles(self) -> None:
        # Classes asserted equivalent may legitimately subclass each other.
        group: t.Dict[IRI, IRI] = {}

        def find(c: IRI) -> IRI:
            while group.get(c, c) != c:
                c = group[c]
            return c

        for axiom in self.axioms:
            if isinstance(axiom, EquivalentClasses):
                group[find(axiom.a)] = find(axiom.b)

        edges = self.named_subclass_edges()
        for component in _strongly_connected(edges):
            if len(component) == 1:
                c = component[0]
                if c not in edges.get(c, ()):
                    continue
            if len({find(c) for c in component}) == 1 and len(component) > 1:
                continue
            members = ", ".join(sorted(local_name(c) for c in component))
            for c in component:
                self.report(PitfallCode.PF01, c, f"member of the subclass cycle {members}")

    def pf02_domain_range(self) -> None:
        for p in self.declarations.object_properties | self.declarations.data_properties:
            missing = [
                name for name, predicate in (("domain", RDFS.domain), ("range", RDFS.range))
                if not self.graph.objects(p, predicate)
            ]
            if missing:
                self.report(PitfallCode.PF02, p, f"property has no {' and no '.join(missing)}")

    def pf03_unconnected(self) -> None:
        connected: t.Set[Term] = set()
        for predicate in (RDFS.subClassOf, OWL.equivalentClass):
            for triple in self.graph.by_predicate(predicate):
                connected.add(triple.subject)
                connected.add(triple.object)
        for predicate in (RDFS.domain, RDFS.range):
            for triple in self.graph.by_predicate(predicate):
                connected.add(triple.object)

        for c in self.declarations.classes:
            if c not in connected:
                self.report(PitfallCode.PF03, c, "class has no superclass, subclass, equivalent or domain/range use")

    def pf04_labels(self) -> None:
        d = self.declarations
        entities = d.classes | d.object_properties | d.data_properties | d.annotation_properties
        for entity in entities:
            if not self.graph.objects(entity, RDFS.label):
                self.report(PitfallCode.PF04, entity, "entity has no rdfs:label")

    def pf05_disjoint_supers(self) -> None:
        disjoint = [axiom for axiom in self.axioms if isinstance(axiom, DisjointClasses)]
        if not disjoint:
            return
        rules = RuleIndex(self.axioms)
        for c in self.declarations.classes:
            supers = rules.superclasses(c)
            for axiom in disjoint:
                if axiom.a in supers and axiom.b in supers:
                    self.report(
                        PitfallCode.PF05, c,
                        f"class is subsumed by the disjoint classes {local_name(axiom.a)} and {local_name(axiom.b)}"
                    )

    def pf06_naming(self) -> None:
        d = self.declarations
        conventions = (
            (d.classes, _UPPER_CAMEL_RE, "class names are UpperCamelCase"),
            (d.object_properties | d.annotation_properties, _LOWER_CAMEL_RE, "object property names are lowerCamelCase"),
            (d.data_properties, _HYPHENATED_RE, "data property names are hyphen-delimited"),
        )
        for entities, pattern, rule in conventions:
            for entity in entities:
                name = local_name(entity)
                if name in self.allowance or pattern.match(name):
                    continue
                self.report(PitfallCode.PF06, entity, f"{name!r} breaks the convention: {rule}")

    def pf07_undeclared(self) -> None:
        for reference in self.axioms.dangling:
            self.report(PitfallCode.PF07, reference.iri, f"used as {reference.expected} but never declared")

        d = self.declarations
        for predicate in self.graph.predicates():
            if not d.is_property(predicate):
                self.report(PitfallCode.PF07, predicate, "used as property but never declared")
        for triple in self.graph.by_predicate(RDF.type):
            o = triple.object
            if isinstance(o, IRI) and not is_builtin(o) and not d.is_class(o):
                self.report(PitfallCode.PF07, o, "used as class but never declared")

    def pf08_sdh_boolean(self) -> None:
        for triple in self.graph.by_predicate(self.annotation):
            p = triple.subject
            if not isinstance(p, IRI):
                continue
            ranges = self.graph.objects(p, RDFS.range)
            if ranges != {XSD_BOOLEAN}:
                shown = ", ".join(sorted(render_term(r) for r in ranges)) or "none"
                self.report(PitfallCode.PF08, p, f"SDH data property must be ranged xsd:boolean, found {shown}")

    def run(self) -> PitfallReport:
        self.pf01_cycles()
        self.pf02_domain_range()
        self.pf03_unconnected()
        self.pf04_labels()
        self.pf05_disjoint_supers()
        self.pf06_naming()
        self.pf07_undeclared()
        self.pf08_sdh_boolean()
        return PitfallReport(tuple(sorted(self.findings, key=Pitfall.sort_key)))


def scan(
        graph: Graph,
        axioms: t.Optional[t.Iterable[Axiom]] = None,
        *,
        annotation: IRI = SDH_CATEGORY,
        allowance: t.Optional[t.Iterable[str]] = None
) -> PitfallReport:
    """
    Runs the pitfall catalog over a schema graph.

    :param axioms: The axioms of the graph. Extracted from the graph when omitted
                   or when they carry no declaration table.
    :param annotation: The annotation property marking SDH data properties.
    :param allowance: Local names exempt from PF06, in addition to those the
                      graph lists under coc:namingAllowance.
    """
    if not isinstance(axioms, AxiomSet) or not axioms.declarations.entities():
        extracted = extract_axioms(graph)
        axioms = extracted if axioms is None else extracted.merge(axioms)

    declarations = declarations_of(graph)
    names = {
        triple.object.lexical for triple in graph.by_predicate(NAMING_ALLOWANCE)
        if isinstance(triple.object, Literal)
    }
    names.update(allowance or ())

    report = _Scanner(graph, axioms, declarations, annotation, names).run()
    logger.info(f"Pitfall scan found {len(report.findings)} findings.")
    return report
