# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.owl interprets RDF graphs as OWL axioms.

    >>> axioms = extract_axioms(graph)
    >>> SubClassOf(COC.TargetCondition, Named(COC.HealthCondition)) in axioms
    True
    >>> metrics(graph).format()
    'classes=171 objectProperties=141 dataProperties=210 sdhDataProperties=171'

Extraction is total: references to undeclared entities are recorded as
DanglingReference entries on the returned AxiomSet and restrictions
outside the supported fragment are recorded as diagnostics. The
pitfall scanner turns both into findings.
"""
import logging
import dataclasses
import typing as t

from cssdh.graph import Graph
from cssdh.terms import IRI, BlankNode, Term, Triple
from cssdh.terms import OWL, RDF, RDFS, XSD
from cssdh.vocab import SDH_CATEGORY


__all__ = [
    "ClassExpression", "Named", "And", "Or", "Not", "Some", "HasValue",
    "Axiom", "SubClassOf", "EquivalentClasses", "DisjointClasses",
    "SubPropertyOf", "InverseOf",
    "ObjectPropertyDomain", "ObjectPropertyRange",
    "DataPropertyDomain", "DataPropertyRange",
    "Declarations", "DanglingReference", "UnsupportedRestriction", "AxiomSet",
    "OntologySummary", "extract_axioms", "metrics", "is_builtin"
]


logger = logging.getLogger(__name__)


###
# Class expressions

@dataclasses.dataclass(frozen=True, slots=True)
class Named:
    c: IRI

    def __str__(self) -> str:
        return str(self.c)


@dataclasses.dataclass(frozen=True, slots=True)
class And:
    operands: t.Tuple["ClassExpression", ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("And needs at least two operands")


@dataclasses.dataclass(frozen=True, slots=True)
class Or:
    operands: t.Tuple["ClassExpression", ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("Or needs at least two operands")


@dataclasses.dataclass(frozen=True, slots=True)
class Not:
    operand: "ClassExpression"


@dataclasses.dataclass(frozen=True, slots=True)
class Some:
    p: IRI
    filler: "ClassExpression"


@dataclasses.dataclass(frozen=True, slots=True)
class HasValue:
    p: IRI
    v: Term


ClassExpression = t.Union[Named, And, Or, Not, Some, HasValue]


###
# Axioms

@dataclasses.dataclass(frozen=True, slots=True)
class SubClassOf:
    sub: IRI
    #: A named class, or an expression read from an owl:Restriction.
    sup: ClassExpression


@dataclasses.dataclass(frozen=True, slots=True)
class EquivalentClasses:
    a: IRI
    b: IRI


@dataclasses.dataclass(frozen=True, slots=True)
class DisjointClasses:
    a: IRI
    b: IRI


@dataclasses.dataclass(frozen=True, slots=True)
class SubPropertyOf:
    sub: IRI
    sup: IRI


@dataclasses.dataclass(frozen=True, slots=True)
class InverseOf:
    p: IRI
    q: IRI


@dataclasses.dataclass(frozen=True, slots=True)
class ObjectPropertyDomain:
    p: IRI
    c: IRI


@dataclasses.dataclass(frozen=True, slots=True)
class ObjectPropertyRange:
    p: IRI
    c: IRI


@dataclasses.dataclass(frozen=True, slots=True)
class DataPropertyDomain:
    p: IRI
    c: IRI


@dataclasses.dataclass(frozen=True, slots=True)
class DataPropertyRange:
    p: IRI
    datatype: IRI


Axiom = t.Union[
    SubClassOf, EquivalentClasses, DisjointClasses, SubPropertyOf, InverseOf,
    ObjectPropertyDomain, ObjectPropertyRange, DataPropertyDomain, DataPropertyRange
]


@dataclasses.dataclass(frozen=True)
class Declarations:
    classes: t.FrozenSet[IRI] = frozenset()
    object_properties: t.FrozenSet[IRI] = frozenset()
    data_properties: t.FrozenSet[IRI] = frozenset()
    annotation_properties: t.FrozenSet[IRI] = frozenset()
    #: rdf:Property declarations that are neither object nor data properties.
    plain_properties: t.FrozenSet[IRI] = frozenset()
    datatypes: t.FrozenSet[IRI] = frozenset()

    @property
    def properties(self) -> t.FrozenSet[IRI]:
        return (
            self.object_properties | self.data_properties
            | self.annotation_properties | self.plain_properties
        )

    def is_class(self, iri: IRI) -> bool:
        return iri in self.classes or iri in (OWL.Thing, OWL.Nothing, RDFS.Resource)

    def is_datatype(self, iri: IRI) -> bool:
        return iri in self.datatypes or iri in XSD or iri == RDFS.Literal

    def is_property(self, iri: IRI) -> bool:
        return iri in self.properties or is_builtin(iri)

    def entities(self) -> t.FrozenSet[IRI]:
        return self.classes | self.properties


@dataclasses.dataclass(frozen=True, slots=True)
class DanglingReference:
    #: The undeclared entity.
    iri: IRI
    #: What the entity was expected to be ("class", "property", "object property", "datatype").
    expected: str
    triple: Triple

    def __str__(self) -> str:
        return f"{self.iri} is used as {self.expected} but never declared"


@dataclasses.dataclass(frozen=True, slots=True)
class UnsupportedRestriction:
    subject: IRI
    message: str


class AxiomSet(t.FrozenSet[Axiom]):
    """
    The axioms of a graph, together with what extraction learned on the way.

    It compares equal to a plain set with the same axioms.
    """
    declarations: Declarations
    dangling: t.Tuple[DanglingReference, ...]
    unsupported: t.Tuple[UnsupportedRestriction, ...]

    def __new__(
            cls,
            axioms: t.Iterable[Axiom] = (),
            declarations: t.Optional[Declarations] = None,
            dangling: t.Iterable[DanglingReference] = (),
            unsupported: t.Iterable[UnsupportedRestriction] = ()
    ) -> "AxiomSet":
        self = super().__new__(cls, axioms)
        self.declarations = declarations if declarations is not None else Declarations()
        self.dangling = tuple(dangling)
        self.unsupported = tuple(unsupported)
        return self

    def merge(self, other: t.Iterable[Axiom]) -> "AxiomSet":
        if not isinstance(other, AxiomSet):
            other = AxiomSet(other)
        mine, theirs = self.declarations, other.declarations
        return AxiomSet(
            frozenset(self) | frozenset(other),
            Declarations(**{
                field.name: getattr(mine, field.name) | getattr(theirs, field.name)
                for field in dataclasses.fields(Declarations)
            }),
            dict.fromkeys(self.dangling + other.dangling),
            dict.fromkeys(self.unsupported + other.unsupported),
        )

    def of_type(self, kind: t.Type[t.Any]) -> t.List[t.Any]:
        return [axiom for axiom in self if isinstance(axiom, kind)]


_BUILTIN_NAMESPACES = (RDF, RDFS, OWL, XSD)


def is_builtin(iri: Term) -> bool:
    return any(iri in namespace for namespace in _BUILTIN_NAMESPACES)


_DECLARATION_TYPES = {
    OWL.Class: "classes",
    RDFS.Class: "classes",
    OWL.ObjectProperty: "object_properties",
    OWL.DatatypeProperty: "data_properties",
    OWL.AnnotationProperty: "annotation_properties",
    RDF.Property: "plain_properties",
    RDFS.Datatype: "datatypes",
}

_CARDINALITY = (
    OWL.cardinality, OWL.minCardinality, OWL.maxCardinality,
    OWL.qualifiedCardinality, OWL.minQualifiedCardinality, OWL.maxQualifiedCardinality,
)


def declarations_of(graph: Graph) -> Declarations:
    found: t.Dict[str, t.Set[IRI]] = {name: set() for name in set(_DECLARATION_TYPES.values())}
    for type_iri, name in _DECLARATION_TYPES.items():
        found[name].update(s for s in graph.subjects(RDF.type, type_iri) if isinstance(s, IRI))
    # An rdf:Property that is also typed more specifically is not "plain".
    found["plain_properties"] -= found["object_properties"] | found["data_properties"] | found["annotation_properties"]
    return Declarations(**{name: frozenset(value) for name, value in found.items()})


class _Extractor:

    def __init__(self, graph: Graph) -> None:
        self.graph = graph
        self.declarations = declarations_of(graph)
        self.axioms: t.Set[Axiom] = set()
        self.dangling: t.Dict[DanglingReference, None] = {}
        self.unsupported: t.Dict[UnsupportedRestriction, None] = {}

    def require(self, iri: Term, expected: str, triple: Triple) -> None:
        if not isinstance(iri, IRI):
            return

        d = self.declarations
        known = {
            "class": d.is_class,
            "datatype": d.is_datatype,
            "property": d.is_property,
            "object property": lambda i: i in d.object_properties or is_builtin(i),
        }[expected](iri)

        if not known:
            reference = DanglingReference(iri, expected, triple)
            if reference not in self.dangling:
                logger.warning(f"Dangling reference: {reference}")
            self.dangling[reference] = None

    def restriction(self, node: BlankNode, owner: IRI) -> t.Optional[ClassExpression]:
        graph = self.graph
        if any(graph.match(node, p, None) for p in _CARDINALITY):
            self.report(owner, "cardinality restrictions are not supported")
            return None
        if graph.match(node, OWL.allValuesFrom, None):
            self.report(owner, "allValuesFrom restrictions are not supported")
            return None

        properties = graph.objects(node, OWL.onProperty)
        if len(properties) != 1:
            self.report(owner, "restriction without a single owl:onProperty")
            return None
        prop = next(iter(properties))
        if not isinstance(prop, IRI):
            self.report(owner, "restriction on an anonymous property")
            return None
        self.require(prop, "property", Triple(node, OWL.onProperty, prop))

        fillers = graph.objects(node, OWL.someValuesFrom)
        values = graph.objects(node, OWL.hasValue)
        if len(fillers) == 1 and not values:
            filler = self.expression(next(iter(fillers)), owner)
            return None if filler is None else Some(prop, filler)
        if len(values) == 1 and not fillers:
            return HasValue(prop, next(iter(values)))

        self.report(owner, "restriction is neither a single someValuesFrom nor a single hasValue")
        return None

    def expression(self, node: Term, owner: IRI) -> t.Optional[ClassExpression]:
        if isinstance(node, IRI):
            return Named(node)
        if isinstance(node, BlankNode) and (
                OWL.Restriction in self.graph.objects(node, RDF.type)
                or self.graph.objects(node, OWL.onProperty)
        ):
            return self.restriction(node, owner)
        self.report(owner, f"unsupported class expression {node.n3()}")
        return None

    def report(self, owner: IRI, message: str) -> None:
        entry = UnsupportedRestriction(owner, message)
        if entry not in self.unsupported:
            logger.warning(f"{owner}: {message}")
        self.unsupported[entry] = None

    def property_kind(self, prop: IRI, filler: Term) -> str:
        d = self.declarations
        if prop in d.data_properties:
            return "data"
        if prop in d.object_properties:
            return "object"
        # Undeclared or plain properties: guess from what the range points to.
        return "data" if isinstance(filler, IRI) and d.is_datatype(filler) else "object"

    def run(self) -> AxiomSet:
        graph = self.graph

        for triple in graph.by_predicate(RDFS.subClassOf):
            if not isinstance(triple.subject, IRI):
                continue
            self.require(triple.subject, "class", triple)
            if isinstance(triple.object, IRI):
                self.require(triple.object, "class", triple)
            sup = self.expression(triple.object, triple.subject)
            if sup is not None:
                self.axioms.add(SubClassOf(triple.subject, sup))

        for predicate, kind in ((OWL.equivalentClass, EquivalentClasses), (OWL.disjointWith, DisjointClasses)):
            for triple in graph.by_predicate(predicate):
                if not isinstance(triple.subject, IRI):
                    continue
                if not isinstance(triple.object, IRI):
                    self.report(triple.subject, f"anonymous operand of {predicate} is not supported")
                    continue
                self.require(triple.subject, "class", triple)
                self.require(triple.object, "class", triple)
                self.axioms.add(kind(triple.subject, triple.object))

        for triple in graph.by_predicate(RDFS.subPropertyOf):
            if isinstance(triple.subject, IRI) and isinstance(triple.object, IRI):
                self.require(triple.subject, "property", triple)
                self.require(triple.object, "property", triple)
                self.axioms.add(SubPropertyOf(triple.subject, triple.object))

        for triple in graph.by_predicate(OWL.inverseOf):
            if isinstance(triple.subject, IRI) and isinstance(triple.object, IRI):
                self.require(triple.subject, "object property", triple)
                self.require(triple.object, "object property", triple)
                self.axioms.add(InverseOf(triple.subject, triple.object))

        for triple in graph.by_predicate(RDFS.domain):
            if isinstance(triple.subject, IRI) and isinstance(triple.object, IRI):
                self.require(triple.subject, "property", triple)
                self.require(triple.object, "class", triple)
                if self.property_kind(triple.subject, triple.object) == "data":
                    self.axioms.add(DataPropertyDomain(triple.subject, triple.object))
                else:
                    self.axioms.add(ObjectPropertyDomain(triple.subject, triple.object))

        for triple in graph.by_predicate(RDFS.range):
            if isinstance(triple.subject, IRI) and isinstance(triple.object, IRI):
                self.require(triple.subject, "property", triple)
                if self.property_kind(triple.subject, triple.object) == "data":
                    self.require(triple.object, "datatype", triple)
                    self.axioms.add(DataPropertyRange(triple.subject, triple.object))
                else:
                    self.require(triple.object, "class", triple)
                    self.axioms.add(ObjectPropertyRange(triple.subject, triple.object))

        logger.debug(f"Extracted {len(self.axioms)} axioms, {len(self.dangling)} dangling references.")
        return AxiomSet(self.axioms, self.declarations, self.dangling, self.unsupported)


def extract_axioms(graph: Graph) -> AxiomSet:
    """
    Reads the OWL/RDFS axioms asserted in the graph.

    :returns: One axiom per recognized assertion. Undeclared entities are listed in
              AxiomSet.dangling, unsupported restrictions in AxiomSet.unsupported.
    """
    return _Extractor(graph).run()


###
# Metrics

@dataclasses.dataclass(frozen=True, slots=True)
class OntologySummary:
    class_count: int
    object_property_count: int
    data_property_count: int
    sdh_data_property_count: int

    def format(self) -> str:
        return (
            f"classes={self.class_count} "
            f"objectProperties={self.object_property_count} "
            f"dataProperties={self.data_property_count} "
            f"sdhDataProperties={self.sdh_data_property_count}"
        )


def metrics(graph: Graph, *, annotation: IRI = SDH_CATEGORY) -> OntologySummary:
    """
    Counts the distinct declared classes and properties.

    :param annotation: The annotation property marking SDH data properties.
    """
    classes = {s for s in graph.subjects(RDF.type, OWL.Class) if isinstance(s, IRI)}
    object_properties = {s for s in graph.subjects(RDF.type, OWL.ObjectProperty) if isinstance(s, IRI)}
    data_properties = {s for s in graph.subjects(RDF.type, OWL.DatatypeProperty) if isinstance(s, IRI)}
    annotated = {triple.subject for triple in graph.by_predicate(annotation)}
    return OntologySummary(
        len(classes),
        len(object_properties),
        len(data_properties),
        len(data_properties & annotated),
    )
