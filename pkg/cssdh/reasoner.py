# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.reasoner implements forward-chaining over the OWL axioms of a schema.

    >>> inferred = materialize(data | schema, axioms)
    >>> check_consistency(inferred, axioms).consistent
    True
    >>> subsumes(axioms, COC.TargetCondition, COC.HealthCondition)
    True

The rule fragment covers subclass and subproperty hierarchies,
equivalence, domain and range typing, inverse properties and value
restrictions on superclasses. Negation is evaluated closed-world over
the individuals of the dataset.

All functions are read-only with respect to their arguments and can
run concurrently on the same graph.
"""
import enum
import logging
import functools
import dataclasses
import typing as t
from collections import deque

from cssdh._helpers import CssdhError
from cssdh.graph import Graph
from cssdh.terms import IRI, Literal, Term, Triple
from cssdh.terms import OWL, RDF, RDFS
from cssdh.owl import Axiom, AxiomSet, ClassExpression, Named, And, Or, Not, Some, HasValue
from cssdh.owl import SubClassOf, EquivalentClasses, DisjointClasses, SubPropertyOf, InverseOf
from cssdh.owl import ObjectPropertyDomain, ObjectPropertyRange, DataPropertyDomain, DataPropertyRange


__all__ = [
    "materialize", "check_consistency", "subsumes", "evaluate", "individuals", "RuleIndex",
    "ConsistencyReport", "Violation", "ViolationKind",
    "UndeclaredClass", "UndeclaredProperty"
]


logger = logging.getLogger(__name__)


class UndeclaredClass(CssdhError):
    def __init__(self, iri: IRI):
        super().__init__(f"undeclared class {iri}")
        self.iri = iri


class UndeclaredProperty(CssdhError):
    def __init__(self, iri: IRI):
        super().__init__(f"undeclared property {iri}")
        self.iri = iri


def _closure(edges: t.Mapping[IRI, t.Iterable[IRI]], start: IRI) -> t.Set[IRI]:
    seen = {start}
    todo = deque([start])
    while todo:
        for nxt in edges.get(todo.popleft(), ()):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


class RuleIndex:
    """
    Indexes the axioms by the term that triggers each rule.
    """

    def __init__(self, axioms: t.Iterable[Axiom]) -> None:
        self.class_edges: t.Dict[IRI, t.Set[IRI]] = {}
        self.property_edges: t.Dict[IRI, t.Set[IRI]] = {}
        self.has_values: t.Dict[IRI, t.Set[HasValue]] = {}
        self.inverses: t.Dict[IRI, t.Set[IRI]] = {}
        self.domains: t.Dict[IRI, t.Set[IRI]] = {}
        self.ranges: t.Dict[IRI, t.Set[IRI]] = {}
        self.disjoint: t.Set[t.Tuple[IRI, IRI]] = set()
        self.datatypes: t.Dict[IRI, t.Set[IRI]] = {}

        for axiom in axioms:
            if isinstance(axiom, SubClassOf):
                if isinstance(axiom.sup, Named):
                    self.class_edges.setdefault(axiom.sub, set()).add(axiom.sup.c)
                elif isinstance(axiom.sup, HasValue):
                    self.has_values.setdefault(axiom.sub, set()).add(axiom.sup)
            elif isinstance(axiom, EquivalentClasses):
                self.class_edges.setdefault(axiom.a, set()).add(axiom.b)
                self.class_edges.setdefault(axiom.b, set()).add(axiom.a)
            elif isinstance(axiom, DisjointClasses):
                self.disjoint.add((axiom.a, axiom.b))
            elif isinstance(axiom, SubPropertyOf):
                self.property_edges.setdefault(axiom.sub, set()).add(axiom.sup)
            elif isinstance(axiom, InverseOf):
                self.inverses.setdefault(axiom.p, set()).add(axiom.q)
                self.inverses.setdefault(axiom.q, set()).add(axiom.p)
            elif isinstance(axiom, (ObjectPropertyDomain, DataPropertyDomain)):
                self.domains.setdefault(axiom.p, set()).add(axiom.c)
            elif isinstance(axiom, ObjectPropertyRange):
                self.ranges.setdefault(axiom.p, set()).add(axiom.c)
            elif isinstance(axiom, DataPropertyRange):
                self.datatypes.setdefault(axiom.p, set()).add(axiom.datatype)

        self._superclasses: t.Dict[IRI, t.Set[IRI]] = {}
        self._superproperties: t.Dict[IRI, t.Set[IRI]] = {}

    def superclasses(self, c: IRI) -> t.Set[IRI]:
        """Reflexive-transitive superclasses of c."""
        if c not in self._superclasses:
            self._superclasses[c] = _closure(self.class_edges, c)
        return self._superclasses[c]

    def superproperties(self, p: IRI) -> t.Set[IRI]:
        if p not in self._superproperties:
            self._superproperties[p] = _closure(self.property_edges, p)
        return self._superproperties[p]

    def consequences(self, triple: Triple) -> t.Iterator[Triple]:
        s, p, o = triple.subject, triple.predicate, triple.object

        if p == RDF.type:
            if not isinstance(o, IRI):
                return
            for sup in self.superclasses(o):
                if sup != o:
                    yield Triple(s, RDF.type, sup)
            for restriction in self.has_values.get(o, ()):
                yield Triple(s, restriction.p, restriction.v)
            return

        for sup in self.superproperties(p):
            if sup != p:
                yield Triple(s, sup, o)
        for c in self.domains.get(p, ()):
            yield Triple(s, RDF.type, c)
        if isinstance(o, Literal):
            return
        for c in self.ranges.get(p, ()):
            yield Triple(o, RDF.type, c)
        for q in self.inverses.get(p, ()):
            yield Triple(o, q, s)


def materialize(graph: Graph, axioms: t.Iterable[Axiom]) -> Graph:
    """
    Computes the least fixpoint of the rules over graph and axioms.

    The result is a new graph and a superset of the input. The subclass
    closure of the axioms is added as rdfs:subClassOf triples.
    """
    rules = RuleIndex(axioms)
    result = graph.copy()

    classes = set(rules.class_edges)
    for targets in rules.class_edges.values():
        classes.update(targets)
    for c in sorted(classes, key=IRI.sort_key):
        for sup in rules.superclasses(c):
            if sup != c:
                result.add(c, RDFS.subClassOf, sup)

    todo = deque(result)
    while todo:
        for derived in rules.consequences(todo.popleft()):
            if result.insert(derived):
                todo.append(derived)

    logger.debug(f"Materialized {len(graph)} triples into {len(result)}.")
    return result


###
# Consistency

class ViolationKind(str, enum.Enum):
    DISJOINTNESS = "DisjointnessViolation"
    DATATYPE_CLASH = "DatatypeClash"


@dataclasses.dataclass(frozen=True, slots=True)
class Violation:
    kind: ViolationKind
    individual: Term
    detail: str

    def __str__(self) -> str:
        return f"{self.kind.value} {self.individual}: {self.detail}"


@dataclasses.dataclass(frozen=True)
class ConsistencyReport:
    violations: t.Tuple[Violation, ...] = ()

    @property
    def consistent(self) -> bool:
        return not self.violations

    def format(self) -> str:
        if self.consistent:
            return "CONSISTENT"
        return "\n".join(["INCONSISTENT", *(str(v) for v in self.violations)])


def check_consistency(graph: Graph, axioms: t.Iterable[Axiom]) -> ConsistencyReport:
    """
    Materializes the graph and reports every individual violating a
    disjointness axiom or a data property range.
    """
    axioms = list(axioms)
    rules = RuleIndex(axioms)
    inferred = materialize(graph, axioms)
    violations: t.Set[Violation] = set()

    for a, b in rules.disjoint:
        for x in inferred.subjects(RDF.type, a) & inferred.subjects(RDF.type, b):
            first, second = sorted((a, b), key=IRI.sort_key)
            violations.add(Violation(
                ViolationKind.DISJOINTNESS, x,
                f"typed by disjoint classes {first} and {second}"
            ))

    for p, datatypes in rules.datatypes.items():
        for triple in inferred.by_predicate(p):
            o = triple.object
            for datatype in datatypes:
                if datatype == RDFS.Literal and isinstance(o, Literal):
                    continue
                if isinstance(o, Literal) and o.datatype == datatype:
                    continue
                found = o.datatype if isinstance(o, Literal) else "a resource"
                violations.add(Violation(
                    ViolationKind.DATATYPE_CLASH, triple.subject,
                    f"{p} expects {datatype} but has {o.n3()} ({found})"
                ))

    report = ConsistencyReport(tuple(sorted(
        violations, key=lambda v: (v.kind.value, v.individual.sort_key(), v.detail)
    )))
    logger.info(f"Consistency check found {len(report.violations)} violations.")
    return report


###
# Subsumption

def _declared(axioms: t.Iterable[Axiom]) -> t.Optional[t.FrozenSet[IRI]]:
    if isinstance(axioms, AxiomSet) and axioms.declarations.classes:
        return axioms.declarations.classes | {OWL.Thing, OWL.Nothing}
    return None


@functools.lru_cache(maxsize=8)
def _cached_index(axioms: t.FrozenSet[Axiom]) -> RuleIndex:
    return RuleIndex(axioms)


def subsumes(axioms: t.Iterable[Axiom], sub: IRI, sup: IRI) -> bool:
    """
    Tells whether sup is reachable from sub over the subclass hierarchy.

    :raises UndeclaredClass: If the axioms carry declarations and either class is not declared.
    """
    declared = _declared(axioms)
    if declared is not None:
        for c in (sub, sup):
            if c not in declared:
                raise UndeclaredClass(c)

    if sup == OWL.Thing:
        return True
    rules = _cached_index(axioms) if isinstance(axioms, frozenset) else RuleIndex(axioms)
    return sup in rules.superclasses(sub)


###
# Class expressions

_SCHEMA_TYPES = frozenset((
    OWL.Class, OWL.ObjectProperty, OWL.DatatypeProperty, OWL.AnnotationProperty,
    OWL.Ontology, OWL.Restriction, OWL.TransitiveProperty, OWL.FunctionalProperty,
    RDFS.Class, RDFS.Datatype, RDF.Property,
))


def individuals(graph: Graph) -> t.Set[Term]:
    """
    The subjects that are typed by anything other than an OWL/RDFS meta class.
    """
    return {
        triple.subject for triple in graph.by_predicate(RDF.type)
        if triple.object not in _SCHEMA_TYPES
    }


class _Evaluator:

    def __init__(self, graph: Graph, axioms: t.Iterable[Axiom]) -> None:
        self.graph = graph
        self.individuals = individuals(graph)
        self.classes: t.Optional[t.FrozenSet[IRI]] = None
        self.properties: t.Optional[t.FrozenSet[IRI]] = None
        if isinstance(axioms, AxiomSet) and axioms.declarations.entities():
            self.classes = _declared(axioms) or frozenset({OWL.Thing, OWL.Nothing})
            self.properties = axioms.declarations.properties

    def check_property(self, p: IRI) -> None:
        if self.properties is not None and p not in self.properties:
            raise UndeclaredProperty(p)

    def __call__(self, expr: ClassExpression) -> t.Set[Term]:
        if isinstance(expr, Named):
            if self.classes is not None and expr.c not in self.classes:
                raise UndeclaredClass(expr.c)
            if expr.c == OWL.Thing:
                return set(self.individuals)
            return self.graph.subjects(RDF.type, expr.c)

        if isinstance(expr, And):
            result = self(expr.operands[0])
            for operand in expr.operands[1:]:
                result &= self(operand)
            return result

        if isinstance(expr, Or):
            result = set()
            for operand in expr.operands:
                result |= self(operand)
            return result

        if isinstance(expr, Not):
            return self.individuals - self(expr.operand)

        if isinstance(expr, Some):
            self.check_property(expr.p)
            filler = self(expr.filler)
            return {
                triple.subject for triple in self.graph.by_predicate(expr.p)
                if triple.object in filler
            }

        if isinstance(expr, HasValue):
            self.check_property(expr.p)
            return self.graph.subjects(expr.p, expr.v)

        raise TypeError(f"not a class expression: {expr!r}")


def evaluate(expr: ClassExpression, graph: Graph, axioms: t.Iterable[Axiom]) -> t.Set[Term]:
    """
    Computes the extension of a class expression over a materialized graph.

    HasValue only matches explicit assertions: a patient without a recorded
    value is never in the extension of HasValue(p, false).

    :raises UndeclaredClass: For unknown class names when the axioms carry declarations.
    :raises UndeclaredProperty: Likewise for properties.
    """
    return _Evaluator(graph, axioms)(expr)
