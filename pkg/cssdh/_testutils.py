# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
Random inputs for the property tests.

All generators take a random.Random so that every test case is
reproducible from its seed. Terms live in the EX namespace:

- classes     ex:C0, ex:C1, ...
- properties  ex:p0, ex:p1, ...
- individuals ex:i0, ex:i1, ...
"""
import random
import typing as t

from cssdh.graph import Graph
from cssdh.terms import IRI, Literal, Namespace, Term
from cssdh.terms import RDF, TRUE, FALSE
from cssdh.owl import Axiom, HasValue, Named, SubClassOf, EquivalentClasses, SubPropertyOf, InverseOf
from cssdh.owl import ObjectPropertyDomain, ObjectPropertyRange


__all__ = [
    "EX", "classes", "properties", "individuals",
    "random_graph", "random_axioms", "random_dag", "random_query"
]


EX = Namespace("http://example.org/test#")


def classes(count: int) -> t.List[IRI]:
    return [EX[f"C{i}"] for i in range(count)]


def properties(count: int) -> t.List[IRI]:
    return [EX[f"p{i}"] for i in range(count)]


def individuals(count: int) -> t.List[IRI]:
    return [EX[f"i{i}"] for i in range(count)]


_STRINGS = ("Ana", "Bo", "", "a b", 'quo"te', "line\nbreak")

#: Local names that are legal IRI text but no prefixed name.
_ODD_LOCALS = ("a%20b", "q?x=1&y=2", "t~i", "café", "it's", "p(1)", "a:b", "")


def _literal(rng: random.Random) -> Literal:
    if rng.random() < 0.5:
        return rng.choice((TRUE, FALSE))
    return Literal(rng.choice(_STRINGS))


def random_graph(
        rng: random.Random,
        size: int,
        *,
        n_individuals: int = 12,
        n_classes: int = 6,
        n_properties: int = 4,
        literals: bool = True,
        odd_iris: bool = False
) -> Graph:
    """
    A graph of type and property assertions with at most size triples.

    :param odd_iris: Also use individuals whose IRIs hold punctuation and
                     non-ASCII letters.
    """
    people = individuals(n_individuals)
    if odd_iris:
        people += [EX[local] for local in _ODD_LOCALS]
    kinds = classes(n_classes)
    predicates = properties(n_properties)

    graph = Graph()
    for _ in range(size * 3):
        if len(graph) >= size:
            break
        subject = rng.choice(people)
        if rng.random() < 0.3:
            graph.add(subject, RDF.type, rng.choice(kinds))
            continue
        obj: Term = rng.choice(people)
        if literals and rng.random() < 0.25:
            obj = _literal(rng)
        graph.add(subject, rng.choice(predicates), obj)
    return graph


def random_axioms(
        rng: random.Random,
        count: int,
        *,
        n_classes: int = 6,
        n_properties: int = 4
) -> t.List[Axiom]:
    """
    Axioms of every kind the rules fire on, including cycles.
    """
    kinds = classes(n_classes)
    predicates = properties(n_properties)
    values = individuals(3) + [TRUE, FALSE]

    axioms: t.List[Axiom] = []
    for _ in range(count):
        choice = rng.randrange(7)
        if choice == 0:
            axioms.append(SubClassOf(rng.choice(kinds), Named(rng.choice(kinds))))
        elif choice == 1:
            axioms.append(EquivalentClasses(rng.choice(kinds), rng.choice(kinds)))
        elif choice == 2:
            axioms.append(SubPropertyOf(rng.choice(predicates), rng.choice(predicates)))
        elif choice == 3:
            axioms.append(InverseOf(rng.choice(predicates), rng.choice(predicates)))
        elif choice == 4:
            axioms.append(ObjectPropertyDomain(rng.choice(predicates), rng.choice(kinds)))
        elif choice == 5:
            axioms.append(ObjectPropertyRange(rng.choice(predicates), rng.choice(kinds)))
        else:
            axioms.append(SubClassOf(rng.choice(kinds), HasValue(rng.choice(predicates), rng.choice(values))))
    return axioms


def random_dag(rng: random.Random, nodes: int, *, density: float = 0.1) -> t.List[t.Tuple[IRI, IRI]]:
    """
    Subclass edges (child, parent) of a random DAG.

    Edges always point from a higher to a lower index.
    """
    kinds = classes(nodes)
    return [
        (kinds[child], kinds[parent])
        for child in range(nodes)
        for parent in range(child)
        if rng.random() < density
    ]


def _slot(rng: random.Random, variables: t.List[str], constants: t.Sequence[Term]) -> str:
    if rng.random() < 0.7:
        return "?" + rng.choice(variables)
    return _render(rng.choice(constants))


def _render(term: Term) -> str:
    if isinstance(term, IRI):
        return term.n3()
    # Only boolean literals appear as query constants.
    return t.cast(Literal, term).lexical


def random_query(
        rng: random.Random,
        *,
        n_individuals: int = 12,
        n_classes: int = 6,
        n_properties: int = 4
) -> str:
    """
    A connected SELECT * query with up to four patterns, at most one
    OPTIONAL block and at most one FILTER.
    """
    people = individuals(n_individuals)
    kinds = classes(n_classes)
    predicates = properties(n_properties)
    variables = ["v0"]

    def pattern() -> str:
        # Each pattern reuses a variable so that the join stays connected.
        subject = "?" + rng.choice(variables)
        if rng.random() < 0.2:
            return f"{subject} a {_slot(rng, variables + ['c'], kinds)}"
        fresh = f"v{len(variables)}"
        if rng.random() < 0.6 and len(variables) < 4:
            variables.append(fresh)
            obj = "?" + fresh
        else:
            obj = _slot(rng, variables, people + [TRUE])
        return f"{subject} {_render(rng.choice(predicates))} {obj}"

    required = [pattern() for _ in range(rng.randint(1, 3))]
    room = 4 - len(required)
    optional = [pattern() for _ in range(rng.randint(1, min(2, room)))] if room and rng.random() < 0.5 else []

    filters = []
    if rng.random() < 0.5:
        name = rng.choice(variables)
        choice = rng.randrange(3)
        if choice == 0:
            filters.append(f"FILTER(?{name} != {_render(rng.choice(people))})")
        elif choice == 1:
            filters.append(f"FILTER(bound(?{name}))")
        else:
            filters.append(f"FILTER(?{name} = {_render(rng.choice(people))} || !bound(?{name}))")

    body = " .\n  ".join(required)
    if optional:
        body += " .\n  OPTIONAL { " + " . ".join(optional) + " }"
    for f in filters:
        body += "\n  " + f
    return f"SELECT * WHERE {{\n  {body}\n}}\n"
