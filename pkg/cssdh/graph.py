# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.graph implements an indexed in-memory triple set.

    >>> g = Graph()
    >>> g.add(IRI("http://example.org/p1"), RDF.type, IRI("http://hl7.org/fhir/Patient"))
    True
    >>> len(g.match(None, RDF.type, None))
    1

The graph keeps three indexes: by subject, by predicate and by
(predicate, object). Every lookup path returns exactly what a linear
filter over the triple set would return.

A graph may be read from any number of threads once it is no longer
being mutated. Mutation requires exclusive access.
"""
import typing as t

from cssdh.terms import IRI, BlankNode, Term, Triple


__all__ = ["Graph", "Pattern"]


Pattern = t.Tuple[t.Optional[Term], t.Optional[Term], t.Optional[Term]]


class Graph:
    _triples: t.Set[Triple]
    _by_subject: t.Dict[Term, t.Set[Triple]]
    _by_predicate: t.Dict[Term, t.Set[Triple]]
    _by_predicate_object: t.Dict[t.Tuple[Term, Term], t.Set[Triple]]

    __slots__ = ("_triples", "_by_subject", "_by_predicate", "_by_predicate_object")

    def __init__(self, triples: t.Iterable[Triple] = ()) -> None:
        self._triples = set()
        self._by_subject = {}
        self._by_predicate = {}
        self._by_predicate_object = {}
        for triple in triples:
            self.insert(triple)

    ###
    # Mutation

    def insert(self, triple: Triple) -> bool:
        """
        Adds a triple.

        :returns: True if the triple was not yet present.
        """
        if not isinstance(triple, Triple):
            raise TypeError(f"expected a Triple, got {triple!r}")

        if triple in self._triples:
            return False

        self._triples.add(triple)
        self._by_subject.setdefault(triple.subject, set()).add(triple)
        self._by_predicate.setdefault(triple.predicate, set()).add(triple)
        self._by_predicate_object.setdefault((triple.predicate, triple.object), set()).add(triple)
        return True

    def add(self, subject: t.Union[IRI, BlankNode], predicate: IRI, obj: Term) -> bool:
        return self.insert(Triple(subject, predicate, obj))

    def update(self, triples: t.Iterable[Triple]) -> int:
        """
        Adds all triples.

        :returns: The number of triples that were new.
        """
        return sum(1 for triple in triples if self.insert(triple))

    ###
    # Lookup

    def match(
            self,
            subject: t.Optional[Term] = None,
            predicate: t.Optional[Term] = None,
            obj: t.Optional[Term] = None
    ) -> t.Set[Triple]:
        """
        Returns all triples agreeing with every concrete slot.

        None is the wildcard.
        """
        if subject is not None:
            candidates = self._by_subject.get(subject, ())
        elif predicate is not None and obj is not None:
            return set(self._by_predicate_object.get((predicate, obj), ()))
        elif predicate is not None:
            return set(self._by_predicate.get(predicate, ()))
        else:
            candidates = self._triples

        return {
            triple for triple in candidates
            if (predicate is None or triple.predicate == predicate)
            and (obj is None or triple.object == obj)
        }

    def subjects(self, predicate: Term, obj: Term) -> t.Set[Term]:
        return {triple.subject for triple in self._by_predicate_object.get((predicate, obj), ())}

    def objects(self, subject: Term, predicate: Term) -> t.Set[Term]:
        return {
            triple.object for triple in self._by_subject.get(subject, ())
            if triple.predicate == predicate
        }

    def predicates(self) -> t.Set[IRI]:
        return t.cast(t.Set[IRI], set(self._by_predicate))

    def by_predicate(self, predicate: Term) -> t.Iterable[Triple]:
        return self._by_predicate.get(predicate, ())

    ###
    # Set behaviour

    def copy(self) -> "Graph":
        return Graph(self._triples)

    def __or__(self, other: "Graph") -> "Graph":
        result = self.copy()
        result.update(other)
        return result

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> t.Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: object) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __le__(self, other: "Graph") -> bool:
        return self._triples <= other._triples

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"<Graph with {len(self)} triples>"
