# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.schema generates the CSSDH ontology from a declarative manifest.

    >>> manifest = shipped_manifest()
    >>> print(verify_manifest(manifest).format())
    >>> graph, axioms = build_schema(manifest)

The manifest is a TOML file with one inline table per entry; the
field reference is in README.md. Every entry records the vocabulary it
was taken from.

The shipped manifest reproduces the published structure of the model:
171 classes, 141 object properties and 210 data properties of which
171 describe social determinants of health (SDH).
"""
import enum
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
import functools
import dataclasses
import typing as t
from importlib import resources

from cssdh._helpers import CssdhError
from cssdh.graph import Graph
from cssdh.terms import IRI, Literal, PrefixMap, expand_curie, MalformedCurie, UndefinedPrefix, InvalidTerm
from cssdh.terms import OWL, RDF, RDFS, XSD, XSD_BOOLEAN, STANDARD_PREFIXES
from cssdh.owl import AxiomSet, extract_axioms
from cssdh.vocab import DEFAULT_NAMESPACE, FHIR, SDH_CATEGORY, NAMING_ALLOWANCE


__all__ = [
    "EntryKind", "SdhCategory", "Source", "CatalogEntry", "Manifest",
    "VerificationProfile", "CSSDH_PROFILE", "Check", "VerificationReport",
    "ManifestError",
    "parse_manifest", "load_manifest", "verify_manifest", "build_schema",
    "shipped_manifest", "shipped_schema"
]


logger = logging.getLogger(__name__)


class ManifestError(CssdhError):
    pass


class EntryKind(str, enum.Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"


class SdhCategory(str, enum.Enum):
    ECONOMIC_STABILITY = "EconomicStability"
    EDUCATION_ACCESS_QUALITY = "EducationAccessQuality"
    HEALTH_CARE_ACCESS_QUALITY = "HealthCareAccessQuality"
    NEIGHBORHOOD_BUILT_ENVIRONMENT = "NeighborhoodBuiltEnvironment"
    SOCIAL_COMMUNITY_CONTEXT = "SocialCommunityContext"


class Source(str, enum.Enum):
    CONTSYS = "ContSys"
    DOLCE = "DOLCE"
    ICD_11 = "ICD-11"
    SOHO = "SOHO"
    SOCIAL_PRESCRIBING = "SocialPrescribing"
    GRAVITY = "Gravity"
    FHIR = "FHIR"


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    #: Local name in the manifest namespace, or a CURIE.
    term: str
    kind: EntryKind
    label: str
    source: Source
    #: Superclass for classes, superproperty for properties.
    parent: t.Optional[str] = None
    domain: t.Optional[str] = None
    #: A class for object properties, a datatype CURIE for data properties.
    range: t.Optional[str] = None
    sdh_category: t.Optional[SdhCategory] = None
    equivalent: t.Optional[str] = None
    disjoint_with: t.Tuple[str, ...] = ()
    inverse: t.Optional[str] = None


@dataclasses.dataclass(frozen=True)
class Manifest:
    entries: t.Tuple[CatalogEntry, ...]
    namespace: str = DEFAULT_NAMESPACE
    #: Extra prefixes for CURIEs in entries; rdf, rdfs, owl, xsd, fhir and coc are always known.
    prefixes: t.Mapping[str, str] = dataclasses.field(default_factory=dict)
    title: t.Optional[str] = None
    #: Local names exempt from the naming style check.
    naming_allowance: t.Tuple[str, ...] = ()

    @property
    def prefix_map(self) -> PrefixMap:
        result = PrefixMap(STANDARD_PREFIXES)
        result.bind("fhir", FHIR.base)
        result.bind("coc", self.namespace)
        for label, namespace in self.prefixes.items():
            result.bind(label, namespace)
        return result

    def resolve(self, name: str) -> IRI:
        """
        Turns a manifest name into an IRI.

        :raises ManifestError: For unknown prefixes or names that are no valid IRI.
        """
        try:
            if ":" in name:
                return expand_curie(name, self.prefix_map)
            return IRI(self.namespace + name)
        except (MalformedCurie, UndefinedPrefix, InvalidTerm) as e:
            raise ManifestError(f"cannot resolve {name!r}: {e}") from None

    def of_kind(self, kind: EntryKind) -> t.List[CatalogEntry]:
        return [entry for entry in self.entries if entry.kind == kind]

    def without(self, term: str) -> "Manifest":
        return dataclasses.replace(self, entries=tuple(e for e in self.entries if e.term != term))


###
# Loading

_FIELDS = {field.name for field in dataclasses.fields(CatalogEntry)}
_TOP_LEVEL = {"title", "namespace", "naming_allowance", "prefixes", "entries"}


def _enum(kind: t.Type[enum.Enum], value: t.Any, where: str) -> t.Any:
    try:
        return kind(value)
    except ValueError:
        choices = ", ".join(member.value for member in kind)
        raise ManifestError(f"{where}: {value!r} is not one of {choices}") from None


def _entry(raw: t.Any, index: int) -> CatalogEntry:
    where = f"entry {index + 1}"
    if not isinstance(raw, dict):
        raise ManifestError(f"{where}: expected a table")
    if isinstance(raw.get("term"), str):
        where = f"{where} ({raw['term']})"

    unknown = set(raw) - _FIELDS
    if unknown:
        raise ManifestError(f"{where}: unknown fields {', '.join(sorted(unknown))}")
    for required in ("term", "kind", "label", "source"):
        if not isinstance(raw.get(required), str) or not raw[required]:
            raise ManifestError(f"{where}: missing field {required!r}")
    for optional in ("parent", "domain", "range", "sdh_category", "equivalent", "inverse"):
        if optional in raw and not isinstance(raw[optional], str):
            raise ManifestError(f"{where}: field {optional!r} must be a string")

    disjoint = raw.get("disjoint_with", [])
    if isinstance(disjoint, str):
        disjoint = [disjoint]
    if not isinstance(disjoint, list) or not all(isinstance(d, str) for d in disjoint):
        raise ManifestError(f"{where}: field 'disjoint_with' must be a list of names")

    return CatalogEntry(
        term=raw["term"],
        kind=_enum(EntryKind, raw["kind"], where),
        label=raw["label"],
        source=_enum(Source, raw["source"], where),
        parent=raw.get("parent"),
        domain=raw.get("domain"),
        range=raw.get("range"),
        sdh_category=_enum(SdhCategory, raw["sdh_category"], where) if "sdh_category" in raw else None,
        equivalent=raw.get("equivalent"),
        disjoint_with=tuple(disjoint),
        inverse=raw.get("inverse"),
    )


def parse_manifest(text: str) -> Manifest:
    """
    Reads a manifest from TOML text.

    :raises ManifestError: On malformed TOML, unknown fields or invalid values.
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ManifestError(f"manifest is not valid TOML: {e}") from None

    unknown = set(data) - _TOP_LEVEL
    if unknown:
        raise ManifestError(f"unknown manifest keys {', '.join(sorted(unknown))}")

    entries = data.get("entries", [])
    if not isinstance(entries, list):
        raise ManifestError("'entries' must be an array of tables")

    prefixes = data.get("prefixes", {})
    if not isinstance(prefixes, dict) or not all(isinstance(v, str) for v in prefixes.values()):
        raise ManifestError("'prefixes' must map labels to namespace IRIs")

    allowance = data.get("naming_allowance", [])
    if not isinstance(allowance, list) or not all(isinstance(v, str) for v in allowance):
        raise ManifestError("'naming_allowance' must be a list of names")

    namespace = data.get("namespace", DEFAULT_NAMESPACE)
    try:
        IRI(namespace)
    except (InvalidTerm, TypeError):
        raise ManifestError(f"namespace {namespace!r} is not an absolute IRI") from None

    return Manifest(
        entries=tuple(_entry(raw, index) for index, raw in enumerate(entries)),
        namespace=namespace,
        prefixes=dict(prefixes),
        title=data.get("title"),
        naming_allowance=tuple(allowance),
    )


def load_manifest(path: str) -> Manifest:
    with open(path, "r", encoding="utf-8") as f:
        manifest = parse_manifest(f.read())
    logger.debug(f"Loaded {len(manifest.entries)} manifest entries from {path}.")
    return manifest


###
# Verification

@dataclasses.dataclass(frozen=True)
class VerificationProfile:
    """
    The published shape a manifest is expected to have.
    """
    class_count: int
    object_property_count: int
    data_property_count: int
    sdh_data_property_count: int
    mandatory_classes: t.Tuple[str, ...]
    mandatory_sdh_properties: t.Tuple[str, ...]
    #: (sub, super) pairs that must follow from the class entries.
    required_subsumptions: t.Tuple[t.Tuple[str, str], ...]


CSSDH_PROFILE = VerificationProfile(
    class_count=171,
    object_property_count=141,
    data_property_count=210,
    sdh_data_property_count=171,
    mandatory_classes=(
        "SubjectOfCare", "CareProfessional", "Observation", "HospitalAppointment",
        "Referral", "TargetCondition", "HealthCondition",
        "MentalObject", "Stative", "Event",
    ),
    mandatory_sdh_properties=(
        "Lay-off-from-job", "Crowding_at_home", "Lives-in-low-income-area",
        "Medical-services-not-available-at-home",
        "Problems-associated-with-exposure-to-radiation",
        "Problems-associated-with-exposure-to-tobacco-smoke",
    ),
    required_subsumptions=(("TargetCondition", "HealthCondition"),),
)


@dataclasses.dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    checks: t.Tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> t.List[Check]:
        return [check for check in self.checks if not check.passed]

    def check(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def format(self) -> str:
        return "\n".join(str(check) for check in self.checks)


class _Verifier:

    def __init__(self, manifest: Manifest) -> None:
        self.manifest = manifest
        self.checks: t.List[Check] = []
        self.by_name: t.Dict[str, CatalogEntry] = {}
        for entry in manifest.entries:
            self.by_name.setdefault(entry.term, entry)

    def add(self, name: str, problems: t.Sequence[str], success: str = "") -> None:
        if problems:
            shown = "; ".join(problems[:5])
            if len(problems) > 5:
                shown += f"; and {len(problems) - 5} more"
            self.checks.append(Check(name, False, shown))
        else:
            self.checks.append(Check(name, True, success))

    def is_kind(self, name: t.Optional[str], kind: EntryKind) -> bool:
        return name is not None and name in self.by_name and self.by_name[name].kind == kind

    def is_datatype(self, name: str) -> bool:
        try:
            iri = self.manifest.resolve(name)
        except ManifestError:
            return False
        return iri in XSD or iri == RDFS.Literal

    def is_builtin_class(self, name: str) -> bool:
        try:
            return self.manifest.resolve(name) in (OWL.Thing, RDFS.Resource)
        except ManifestError:
            return False

    def unique(self) -> None:
        seen: t.Set[str] = set()
        duplicates = []
        for entry in self.manifest.entries:
            if entry.term in seen:
                duplicates.append(f"{entry.term} is declared more than once")
            seen.add(entry.term)
        self.add("unique-terms", duplicates)

    def resolvable(self) -> None:
        problems = []
        for entry in self.manifest.entries:
            for name in (entry.term, entry.parent, entry.domain, entry.range, entry.equivalent, entry.inverse, *entry.disjoint_with):
                if name is None:
                    continue
                try:
                    self.manifest.resolve(name)
                except ManifestError as e:
                    problems.append(str(e))
        self.add("resolvable-names", problems)

    def sdh_categories(self) -> None:
        problems = [
            f"{entry.term} is a {entry.kind.value} but carries an SDH category"
            for entry in self.manifest.entries
            if entry.sdh_category is not None and entry.kind != EntryKind.DATA_PROPERTY
        ]
        self.add("sdh-categories", problems)

    def sdh_boolean(self) -> None:
        problems = []
        for entry in self.manifest.of_kind(EntryKind.DATA_PROPERTY):
            if entry.sdh_category is None:
                continue
            try:
                boolean = entry.range is not None and self.manifest.resolve(entry.range) == XSD_BOOLEAN
            except ManifestError:
                boolean = False
            if not boolean:
                problems.append(
                    f"SDH data property {entry.term} must have range xsd:boolean, "
                    f"has {entry.range or 'none'}"
                )
        self.add("sdh-boolean-range", problems)

    def closure(self) -> None:
        problems = []
        for entry in self.manifest.entries:
            if entry.kind == EntryKind.CLASS:
                if entry.parent and not (self.is_kind(entry.parent, EntryKind.CLASS) or self.is_builtin_class(entry.parent)):
                    problems.append(f"parent {entry.parent} of {entry.term} is not a class entry")
                for other in (entry.equivalent, *entry.disjoint_with):
                    if other and not self.is_kind(other, EntryKind.CLASS):
                        problems.append(f"{other} referenced by {entry.term} is not a class entry")
                continue

            if entry.parent and not self.is_kind(entry.parent, entry.kind):
                problems.append(f"parent {entry.parent} of {entry.term} is not a {entry.kind.value} entry")
            if entry.domain and not (self.is_kind(entry.domain, EntryKind.CLASS) or self.is_builtin_class(entry.domain)):
                problems.append(f"domain {entry.domain} of {entry.term} is not a class entry")
            if entry.inverse and not self.is_kind(entry.inverse, EntryKind.OBJECT_PROPERTY):
                problems.append(f"inverse {entry.inverse} of {entry.term} is not an object property entry")
            if entry.range:
                if entry.kind == EntryKind.DATA_PROPERTY and not self.is_datatype(entry.range):
                    problems.append(f"range {entry.range} of {entry.term} is not a datatype")
                elif entry.kind == EntryKind.OBJECT_PROPERTY and not (
                        self.is_kind(entry.range, EntryKind.CLASS) or self.is_builtin_class(entry.range)
                ):
                    problems.append(f"range {entry.range} of {entry.term} is not a class entry")
        self.add("referential-closure", problems)

    def counts(self, profile: VerificationProfile) -> None:
        found = (
            len(self.manifest.of_kind(EntryKind.CLASS)),
            len(self.manifest.of_kind(EntryKind.OBJECT_PROPERTY)),
            len(self.manifest.of_kind(EntryKind.DATA_PROPERTY)),
            sum(1 for e in self.manifest.of_kind(EntryKind.DATA_PROPERTY) if e.sdh_category is not None),
        )
        expected = (
            profile.class_count, profile.object_property_count,
            profile.data_property_count, profile.sdh_data_property_count,
        )
        labels = ("classes", "objectProperties", "dataProperties", "sdhDataProperties")
        problems = [
            f"{label}={have}, expected {want}"
            for label, have, want in zip(labels, found, expected) if have != want
        ]
        summary = " ".join(f"{label}={have}" for label, have in zip(labels, found))
        self.add("counts", problems, summary)

    def mandatory(self, profile: VerificationProfile) -> None:
        self.add("mandatory-classes", [
            f"missing mandatory class {name}"
            for name in profile.mandatory_classes
            if not self.is_kind(name, EntryKind.CLASS)
        ])
        problems = []
        for name in profile.mandatory_sdh_properties:
            if not self.is_kind(name, EntryKind.DATA_PROPERTY):
                problems.append(f"missing mandatory SDH data property {name}")
            elif self.by_name[name].sdh_category is None:
                problems.append(f"{name} carries no SDH category")
        self.add("mandatory-sdh-properties", problems)

    def subsumptions(self, profile: VerificationProfile) -> None:
        edges: t.Dict[str, t.Set[str]] = {}
        for entry in self.manifest.of_kind(EntryKind.CLASS):
            if entry.parent:
                edges.setdefault(entry.term, set()).add(entry.parent)
            if entry.equivalent:
                edges.setdefault(entry.term, set()).add(entry.equivalent)
                edges.setdefault(entry.equivalent, set()).add(entry.term)

        problems = []
        for sub, sup in profile.required_subsumptions:
            seen, todo = {sub}, [sub]
            while todo:
                for nxt in edges.get(todo.pop(), ()):
                    if nxt not in seen:
                        seen.add(nxt)
                        todo.append(nxt)
            if sup not in seen:
                problems.append(f"{sub} is not a subclass of {sup}")
        self.add("required-subsumptions", problems)


def verify_manifest(manifest: Manifest, *, profile: t.Optional[VerificationProfile] = CSSDH_PROFILE) -> VerificationReport:
    """
    Checks a manifest. Failures are reported, never raised.

    :param profile: The expected published shape. Pass None to run only
                    the structural checks every manifest must pass.
    """
    verifier = _Verifier(manifest)
    verifier.unique()
    verifier.resolvable()
    verifier.sdh_categories()
    verifier.sdh_boolean()
    verifier.closure()
    if profile is not None:
        verifier.counts(profile)
        verifier.mandatory(profile)
        verifier.subsumptions(profile)
    return VerificationReport(tuple(verifier.checks))


###
# Generation

def _label(text: str) -> Literal:
    return Literal(text)


def build_schema(manifest: Manifest) -> t.Tuple[Graph, AxiomSet]:
    """
    Generates the ontology graph of a manifest and its axioms.

    The same manifest always yields the same graph.

    :raises ManifestError: When the structural checks fail.
    """
    report = verify_manifest(manifest, profile=None)
    if not report.passed:
        raise ManifestError("manifest failed verification:\n" + "\n".join(str(c) for c in report.failures))

    graph = Graph()
    resolve = manifest.resolve

    if manifest.title is not None or manifest.naming_allowance:
        ontology = IRI(manifest.namespace.rstrip("#/"))
        graph.add(ontology, RDF.type, OWL.Ontology)
        if manifest.title is not None:
            graph.add(ontology, RDFS.label, _label(manifest.title))
        if manifest.naming_allowance:
            graph.add(NAMING_ALLOWANCE, RDF.type, OWL.AnnotationProperty)
            graph.add(NAMING_ALLOWANCE, RDFS.label, _label("naming allowance"))
            for name in manifest.naming_allowance:
                graph.add(ontology, NAMING_ALLOWANCE, Literal(name))

    if any(entry.sdh_category is not None for entry in manifest.entries):
        graph.add(SDH_CATEGORY, RDF.type, OWL.AnnotationProperty)
        graph.add(SDH_CATEGORY, RDFS.label, _label("SDH category"))

    declaration = {
        EntryKind.CLASS: OWL.Class,
        EntryKind.OBJECT_PROPERTY: OWL.ObjectProperty,
        EntryKind.DATA_PROPERTY: OWL.DatatypeProperty,
    }

    for entry in manifest.entries:
        iri = resolve(entry.term)
        graph.add(iri, RDF.type, declaration[entry.kind])
        graph.add(iri, RDFS.label, _label(entry.label))

        if entry.kind == EntryKind.CLASS:
            if entry.parent:
                graph.add(iri, RDFS.subClassOf, resolve(entry.parent))
            if entry.equivalent:
                graph.add(iri, OWL.equivalentClass, resolve(entry.equivalent))
            for other in entry.disjoint_with:
                graph.add(iri, OWL.disjointWith, resolve(other))
            continue

        if entry.parent:
            graph.add(iri, RDFS.subPropertyOf, resolve(entry.parent))
        if entry.domain:
            graph.add(iri, RDFS.domain, resolve(entry.domain))
        if entry.range:
            graph.add(iri, RDFS.range, resolve(entry.range))
        if entry.inverse:
            graph.add(iri, OWL.inverseOf, resolve(entry.inverse))
        if entry.sdh_category is not None:
            graph.add(iri, SDH_CATEGORY, Literal(entry.sdh_category.value))

    axioms = extract_axioms(graph)
    logger.info(f"Built schema with {len(graph)} triples and {len(axioms)} axioms.")
    return graph, axioms


###
# Shipped artifact

@functools.lru_cache(maxsize=None)
def shipped_manifest() -> Manifest:
    """
    The manifest shipped with the package.
    """
    text = (resources.files("cssdh") / "data" / "manifest.toml").read_text(encoding="utf-8")
    return parse_manifest(text)


@functools.lru_cache(maxsize=None)
def shipped_schema() -> t.Tuple[Graph, AxiomSet]:
    """
    The generated shipped schema. Treat the returned graph as read-only.
    """
    return build_schema(shipped_manifest())
