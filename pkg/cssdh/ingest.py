# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
cssdh.ingest turns flat patient records into individuals of the schema.

    >>> records = parse_records("id,forename,Lay-off-from-job\\np001,Ana,true\\n")
    >>> graph = to_graph(records)

Records are comma separated with a header row. The columns id and
forename are required, surname is optional and every other column
must name an SDH data property of the manifest. SDH cells hold true or
false; an empty cell means the value was not recorded, and nothing is
asserted for it.
"""
import re
import csv
import io
import logging
import dataclasses
import typing as t

from cssdh._helpers import CssdhError
from cssdh.graph import Graph
from cssdh.terms import IRI, Literal, RDF, boolean
from cssdh.vocab import PATIENT
from cssdh.schema import Manifest, EntryKind, shipped_manifest


__all__ = [
    "PatientRecord", "parse_records", "load_records", "to_graph", "patient_iri",
    "RecordFormatError", "NonBooleanSdhValue", "UnknownSdhColumn", "DuplicateId",
    "UnknownSdhProperty"
]


logger = logging.getLogger(__name__)


class RecordFormatError(CssdhError):
    pass


class NonBooleanSdhValue(RecordFormatError):

    #: None for records that were not read from text.
    row: t.Optional[int]

    def __init__(self, row: t.Optional[int], column: str, value: t.Any, record_id: t.Optional[str] = None):
        where = f"row {row}" if row is not None else f"record {record_id!r}"
        super().__init__(f"{where}, column {column}: {value!r} is not true or false")
        self.row = row
        self.column = column
        self.value = value


class UnknownSdhColumn(RecordFormatError):
    def __init__(self, column: str):
        super().__init__(f"column {column!r} is not an SDH data property")
        self.column = column


class DuplicateId(RecordFormatError):
    def __init__(self, record_id: str, row: int):
        super().__init__(f"row {row}: duplicate record id {record_id!r}")
        self.id = record_id
        self.row = row


class UnknownSdhProperty(CssdhError):
    def __init__(self, key: str):
        super().__init__(f"{key!r} is not an SDH data property of the manifest")
        self.key = key


@dataclasses.dataclass(frozen=True)
class PatientRecord:
    id: str
    forename: str
    surname: t.Optional[str] = None
    #: SDH data property local name to value. Absent keys were not recorded.
    sdh: t.Mapping[str, bool] = dataclasses.field(default_factory=dict)


_ID_RE = re.compile(r"^[A-Za-z0-9._~-]+$")
_FIXED_COLUMNS = ("id", "forename", "surname")


def _sdh_names(manifest: Manifest) -> t.Set[str]:
    return {
        entry.term for entry in manifest.of_kind(EntryKind.DATA_PROPERTY)
        if entry.sdh_category is not None
    }


def _boolean(value: str, row: int, column: str) -> t.Optional[bool]:
    lowered = value.strip().lower()
    if lowered == "":
        return None
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    raise NonBooleanSdhValue(row, column, value)


def _rows(text: str) -> t.Iterator[t.Tuple[int, t.List[str]]]:
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    while True:
        try:
            cells = next(reader)
        except StopIteration:
            return
        except csv.Error as e:
            raise RecordFormatError(f"row {reader.line_num}: {e}") from None
        yield reader.line_num, cells


def parse_records(
        text: str,
        manifest: t.Optional[Manifest] = None,
        *,
        strict: bool = True
) -> t.List[PatientRecord]:
    """
    Reads patient records.

    :param manifest: Defines the valid SDH columns. Defaults to the shipped manifest.
    :param strict: If False, columns that name no SDH property are ignored instead of rejected.
    :raises RecordFormatError: On a missing header, a bad id, broken quoting or a row of the wrong width.
    :raises NonBooleanSdhValue: For an SDH cell other than true/false/empty. Rows are line numbers.
    :raises UnknownSdhColumn: For an unknown column in strict mode.
    :raises DuplicateId: If an id repeats.
    """
    if manifest is None:
        manifest = shipped_manifest()
    if text.startswith("\ufeff"):
        text = text[1:]

    rows = _rows(text)
    first = next(rows, None)
    if first is None:
        return []
    header = [column.strip() for column in first[1]]

    for required in ("id", "forename"):
        if required not in header:
            raise RecordFormatError(f"header lacks the {required!r} column")
    if len(set(header)) != len(header):
        raise RecordFormatError("header repeats a column")

    known = _sdh_names(manifest)
    sdh_columns: t.List[t.Tuple[int, str]] = []
    for index, column in enumerate(header):
        if column in _FIXED_COLUMNS:
            continue
        if column in known:
            sdh_columns.append((index, column))
        elif strict:
            raise UnknownSdhColumn(column)
        else:
            logger.warning(f"Ignoring column {column!r}: not an SDH data property.")

    position = {column: index for index, column in enumerate(header)}
    records: t.List[PatientRecord] = []
    seen: t.Set[str] = set()

    for row, cells in rows:
        if not cells or all(not cell.strip() for cell in cells):
            continue
        if len(cells) != len(header):
            raise RecordFormatError(f"row {row}: expected {len(header)} cells, found {len(cells)}")

        record_id = cells[position["id"]].strip()
        if not record_id:
            raise RecordFormatError(f"row {row}: empty id")
        if not _ID_RE.match(record_id):
            raise RecordFormatError(f"row {row}: id {record_id!r} may only contain letters, digits and ._~-")
        if record_id in seen:
            raise DuplicateId(record_id, row)
        seen.add(record_id)

        surname = cells[position["surname"]].strip() if "surname" in position else ""
        sdh = {}
        for index, column in sdh_columns:
            value = _boolean(cells[index], row, column)
            if value is not None:
                sdh[column] = value

        records.append(PatientRecord(
            id=record_id,
            forename=cells[position["forename"]].strip(),
            surname=surname or None,
            sdh=sdh,
        ))

    logger.debug(f"Parsed {len(records)} patient records with {len(sdh_columns)} SDH columns.")
    return records


def load_records(path: str, manifest: t.Optional[Manifest] = None, *, strict: bool = True) -> t.List[PatientRecord]:
    """
    Reads patient records from a UTF-8 file.

    :raises RecordFormatError: Also when the file is not valid UTF-8.
    """
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        row = data.count(b"\n", 0, e.start) + 1
        raise RecordFormatError(f"row {row}: not valid UTF-8") from None
    return parse_records(text, manifest, strict=strict)


def patient_iri(record_id: str, manifest: t.Optional[Manifest] = None) -> IRI:
    namespace = (manifest or shipped_manifest()).namespace
    return IRI(f"{namespace}patient/{record_id}")


def to_graph(records: t.Iterable[PatientRecord], manifest: t.Optional[Manifest] = None) -> Graph:
    """
    Builds the individuals for the records.

    Every patient is typed fhir:Patient and SubjectOfCare. Only recorded
    SDH values produce triples, always as xsd:boolean literals.

    :raises UnknownSdhProperty: If a record holds a key that is no SDH data property.
    :raises NonBooleanSdhValue: If a record holds a value that is not a bool.
    """
    if manifest is None:
        manifest = shipped_manifest()

    known = _sdh_names(manifest)
    subject_of_care = manifest.resolve("SubjectOfCare")
    forename = manifest.resolve("forename")
    surname = manifest.resolve("surname")

    graph = Graph()
    for record in records:
        iri = patient_iri(record.id, manifest)
        graph.add(iri, RDF.type, PATIENT)
        graph.add(iri, RDF.type, subject_of_care)
        graph.add(iri, forename, Literal(record.forename))
        if record.surname is not None:
            graph.add(iri, surname, Literal(record.surname))
        for key, value in sorted(record.sdh.items()):
            if key not in known:
                raise UnknownSdhProperty(key)
            if not isinstance(value, bool):
                raise NonBooleanSdhValue(None, key, value, record.id)
            graph.add(iri, manifest.resolve(key), boolean(value))

    logger.info(f"Converted records into {len(graph)} triples.")
    return graph
