# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
import dataclasses
import typing as t


__all__ = [
    "CssdhError", "ParseDiagnostic", "DiagnosticError",
    "diagnostic_at", "local_name"
]


class CssdhError(Exception):
    pass


@dataclasses.dataclass(frozen=True, slots=True)
class ParseDiagnostic:
    #: 1-based
    line: int
    #: 1-based
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class DiagnosticError(CssdhError):
    diagnostic: ParseDiagnostic

    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


def diagnostic_at(text: str, offset: int, message: str) -> ParseDiagnostic:
    """
    Builds a diagnostic for the character at the given offset.

    Offsets past the end are clamped onto the last character,
    so the position always points inside the input.
    """
    if not text:
        return ParseDiagnostic(1, 1, message)

    offset = max(0, min(offset, len(text) - 1))
    line = text.count("\n", 0, offset) + 1
    line_start = text.rfind("\n", 0, offset) + 1
    return ParseDiagnostic(line, offset - line_start + 1, message)


def local_name(iri: t.Union[str, t.Any]) -> str:
    value = str(iri).rstrip("#/")
    cut = max(value.rfind("#"), value.rfind("/"))
    return value[cut + 1:]
