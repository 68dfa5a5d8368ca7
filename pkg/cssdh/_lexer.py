# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
"""
Tokenizer shared by the Turtle and SPARQL parsers.

Both syntaxes are built from the same atoms (IRIs, prefixed names,
string literals, punctuation), so one scanner feeds both grammars.
Tokens remember their offset; the parsers turn offsets into
line/column diagnostics.
"""
import re
import typing as t

from cssdh._helpers import DiagnosticError, diagnostic_at


__all__ = ["Token", "tokenize", "unescape_string"]


class Token(t.NamedTuple):
    kind: str
    value: str
    offset: int


# Order matters: earlier alternatives win.
_TOKEN_RE = re.compile(r"""
    (?P<WS>\s+)
  | (?P<COMMENT>\#[^\n]*)
  | (?P<IRI><[^<>"{}|^`\\\s]*>)
  | (?P<LSTRING>\"\"\"(?:[^"\\]|\\.|"(?!""))*\"\"\"|'''(?:[^'\\]|\\.|'(?!''))*''')
  | (?P<STRING>"(?:[^"\\\n]|\\.)*"|'(?:[^'\\\n]|\\.)*')
  | (?P<BNODE>_:[A-Za-z0-9_](?:[\w.-]*[\w-])?)
  | (?P<PNAME>(?:[A-Za-z](?:[\w.-]*[\w-])?)?:(?:[\w-](?:[\w.\-/]*[\w\-/])?)?)
  | (?P<VAR>[?$][A-Za-z_]\w*)
  | (?P<AT>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<NUMBER>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<NAME>[A-Za-z_][\w-]*)
  | (?P<OP>\^\^|&&|\|\||!=|<=|>=|[.;,{}()\[\]=!*/|+^<>-])
""", re.VERBOSE)

_ESCAPES = {
    "t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}
_ESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)", re.DOTALL)


def unescape_string(body: str) -> str:
    def _replace(match: re.Match) -> str:
        seq = match.group(1)
        if seq[0] in "uU":
            code = int(seq[1:], 16)
            if 0xD800 <= code <= 0xDFFF or code > 0x10FFFF:
                raise ValueError(f"escape \\{seq} is not a Unicode scalar value")
            return chr(code)
        if seq not in _ESCAPES:
            raise ValueError(f"invalid escape sequence \\{seq}")
        return _ESCAPES[seq]
    return _ESCAPE_RE.sub(_replace, body)


def tokenize(text: str, error: t.Type[DiagnosticError]) -> t.List[Token]:
    """
    Splits the text into tokens, dropping whitespace and comments.

    :param text: The source text.
    :param error: The exception class raised on characters that start no token.
    :returns: The list of tokens, terminated by an EOF-token.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise error(diagnostic_at(text, pos, f"unexpected character {text[pos]!r}"))

        kind = t.cast(str, match.lastgroup)
        if kind not in ("WS", "COMMENT"):
            if kind == "LSTRING":
                kind = "STRING"
                value = match.group()[3:-3]
            elif kind == "STRING":
                value = match.group()[1:-1]
            elif kind == "IRI":
                value = match.group()[1:-1]
            else:
                value = match.group()

            if kind == "STRING":
                try:
                    value = unescape_string(value)
                except ValueError as e:
                    raise error(diagnostic_at(text, pos, str(e))) from None

            tokens.append(Token(kind, value, pos))
        pos = match.end()

    tokens.append(Token("EOF", "", len(text)))
    return tokens
