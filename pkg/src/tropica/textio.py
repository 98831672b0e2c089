"""Reading and writing matrices in the text and JSON formats.

Text: one row per line, whitespace-separated scalar tokens; blank lines and
lines starting with ``#`` are ignored.  JSON:
``{"rows": m, "cols": n, "semiring": "rmax|smax|te", "entries": [...]}``
with entries row-major, either as tokens or (for R_max) numbers.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError, SemiringMismatch, TropicaError
from .matrices import Matrix
from .scalars import SEMIRINGS, parse_scalar


def _token_rows(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            tokens.append((tok, col + 1))
            col += len(tok)
        yield lineno, tokens


def parse_matrix_text(text: str, semiring: str = "rmax") -> Matrix:
    if semiring not in SEMIRINGS:
        raise SemiringMismatch(f"unknown semiring tag {semiring!r}")
    rows = []
    width = None
    for lineno, tokens in _token_rows(text):
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(f"ragged row: expected {width} entries, got {len(tokens)}", lineno)
        row = []
        for tok, col in tokens:
            try:
                row.append(parse_scalar(tok, semiring))
            except SemiringMismatch as exc:
                raise SemiringMismatch(f"line {lineno}, column {col}: {exc}") from None
            except ParseError as exc:
                raise ParseError(str(exc), lineno, col) from None
        rows.append(row)
    if not rows:
        raise ParseError("no matrix rows found")
    return Matrix(rows, semiring)


def parse_matrix_json(data, semiring: str | None = None) -> Matrix:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        m, n, tag, entries = data["rows"], data["cols"], data["semiring"], data["entries"]
    except (KeyError, TypeError):
        raise ParseError("JSON matrix needs rows, cols, semiring and entries") from None
    if tag not in SEMIRINGS:
        raise SemiringMismatch(f"unknown semiring tag {tag!r}")
    if semiring is not None and semiring != tag:
        raise SemiringMismatch(f"file is tagged {tag} but {semiring} was requested")
    if not isinstance(m, int) or not isinstance(n, int) or m < 1 or n < 1:
        raise ParseError("rows and cols must be positive integers")
    if len(entries) != m * n:
        raise ParseError(f"expected {m * n} entries, found {len(entries)}")
    flat = []
    for k, e in enumerate(entries):
        tok = e if isinstance(e, str) else str(e)
        if isinstance(e, float) and e != float("-inf"):
            raise ParseError(f"entry {k}: floats are not exact; write a rational token")
        try:
            flat.append(parse_scalar(tok, tag))
        except ParseError as exc:
            raise ParseError(f"entry {k}: {exc}") from None
    return Matrix([flat[i * n : (i + 1) * n] for i in range(m)], tag)


def parse_matrix(text: str, semiring: str | None = None) -> Matrix:
    """Parse either format; JSON is recognized by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return parse_matrix_json(text, semiring)
    return parse_matrix_text(text, semiring or "rmax")


def load_matrix(path, semiring: str | None = None) -> Matrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise TropicaError(f"cannot read {path}: {exc.strerror}") from None
    return parse_matrix(text, semiring)


def parse_vector(text: str, semiring: str = "rmax") -> list:
    """A vector file: tokens on one line or one per line."""
    if text.lstrip().startswith("{"):
        M = parse_matrix_json(text, semiring)
    else:
        M = parse_matrix_text(text, semiring)
    if M.rows == 1:
        return list(M.row(0))
    if M.cols == 1:
        return list(M.col(0))
    raise ParseError(f"expected a vector, got a {M.rows}x{M.cols} matrix")


def load_vector(path, semiring: str = "rmax") -> list:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise TropicaError(f"cannot read {path}: {exc.strerror}") from None
    return parse_vector(text, semiring)


def format_matrix(M: Matrix, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(M.to_json())
    return M.to_text()
