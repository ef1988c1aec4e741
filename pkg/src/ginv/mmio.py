"""Matrix Market and CSV reading/writing for dense complex matrices."""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

from .errors import ParseError
from .numkit import ComplexMatrix

MAX_SIZE = 64
FORMATS = ("matrix_market", "csv")

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def _check_size(m, n, line=None):
    if m < 1 or n < 1:
        raise ParseError(f"matrix dimensions must be positive, got {m}x{n}", line)
    if m > MAX_SIZE or n > MAX_SIZE:
        raise ParseError(f"matrix {m}x{n} exceeds the {MAX_SIZE}x{MAX_SIZE} cap", line)


def _float(token, line, column):
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"invalid number {token!r}", line, column) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {token!r}", line, column)
    return value


def parse_complex_cell(text: str, line: int | None = None, column: int | None = None) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (``j`` is accepted for ``i``)."""
    s = text.strip().replace(" ", "").lower()
    if s == "":
        raise ParseError("empty cell", line, column)

    def number(tok):
        if not _NUMBER.fullmatch(tok):
            raise ParseError(f"cannot parse complex literal {text.strip()!r}", line, column)
        return float(tok)

    if s[-1] not in "ij":
        return complex(number(s), 0.0)
    body = s[:-1]
    split = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] != "e":
            split = k
            break
    re_tok, im_tok = body[:split], body[split:]
    if im_tok in ("", "+", "-"):
        im_tok += "1"
    return complex(number(re_tok) if re_tok else 0.0, number(im_tok))


def _read_csv(text: str) -> ComplexMatrix:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() == "" or raw.lstrip().startswith("#"):
            continue
        cells = raw.split(",")
        rows.append([parse_complex_cell(c, lineno, col) for col, c in enumerate(cells, start=1)])
        if len(rows[-1]) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} columns, found {len(rows[-1])}", lineno)
    if not rows:
        raise ParseError("no data rows")
    _check_size(len(rows), len(rows[0]))
    return np.array(rows, dtype=np.complex128)


def _read_mm(text: str) -> ComplexMatrix:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket" or header[1].lower() != "matrix":
        raise ParseError("missing '%%MatrixMarket matrix <layout> <field> <symmetry>' header", 1)
    layout, fld, sym = (h.lower() for h in header[2:])
    if layout not in ("array", "coordinate"):
        raise ParseError(f"unsupported layout {layout!r}", 1, 3)
    if fld not in ("real", "complex", "integer"):
        raise ParseError(f"unsupported field {fld!r}", 1, 4)
    if sym not in ("general", "symmetric", "skew-symmetric", "hermitian"):
        raise ParseError(f"unsupported symmetry {sym!r}", 1, 5)
    if sym == "hermitian" and fld != "complex":
        raise ParseError("hermitian symmetry requires the complex field", 1, 5)
    width = 2 if fld == "complex" else 1

    body = [(i, ln.split()) for i, ln in enumerate(lines[1:], start=2) if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise ParseError("missing size line", len(lines))
    size_line, size = body[0]
    expected = 2 if layout == "array" else 3
    if len(size) != expected:
        raise ParseError(f"size line needs {expected} integers", size_line)
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise ParseError("size line must contain integers", size_line) from None
    m, n = dims[0], dims[1]
    _check_size(m, n, size_line)
    if sym != "general" and m != n:
        raise ParseError(f"{sym} matrix must be square", size_line)
    M = np.zeros((m, n), dtype=np.complex128)
    entries = body[1:]

    def value(tokens, start, lineno):
        if len(tokens) != start + width:
            raise ParseError(f"expected {start + width} fields, found {len(tokens)}", lineno)
        re_part = _float(tokens[start], lineno, start + 1)
        im_part = _float(tokens[start + 1], lineno, start + 2) if width == 2 else 0.0
        return complex(re_part, im_part)

    def mirror(i, j, v):
        if i == j:
            if sym == "skew-symmetric" and v != 0:
                raise ParseError("skew-symmetric matrix has a nonzero diagonal")
            return
        if sym == "symmetric":
            M[j, i] += v
        elif sym == "skew-symmetric":
            M[j, i] -= v
        elif sym == "hermitian":
            M[j, i] += v.conjugate()

    if layout == "array":
        if sym == "general":
            positions = [(i, j) for j in range(n) for i in range(m)]
        else:
            lo = 1 if sym == "skew-symmetric" else 0
            positions = [(i, j) for j in range(n) for i in range(j + lo, m)]
        if len(entries) != len(positions):
            raise ParseError(
                f"expected {len(positions)} array entries, found {len(entries)}",
                entries[-1][0] if entries else size_line,
            )
        for (i, j), (lineno, tokens) in zip(positions, entries):
            v = value(tokens, 0, lineno)
            M[i, j] = v
            if sym != "general":
                mirror(i, j, v)
    else:
        nnz = dims[2]
        if len(entries) != nnz:
            raise ParseError(f"expected {nnz} coordinate entries, found {len(entries)}", size_line)
        for lineno, tokens in entries:
            try:
                i, j = int(tokens[0]), int(tokens[1])
            except (ValueError, IndexError):
                raise ParseError("coordinate entry needs integer row and column", lineno, 1) from None
            if not (1 <= i <= m and 1 <= j <= n):
                raise ParseError(f"index ({i}, {j}) outside {m}x{n}", lineno, 1)
            v = value(tokens, 2, lineno)
            M[i - 1, j - 1] += v
            if sym != "general":
                mirror(i - 1, j - 1, v)
    return M


def read_matrix(path, format: str | None = None) -> ComplexMatrix:
    """Read a matrix; the format defaults from the extension (.csv, else Matrix Market)."""
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "matrix_market"
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}")
    text = path.read_text()
    return _read_csv(text) if format == "csv" else _read_mm(text)


def _num(x: float) -> str:
    return repr(float(x))


def format_complex(z: complex) -> str:
    re_part, im_part = float(z.real), float(z.imag)
    if im_part == 0 and math.copysign(1.0, im_part) > 0:
        return _num(re_part)
    sign = "-" if math.copysign(1.0, im_part) < 0 else "+"
    return f"{_num(re_part)}{sign}{_num(abs(im_part))}i"


def format_matrix(A, format: str = "matrix_market") -> str:
    """Canonical text: MM array (real field when every imaginary part is +0) or CSV."""
    A = np.asarray(A, dtype=np.complex128)
    m, n = A.shape
    if format == "csv":
        return "".join(",".join(format_complex(z) for z in row) + "\n" for row in A)
    real = all(z.imag == 0 and math.copysign(1.0, z.imag) > 0 for z in A.ravel())
    fld = "real" if real else "complex"
    out = [f"%%MatrixMarket matrix array {fld} general", f"{m} {n}"]
    for j in range(n):
        for i in range(m):
            z = A[i, j]
            out.append(_num(z.real) if real else f"{_num(z.real)} {_num(z.imag)}")
    return "\n".join(out) + "\n"


def write_matrix(path, A, format: str | None = None) -> None:
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "matrix_market"
    path.write_text(format_matrix(A, format))
