"""Plain-text snapshot files.

    # m=<m> T=<T>
    <y_0(0)> <y_1(0)> ... <y_{m-1}(0)>
    ...

One snapshot per line, entries written as "re+imj" tokens separated by
whitespace. Blank lines are ignored.
"""
import re

import numpy as np

from src.errors import ParseError, ValidationError
from src.stats.simulation import SnapshotSet

HEADER = re.compile(r"^#\s*m=(\d+)\s+T=(\d+)\s*$")
TOKEN = re.compile(r"\S+")


def format_entry(z):
    return f"{z.real:.17g}{z.imag:+.17g}j"


def write_snapshots(path, snapshots):
    Y = np.asarray(getattr(snapshots, "snapshots", snapshots), dtype=complex)
    m, T = Y.shape
    with open(path, "w") as f:
        f.write(f"# m={m} T={T}\n")
        for t in range(T):
            f.write(" ".join(format_entry(z) for z in Y[:, t]) + "\n")


def _parse_row(line, lineno, m):
    tokens = list(TOKEN.finditer(line))
    if len(tokens) != m:
        column = tokens[m].start() + 1 if len(tokens) > m else len(line.rstrip("\n")) + 1
        raise ParseError(f"expected {m} entries, found {len(tokens)}", lineno, column)
    row = np.empty(m, dtype=complex)
    for k, tok in enumerate(tokens):
        try:
            row[k] = complex(tok.group())
        except ValueError:
            raise ParseError(f"bad complex entry {tok.group()!r}", lineno, tok.start() + 1) from None
    return row


def read_snapshots(path):
    with open(path, "r") as f:
        lines = f.readlines()
    header_at = next((i for i, line in enumerate(lines) if line.strip()), None)
    if header_at is None:
        raise ParseError("empty file, expected a '# m=<m> T=<T>' header", 1)
    match = HEADER.match(lines[header_at].strip())
    if not match:
        raise ParseError("expected a '# m=<m> T=<T>' header", header_at + 1, 1)
    m, T = int(match.group(1)), int(match.group(2))
    if m < 1:
        raise ParseError("m must be positive", header_at + 1)

    rows = []
    for i in range(header_at + 1, len(lines)):
        if lines[i].strip():
            rows.append(_parse_row(lines[i], i + 1, m))
    if len(rows) != T:
        raise ParseError(f"header declares T={T} snapshots, found {len(rows)}", len(lines))
    if T == 0:
        raise ValidationError("snapshot file holds no snapshots (T=0)")
    return SnapshotSet(np.array(rows).T)
