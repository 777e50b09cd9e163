"""DIMACS CNF reading and writing.

Grammar accepted by :func:`parse`::

    file     = *(comment / blank) header *(comment / blank / clause-tok)
    comment  = "c" [ SP text ] EOL
    header   = "p" SP "cnf" SP nvars SP nclauses EOL
    clause   = *(literal SP) "0"        ; may span lines

Written files put each clause on its own line with literals in canonical
order (by variable, positive first), so ``write(parse(write(f)))`` is
byte-identical to ``write(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .core import Clause, Formula
from .errors import ParseError, TautologyRejection


@dataclass
class CnfFile:
    formula: Formula
    comments: list[str] = field(default_factory=list)


def parse(text: str) -> CnfFile:
    comments: list[str] = []
    clauses: list[Clause] = []
    header: tuple[int, int] | None = None
    pending: list[int] = []
    pending_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"bad header {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative header field", lineno)
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        if line[0] == "%":  # SATLIB end marker
            break
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if not pending:
                pending_line = lineno
            if lit == 0:
                try:
                    clauses.append(Clause(pending))
                except TautologyRejection as exc:
                    raise ParseError(str(exc), pending_line) from None
                pending = []
            else:
                if abs(lit) > header[0]:
                    raise ParseError(f"literal {lit} exceeds declared {header[0]} variables", lineno)
                pending.append(lit)
    if header is None:
        raise ParseError("missing header")
    if pending:
        raise ParseError("last clause not terminated by 0", pending_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFile(Formula(clauses, num_vars=header[0]), comments)


def format_clause(c: Clause) -> str:
    return " ".join([*(str(l) for l in c.sorted()), "0"])


def dumps(g: Formula, comments: list[str] | tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p cnf {g.num_vars} {g.num_entries}")
    lines.extend(format_clause(c) for c in g.entries)
    return "\n".join(lines) + "\n"


def read(path: str | Path) -> CnfFile:
    return parse(Path(path).read_text())


def write(path: str | Path, g: Formula, comments: list[str] | tuple[str, ...] = ()) -> None:
    Path(path).write_text(dumps(g, comments))
