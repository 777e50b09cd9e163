"""Text formats for proofs and GER certificates.

wer proof (one step per line, ids implicit by order)::

    step    = resolve / weaken / bc / rat / sbc
    resolve = "r" SP id SP id SP pivot *(SP lit) SP "0"   ; id or pivot 0: search (permissive)
    weaken  = "w" SP id *(SP lit) SP "0"
    bc      = "b" SP lit *(SP lit) SP "0"     ; clause is the witness plus the rest
    rat     = "t" SP lit *(SP lit) SP "0"
    sbc     = "s" SP k 1*(SP lit) SP "0"      ; first k literals are the witness set

GER certificate::

    cert    = "keep" EOL *id "0" EOL          ; ids may span lines
              "ext" EOL *("x" SP lit *(SP lit) SP "0" EOL)
              "res" EOL *(resolve / weaken)

Lines starting with "c" are comments and blank lines are ignored.  For
``b``/``t`` lines the witness may be repeated among the rest; the writer
emits the witness once.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from ..core import Clause, literal_key, var
from ..errors import ParseError, TautologyRejection
from .model import AddBC, AddRAT, AddSBC, GerCertificate, Proof, ProofStep, Resolve, Weaken


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"expected integers: {exc}", lineno) from None


def _terminated(nums: list[int], lineno: int) -> list[int]:
    if not nums or nums[-1] != 0:
        raise ParseError("line must end with 0", lineno)
    body = nums[:-1]
    if 0 in body:
        raise ParseError("0 inside literal list", lineno)
    return body


def _clause(lits: Iterable[int], lineno: int) -> Clause:
    try:
        return Clause(lits)
    except TautologyRejection as exc:
        raise ParseError(str(exc), lineno) from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        yield lineno, line.split()


def parse_step(tokens: list[str], lineno: int, allowed: str = "rwbts") -> ProofStep:
    head = tokens[0]
    if head not in allowed or len(head) != 1:
        raise ParseError(f"unknown directive {head!r}", lineno)
    nums = _ints(tokens[1:], lineno)
    # r/w hints and the s witness size precede the 0-terminated literal list
    nhead = {"r": 3, "w": 1, "s": 1}.get(head, 0)
    if len(nums) <= nhead:
        raise ParseError(f"{head} line too short", lineno)
    fields, body = nums[:nhead], _terminated(nums[nhead:], lineno)
    if head == "r":
        i, j, pivot = fields
        if i < 0 or j < 0 or pivot < 0:
            raise ParseError("ids and pivot must be nonnegative", lineno)
        return Resolve(i, j, pivot, _clause(body, lineno))
    if head == "w":
        if fields[0] < 0:
            raise ParseError("premise id must be nonnegative", lineno)
        return Weaken(fields[0], _clause(body, lineno))
    if head in "bt":
        if not body:
            raise ParseError("missing witness literal", lineno)
        p = body[0]
        c = _clause(body, lineno)
        return AddBC(p, c) if head == "b" else AddRAT(p, c)
    k = fields[0]
    if k < 1 or k > len(body):
        raise ParseError(f"witness size {k} out of range", lineno)
    return AddSBC(frozenset(body[:k]), _clause(body, lineno))


def _lits(lits: Iterable[int]) -> list[str]:
    return [str(l) for l in sorted(lits, key=literal_key)]


def format_step(step: ProofStep) -> str:
    if isinstance(step, Resolve):
        parts = ["r", str(step.i), str(step.j), str(var(step.pivot)) if step.pivot else "0", *_lits(step.result)]
    elif isinstance(step, Weaken):
        parts = ["w", str(step.i), *_lits(step.result)]
    elif isinstance(step, (AddBC, AddRAT)):
        parts = [step.kind, str(step.p), *_lits(step.result - {step.p})]
    elif isinstance(step, AddSBC):
        parts = ["s", str(len(step.L)), *_lits(step.L), *_lits(step.result - step.L)]
    else:
        raise TypeError(f"not a proof step: {step!r}")
    return " ".join(parts + ["0"])


def parse_proof(text: str) -> Proof:
    return Proof(parse_step(tokens, lineno) for lineno, tokens in _content_lines(text))


def dumps_proof(pf: Proof, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.extend(format_step(s) for s in pf.steps)
    return "\n".join(lines) + "\n" if lines else ""


def parse_ger(text: str) -> GerCertificate:
    section = None
    seen: list[str] = []
    kept: list[int] = []
    keep_closed = False
    blocked: list[tuple[int, Clause]] = []
    res: list[ProofStep] = []
    for lineno, tokens in _content_lines(text):
        if len(tokens) == 1 and tokens[0] in ("keep", "ext", "res"):
            name = tokens[0]
            expected = ("keep", "ext", "res")[len(seen)] if len(seen) < 3 else None
            if name != expected:
                raise ParseError(f"section {name!r} out of order (expected {expected!r})", lineno)
            if name == "ext" and not keep_closed:
                raise ParseError("keep section not terminated by 0", lineno)
            seen.append(name)
            section = name
            continue
        if section is None:
            raise ParseError("content before the keep section", lineno)
        if section == "keep":
            if keep_closed:
                raise ParseError("data after keep terminator", lineno)
            for n in _ints(tokens, lineno):
                if keep_closed:
                    raise ParseError("data after keep terminator", lineno)
                if n == 0:
                    keep_closed = True
                elif n < 0:
                    raise ParseError("clause ids are positive", lineno)
                else:
                    kept.append(n)
        elif section == "ext":
            if tokens[0] != "x":
                raise ParseError(f"unknown directive {tokens[0]!r} in ext section", lineno)
            body = _terminated(_ints(tokens[1:], lineno), lineno)
            if not body:
                raise ParseError("missing witness literal", lineno)
            blocked.append((body[0], _clause(body, lineno)))
        else:
            res.append(parse_step(tokens, lineno, allowed="rw"))
    if seen != ["keep", "ext", "res"]:
        raise ParseError(f"missing sections: expected keep, ext, res; got {seen}")
    return GerCertificate(kept, blocked, Proof(res))


def dumps_ger(cert: GerCertificate, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append("keep")
    lines.append(" ".join([*(str(i) for i in cert.kept), "0"]))
    lines.append("ext")
    lines.extend(" ".join(["x", str(p), *_lits(c - {p}), "0"]) for p, c in cert.blocked_order)
    lines.append("res")
    lines.extend(format_step(s) for s in cert.resolution.steps)
    return "\n".join(lines) + "\n"


def read_proof(path: str | Path) -> Proof:
    return parse_proof(Path(path).read_text())


def read_ger(path: str | Path) -> GerCertificate:
    return parse_ger(Path(path).read_text())
