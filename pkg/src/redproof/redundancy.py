"""Blocked-clause, RAT and set-blocked-clause checks.

Each criterion is evaluated literally against the supplied formula; the
candidate clause may or may not already belong to it.  The ``*_failure``
helpers return the first clause (in id order) that breaks the criterion,
which the proof checkers use for their rejection messages.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .core import Clause, Formula, falsifying, is_tautological, project, satisfies
from .errors import EmptyWitness, InconsistentDerivedAssignment, WitnessNotInClause
from .propagation import unit_refutes

DEFAULT_MAX_L = 4


def _require_member(c: Clause, p: int) -> None:
    if p not in c:
        raise WitnessNotInClause(f"witness literal {p} is not in {c}")


def _witness_set(c: Clause, lits: Iterable[int]) -> frozenset[int]:
    L = frozenset(lits)
    if not L:
        raise EmptyWitness("set-blocked witness must be nonempty")
    if not L <= c:
        raise WitnessNotInClause(f"witness {sorted(L)} is not a subset of {c}")
    return L


def bc_failure(c: Clause, p: int, g: Formula) -> tuple[int, Clause] | None:
    _require_member(c, p)
    rest = c - {p}
    for cid, d in g.occurrences(-p):
        if not is_tautological(rest | (d - {-p})):
            return cid, d
    return None


def is_bc(c: Clause, p: int, g: Formula) -> bool:
    return bc_failure(c, p, g) is None


def rat_failure(c: Clause, p: int, g: Formula) -> tuple[int, Clause] | None:
    _require_member(c, p)
    rest = c - {p}
    for cid, d in g.occurrences(-p):
        if not unit_refutes(g, rest | (d - {-p})):
            return cid, d
    return None


def is_rat(c: Clause, p: int, g: Formula) -> bool:
    return rat_failure(c, p, g) is None


def sbc_failure(c: Clause, lits: Iterable[int], g: Formula) -> tuple[int, Clause] | None:
    L = _witness_set(c, lits)
    negL = frozenset(-l for l in L)
    rest = c - L
    seen: set[int] = set()
    candidates: list[tuple[int, Clause]] = []
    for l in L:
        for cid, d in g.occurrences(-l):
            if cid not in seen:
                seen.add(cid)
                candidates.append((cid, d))
    candidates.sort(key=lambda item: item[0])
    for cid, d in candidates:
        if not d.isdisjoint(L):
            continue
        if not is_tautological(rest | (d - negL)):
            return cid, d
    return None


def is_sbc(c: Clause, lits: Iterable[int], g: Formula) -> bool:
    return sbc_failure(c, lits, g) is None


def find_bc_witness(c: Clause, g: Formula) -> int | None:
    """First literal, in canonical order, for which ``c`` is blocked."""
    for p in c.sorted():
        if is_bc(c, p, g):
            return p
    return None


def find_rat_witness(c: Clause, g: Formula) -> int | None:
    for p in c.sorted():
        if is_rat(c, p, g):
            return p
    return None


def find_sbc_witness(c: Clause, g: Formula, max_L: int = DEFAULT_MAX_L) -> frozenset[int] | None:
    """First witness set by size, then lexicographically over canonical literal order."""
    lits = c.sorted()
    for size in range(1, min(max_L, len(lits)) + 1):
        for L in combinations(lits, size):
            if is_sbc(c, L, g):
                return frozenset(L)
    return None


def bc_projection_check(c: Clause, p: int, g: Formula) -> bool:
    """Whether the assignment falsifying ``c`` minus ``p`` satisfies the projection onto ``-p``."""
    _require_member(c, p)
    return satisfies(falsifying(c - {p}), project(g, -p))


def sbc_projection_check(c: Clause, lits: Iterable[int], g: Formula) -> bool:
    """For every p in L, does ``L`` plus the negated rest of ``c`` satisfy the projection onto ``-p``?"""
    L = _witness_set(c, lits)
    alpha = set(L) | {-l for l in c - L}
    if is_tautological(alpha):
        raise InconsistentDerivedAssignment(f"witness {sorted(L)} with {c} yields an inconsistent assignment")
    alpha = frozenset(alpha)
    return all(satisfies(alpha, project(g, -p)) for p in L)
