"""Literals, clauses, formulas and assignments.

Literals use the DIMACS convention throughout: variable ``v >= 1`` is the
positive literal ``v`` and ``-v`` is its negation.  Clauses are frozensets of
such integers, formulas are insertion-ordered clause sets with stable 1-based
clause ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    InconsistentAssignment,
    NotResolvable,
    TautologyRejection,
    TooLarge,
)

DEFAULT_SAT_LIMIT = 20


def var(lit: int) -> int:
    return lit if lit > 0 else -lit


def check_literal(lit: int) -> int:
    if not isinstance(lit, (int, np.integer)) or isinstance(lit, bool) or lit == 0:
        raise ValueError(f"not a literal: {lit!r}")
    return int(lit)


def negate_all(lits: Iterable[int]) -> frozenset[int]:
    return frozenset(-l for l in lits)


def is_tautological(lits: Iterable[int]) -> bool:
    s = lits if isinstance(lits, (set, frozenset)) else set(lits)
    return any(-l in s for l in s)


def literal_key(lit: int) -> tuple[int, int]:
    """Canonical literal order: by variable, positive before negative."""
    return (var(lit), 0 if lit > 0 else 1)


class Clause(frozenset):
    """A nontautological set of literals.  ``Clause()`` is the empty clause."""

    __slots__ = ()

    def __new__(cls, lits: Iterable[int] = ()):
        self = super().__new__(cls, (check_literal(l) for l in lits))
        for l in self:
            if -l in self:
                raise TautologyRejection(var(l))
        return self

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(var(l) for l in self)

    def sorted(self) -> list[int]:
        return sorted(self, key=literal_key)

    def is_empty(self) -> bool:
        return not self

    def __repr__(self) -> str:
        if not self:
            return "Clause(⊥)"
        return "Clause(" + " ".join(str(l) for l in self.sorted()) + ")"

    __str__ = __repr__


BOTTOM = Clause()


def mk_clause(lits: Iterable[int]) -> Clause:
    """Deduplicate ``lits`` into a clause, raising TautologyRejection on a clash."""
    return Clause(lits)


def resolvent(c: Clause, d: Clause, x: int) -> Clause:
    """Resolve ``c`` and ``d`` on variable ``x`` (either polarity arrangement)."""
    x = var(x)
    if x in c and -x in d:
        pos, neg = c, d
    elif -x in c and x in d:
        pos, neg = d, c
    else:
        raise NotResolvable(f"variable {x} is not opposed between {c} and {d}")
    union = (pos - {x}) | (neg - {-x})
    if is_tautological(union):
        raise NotResolvable(f"resolvent of {c} and {d} on {x} is tautological")
    return Clause(union)


def is_weakening(c: Iterable[int], d: Iterable[int]) -> bool:
    """True iff ``d`` is a weakening of ``c``, i.e. c is a subset of d."""
    return frozenset(c) <= frozenset(d)


class Assignment(frozenset):
    """A consistent partial assignment, stored as the set of literals it makes true."""

    __slots__ = ()

    def __new__(cls, lits: Iterable[int] = ()):
        self = super().__new__(cls, (check_literal(l) for l in lits))
        for l in self:
            if -l in self:
                raise InconsistentAssignment(f"variable {var(l)} assigned both values")
        return self

    @classmethod
    def from_values(cls, values: Mapping[int, int | bool]) -> "Assignment":
        return cls(v if val else -v for v, val in values.items())

    def value(self, lit: int) -> int | None:
        if lit in self:
            return 1
        if -lit in self:
            return 0
        return None

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(var(l) for l in self)

    def as_values(self) -> dict[int, int]:
        return {var(l): int(l > 0) for l in sorted(self, key=var)}

    def __repr__(self) -> str:
        return "Assignment(" + " ".join(str(l) for l in sorted(self, key=literal_key)) + ")"


def falsifying(lits: Iterable[int]) -> Assignment:
    """The smallest assignment falsifying every literal in ``lits``."""
    return Assignment(-l for l in lits)


class Formula:
    """Insertion-ordered set of clauses with stable clause ids.

    Ids start at 1 and are assigned per insertion event, so re-inserting a
    clause records a new id that resolves to the same clause while leaving
    set membership unchanged.  Iteration, ``len`` and ``in`` follow set
    semantics; ``entries`` exposes the full id-indexed history.

    Instances are treated as immutable; ``extended`` returns a copy.
    """

    __slots__ = ("_entries", "_first_id", "_vars", "_occ", "_declared_vars")

    def __init__(self, clauses: Iterable[Iterable[int]] = (), num_vars: int | None = None):
        self._entries: list[Clause] = []
        self._first_id: dict[Clause, int] = {}
        self._vars: set[int] = set()
        self._occ: dict[int, list[int]] | None = None
        self._declared_vars = num_vars
        for c in clauses:
            self._push(c if isinstance(c, Clause) else Clause(c))

    # Checkers own private copies and grow them step by step.
    def _push(self, clause: Clause) -> int:
        self._entries.append(clause)
        cid = len(self._entries)
        if clause not in self._first_id:
            self._first_id[clause] = cid
            self._vars.update(var(l) for l in clause)
            if self._occ is not None:
                for l in clause:
                    self._occ.setdefault(l, []).append(cid)
        return cid

    def copy(self) -> "Formula":
        f = Formula(num_vars=self._declared_vars)
        f._entries = list(self._entries)
        f._first_id = dict(self._first_id)
        f._vars = set(self._vars)
        return f

    def extended(self, clauses: Iterable[Iterable[int]]) -> "Formula":
        f = self.copy()
        for c in clauses:
            f._push(c if isinstance(c, Clause) else Clause(c))
        return f

    @property
    def entries(self) -> tuple[Clause, ...]:
        return tuple(self._entries)

    @property
    def num_entries(self) -> int:
        return len(self._entries)

    def clause(self, cid: int) -> Clause:
        if not 1 <= cid <= len(self._entries):
            raise KeyError(cid)
        return self._entries[cid - 1]

    def has_id(self, cid: int) -> bool:
        return 1 <= cid <= len(self._entries)

    def id_of(self, clause: Iterable[int]) -> int:
        return self._first_id[frozenset(clause)]

    def items(self) -> Iterator[tuple[int, Clause]]:
        """Distinct clauses with their first id, in id order."""
        return ((cid, c) for c, cid in self._first_id.items())

    def occurrences(self, lit: int) -> list[tuple[int, Clause]]:
        """Distinct clauses containing ``lit``, in id order."""
        if self._occ is None:
            occ: dict[int, list[int]] = {}
            for c, cid in self._first_id.items():
                for l in c:
                    occ.setdefault(l, []).append(cid)
            self._occ = occ
        return [(cid, self._entries[cid - 1]) for cid in self._occ.get(lit, ())]

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(self._vars)

    @property
    def num_vars(self) -> int:
        top = max(self._vars, default=0)
        return max(top, self._declared_vars or 0)

    def clause_set(self) -> frozenset[Clause]:
        return frozenset(self._first_id)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self._first_id)

    def __len__(self) -> int:
        return len(self._first_id)

    def __contains__(self, clause: object) -> bool:
        return clause in self._first_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return self._first_id.keys() == other._first_id.keys()

    def __hash__(self) -> int:
        return hash(self.clause_set())

    def __repr__(self) -> str:
        return f"Formula({[c.sorted() for c in self]})"


def vars_of(g: Formula | Iterable[Iterable[int]]) -> frozenset[int]:
    if isinstance(g, Formula):
        return g.variables
    return frozenset(var(l) for c in g for l in c)


def satisfies(a: Iterable[int], target: Formula | Iterable[Iterable[int]]) -> bool:
    """Whether assignment ``a`` satisfies every clause of ``target``."""
    a = a if isinstance(a, frozenset) else frozenset(a)
    return all(not a.isdisjoint(c) for c in target)


def satisfies_clause(a: Iterable[int], c: Iterable[int]) -> bool:
    a = a if isinstance(a, frozenset) else frozenset(a)
    return not a.isdisjoint(c)


def restrict_clause(c: Clause, a: frozenset[int]) -> Clause | None:
    """``c`` restricted under ``a``, or None when ``a`` satisfies ``c``."""
    if not a.isdisjoint(c):
        return None
    return Clause(l for l in c if -l not in a)


def restrict_formula(g: Formula, a: Iterable[int]) -> Formula:
    """Drop satisfied clauses and falsified literals; one entry per surviving input entry."""
    a = a if isinstance(a, frozenset) else Assignment(a)
    out = Formula()
    for c in g.entries:
        r = restrict_clause(c, a)
        if r is not None:
            out._push(r)
    return out


def project(g: Formula, p: int) -> Formula:
    """The ``p``-containing clauses of ``g`` with ``p`` removed."""
    return Formula(Clause(c - {p}) for _, c in g.occurrences(p))


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    model: Assignment | None = None

    def __bool__(self) -> bool:
        return self.satisfiable


_CHUNK_BITS = 14


def brute_force_sat(g: Formula | Iterable[Iterable[int]], limit: int = DEFAULT_SAT_LIMIT) -> SatResult:
    """Exhaustively decide satisfiability of ``g``.

    Assignments are enumerated in increasing binary order over the sorted
    variables (lowest variable = least significant bit), so the returned
    model is the first satisfying one in that order.
    """
    clauses = list(g) if isinstance(g, Formula) else [Clause(c) for c in g]
    variables = sorted(vars_of(clauses))
    n = len(variables)
    if n > limit:
        raise TooLarge(f"{n} variables exceeds exhaustive limit {limit}")
    if any(not c for c in clauses):
        return SatResult(False)
    if not clauses:
        return SatResult(True, Assignment())
    pos = {v: i for i, v in enumerate(variables)}
    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    for start in range(0, total, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        bits = [((idx >> i) & 1).astype(bool) for i in range(n)]
        alive = np.ones(chunk, dtype=bool)
        for c in clauses:
            sat = np.zeros(chunk, dtype=bool)
            for l in c:
                b = bits[pos[var(l)]]
                sat |= b if l > 0 else ~b
            alive &= sat
            if not alive.any():
                break
        hits = np.flatnonzero(alive)
        if hits.size:
            code = int(idx[hits[0]])
            return SatResult(True, Assignment(v if (code >> pos[v]) & 1 else -v for v in variables))
    return SatResult(False)
