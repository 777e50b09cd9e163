"""Unit propagation and the unit-refutation judgment.

Propagation order is fixed so traces are reproducible: an initial sweep over
the clauses in ascending id order, then a FIFO queue of derived literals,
each visiting the clauses that contain its negation in id order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .core import Formula, literal_key


@dataclass(frozen=True)
class PropagationTrace:
    assumptions: frozenset[int]
    derived: tuple[tuple[int, int], ...]
    """(literal, id of the clause that became unit) in derivation order."""
    conflict: int | None = None
    """Id of the first clause found falsified, if any."""
    inconsistent_assumptions: bool = False

    @property
    def is_conflict(self) -> bool:
        return self.conflict is not None or self.inconsistent_assumptions

    @property
    def units(self) -> frozenset[int]:
        return self.assumptions | {lit for lit, _ in self.derived}

    def format(self) -> str:
        """Text form: one ``assume``/``unit``/``conflict``/``fixpoint`` line per event."""
        lines = ["assume " + " ".join(str(l) for l in sorted(self.assumptions, key=literal_key))]
        if self.inconsistent_assumptions:
            lines.append("conflict assumptions")
            return "\n".join(lines)
        lines.extend(f"unit {lit} from {cid}" for lit, cid in self.derived)
        lines.append(f"conflict {self.conflict}" if self.conflict is not None else "fixpoint")
        return "\n".join(lines)


def propagate(g: Formula, assumptions: Iterable[int] = ()) -> PropagationTrace:
    assumed = frozenset(assumptions)
    if any(-l in assumed for l in assumed):
        return PropagationTrace(assumed, (), None, inconsistent_assumptions=True)

    true = set(assumed)
    derived: list[tuple[int, int]] = []
    queue: deque[int] = deque()

    def visit(cid: int, clause) -> bool:
        free = 0
        last = 0
        for l in clause:
            if l in true:
                return False
            if -l not in true:
                free += 1
                if free > 1:
                    return False
                last = l
        if free == 0:
            return True
        true.add(last)
        derived.append((last, cid))
        queue.append(last)
        return False

    for cid, clause in g.items():
        if visit(cid, clause):
            return PropagationTrace(assumed, tuple(derived), cid)
    while queue:
        lit = queue.popleft()
        for cid, clause in g.occurrences(-lit):
            if visit(cid, clause):
                return PropagationTrace(assumed, tuple(derived), cid)
    return PropagationTrace(assumed, tuple(derived))


def unit_refutes(g: Formula, lits: Iterable[int]) -> bool:
    """Whether unit propagation refutes ``g`` plus the negation of each literal in ``lits``."""
    return propagate(g, (-l for l in lits)).is_conflict
