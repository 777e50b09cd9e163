"""Proof steps, proofs, GER certificates and check reports.

Clause ids in a proof are implicit: the initial formula occupies ids
``1..g.num_entries`` and each step adds the next id, whether or not its
clause was already present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Union

from ..core import Clause


@dataclass(frozen=True)
class Resolve:
    i: int
    j: int
    pivot: int
    result: Clause
    kind = "r"


@dataclass(frozen=True)
class Weaken:
    i: int
    result: Clause
    kind = "w"


@dataclass(frozen=True)
class AddBC:
    p: int
    result: Clause
    kind = "b"


@dataclass(frozen=True)
class AddRAT:
    p: int
    result: Clause
    kind = "t"


@dataclass(frozen=True)
class AddSBC:
    L: frozenset[int]
    result: Clause
    kind = "s"


ProofStep = Union[Resolve, Weaken, AddBC, AddRAT, AddSBC]
RESOLUTION_STEPS = (Resolve, Weaken)
ADDITION_STEPS = (AddBC, AddRAT, AddSBC)


@dataclass(frozen=True)
class Proof:
    steps: tuple[ProofStep, ...] = ()

    def __init__(self, steps: Iterable[ProofStep] = ()):
        object.__setattr__(self, "steps", tuple(steps))

    @property
    def size(self) -> int:
        """Length of the formula sequence: one more than the number of steps."""
        return len(self.steps) + 1

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[ProofStep]:
        return iter(self.steps)

    def is_resolution_only(self) -> bool:
        return all(isinstance(s, RESOLUTION_STEPS) for s in self.steps)


@dataclass(frozen=True)
class GerCertificate:
    """A GER proof: kept input ids, a witnessed blocked ordering, and a resolution part.

    Ids for the resolution part: input entries first, then one id per
    ``blocked_order`` entry, then one per resolution step.
    """

    kept: tuple[int, ...]
    blocked_order: tuple[tuple[int, Clause], ...]
    resolution: Proof

    def __init__(self, kept: Iterable[int], blocked_order: Iterable[tuple[int, Clause]], resolution: Proof | Iterable[ProofStep]):
        object.__setattr__(self, "kept", tuple(kept))
        object.__setattr__(self, "blocked_order", tuple((p, c) for p, c in blocked_order))
        if not isinstance(resolution, Proof):
            resolution = Proof(resolution)
        object.__setattr__(self, "resolution", resolution)


class System(str, Enum):
    RES = "res"
    BC = "bc"
    RAT = "rat"
    SBC = "sbc"


# Blocked clauses are RATs and singleton-witness SBCs, so "b" steps are admitted
# by the RAT and SBC systems as well.
ALLOWED_KINDS: dict[System, frozenset[str]] = {
    System.RES: frozenset("rw"),
    System.BC: frozenset("rwb"),
    System.RAT: frozenset("rwbt"),
    System.SBC: frozenset("rwbs"),
}


@dataclass
class CheckReport:
    accepted: bool
    size: int
    step: int | None = None
    """1-based position of the first offending step, 0 for whole-proof failures."""
    reason: str = ""
    phase: str | None = None
    failing_clause: Clause | None = None
    stats: dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.accepted

    @property
    def verdict(self) -> str:
        return "accepted" if self.accepted else "rejected"

    def summary(self) -> str:
        if self.accepted:
            return f"accepted size {self.size}"
        where = f" at {self.phase} step {self.step}" if self.phase else f" at step {self.step}"
        return f"rejected{where}: {self.reason}"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "size": self.size,
            "step": self.step,
            "phase": self.phase,
            "reason": self.reason or None,
            "failing_clause": None if self.failing_clause is None else self.failing_clause.sorted(),
            "stats": dict(self.stats),
        }


def proof_size(obj: Proof | GerCertificate, input_formula=None) -> int:
    """Size by the sequence-of-formulas convention; GER adds the blocked extension size.

    For certificates, |Λ| counts the distinct blocked clauses that are not
    removed input clauses, which needs ``input_formula``; without it every
    blocked entry counts.
    """
    if isinstance(obj, Proof):
        return obj.size
    return ger_extension_size(obj, input_formula) + obj.resolution.size


def ger_extension_size(cert: GerCertificate, g=None) -> int:
    blocked = {c for _, c in cert.blocked_order}
    if g is None:
        return len(blocked)
    kept = {g.clause(i) for i in cert.kept if g.has_id(i)}
    removed = set(g) - kept
    return len(blocked - removed)
