"""Proof transformations: id remapping, moving set-blocked additions to the
front, and restricting resolution proofs under an assignment."""

from __future__ import annotations

from typing import Callable, Iterable

from ..core import Assignment, Clause, Formula, restrict_clause, restrict_formula, var
from ..errors import NotAccepted, RestrictionSatisfiesFormula
from .checker import check
from .model import ADDITION_STEPS, AddBC, AddSBC, Proof, ProofStep, Resolve, System, Weaken


def remap_step(step: ProofStep, mapping: Callable[[int], int]) -> ProofStep:
    """Rewrite the premise ids of a step; addition steps pass through."""
    if isinstance(step, Resolve):
        return Resolve(mapping(step.i), mapping(step.j), step.pivot, step.result)
    if isinstance(step, Weaken):
        return Weaken(mapping(step.i), step.result)
    return step


def normalize_sbc_front(g: Formula, pf: Proof) -> Proof:
    """Reorder an accepted SBC proof so every redundancy addition precedes all
    resolution and weakening steps.

    Additions keep their relative order, as do the resolution steps.  Blocked
    (``b``) steps are set-blocked for their singleton witness and move with
    the ``s`` steps.  Set-blockedness survives the move because it is
    inherited by every subset of the formula it was checked against.
    """
    report = check(System.SBC, g, pf)
    if not report.accepted:
        raise NotAccepted(f"input is not an accepted SBC proof: {report.summary()}", report)
    base = g.num_entries
    additions = [(k, s) for k, s in enumerate(pf.steps) if isinstance(s, (AddSBC, AddBC))]
    others = [(k, s) for k, s in enumerate(pf.steps) if not isinstance(s, (AddSBC, AddBC))]
    new_id: dict[int, int] = {}
    for pos, (k, _) in enumerate(additions + others):
        new_id[base + 1 + k] = base + 1 + pos

    def mapping(cid: int) -> int:
        return new_id.get(cid, cid)

    out = Proof([s for _, s in additions] + [remap_step(s, mapping) for _, s in others])
    again = check(System.SBC, g, out)
    if not again.accepted:
        raise NotAccepted(f"normalized proof rejected: {again.summary()}", again)
    return out


def restrict_proof(g: Formula, pf: Proof, a: Iterable[int]) -> Proof:
    """Turn a resolution proof of ``g`` into one of ``g`` restricted under ``a``.

    Each step maps to at most one step: satisfied clauses and clauses that
    restrict to something already present are dropped, and a resolution
    whose pivot ``a`` assigns becomes a weakening of the surviving premise.
    The result refers to the ids of ``restrict_formula(g, a)``.
    """
    a = a if isinstance(a, Assignment) else Assignment(a)
    if not pf.is_resolution_only():
        raise NotAccepted("restriction is defined for resolution proofs only")
    restricted = restrict_formula(g, a)
    if restricted.num_entries == 0:
        raise RestrictionSatisfiesFormula("the assignment satisfies every clause of the formula")
    report = check(System.RES, g, pf, new_variables=True)
    if not report.accepted:
        raise NotAccepted(f"input is not an accepted resolution proof: {report.summary()}", report)

    acc = restricted.copy()
    old_to_new: dict[int, int | None] = {}
    nid = 0
    for old, c in enumerate(g.entries, 1):
        if restrict_clause(c, a) is None:
            old_to_new[old] = None
        else:
            nid += 1
            old_to_new[old] = nid

    steps: list[ProofStep] = []
    old = g.num_entries
    for step in pf.steps:
        old += 1
        r = restrict_clause(step.result, a)
        if r is None:
            old_to_new[old] = None
            continue
        if r in acc:
            old_to_new[old] = acc.id_of(r)
            continue
        if isinstance(step, Resolve):
            i, j = old_to_new[step.i], old_to_new[step.j]
            if i is not None and j is not None and var(step.pivot) not in a.variables:
                new = Resolve(i, j, var(step.pivot), r)
            else:
                premise = next(p for p in (i, j) if p is not None and acc.clause(p) <= r)
                new = Weaken(premise, r)
        else:
            new = Weaken(old_to_new[step.i], r)
        steps.append(new)
        old_to_new[old] = acc._push(r)

    out = Proof(steps)
    again = check(System.RES, restricted, out, new_variables=True)
    if not again.accepted:
        raise NotAccepted(f"restricted proof rejected: {again.summary()}", again)
    return out
