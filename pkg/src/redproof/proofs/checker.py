"""Checkers for Res, BC, RAT and SBC proofs and for GER certificates.

By default proofs must be without new variables: every clause a step adds
may only mention variables of the input formula.
"""

from __future__ import annotations

from collections import Counter

from ..core import Clause, Formula, is_tautological, resolvent, var
from ..errors import NotResolvable
from ..redundancy import bc_failure, rat_failure, sbc_failure
from .model import (
    ALLOWED_KINDS,
    AddBC,
    AddRAT,
    AddSBC,
    CheckReport,
    GerCertificate,
    Proof,
    ProofStep,
    Resolve,
    System,
    Weaken,
    ger_extension_size,
)


class _Reject(Exception):
    def __init__(self, reason: str, failing: Clause | None = None):
        super().__init__(reason)
        self.reason = reason
        self.failing = failing


def _find_premises(acc: Formula, result: Clause) -> tuple[int, int, int] | None:
    # Permissive mode: some clause (C - x) is a subset of result, with x's partner.
    for i, c in acc.items():
        for x in c:
            if x in result or -x in result:
                continue
            rest = c - {x}
            if not rest <= result:
                continue
            for j, d in acc.occurrences(-x):
                if (d - {-x}) <= result and (rest | (d - {-x})) == result:
                    return i, j, var(x)
    return None


def _check_resolve(acc: Formula, step: Resolve, permissive: bool) -> None:
    i, j, pivot = step.i, step.j, step.pivot
    if permissive and (i == 0 or j == 0 or pivot == 0):
        found = _find_premises(acc, step.result)
        if found is None:
            raise _Reject("no pair of existing clauses resolves to the stated clause")
        i, j, pivot = found
    for cid in (i, j):
        if not acc.has_id(cid):
            raise _Reject(f"bad premise id {cid}")
    c, d = acc.clause(i), acc.clause(j)
    try:
        r = resolvent(c, d, pivot)
    except NotResolvable as exc:
        raise _Reject(f"premises {i} and {j} not resolvable on {var(pivot)}: {exc}") from None
    if r != step.result:
        raise _Reject(f"wrong resolvent: premises {i},{j} on {var(pivot)} give {r}, step states {step.result}")


def _check_weaken(acc: Formula, step: Weaken, permissive: bool) -> None:
    i = step.i
    if permissive and i == 0:
        for cid, c in acc.items():
            if c <= step.result:
                return
        raise _Reject("no existing clause is a subset of the stated weakening")
    if not acc.has_id(i):
        raise _Reject(f"bad premise id {i}")
    if not acc.clause(i) <= step.result:
        raise _Reject(f"{step.result} is not a weakening of clause {i} {acc.clause(i)}")


def _check_addition(acc: Formula, step: ProofStep) -> None:
    c = step.result
    if isinstance(step, AddSBC):
        if not step.L:
            raise _Reject("set-blocked witness is empty")
        if not step.L <= c:
            raise _Reject(f"witness {sorted(step.L)} not contained in {c}")
        fail = sbc_failure(c, step.L, acc)
        label = f"not set-blocked for {sorted(step.L)}"
    else:
        if step.p not in c:
            raise _Reject(f"witness literal {step.p} not in {c}")
        if isinstance(step, AddBC):
            fail = bc_failure(c, step.p, acc)
            label = f"not blocked for {step.p}"
        else:
            fail = rat_failure(c, step.p, acc)
            label = f"not RAT for {step.p}"
    if fail is not None:
        cid, d = fail
        raise _Reject(f"criterion failure: {label}; fails against clause {cid} {d}", d)


def _validate_step(acc: Formula, step: object, allowed: frozenset[str], scope: frozenset[int] | None, permissive: bool) -> ProofStep:
    kind = getattr(step, "kind", None)
    if kind is None or not isinstance(getattr(step, "result", None), Clause):
        raise _Reject(f"malformed step {step!r}")
    if kind not in allowed:
        raise _Reject(f"step kind '{kind}' not permitted in this system")
    if scope is not None:
        extra = step.result.variables - scope
        if extra:
            raise _Reject(f"new variable {min(extra)} not in the input formula")
    if isinstance(step, Resolve):
        _check_resolve(acc, step, permissive)
    elif isinstance(step, Weaken):
        _check_weaken(acc, step, permissive)
    else:
        _check_addition(acc, step)
    return step


def _run(acc: Formula, steps, allowed, scope, permissive, require_refutation, phase=None, size=None) -> CheckReport:
    stats: Counter[str] = Counter()
    size = len(steps) + 1 if size is None else size
    for n, step in enumerate(steps, 1):
        try:
            _validate_step(acc, step, allowed, scope, permissive)
        except _Reject as rej:
            return CheckReport(False, size, n, rej.reason, phase, rej.failing, dict(stats))
        except Exception as exc:  # the checker is total: malformed input yields a report
            return CheckReport(False, size, n, f"malformed step: {exc}", phase, None, dict(stats))
        stats[step.kind] += 1
        acc._push(step.result)
    if require_refutation and Clause() not in acc:
        return CheckReport(False, size, 0, "no ⊥: the empty clause is never derived", phase, None, dict(stats))
    return CheckReport(True, size, None, "", phase, None, dict(stats))


def check(
    system: System | str,
    g: Formula,
    pf: Proof,
    *,
    new_variables: bool = False,
    require_refutation: bool = True,
    permissive: bool = False,
) -> CheckReport:
    """Check ``pf`` as a ``system`` proof of ``g``.

    ``new_variables=True`` lifts the without-new-variables restriction and
    ``require_refutation=False`` accepts derivations that stop short of ⊥.
    In permissive mode a Resolve step with a zero premise id or pivot (or a
    Weaken with premise 0) has its premises searched for.
    """
    system = System(system)
    scope = None if new_variables else g.variables
    steps = pf.steps if isinstance(pf, Proof) else tuple(pf)
    return _run(g.copy(), steps, ALLOWED_KINDS[system], scope, permissive, require_refutation)


def check_ger(g: Formula, cert: GerCertificate, *, new_variables: bool = False) -> CheckReport:
    """Check a GER proof of ``g`` (default: without new variables)."""
    scope = None if new_variables else g.variables
    nblocked = len(cert.blocked_order)
    size = nblocked + cert.resolution.size
    for cid in cert.kept:
        if not isinstance(cid, int) or not g.has_id(cid):
            return CheckReport(False, size, 0, f"kept id {cid} is not an input clause id", "keep")
    kept = {g.clause(cid) for cid in cert.kept}
    removed = [c for c in g if c not in kept]

    counts = Counter(c for _, c in cert.blocked_order)
    for c in removed:
        n = counts.get(c, 0)
        if n != 1:
            what = "missing from" if n == 0 else f"appears {n} times in"
            return CheckReport(False, size, 0, f"coverage: removed input clause {c} {what} the blocked ordering", "ext", c)

    acc = Formula(kept)
    for n, entry in enumerate(cert.blocked_order, 1):
        try:
            p, c = entry
            if not isinstance(c, Clause):
                raise _Reject(f"malformed entry {entry!r}")
            if p not in c:
                raise _Reject(f"witness literal {p} not in {c}")
            if scope is not None and c.variables - scope:
                raise _Reject(f"new variable {min(c.variables - scope)} not in the input formula")
            fail = bc_failure(c, p, acc)
            if fail is not None:
                raise _Reject(f"not blocked for {p}; fails against {fail[1]}", fail[1])
        except _Reject as rej:
            return CheckReport(False, size, n, rej.reason, "ext", rej.failing)
        except Exception as exc:
            return CheckReport(False, size, n, f"malformed entry: {exc}", "ext")
        acc._push(c)

    size = ger_extension_size(cert, g) + cert.resolution.size
    full = g.extended(c for _, c in cert.blocked_order)
    report = _run(full, cert.resolution.steps, ALLOWED_KINDS[System.RES], scope, False, True, "res", size)
    report.stats["x"] = nblocked
    return report
