"""Proof constructions for the guarded formulas, plus small exhaustive oracles.

Every proof or certificate built here is re-checked before it is returned;
a failed re-check raises ConstructionError.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product

from .core import Assignment, Clause, Formula, is_tautological, var
from .errors import ConstructionError, InvalidExtension, NotAnErProof, TooLarge, VariableCollision
from .generators import (
    ErProof,
    ExtensionSeq,
    GuardedPairLayout,
    check_er,
    gen_G,
    gen_I,
    i_blocks,
    validate_extension,
)
from .proofs import (
    AddBC,
    AddRAT,
    GerCertificate,
    Proof,
    Resolve,
    System,
    check,
    check_ger,
    remap_step,
)
from .redundancy import is_bc, is_sbc

DEFAULT_DP_LIMIT = 12
DEFAULT_ENUM_LIMIT = 8


def derive_extension_as_bc(g: Formula, ext: ExtensionSeq) -> list[AddBC]:
    """Blocked-clause additions deriving ``ext`` from ``g``.

    Per triple: ``x -p -q`` blocked on x (no ``-x`` exists yet), then
    ``-x p`` and ``-x q`` blocked on ``-x`` (the only partner resolves to a
    tautology).
    """
    verdict = validate_extension(g, ext)
    if not verdict:
        raise InvalidExtension(f"triple {verdict.index}: {verdict.reason}")
    acc = g.copy()
    steps = []
    for x, p, q in ext.triples:
        for lit, c in ((x, Clause([x, -p, -q])), (-x, Clause([-x, p])), (-x, Clause([-x, q]))):
            if not is_bc(c, lit, acc):
                raise ConstructionError(f"extension clause {c} is not blocked for {lit}")
            steps.append(AddBC(lit, c))
            acc._push(c)
    return steps


def _require_er(g: Formula, er: ErProof) -> None:
    report = check_er(g, er)
    if not report.accepted:
        raise NotAnErProof(f"ER proof rejected: {report.summary()}", report)


def _replay(er: ErProof, g: Formula, ext_ids: list[int], step_base: int) -> list:
    """Resolution steps of ``er`` renumbered: inputs keep their ids, extension
    entries go to ``ext_ids``, and step k goes to ``step_base + k``."""
    n_in = g.num_entries
    n_ext = len(ext_ids)

    def mapping(cid: int) -> int:
        if cid <= n_in:
            return cid
        if cid <= n_in + n_ext:
            return ext_ids[cid - n_in - 1]
        return step_base + (cid - n_in - n_ext)

    return [remap_step(s, mapping) for s in er.res.steps]


def simulate_er_in_rat_minus(g: Formula, er: ErProof) -> Proof:
    """RAT proof without new variables of ``gen_G(g, er.ext.variables)``.

    Per triple, ``-x p`` and ``-x q`` are added as RATs on ``-x``, then
    ``x -p -q`` on x: each guard partner ``±x ∨ D`` has D in ``g``, so the
    unit-refutation check closes immediately, and the partners among the
    triple's own clauses are tautological.  The ER resolution part follows.
    """
    _require_er(g, er)
    target = gen_G(g, er.ext.variables)
    steps: list = []
    acc_ids: dict[Clause, int] = {}
    ext_ids: list[int] = []
    next_id = target.num_entries
    for x, p, q in er.ext.triples:
        for lit, c in ((-x, Clause([-x, p])), (-x, Clause([-x, q])), (x, Clause([x, -p, -q]))):
            if c not in acc_ids:
                steps.append(AddRAT(lit, c))
                next_id += 1
                acc_ids[c] = next_id
            ext_ids.append(acc_ids[c])
    # ext_ids is in ExtensionSeq.clauses() order: (-x p), (-x q), (x -p -q)
    steps += _replay(er, g, ext_ids, next_id)
    proof = Proof(steps)
    report = check(System.RAT, target, proof)
    if not report.accepted:
        raise ConstructionError(f"RAT simulation rejected: {report.summary()}", report)
    if proof.size > er.size(g):
        raise ConstructionError(f"RAT simulation size {proof.size} exceeds ER size {er.size(g)}")
    return proof


def build_ger_proof(g: Formula, er: ErProof, pairs: GuardedPairLayout) -> GerCertificate:
    """GER certificate without new variables for ``gen_I(g, xs, pairs)``.

    Kept: ``g`` and the W block.  Blocked ordering: the extension clauses as
    in :func:`derive_extension_as_bc`, then every V clause on its ``y_j``
    (its only partner ``-y_j z_j`` resolves to a tautology).  The ER
    resolution part is replayed unchanged apart from ids.
    """
    _require_er(g, er)
    lam_vars = set(g.variables) | set(er.ext.variables)
    clash = lam_vars & set(pairs.variables)
    if clash:
        raise VariableCollision(f"guard variables {sorted(clash)} already used by the formula or extension")
    xs = er.ext.variables
    target = gen_I(g, xs, pairs)
    blocks = i_blocks(g, er.ext.t, pairs.m)
    kept = [*blocks["gamma"], *blocks["W"]]

    blocked: list[tuple[int, Clause]] = []
    pos: dict[Clause, int] = {}
    for step in derive_extension_as_bc(g, er.ext):
        if step.result not in pos:
            blocked.append((step.p, step.result))
            pos[step.result] = target.num_entries + len(blocked)
    for x in xs:
        for y, z in zip(pairs.ys, pairs.zs):
            blocked.append((y, Clause([x, y, -z])))
            blocked.append((y, Clause([-x, y, -z])))
    ext_ids = [pos[c] for c in er.ext.clauses()]
    res = _replay(er, g, ext_ids, target.num_entries + len(blocked))
    cert = GerCertificate(kept, blocked, Proof(res))
    report = check_ger(target, cert)
    if not report.accepted:
        raise ConstructionError(f"GER certificate rejected: {report.summary()}", report)
    if report.size != er.size(g):
        raise ConstructionError(f"GER size {report.size} differs from ER size {er.size(g)}")
    return cert


@dataclass(frozen=True)
class DpOutcome:
    proof: Proof | None = None
    model: Assignment | None = None

    @property
    def satisfiable(self) -> bool:
        return self.proof is None


def dp_resolution_oracle(g: Formula, limit: int = DEFAULT_DP_LIMIT) -> DpOutcome:
    """Davis-Putnam variable elimination in ascending variable order.

    Resolvents that are tautological or subsumed by a live clause are not
    added.  Stops at the first ⊥ and returns the resolution proof; on
    saturation without ⊥ the eliminated clause sets rebuild a model.
    """
    if len(g.variables) > limit:
        raise TooLarge(f"{len(g.variables)} variables exceeds DP limit {limit}")
    if Clause() in g:
        return DpOutcome(Proof())
    live: dict[Clause, int] = {c: cid for cid, c in g.items()}
    steps: list[Resolve] = []
    next_id = g.num_entries
    eliminated: list[tuple[int, list[Clause]]] = []
    for v in sorted(g.variables):
        pos = [(cid, c) for c, cid in live.items() if v in c]
        neg = [(cid, c) for c, cid in live.items() if -v in c]
        for (i, c), (j, d) in product(pos, neg):
            r = (c - {v}) | (d - {-v})
            if is_tautological(r) or any(s <= r for s in live):
                continue
            r = Clause(r)
            steps.append(Resolve(i, j, v, r))
            next_id += 1
            live[r] = next_id
            if not r:
                proof = Proof(steps)
                report = check(System.RES, g, proof)
                if not report.accepted:
                    raise ConstructionError(f"DP proof rejected: {report.summary()}", report)
                return DpOutcome(proof)
        removed = [c for _, c in pos + neg]
        for c in removed:
            del live[c]
        eliminated.append((v, removed))

    values: set[int] = set()
    for v, removed in reversed(eliminated):
        lit = v if all(not values.isdisjoint(c - {v}) for c in removed if -v in c) else -v
        values.add(lit)
    model = Assignment(values)
    if any(values.isdisjoint(c) for c in g):
        raise ConstructionError("DP model reconstruction failed")
    return DpOutcome(model=model)


def _sbc_witnesses(args) -> list[tuple[Clause, frozenset[int]]]:
    c, g = args
    lits = c.sorted()
    out = []
    for size in range(1, len(lits) + 1):
        for L in combinations(lits, size):
            if is_sbc(c, L, g):
                out.append((c, frozenset(L)))
    return out


def all_clauses(variables, max_size: int):
    """Nonempty clauses over ``variables`` by size, then lexicographically."""
    vs = sorted(variables)
    for size in range(1, min(max_size, len(vs)) + 1):
        for chosen in combinations(vs, size):
            for signs in product((1, -1), repeat=size):
                yield Clause(s * v for s, v in zip(signs, chosen))


def enumerate_sbcs(
    g: Formula,
    max_clause_size: int,
    *,
    limit: int = DEFAULT_ENUM_LIMIT,
    maximal_only: bool = False,
    threads: int = 1,
) -> list[tuple[Clause, frozenset[int]]]:
    """Every (C, L) with C over var(g), |C| <= max_clause_size, and C set-blocked for L.

    With ``maximal_only`` only witness sets not strictly contained in
    another witness of the same clause are reported.
    """
    if len(g.variables) > limit:
        raise TooLarge(f"{len(g.variables)} variables exceeds enumeration limit {limit}")
    jobs = [(c, g) for c in all_clauses(g.variables, max_clause_size)]
    if threads > 1 and len(jobs) > 64:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_sbc_witnesses, jobs, chunksize=32))
    else:
        chunks = [_sbc_witnesses(job) for job in jobs]
    out = []
    for found in chunks:
        if maximal_only:
            found = [(c, L) for c, L in found if not any(L < M for _, M in found)]
        out.extend(found)
    return out
