"""Formula families and the extension-variable guards built around them.

* the bit pigeonhole principle with its (pigeon, bit) variable layout,
  pigeon-width measures and random partial matchings;
* extension sequences and ER proofs (their text format lives here too);
* the guarded transformations ``gen_G`` and ``gen_I``.

Fresh variables are allocated above the largest variable in use: extension
variables first, then the y's, then the z's.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .core import Assignment, Clause, Formula, var
from .errors import (
    InvalidExtension,
    ParseError,
    TooManyPigeons,
    UnknownVariable,
    VariableCollision,
)
from .proofs import CheckReport, Proof, System, check
from .proofs.formats import _content_lines, _ints, _terminated, format_step, parse_step


# --- bit pigeonhole principle -------------------------------------------------


@dataclass(frozen=True)
class BphpLayout:
    """Row-major variables: bit ``l`` of pigeon ``x`` is ``(x - 1) * k + l``."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @property
    def n(self) -> int:
        return 1 << self.k

    @property
    def pigeons(self) -> range:
        return range(1, self.n + 2)

    @property
    def num_vars(self) -> int:
        return (self.n + 1) * self.k

    def var_of(self, x: int, l: int) -> int:
        if not (1 <= x <= self.n + 1 and 1 <= l <= self.k):
            raise UnknownVariable(f"no variable for pigeon {x} bit {l}")
        return (x - 1) * self.k + l

    def locate(self, v: int) -> tuple[int, int]:
        """(pigeon, bit) of variable ``v``."""
        if not 1 <= v <= self.num_vars:
            raise UnknownVariable(f"variable {v} is outside the BPHP layout with k={self.k}")
        return (v - 1) // self.k + 1, (v - 1) % self.k + 1

    def pigeon_of(self, lit: int) -> int:
        return self.locate(var(lit))[0]

    def pigeon_literals(self, x: int) -> frozenset[int]:
        vs = [self.var_of(x, l) for l in range(1, self.k + 1)]
        return frozenset(vs) | frozenset(-v for v in vs)

    def hole_bits(self, h: int) -> tuple[int, ...]:
        """Bits (h_1, ..., h_k) of hole index ``h``, h_1 most significant."""
        return tuple((h >> (self.k - l)) & 1 for l in range(1, self.k + 1))

    def comments(self) -> list[str]:
        out = [f"layout bphp k {self.k} n {self.n}"]
        for x in self.pigeons:
            for l in range(1, self.k + 1):
                out.append(f"layout pigeon {x} bit {l} var {self.var_of(x, l)}")
        return out

    @classmethod
    def from_comments(cls, comments: Iterable[str]) -> "BphpLayout | None":
        for c in comments:
            parts = c.split()
            if parts[:3] == ["layout", "bphp", "k"] and len(parts) >= 4:
                return cls(int(parts[3]))
        return None


def _differs(v: int, bit: int) -> int:
    # "v != 0" is the literal v, "v != 1" is its negation
    return v if bit == 0 else -v


def gen_bphp(k: int) -> tuple[Formula, BphpLayout]:
    """BPHP with ``2**k`` holes and ``2**k + 1`` pigeons.

    Clauses are emitted for pigeon pairs x < y in lexicographic order, and
    per pair for holes 0..n-1; the symmetric pair (y, x) yields the same
    clause, so each appears once.
    """
    layout = BphpLayout(k)
    clauses = []
    for x in layout.pigeons:
        for y in layout.pigeons:
            if y <= x:
                continue
            for h in range(layout.n):
                bits = layout.hole_bits(h)
                lits = [_differs(layout.var_of(x, l), bits[l - 1]) for l in range(1, k + 1)]
                lits += [_differs(layout.var_of(y, l), bits[l - 1]) for l in range(1, k + 1)]
                clauses.append(Clause(lits))
    return Formula(clauses, num_vars=layout.num_vars), layout


def gen_bphp_for(n: int) -> tuple[Formula, BphpLayout]:
    """BPHP for any ``n >= 2``, using the largest power of two not exceeding ``n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return gen_bphp(n.bit_length() - 1)


def mentions(c: Iterable[int], layout: BphpLayout) -> frozenset[int]:
    return frozenset(layout.pigeon_of(l) for l in c)


def pigeon_width(c: Iterable[int], layout: BphpLayout) -> int:
    return len(mentions(c, layout))


def restrict_to_pigeon(lits: Iterable[int], x: int, layout: BphpLayout) -> frozenset[int]:
    """The largest subset of ``lits`` mentioning only pigeon ``x``."""
    lits = frozenset(lits)
    for l in lits:
        layout.locate(var(l))
    return lits & layout.pigeon_literals(x)


def proof_pigeon_width(clauses: Iterable[Iterable[int]], layout: BphpLayout) -> int:
    return max((pigeon_width(c, layout) for c in clauses), default=0)


def random_partial_matching(layout: BphpLayout, m: int, seed: int | None = None) -> Assignment:
    """Match ``m`` pigeons to distinct holes, one random pigeon and free hole at a time."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > layout.n:
        raise TooManyPigeons(f"cannot match {m} pigeons into {layout.n} holes")
    rng = random.Random(seed)
    free_pigeons = list(layout.pigeons)
    free_holes = list(range(layout.n))
    lits = []
    for _ in range(m):
        x = free_pigeons.pop(rng.randrange(len(free_pigeons)))
        h = free_holes.pop(rng.randrange(len(free_holes)))
        for l, bit in enumerate(layout.hole_bits(h), 1):
            v = layout.var_of(x, l)
            lits.append(v if bit else -v)
    return Assignment(lits)


# --- extensions and ER proofs --------------------------------------------------


@dataclass(frozen=True)
class ExtensionSeq:
    """Triples (x, p, q), each defining x as the conjunction of p and q."""

    triples: tuple[tuple[int, int, int], ...] = ()

    def __init__(self, triples: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "triples", tuple((int(x), int(p), int(q)) for x, p, q in triples))

    @property
    def t(self) -> int:
        return len(self.triples)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(x for x, _, _ in self.triples)

    def clauses(self) -> list[Clause]:
        """Extension clauses in id order: per triple (-x p), (-x q), (x -p -q)."""
        out = []
        for x, p, q in self.triples:
            out += [Clause([-x, p]), Clause([-x, q]), Clause([x, -p, -q])]
        return out


@dataclass(frozen=True)
class ExtensionCheck:
    ok: bool
    reason: str = ""
    index: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_extension(g: Formula, ext: ExtensionSeq) -> ExtensionCheck:
    scope = set(g.variables)
    for i, (x, p, q) in enumerate(ext.triples, 1):
        if x < 1:
            return ExtensionCheck(False, f"extension variable {x} is not a variable", i)
        if x in scope:
            return ExtensionCheck(False, f"extension variable {x} is not fresh", i)
        for lit in (p, q):
            if lit == 0:
                return ExtensionCheck(False, "literal 0", i)
            if var(lit) not in scope:
                return ExtensionCheck(False, f"literal {lit} mentions variable {var(lit)} not yet defined", i)
        if p == -q:
            return ExtensionCheck(False, f"literals {p} and {q} are complementary; x -p -q would be tautological", i)
        scope.add(x)
    return ExtensionCheck(True)


@dataclass(frozen=True)
class ErProof:
    """An ER proof: an extension plus a resolution proof of ``g`` together with it.

    The resolution part numbers input entries first, then the ``3t``
    extension clauses in ``ExtensionSeq.clauses`` order.
    """

    ext: ExtensionSeq
    res: Proof

    def formula(self, g: Formula) -> Formula:
        return g.extended(self.ext.clauses())

    def size(self, g: Formula | None = None) -> int:
        """|Λ| (distinct extension clauses) plus the resolution size."""
        return len(set(self.ext.clauses())) + self.res.size


def check_er(g: Formula, er: ErProof) -> CheckReport:
    verdict = validate_extension(g, er.ext)
    if not verdict:
        return CheckReport(False, er.res.size, verdict.index, verdict.reason, "ext")
    size = er.size(g)
    if not er.res.is_resolution_only():
        return CheckReport(False, size, 0, "resolution part contains non-resolution steps", "res")
    report = check(System.RES, er.formula(g), er.res)
    report.size = size
    report.phase = "res"
    report.stats["e"] = er.ext.t
    return report


def parse_er(text: str) -> ErProof:
    """``e <x> <p> <q> 0`` lines first, then ``r``/``w`` steps."""
    triples = []
    steps = []
    for lineno, tokens in _content_lines(text):
        if tokens[0] == "e":
            if steps:
                raise ParseError("extension line after resolution steps", lineno)
            body = _terminated(_ints(tokens[1:], lineno), lineno)
            if len(body) != 3:
                raise ParseError("extension line needs x p q", lineno)
            triples.append(tuple(body))
        else:
            steps.append(parse_step(tokens, lineno, allowed="rw"))
    return ErProof(ExtensionSeq(triples), Proof(steps))


def dumps_er(er: ErProof, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.extend(f"e {x} {p} {q} 0" for x, p, q in er.ext.triples)
    lines.extend(format_step(s) for s in er.res.steps)
    return "\n".join(lines) + "\n" if lines else ""


def read_er(path: str | Path) -> ErProof:
    return parse_er(Path(path).read_text())


# --- guarded transformations ----------------------------------------------------


@dataclass(frozen=True)
class GuardedPairLayout:
    ys: tuple[int, ...]
    zs: tuple[int, ...]

    def __init__(self, ys: Iterable[int], zs: Iterable[int]):
        ys, zs = tuple(ys), tuple(zs)
        if len(ys) != len(zs):
            raise ValueError("need as many z variables as y variables")
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "zs", zs)

    @property
    def m(self) -> int:
        return len(self.ys)

    @property
    def variables(self) -> tuple[int, ...]:
        return self.ys + self.zs

    @classmethod
    def allocate(cls, m: int, start: int) -> "GuardedPairLayout":
        """y_j = start + j - 1 and z_j = start + m + j - 1."""
        if m < 1:
            raise ValueError("m must be at least 1")
        return cls(range(start, start + m), range(start + m, start + 2 * m))

    @classmethod
    def above(cls, m: int, g: Formula, ext: ExtensionSeq | Sequence[int] = ()) -> "GuardedPairLayout":
        xs = ext.variables if isinstance(ext, ExtensionSeq) else tuple(ext)
        return cls.allocate(m, max([g.num_vars, *xs, 0]) + 1)


def fresh_variables(g: Formula, t: int) -> list[int]:
    start = g.num_vars + 1
    return list(range(start, start + t))


def _check_fresh(g: Formula, groups: Iterable[Iterable[int]]) -> list[int]:
    seen: set[int] = set()
    for group in groups:
        for v in group:
            if v < 1:
                raise VariableCollision(f"{v} is not a variable")
            if v in seen:
                raise VariableCollision(f"variable {v} used twice")
            if v in g.variables:
                raise VariableCollision(f"variable {v} already occurs in the formula")
            seen.add(v)
    return sorted(seen)


def _guard(lit: int, g: Formula) -> list[Clause]:
    return [Clause(c | {lit}) for c in g]


def gen_G(g: Formula, xs: Sequence[int]) -> Formula:
    """Add both polarities of every ``x_i`` as a guard in front of each clause of ``g``.

    Entry order: ``g``'s entries, then per ``x_i`` the block ``x_i ∨ D``
    followed by the block ``¬x_i ∨ D`` (D in ``g``'s clause order).
    """
    used = _check_fresh(g, [xs])
    out = g.extended(())
    for x in xs:
        for c in _guard(x, g) + _guard(-x, g):
            out._push(c)
    out._declared_vars = max(g.num_vars, *used, 0)
    return out


def gen_I(g: Formula, xs: Sequence[int], pairs: GuardedPairLayout) -> Formula:
    """``g`` followed by the V block (per x_i, per j: ``x_i y_j -z_j`` and ``-x_i y_j -z_j``)
    and the W block (per j: ``-y_j z_j``, then ``y_j ∨ D`` and ``-z_j ∨ D`` for D in ``g``)."""
    used = _check_fresh(g, [xs, pairs.ys, pairs.zs])
    out = g.extended(())
    for x in xs:
        for y, z in zip(pairs.ys, pairs.zs):
            out._push(Clause([x, y, -z]))
            out._push(Clause([-x, y, -z]))
    for y, z in zip(pairs.ys, pairs.zs):
        out._push(Clause([-y, z]))
        for c in _guard(y, g) + _guard(-z, g):
            out._push(c)
    out._declared_vars = max(g.num_vars, *used, 0)
    return out


def i_blocks(g: Formula, t: int, m: int) -> dict[str, range]:
    """Entry-id ranges of the Γ, V and W blocks inside ``gen_I`` output."""
    base = g.num_entries
    nv = 2 * t * m
    return {
        "gamma": range(1, base + 1),
        "V": range(base + 1, base + nv + 1),
        "W": range(base + nv + 1, base + nv + m * (1 + 2 * len(g)) + 1),
    }


def guard_comments(xs: Sequence[int], pairs: GuardedPairLayout | None = None) -> list[str]:
    out = [f"layout x {i} var {x}" for i, x in enumerate(xs, 1)]
    if pairs is not None:
        out += [f"layout y {j} var {y}" for j, y in enumerate(pairs.ys, 1)]
        out += [f"layout z {j} var {z}" for j, z in enumerate(pairs.zs, 1)]
    return out


def parse_guard_comments(comments: Iterable[str]) -> dict[str, dict[int, int]]:
    found: dict[str, dict[int, int]] = {"x": {}, "y": {}, "z": {}}
    for c in comments:
        parts = c.split()
        if len(parts) == 5 and parts[0] == "layout" and parts[1] in found and parts[3] == "var":
            found[parts[1]][int(parts[2])] = int(parts[4])
    return found


# --- meta sidecar ---------------------------------------------------------------


def dumps_meta(meta: Mapping[str, object]) -> str:
    return "".join(f"{k}={v}\n" for k, v in meta.items())


def parse_meta(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {line!r}", lineno)
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out
