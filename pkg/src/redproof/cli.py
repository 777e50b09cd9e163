"""Command-line interface: ``redproof gen|check|prove|oracle``.

Exit codes: 0 success or accepted, 1 rejected or failed self-check,
2 usage or parse error (including inputs over an oracle limit), 3 I/O error.

Options may also come from a ``--config`` file of ``key=value`` lines whose
keys are the long option names (``seed``, ``oracle-var-limit``, ``threads``,
``json-lines``, ``no-timestamp``); flags given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import dimacs
from .constructions import (
    DEFAULT_DP_LIMIT,
    DEFAULT_ENUM_LIMIT,
    build_ger_proof,
    dp_resolution_oracle,
    enumerate_sbcs,
    simulate_er_in_rat_minus,
)
from .core import DEFAULT_SAT_LIMIT, Assignment, Formula, brute_force_sat, literal_key, restrict_formula
from .errors import ConstructionError, ParseError, RedproofError, TooLarge
from .generators import (
    BphpLayout,
    ErProof,
    ExtensionSeq,
    GuardedPairLayout,
    check_er,
    dumps_meta,
    fresh_variables,
    gen_bphp,
    gen_bphp_for,
    gen_G,
    gen_I,
    guard_comments,
    pigeon_width,
    random_partial_matching,
    read_er,
)
from .proofs import (
    Proof,
    System,
    check,
    check_ger,
    dumps_ger,
    dumps_proof,
    read_ger,
    read_proof,
    restrict_proof,
)

EXIT_OK, EXIT_REJECTED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_CONFIG_KEYS = {
    "seed": int,
    "oracle_var_limit": int,
    "threads": int,
    "json_lines": lambda s: s.lower() in ("1", "true", "yes", "on"),
    "no_timestamp": lambda s: s.lower() in ("1", "true", "yes", "on"),
}
_DEFAULTS = {"seed": 0, "oracle_var_limit": None, "threads": 1, "json_lines": False, "no_timestamp": False}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = 0
    oracle_var_limit: int | None = None
    threads: int = 1
    json_lines: bool = False
    no_timestamp: bool = False
    paths: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.oracle_var_limit is not None and self.oracle_var_limit < 1:
            raise UsageError("oracle-var-limit must be positive")
        if self.threads < 1:
            raise UsageError("threads must be positive")


def load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"config: expected key=value, got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ParseError(f"config: unknown key {key!r}", lineno)
        try:
            out[key] = _CONFIG_KEYS[key](value)
        except ValueError:
            raise ParseError(f"config: bad value for {key}: {value!r}", lineno) from None
    return out


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run options")
    g.add_argument("--config", help="key=value config file; flags override it")
    g.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    g.add_argument("--oracle-var-limit", type=int, default=None, help="variable limit for exhaustive oracles")
    g.add_argument("--threads", type=int, default=None, help="worker processes for oracles (default 1)")
    g.add_argument("--json-lines", action="store_const", const=True, default=None, help="machine-readable output")
    g.add_argument("--no-timestamp", action="store_const", const=True, default=None, help="omit timestamp comments")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="redproof", description="Redundancy proof systems toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate formula families")
    gen.add_argument("family", choices=["bphp", "g", "i"])
    gen.add_argument("-k", type=int, help="bits per pigeon (bphp)")
    gen.add_argument("-n", type=int, help="holes; rounded down to a power of two (bphp)")
    gen.add_argument("--cnf", help="input formula (g, i)")
    gen.add_argument("--er", help="ER proof supplying the extension variables (g, i)")
    gen.add_argument("-t", type=int, help="number of extension variables when no ER proof is given")
    gen.add_argument("-m", type=int, help="guard pair count (i)")
    gen.add_argument("-o", "--output", help="output CNF (default stdout)")
    gen.add_argument("--meta", help="meta sidecar path (default <output>.meta)")
    _common(gen)

    chk = sub.add_parser("check", help="check a proof")
    chk.add_argument("system", choices=["res", "bc", "rat", "sbc", "ger", "er"])
    chk.add_argument("--cnf", required=True)
    chk.add_argument("--proof", required=True)
    chk.add_argument("--permissive", action="store_true", help="search premises for r/w steps with 0 hints")
    _common(chk)

    prv = sub.add_parser("prove", help="build proofs of guarded formulas from an ER proof")
    prv.add_argument("target", choices=["g-rat", "i-ger"])
    prv.add_argument("--cnf", required=True)
    prv.add_argument("--er", required=True)
    prv.add_argument("-m", type=int, help="guard pair count (i-ger)")
    prv.add_argument("-o", "--output", help="proof or certificate output (default stdout)")
    prv.add_argument("--cnf-out", help="also write the guarded formula here")
    _common(prv)

    orc = sub.add_parser("oracle", help="exhaustive oracles and pigeon tooling")
    orc.add_argument("task", choices=["sat", "dp", "enum-sbc", "width", "restrict"])
    orc.add_argument("--cnf", required=True)
    orc.add_argument("--proof", help="resolution proof (width, restrict)")
    orc.add_argument("-k", type=int, help="BPHP bits when the CNF has no layout comments")
    orc.add_argument("--max-size", type=int, help="largest clause size to enumerate (enum-sbc)")
    orc.add_argument("--maximal-only", action="store_true", help="report only maximal witness sets (enum-sbc)")
    orc.add_argument("--match", type=int, help="restrict under a random partial matching of this many pigeons")
    orc.add_argument("--assign", help="restrict under these literals, e.g. '1 -3'")
    orc.add_argument("-o", "--output", help="output file (dp: proof; restrict: restricted proof)")
    orc.add_argument("--cnf-out", help="restrict: also write the restricted formula")
    _common(orc)
    return parser


def _config(args) -> RunConfig:
    merged = dict(_DEFAULTS)
    if args.config:
        merged.update(load_config(args.config))
    for key in _DEFAULTS:
        value = getattr(args, key)
        if value is not None:
            merged[key] = value
    return RunConfig(**merged)


class Output:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    def emit(self, text: str, **record) -> None:
        if self.cfg.json_lines:
            print(json.dumps(record, sort_keys=True))
        else:
            print(text)

    def comments(self, *lines: str) -> list[str]:
        out = ["generated by redproof"]
        if not self.cfg.no_timestamp:
            out.append("timestamp " + datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"))
        return out + list(lines)


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_cnf(path: str) -> dimacs.CnfFile:
    return dimacs.read(path)


def _layout(cnf: dimacs.CnfFile, k: int | None) -> BphpLayout | None:
    if k is not None:
        return BphpLayout(k)
    return BphpLayout.from_comments(cnf.comments)


def _extension_vars(args, g: Formula) -> tuple[ExtensionSeq | None, list[int]]:
    if args.er:
        er = read_er(args.er)
        return er.ext, list(er.ext.variables)
    if args.t is None or args.t < 0:
        raise UsageError("need --er or a nonnegative -t")
    return None, fresh_variables(g, args.t)


def cmd_gen(args, cfg: RunConfig, out: Output) -> int:
    meta: dict[str, object] = {"family": args.family}
    if args.family == "bphp":
        if args.k is not None:
            if args.k < 1:
                raise UsageError("-k must be at least 1")
            g, layout = gen_bphp(args.k)
        elif args.n is not None:
            if args.n < 2:
                raise UsageError("-n must be at least 2")
            g, layout = gen_bphp_for(args.n)
        else:
            raise UsageError("bphp needs -k or -n")
        comments = out.comments(*layout.comments())
        meta.update(k=layout.k, n=layout.n)
    else:
        if not args.cnf:
            raise UsageError(f"gen {args.family} needs --cnf")
        base = _read_cnf(args.cnf).formula
        _, xs = _extension_vars(args, base)
        meta.update(t=len(xs))
        if args.family == "g":
            g = gen_G(base, xs)
            comments = out.comments(*guard_comments(xs))
        else:
            if args.m is None or args.m < 1:
                raise UsageError("gen i needs -m >= 1")
            pairs = GuardedPairLayout.above(args.m, base, xs)
            g = gen_I(base, xs, pairs)
            comments = out.comments(*guard_comments(xs, pairs))
            meta.update(m=args.m)
    meta["seed"] = cfg.seed
    _write(args.output, dimacs.dumps(g, comments))
    meta_path = args.meta or (args.output + ".meta" if args.output else None)
    if meta_path:
        Path(meta_path).write_text(dumps_meta(meta))
    if args.output:
        out.emit(f"wrote {args.output}: {g.num_vars} variables, {g.num_entries} clauses",
                 command="gen", family=args.family, output=args.output, variables=g.num_vars, clauses=g.num_entries)
    return EXIT_OK


def _report(out: Output, report, system: str) -> int:
    lines = [report.summary()]
    if report.stats:
        lines.append("steps " + " ".join(f"{k}={v}" for k, v in sorted(report.stats.items())))
    if report.failing_clause is not None and not report.accepted:
        lines.append("failing clause " + " ".join(str(l) for l in report.failing_clause.sorted()) + " 0")
    out.emit("\n".join(lines), command="check", system=system, **report.to_dict())
    return EXIT_OK if report.accepted else EXIT_REJECTED


def cmd_check(args, cfg: RunConfig, out: Output) -> int:
    g = _read_cnf(args.cnf).formula
    if args.system == "ger":
        report = check_ger(g, read_ger(args.proof))
    elif args.system == "er":
        report = check_er(g, read_er(args.proof))
    else:
        report = check(System(args.system), g, read_proof(args.proof), permissive=args.permissive)
    return _report(out, report, args.system)


def cmd_prove(args, cfg: RunConfig, out: Output) -> int:
    g = _read_cnf(args.cnf).formula
    er = read_er(args.er)
    er_report = check_er(g, er)
    if not er_report.accepted:
        out.emit(f"ER proof not accepted: {er_report.summary()}", command="prove", error="er-rejected", **er_report.to_dict())
        return EXIT_USAGE
    er_size = er.size(g)
    xs = list(er.ext.variables)
    if args.target == "g-rat":
        target = gen_G(g, xs)
        proof = simulate_er_in_rat_minus(g, er)
        report = check(System.RAT, target, proof)
        text = dumps_proof(proof, out.comments("RAT proof of the x-guarded formula"))
        comments = guard_comments(xs)
    else:
        if args.m is None or args.m < 1:
            raise UsageError("prove i-ger needs -m >= 1")
        pairs = GuardedPairLayout.above(args.m, g, er.ext)
        target = gen_I(g, xs, pairs)
        cert = build_ger_proof(g, er, pairs)
        report = check_ger(target, cert)
        text = dumps_ger(cert, out.comments(f"GER certificate of the pair-guarded formula, m={args.m}"))
        comments = guard_comments(xs, pairs)
    if not report.accepted:
        out.emit(f"self-check failed: {report.summary()}", command="prove", **report.to_dict())
        return EXIT_REJECTED
    _write(args.output, text)
    if args.cnf_out:
        dimacs.write(args.cnf_out, target, out.comments(*comments))
    relation = "<=" if report.size <= er_size else ">"
    out.emit(f"size {report.size} {relation} size_ER {er_size}",
             command="prove", target=args.target, size=report.size, er_size=er_size, verdict=report.verdict)
    return EXIT_OK


def _model_line(model: Assignment) -> str:
    return "v " + " ".join(str(l) for l in sorted(model, key=literal_key)) + " 0"


def cmd_oracle(args, cfg: RunConfig, out: Output) -> int:
    cnf = _read_cnf(args.cnf)
    g = cnf.formula
    task = args.task
    if task == "sat":
        result = brute_force_sat(g, cfg.oracle_var_limit or DEFAULT_SAT_LIMIT)
        if result.satisfiable:
            out.emit("SAT\n" + _model_line(result.model), command="oracle", task=task, result="SAT",
                     model=sorted(result.model, key=literal_key))
        else:
            out.emit("UNSAT", command="oracle", task=task, result="UNSAT")
        return EXIT_OK
    if task == "dp":
        outcome = dp_resolution_oracle(g, cfg.oracle_var_limit or DEFAULT_DP_LIMIT)
        if outcome.satisfiable:
            out.emit("SAT\n" + _model_line(outcome.model), command="oracle", task=task, result="SAT",
                     model=sorted(outcome.model, key=literal_key))
        else:
            _write(args.output, dumps_proof(outcome.proof, out.comments("resolution proof by variable elimination")))
            if args.output:
                out.emit(f"UNSAT size {outcome.proof.size}", command="oracle", task=task, result="UNSAT",
                         size=outcome.proof.size)
        return EXIT_OK
    if task == "enum-sbc":
        layout = _layout(cnf, args.k)
        max_size = args.max_size if args.max_size is not None else len(g.variables)
        found = enumerate_sbcs(g, max_size, limit=cfg.oracle_var_limit or DEFAULT_ENUM_LIMIT,
                               maximal_only=args.maximal_only, threads=cfg.threads)
        widths = [pigeon_width(c, layout) for c, _ in found] if layout else []
        rows = []
        for n, (c, L) in enumerate(found):
            row = [" ".join(map(str, c.sorted())), " ".join(str(l) for l in sorted(L, key=literal_key))]
            if layout:
                row.append(str(widths[n]))
            rows.append(row)
        summary = f"# count {len(found)}"
        if layout:
            summary += f" min_pigeon_width {min(widths, default=0)} max_pigeon_width {max(widths, default=0)}"
        if cfg.json_lines:
            for row in rows:
                out.emit("", command="oracle", task=task, clause=row[0], witness=row[1],
                         pigeon_width=int(row[2]) if layout else None)
            out.emit("", command="oracle", task=task, count=len(found),
                     min_pigeon_width=min(widths, default=None), max_pigeon_width=max(widths, default=None))
        else:
            header = ["clause", "witness"] + (["pigeon_width"] if layout else [])
            print("\t".join(header))
            for row in rows:
                print("\t".join(row))
            print(summary)
        return EXIT_OK
    if task == "width":
        layout = _layout(cnf, args.k)
        if layout is None:
            raise UsageError("width needs layout comments in the CNF or -k")
        clauses = list(g.entries)
        if args.proof:
            clauses += [s.result for s in read_proof(args.proof)]
        widths = [pigeon_width(c, layout) for c in clauses]
        if cfg.json_lines:
            for cid, (c, w) in enumerate(zip(clauses, widths), 1):
                out.emit("", command="oracle", task=task, id=cid, clause=c.sorted(), pigeon_width=w)
            out.emit("", command="oracle", task=task, max_pigeon_width=max(widths, default=0))
        else:
            for cid, (c, w) in enumerate(zip(clauses, widths), 1):
                print(f"{cid}\t{' '.join(map(str, c.sorted()))}\t{w}")
            print(f"max\t{max(widths, default=0)}")
        return EXIT_OK
    # restrict
    if not args.proof:
        raise UsageError("restrict needs --proof")
    pf = read_proof(args.proof)
    if args.match is not None:
        layout = _layout(cnf, args.k)
        if layout is None:
            raise UsageError("--match needs layout comments in the CNF or -k")
        alpha = random_partial_matching(layout, args.match, cfg.seed)
    elif args.assign is not None:
        try:
            alpha = Assignment(int(t) for t in args.assign.replace(",", " ").split())
        except ValueError as exc:
            raise UsageError(f"bad --assign: {exc}") from None
    else:
        raise UsageError("restrict needs --match or --assign")
    restricted_pf = restrict_proof(g, pf, alpha)
    restricted = restrict_formula(g, alpha)
    report = check(System.RES, restricted, restricted_pf, new_variables=True)
    _write(args.output, dumps_proof(restricted_pf, out.comments("restricted under " + " ".join(str(l) for l in sorted(alpha, key=literal_key)))))
    if args.cnf_out:
        dimacs.write(args.cnf_out, restricted, out.comments())
    if args.output:
        out.emit(f"{report.summary()} (original size {pf.size})", command="oracle", task=task,
                 assignment=sorted(alpha, key=literal_key), original_size=pf.size, **report.to_dict())
    return EXIT_OK if report.accepted else EXIT_REJECTED


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "prove": cmd_prove, "oracle": cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, Output(cfg))
    except (UsageError, ParseError, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConstructionError as exc:
        print(f"self-check failed: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except RedproofError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
