"""Command-line interface.

Exit status is 0 for success or a positive answer, 1 for a negative answer
to a yes/no question, and 2 for any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product
from typing import Optional, Sequence

from . import __version__
from .argumentation import (
    SEMANTICS,
    classify_symmetry,
    extensions,
    is_coherent,
    kb_to_psetaf,
    recover_symmetric_paf,
    reduce_preferences,
)
from .dllite import BCQ, close_tbox, prepare
from .errors import OrbitsError
from .formats import parse_kb, parse_preorder, parse_queries, parse_setaf, serialize_setaf
from .lp import (
    gen_gamma_d_program,
    gen_kb_program,
    gen_setaf_program,
    kb_facts,
    kb_signature,
    parse_program,
    well_founded_model,
)
from .repairs import check_repair, enumerate_optimal
from .semantics import PartialPreorder, SemanticsSpec, elect, entails, partial_pr

YES, NO, ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(ERROR)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_kb(path: str):
    kb = parse_kb(_read(path))
    return prepare(kb)


def _set_line(ids) -> str:
    return "{" + ", ".join(sorted(ids)) + "}"


def _canonical(sets) -> list[list[str]]:
    return sorted((sorted(s) for s in sets), key=lambda s: (len(s), s))


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text_lines: Sequence[str], payload: dict) -> None:
        if self.as_json:
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            for line in text_lines:
                print(line)


# ----------------------------------------------------------------- commands


def cmd_conflicts(a, out: _Out) -> int:
    kb, hyper = _load_kb(a.file)
    edges = _canonical(hyper.edges)
    lines = [_set_line(e) for e in edges]
    if kb.removed:
        lines.append("# self-contradictory: " + ", ".join(kb.removed))
    out.emit(lines, {"conflicts": edges, "self_contradictory": list(kb.removed)})
    return YES


def cmd_repairs(a, out: _Out) -> int:
    kb, hyper = _load_kb(a.file)
    reps = _canonical(r.ids for r in enumerate_optimal(kb, hyper, a.kind, a.force))
    out.emit([_set_line(r) for r in reps], {"kind": a.kind.upper(), "repairs": reps})
    return YES


def cmd_check_repair(a, out: _Out) -> int:
    kb, hyper = _load_kb(a.file)
    cand = [x.strip() for x in a.set.split(",") if x.strip()]
    ok, witness = check_repair(kb, hyper, cand, a.kind)
    payload = {"kind": a.kind.upper(), "optimal": ok, "witness": None}
    lines = ["yes" if ok else "no"]
    if witness is not None:
        payload["witness"] = {"improved": sorted(witness.improved), "entering": sorted(witness.entering),
                              "exiting": sorted(witness.exiting), "flavor": witness.flavor}
        lines.append(f"{witness.flavor} improvement: {_set_line(witness.improved)}")
    out.emit(lines, payload)
    return YES if ok else NO


def _bindings(kb, q: BCQ):
    inds = sorted(kb.individuals())
    if not q.answer_vars:
        yield (), q
        return
    for combo in product(inds, repeat=len(q.answer_vars)):
        yield combo, q.bind(dict(zip(q.answer_vars, combo)))


def cmd_entail(a, out: _Out) -> int:
    kb, hyper = _load_kb(a.file)
    if a.sem:
        if a.kind or a.mode:
            raise _Usage("--sem cannot be combined with --kind or --mode")
        spec = SemanticsSpec(special="grounded_d" if a.depth else "grounded", depth=a.depth)
        label = f"grounded (depth {a.depth})" if a.depth else "grounded"
    else:
        if not (a.kind and a.mode):
            raise _Usage("entail needs --kind and --mode, or --sem grounded")
        spec = SemanticsSpec(a.kind.upper(), {"ar": "AR", "iar": "IAR", "brave": "brave"}[a.mode])
        label = f"{spec.kind}-{spec.mode}"
    queries = parse_queries(_read(a.qfile), kb.individuals())
    results, lines, all_yes = [], [], True
    for q in queries:
        hits = [list(b) for b, g in _bindings(kb, q) if entails(kb, hyper, g, spec, a.force)]
        if q.answer_vars:
            lines += [f"({', '.join(h)})" for h in sorted(hits)]
            results.append({"answers": sorted(hits)})
            all_yes &= bool(hits)
        else:
            yes = bool(hits)
            lines.append("yes" if yes else "no")
            results.append({"entailed": yes})
            all_yes &= yes
    out.emit(lines, {"semantics": label, "queries": results})
    return YES if all_yes else NO


def cmd_elect(a, out: _Out) -> int:
    kb, hyper = _load_kb(a.file)
    ids = sorted(elect(kb, hyper))
    out.emit(ids, {"elect": ids})
    return YES


def cmd_partialpr(a, out: _Out) -> int:
    kb, hyper = _load_kb(a.file)
    ids = sorted(hyper.vertices)
    pairs = parse_preorder(_read(a.preorder), ids)
    pre = PartialPreorder(frozenset(pairs) | {(i, i) for i in ids})
    result = sorted(partial_pr(kb, pre, hyper, literal=a.literal, force=a.force))
    out.emit(result, {"partial_pr": result})
    return YES


def cmd_af_export(a, out: _Out) -> int:
    kb, hyper = _load_kb(a.file)
    p = kb_to_psetaf(kb, hyper)
    text = serialize_setaf(p)
    if out.as_json:
        print(json.dumps({"arguments": list(p.arguments),
                          "attacks": [[list(s), b] for s, b in p.setaf.sorted_attacks()],
                          "preference": sorted(map(list, p.preference))}, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text)
    return YES


def cmd_af_extensions(a, out: _Out) -> int:
    p = parse_setaf(_read(a.setaf))
    f = reduce_preferences(p)
    exts = [sorted(e.arguments, key=int) for e in extensions(f, a.sem, a.force)]
    out.emit([_set_line(e) if e else "{}" for e in exts], {"semantics": a.sem, "extensions": exts})
    return YES


def cmd_af_analyze(a, out: _Out) -> int:
    p = parse_setaf(_read(a.setaf))
    f = reduce_preferences(p)
    labels = sorted(classify_symmetry(p.setaf))
    coherent, bad = is_coherent(f, a.force)
    info = {"k": p.setaf.k, "symmetry": labels, "coherent": coherent,
            "non_stable_preferred": sorted(bad.arguments, key=int) if bad else None}
    lines = [f"max attack size: {p.setaf.k}",
             "symmetry: " + (", ".join(labels) if labels else "none"),
             "coherent: " + ("yes" if coherent else "no")]
    if bad:
        lines.append("preferred but not stable: " + _set_line(bad.arguments))
    if p.setaf.is_af and not p.preference:
        rec = recover_symmetric_paf(p.setaf)
        info["symmetric_paf_origin"] = rec is not None
        lines.append("reduction of a symmetric PAF: " + ("yes" if rec else "no"))
    out.emit(lines, info)
    return YES


def cmd_lp_emit(a, out: _Out) -> int:
    if a.what == "setaf":
        prog = gen_setaf_program(reduce_preferences(parse_setaf(_read(a.file))))
    else:
        kb, _ = _load_kb(a.file)
        concepts, roles = kb_signature(kb)
        ct = close_tbox(kb.tbox)
        if a.what == "kb":
            prog = gen_kb_program(ct, concepts, roles) + kb_facts(kb)
        else:
            if not a.depth:
                raise _Usage("lp emit gamma needs --depth")
            prog = gen_gamma_d_program(ct, a.depth, concepts, roles) + kb_facts(kb)
    sys.stdout.write(str(prog))
    return YES


def cmd_lp_wfs(a, out: _Out) -> int:
    model = well_founded_model(parse_program(_read(a.file)))
    true = sorted(map(str, model.true))
    unknown = sorted(map(str, model.unknown))
    lines = [f"true: {t}" for t in true] + [f"unknown: {u}" for u in unknown]
    out.emit(lines, {"true": true, "unknown": unknown})
    return YES


def cmd_oracle_verify(a, out: _Out) -> int:
    from . import oracle
    from .argumentation import extensions as fast_ext
    from .dllite import conflicts as fast_conflicts

    failures = []
    for t, kb in enumerate(oracle.kb_corpus(a.trials, a.seed)):
        vkb, hyper = prepare(kb)
        if not kb.hypergraph_mode:
            ct = close_tbox(kb.tbox)
            if set(oracle.brute_conflicts(ct, vkb.abox).edges) != set(fast_conflicts(ct, vkb.abox).edges):
                failures.append((t, "conflicts"))
        for kind in "SPGC":
            fast = {r.ids for r in enumerate_optimal(vkb, hyper, kind)}
            if fast != {r.ids for r in oracle.brute_optimal(vkb, hyper, kind)}:
                failures.append((t, f"repairs {kind}"))
        f = reduce_preferences(kb_to_psetaf(vkb, hyper))
        for sem in SEMANTICS:
            if {e.arguments for e in fast_ext(f, sem)} != {e.arguments for e in oracle.brute_extensions(f, sem)}:
                failures.append((t, f"extensions {sem}"))
    lines = [f"trials: {a.trials}", f"seed: {a.seed}", f"disagreements: {len(failures)}"]
    lines += [f"  trial {t}: {what}" for t, what in failures]
    out.emit(lines, {"trials": a.trials, "seed": a.seed,
                     "disagreements": [{"trial": t, "check": w} for t, w in failures]})
    return YES if not failures else NO


# ------------------------------------------------------------------- parser


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orbits", description="Repairs, argumentation and logic programs for prioritized DL-Lite KBs.")
    p.add_argument("--version", action="version", version=f"orbits {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--force", action="store_true", help="lift desk-scale size guards")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    kind = dict(choices=["s", "p", "g", "c"], type=str.lower)

    s = sub.add_parser("conflicts", parents=[common], help="list the conflicts of a KB")
    s.add_argument("file")
    s.set_defaults(run=cmd_conflicts)

    s = sub.add_parser("repairs", parents=[common], help="enumerate optimal repairs")
    s.add_argument("--kind", required=True, **kind)
    s.add_argument("file")
    s.set_defaults(run=cmd_repairs)

    s = sub.add_parser("check-repair", parents=[common], help="decide whether a set is an optimal repair")
    s.add_argument("--kind", required=True, **kind)
    s.add_argument("--set", required=True, help="comma-separated assertion ids")
    s.add_argument("file")
    s.set_defaults(run=cmd_check_repair)

    s = sub.add_parser("entail", parents=[common], help="query entailment under a semantics")
    s.add_argument("--kind", **kind)
    s.add_argument("--mode", choices=["ar", "iar", "brave"], type=str.lower)
    s.add_argument("--sem", choices=["grounded"])
    s.add_argument("--depth", type=int, help="approximate the grounded set with this many steps")
    s.add_argument("file")
    s.add_argument("qfile")
    s.set_defaults(run=cmd_entail)

    s = sub.add_parser("elect", parents=[common], help="assertions elected by the priority")
    s.add_argument("file")
    s.set_defaults(run=cmd_elect)

    s = sub.add_parser("partialpr", parents=[common], help="facts kept under every total extension of a preorder")
    s.add_argument("--literal", action="store_true", help="enumerate total extensions (small inputs)")
    s.add_argument("file")
    s.add_argument("preorder")
    s.set_defaults(run=cmd_partialpr)

    af_p = sub.add_parser("af", help="argumentation frameworks")
    af_sub = af_p.add_subparsers(dest="af_command", required=True, parser_class=_Parser)
    s = af_sub.add_parser("export", parents=[common], help="write the PSETAF of a KB")
    s.add_argument("file")
    s.set_defaults(run=cmd_af_export)
    s = af_sub.add_parser("extensions", parents=[common], help="extensions of a (P)SETAF")
    s.add_argument("--sem", required=True, choices=list(SEMANTICS))
    s.add_argument("setaf")
    s.set_defaults(run=cmd_af_extensions)
    s = af_sub.add_parser("analyze", parents=[common], help="symmetry and coherence of a (P)SETAF")
    s.add_argument("setaf")
    s.set_defaults(run=cmd_af_analyze)

    lp_p = sub.add_parser("lp", help="logic programs")
    lp_sub = lp_p.add_subparsers(dest="lp_command", required=True, parser_class=_Parser)
    s = lp_sub.add_parser("emit", parents=[common], help="print a generated program")
    s.add_argument("what", choices=["setaf", "kb", "gamma"])
    s.add_argument("--depth", type=int)
    s.add_argument("file")
    s.set_defaults(run=cmd_lp_emit)
    s = lp_sub.add_parser("wfs", parents=[common], help="well-founded model of a program")
    s.add_argument("file")
    s.set_defaults(run=cmd_lp_wfs)

    or_p = sub.add_parser("oracle", help="brute-force cross-checks")
    or_sub = or_p.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    s = or_sub.add_parser("verify", parents=[common], help="compare fast paths with the oracles")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(run=cmd_oracle_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else ERROR
    if getattr(args, "depth", None) is not None and args.depth < 1:
        print("orbits: error: --depth must be at least 1", file=sys.stderr)
        return ERROR
    try:
        return args.run(args, _Out(getattr(args, "json", False)))
    except _Usage as e:
        print(f"orbits: error: {e}", file=sys.stderr)
        return ERROR
    except (OrbitsError, OSError, ValueError) as e:
        print(f"orbits: error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
