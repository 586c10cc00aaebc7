"""Command-line entry point.

Exit codes: 0 proven or passed, 1 unreadable input, 2 MAYBE, 3 search
budget exhausted, 4 Φ budget exhausted, 10 internal soundness breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .lab.badseq import DEFAULT_LENGTH, MinimalBad, bar_induction_check, minimal_bad_sequence
from .lab.campaigns import CAMPAIGNS, CampaignConfig, premise_family
from .lab.export import rpo_principle_instance
from .lab.instance import InvalidInstance, PrincipleInstance, require_small
from .lab.lemmas import ProofStepReport, compare_premises, lemma34_proof_steps
from .lab.sequences import LazySequence, OpenPredicate, lasso_family, parse_alpha, shift, splice
from .lab.simplification import MissingRelation, gl_check, stp_check
from .openrec import REALIZERS, BudgetExceeded, Naturals, PhiBudget, phi
from .relations import Lifting
from .rewriting import LoopFound, Normal, empirical_termination, normalize
from .rpo import (RpoInstance, SearchBudgetExceeded, SearchConfig, orient_trs, validate_certificate,
                  variable_condition_failures)
from .terms import ParseError, ResourceError, build_term, enumerate_ground_terms, parse_raw
from .trsfile import load_trs

EXIT_OK, EXIT_PARSE, EXIT_MAYBE, EXIT_BUDGET, EXIT_PHI_BUDGET, EXIT_BREACH = 0, 1, 2, 3, 4, 10

STATUSES = {"lex": (Lifting.LEX,), "mul": (Lifting.MUL,), "auto": (Lifting.LEX, Lifting.MUL)}

log = logging.getLogger("rpolab")


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def _emit(args, doc: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _load(path: str):
    try:
        return load_trs(path)
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None


def _orient(tf, statuses: str, budget: int):
    cfg = SearchConfig(statuses=STATUSES[statuses], budget=budget)
    return orient_trs(tf.signature, tf.trs.pairs(), cfg)


# -- check ------------------------------------------------------------------

def cmd_check(args) -> int:
    tf = _load(args.path)
    rules = tf.trs.pairs()
    try:
        found = _orient(tf, args.status, args.budget)
    except SearchBudgetExceeded as err:
        _emit(args, {"status": "BUDGET", "candidates": err.nodes}, [f"BUDGET ({err})"])
        return EXIT_BUDGET

    empirical = None
    if args.depth >= 0:
        empirical = empirical_termination(tf.trs, args.depth, args.fuel)

    if found is None:
        bad = variable_condition_failures(rules)
        reason = (f"rules {bad} violate the variable condition" if bad
                  else "no precedence and status orients every rule")
        doc = {"status": "MAYBE", "reason": reason}
        lines = [f"MAYBE ({reason})"]
        if empirical is not None:
            doc["empirical"] = empirical.to_json()
            lines += _empirical_lines(empirical)
        _emit(args, doc, lines)
        return EXIT_MAYBE

    _, cert = found
    valid = validate_certificate(cert, tf.signature, rules)
    doc = {"status": "YES", "certificate": cert.to_json(), "certificate_valid": valid}
    lines = ["YES"]
    lines.append("precedence: " + (", ".join(f"{f} > {g}" for f, g in cert.precedence) or "(empty)"))
    lines.append("status: " + ", ".join(f"{f}={s}" for f, s in cert.statuses.items()))
    for k, entry in enumerate(cert.oriented):
        root = entry["clause_trace"][0]["clause"] if entry["clause_trace"] else "?"
        lines.append(f"rule {k}: {entry['lhs']} -> {entry['rhs']}  [clause {root}, "
                     f"{len(entry['clause_trace'])} steps]")
    lines.append(f"certificate re-validates: {'yes' if valid else 'NO'}")
    breach = not valid
    if empirical is not None:
        doc["empirical"] = empirical.to_json()
        lines += _empirical_lines(empirical)
        if empirical.loops:
            breach = True
            lines.append("INTERNAL ERROR: a certified system produced a loop")
    _emit(args, doc, lines)
    return EXIT_BREACH if breach else EXIT_OK


def _empirical_lines(rep) -> list[str]:
    c = rep.counts
    lines = [f"empirical (ground terms of height <= {rep.depth}, fuel {rep.fuel}): "
             f"{c.get('normal', 0)} normal, {c.get('loop', 0)} loop, {c.get('fuel', 0)} out of fuel"]
    for term, loop in rep.loops[:3]:
        terms = loop.trace.terms
        lines.append(f"  LoopFound from {term}: {terms[loop.start]} recurs in {terms[-1]}")
    return lines


# -- trace ------------------------------------------------------------------

def _parse_user_term(tf, text: str):
    """Parse over the file's signature; unknown bare names become fresh constants."""
    raw = parse_raw(text)
    sig = tf.signature
    fresh = []

    def walk(node):
        name, _, kids = node
        if not kids and name not in sig and name not in tf.variables and name not in fresh:
            fresh.append(name)
        for k in kids:
            walk(k)

    walk(raw)
    if fresh:
        sig = sig.extended(*((n, 0) for n in fresh))
    return build_term(raw, sig, ())


def cmd_trace(args) -> int:
    tf = _load(args.path)
    term = _parse_user_term(tf, args.term)
    out = normalize(tf.trs, term, args.fuel)
    trace = out.trace
    lines = [f"0: {trace.start}"]
    for i, step in enumerate(trace.steps, start=1):
        rule = tf.trs.rules[step.rule]
        lines.append(f"{i}: {step.result}   [rule {step.rule}: {rule} at position {list(step.position)}]")
    if isinstance(out, Normal):
        verdict = f"normal form {out.term} after {len(trace)} steps"
    elif isinstance(out, LoopFound):
        verdict = f"LoopFound: term {out.start} repeats after {len(trace)} steps"
    else:
        verdict = f"FuelExhausted after {len(trace)} steps"
    lines.append(verdict)
    doc = {"outcome": type(out).__name__, "steps": len(trace), "trace": trace.to_json()}
    _emit(args, doc, lines)
    return EXIT_OK


# -- lab --------------------------------------------------------------------

def _load_instance(path: str) -> PrincipleInstance:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise InvalidInstance(f"cannot read instance {path}: {err}") from None
    return PrincipleInstance.from_json(doc)


def _lab_single(args, inst: PrincipleInstance) -> tuple[dict, list[str], bool]:
    kind = args.check
    if kind == "stp":
        rep = stp_check(inst)
        doc = rep.to_json()
        lines = [f"decomposition laws: {'ok' if rep.decomposition_ok else f'{len(rep.law_violations)} violations'}",
                 f"A = {sorted(map(str, rep.A))}",
                 f"eWF within A: {'ok' if not rep.ewf_a_failures else rep.ewf_a_failures}",
                 f"hypotheses hold: {rep.hypotheses_hold}",
                 f"all elements well-founded: {rep.conclusion}"]
        return doc, lines, rep.sound
    if kind == "gl":
        rep = gl_check(inst)
        doc = rep.to_json()
        lines = [f"split condition failures: {len(rep.split_failures)}",
                 f"⊳ well-founded: {rep.sub_cycle is None}",
                 f"inaccessible in A: {rep.inaccessible}",
                 f"hypotheses hold: {rep.hypotheses_hold}"]
        if rep.stp is not None:
            lines.append(f"induced decomposition: hypotheses {rep.stp.hypotheses_hold}, "
                         f"all well-founded {rep.stp.conclusion}")
        lines.append("pass" if rep.sound else "FAIL")
        return doc, lines, rep.sound
    if kind == "mbs":
        res = minimal_bad_sequence(inst, args.length)
        if isinstance(res, MinimalBad):
            doc = {"result": "MinimalBad", "prefix": list(res.prefix), "sequence": res.sequence.describe(),
                   "verified": res.verified}
            lines = [f"MinimalBad {', '.join(map(str, res.prefix))}, ...  (lasso {res.sequence.describe()})",
                     f"minimality verified exhaustively: {res.verified}"]
            return doc, lines, res.verified
        ok = inst.all_wf()
        return {"result": "NoBad", "consistent": ok}, ["NoBad"], ok
    if kind == "bi":
        require_small(inst)
        rep = bar_induction_check(inst, args.length)
        doc = rep.to_json()
        lines = [f"S(<>): {rep.s_empty}",
                 f"bar premise: {rep.bar_premise}" + (f" (fails on {rep.bar_witness})" if rep.bar_witness else ""),
                 f"step premise: {rep.step_premise}" + (f" (fails at {list(rep.step_witness)})"
                                                         if rep.step_witness is not None else ""),
                 f"premise of the termination principle: {rep.tp_premise}",
                 f"P(<>) derived: {rep.derived_p_empty}, actual: {rep.actual_p_empty}"]
        return doc, lines, rep.sound
    if kind == "lemma34":
        require_small(inst, 6)
        rep = _lemma34_on(inst, args.length)
        doc = {"checks": rep.checks, "violations": rep.violations, "ok": rep.ok}
        lines = [f"{name}: {count} checks" for name, count in sorted(rep.checks.items())]
        lines.append("pass" if rep.ok else f"FAIL: {rep.violations[:5]}")
        return doc, lines, rep.ok
    if kind == "lemma44":
        require_small(inst, 6)
        cmp = compare_premises(inst, premise_family(inst))
        doc = cmp.to_json()
        lines = [f"sequences tested: {cmp.sequences}",
                 f"MIN premise holds: {cmp.tp_holds}  eMIN premise holds: {cmp.etp_holds}",
                 f"agree: {cmp.agree}"]
        if cmp.tp_witnesses:
            lines.append(f"shared witnesses: {cmp.tp_witnesses[:5]}")
        return doc, lines, cmp.agree
    raise AssertionError(kind)


def _lemma34_on(inst: PrincipleInstance, L: int) -> ProofStepReport:
    """Chains converging to small lassos, against sequences spliced below them."""
    L = max(2, min(L, 6))
    B = OpenPredicate.non_descent(inst.succ)
    rep = ProofStepReport()
    for limit in lasso_family(inst.carrier, 1, 2):
        betas = [limit] + [LazySequence.constant(x) for x in inst.carrier]
        for m in range(L):
            for y in inst.below(limit[m]):
                betas.append(splice(limit, m, y, shift(limit, m + 1)))
        for N in range(L):
            gamma = LazySequence(lambda n, N=N, a=limit: a.prefix(N + n))
            for beta in betas:
                lemma34_proof_steps(B, inst.sub, gamma, beta, L, rep)
    return rep


def cmd_lab(args) -> int:
    if args.random:
        cfg = CampaignConfig(seed=args.seed, count=args.count)
        if args.check == "stp" and args.min_passing:
            cfg.min_passing = args.min_passing
        rep = CAMPAIGNS[args.check](cfg)
        lines = [rep.summary(), f"stats: {json.dumps(rep.stats, sort_keys=True)}"]
        lines += [f"FAILURE replay {f['replay']}" for f in rep.failures[:10]]
        doc = rep.to_json()
        doc.pop("seconds")
        _emit(args, doc, lines)
        return EXIT_OK if rep.ok else EXIT_BREACH
    if not args.instance:
        raise InvalidInstance("give an instance file or --random")
    inst = _load_instance(args.instance)
    doc, lines, ok = _lab_single(args, inst)
    _emit(args, doc, lines)
    return EXIT_OK if ok else EXIT_BREACH


# -- export -----------------------------------------------------------------

def cmd_export(args) -> int:
    tf = _load(args.path)
    try:
        found = _orient(tf, args.status, args.budget)
    except SearchBudgetExceeded as err:
        print(f"BUDGET ({err})", file=sys.stderr)
        return EXIT_BUDGET
    if found is None:
        print("MAYBE: no RPO orients the system, nothing to export", file=sys.stderr)
        return EXIT_MAYBE
    prec, _ = found
    rpo = RpoInstance(tf.trs.ground_signature(), prec)
    inst = rpo_principle_instance(rpo, enumerate_ground_terms(rpo.signature, args.depth))
    doc = inst.to_json()
    names, succ = doc["carrier"], doc["succ"]
    text = json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {len(names)} elements, {len(succ)} order pairs to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- phi --------------------------------------------------------------------

def cmd_phi(args) -> int:
    try:
        alpha = parse_alpha(args.alpha)
    except ValueError as err:
        raise ParseError(str(err)) from None
    dom = Naturals()
    f = REALIZERS[args.realizer](dom)
    out = phi(dom, f, alpha, PhiBudget(max_depth=args.budget, max_probes=args.probes))
    frames = out.trace_json()
    trace_lines = [f"  depth {fr['depth']}: "
                   + ("root call" if fr["parent"] is None else f"spliced at {fr['spliced_at']} with {fr['y']}")
                   + f" -> {fr['f_result']}" for fr in frames]
    if isinstance(out, BudgetExceeded):
        doc = {"result": "BudgetExceeded", "reason": out.reason, "path": [list(p) for p in out.path],
               "trace": frames}
        _emit(args, doc, [f"BudgetExceeded: {out.reason}", f"splice path: {out.path}", "partial trace:"]
              + trace_lines)
        return EXIT_PHI_BUDGET
    n = out.n
    doc = {"result": "Index", "index": n, "assertion_holds": out.conclusion_holds, "trace": frames}
    lines = [f"Index {n}",
             f"assertion alpha({n}) = {alpha[n]} does not descend to alpha({n + 1}) = {alpha[n + 1]}: "
             f"{'holds' if out.conclusion_holds else 'VIOLATED'}",
             "trace:"] + trace_lines
    _emit(args, doc, lines)
    return EXIT_OK if out.conclusion_holds else EXIT_BREACH


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rpolab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    search_budget = _env_int("RPOLAB_SEARCH_BUDGET", SearchConfig.budget)

    p = sub.add_parser("check", help="prove termination of a TRS with a recursive path order")
    p.add_argument("path")
    p.add_argument("--status", choices=sorted(STATUSES), default="auto")
    p.add_argument("--depth", type=int, default=2, help="height of ground terms for the empirical pass (-1 skips)")
    p.add_argument("--fuel", type=int, default=200)
    p.add_argument("--budget", type=int, default=search_budget, help="max candidate orders to try")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trace", help="rewrite a term outermost-leftmost and print the derivation")
    p.add_argument("path")
    p.add_argument("term")
    p.add_argument("--fuel", type=int, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("lab", help="run a principle check on an instance or a random campaign")
    p.add_argument("check", choices=sorted(CAMPAIGNS))
    p.add_argument("instance", nargs="?")
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--min-passing", type=int, default=0, help="stp: draw until this many meet the hypotheses")
    p.add_argument("--length", type=int, default=DEFAULT_LENGTH, help="sequence length cap L")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lab)

    p = sub.add_parser("export", help="write the RPO on a ground term universe as an instance file")
    p.add_argument("path")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--status", choices=sorted(STATUSES), default="auto")
    p.add_argument("--budget", type=int, default=search_budget)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("phi", help="evaluate the open-recursion functional on a sequence of naturals")
    p.add_argument("--realizer", choices=sorted(REALIZERS), default="scan")
    p.add_argument("--alpha", required=True, help='e.g. "5,4,3;7" (7 repeats forever)')
    p.add_argument("--budget", type=int, default=_env_int("RPOLAB_PHI_BUDGET", 64), help="max recursion depth")
    p.add_argument("--probes", type=int, default=10_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_phi)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidInstance, MissingRelation) as err:
        print(f"invalid instance: {err}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
