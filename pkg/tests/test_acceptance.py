"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line (see with ``-s``)."""

from __future__ import annotations

import io
import json
import random
import time
from contextlib import redirect_stdout

from rpolab.cli import main
from rpolab.lab.campaigns import (CampaignConfig, bi_campaign, gl_campaign, lemma34_campaign, lemma44_campaign,
                                  mbs_campaign, stp_campaign)
from rpolab.openrec import Naturals, RealizerCampaign, constant_realizer, scan_realizer, validate_realizer
from rpolab.relations import RelationSpec, is_wellfounded_finite
from rpolab.rewriting import empirical_termination
from rpolab.rpo import Certificate, PrecedenceStatus, RpoInstance, check_decomposition_laws, orient_trs
from rpolab.rpo import validate_certificate
from rpolab.terms import Context, Signature, Var, app, apply_substitution, enumerate_ground_terms, positions
from rpolab.trsfile import load_trs

from conftest import CORPUS

SIG = Signature.of("0/0", "s/1", "ack/2")
ACK_LEX = RpoInstance(SIG, PrecedenceStatus.from_pairs([("ack", "s"), ("ack", "0")], {"ack": "lex"}))
SEED = 20261018


def verdict(number: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def campaign_verdict(number: int, report, extra: bool = True, note: str = "") -> None:
    verdict(number, report.ok and extra, f"{report.summary()} in {report.seconds:.1f}s {note}".strip())


def test_01_ackermann_orientation():
    out = io.StringIO()
    start = time.perf_counter()
    with redirect_stdout(out):
        code = main(["check", str(CORPUS / "ackermann.trs"), "--json", "--depth", "-1"])
    elapsed = time.perf_counter() - start
    doc = json.loads(out.getvalue())
    tf = load_trs(CORPUS / "ackermann.trs")
    cert = Certificate.from_json(doc["certificate"])
    traces = [r["clause_trace"] for r in cert.oriented]
    ok = (code == 0 and doc["status"] == "YES" and cert.statuses.get("ack") == "lex" and elapsed < 1.0
          and len(traces) == 3 and all(traces) and validate_certificate(cert, tf.signature, tf.trs.pairs()))
    verdict(1, ok, f"status {doc['status']}, ack={cert.statuses.get('ack')}, {len(traces)} traces re-validated, "
                   f"{elapsed:.3f}s")


def _open_terms(rng: random.Random, h: int):
    if h == 0 or rng.random() < 0.3:
        return rng.choice([app("0"), Var("x"), Var("y")])
    if rng.random() < 0.5:
        return app("s", _open_terms(rng, h - 1))
    return app("ack", _open_terms(rng, h - 1), _open_terms(rng, h - 1))


def test_02_rpo_order_laws():
    start = time.perf_counter()
    universe = enumerate_ground_terms(SIG, 3)
    idx = {t: i for i, t in enumerate(universe)}
    above = [{idx[s] for s in universe if ACK_LEX.gt(t, s)} for t in universe]
    reflexive = sum(i in above[i] for i in range(len(universe)))
    intransitive = sum(1 for i in range(len(universe)) for j in above[i] if not above[j] <= above[i])
    rel = RelationSpec(lambda a, b: idx[b] in above[idx[a]], universe, "terms")
    acyclic, _ = is_wellfounded_finite(rel)

    rng = random.Random(SEED)
    closure_failures = samples = 0
    while samples < 100:
        t, s = _open_terms(rng, 3), _open_terms(rng, 3)
        if not ACK_LEX.gt(t, s):
            continue
        samples += 1
        sigma = {"x": rng.choice(universe), "y": rng.choice(universe)}
        ts, ss = apply_substitution(t, sigma), apply_substitution(s, sigma)
        host = rng.choice(universe)
        pos = rng.choice([p for p, _ in positions(host)])
        ctx = Context.at(host, pos)
        if not (ACK_LEX.gt(ts, ss) and ACK_LEX.gt(ctx.plug(ts), ctx.plug(ss))):
            closure_failures += 1
    elapsed = time.perf_counter() - start
    ok = len(universe) == 183 and not reflexive and not intransitive and acyclic and not closure_failures \
        and elapsed < 30
    verdict(2, ok, f"{len(universe)} terms, {sum(map(len, above))} pairs; reflexive {reflexive}, "
                   f"intransitive {intransitive}, acyclic {acyclic}, closure failures {closure_failures}/100, "
                   f"{elapsed:.1f}s")


def test_03_decomposition_laws():
    universe = enumerate_ground_terms(SIG, 3)
    report = check_decomposition_laws(ACK_LEX, universe)
    mutated = check_decomposition_laws(ACK_LEX, universe, gt0=ACK_LEX.clause_ii)
    caught = any(v.law == "a" for v in mutated.violations)
    verdict(3, report.ok and caught, f"{report.pairs_checked} pairs, {len(report.violations)} violations; "
                                     f"mutation without clause (iii) gives {len(mutated.violations)} violations")


def test_04_stp_soundness_campaign():
    report = stp_campaign(CampaignConfig(seed=SEED, max_carrier=6, min_passing=10_000))
    campaign_verdict(4, report, report.considered >= 10_000 and report.seconds < 60,
                     f"(hypotheses met {report.stats['hypotheses_met']})")


def test_05_gl_reduction():
    report = gl_campaign(CampaignConfig(seed=SEED, count=1000))
    campaign_verdict(5, report, report.stats["hypotheses_met"] > 0,
                     f"(hypotheses met {report.stats['hypotheses_met']})")


def test_06_lemma34_fidelity():
    report = lemma34_campaign(CampaignConfig(seed=SEED, count=1000), max_carrier=4, max_L=6)
    checks = report.stats["checks"]
    campaign_verdict(6, report, all(checks.values()), f"(checks {checks})")


def test_07_lemma44_adapters():
    report = lemma44_campaign(CampaignConfig(seed=SEED, count=1000))
    campaign_verdict(7, report, note=f"(both premises fail on {report.stats['premises_fail']})")


def test_08_minimal_bad_sequence():
    report = mbs_campaign(CampaignConfig(seed=SEED, count=1000))
    bad = report.stats["non_wellfounded"]
    campaign_verdict(8, report, 0 < bad < 1000, f"({bad} non-well-founded)")


def test_09_bar_induction_premises():
    report = bi_campaign(CampaignConfig(seed=SEED, count=1000))
    wf, flagged = report.stats["wellfounded"], report.stats["ill_founded_flagged"]
    campaign_verdict(9, report, wf > 0 and flagged == 1000 - wf, f"({wf} well-founded, {flagged} flagged)")


def test_10_phi_fidelity():
    nat = Naturals()
    cfg = RealizerCampaign(count=200, domain=32, seed=SEED)
    good = validate_realizer(nat, scan_realizer(nat), cfg)
    broken = validate_realizer(nat, constant_realizer(0), cfg)
    ok = good.ok and good.runs == 200 and bool(broken.violations)
    verdict(10, ok, f"scan: {good.runs} runs, {len(good.violations)} violations, "
                    f"{len(good.replay_problems)} replay problems; constant-0 flagged on {len(broken.violations)}")


def test_11_corpus_empirical_link():
    certified, loops = [], {}
    for path in sorted(CORPUS.glob("*.trs")):
        if path.stem == "malformed":
            continue
        tf = load_trs(path)
        if orient_trs(tf.signature, tf.trs.pairs()) is not None:
            certified.append(path.stem)
        loops[path.stem] = len(empirical_termination(tf.trs, 2, 200).loops)
    clean = all(loops[name] == 0 for name in certified)
    ok = clean and "selfembed" not in certified and loops["selfembed"] > 0 and len(certified) >= 4
    verdict(11, ok, f"certified {certified} with loops {[loops[n] for n in certified]}; "
                    f"selfembed loops {loops['selfembed']}")
