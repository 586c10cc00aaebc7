"""Random finite instances and replayable checking campaigns.

Instance ``i`` of a campaign with seed ``s`` is drawn from
``random.Random(f"{s}:{i}")``, so any failure can be regenerated alone.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from ..relations import is_wellfounded_finite
from .badseq import MinimalBad, NoBad, bar_induction_check, minimal_bad_sequence, verify_minimal_bad
from .instance import PrincipleInstance, bad_sequence_from
from .lemmas import ProofStepReport, compare_premises, lemma34_proof_steps
from .sequences import LazySequence, OpenPredicate, lasso_family, splice
from .simplification import gl_check, stp_check


@dataclass
class CampaignConfig:
    seed: int = 0
    count: int = 1000
    max_carrier: int = 6
    edge_prob: float = 0.3
    min_passing: int = 0  # stp: keep drawing until this many instances meet the hypotheses
    max_draws: int = 200_000


@dataclass
class CampaignReport:
    name: str
    seed: int
    drawn: int = 0
    passed: int = 0
    considered: int = 0
    failures: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.name}: {self.passed}/{self.considered} pass ({self.drawn} drawn, seed {self.seed})"

    def to_json(self) -> dict:
        return {"name": self.name, "seed": self.seed, "drawn": self.drawn, "considered": self.considered,
                "passed": self.passed, "failures": self.failures, "stats": self.stats, "ok": self.ok,
                "seconds": round(self.seconds, 3)}


def rng_for(seed: int, i: int) -> random.Random:
    return random.Random(f"{seed}:{i}")


# -- generators -------------------------------------------------------------

def random_sub(rng: random.Random, carrier: list, p: float) -> list[tuple]:
    """An acyclic ``⊳``: edges only from later to earlier in a shuffled order."""
    order = carrier[:]
    rng.shuffle(order)
    return [(order[i], order[j]) for i in range(len(order)) for j in range(i) if rng.random() < p]


def random_edges(rng: random.Random, carrier: list, p: float) -> list[tuple]:
    return [(x, y) for x in carrier for y in carrier if rng.random() < p]


def random_instance(rng: random.Random, max_carrier: int = 6, p: float = 0.3,
                    with_succ0: bool = False, with_gg: bool = False) -> PrincipleInstance:
    n = rng.randint(1, max_carrier)
    carrier = list(range(n))
    sub = random_sub(rng, carrier, p)
    succ = random_edges(rng, carrier, p * rng.random())
    succ0 = random_edges(rng, carrier, p * rng.random()) if with_succ0 else None
    gg = random_edges(rng, carrier, p * rng.random()) if with_gg else None
    return PrincipleInstance.from_edges(carrier, succ, sub, succ0, gg)


def decomposition_closure(carrier, sub, succ0) -> tuple[set, set]:
    """Least ``(≻, ≻₀)`` containing ``succ0`` and meeting both decomposition laws.

    ``≻`` collects ``≻₀`` and the edges ``x ⊳ u ⪰ y``; an edge forced by
    law (b) is added to ``≻₀`` as well, which keeps law (a) true.
    """
    below = {x: [u for (a, u) in sub if a == x] for x in carrier}
    gt0, gt = set(succ0), set()
    changed = True
    while changed:
        changed = False
        new0 = {(x, u) for (x, y) in gt0 for u in below[y]} - gt0
        if new0:
            gt0 |= new0
            changed = True
        new = set(gt0)
        for x in carrier:
            for u in below[x]:
                new.add((x, u))
                new |= {(x, y) for (a, y) in gt if a == u}
        new -= gt
        if new:
            gt |= new
            changed = True
    return gt, gt0


def decomposed_instance(rng: random.Random, max_carrier: int = 6, p: float = 0.3) -> PrincipleInstance:
    """An instance whose decomposition laws hold by construction."""
    n = rng.randint(1, max_carrier)
    carrier = list(range(n))
    sub = random_sub(rng, carrier, p + 0.2 * rng.random())
    seed0 = random_edges(rng, carrier, 0.4 * rng.random())
    gt, gt0 = decomposition_closure(carrier, sub, seed0)
    return PrincipleInstance.from_edges(carrier, sorted(gt), sub, sorted(gt0))


def gl_instance(rng: random.Random, max_carrier: int = 6, p: float = 0.3) -> PrincipleInstance:
    """A decomposed instance with ``≫ ⊇ ≻₀`` plus random extra edges."""
    base = decomposed_instance(rng, max_carrier, p)
    extra = random_edges(rng, list(base.carrier), 0.2 * rng.random())
    gg = sorted(set(base.succ0.edges()) | set(extra))
    return PrincipleInstance.from_edges(base.carrier, base.succ.edges(), base.sub.edges(), None, gg)


def random_kernel(rng: random.Random, p: float) -> OpenPredicate:
    """A random bar ``B`` on finite sequences, fixed once drawn."""
    salt = rng.getrandbits(64)
    cache: dict = {}

    def kernel(c: tuple) -> bool:
        if c not in cache:
            cache[c] = random.Random(f"{salt}:{c}").random() < p
        return cache[c]

    return OpenPredicate(kernel)


def random_lasso(rng: random.Random, carrier: list, max_prefix: int = 3, max_cycle: int = 3) -> LazySequence:
    head = [rng.choice(carrier) for _ in range(rng.randint(0, max_prefix))]
    loop = [rng.choice(carrier) for _ in range(rng.randint(1, max_cycle))]
    return LazySequence.from_lasso(head, loop)


# -- campaigns --------------------------------------------------------------

def _record(report: CampaignReport, i: int, detail) -> None:
    report.failures.append({"index": i, "replay": f"{report.seed}:{i}", "detail": detail})


def stp_campaign(cfg: CampaignConfig) -> CampaignReport:
    """Hypotheses of the decomposition check imply that everything is well-founded.

    Draws alternate between decomposed and unconstrained instances; with
    ``min_passing`` set, drawing continues until that many meet the
    hypotheses.
    """
    report = CampaignReport("stp", cfg.seed)
    start = time.perf_counter()
    target = max(cfg.min_passing, 0)
    i = met = 0
    while True:
        if target and report.considered >= target:
            break
        if not target and i >= cfg.count:
            break
        if i >= cfg.max_draws:
            report.stats["gave_up"] = True
            break
        rng = rng_for(cfg.seed, i)
        if i % 4 == 3:
            inst = random_instance(rng, cfg.max_carrier, cfg.edge_prob, with_succ0=True)
        else:
            inst = decomposed_instance(rng, cfg.max_carrier, cfg.edge_prob)
        res = stp_check(inst)
        report.drawn += 1
        if res.hypotheses_hold:
            met += 1
            report.considered += 1
            # independent cross-check of the conclusion on the materialised relation
            oracle_ok, _ = is_wellfounded_finite(inst.succ)
            if res.conclusion and oracle_ok:
                report.passed += 1
            else:
                _record(report, i, {"instance": inst.to_json(), "report": res.to_json()})
        elif not target:
            report.considered += 1
            report.passed += 1
        i += 1
    report.stats["hypotheses_met"] = met
    report.seconds = time.perf_counter() - start
    return report


def gl_campaign(cfg: CampaignConfig) -> CampaignReport:
    """A passing accessibility check implies a passing decomposition check."""
    report = CampaignReport("gl", cfg.seed)
    start = time.perf_counter()
    met = 0
    for i in range(cfg.count):
        rng = rng_for(cfg.seed, i)
        if i % 3 == 2:
            inst = random_instance(rng, cfg.max_carrier, cfg.edge_prob, with_gg=True)
        else:
            inst = gl_instance(rng, cfg.max_carrier, cfg.edge_prob)
        res = gl_check(inst)
        report.drawn += 1
        report.considered += 1
        met += res.hypotheses_hold
        if res.sound:
            report.passed += 1
        else:
            _record(report, i, {"instance": inst.to_json(), "report": res.to_json()})
    report.stats["hypotheses_met"] = met
    report.seconds = time.perf_counter() - start
    return report


def lemma34_campaign(cfg: CampaignConfig, max_carrier: int = 4, max_L: int = 6) -> CampaignReport:
    """Replay the diagonal bookkeeping on random coherent chains."""
    report = CampaignReport("lemma34", cfg.seed)
    start = time.perf_counter()
    totals = ProofStepReport()
    for i in range(cfg.count):
        rng = rng_for(cfg.seed, i)
        carrier = list(range(rng.randint(1, max_carrier)))
        sub = set(random_sub(rng, carrier, 0.5))
        L = rng.randint(2, max_L)
        N = rng.randint(0, L - 1)
        B = random_kernel(rng, rng.choice((0.05, 0.15, 0.3)))
        limit = random_lasso(rng, carrier)
        gamma = LazySequence(lambda n, limit=limit, N=N: limit.prefix(N + n))
        beta = _random_beta(rng, carrier, sub, limit, L)
        single = lemma34_proof_steps(B, lambda a, b: (a, b) in sub, gamma, beta, L)
        for name, k in single.checks.items():
            totals.checks[name] = totals.checks.get(name, 0) + k
        report.drawn += 1
        report.considered += 1
        if single.ok:
            report.passed += 1
        else:
            _record(report, i, {"violations": single.violations})
    report.stats["checks"] = totals.checks
    report.seconds = time.perf_counter() - start
    return report


def _random_beta(rng, carrier, sub, limit: LazySequence, L: int) -> LazySequence:
    """Half the time a sequence lexicographically below ``limit``, else random."""
    options = [(m, y) for m in range(L) for (a, y) in sub if a == limit[m]]
    if options and rng.random() < 0.5:
        m, y = rng.choice(options)
        return splice(limit, m, y, random_lasso(rng, carrier))
    return random_lasso(rng, carrier)


def premise_family(inst: PrincipleInstance, max_prefix: int = 1, max_cycle: int = 2) -> list[LazySequence]:
    """Small lassos plus a bad lasso from every ill-founded element."""
    family = list(lasso_family(inst.carrier, max_prefix, max_cycle))
    for x in inst.carrier:
        bad = bad_sequence_from(inst, x)
        if bad is not None:
            family.append(bad)
    mbs = minimal_bad_sequence(inst, 1)
    if isinstance(mbs, MinimalBad):
        family.append(mbs.sequence)
    return family


def lemma44_campaign(cfg: CampaignConfig, max_carrier: int = 4) -> CampaignReport:
    """Both premise forms hold or fail together, on the same witnesses."""
    report = CampaignReport("lemma44", cfg.seed)
    start = time.perf_counter()
    both_fail = 0
    for i in range(cfg.count):
        rng = rng_for(cfg.seed, i)
        inst = random_instance(rng, max_carrier, cfg.edge_prob)
        cmp = compare_premises(inst, premise_family(inst))
        report.drawn += 1
        report.considered += 1
        both_fail += not cmp.tp_holds
        if cmp.agree:
            report.passed += 1
        else:
            _record(report, i, {"instance": inst.to_json(), "comparison": cmp.to_json()})
    report.stats["premises_fail"] = both_fail
    report.seconds = time.perf_counter() - start
    return report


def mbs_campaign(cfg: CampaignConfig, L: int = 8) -> CampaignReport:
    report = CampaignReport("mbs", cfg.seed)
    start = time.perf_counter()
    bad_count = 0
    for i in range(cfg.count):
        rng = rng_for(cfg.seed, i)
        inst = random_instance(rng, cfg.max_carrier, cfg.edge_prob)
        res = minimal_bad_sequence(inst, L)
        wf, _ = is_wellfounded_finite(inst.succ)
        report.drawn += 1
        report.considered += 1
        if isinstance(res, NoBad):
            ok = wf
        else:
            bad_count += 1
            ok = not wf and verify_minimal_bad(inst, res.prefix) and len(res.prefix) == L
        if ok:
            report.passed += 1
        else:
            _record(report, i, {"instance": inst.to_json(), "result": repr(res)})
    report.stats["non_wellfounded"] = bad_count
    report.seconds = time.perf_counter() - start
    return report


def bi_campaign(cfg: CampaignConfig, L: int = 8) -> CampaignReport:
    report = CampaignReport("bi", cfg.seed)
    start = time.perf_counter()
    wf_count = 0
    flagged = 0
    for i in range(cfg.count):
        rng = rng_for(cfg.seed, i)
        inst = random_instance(rng, cfg.max_carrier, cfg.edge_prob)
        res = bar_induction_check(inst, L)
        report.drawn += 1
        report.considered += 1
        if inst.all_wf():
            wf_count += 1
            ok = res.premises_hold and res.derived_p_empty is True
        else:
            flagged += not res.premises_hold
            witnessed = res.bar_witness is not None or res.step_witness is not None
            ok = not res.premises_hold and res.sound and witnessed
        if ok:
            report.passed += 1
        else:
            _record(report, i, {"instance": inst.to_json(), "report": res.to_json()})
    report.stats.update(wellfounded=wf_count, ill_founded_flagged=flagged)
    report.seconds = time.perf_counter() - start
    return report


CAMPAIGNS: dict[str, Callable[[CampaignConfig], CampaignReport]] = {
    "stp": stp_campaign,
    "gl": gl_campaign,
    "lemma34": lemma34_campaign,
    "lemma44": lemma44_campaign,
    "mbs": mbs_campaign,
    "bi": bi_campaign,
}
