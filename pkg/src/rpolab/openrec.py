"""An interpreter for open recursion over infinite sequences.

    Φ f α = f α (λ n y β. Φ(ᾱn * y * β)  if α(n) ⊳ y  else 0)

``f`` is a realizer: given ``α`` and the recursive oracle it returns an
index, which should be a point where ``α`` stops descending.  Nothing
guarantees that the recursion terminates syntactically, so evaluation
runs under a depth and probe budget and reports the splice path when the
budget runs out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .lab.sequences import LazySequence, splice, shift

__all__ = [
    "Realizer", "PhiBudget", "Frame", "Index", "BudgetExceeded", "Naturals", "phi", "splice", "shift",
    "scan_realizer", "consult_realizer", "constant_realizer", "REALIZERS", "replay_trace",
    "RealizerCampaign", "RealizerReport", "validate_realizer",
]

Phi = Callable[[int, Any, LazySequence], int]
Realizer = Callable[[LazySequence, Phi], int]


@dataclass(frozen=True)
class PhiBudget:
    max_depth: int = 64
    max_probes: int = 10_000

    def __post_init__(self):
        if self.max_depth < 0 or self.max_probes <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class Naturals:
    """``(ℕ, >)`` with ``⊳`` also ``>``."""

    def succ(self, x, y) -> bool:
        return x > y

    def sub(self, x, y) -> bool:
        return x > y


@dataclass
class Frame:
    depth: int
    spliced_at: int | None
    y: Any
    f_result: int | None = None
    parent: int | None = None
    alpha: LazySequence | None = field(default=None, repr=False)
    beta: LazySequence | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {"depth": self.depth, "spliced_at": self.spliced_at, "y": self.y, "f_result": self.f_result,
                "parent": self.parent}


@dataclass
class Index:
    n: int
    trace: list[Frame]
    conclusion_holds: bool | None

    def trace_json(self) -> list[dict]:
        return [fr.to_json() for fr in self.trace]


@dataclass
class BudgetExceeded:
    path: list[tuple[int, Any]]
    trace: list[Frame]
    reason: str

    def trace_json(self) -> list[dict]:
        return [fr.to_json() for fr in self.trace]


class _OutOfBudget(Exception):
    def __init__(self, path, reason):
        self.path = path
        self.reason = reason


class _Probed:
    """Counts distinct positions read through it, against a shared allowance."""

    def __init__(self, seq: LazySequence, counter: list[int], limit: int, path):
        self.seq = seq
        self.counter = counter
        self.limit = limit
        self.path = path
        self.seen: set[int] = set()

    def __call__(self, n: int):
        if n not in self.seen:
            self.seen.add(n)
            self.counter[0] += 1
            if self.counter[0] > self.limit:
                raise _OutOfBudget(self.path, f"more than {self.limit} sequence probes")
        return self.seq[n]


def phi(inst, f: Realizer, alpha: LazySequence, budget: PhiBudget | None = None) -> Index | BudgetExceeded:
    """Evaluate ``Φ f α``; ``inst`` supplies ``succ(x, y)`` and ``sub(x, y)``."""
    budget = budget or PhiBudget()
    trace: list[Frame] = []
    probes = [0]

    def run(seq: LazySequence, depth: int, path: list, frame: Frame) -> int:
        if depth > budget.max_depth:
            raise _OutOfBudget(path, f"recursion deeper than {budget.max_depth}")
        me = len(trace)
        trace.append(frame)
        watched = LazySequence(_Probed(seq, probes, budget.max_probes, path), lasso=seq.lasso)

        def oracle(n: int, y, beta: LazySequence) -> int:
            if inst.sub(watched[n], y):
                child = splice(seq, n, y, beta)
                return run(child, depth + 1, path + [(n, y)],
                           Frame(depth + 1, n, y, parent=me, alpha=child, beta=beta))
            return 0

        frame.f_result = f(watched, oracle)
        return frame.f_result

    try:
        n = run(alpha, 0, [], Frame(0, None, None, alpha=alpha))
    except _OutOfBudget as err:
        return BudgetExceeded(err.path, trace, err.reason)
    holds = not inst.succ(alpha[n], alpha[n + 1]) if isinstance(n, int) and n >= 0 else False
    return Index(n, trace, holds)


# -- reference realizers ----------------------------------------------------

def scan_realizer(inst) -> Realizer:
    """Ignore the oracle and return the first non-descent of ``α``."""

    def f(alpha: LazySequence, oracle: Phi) -> int:
        n = 0
        while inst.succ(alpha[n], alpha[n + 1]):
            n += 1
        return n

    return f


def consult_realizer(inst, choose: Callable[[LazySequence], Any] | None = None,
                     tail: Any = 0) -> Realizer:
    """Ask the oracle once at position 0, then scan ``α`` from its answer.

    ``choose(α)`` picks the spliced element; the default for ``ℕ`` is
    ``α(1) - 1`` floored at 0, followed by the constant ``tail``.
    """
    choose = choose or (lambda alpha: max(alpha[1] - 1, 0))

    def f(alpha: LazySequence, oracle: Phi) -> int:
        m = oracle(0, choose(alpha), LazySequence.constant(tail))
        n = max(m, 0)
        while inst.succ(alpha[n], alpha[n + 1]):
            n += 1
        return n

    return f


def constant_realizer(value: int = 0) -> Realizer:
    """A broken realizer that always answers ``value``."""
    return lambda alpha, oracle: value


REALIZERS = {"scan": scan_realizer, "consult": consult_realizer}


def replay_trace(inst, alpha: LazySequence, trace: list[Frame], window: int = 16) -> list[str]:
    """Check each recorded call against the defining equation; returns problems.

    A child frame's sequence must equal the splice of its parent's at the
    recorded ``(n, y)`` on the first ``window`` positions, the splice must
    have been guarded by ``parent(n) ⊳ y``, and depths must step by one.
    """
    problems = []
    if not trace:
        return ["empty trace"]
    root = trace[0]
    if root.parent is not None or root.depth != 0:
        problems.append("first frame is not the root call")
    if root.alpha is not None and root.alpha.prefix(window) != alpha.prefix(window):
        problems.append("root call was not made on the input sequence")
    for i, fr in enumerate(trace[1:], start=1):
        if fr.parent is None or not 0 <= fr.parent < i:
            problems.append(f"frame {i}: bad parent {fr.parent}")
            continue
        par = trace[fr.parent]
        if fr.depth != par.depth + 1:
            problems.append(f"frame {i}: depth {fr.depth} under parent depth {par.depth}")
        if not inst.sub(par.alpha[fr.spliced_at], fr.y):
            problems.append(f"frame {i}: recursive call without {par.alpha[fr.spliced_at]} ⊳ {fr.y}")
        expected = splice(par.alpha, fr.spliced_at, fr.y, fr.beta)
        if fr.alpha.prefix(window) != expected.prefix(window):
            problems.append(f"frame {i}: argument is not the splice of its parent at {fr.spliced_at}")
    return problems


@dataclass
class RealizerCampaign:
    count: int = 200
    domain: int = 32
    max_prefix: int = 8
    seed: int = 0
    budget: PhiBudget = field(default_factory=PhiBudget)


@dataclass
class RealizerReport:
    runs: int = 0
    violations: list[dict] = field(default_factory=list)
    budget_failures: list[dict] = field(default_factory=list)
    replay_problems: list[dict] = field(default_factory=list)
    max_depth: int = 0

    @property
    def ok(self) -> bool:
        return not (self.violations or self.budget_failures or self.replay_problems)

    def to_json(self) -> dict:
        return {"runs": self.runs, "violations": self.violations, "budget_failures": self.budget_failures,
                "replay_problems": self.replay_problems, "max_depth": self.max_depth, "ok": self.ok}


def random_eventually_constant(rng: random.Random, domain: int, max_prefix: int) -> LazySequence:
    head = [rng.randrange(domain) for _ in range(rng.randint(0, max_prefix))]
    return LazySequence.eventually_constant(head, rng.randrange(domain))


def validate_realizer(inst, f: Realizer, cfg: RealizerCampaign | None = None) -> RealizerReport:
    """Run ``Φ f`` on random eventually-constant sequences and check each answer."""
    cfg = cfg or RealizerCampaign()
    report = RealizerReport()
    for i in range(cfg.count):
        rng = random.Random(f"{cfg.seed}:{i}")
        alpha = random_eventually_constant(rng, cfg.domain, cfg.max_prefix)
        out = phi(inst, f, alpha, cfg.budget)
        report.runs += 1
        label = alpha.describe()
        if isinstance(out, BudgetExceeded):
            report.budget_failures.append({"alpha": label, "path": out.path, "reason": out.reason})
            continue
        report.max_depth = max(report.max_depth, max(fr.depth for fr in out.trace))
        if not out.conclusion_holds:
            report.violations.append({"alpha": label, "index": out.n})
        problems = replay_trace(inst, alpha, out.trace)
        if problems:
            report.replay_problems.append({"alpha": label, "problems": problems})
    return report
