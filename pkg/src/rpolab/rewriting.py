"""Rewrite rules, one-step rewriting and bounded normalisation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


from .rpo import Proof, RpoInstance
from .terms import (App, Position, Signature, Term, Var, apply_substitution, enumerate_ground_terms,
                    positions, replace_at, subterm_at, variables)


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __iter__(self):
        return iter((self.lhs, self.rhs))

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs}"


@dataclass(frozen=True)
class Trs:
    signature: Signature
    rules: tuple[Rule, ...]

    def __post_init__(self):
        rules = tuple(r if isinstance(r, Rule) else Rule(*r) for r in self.rules)
        object.__setattr__(self, "rules", rules)
        for k, r in enumerate(rules):
            if isinstance(r.lhs, Var):
                raise ValueError(f"rule {k}: left-hand side is a variable")
            extra = variables(r.rhs) - variables(r.lhs)
            if extra:
                raise ValueError(f"rule {k}: right-hand side variables {sorted(extra)} not in the left-hand side")
            self.signature.check(r.lhs)
            self.signature.check(r.rhs)

    def pairs(self) -> list[tuple[Term, Term]]:
        return [(r.lhs, r.rhs) for r in self.rules]

    def ground_signature(self) -> Signature:
        """The signature, plus a fresh constant ``c`` if it has none."""
        if self.signature.constants():
            return self.signature
        name = "c"
        while name in self.signature:
            name += "'"
        return self.signature.extended((name, 0))


def match(pattern: Term, t: Term, sigma: dict | None = None) -> dict | None:
    sigma = {} if sigma is None else sigma
    stack = [(pattern, t)]
    while stack:
        p, u = stack.pop()
        if isinstance(p, Var):
            bound = sigma.get(p.name)
            if bound is None:
                sigma[p.name] = u
            elif bound != u:
                return None
        elif isinstance(u, App) and p.symbol == u.symbol and len(p.args) == len(u.args):
            stack.extend(zip(p.args, u.args))
        else:
            return None
    return sigma


@dataclass(frozen=True)
class Step:
    result: Term
    rule: int
    position: Position


def rewrite_once(trs: Trs, t: Term) -> list[Step]:
    """Every one-step reduct, outermost-leftmost first, rules in order."""
    out = []
    for pos, u in positions(t):
        for k, rule in enumerate(trs.rules):
            sigma = match(rule.lhs, u)
            if sigma is not None:
                out.append(Step(replace_at(t, pos, apply_substitution(rule.rhs, sigma)), k, pos))
    return out


@dataclass
class DerivationTrace:
    start: Term
    steps: list[Step] = field(default_factory=list)

    @property
    def terms(self) -> list[Term]:
        return [self.start] + [s.result for s in self.steps]

    @property
    def last(self) -> Term:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> list[dict]:
        out = [{"term": str(self.start)}]
        out += [{"term": str(s.result), "rule": s.rule, "position": list(s.position)} for s in self.steps]
        return out


@dataclass
class Normal:
    term: Term
    trace: DerivationTrace


@dataclass
class FuelExhausted:
    trace: DerivationTrace


@dataclass
class LoopFound:
    """``trace.terms[start]`` reappears in the last term at ``position``.

    ``position == ()`` is an exact repetition; a deeper position means the
    term came back inside a context, which also repeats forever.
    """

    trace: DerivationTrace
    start: int = 0
    position: Position = ()


def normalize(trs: Trs, t: Term, fuel: int) -> Normal | FuelExhausted | LoopFound:
    """Follow the first reduct until a normal form, a repeated term, or ``fuel`` steps."""
    trace = DerivationTrace(t)
    seen = {t: 0}
    current = t
    for _ in range(fuel):
        steps = rewrite_once(trs, current)
        if not steps:
            return Normal(current, trace)
        step = steps[0]
        trace.steps.append(step)
        current = step.result
        if current in seen:
            return LoopFound(trace, seen[current], ())
        seen[current] = len(trace.steps)
    if not rewrite_once(trs, current):
        return Normal(current, trace)
    return FuelExhausted(trace)


def find_embedding_loop(trace: DerivationTrace) -> LoopFound | None:
    """Earliest ``i < j`` with ``terms[i]`` occurring inside ``terms[j]``.

    ``s ->+ C[s]`` rewrites forever because rewriting is closed under
    contexts, so this is a sound non-termination witness.
    """
    terms = trace.terms
    for j in range(1, len(terms)):
        occurring = {}
        for pos, u in positions(terms[j]):
            occurring.setdefault(u, pos)
        for i in range(j):
            if terms[i] in occurring:
                cut = DerivationTrace(trace.start, trace.steps[:j])
                return LoopFound(cut, i, occurring[terms[i]])
    return None


def validate_trace(trs: Trs, trace: DerivationTrace) -> bool:
    """Each step is a legal rewrite with the recorded rule at the recorded position."""
    current = trace.start
    for step in trace.steps:
        try:
            redex = subterm_at(current, step.position)
        except IndexError:
            return False
        if not 0 <= step.rule < len(trs.rules):
            return False
        rule = trs.rules[step.rule]
        sigma = match(rule.lhs, redex)
        if sigma is None or replace_at(current, step.position, apply_substitution(rule.rhs, sigma)) != step.result:
            return False
        current = step.result
    return True


def validate_loop(trs: Trs, loop: LoopFound) -> bool:
    if not validate_trace(trs, loop.trace):
        return False
    terms = loop.trace.terms
    if not 0 <= loop.start < len(terms) - 1:
        return False
    try:
        return subterm_at(terms[-1], loop.position) == terms[loop.start]
    except IndexError:
        return False


@dataclass
class RuleCheck:
    rule: Rule
    oriented: bool
    proof: Proof | None


@dataclass
class OrientationReport:
    rules: list[RuleCheck]

    @property
    def verdict(self) -> str:
        return "YES" if all(r.oriented for r in self.rules) else "NO"


def check_rule_orientation(trs: Trs, inst: RpoInstance) -> OrientationReport:
    checks = []
    for rule in trs.rules:
        proof = inst.explain(rule.lhs, rule.rhs)
        checks.append(RuleCheck(rule, proof is not None, proof))
    return OrientationReport(checks)


def _explore(trs: Trs, t: Term, fuel: int) -> LoopFound | FuelExhausted | None:
    """Depth-first search over all reducts for a loop along some path.

    Returns ``None`` when the whole reduct graph below ``t`` was explored
    loop-free within ``fuel`` expanded nodes.
    """
    expanded = 0
    done: set[Term] = set()
    path = [t]
    steps: list[Step] = []
    stack = [iter(rewrite_once(trs, t))]
    while stack:
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            done.add(path.pop())
            if steps:
                steps.pop()
            continue
        u = step.result
        if u in done:
            continue
        steps.append(step)
        path.append(u)
        loop = find_embedding_loop(DerivationTrace(t, list(steps)))
        if loop is not None:
            return loop
        expanded += 1
        if expanded > fuel:
            return FuelExhausted(DerivationTrace(t, list(steps)))
        stack.append(iter(rewrite_once(trs, u)))
    return None


@dataclass
class TerminationReport:
    depth: int
    fuel: int
    counts: Counter
    loops: list[tuple[str, LoopFound]]
    exhausted: list[str]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "fuel": self.fuel,
            "counts": {k: self.counts.get(k, 0) for k in ("normal", "loop", "fuel")},
            "loops": [{"term": t, "trace": l.trace.to_json(), "start": l.start, "position": list(l.position)}
                      for t, l in self.loops],
            "fuel_exhausted": self.exhausted,
        }


def empirical_termination(trs: Trs, depth: int, fuel: int, *, exhaustive: bool = False) -> TerminationReport:
    """Normalise every ground term up to ``depth`` and tally the outcomes.

    Each derivation is also scanned for a term recurring inside a later
    term.  With ``exhaustive`` every reduct is explored, not only the
    outermost-leftmost one.
    """
    counts: Counter = Counter()
    loops = []
    exhausted = []
    for t in enumerate_ground_terms(trs.ground_signature(), depth):
        outcome = normalize(trs, t, fuel)
        if isinstance(outcome, FuelExhausted):
            outcome = find_embedding_loop(outcome.trace) or outcome
        if exhaustive and not isinstance(outcome, LoopFound):
            found = _explore(trs, t, fuel)
            if isinstance(found, LoopFound):
                outcome = found
        if isinstance(outcome, Normal):
            counts["normal"] += 1
        elif isinstance(outcome, LoopFound):
            counts["loop"] += 1
            loops.append((str(t), outcome))
        else:
            counts["fuel"] += 1
            exhausted.append(str(t))
    loops.sort(key=lambda p: p[0])
    exhausted.sort()
    return TerminationReport(depth, fuel, counts, loops, exhausted)
