"""Recursive path order with per-symbol liftings.

``t = f(t1..tn) > s`` holds when

* (i)   some ``ti >= s``;
* (ii)  ``s = g(s1..sm)`` with ``f >F g`` and ``t > sj`` for every ``j``;
* (iii) ``s = f(s1..sn)``, ``t > sj`` for every ``j`` and
  ``(t1..tn) >f (s1..sn)`` under the lifting chosen for ``f``.

Variables are minimal and ``>=`` uses syntactic equality.  Dropping
clause (i) gives the decomposition ``>0`` used by the abstract
simplification-order checks.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .relations import Lifting, lex_index, multiset_cover
from .terms import App, Signature, Term, Var, immediate_subterms, parse_term, variables

log = logging.getLogger(__name__)


def _transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    closure = set(pairs)
    while True:
        extra = {(a, d) for a, b in closure for c, d in closure if b == c} - closure
        if not extra:
            return frozenset(closure)
        closure |= extra


@dataclass(frozen=True)
class PrecedenceStatus:
    """A strict order on symbols plus a lifting per symbol."""

    pairs: frozenset[tuple[str, str]]
    status: dict[str, Lifting] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        for f, g in self.pairs:
            if f == g:
                raise ValueError(f"precedence is not irreflexive: {f} > {f}")
        for f, g in self.pairs:
            for g2, h in self.pairs:
                if g == g2 and (f, h) not in self.pairs:
                    raise ValueError(f"precedence is not transitive: {f} > {g} > {h}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]], status: dict | None = None) -> "PrecedenceStatus":
        """Close ``pairs`` transitively; statuses may be given as strings."""
        return cls(_transitive_closure(pairs), _coerce_status(status or {}))

    @classmethod
    def from_chain(cls, chain: Sequence[str], status: dict | None = None) -> "PrecedenceStatus":
        return cls.from_pairs(zip(chain, chain[1:]), status)

    @classmethod
    def from_ranks(cls, ranks: dict[str, int], status: dict | None = None) -> "PrecedenceStatus":
        pairs = frozenset((f, g) for f in ranks for g in ranks if ranks[f] > ranks[g])
        return cls(pairs, _coerce_status(status or {}))

    def gt(self, f: str, g: str) -> bool:
        return (f, g) in self.pairs

    def covers(self) -> list[list[str]]:
        """Hasse diagram of the precedence, sorted."""
        out = []
        for f, g in self.pairs:
            if not any((f, h) in self.pairs and (h, g) in self.pairs for _, h in self.pairs):
                out.append([f, g])
        return sorted(out)


def _coerce_status(status: dict) -> dict[str, Lifting]:
    return {k: v if isinstance(v, Lifting) else Lifting(v) for k, v in status.items()}


@dataclass
class Proof:
    """Derivation of ``lhs > rhs`` (or ``lhs == rhs`` when clause is ``eq``).

    Clause ``i`` has one child for ``t_arg >= s``.  Clauses ``ii`` and
    ``iii`` start with one child ``t > s_j`` per argument of ``s``;
    clause ``iii`` then carries the lifting evidence: one child
    ``t_k > s_k`` for ``lex``, one child per covered pair for ``mul``.
    """

    lhs: Term
    rhs: Term
    clause: str
    children: list["Proof"] = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    def to_trace(self) -> list[dict]:
        out = []

        def walk(p: Proof, depth: int):
            out.append({"depth": depth, "lhs": str(p.lhs), "rhs": str(p.rhs), "clause": p.clause, **p.detail})
            for c in p.children:
                walk(c, depth + 1)

        walk(self, 0)
        return out

    @classmethod
    def from_trace(cls, trace: Sequence[dict], sig: Signature, vars: Iterable[str]) -> "Proof":
        vars = set(vars)
        nodes = []
        for frame in trace:
            detail = {k: v for k, v in frame.items() if k not in ("depth", "lhs", "rhs", "clause")}
            for key in ("kept", "covered"):
                if key in detail:
                    detail[key] = [tuple(p) for p in detail[key]]
            node = cls(parse_term(frame["lhs"], sig, vars), parse_term(frame["rhs"], sig, vars),
                       frame["clause"], [], detail)
            nodes.append((frame["depth"], node))
        if not nodes or nodes[0][0] != 0:
            raise ValueError("trace must start at depth 0")
        stack = [nodes[0]]
        for depth, node in nodes[1:]:
            while stack and stack[-1][0] >= depth:
                stack.pop()
            if not stack or stack[-1][0] != depth - 1:
                raise ValueError("malformed trace depths")
            stack[-1][1].children.append(node)
            stack.append((depth, node))
        return nodes[0][1]


class RpoInstance:
    """A signature with a fixed precedence and status assignment."""

    def __init__(self, signature: Signature, prec: PrecedenceStatus):
        missing = [f for f in signature.names if f not in prec.status]
        if missing:
            # Symbols of arity <= 1 cannot tell lex from mul apart.
            if any(signature.arity(f) > 1 for f in missing):
                raise ValueError(f"no status for {missing}")
            prec = PrecedenceStatus(prec.pairs, {**prec.status, **{f: Lifting.LEX for f in missing}})
        self.signature = signature
        self.prec = prec
        self._cache: dict[tuple[Term, Term], bool] = {}

    def __repr__(self) -> str:
        st = {f: l.value for f, l in self.prec.status.items()}
        return f"RpoInstance(prec={self.prec.covers()}, status={st})"

    def ge(self, t: Term, s: Term) -> bool:
        return t == s or self.gt(t, s)

    def gt(self, t: Term, s: Term) -> bool:
        key = (t, s)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._clause(t, s) is not None
            self._cache[key] = hit
        return hit

    def gt0(self, t: Term, s: Term) -> bool:
        return self.clause_ii(t, s) or self.clause_iii(t, s)

    def _clause(self, t: Term, s: Term) -> str | None:
        if self.clause_i(t, s):
            return "i"
        if self.clause_ii(t, s):
            return "ii"
        if self.clause_iii(t, s):
            return "iii"
        return None

    def clause_i(self, t: Term, s: Term) -> bool:
        return isinstance(t, App) and any(self.ge(ti, s) for ti in t.args)

    def clause_ii(self, t: Term, s: Term) -> bool:
        return (isinstance(t, App) and isinstance(s, App) and self.prec.gt(t.symbol, s.symbol)
                and all(self.gt(t, sj) for sj in s.args))

    def clause_iii(self, t: Term, s: Term) -> bool:
        if not (isinstance(t, App) and isinstance(s, App) and t.symbol == s.symbol):
            return False
        if not all(self.gt(t, sj) for sj in s.args):
            return False
        return self.prec.status[t.symbol].compare(self.gt, t.args, s.args)

    def explain(self, t: Term, s: Term) -> Proof | None:
        """A clause derivation of ``t > s``, or ``None`` if it does not hold."""
        if not self.gt(t, s):
            return None
        assert isinstance(t, App)
        for k, ti in enumerate(t.args):
            if ti == s:
                return Proof(t, s, "i", [Proof(ti, s, "eq")], {"arg": k})
            if self.gt(ti, s):
                return Proof(t, s, "i", [self.explain(ti, s)], {"arg": k})
        assert isinstance(s, App)
        dominance = [self.explain(t, sj) for sj in s.args]
        if self.prec.gt(t.symbol, s.symbol):
            return Proof(t, s, "ii", dominance)
        lifting = self.prec.status[t.symbol]
        if lifting is Lifting.LEX:
            k = lex_index(self.gt, t.args, s.args)
            return Proof(t, s, "iii", dominance + [self.explain(t.args[k], s.args[k])],
                         {"lifting": "lex", "index": k})
        kept, covered = multiset_cover(self.gt, t.args, s.args)
        return Proof(t, s, "iii", dominance + [self.explain(t.args[i], s.args[j]) for i, j in covered],
                     {"lifting": "mul", "kept": kept, "covered": covered})


def rpo_gt(inst: RpoInstance, t: Term, s: Term) -> bool:
    return inst.gt(t, s)


def rpo_decomp_gt0(inst: RpoInstance, t: Term, s: Term) -> bool:
    return inst.gt0(t, s)


def check_proof(inst: RpoInstance, p: Proof) -> bool:
    """Re-validate a derivation clause by clause without calling ``gt``."""
    t, s = p.lhs, p.rhs
    if p.clause == "eq":
        return t == s and not p.children
    if not isinstance(t, App):
        return False
    if p.clause == "i":
        k = p.detail.get("arg")
        return (len(p.children) == 1 and isinstance(k, int) and 0 <= k < len(t.args)
                and p.children[0].lhs == t.args[k] and p.children[0].rhs == s
                and check_proof(inst, p.children[0]))
    if not isinstance(s, App) or len(p.children) < len(s.args):
        return False
    dominance, extra = p.children[:len(s.args)], p.children[len(s.args):]
    for sj, c in zip(s.args, dominance):
        if c.clause == "eq" or c.lhs != t or c.rhs != sj or not check_proof(inst, c):
            return False
    if p.clause == "ii":
        return not extra and inst.prec.gt(t.symbol, s.symbol)
    if p.clause != "iii" or t.symbol != s.symbol:
        return False
    lifting = inst.prec.status[t.symbol]
    if p.detail.get("lifting") != lifting.value:
        return False
    if lifting is Lifting.LEX:
        k = p.detail.get("index")
        if not isinstance(k, int) or not 0 <= k < len(t.args) or t.args[:k] != s.args[:k]:
            return False
        return (len(extra) == 1 and extra[0].lhs == t.args[k] and extra[0].rhs == s.args[k]
                and extra[0].clause != "eq" and check_proof(inst, extra[0]))
    kept = [tuple(x) for x in p.detail.get("kept", [])]
    covered = [tuple(x) for x in p.detail.get("covered", [])]
    kept_x = [i for i, _ in kept]
    kept_y = [j for _, j in kept]
    if len(set(kept_x)) != len(kept_x) or len(set(kept_y)) != len(kept_y):
        return False
    if any(t.args[i] != s.args[j] for i, j in kept):
        return False
    removed = set(range(len(t.args))) - set(kept_x)
    if not removed:
        return False
    if sorted(j for _, j in covered) != sorted(set(range(len(s.args))) - set(kept_y)):
        return False
    if len(extra) != len(covered):
        return False
    for (i, j), c in zip(covered, extra):
        if i not in removed or c.lhs != t.args[i] or c.rhs != s.args[j] or c.clause == "eq":
            return False
        if not check_proof(inst, c):
            return False
    return True


@dataclass
class LawViolation:
    law: str
    x: Term
    y: Term

    def __str__(self) -> str:
        return f"law ({self.law}) fails for {self.x} , {self.y}"


@dataclass
class DecompositionReport:
    pairs_checked: int
    violations: list[LawViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_decomposition_laws(
    inst: RpoInstance,
    universe: Sequence[Term],
    *,
    gt: Callable[[Term, Term], bool] | None = None,
    gt0: Callable[[Term, Term], bool] | None = None,
    sub: Callable[[Term], list[Term]] = immediate_subterms,
) -> DecompositionReport:
    """Check (a) ``x > y -> (exists u <| x, u >= y) or x >0 y`` and
    (b) ``x >0 y -> forall u <| y, x > u`` on every pair of ``universe``."""
    gt = gt or inst.gt
    gt0 = gt0 or inst.gt0
    violations = []
    for x in universe:
        below_x = sub(x)
        for y in universe:
            x_gt0_y = gt0(x, y)
            if gt(x, y) and not x_gt0_y and not any(u == y or gt(u, y) for u in below_x):
                violations.append(LawViolation("a", x, y))
            if x_gt0_y and not all(gt(x, u) for u in sub(y)):
                violations.append(LawViolation("b", x, y))
    return DecompositionReport(len(universe) ** 2, violations)


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"precedence search gave up after {nodes} candidate instances")


@dataclass
class SearchConfig:
    statuses: tuple[Lifting, ...] = (Lifting.LEX, Lifting.MUL)
    budget: int = 200_000


@dataclass
class Certificate:
    status: str  # "YES" | "NO_INSTANCE" | "BUDGET"
    precedence: list[list[str]] = field(default_factory=list)
    statuses: dict[str, str] = field(default_factory=dict)
    oriented: list[dict] = field(default_factory=list)
    reason: str = ""

    def to_json(self) -> dict:
        doc = {"status": self.status, "precedence": self.precedence,
               "statuses": self.statuses, "oriented": self.oriented}
        if self.reason:
            doc["reason"] = self.reason
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Certificate":
        return cls(doc["status"], [list(p) for p in doc.get("precedence", [])],
                   dict(doc.get("statuses", {})), list(doc.get("oriented", [])), doc.get("reason", ""))

    def instance(self, sig: Signature) -> RpoInstance:
        return RpoInstance(sig, PrecedenceStatus.from_pairs(map(tuple, self.precedence), self.statuses))


def certificate_for(inst: RpoInstance, rules: Sequence[tuple[Term, Term]]) -> Certificate:
    oriented = []
    for lhs, rhs in rules:
        proof = inst.explain(lhs, rhs)
        oriented.append({"lhs": str(lhs), "rhs": str(rhs),
                         "clause_trace": proof.to_trace() if proof else []})
    statuses = {f: inst.prec.status[f].value for f in inst.signature.names}
    return Certificate("YES", inst.prec.covers(), statuses, oriented)


def validate_certificate(cert: Certificate, sig: Signature, rules: Sequence[tuple[Term, Term]]) -> bool:
    """Every rule's clause trace rebuilds into a proof that re-checks."""
    if cert.status != "YES" or len(cert.oriented) != len(rules):
        return False
    inst = cert.instance(sig)
    for (lhs, rhs), entry in zip(rules, cert.oriented):
        if entry["lhs"] != str(lhs) or entry["rhs"] != str(rhs) or not entry["clause_trace"]:
            return False
        proof = Proof.from_trace(entry["clause_trace"], sig, variables(lhs) | variables(rhs))
        if proof.lhs != lhs or proof.rhs != rhs or proof.clause == "eq" or not check_proof(inst, proof):
            return False
    return True


def variable_condition_failures(rules: Sequence[tuple[Term, Term]]) -> list[int]:
    """Rules no RPO can orient: variable lhs or rhs variables missing from lhs."""
    return [k for k, (l, r) in enumerate(rules)
            if isinstance(l, Var) or not variables(r) <= variables(l)]


def _weak_orders(names: Sequence[str]) -> Iterator[dict[str, int]]:
    """Rank assignments, fewest ranks first; equal rank means incomparable."""
    n = len(names)
    for k in range(1, n + 1):
        for ranks in itertools.product(range(k), repeat=n):
            if len(set(ranks)) == k:
                yield dict(zip(names, ranks))


def orient_trs(
    sig: Signature,
    rules: Sequence[tuple[Term, Term]],
    cfg: SearchConfig | None = None,
) -> tuple[PrecedenceStatus, Certificate] | None:
    """First instance (in a fixed search order) orienting every rule."""
    cfg = cfg or SearchConfig()
    if variable_condition_failures(rules):
        return None
    names = [f for f in sig.names]
    if not names:
        prec = PrecedenceStatus(frozenset(), {})
        return prec, certificate_for(RpoInstance(sig, prec), rules)
    choosers = [f for f in names if sig.arity(f) > 1]
    nodes = 0
    for ranks in _weak_orders(names):
        for choice in itertools.product(cfg.statuses, repeat=len(choosers)):
            nodes += 1
            if nodes > cfg.budget:
                raise SearchBudgetExceeded(nodes - 1)
            status = {f: cfg.statuses[0] for f in names}
            status.update(zip(choosers, choice))
            prec = PrecedenceStatus.from_ranks(ranks, status)
            inst = RpoInstance(sig, prec)
            if all(inst.gt(l, r) for l, r in rules):
                log.debug("oriented after %d candidates: %r", nodes, inst)
                return prec, certificate_for(inst, rules)
    return None
