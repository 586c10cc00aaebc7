"""Executable forms of the open-induction reduction and the premise translation.

``lemma34_transform`` builds the instance on finite sequences used to
derive open induction from the termination principle; ``diagonal``
and ``lemma34_proof_steps`` replay the bookkeeping of that argument on a
concrete chain.  ``lemma44_translate`` turns a per-sequence check of one
termination premise into a check of the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..relations import RelationSpec
from .instance import (PrincipleInstance, Unknown, Witness, descent_tails, emin_check, lex_below,
                       min_check, swf)
from .sequences import LazySequence, OpenPredicate, extend_with, is_prefix, splice


def transformed_succ(B: OpenPredicate, L: int) -> Callable[[tuple, tuple], bool]:
    """``a ≻ b :≡ |b| = |a|+1 ∧ a ◀ b ∧ ∀c ◀ b ¬B(c)``, with ``|b| <= L``."""

    def holds(a: tuple, b: tuple) -> bool:
        if len(b) != len(a) + 1 or len(b) > L or not is_prefix(a, b):
            return False
        return not any(B.kernel(tuple(b[:k])) for k in range(len(b) + 1))

    return holds


def transformed_sub(sub: Callable) -> Callable[[tuple, tuple], bool]:
    """``a ⊳* b :≡ |b| >= |a| ∧ ∃i<|a| (prefixes of length i agree ∧ a_i ⊳ b_i)``."""

    def holds(a: tuple, b: tuple) -> bool:
        if len(b) < len(a):
            return False
        for i in range(len(a)):
            if sub(a[i], b[i]):
                return True
            if a[i] != b[i]:
                return False
        return False

    return holds


def lemma34_transform(B: OpenPredicate, sub: RelationSpec, L: int, *, validate: bool = False) -> PrincipleInstance:
    """The instance on sequences of length ``<= L`` over ``sub``'s carrier.

    Length-``L`` sequences have no ``≻``-successor (truncation).
    """
    if L < 2:
        raise ValueError("sequence length cap L must be at least 2")
    base = sub._require_carrier()
    carrier = tuple(seq for k in range(L + 1) for seq in itertools.product(base, repeat=k))
    succ = RelationSpec(transformed_succ(B, L), carrier, "finite", "≻*")
    star = RelationSpec(transformed_sub(sub), carrier, "finite", "⊳*")
    return PrincipleInstance(carrier, succ, star, validate=validate)


class DiagonalError(ValueError):
    def __init__(self, index: int, reason: str):
        self.index = index
        super().__init__(f"chain is not coherent at index {index}: {reason}")


def _check_link(gamma: LazySequence, N: int, k: int) -> None:
    if len(gamma[k]) != N + k:
        raise DiagonalError(k, f"|γ_{k}| = {len(gamma[k])}, expected {N + k}")
    if k > 0 and not is_prefix(gamma[k - 1], gamma[k]):
        raise DiagonalError(k - 1, f"γ_{k - 1} is not a prefix of γ_{k}")


def diagonal(gamma: LazySequence, N: int | None = None) -> LazySequence:
    """``γ̃(n) = γ_0[n]`` for ``n < N`` and ``γ̃(N+m) = γ_{m+1}[N+m]``.

    Coherence (``|γ_n| = N+n`` and ``γ_n ◀ γ_{n+1}``) is checked up to
    the chain element a probe needs.
    """
    if N is None:
        N = len(gamma[0])
    checked = [-1]

    def ensure(upto: int):
        for k in range(checked[0] + 1, upto + 1):
            _check_link(gamma, N, k)
            checked[0] = k

    def base(n: int):
        if n < N:
            ensure(0)
            return gamma[0][n]
        m = n - N
        ensure(m + 1)
        return gamma[m + 1][N + m]

    return LazySequence(base, label="γ̃")


def lex_split(sub: Callable, alpha: LazySequence, beta: LazySequence, probes: int) -> int | None:
    """The ``m < probes`` with ``ᾱm = β̄m`` and ``α(m) ⊳ β(m)``, if any."""
    for m in range(probes):
        if sub(alpha[m], beta[m]):
            return m
        if alpha[m] != beta[m]:
            return None
    return None


@dataclass
class ProofStepReport:
    checks: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, str]] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, 0) + 1
        if not ok:
            self.violations.append((name, detail))

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma34_proof_steps(B: OpenPredicate, sub: Callable, gamma: LazySequence, beta: LazySequence,
                        L: int, report: ProofStepReport | None = None) -> ProofStepReport:
    """Replay each step of the diagonal argument on a coherent chain ``γ``.

    Only positions whose sequences stay within length ``L`` are probed.
    """
    report = report or ProofStepReport()
    succ = transformed_succ(B, L)
    star = transformed_sub(sub)
    N = len(gamma[0])
    M = L - N  # γ_M is the last chain element of length <= L
    tilde = diagonal(gamma, N)

    for m in range(M + 1):
        report.record("length", len(gamma[m]) == N + m, f"|γ_{m}| = {len(gamma[m])}")
    delta = LazySequence(lambda n: beta.prefix(N + n), label="δ")
    for n in range(M + 1):
        report.record("delta_length", len(gamma[n]) == len(delta[n]), f"n={n}")

    m0 = lex_split(sub, tilde, beta, L)
    if m0 is not None:
        k = 0 if m0 < N else m0 - N + 1
        ok = (k <= M and all(gamma[j] == delta[j] for j in range(k)) and star(gamma[k], delta[k]))
        report.record("lex_transfer", ok, f"γ̃ ⊳lex β at {m0}, expected γ ⊳*lex δ at {k}")

    for n in range(M):
        if not succ(delta[n], delta[n + 1]):
            found = any(B.kernel(beta.prefix(k)) for k in range(N + n + 2))
            report.record("delta_bar", found, f"δ_{n} ⊁ δ_{n + 1} but B never holds on β̄k, k <= {N + n + 1}")

    for n in range(L):
        if not B.kernel(tilde.prefix(n)):
            continue
        j = max(n - N, 0)
        if j + 1 > M:
            continue
        chain_ok = is_prefix(tilde.prefix(n), gamma[j]) and is_prefix(gamma[j], gamma[j + 1])
        report.record("end_game", chain_ok and not succ(gamma[j], gamma[j + 1]),
                      f"B(γ̃ ↾ {n}) but γ_{j} ≻ γ_{j + 1}")
    return report


# -- premise translation ----------------------------------------------------

@dataclass
class AdapterResult:
    direction: str
    tp: bool
    etp: bool
    derived: bool
    error: str = ""

    @property
    def agree(self) -> bool:
        return self.tp == self.etp and not self.error


def tp_at(inst: PrincipleInstance, alpha: LazySequence) -> bool:
    """``MIN(α) → sWF(α)``."""
    return not min_check(inst, alpha) or isinstance(swf(inst, alpha), Witness)


def etp_at(inst: PrincipleInstance, alpha: LazySequence) -> bool:
    """``eMIN(α) → sWF(α)``."""
    return not emin_check(inst, alpha) or isinstance(swf(inst, alpha), Witness)


def _min_from_emin(inst: PrincipleInstance, alpha: LazySequence) -> str:
    """Derive MIN(α) from eMIN(α) case by case; returns an error or ``""``."""
    for n, y, beta in lex_below(inst, alpha):
        if n > 0 and not inst.succ(alpha[n - 1], y):
            # β(n-1) = α(n-1) ⊁ y = β(n)
            out = swf(inst, beta)
            if not (isinstance(out, Witness) and out.n <= n - 1):
                return f"case split n={n}: expected a non-descent by index {n - 1}"
        else:
            if not inst.is_wf(y):
                return f"eMIN(α) should give eWF({y!r})"
            if isinstance(swf(inst, beta), Unknown):
                return f"eWF({y!r}) but the spliced sequence at {n} descends forever"
    return ""


def _emin_from_min(inst: PrincipleInstance, alpha: LazySequence) -> str:
    """With ¬sWF(α), derive eMIN(α) from MIN(α) via ``ᾱn * β``."""
    for n in range(alpha.horizon() + 1):
        for y in inst.below(alpha[n]):
            if n > 0 and not inst.succ(alpha[n - 1], y):
                continue
            for tail in descent_tails(inst, y):
                beta = splice(LazySequence.constant(y), 0, y, tail)
                spliced = extend_with(alpha.prefix(n), beta)
                if isinstance(swf(inst, spliced), Unknown):
                    return f"MIN(α) should make ᾱ{n} * β well-founded"
                if isinstance(swf(inst, beta), Unknown):
                    return f"ᾱ{n} descends into {y!r}, so β must be well-founded"
            if not inst.is_wf(y):
                return f"derived eWF({y!r}) is false"
    return ""


def lemma44_translate(direction: str, inst: PrincipleInstance) -> Callable[[LazySequence], AdapterResult]:
    """Adapter evaluating one premise at ``α`` through the other.

    ``"A"``: from a ``MIN → sWF`` checker to ``eMIN → sWF``, deriving
    MIN(α) from eMIN(α).  ``"B"``: the converse, deriving eMIN(α) from
    MIN(α) when α descends forever.
    """
    if direction not in ("A", "B"):
        raise ValueError("direction must be 'A' or 'B'")

    def adapter_a(alpha: LazySequence) -> AdapterResult:
        tp = tp_at(inst, alpha)
        if not emin_check(inst, alpha):
            return AdapterResult("A", tp, True, False)
        error = _min_from_emin(inst, alpha)
        if not error and not min_check(inst, alpha):
            error = "derived MIN(α) disagrees with the direct check"
        # MIN(α) holds, so the TP checker's answer is sWF(α)
        return AdapterResult("A", tp, isinstance(swf(inst, alpha), Witness), True, error)

    def adapter_b(alpha: LazySequence) -> AdapterResult:
        etp = etp_at(inst, alpha)
        if not min_check(inst, alpha) or isinstance(swf(inst, alpha), Witness):
            return AdapterResult("B", True, etp, False)
        error = _emin_from_min(inst, alpha)
        if not error and not emin_check(inst, alpha):
            error = "derived eMIN(α) disagrees with the direct check"
        # eMIN(α) and ¬sWF(α): the eTP checker rejects α, and so does TP
        return AdapterResult("B", False, etp, True, error)

    return adapter_a if direction == "A" else adapter_b


@dataclass
class PremiseComparison:
    sequences: int
    tp_witnesses: list[str]
    etp_witnesses: list[str]
    adapter_errors: list[str]

    @property
    def tp_holds(self) -> bool:
        return not self.tp_witnesses

    @property
    def etp_holds(self) -> bool:
        return not self.etp_witnesses

    @property
    def agree(self) -> bool:
        return self.tp_witnesses == self.etp_witnesses and not self.adapter_errors

    def to_json(self) -> dict:
        return {"sequences": self.sequences, "tp_premise": self.tp_holds, "etp_premise": self.etp_holds,
                "tp_witnesses": self.tp_witnesses, "etp_witnesses": self.etp_witnesses,
                "adapter_errors": self.adapter_errors, "agree": self.agree}


def compare_premises(inst: PrincipleInstance, family: Iterable[LazySequence]) -> PremiseComparison:
    """Evaluate both premises and both adapters on every sequence of ``family``."""
    via_a = lemma44_translate("A", inst)
    via_b = lemma44_translate("B", inst)
    tp_w, etp_w, errors = [], [], []
    count = 0
    for alpha in family:
        count += 1
        label = alpha.describe()
        tp, etp = tp_at(inst, alpha), etp_at(inst, alpha)
        if not tp:
            tp_w.append(label)
        if not etp:
            etp_w.append(label)
        for res in (via_a(alpha), via_b(alpha)):
            if res.error:
                errors.append(f"{res.direction} {label}: {res.error}")
            elif res.tp != tp or res.etp != etp:
                errors.append(f"{res.direction} {label}: adapter says tp={res.tp} etp={res.etp}, "
                              f"direct tp={tp} etp={etp}")
    return PremiseComparison(count, tp_w, etp_w, errors)
