"""Finitary rule systems over a finite carrier and their least closures.

A rule is a finite premise set together with a conclusion drawn from
the same carrier. A subset is closed when it contains the conclusion
of every rule whose premises it contains; the closure of a seed is the
least closed superset of the seed. On a finite carrier the closure is
reached after at most one stage per element.

closure() uses premise counting with per-element watcher lists, so a
rule is revisited only when one of its outstanding premises arrives.
naive_closure_oracle() recomputes the full one-step consequence set
until it stabilizes; it exists to cross-check the engine and is kept
deliberately simple.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field

from .finite import Carrier, Subset


@dataclass(frozen=True)
class Rule:
    """Finitely many premises and one conclusion over a shared carrier."""

    premises: Subset
    conclusion: str

    def __post_init__(self) -> None:
        self.premises.of.index(self.conclusion)  # conclusion must live in the carrier

    def __str__(self) -> str:
        return f"{self.premises} -> {self.conclusion}"


@dataclass(frozen=True)
class InductiveDefinition:
    """An ordered list of rules over one carrier.

    Duplicate rules add nothing to any closure; they are dropped at
    construction with a warning so that downstream indexing by rule
    position stays unambiguous.
    """

    carrier: Carrier
    rules: tuple[Rule, ...]
    _conclusion_index: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        kept: list[Rule] = []
        seen: set[tuple[int, str]] = set()
        for rule in self.rules:
            if rule.premises.of != self.carrier:
                raise ValueError(f"rule {rule} ranges over a different carrier")
            key = (rule.premises.bits, rule.conclusion)
            if key in seen:
                warnings.warn(f"dropping duplicate rule {rule}", stacklevel=2)
                continue
            seen.add(key)
            kept.append(rule)
        object.__setattr__(self, "rules", tuple(kept))
        object.__setattr__(
            self,
            "_conclusion_index",
            tuple(self.carrier.index(r.conclusion) for r in kept),
        )

    def __str__(self) -> str:
        body = "; ".join(str(r) for r in self.rules)
        return f"<{len(self.rules)} rules over {self.carrier}: {body}>"


def _check_seed(phi: InductiveDefinition, u: Subset) -> None:
    if u.of != phi.carrier:
        raise ValueError("seed ranges over a different carrier than the rules")


def is_phi_closed(phi: InductiveDefinition, a: Subset) -> bool:
    """True when a contains the conclusion of every rule it satisfies."""
    _check_seed(phi, a)
    for rule, ci in zip(phi.rules, phi._conclusion_index):
        if rule.premises.bits & ~a.bits == 0 and not (a.bits >> ci) & 1:
            return False
    return True


def closure(phi: InductiveDefinition, u: Subset) -> Subset:
    """The least subset containing u that is closed under the rules.

    Counting evaluation: each rule tracks how many of its premises are
    still missing; an element's arrival decrements exactly the rules
    watching it.
    """
    _check_seed(phi, u)
    current = u.bits
    missing: list[int] = []
    watchers: list[list[int]] = [[] for _ in range(len(phi.carrier))]
    queue: deque[int] = deque()

    for ri, rule in enumerate(phi.rules):
        rem = rule.premises.bits & ~current
        missing.append(rem.bit_count())
        if rem == 0:
            ci = phi._conclusion_index[ri]
            if not (current >> ci) & 1:
                current |= 1 << ci
                queue.append(ci)
        else:
            while rem:
                low = (rem & -rem).bit_length() - 1
                watchers[low].append(ri)
                rem &= rem - 1

    while queue:
        arrived = queue.popleft()
        for ri in watchers[arrived]:
            missing[ri] -= 1
            if missing[ri] == 0:
                ci = phi._conclusion_index[ri]
                if not (current >> ci) & 1:
                    current |= 1 << ci
                    queue.append(ci)
    return Subset(phi.carrier, current)


def closure_stages(phi: InductiveDefinition, u: Subset) -> list[Subset]:
    """The stage chain from u to the first fixpoint, inclusive.

    stages[0] is u; each later stage adds every conclusion whose
    premises the previous stage contains. The last stage equals
    closure(phi, u), and the list has at most |carrier| + 1 entries.
    """
    _check_seed(phi, u)
    stages = [u]
    while True:
        cur = stages[-1].bits
        nxt = cur
        for ri, rule in enumerate(phi.rules):
            if rule.premises.bits & ~cur == 0:
                nxt |= 1 << phi._conclusion_index[ri]
        if nxt == cur:
            return stages
        stages.append(Subset(phi.carrier, nxt))


def naive_closure_oracle(phi: InductiveDefinition, u: Subset) -> Subset:
    """Reference closure: iterate the one-step consequence set to a fixpoint."""
    _check_seed(phi, u)
    current = set(u.names())
    while True:
        step = {
            rule.conclusion
            for rule in phi.rules
            if set(rule.premises.names()) <= current
        }
        if step <= current:
            return Subset.from_names(phi.carrier, current)
        current |= step
