"""Brute-force play of the reporting game, independent of the search formula.

Given a committed decoding strategy, a sender of known type picks reports
that maximize its own averaged payoff against the decoded outcome. Ties are
resolved against the receiver: a true sequence counts as recovered only when
every optimal report decodes to it. These semantics are deliberately computed
by direct scan so they can cross-check the truthful-subset formula.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .model import (
    DEFAULT_ENUMERATION_BUDGET,
    Model,
    Seq,
    enumerate_sequences,
)
from .equilibrium import (
    DEFAULT_SUBSET_BUDGET,
    canonical_strategy,
    receiver_objective,
)

ADVERSARIAL = "adversarial"
LEXICOGRAPHIC = "lexicographic"
RANDOM = "random"
TIE_POLICIES = (ADVERSARIAL, LEXICOGRAPHIC, RANDOM)


@dataclass(frozen=True)
class TableStrategy:
    """Arbitrary decoding map, given explicitly as report -> decoded sequence."""

    n: int
    mapping: dict[Seq, Seq]  # must be total over all length-n sequences

    @cached_property
    def image(self) -> tuple[Seq, ...]:
        return tuple(sorted(set(self.mapping.values())))

    def decode(self, reported: Seq) -> Seq:
        return self.mapping[tuple(reported)]


def table_strategy(model: Model, n: int, mapping: dict[Seq, Seq]) -> TableStrategy:
    seqs = enumerate_sequences(model, n)
    normalized = {tuple(k): tuple(v) for k, v in mapping.items()}
    missing = [s for s in seqs if s not in normalized]
    if missing:
        raise ValueError(f"decoding map is not total: no entry for {missing[0]}")
    if len(normalized) != len(seqs):
        raise ValueError("decoding map has entries outside the sequence space")
    return TableStrategy(n, normalized)


def _image(strategy) -> tuple[Seq, ...]:
    # Any object with an `image` tuple and a `decode` method plays the
    # receiver: ReceiverStrategy and TableStrategy both qualify.
    return strategy.image


@dataclass(frozen=True)
class BestReportOutcome:
    truth: Seq
    type_id: int
    decoded: tuple[Seq, ...]  # decoded outcomes reachable by optimal reports
    utility: Fraction  # the optimal averaged payoff


def best_reports(model: Model, strategy, type_id: int, truth: Seq) -> BestReportOutcome:
    """Decoded outcomes a sender of this type can force with optimal reports.

    Every decoded outcome is reachable by some report, so the scan ranges over
    the strategy's image rather than over raw reports.
    """
    truth = tuple(truth)
    scale, table = model.scaled_utility[type_id]
    best_total: int | None = None
    chosen: list[Seq] = []
    for candidate in _image(strategy):
        total = sum(table[r][t] for r, t in zip(candidate, truth))
        if best_total is None or total > best_total:
            best_total = total
            chosen = [candidate]
        elif total == best_total:
            chosen.append(candidate)
    assert best_total is not None
    return BestReportOutcome(
        truth, type_id, tuple(chosen), Fraction(best_total, len(truth) * scale)
    )


def robust_recovery_set(
    model: Model,
    strategy,
    type_id: int,
    *,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> tuple[Seq, ...]:
    """True sequences recovered no matter how this type breaks payoff ties.

    A sequence qualifies exactly when its unique optimal decoded outcome is
    itself.
    """
    _, table = model.scaled_utility[type_id]
    image = _image(strategy)
    n = len(image[0])
    robust: list[Seq] = []
    for truth in enumerate_sequences(model, n, budget=enum_budget):
        best_total: int | None = None
        winners: list[Seq] = []
        for candidate in image:
            total = sum(table[r][t] for r, t in zip(candidate, truth))
            if best_total is None or total > best_total:
                best_total = total
                winners = [candidate]
            elif total == best_total:
                winners.append(candidate)
        if len(winners) == 1 and winners[0] == truth:
            robust.append(truth)
    return tuple(robust)


def optimistic_recovery_set(
    model: Model,
    strategy,
    type_id: int,
    *,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> tuple[Seq, ...]:
    """Diagnostic only: sequences recoverable if ties broke in the receiver's favor.

    The worst-case scoring used everywhere else never consults this.
    """
    _, table = model.scaled_utility[type_id]
    image = _image(strategy)
    n = len(image[0])
    out: list[Seq] = []
    for truth in enumerate_sequences(model, n, budget=enum_budget):
        outcome = best_reports(model, strategy, type_id, truth)
        if truth in outcome.decoded:
            out.append(truth)
    return tuple(out)


def worst_case_recovery(
    model: Model,
    strategy,
    *,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Fraction:
    """Prior-weighted count of sequences recovered against worst-case senders."""
    value = Fraction(0)
    for type_id, p in enumerate(model.prior):
        value += p * len(
            robust_recovery_set(model, strategy, type_id, enum_budget=enum_budget)
        )
    return value


@dataclass(frozen=True)
class RecoveryReport:
    value: Fraction  # prior-weighted worst-case recovery count
    robust: tuple[tuple[Seq, ...], ...]  # per type id
    multiplicities: tuple[int, ...]  # number of optimal sender strategies per type


def recovery_report(
    model: Model,
    strategy,
    *,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> RecoveryReport:
    """Full worst-case picture: robust sets plus how many best responses exist.

    The multiplicity for a type is the product over true sequences of the
    number of reports achieving the optimum, since best responses choose
    independently at each true sequence.
    """
    n = len(_image(strategy)[0])
    seqs = enumerate_sequences(model, n, budget=enum_budget)
    decoded_by_report = [strategy.decode(y) for y in seqs]
    robust: list[tuple[Seq, ...]] = []
    multiplicities: list[int] = []
    value = Fraction(0)
    for type_id, p in enumerate(model.prior):
        robust_t = robust_recovery_set(model, strategy, type_id, enum_budget=enum_budget)
        robust.append(robust_t)
        value += p * len(robust_t)
        multiplicity = 1
        for truth in seqs:
            options = set(best_reports(model, strategy, type_id, truth).decoded)
            multiplicity *= sum(1 for d in decoded_by_report if d in options)
        multiplicities.append(multiplicity)
    return RecoveryReport(value, tuple(robust), tuple(multiplicities))


@dataclass(frozen=True)
class SimulationOutcome:
    truth: Seq
    policy: str
    options: tuple[Seq, ...]  # optimal decoded outcomes available to the sender
    decoded: Seq  # the outcome the sender settled on
    reported: Seq  # lexicographically least report achieving it
    recovered: bool
    utility: Fraction


def simulate(
    model: Model,
    strategy,
    type_id: int,
    truth: Seq,
    *,
    policy: str = ADVERSARIAL,
    seed: int = 0,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> SimulationOutcome:
    """Play one round: the sender reports optimally, ties broken per policy.

    Policies: adversarial picks an outcome differing from the truth whenever
    one exists (least such), lexicographic picks the least outcome, random
    draws from a generator seeded per (seed, type, truth) so concurrent calls
    replay identically.
    """
    truth = tuple(truth)
    outcome = best_reports(model, strategy, type_id, truth)
    options = outcome.decoded
    if policy == ADVERSARIAL:
        lying = [z for z in options if z != truth]
        decoded = min(lying) if lying else options[0]
    elif policy == LEXICOGRAPHIC:
        decoded = min(options)
    elif policy == RANDOM:
        stream_seed = seed
        for part in (type_id, len(truth), *truth):
            stream_seed = stream_seed * 1000003 + part + 1
        decoded = random.Random(stream_seed).choice(list(options))
    else:
        raise ValueError(f"unknown tie policy {policy!r}")
    reported = None
    n = len(truth)
    if model.num_symbols**n > enum_budget:
        raise ValueError("sequence space too large to locate a report")
    for y in itertools.product(range(model.num_symbols), repeat=n):
        if strategy.decode(y) == decoded:
            reported = y
            break
    assert reported is not None  # decoded is in the image, some report reaches it
    return SimulationOutcome(
        truth=truth,
        policy=policy,
        options=options,
        decoded=decoded,
        reported=reported,
        recovered=decoded == truth,
        utility=outcome.utility,
    )


@dataclass(frozen=True)
class CrossCheckResult:
    n: int
    image_sets_checked: int
    agreed: bool
    mismatches: tuple[tuple[tuple[Seq, ...], Fraction, Fraction], ...]


def cross_check_equivalence(
    model: Model,
    n: int,
    *,
    strategies: str = "all",
    count: int = 50,
    seed: int = 0,
    subset_cap: int = DEFAULT_SUBSET_BUDGET,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> CrossCheckResult:
    """Check that played-out recovery equals the truthful-subset formula.

    For each image set I, the worst-case recovery of the canonical strategy on
    I must equal the receiver objective of I exactly. `strategies` is "all"
    (every nonempty subset, requires a small sequence space) or "random"
    (`count` seeded draws).
    """
    seqs = enumerate_sequences(model, n, budget=enum_budget)
    space = len(seqs)
    image_sets: list[tuple[Seq, ...]] = []
    if strategies == "all":
        if space > subset_cap:
            raise ValueError(
                f"{space} sequences means 2^{space}-1 subsets; use strategies='random'"
            )
        for size in range(1, space + 1):
            image_sets.extend(
                tuple(seqs[v] for v in combo)
                for combo in itertools.combinations(range(space), size)
            )
    elif strategies == "random":
        rng = random.Random(seed)
        for _ in range(count):
            size = rng.randint(1, space)
            image_sets.append(tuple(seqs[v] for v in sorted(rng.sample(range(space), size))))
    else:
        raise ValueError(f"unknown strategies mode {strategies!r}")

    mismatches = []
    for members in image_sets:
        played = worst_case_recovery(
            model, canonical_strategy(members), enum_budget=enum_budget
        )
        formula = receiver_objective(model, members)
        if played != formula:
            mismatches.append((members, played, formula))
    return CrossCheckResult(n, len(image_sets), not mismatches, tuple(mismatches))
