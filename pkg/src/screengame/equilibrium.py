"""Optimal questionnaire search for the receiver.

A questionnaire is a nonempty set I of length-n sequences the receiver is
willing to certify as-is; every other report is decoded to a fallback member.
For each sender type, the truthful subset of I is where truth-telling strictly
beats reporting any other member. The receiver's objective is the prior
weighted size of those subsets, and an optimal questionnaire maximizes it over
all nonempty I.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .model import (
    BudgetExceededError,
    DEFAULT_ENUMERATION_BUDGET,
    HONEST,
    Model,
    Seq,
    classify_type,
    enumerate_sequences,
)

DEFAULT_SUBSET_BUDGET = 20  # max base sequences for exhaustive search (2^20 subsets)
DEFAULT_REPORT_CAP = 16  # maximizers listed in a result
DEFAULT_PATIENCE = 2  # zero-gain growth steps the heuristic tolerates


def _normalize_members(members) -> tuple[Seq, ...]:
    mem = tuple(sorted(set(map(tuple, members))))
    if not mem:
        raise ValueError("questionnaire must be nonempty")
    n = len(mem[0])
    if n < 1 or any(len(x) != n for x in mem):
        raise ValueError("questionnaire members must share one length >= 1")
    return mem


def truthful_subset(model: Model, members, type_id: int) -> tuple[Seq, ...]:
    """Members on which this type strictly prefers truth over every other member.

    Singletons have no competing member, so they are kept outright. Honest
    types keep everything: per-letter strict wins stay strict under sums.
    """
    mem = _normalize_members(members)
    if classify_type(model, type_id) == HONEST:
        return mem
    _, table = model.scaled_utility[type_id]
    out = []
    for x in mem:
        own = sum(table[s][s] for s in x)
        for y in mem:
            if y != x and sum(table[r][t] for r, t in zip(y, x)) >= own:
                break
        else:
            out.append(x)
    return tuple(out)


def receiver_objective(model: Model, members) -> Fraction:
    """Prior-weighted count of members every sender type reports truthfully."""
    mem = _normalize_members(members)
    total = Fraction(0)
    for type_id, p in enumerate(model.prior):
        total += p * len(truthful_subset(model, mem, type_id))
    return total


@dataclass(frozen=True)
class Questionnaire:
    """One evaluated questionnaire with its per-type truthful subsets."""

    n: int
    members: tuple[Seq, ...]  # ascending
    truthful: tuple[tuple[Seq, ...], ...]  # per type id
    objective: Fraction


def evaluate_questionnaire(model: Model, members) -> Questionnaire:
    mem = _normalize_members(members)
    parts = tuple(truthful_subset(model, mem, t) for t in range(model.num_types))
    objective = Fraction(0)
    for p, part in zip(model.prior, parts):
        objective += p * len(part)
    return Questionnaire(len(mem[0]), mem, parts, objective)


@dataclass(frozen=True)
class ReceiverStrategy:
    """Decode reports inside `members` as themselves, everything else to `fallback`."""

    n: int
    members: tuple[Seq, ...]  # ascending; the image of the decoding map
    fallback: Seq

    def decode(self, reported: Seq) -> Seq:
        reported = tuple(reported)
        return reported if reported in self._member_set else self.fallback

    @property
    def image(self) -> tuple[Seq, ...]:
        return self.members

    @cached_property
    def _member_set(self) -> frozenset[Seq]:
        return frozenset(self.members)


def canonical_strategy(members, fallback: Seq | None = None) -> ReceiverStrategy:
    """Identity on `members`, constant `fallback` elsewhere.

    The fallback defaults to the lexicographically smallest member; any member
    works, the worst-case recovery value does not depend on the choice.
    """
    mem = _normalize_members(members)
    if fallback is None:
        fallback = mem[0]
    else:
        fallback = tuple(fallback)
        if fallback not in mem:
            raise ValueError("fallback must be a questionnaire member")
    return ReceiverStrategy(len(mem[0]), mem, fallback)


def reduce_closure(model: Model, members) -> tuple[Seq, ...]:
    """Shrink a questionnaire to a fixpoint of the truthful-subset union.

    Repeatedly replaces I by the union over types of its truthful subsets.
    Restricting to that union can only grow each truthful subset, so the
    objective weakly improves at every step; this is checked at runtime, not
    assumed. Stops at a fixpoint, or returns the last nonempty iterate when
    the union comes up empty.
    """
    current = _normalize_members(members)
    current_objective = receiver_objective(model, current)
    while True:
        merged: set[Seq] = set()
        for type_id in range(model.num_types):
            merged.update(truthful_subset(model, current, type_id))
        reduced = tuple(sorted(merged))
        if not reduced or reduced == current:
            return current
        reduced_objective = receiver_objective(model, reduced)
        if reduced_objective < current_objective:
            raise RuntimeError(
                "closure reduction decreased the objective "
                f"({current_objective} -> {reduced_objective}); "
                "this contradicts the dominance argument"
            )
        current, current_objective = reduced, reduced_objective


@dataclass(frozen=True)
class EquilibriumResult:
    n: int
    mode: str  # "exact" or "heuristic"
    certified: bool  # True when the optimum is proven, not just attained
    optimum: Fraction
    maximizers: tuple[tuple[Seq, ...], ...]  # lexicographic, capped
    maximizer_count: int  # total found, before capping
    designated: Questionnaire  # lexicographically least maximizer, evaluated
    subsets_examined: int
    subsets_pruned: int


class _SubsetTables:
    """Integer payoff tables over vertex ids for one (model, n) search."""

    def __init__(self, model: Model, n: int, enum_budget: int):
        self.model = model
        self.seqs = enumerate_sequences(model, n, budget=enum_budget)
        self.count = len(self.seqs)
        self.honest = [classify_type(model, t) == HONEST for t in range(model.num_types)]
        self.diag: list[list[int] | None] = []
        self.cross: list[list[list[int]] | None] = []  # [type][reported id][truth id]
        for type_id in range(model.num_types):
            if self.honest[type_id]:
                self.diag.append(None)
                self.cross.append(None)
                continue
            _, table = model.scaled_utility[type_id]
            self.diag.append([sum(table[s][s] for s in seq) for seq in self.seqs])
            self.cross.append(
                [
                    [sum(table[r][t] for r, t in zip(rep, tru)) for tru in self.seqs]
                    for rep in self.seqs
                ]
            )
        self._objective_cache: dict[tuple[int, ...], Fraction] = {}

    def truthful_count(self, type_id: int, subset: tuple[int, ...]) -> int:
        if self.honest[type_id]:
            return len(subset)
        diag = self.diag[type_id]
        cross = self.cross[type_id]
        count = 0
        for x in subset:
            own = diag[x]
            for y in subset:
                if y != x and cross[y][x] >= own:
                    break
            else:
                count += 1
        return count

    def objective(self, subset: tuple[int, ...]) -> Fraction:
        counts = tuple(
            self.truthful_count(t, subset) for t in range(self.model.num_types)
        )
        cached = self._objective_cache.get(counts)
        if cached is None:
            cached = sum(
                (p * c for p, c in zip(self.model.prior, counts)), Fraction(0)
            )
            self._objective_cache[counts] = cached
        return cached


def solve_exact(
    model: Model,
    n: int,
    *,
    prune: bool = True,
    report_cap: int = DEFAULT_REPORT_CAP,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> EquilibriumResult:
    """Exhaustive questionnaire search over all nonempty sets of sequences.

    Enumerates subsets largest first. With pruning on, a whole size class is
    skipped once no set of that size can reach the incumbent: the objective of
    I never exceeds |I| because every truthful subset lives inside I. The
    incumbent is seeded from the closure reduction of the full space. Both
    rules only discard sets that are provably not maximizers, so the optimum
    and the complete maximizer list match the unpruned search exactly.
    """
    tables = _SubsetTables(model, n, enum_budget)
    count = tables.count
    if count > subset_budget:
        raise BudgetExceededError("questionnaire search", count, subset_budget)

    best: Fraction | None = None
    maximizers: list[tuple[int, ...]] = []
    examined = 0
    pruned = 0

    if prune:
        seed_members = reduce_closure(model, tables.seqs)
        best = receiver_objective(model, seed_members)

    for size in range(count, 0, -1):
        if prune and best is not None and size < best:
            pruned += sum(math.comb(count, k) for k in range(1, size + 1))
            break
        for subset in itertools.combinations(range(count), size):
            examined += 1
            value = tables.objective(subset)
            if best is None or value > best:
                best = value
                maximizers = [subset]
            elif value == best:
                maximizers.append(subset)

    if not maximizers:
        # The closure seed was already optimal and pruning skipped everything
        # else; recover its id form so the result is populated. Cannot happen
        # with size-based pruning (the seed's own size class is never pruned),
        # kept as a guard.
        raise RuntimeError("search ended with no maximizer recorded")

    maximizers.sort()
    assert best is not None
    member_sets = tuple(
        tuple(tables.seqs[v] for v in ids) for ids in maximizers[:report_cap]
    )
    designated = evaluate_questionnaire(model, member_sets[0])
    return EquilibriumResult(
        n=n,
        mode="exact",
        certified=True,
        optimum=best,
        maximizers=member_sets,
        maximizer_count=len(maximizers),
        designated=designated,
        subsets_examined=examined,
        subsets_pruned=pruned,
    )


def solve_heuristic(
    model: Model,
    n: int,
    *,
    seed: int = 0,
    patience: int = DEFAULT_PATIENCE,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> EquilibriumResult:
    """Greedy questionnaire growth with one-element local search.

    Starts from a seeded random singleton, repeatedly adds the best candidate
    (tolerating `patience` zero-gain additions), then improves by single drops
    and swaps until none helps. Deterministic for a fixed seed. The result is
    not certified optimal, but it is never worse than the best singleton,
    whose objective is exactly 1.
    """
    seqs = enumerate_sequences(model, n, budget=enum_budget)
    rng = random.Random(seed)
    evaluations = 0

    def objective(ids: tuple[int, ...]) -> Fraction:
        nonlocal evaluations
        evaluations += 1
        return receiver_objective(model, [seqs[v] for v in ids])

    start = rng.randrange(len(seqs))
    current: tuple[int, ...] = (start,)
    current_value = objective(current)
    grace = patience

    while len(current) < len(seqs):
        candidates = [v for v in range(len(seqs)) if v not in current]
        best_gain: Fraction | None = None
        best_pick: tuple[int, ...] | None = None
        for v in candidates:
            trial = tuple(sorted(current + (v,)))
            gain = objective(trial) - current_value
            if best_gain is None or gain > best_gain:
                best_gain, best_pick = gain, trial
        assert best_gain is not None and best_pick is not None
        if best_gain > 0:
            current, current_value = best_pick, current_value + best_gain
            grace = patience
        elif best_gain == 0 and grace > 0:
            current, grace = best_pick, grace - 1
        else:
            break

    improved = True
    while improved:
        improved = False
        best_value = current_value
        best_next: tuple[int, ...] | None = None
        if len(current) > 1:
            for drop in current:
                trial = tuple(v for v in current if v != drop)
                value = objective(trial)
                if value > best_value:
                    best_value, best_next = value, trial
        outside = [v for v in range(len(seqs)) if v not in current]
        for drop in current:
            kept = tuple(v for v in current if v != drop)
            for add in outside:
                trial = tuple(sorted(kept + (add,)))
                value = objective(trial)
                if value > best_value:
                    best_value, best_next = value, trial
        if best_next is not None:
            current, current_value = best_next, best_value
            improved = True

    members = tuple(seqs[v] for v in current)
    designated = evaluate_questionnaire(model, members)
    return EquilibriumResult(
        n=n,
        mode="heuristic",
        certified=False,
        optimum=current_value,
        maximizers=(designated.members,),
        maximizer_count=1,
        designated=designated,
        subsets_examined=evaluations,
        subsets_pruned=0,
    )
