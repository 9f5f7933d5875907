"""Per-letter extraction rates and their independence-number bounds.

The rate of a length-n strategy is the n-th root of its worst-case recovery
value. Independent sets sandwich it: a set independent in every type's graph
is reported truthfully by everyone, while no type can contribute more than
the independence number of its own graph. All comparisons are made on the
exact values; roots are taken only for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import (
    BudgetExceededError,
    DEFAULT_ENUMERATION_BUDGET,
    Model,
)
from .graph import (
    DEFAULT_EXACT_MIS_BUDGET,
    SenderGraph,
    build_sender_graph,
    max_independent_set,
    union_graph,
)
from .equilibrium import (
    DEFAULT_SUBSET_BUDGET,
    solve_exact,
    solve_heuristic,
)


def extraction_rate(value: Fraction | int, n: int) -> float:
    """Per-letter rate: the real n-th root, taken at the last moment."""
    if n < 1:
        raise ValueError(f"horizon must be >= 1, got {n}")
    if value < 0:
        raise ValueError("recovery value cannot be negative")
    return float(value) ** (1.0 / n)


@dataclass(frozen=True)
class RateBounds:
    """Sandwich for the optimal length-n rate, exact values plus root views."""

    n: int
    alpha_union: int  # independent set size in the union graph (floor)
    alpha_per_type: tuple[int, ...]  # per-type independent set sizes
    weighted_alpha: Fraction  # prior-weighted sum of per-type sizes (ceiling)
    achieved: Fraction | None  # optimal (or best-found) recovery value
    lower_certified: bool  # alpha_union is the exact independence number
    upper_certified: bool  # every per-type size is exact
    achieved_certified: bool  # achieved is the proven optimum

    @property
    def lower_rate(self) -> float:
        return extraction_rate(self.alpha_union, self.n)

    @property
    def upper_rate(self) -> float:
        return extraction_rate(self.weighted_alpha, self.n)

    @property
    def achieved_rate(self) -> float | None:
        if self.achieved is None:
            return None
        return extraction_rate(self.achieved, self.n)


def _alpha(graph: SenderGraph, mis_budget: int) -> tuple[int, bool]:
    """Independent set size with a certification flag, degrading past budget."""
    if graph.vertex_count <= mis_budget:
        return max_independent_set(graph, budget=mis_budget).size, True
    return max_independent_set(graph, mode="greedy").size, False


def finite_bounds(
    model: Model,
    n: int,
    *,
    solve: bool = False,
    mis_budget: int = DEFAULT_EXACT_MIS_BUDGET,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> RateBounds:
    """Bound the optimal recovery value at horizon n by independence numbers.

    When a graph is over the exact-search budget the greedy size is used and
    the field is flagged uncertified; an uncertified ceiling is an estimate,
    not a bound. With `solve`, the achieved value comes from the exhaustive
    search, or from the heuristic (uncertified) when the space is over the
    subset budget.
    """
    graphs = [
        build_sender_graph(model, t, n, budget=enum_budget)
        for t in range(model.num_types)
    ]
    per_type: list[int] = []
    upper_certified = True
    for g in graphs:
        size, exact = _alpha(g, mis_budget)
        per_type.append(size)
        upper_certified = upper_certified and exact
    union_alpha, lower_certified = _alpha(union_graph(graphs), mis_budget)
    weighted = Fraction(0)
    for p, size in zip(model.prior, per_type):
        weighted += p * size

    achieved: Fraction | None = None
    achieved_certified = False
    if solve:
        space = model.num_symbols**n
        if space <= subset_budget:
            achieved = solve_exact(
                model, n, subset_budget=subset_budget, enum_budget=enum_budget
            ).optimum
            achieved_certified = True
        else:
            achieved = solve_heuristic(model, n, enum_budget=enum_budget).optimum

    return RateBounds(
        n=n,
        alpha_union=union_alpha,
        alpha_per_type=tuple(per_type),
        weighted_alpha=weighted,
        achieved=achieved,
        lower_certified=lower_certified,
        upper_certified=upper_certified,
        achieved_certified=achieved_certified,
    )


@dataclass(frozen=True)
class FeketeWitness:
    type_id: int
    m: int
    n: int
    alpha_m: int
    alpha_n: int
    alpha_sum: int  # independence number at horizon m + n
    holds: bool  # alpha_sum >= alpha_m * alpha_n


def fekete_check(
    model: Model,
    type_id: int,
    m: int,
    n: int,
    *,
    mis_budget: int = DEFAULT_EXACT_MIS_BUDGET,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> FeketeWitness:
    """Verify supermultiplicativity of independence numbers across horizons.

    Products of independent sets are independent, so the number at horizon
    m + n must reach the product of the numbers at m and n. Requires certified
    sizes; raises past the exact-search budget rather than degrade.
    """
    if m < 1 or n < 1:
        raise ValueError("horizons must be >= 1")
    sizes = {}
    for horizon in (m, n, m + n):
        graph = build_sender_graph(model, type_id, horizon, budget=enum_budget)
        if graph.vertex_count > mis_budget:
            raise BudgetExceededError(
                "certified independent set", graph.vertex_count, mis_budget
            )
        sizes[horizon] = max_independent_set(graph, budget=mis_budget).size
    return FeketeWitness(
        type_id=type_id,
        m=m,
        n=n,
        alpha_m=sizes[m],
        alpha_n=sizes[n],
        alpha_sum=sizes[m + n],
        holds=sizes[m + n] >= sizes[m] * sizes[n],
    )


@dataclass(frozen=True)
class AsymptoticReport:
    """Long-horizon picture built from one-letter graphs and a best type."""

    n_max: int
    alpha_per_type: tuple[int, ...]  # one-letter independence numbers
    best_type: int  # argmax of those, ties to the lowest id
    union_floor: int  # one-letter union independence number
    alphas: tuple[int, ...]  # best type's numbers at horizons 1..n_max
    capacity_estimates: tuple[float, ...]  # n-th roots of those, display only
    certified_floor: float  # largest root attained, a proven lower bound
    certified_floor_at: int  # horizon attaining it
    fekete_witnesses: tuple[FeketeWitness, ...]  # all pairs m <= n, m+n <= n_max


def asymptotic_bounds(
    model: Model,
    n_max: int,
    *,
    mis_budget: int = DEFAULT_EXACT_MIS_BUDGET,
    enum_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> AsymptoticReport:
    """Bracket the long-run optimal rate using one type's graph family.

    The one-letter union independence number is a floor for every horizon
    (products of one-letter independent sets stay independent), while the
    per-letter growth of the best single type's independence numbers is a
    ceiling target; its n-th roots are reported for n = 1..n_max together
    with supermultiplicativity witnesses.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    one_letter = [
        build_sender_graph(model, t, 1, budget=enum_budget)
        for t in range(model.num_types)
    ]
    alpha1 = []
    for g in one_letter:
        if g.vertex_count > mis_budget:
            raise BudgetExceededError("certified independent set", g.vertex_count, mis_budget)
        alpha1.append(max_independent_set(g, budget=mis_budget).size)
    best_type = max(range(model.num_types), key=lambda t: (alpha1[t], -t))
    union_floor = max_independent_set(union_graph(one_letter), budget=mis_budget).size

    alphas = []
    for horizon in range(1, n_max + 1):
        graph = build_sender_graph(model, best_type, horizon, budget=enum_budget)
        if graph.vertex_count > mis_budget:
            raise BudgetExceededError(
                "certified independent set", graph.vertex_count, mis_budget
            )
        alphas.append(max_independent_set(graph, budget=mis_budget).size)
    estimates = tuple(extraction_rate(a, k + 1) for k, a in enumerate(alphas))
    # Pick the best root by exact comparison (a^(1/h) > b^(1/g) iff a^g > b^h),
    # never by comparing the float views; first horizon wins ties.
    floor_h = 1
    for h in range(2, n_max + 1):
        if alphas[h - 1] ** floor_h > alphas[floor_h - 1] ** h:
            floor_h = h

    witnesses = []
    for m in range(1, n_max):
        for n in range(m, n_max - m + 1):
            witnesses.append(
                FeketeWitness(
                    type_id=best_type,
                    m=m,
                    n=n,
                    alpha_m=alphas[m - 1],
                    alpha_n=alphas[n - 1],
                    alpha_sum=alphas[m + n - 1],
                    holds=alphas[m + n - 1] >= alphas[m - 1] * alphas[n - 1],
                )
            )
    return AsymptoticReport(
        n_max=n_max,
        alpha_per_type=tuple(alpha1),
        best_type=best_type,
        union_floor=union_floor,
        alphas=tuple(alphas),
        capacity_estimates=estimates,
        certified_floor=estimates[floor_h - 1],
        certified_floor_at=floor_h,
        fekete_witnesses=tuple(witnesses),
    )
