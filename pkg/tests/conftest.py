"""Shared fixtures and brute-force oracles for the test suite.

The oracles here recompute results by definition-level scans (all subsets,
all pairs, raw Fraction averages) so library outputs are checked against an
independent route, not against themselves.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

import screengame as sg

POOL_SEED = 20260816
POOL_SIZE = 200

# (alphabet size, sender type count) cycled deterministically across the pool
GRID = tuple(itertools.product((2, 3, 4), (1, 2, 3)))


def make_random_model(rng: random.Random, num_symbols: int, num_types: int) -> sg.Model:
    """Random instance: integer payoffs in [-3, 3], random rational prior."""
    alphabet = [str(i) for i in range(num_symbols)]
    types = [chr(ord("a") + t) for t in range(num_types)]
    weights = [rng.randint(1, 9) for _ in types]
    total = sum(weights)
    prior = {lab: f"{w}/{total}" for lab, w in zip(types, weights)}
    utility = {
        lab: [[rng.randint(-3, 3) for _ in alphabet] for _ in alphabet]
        for lab in types
    }
    return sg.Model.from_tables(alphabet, types, prior, utility)


def model_pool(count: int = POOL_SIZE, seed: int = POOL_SEED) -> list[sg.Model]:
    rng = random.Random(seed)
    return [make_random_model(rng, *GRID[i % len(GRID)]) for i in range(count)]


@pytest.fixture(scope="session")
def pool() -> list[sg.Model]:
    return model_pool()


@pytest.fixture()
def example() -> sg.Model:
    return sg.example_model()


def brute_alpha(graph: sg.SenderGraph) -> int:
    """Independence number by scanning every vertex subset."""
    best = 0
    for mask in range(1 << graph.vertex_count):
        size = mask.bit_count()
        if size <= best:
            continue
        rest = mask
        independent = True
        while rest and independent:
            v = (rest & -rest).bit_length() - 1
            if graph.adjacency[v] & mask:
                independent = False
            rest &= rest - 1
        if independent:
            best = size
    return best


def brute_best(model: sg.Model, n: int) -> tuple[Fraction, list[tuple]]:
    """Optimum and all maximizers by evaluating every nonempty questionnaire."""
    seqs = sg.enumerate_sequences(model, n)
    best: Fraction | None = None
    sets: list[tuple] = []
    for size in range(1, len(seqs) + 1):
        for combo in itertools.combinations(seqs, size):
            value = sg.receiver_objective(model, combo)
            if best is None or value > best:
                best, sets = value, [combo]
            elif value == best:
                sets.append(combo)
    assert best is not None
    return best, sorted(tuple(sorted(s)) for s in sets)
