import random
from fractions import Fraction

import pytest

from graphonham import FiniteGraph, StepGraphon


def random_graph(rng: random.Random, n: int, p: float) -> FiniteGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return FiniteGraph.build(n, edges)


def random_step_graphon(rng: random.Random, k: int, zero_prob: float = 0.5,
                        mass_units: int = 16) -> StepGraphon:
    """Random step graphon with masses quantized to 1/mass_units."""
    cuts = sorted(rng.sample(range(1, mass_units), k - 1)) if k > 1 else []
    bounds = [0] + cuts + [mass_units]
    masses = [Fraction(bounds[i + 1] - bounds[i], mass_units) for i in range(k)]
    dens = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            if rng.random() < zero_prob:
                d = Fraction(0)
            else:
                d = Fraction(rng.randrange(1, 9), 8)
            dens[i][j] = dens[j][i] = d
    return StepGraphon(tuple(masses), tuple(tuple(r) for r in dens))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
