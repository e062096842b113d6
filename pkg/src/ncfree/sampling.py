"""Seeded random rational inputs for property checks and the verify suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .freeprob import Distribution, r_to_moments
from .series import NcSeries, words


def random_fraction(rng: random.Random, bound: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_group_r(rng: random.Random, k: int, degree: int, density: float = 0.6) -> NcSeries:
    """Sparse R-transform with all linear coefficients 1."""
    coeffs = {(i,): Fraction(1) for i in range(1, k + 1)}
    for n in range(2, degree + 1):
        for w in words(k, n):
            if rng.random() < density:
                coeffs[w] = random_fraction(rng)
    return NcSeries(k, degree, coeffs)


def random_group_distribution(rng: random.Random, k: int, degree: int, density: float = 0.6) -> Distribution:
    return r_to_moments(random_group_r(rng, k, degree, density))


def random_distribution(rng: random.Random, k: int, degree: int, density: float = 0.5) -> Distribution:
    """Sparse moments with no group constraint (first moments arbitrary)."""
    moments = {}
    for n in range(1, degree + 1):
        for w in words(k, n):
            if rng.random() < density:
                moments[w] = random_fraction(rng)
    return Distribution(k, degree, moments)
