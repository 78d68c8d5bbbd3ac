"""Deterministic random polynomial samples for executable checks.

All sampling is seeded; two runs with the same seed produce identical
samples, keeping reports byte-stable.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .poly import Poly, monomials_of_degree
from .space import SymplecticSpace


def random_poly(
    rng: random.Random,
    nvars: int,
    max_degree: int,
    max_terms: int = 4,
) -> Poly:
    """Sparse random polynomial of bounded degree with small rational
    coefficients; may be zero only with negligible probability."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        mons = monomials_of_degree(nvars, degree)
        exp = mons[rng.randrange(len(mons))]
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        den = rng.choice([1, 1, 2])
        terms[exp] = terms.get(exp, Fraction(0)) + Fraction(num, den)
    return Poly(nvars, terms)


def random_homogeneous_poly(
    rng: random.Random, nvars: int, degree: int, max_terms: int = 4
) -> Poly:
    mons = monomials_of_degree(nvars, degree)
    terms = {}
    for _ in range(rng.randint(1, min(max_terms, len(mons)))):
        exp = mons[rng.randrange(len(mons))]
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[exp] = terms.get(exp, Fraction(0)) + Fraction(num)
    return Poly(nvars, terms)


def sample_triples(
    seed: int, space: SymplecticSpace, count: int, max_degree: int
) -> list[tuple[Poly, Poly, Poly]]:
    rng = random.Random(seed)
    nv = space.nvars
    out = []
    for _ in range(count):
        out.append(
            (
                random_poly(rng, nv, max_degree),
                random_poly(rng, nv, max_degree),
                random_poly(rng, nv, max_degree),
            )
        )
    return out


def sample_homogeneous_pairs(
    seed: int, space: SymplecticSpace, count: int, max_degree: int
) -> list[tuple[Poly, Poly]]:
    rng = random.Random(seed)
    nv = space.nvars
    out = []
    for _ in range(count):
        d1 = rng.randint(0, max_degree)
        d2 = rng.randint(0, max_degree)
        out.append(
            (
                random_homogeneous_poly(rng, nv, d1),
                random_homogeneous_poly(rng, nv, d2),
            )
        )
    return out


def sample_polys(
    seed: int, space: SymplecticSpace, count: int, max_degree: int
) -> list[Poly]:
    rng = random.Random(seed)
    return [random_poly(rng, space.nvars, max_degree) for _ in range(count)]
