"""Seeded random algebras and elements for experiments and property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element, EvolutionAlgebra
from .exactla import DenseMatrix, rank, solve_linear
from .gscalar import ZERO, GScalar


@dataclass(frozen=True)
class RandomAlgebraConfig:
    n_min: int = 1
    n_max: int = 6
    density: float = 0.5  # probability that an off-diagonal entry is nonzero
    diagonal_density: float = 0.7
    num_bound: int = 5
    den_bound: int = 4
    complex_prob: float = 0.0


def random_scalar(rng: random.Random, cfg: RandomAlgebraConfig = RandomAlgebraConfig(), nonzero: bool = True) -> GScalar:
    while True:
        re = Fraction(rng.randint(-cfg.num_bound, cfg.num_bound), rng.randint(1, cfg.den_bound))
        im = Fraction(0)
        if cfg.complex_prob and rng.random() < cfg.complex_prob:
            im = Fraction(rng.randint(-cfg.num_bound, cfg.num_bound), rng.randint(1, cfg.den_bound))
        value = GScalar(re, im)
        if value or not nonzero:
            return value


def random_algebra(rng: random.Random, cfg: RandomAlgebraConfig = RandomAlgebraConfig(), n: int | None = None) -> EvolutionAlgebra:
    n = n if n is not None else rng.randint(cfg.n_min, cfg.n_max)
    rows = [[ZERO] * n for _ in range(n)]
    for k in range(n):
        for i in range(n):
            p = cfg.diagonal_density if k == i else cfg.density
            if rng.random() < p:
                rows[k][i] = random_scalar(rng, cfg)
    return EvolutionAlgebra.from_matrix(rows)


def random_diagonal_algebra(rng: random.Random, n: int, cfg: RandomAlgebraConfig = RandomAlgebraConfig()) -> EvolutionAlgebra:
    """A nonzero trivial algebra: diagonal structure matrix, nonzero diagonal."""
    return EvolutionAlgebra.diagonal([random_scalar(rng, cfg) for _ in range(n)])


def random_element(rng: random.Random, n: int, density: float = 0.7, cfg: RandomAlgebraConfig = RandomAlgebraConfig()) -> Element:
    return Element(tuple(random_scalar(rng, cfg) if rng.random() < density else ZERO for _ in range(n)))


def _invertible_integer_matrix(rng: random.Random, n: int, bound: int = 2) -> DenseMatrix:
    while True:
        P = DenseMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if rank(P) == n:
            return P


def inverse(P: DenseMatrix) -> DenseMatrix:
    n = P.rows
    cols = [solve_linear(P, DenseMatrix.identity(n).column(j)).particular for j in range(n)]
    return DenseMatrix.from_rows(zip(*cols))


def rational_spectrum_instance(
    rng: random.Random, n: int, cfg: RandomAlgebraConfig = RandomAlgebraConfig()
) -> tuple[EvolutionAlgebra, Element, tuple[GScalar, ...]]:
    """An algebra and element whose multiplication operator has a prescribed rational spectrum.

    Picks ``L = P D P^-1`` and a full-support ``alpha``, then sets
    ``M = L diag(alpha)^-1`` so that ``M diag(alpha) = L``. Returns the
    eigenvalues with multiplicity; repeated values are likely, on purpose.
    """
    P = _invertible_integer_matrix(rng, n)
    eig = tuple(random_scalar(rng, cfg, nonzero=False) for _ in range(n))
    L = P @ DenseMatrix.diagonal(eig) @ inverse(P)
    alpha = tuple(random_scalar(rng, cfg) for _ in range(n))
    M = L @ DenseMatrix.diagonal([1 / x for x in alpha])
    A = EvolutionAlgebra.from_matrix(_rows(M))
    return A, Element(alpha), eig


def _rows(M: DenseMatrix):
    return [[M[r, c] for c in range(M.cols)] for r in range(M.rows)]
