"""Modular ideals, the Jacobson radical and related ideal constructions.

A modular index is an ``i`` whose *row* of the structure matrix vanishes
off the diagonal while ``w_ii != 0``; equivalently ``e_i`` occurs in no
``e_j^2`` with ``j != i``. Each one gives the codimension-one maximal modular
ideal spanned by the other basis vectors, with modular unit ``e_i / w_ii``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .algebra import Element, EvolutionAlgebra, product
from .descent import descendants, descendants_of_set, descent_graph
from .errors import InvalidInputError
from .exactla import independent_subset, vectors_rank
from .gscalar import ONE, ZERO, GScalar


@dataclass(frozen=True)
class IdealDescriptor:
    """An ideal given either as ``lin{e_i : i in support}`` or as a span of vectors."""

    support: frozenset[int]
    basis_kind: str  # "coordinate_span" | "vector_span"
    generators: tuple[Element, ...] = ()
    modular_unit: Element | None = None

    @property
    def dimension(self) -> int:
        if self.basis_kind == "coordinate_span":
            return len(self.support)
        return vectors_rank([g.coeffs for g in self.generators])

    def contains(self, x: Element) -> bool:
        """Exact membership test."""
        if self.basis_kind == "coordinate_span":
            return x.support <= self.support
        if x.is_zero():
            return True
        gens = [g.coeffs for g in self.generators]
        return vectors_rank(gens + [x.coeffs]) == vectors_rank(gens)


class RadicalReport(NamedTuple):
    modular_indexes: frozenset[int]
    radical_support: frozenset[int]
    classification: str  # "semisimple" | "radical" | "intermediate"
    quotient_diag: tuple[GScalar, ...]  # aligned with sorted(modular_indexes)


class SupportCheck(NamedTuple):
    valid: bool
    unit: Element | None


class Sandwich(NamedTuple):
    lower: IdealDescriptor
    upper: IdealDescriptor
    equal: bool


def coordinate_ideal(A: EvolutionAlgebra, support: Iterable[int], unit: Element | None = None) -> IdealDescriptor:
    return IdealDescriptor(frozenset(support), "coordinate_span", (), unit)


def _vector_ideal(A: EvolutionAlgebra, vectors: list[Element]) -> IdealDescriptor:
    keep = independent_subset([v.coeffs for v in vectors])
    gens = tuple(vectors[k] for k in keep)
    support = frozenset().union(*(g.support for g in gens)) if gens else frozenset()
    return IdealDescriptor(support, "vector_span", gens)


def modular_indexes(A: EvolutionAlgebra) -> frozenset[int]:
    out = set(A.index_range())
    for i, col in enumerate(A.columns, start=1):
        for k, _ in col:
            if k != i:
                out.discard(k)
        if not A.omega(i, i):
            out.discard(i)
    return frozenset(out)


def maximal_modular_ideals(A: EvolutionAlgebra) -> list[IdealDescriptor]:
    full = frozenset(A.index_range())
    out = []
    for i in sorted(modular_indexes(A)):
        unit = A.basis(i) * (ONE / A.omega(i, i))
        out.append(coordinate_ideal(A, full - {i}, unit))
    return out


def quotient_mod_radical(A: EvolutionAlgebra) -> tuple[GScalar, ...]:
    """Structure constants of ``A / Rad(A)`` in the basis of images of modular ``e_i``.

    The quotient is diagonal: off-diagonal entries of a modular column can only
    sit in non-modular rows, which the radical absorbs.
    """
    modular = modular_indexes(A)
    diag = []
    for i in sorted(modular):
        w = A.omega(i, i)
        assert w and all(k == i or k not in modular for k, _ in A.columns[i - 1])
        diag.append(w)
    return tuple(diag)


def jacobson_radical(A: EvolutionAlgebra) -> RadicalReport:
    modular = modular_indexes(A)
    radical = frozenset(A.index_range()) - modular
    if not modular:
        kind = "radical"
    elif not radical:
        kind = "semisimple"
    else:
        kind = "intermediate"
    return RadicalReport(modular, radical, kind, quotient_mod_radical(A))


def is_modular_ideal_support(A: EvolutionAlgebra, support: Iterable[int]) -> SupportCheck:
    """Decide whether ``lin{e_i : i in support}`` is a modular ideal; return its canonical unit."""
    lam0 = frozenset(support)
    full = frozenset(A.index_range())
    if not lam0 or lam0 == full:
        raise InvalidInputError("support must be a nonempty proper subset of the indexes")
    if not lam0 <= full:
        raise InvalidInputError(f"support {sorted(lam0)} has indexes outside 1..{A.n}")
    G = descent_graph(A)
    if not descendants_of_set(G, lam0) <= lam0:
        return SupportCheck(False, None)
    coeffs = [ZERO] * A.n
    for i in full - lam0:
        d = descendants(G, i)
        if i not in d or not (d - {i}) <= lam0:
            return SupportCheck(False, None)
        w = A.omega(i, i)
        if not w:
            return SupportCheck(False, None)
        coeffs[i - 1] = ONE / w
    return SupportCheck(True, Element(tuple(coeffs)))


def is_modular_unit(A: EvolutionAlgebra, ideal: IdealDescriptor, u: Element) -> bool:
    """Check ``e_i - e_i u`` lies in the ideal for every basis vector."""
    for i in A.index_range():
        e = A.basis(i)
        if not ideal.contains(e - product(A, e, u)):
            return False
    return True


def square_ideal(A: EvolutionAlgebra, i: int) -> IdealDescriptor:
    """The ideal generated by ``e_i^2``: span of ``e_j^2`` over ``j`` in ``D(i) + {i}``."""
    G = descent_graph(A)
    idx = sorted(descendants(G, i) | {i})
    return _vector_ideal(A, [A.square(j) for j in idx])


def ideal_sandwich(A: EvolutionAlgebra, support: Iterable[int]) -> Sandwich:
    """Ideals ``I1 <= J <= I2`` bracketing any ideal ``J`` with the given support."""
    lam_j = frozenset(support)
    if not lam_j:
        raise InvalidInputError("ideal support must be nonempty")
    G = descent_graph(A)
    S = lam_j | descendants_of_set(G, lam_j)
    lower = _vector_ideal(A, [A.square(j) for j in sorted(S)])
    upper = coordinate_ideal(A, S)
    return Sandwich(lower, upper, lower.dimension == upper.dimension)
