"""Finite-dimensional evolution algebras given by a structure matrix.

Index convention: algebra indexes are 1-based (``1..n``) wherever they appear
as sets or arguments, matching the usual notation ``e_1, ..., e_n``.
Coefficient vectors are ordinary positional tuples.

The structure matrix stores ``e_i^2 = sum_k w_ki e_k`` in column ``i``:
entry ``(k, i)`` is the coefficient of ``e_k`` in ``e_i^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .exactla import DenseMatrix, Vector, rank, solve_linear, vec
from .gscalar import ONE, ZERO, GScalar, gs

Column = tuple[tuple[int, GScalar], ...]


@dataclass(frozen=True)
class Element:
    """``a = sum alpha_i e_i``; ``support`` is the 1-based set of nonzero coordinates."""

    coeffs: Vector
    support: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cs = vec(self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "support", frozenset(i + 1 for i, c in enumerate(cs) if c))

    @classmethod
    def zero(cls, n: int) -> Element:
        return cls((ZERO,) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> Element:
        """The basis vector ``e_i`` (1-based)."""
        if not 1 <= i <= n:
            raise InvalidInputError(f"index {i} out of range 1..{n}")
        return cls(tuple(ONE if k == i - 1 else ZERO for k in range(n)))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.support

    def __getitem__(self, i: int) -> GScalar:
        """Coefficient of ``e_i`` (1-based)."""
        return self.coeffs[i - 1]

    def __add__(self, other: Element) -> Element:
        _check_dims(self, other)
        return Element(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Element) -> Element:
        _check_dims(self, other)
        return Element(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Element:
        return Element(tuple(-a for a in self.coeffs))

    def __mul__(self, c) -> Element:
        c = gs(c)
        return Element(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, c) -> Element:
        c = gs(c)
        return Element(tuple(a / c for a in self.coeffs))

    def __str__(self) -> str:
        out = ""
        for i, c in enumerate(self.coeffs, start=1):
            if not c:
                continue
            negative = c.is_real and c.re < 0
            mag = -c if negative else c
            body = f"e{i}" if mag == 1 else (f"{mag}*e{i}" if mag.is_real else f"({mag})*e{i}")
            if not out:
                out = f"-{body}" if negative else body
            else:
                out += f" - {body}" if negative else f" + {body}"
        return out or "0"


def _check_dims(a: Element, b: Element) -> None:
    if a.dim != b.dim:
        raise InvalidInputError(f"dimension mismatch: {a.dim} vs {b.dim}")


@dataclass(frozen=True)
class BasisCandidate:
    """A family of ``n`` vectors written in the reference natural basis."""

    vectors: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "vectors", tuple(v if isinstance(v, Element) else Element(v) for v in self.vectors)
        )

    def matrix(self) -> DenseMatrix:
        """Matrix whose columns are the candidate vectors."""
        return DenseMatrix.from_rows(zip(*(v.coeffs for v in self.vectors)))


@dataclass(frozen=True)
class EvolutionAlgebra:
    n: int
    columns: tuple[Column, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("dimension must be at least 1")
        if len(self.columns) != self.n:
            raise InvalidInputError(f"expected {self.n} columns, got {len(self.columns)}")
        cols = []
        for i, col in enumerate(self.columns, start=1):
            entries = []
            for k, w in col:
                if not 1 <= k <= self.n:
                    raise InvalidInputError(f"row index {k} out of range in column {i}")
                w = gs(w)
                if w:
                    entries.append((k, w))
            entries.sort(key=lambda kw: kw[0])
            if len({k for k, _ in entries}) != len(entries):
                raise InvalidInputError(f"duplicate row index in column {i}")
            cols.append(tuple(entries))
        object.__setattr__(self, "columns", tuple(cols))
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise InvalidInputError("labels must name every basis vector")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence], labels: Iterable[str] | None = None) -> EvolutionAlgebra:
        """Build from ``rows[k][i] = w_ki`` (row k, column i; column i is ``e_i^2``)."""
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidInputError("structure matrix must be square")
        columns = tuple(
            tuple((k + 1, gs(rows[k][i])) for k in range(n) if gs(rows[k][i])) for i in range(n)
        )
        return cls(n, columns, tuple(labels) if labels is not None else None)

    @classmethod
    def diagonal(cls, values: Sequence) -> EvolutionAlgebra:
        n = len(values)
        return cls(n, tuple(((i + 1, gs(v)),) if gs(v) else () for i, v in enumerate(values)))

    @cached_property
    def matrix(self) -> DenseMatrix:
        grid = [[ZERO] * self.n for _ in range(self.n)]
        for i, col in enumerate(self.columns):
            for k, w in col:
                grid[k - 1][i] = w
        return DenseMatrix.from_rows(grid)

    def omega(self, k: int, i: int) -> GScalar:
        """Coefficient of ``e_k`` in ``e_i^2`` (both 1-based)."""
        for kk, w in self.columns[i - 1]:
            if kk == k:
                return w
        return ZERO

    def square(self, i: int) -> Element:
        """``e_i^2`` as an element."""
        coeffs = [ZERO] * self.n
        for k, w in self.columns[i - 1]:
            coeffs[k - 1] = w
        return Element(tuple(coeffs))

    def basis(self, i: int) -> Element:
        return Element.basis(self.n, i)

    def element(self, coeffs: Iterable) -> Element:
        e = Element(tuple(coeffs))
        self._check(e)
        return e

    def _check(self, *elements: Element) -> None:
        for e in elements:
            if e.dim != self.n:
                raise InvalidInputError(f"element has {e.dim} coordinates, algebra has dimension {self.n}")

    def index_range(self) -> range:
        return range(1, self.n + 1)


def product(A: EvolutionAlgebra, a: Element, b: Element) -> Element:
    """``ab = M (alpha_1 beta_1, ..., alpha_n beta_n)^T``."""
    A._check(a, b)
    out = [ZERO] * A.n
    for i in a.support & b.support:
        c = a.coeffs[i - 1] * b.coeffs[i - 1]
        for k, w in A.columns[i - 1]:
            out[k - 1] = out[k - 1] + c * w
    return Element(tuple(out))


def left_mul_matrix(A: EvolutionAlgebra, a: Element) -> DenseMatrix:
    """Matrix of ``L_a`` (equal to ``R_a``): ``M diag(alpha)``."""
    A._check(a)
    grid = [[ZERO] * A.n for _ in range(A.n)]
    for i in a.support:
        alpha = a.coeffs[i - 1]
        for k, w in A.columns[i - 1]:
            grid[k - 1][i - 1] = w * alpha
    return DenseMatrix.from_rows(grid)


def element_power(A: EvolutionAlgebra, a: Element, k: int) -> Element:
    """Left-normed power ``a(a(...(aa)))`` with ``k`` factors, i.e. ``L_a^(k-1)(a)``."""
    if k < 1:
        raise InvalidInputError("element powers start at k = 1; evolution algebras rarely have a unit")
    A._check(a)
    x = a
    for _ in range(k - 1):
        if x.is_zero():
            break
        x = product(A, a, x)
    return x


def is_nonzero_trivial(A: EvolutionAlgebra) -> bool:
    return all(col and len(col) == 1 and col[0][0] == i for i, col in enumerate(A.columns, start=1))


def unit_of(A: EvolutionAlgebra) -> Element | None:
    """``sum (1/w_ii) e_i`` when the structure matrix is diagonal and nonsingular, else None."""
    if not is_nonzero_trivial(A):
        return None
    return Element(tuple(ONE / col[0][1] for col in A.columns))


def annihilator(A: EvolutionAlgebra) -> frozenset[int]:
    """Indexes with ``e_i^2 = 0``; Ann(A) is their span."""
    return frozenset(i for i, col in enumerate(A.columns, start=1) if not col)


def is_nondegenerate(A: EvolutionAlgebra) -> bool:
    return not annihilator(A)


def verify_natural_basis(A: EvolutionAlgebra, C: BasisCandidate) -> bool:
    if len(C.vectors) != A.n:
        return False
    A._check(*C.vectors)
    if rank(C.matrix()) != A.n:
        return False
    vs = C.vectors
    return all(
        product(A, vs[i], vs[j]).is_zero() for i in range(len(vs)) for j in range(i + 1, len(vs))
    )


def bases_related(C1: BasisCandidate, C2: BasisCandidate) -> bool:
    """True when ``C2`` is ``C1`` up to a permutation and nonzero rescaling."""
    n = len(C1.vectors)
    if len(C2.vectors) != n:
        raise InvalidInputError("bases of different sizes")
    P1, P2 = C1.matrix(), C2.matrix()
    if rank(P1) != n or rank(P2) != n:
        raise InvalidInputError("candidate family is not a basis")
    # column j of the change-of-coordinates matrix: C2[j] written in C1
    change = []
    for j in range(n):
        sol = solve_linear(P1, P2.column(j))
        change.append(sol.particular)
    rows_used = set()
    for col in change:
        nz = [r for r, x in enumerate(col) if x]
        if len(nz) != 1 or nz[0] in rows_used:
            return False
        rows_used.add(nz[0])
    return True


def unitization_is_evolution(A: EvolutionAlgebra) -> bool:
    """Whether ``A + K1`` is again an evolution algebra (exactly when A is nonzero trivial)."""
    return is_nonzero_trivial(A)
