"""Exact linear algebra over the Gaussian rationals.

Everything here works on ``GScalar`` values and never rounds, except
:func:`numeric_roots`, which is the explicit floating-point fallback for
roots that are not Gaussian rationals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import mpmath

from .errors import InvalidInputError, NumericFailureError
from .gscalar import ONE, ZERO, GScalar, gs

Vector = tuple[GScalar, ...]

DEFAULT_TOL = 1e-9
MAX_ITERATIONS = 1000


def vec(values: Iterable) -> Vector:
    return tuple(gs(v) for v in values)


@dataclass(frozen=True)
class DenseMatrix:
    """Rectangular grid of exact scalars, row-major."""

    entries: tuple[Vector, ...]
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(gs(x) for x in row) for row in self.entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise InvalidInputError("ragged matrix rows")
        width = widths.pop() if widths else max(self.ncols, 0)
        if self.ncols >= 0 and rows and width != self.ncols:
            raise InvalidInputError("declared column count does not match rows")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "ncols", width)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> DenseMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> DenseMatrix:
        ncols = nrows if ncols is None else ncols
        return cls(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def diagonal(cls, values: Sequence) -> DenseMatrix:
        n = len(values)
        return cls(tuple(tuple(gs(values[i]) if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self.ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, rc: tuple[int, int]) -> GScalar:
        r, c = rc
        return self.entries[r][c]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> DenseMatrix:
        return DenseMatrix(tuple(zip(*self.entries)) if self.rows else (), self.rows)

    def trace(self) -> GScalar:
        if not self.is_square:
            raise InvalidInputError("trace of a non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self.entries[i][i]
        return total

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        if self.shape != other.shape:
            raise InvalidInputError("shape mismatch in matrix sum")
        return DenseMatrix(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.cols,
        )

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        if self.shape != other.shape:
            raise InvalidInputError("shape mismatch in matrix difference")
        return DenseMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.cols,
        )

    def scale(self, c) -> DenseMatrix:
        c = gs(c)
        return DenseMatrix(tuple(tuple(c * x for x in row) for row in self.entries), self.cols)

    def __matmul__(self, other):
        if isinstance(other, DenseMatrix):
            if self.cols != other.rows:
                raise InvalidInputError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            return DenseMatrix(
                tuple(tuple(_dot(row, col) for col in cols) for row in self.entries),
                other.cols,
            )
        v = vec(other)
        if len(v) != self.cols:
            raise InvalidInputError(f"cannot multiply {self.shape} matrix by length-{len(v)} vector")
        return tuple(_dot(row, v) for row in self.entries)

    def __pow__(self, k: int) -> DenseMatrix:
        if not self.is_square or k < 0:
            raise InvalidInputError("matrix power needs a square matrix and k >= 0")
        result = DenseMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def shifted(self, lam) -> DenseMatrix:
        """Return ``self - lam * I``."""
        lam = gs(lam)
        return DenseMatrix(
            tuple(
                tuple(x - lam if i == j else x for j, x in enumerate(row))
                for i, row in enumerate(self.entries)
            ),
            self.cols,
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> DenseMatrix:
        return DenseMatrix(tuple(tuple(self.entries[r][c] for c in cols) for r in rows), len(cols))

    def to_complex_rows(self) -> list[list[complex]]:
        return [[complex(x) for x in row] for row in self.entries]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"


def _dot(u: Sequence[GScalar], v: Sequence[GScalar]) -> GScalar:
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial, coefficients lowest degree first."""

    coeffs: Vector = ()

    def __post_init__(self):
        cs = [gs(c) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> Poly:
        return cls((ZERO, ONE))

    @classmethod
    def const(cls, c) -> Poly:
        return cls((gs(c),))

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> Poly:
        p = cls.const(leading)
        for r in roots:
            p = p * cls((-gs(r), ONE))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> GScalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __call__(self, x):
        """Horner evaluation; exact for GScalar/Fraction/int, floating for float/complex."""
        if isinstance(x, (float, complex)):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        x = gs(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = gs(other)
            return Poly(tuple(c * x for x in self.coeffs))
        if self.is_zero or other.is_zero:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [ZERO] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(tuple(quot)), Poly(tuple(rem[:dq]))

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if self.is_zero:
            return self
        return self * (ONE / self.leading)

    def derivative(self) -> Poly:
        return Poly(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = str(c)
            if not c.is_real and c.re:
                cs = f"({cs})"
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            else:
                term = cs + ("*" + mono if mono else "")
            terms.append(term)
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q(i) by the Euclidean algorithm."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic, pairwise coprime, squarefree factors with multiplicities.

    The leading coefficient of ``p`` is dropped.
    """
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree >= 1:
        g = poly_gcd(b, d)
        if g.degree >= 1:
            out.append((g, k))
        b = b // g
        c = d // g
        d = c - b.derivative()
        k += 1
    return out


# ------------------------------------------------------------ linear systems


class LinearSolution(NamedTuple):
    kind: str  # "unique" | "affine_family" | "inconsistent"
    particular: Vector | None
    nullspace_basis: tuple[Vector, ...]


def _rref(rows: list[list[GScalar]], ncols: int) -> tuple[list[list[GScalar]], list[int]]:
    """Reduced row echelon form on the first ``ncols`` columns.

    Pivot is the first exact-nonzero entry scanning down the current column.
    """
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve_linear(A: DenseMatrix, b: Sequence) -> LinearSolution:
    """Solve ``A x = b`` exactly, returning the whole solution set."""
    b = vec(b)
    if A.rows != len(b):
        raise InvalidInputError(f"matrix has {A.rows} rows but right-hand side has {len(b)} entries")
    n = A.cols
    aug = [list(row) + [rhs] for row, rhs in zip(A.entries, b)]
    m, pivots = _rref(aug, n)
    r = len(pivots)
    if any(row[n] for row in m[r:]):
        return LinearSolution("inconsistent", None, ())
    x = [ZERO] * n
    for i, c in enumerate(pivots):
        x[c] = m[i][n]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(tuple(v))
    kind = "unique" if not free else "affine_family"
    return LinearSolution(kind, tuple(x), tuple(basis))


def rank(A: DenseMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    return len(_rref([list(r) for r in A.entries], A.cols)[1])


def vectors_rank(vectors: Sequence[Sequence]) -> int:
    """Rank of the span of a list of equal-length vectors."""
    if not vectors:
        return 0
    return rank(DenseMatrix.from_rows(vectors))


def independent_subset(vectors: Sequence[Vector]) -> list[int]:
    """Indexes of a greedy maximal independent subset, in input order."""
    kept: list[int] = []
    current = 0
    for idx, v in enumerate(vectors):
        if not any(v):
            continue
        r = vectors_rank([vectors[k] for k in kept] + [v])
        if r > current:
            kept.append(idx)
            current = r
    return kept


# ------------------------------------------------- characteristic polynomial


def char_poly(A: DenseMatrix) -> Poly:
    """Monic ``det(xI - A)`` via the Faddeev-LeVerrier recurrence.

    Only integer divisions occur, so the same recurrence also runs over any
    commutative ring containing the rationals.
    """
    if not A.is_square:
        raise InvalidInputError(f"characteristic polynomial of a {A.rows}x{A.cols} matrix")
    n = A.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    Mk = DenseMatrix.zeros(n)
    for k in range(1, n + 1):
        Mk = (A @ Mk).shifted(-coeffs[n - k + 1])
        coeffs[n - k] = -(A @ Mk).trace() / k
    return Poly(tuple(coeffs))


def is_nilpotent_matrix(A: DenseMatrix) -> bool:
    if not A.is_square:
        raise InvalidInputError("nilpotency test needs a square matrix")
    return char_poly(A).coeffs == (ZERO,) * A.rows + (ONE,)


# --------------------------------------------------------------- exact roots


class RationalRoots(NamedTuple):
    roots: tuple[GScalar, ...]
    residual: Poly


def _isqrt_fraction(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def exact_sqrt(z: GScalar) -> GScalar | None:
    """A square root of ``z`` in Q(i), or None if there is none."""
    if not z.im:
        s = _isqrt_fraction(z.re)
        if s is not None:
            return GScalar._raw(s, Fraction(0))
        s = _isqrt_fraction(-z.re)
        return None if s is None else GScalar._raw(Fraction(0), s)
    modulus = _isqrt_fraction(z.norm())
    if modulus is None:
        return None
    x = _isqrt_fraction((z.re + modulus) / 2)
    if not x:
        return None
    return GScalar._raw(x, z.im / (2 * x))


def _gaussian_integer_form(p: Poly) -> list[tuple[int, int]]:
    """Scale ``p`` to Gaussian-integer coefficients, returned as (re, im) pairs."""
    den = 1
    for c in p.coeffs:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    return [(int(c.re * den), int(c.im * den)) for c in p.coeffs]


def _snap_candidates(p: Poly) -> list[GScalar]:
    """Gaussian-rational candidates near the numeric roots of squarefree ``p``.

    If ``r`` is a root in Q(i) of a polynomial with Gaussian-integer
    coefficients and leading coefficient ``L``, the rational root theorem over
    the UFD Z[i] puts ``L * r`` in Z[i]; rounding ``L * z`` for a numeric root
    ``z`` therefore recovers ``r`` once ``z`` is accurate to ``1/(2|L|)``.
    Precision is scaled with the coefficient size so that this holds.
    """
    ints = _gaussian_integer_form(p)
    digits = max(len(str(abs(v))) for pair in ints for v in pair)
    dps = 30 + (p.degree + 1) * digits
    lead = GScalar(*ints[-1])
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpc(re, im) for re, im in reversed(ints)]
        zs = []
        for steps in (100, 400, 1600):
            try:
                zs = mpmath.polyroots(coeffs, maxsteps=steps, extraprec=dps)
                break
            except mpmath.libmp.libhyper.NoConvergence:
                continue
        L = mpmath.mpc(*ints[-1])
        snapped = [(int(mpmath.nint((L * z).real)), int(mpmath.nint((L * z).imag))) for z in zs]
    return [GScalar(re, im) / lead for re, im in snapped]


def rational_roots(p: Poly) -> RationalRoots:
    """All roots of ``p`` lying in Q(i), with multiplicity.

    Returns the roots and the residual factor with those roots divided out,
    so that ``residual * prod(x - r)`` equals ``p`` exactly. Every reported
    root is verified by exact evaluation.
    """
    if p.is_zero:
        raise InvalidInputError("rational_roots of the zero polynomial")
    roots: list[GScalar] = []
    work = p
    while work.degree >= 1 and not work.coeffs[0]:
        roots.append(ZERO)
        work = Poly(work.coeffs[1:])
    if work.degree >= 3:
        squarefree = work // poly_gcd(work, work.derivative())
        for r in _snap_candidates(squarefree):
            while work.degree >= 1 and not work(r):
                roots.append(r)
                work = work // Poly((-r, ONE))
    if work.degree == 2:
        c, b, a = work.coeffs
        s = exact_sqrt(b * b - 4 * a * c)
        if s is not None:
            for r in ((-b + s) / (2 * a), (-b - s) / (2 * a)):
                roots.append(r)
                work = work // Poly((-r, ONE))
    if work.degree == 1:
        r = -work.coeffs[0] / work.coeffs[1]
        roots.append(r)
        work = work // Poly((-r, ONE))
    roots.sort(key=GScalar.sort_key)
    return RationalRoots(tuple(roots), work)


# ------------------------------------------------------------- numeric roots


def _aberth(coeffs: list[complex], tol: float, max_iter: int) -> list[complex]:
    """Aberth-Ehrlich simultaneous iteration on a monic polynomial (low degree first)."""
    n = len(coeffs) - 1
    if n == 1:
        return [-coeffs[0]]
    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]
    radius = 1 + max(abs(c) for c in coeffs[:-1])
    center = -coeffs[n - 1] / n
    z = [center + 0.5 * radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]

    def horner(cs, x):
        acc = 0j
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    eps = 2.2e-16
    for _ in range(max_iter):
        done = True
        for i in range(n):
            pz = horner(coeffs, z[i])
            if pz == 0:
                continue
            dpz = horner(dcoeffs, z[i])
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            if dpz == 0:
                w = 1e-3 * radius * cmath.exp(1j * i)
            else:
                ratio = pz / dpz
                denom = 1 - ratio * s
                w = ratio if denom == 0 else ratio / denom
            z[i] -= w
            scale = max(1.0, abs(z[i]))
            if abs(w) > max(1e-3 * tol, 16 * eps) * scale:
                done = False
        if done:
            return z
    raise NumericFailureError(f"Aberth iteration did not converge in {max_iter} steps", z)


def numeric_roots(p: Poly, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS) -> list[complex]:
    """All complex roots of ``p`` (with multiplicity) in double precision.

    Multiple roots are separated exactly first (squarefree decomposition), so
    each iteration only sees simple roots and keeps full accuracy.
    """
    if p.is_zero:
        raise InvalidInputError("numeric_roots of the zero polynomial")
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    out: list[complex] = []
    for factor, mult in squarefree_decomposition(p):
        zs = _aberth([complex(c) for c in factor.coeffs], tol, max_iter)
        if all(c.is_real for c in factor.coeffs):
            # conjugate-symmetric factor: drop imaginary noise on real roots
            zs = [complex(z.real, 0.0) if abs(z.imag) <= 1e-3 * tol * max(1.0, abs(z)) else z for z in zs]
        out.extend(z for z in zs for _ in range(mult))
    out = [complex(z.real + 0.0, z.imag + 0.0) for z in out]
    return sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
