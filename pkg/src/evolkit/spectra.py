"""Spectrum and m-spectrum of elements, spectral radii and semisimplicity tests.

For an element ``a`` with coefficient vector ``alpha`` the multiplication
operator is ``L_a = M diag(alpha)``. The m-spectrum is the eigenvalue set of
``L_a`` (plus 0 when the algebra has no unit). A nonzero ``lam`` lies in the
spectrum iff ``(L_a - lam I) beta = alpha`` has no solution, i.e. iff
``a / lam`` has no quasi-inverse. Zero lies in the spectrum iff ``a`` is not
invertible, which for a unit-free algebra is always the case.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import Element, EvolutionAlgebra, annihilator, left_mul_matrix, unit_of
from .descent import descent_graph, first_generation
from .errors import InvalidInputError
from .exactla import (
    DEFAULT_TOL,
    DenseMatrix,
    Poly,
    char_poly,
    is_nilpotent_matrix,
    numeric_roots,
    rational_roots,
    solve_linear,
)
from .gscalar import ONE, ZERO, GScalar
from .radical import IdealDescriptor, coordinate_ideal, square_ideal

SYMBOLIC_MONOMIAL_BUDGET = 100_000


class Membership(NamedTuple):
    point: GScalar | complex
    in_spectrum: bool
    method: str  # "exact" | "numeric"


@dataclass(frozen=True)
class SpectrumResult:
    kind: str  # "spectrum" | "m_spectrum"
    exact_points: tuple[GScalar, ...]
    numeric_points: tuple[complex, ...]
    contains_zero: bool
    certainty: str  # "exact" | "mixed" | "numeric"
    residual: Poly | None = None
    membership: tuple[Membership, ...] = ()

    def points(self) -> list[complex]:
        """All points as complex floats."""
        return [complex(p) for p in self.exact_points] + list(self.numeric_points)

    def nonzero_exact(self) -> tuple[GScalar, ...]:
        return tuple(p for p in self.exact_points if p)

    def has_nonzero_point(self, tol: float = DEFAULT_TOL) -> bool:
        return bool(self.nonzero_exact()) or any(abs(z) > tol for z in self.numeric_points)

    def is_zero_set(self) -> bool:
        """True when the set is exactly ``{0}`` and that is certain."""
        return self.certainty == "exact" and self.exact_points == (ZERO,)


class SpectralRadii(NamedTuple):
    rho: float
    rho_m: float
    rho_zero_exact: bool
    rho_m_zero_exact: bool


class SupportRestriction(NamedTuple):
    indices: tuple[int, ...]
    submatrix: DenseMatrix
    padded_alpha: tuple[GScalar, ...]


def support_restriction(A: EvolutionAlgebra, a: Element) -> SupportRestriction:
    """Restrict to ``supp(a)`` followed by its first-generation descendants outside it."""
    A._check(a)
    if a.is_zero():
        raise InvalidInputError("support restriction of the zero element")
    G = descent_graph(A)
    head = sorted(a.support)
    tail = sorted(set().union(*(first_generation(G, i) for i in head)) - a.support)
    indices = tuple(head + tail)
    pos = [i - 1 for i in indices]
    sub = A.matrix.submatrix(pos, pos)
    padded = tuple(a.coeffs[i - 1] for i in head) + (ZERO,) * len(tail)
    return SupportRestriction(indices, sub, padded)


def _operator(A: EvolutionAlgebra, a: Element, restrict: bool) -> tuple[DenseMatrix, tuple[GScalar, ...]]:
    """``(L, alpha)`` on the full space or on the support restriction."""
    if restrict and not a.is_zero():
        r = support_restriction(A, a)
        L = r.submatrix @ DenseMatrix.diagonal(r.padded_alpha)
        return L, r.padded_alpha
    return left_mul_matrix(A, a), a.coeffs


def _dedupe_numeric(points: Sequence[complex], tol: float) -> list[complex]:
    kept: list[complex] = []
    for z in points:
        if not any(abs(z - w) <= tol * max(1.0, abs(w)) for w in kept):
            kept.append(z)
    return sorted(kept, key=_complex_key)


def _complex_key(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


def quasi_inverse(A: EvolutionAlgebra, a: Element) -> Element | None:
    """Some ``b`` with ``a + b - ab = 0``, or None when ``a`` is not quasi-invertible."""
    L = left_mul_matrix(A, a)
    sol = solve_linear(L.shifted(ONE), a.coeffs)
    if sol.kind == "inconsistent":
        return None
    return Element(sol.particular)


def m_spectrum(
    A: EvolutionAlgebra,
    a: Element,
    mode: str = "exact",
    tol: float = DEFAULT_TOL,
    restrict: bool = False,
) -> SpectrumResult:
    """Eigenvalues of ``L_a``, plus 0 when ``A`` has no unit.

    ``mode="exact"`` extracts all Gaussian-rational eigenvalues exactly and
    approximates the rest numerically (``certainty="mixed"`` when any remain).
    ``mode="numeric"`` computes every point in floating point.
    """
    if mode not in ("exact", "numeric"):
        raise InvalidInputError(f"unknown mode {mode!r}")
    A._check(a)
    unital = unit_of(A) is not None
    L, _ = _operator(A, a, restrict and not unital)
    p = char_poly(L)
    if mode == "numeric":
        pts = numeric_roots(p, tol)
        if not unital:
            pts.append(0j)
        pts = _dedupe_numeric(pts, tol)
        contains_zero = any(abs(z) <= tol for z in pts)
        return SpectrumResult("m_spectrum", (), tuple(pts), contains_zero, "numeric", None)
    roots, residual = rational_roots(p)
    exact = set(roots)
    if not unital:
        exact.add(ZERO)
    numeric: list[complex] = []
    if residual.degree >= 1:
        numeric = _dedupe_numeric(numeric_roots(residual, tol), tol)
    certainty = "mixed" if numeric else "exact"
    return SpectrumResult(
        "m_spectrum",
        tuple(sorted(exact, key=GScalar.sort_key)),
        tuple(numeric),
        ZERO in exact,
        certainty,
        residual,
    )


def _numeric_in_spectrum(L: DenseMatrix, alpha: Sequence[GScalar], lam: complex, tol: float) -> bool:
    M = np.array(L.to_complex_rows(), dtype=complex) - lam * np.eye(L.rows)
    rhs = np.array([complex(x) for x in alpha], dtype=complex).reshape(-1, 1)
    scale = max(1.0, float(np.linalg.norm(M, 2)), float(np.linalg.norm(rhs)))
    r_m = np.linalg.matrix_rank(M, tol=tol * scale)
    r_aug = np.linalg.matrix_rank(np.hstack([M, rhs]), tol=tol * scale)
    return bool(r_aug > r_m)


def _zero_in_spectrum(A: EvolutionAlgebra, a: Element) -> bool:
    e = unit_of(A)
    if e is None:
        return True
    # invertible iff a b = e has a solution
    return solve_linear(left_mul_matrix(A, a), e.coeffs).kind == "inconsistent"


def spectrum(
    A: EvolutionAlgebra,
    a: Element,
    mode: str = "exact",
    tol: float = DEFAULT_TOL,
    restrict: bool = False,
    m_result: SpectrumResult | None = None,
) -> SpectrumResult:
    """Spectrum of ``a``, decided point by point among the m-spectrum candidates.

    Outside the eigenvalues of ``L_a`` the shifted system is always solvable,
    so only those candidates need testing.
    """
    unital = unit_of(A) is not None
    m = m_result if m_result is not None else m_spectrum(A, a, mode, tol, restrict)
    L, alpha = _operator(A, a, restrict and not unital)
    membership: list[Membership] = []
    exact: list[GScalar] = []
    numeric: list[complex] = []
    for lam in m.nonzero_exact():
        inside = solve_linear(L.shifted(lam), alpha).kind == "inconsistent"
        membership.append(Membership(lam, inside, "exact"))
        if inside:
            exact.append(lam)
    for z in m.numeric_points:
        if abs(z) <= tol:
            continue
        inside = _numeric_in_spectrum(L, alpha, z, tol)
        membership.append(Membership(z, inside, "numeric"))
        if inside:
            numeric.append(z)
    zero_in = _zero_in_spectrum(A, a)
    if zero_in:
        if m.certainty == "numeric":
            numeric.insert(0, 0j)
        else:
            exact.insert(0, ZERO)
    if m.certainty == "numeric":
        certainty = "numeric"
    else:
        certainty = "mixed" if any(x.method == "numeric" for x in membership) else "exact"
    return SpectrumResult(
        "spectrum",
        tuple(sorted(exact, key=GScalar.sort_key)),
        tuple(sorted(numeric, key=_complex_key)),
        zero_in,
        certainty,
        m.residual,
        tuple(membership),
    )


def spectral_radii(A: EvolutionAlgebra, a: Element, tol: float = DEFAULT_TOL) -> SpectralRadii:
    m = m_spectrum(A, a, "exact", tol)
    s = spectrum(A, a, "exact", tol, m_result=m)
    rho_m = max((abs(z) for z in m.points()), default=0.0)
    rho = max((abs(z) for z in s.points()), default=0.0)
    rho_m_zero = is_nilpotent_matrix(left_mul_matrix(A, a))
    rho_zero = rho_m_zero or (
        m.residual is not None
        and m.residual.degree < 1
        and all(not x.in_spectrum and x.method == "exact" for x in s.membership)
    )
    return SpectralRadii(rho, rho_m, rho_zero, rho_m_zero)


# ------------------------------------------------- nilpotency on a subspace


def _mp_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for mono, c in q.items():
        s = out.get(mono, ZERO) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def _mp_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mono = tuple(x + y for x, y in zip(m1, m2))
            s = out.get(mono, ZERO) + c1 * c2
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def _mp_eval(p: dict, point: Sequence[int]) -> GScalar:
    total = ZERO
    for mono, c in p.items():
        term = c
        for x, e in zip(point, mono):
            if e:
                term = term * (x**e)
        total = total + term
    return total


def _symbolic_char_coeffs(A: EvolutionAlgebra, gens: Sequence[Element]) -> list[dict]:
    """Characteristic-polynomial coefficients of ``L_a`` for ``a = sum t_j g_j``, as polynomials in ``t``.

    Uses the Faddeev-LeVerrier recurrence, which divides only by integers.
    Returns the non-leading coefficients ``c_0 .. c_{n-1}``.
    """
    n, d = A.n, len(gens)
    unit_monos = [tuple(1 if j == k else 0 for j in range(d)) for k in range(d)]
    const = tuple([0] * d)
    # L[r][c] = w_rc * alpha_c(t), alpha_c(t) = sum_j t_j g_j[c]
    L = [[{} for _ in range(n)] for _ in range(n)]
    for c in range(n):
        alpha_c = {unit_monos[j]: g.coeffs[c] for j, g in enumerate(gens) if g.coeffs[c]}
        if not alpha_c:
            continue
        for r, w in A.columns[c]:
            L[r - 1][c] = {m: w * v for m, v in alpha_c.items()}

    def matmul(X):
        out = [[{} for _ in range(n)] for _ in range(n)]
        for r in range(n):
            for k in range(n):
                if not L[r][k]:
                    continue
                for c in range(n):
                    if X[k][c]:
                        out[r][c] = _mp_add(out[r][c], _mp_mul(L[r][k], X[k][c]))
        return out

    coeffs: list[dict] = [{} for _ in range(n + 1)]
    coeffs[n] = {const: ONE}
    Mk = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(1, n + 1):
        Mk = matmul(Mk)
        for i in range(n):
            Mk[i][i] = _mp_add(Mk[i][i], coeffs[n - k + 1])
        LM = matmul(Mk)
        tr: dict = {}
        for i in range(n):
            tr = _mp_add(tr, LM[i][i])
        coeffs[n - k] = {m: -c / k for m, c in tr.items()}
    return coeffs[:n]


class NilpotencyOutcome(NamedTuple):
    status: str  # "nilpotent" | "witness" | "unknown"
    witness: Element | None


def _combine(gens: Sequence[Element], point: Sequence[int]) -> Element:
    n = gens[0].dim
    coeffs = [ZERO] * n
    for t, g in zip(point, gens):
        if t:
            coeffs = [x + t * y for x, y in zip(coeffs, g.coeffs)]
    return Element(tuple(coeffs))


def subspace_m_nilpotency(
    A: EvolutionAlgebra,
    gens: Sequence[Element],
    trials: int = 32,
    rng: random.Random | None = None,
) -> NilpotencyOutcome:
    """Decide whether ``L_a`` is nilpotent for every ``a`` in ``span(gens)``.

    Random integer probes come first (exact arithmetic, magnitude at most
    ``n^2 + 1``); if none finds a non-nilpotent element and the monomial count
    fits the budget, the characteristic-polynomial coefficients are expanded
    symbolically, which settles the question either way.
    """
    rng = rng or random.Random(0)
    if not gens:
        return NilpotencyOutcome("nilpotent", None)
    bound = A.n * A.n + 1
    d = len(gens)
    for _ in range(trials):
        point = [rng.randint(-bound, bound) for _ in range(d)]
        a = _combine(gens, point)
        if not is_nilpotent_matrix(left_mul_matrix(A, a)):
            return NilpotencyOutcome("witness", a)
    if comb(A.n + d, d) > SYMBOLIC_MONOMIAL_BUDGET:
        return NilpotencyOutcome("unknown", None)
    coeffs = _symbolic_char_coeffs(A, gens)
    nonzero = [c for c in coeffs if c]
    if not nonzero:
        return NilpotencyOutcome("nilpotent", None)
    target = nonzero[0]
    degree = max(sum(m) for m in target)
    # a nonzero polynomial of degree k cannot vanish on the whole grid {0..k}^d
    for _ in range(1000):
        point = [rng.randint(-bound, bound) for _ in range(d)]
        if _mp_eval(target, point):
            return NilpotencyOutcome("witness", _combine(gens, point))
    for point in itertools.product(range(degree + 1), repeat=d):
        if _mp_eval(target, point):
            return NilpotencyOutcome("witness", _combine(gens, point))
    raise AssertionError("nonzero polynomial vanished on a full grid")


# ------------------------------------------------------- semisimplicity


class IndexWitness(NamedTuple):
    index: int
    element: Element
    eigenvalue: GScalar | complex
    exact: bool


@dataclass(frozen=True)
class SemisimplicityVerdict:
    """``value`` is one of yes, no, probably_yes, probably_no, undetermined."""

    value: str
    witnesses: tuple[IndexWitness, ...] = ()
    counterexample: tuple[int, IdealDescriptor] | None = None
    notes: tuple[str, ...] = ()

    @property
    def witness(self) -> tuple[int, Element] | None:
        """First per-index witness, when the verdict is affirmative."""
        if self.witnesses and self.counterexample is None:
            w = self.witnesses[0]
            return (w.index, w.element)
        return None

    @property
    def affirmative(self) -> bool:
        return self.value in ("yes", "probably_yes")


def _nonzero_eigenvalue(A: EvolutionAlgebra, a: Element, tol: float) -> tuple[GScalar | complex, bool] | None:
    p = char_poly(left_mul_matrix(A, a))
    if p == Poly.x() ** A.n:
        return None
    roots, residual = rational_roots(p)
    nz = [r for r in roots if r]
    if nz:
        return nz[0], True
    zs = [z for z in numeric_roots(residual, tol) if abs(z) > tol]
    return (zs[0], False) if zs else None


def _degenerate_ideal(A: EvolutionAlgebra, i: int) -> IdealDescriptor:
    # Ann(A) = lin{e_j : e_j^2 = 0} contains e_i, is an ideal, and every L_a vanishes on it
    return coordinate_ideal(A, annihilator(A))


def m_semisimple_check(
    A: EvolutionAlgebra, trials: int = 32, seed: int = 0, tol: float = DEFAULT_TOL
) -> SemisimplicityVerdict:
    """Decide m-semisimplicity index by index over the ideals generated by ``e_i^2``."""
    if trials < 1:
        raise InvalidInputError("trials must be at least 1")
    witnesses: list[IndexWitness] = []
    probable: list[tuple[int, IdealDescriptor]] = []
    for i in A.index_range():
        ideal = square_ideal(A, i)
        if not ideal.generators:
            return SemisimplicityVerdict("no", tuple(witnesses), (i, _degenerate_ideal(A, i)))
        ordered = [A.square(i)] + [g for g in ideal.generators if g != A.square(i)]
        found = None
        for a in ordered:
            ev = _nonzero_eigenvalue(A, a, tol)
            if ev is not None:
                found = IndexWitness(i, a, ev[0], ev[1])
                break
        if found is None:
            outcome = subspace_m_nilpotency(A, ideal.generators, trials, random.Random(f"{seed}:{i}"))
            if outcome.status == "nilpotent":
                return SemisimplicityVerdict("no", tuple(witnesses), (i, ideal))
            if outcome.status == "unknown":
                probable.append((i, ideal))
                continue
            ev = _nonzero_eigenvalue(A, outcome.witness, tol)
            found = IndexWitness(i, outcome.witness, ev[0], ev[1])
        witnesses.append(found)
    if probable:
        return SemisimplicityVerdict(
            "probably_no", tuple(witnesses), probable[0],
            ("no non-nilpotent element found in the ideal; symbolic budget exceeded",),
        )
    return SemisimplicityVerdict("yes", tuple(witnesses))


def spectrally_semisimple_check(
    A: EvolutionAlgebra, trials: int = 32, seed: int = 0, tol: float = DEFAULT_TOL
) -> SemisimplicityVerdict:
    """Search each ideal generated by ``e_i^2`` for an element whose spectrum is not ``{0}``."""
    if trials < 1:
        raise InvalidInputError("trials must be at least 1")
    witnesses: list[IndexWitness] = []
    open_indexes: list[tuple[int, IdealDescriptor]] = []
    numeric_only = False
    for i in A.index_range():
        ideal = square_ideal(A, i)
        if not ideal.generators:
            return SemisimplicityVerdict("no", tuple(witnesses), (i, _degenerate_ideal(A, i)))
        rng = random.Random(f"{seed}:{i}")
        bound = A.n * A.n + 1
        candidates = [A.square(i)] + [g for g in ideal.generators if g != A.square(i)]
        candidates += [
            _combine(ideal.generators, [rng.randint(-bound, bound) for _ in ideal.generators])
            for _ in range(trials)
        ]
        exact_hit = numeric_hit = None
        for a in candidates:
            if a.is_zero():
                continue
            s = spectrum(A, a, "exact", tol)
            nz = s.nonzero_exact()
            if nz:
                exact_hit = IndexWitness(i, a, nz[0], True)
                break
            if numeric_hit is None:
                zs = [z for z in s.numeric_points if abs(z) > tol]
                if zs:
                    numeric_hit = IndexWitness(i, a, zs[0], False)
        if exact_hit is not None:
            witnesses.append(exact_hit)
            continue
        if numeric_hit is not None:
            witnesses.append(numeric_hit)
            numeric_only = True
            continue
        outcome = subspace_m_nilpotency(A, ideal.generators, trials, rng)
        if outcome.status == "nilpotent":
            return SemisimplicityVerdict("no", tuple(witnesses), (i, ideal))
        open_indexes.append((i, ideal))
    if open_indexes:
        return SemisimplicityVerdict(
            "undetermined", tuple(witnesses), open_indexes[0],
            ("no element with nonzero spectrum found in the ideal",),
        )
    if numeric_only:
        return SemisimplicityVerdict(
            "probably_yes", tuple(witnesses), None, ("some witnesses rely on numeric membership",)
        )
    return SemisimplicityVerdict("yes", tuple(witnesses))
