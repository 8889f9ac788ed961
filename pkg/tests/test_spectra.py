import random

import pytest
from hypothesis import given

from evolkit.algebra import Element, EvolutionAlgebra, element_power, left_mul_matrix, product, unit_of
from evolkit.errors import InvalidInputError
from evolkit.exactla import char_poly, is_nilpotent_matrix
from evolkit.gscalar import ZERO, gs
from evolkit.radical import jacobson_radical
from evolkit.sampling import (
    RandomAlgebraConfig,
    random_algebra,
    random_element,
    rational_spectrum_instance,
)
from evolkit.spectra import (
    _mp_eval,
    _symbolic_char_coeffs,
    m_semisimple_check,
    m_spectrum,
    quasi_inverse,
    spectral_radii,
    spectrally_semisimple_check,
    spectrum,
    subspace_m_nilpotency,
    support_restriction,
)
from conftest import load
from strategies import algebra_with_elements

RADICAL_2X2 = load("radical_2x2.json")
KE1 = load("rad_ke1.json")
SWAP = load("swap2.json")
CHAIN = load("chain3.json")
BLOCK7 = load("block7.json")


def el(*cs):
    return Element(tuple(gs(c) for c in cs))


def pts(*xs):
    return tuple(gs(x) for x in xs)


# ----------------------------------------------------------- quasi-inverse


def test_quasi_inverse_examples():
    assert quasi_inverse(KE1, el(1, 0)) is None
    a = CHAIN.basis(3)  # a^2 = 0
    assert quasi_inverse(CHAIN, a) == -a
    assert quasi_inverse(CHAIN, el(0, 0, 0)) == el(0, 0, 0)


@given(algebra_with_elements())
def test_quasi_inverse_contract(data):
    A, a = data
    b = quasi_inverse(A, a)
    if b is not None:
        assert (a + b - product(A, a, b)).is_zero()


def test_nilpotent_elements_are_quasi_invertible():
    # b = -(a + a^2 + ... + a^(n-1)) for nilpotent a
    a = CHAIN.basis(1)
    assert element_power(CHAIN, a, 4).is_zero()
    b = quasi_inverse(CHAIN, a)
    series = -(element_power(CHAIN, a, 1) + element_power(CHAIN, a, 2) + element_power(CHAIN, a, 3))
    assert (a + b - product(CHAIN, a, b)).is_zero()
    assert (a + series - product(CHAIN, a, series)).is_zero()


# ----------------------------------------------------------------- spectra


def test_square_of_e1():
    a = RADICAL_2X2.square(1)
    assert m_spectrum(RADICAL_2X2, a).exact_points == pts(0, "1/12")
    s = spectrum(RADICAL_2X2, a)
    assert s.exact_points == pts(0, "1/12") and s.certainty == "exact"


def test_element_3_2():
    a = el(3, 2)
    # char poly of [[-3/2, 3/2], [-1, 1]] is x^2 + x/2
    assert char_poly(left_mul_matrix(RADICAL_2X2, a)).coeffs == pts(0, "1/2", 1)
    assert m_spectrum(RADICAL_2X2, a).exact_points == pts("-1/2", 0)
    assert spectrum(RADICAL_2X2, a).exact_points == pts("-1/2", 0)


def test_trivial_algebra_proper_support():
    D = EvolutionAlgebra.diagonal([3, -2])
    a = el(5, 0)
    assert m_spectrum(D, a).exact_points == pts(0, 15)
    assert spectrum(D, a).exact_points == pts(0, 15)
    full = el(5, 1)
    assert spectrum(D, full).exact_points == pts(-2, 15)
    assert not spectrum(D, full).contains_zero


def test_zero_element():
    for A in (RADICAL_2X2, EvolutionAlgebra.diagonal([1, 2])):
        z = Element.zero(A.n)
        assert m_spectrum(A, z).exact_points == pts(0)
        assert spectrum(A, z).exact_points == pts(0)


def test_mixed_certainty():
    A = load("irrational2.json")
    m = m_spectrum(A, el(1, 1))
    assert m.certainty == "mixed" and m.exact_points == pts(0)
    golden = sorted(z.real for z in m.numeric_points)
    assert golden == pytest.approx([(1 - 5 ** 0.5) / 2, (1 + 5 ** 0.5) / 2], abs=1e-12)
    s = spectrum(A, el(1, 1))
    assert all(x.method == "numeric" for x in s.membership)


def test_bad_mode():
    with pytest.raises(InvalidInputError):
        m_spectrum(KE1, el(1, 0), mode="symbolic")


@given(algebra_with_elements())
def test_inclusion_and_zero(data):
    A, a = data
    m, s = m_spectrum(A, a), spectrum(A, a)
    assert set(s.exact_points) <= set(m.exact_points)
    assert s.exact_points or s.numeric_points
    if unit_of(A) is None:
        assert s.contains_zero and m.contains_zero


def test_nonzero_membership_matches_quasi_inverse():
    rng = random.Random(5)
    checked = 0
    for _ in range(150):
        A, a, eig = rational_spectrum_instance(rng, rng.randint(1, 5))
        s = spectrum(A, a)
        for lam in set(eig):
            if not lam:
                continue
            in_sigma = lam in s.exact_points
            assert in_sigma == (quasi_inverse(A, a / lam) is None)
            checked += 1
    assert checked > 100


def test_m_spectrum_recovers_constructed_eigenvalues():
    rng = random.Random(9)
    for _ in range(100):
        A, a, eig = rational_spectrum_instance(rng, rng.randint(1, 6))
        expected = set(eig) | ({ZERO} if unit_of(A) is None else set())
        m = m_spectrum(A, a)
        assert set(m.exact_points) == expected and m.certainty == "exact"


def test_numeric_mode_agrees():
    rng = random.Random(13)
    for _ in range(60):
        A, a, eig = rational_spectrum_instance(rng, rng.randint(1, 6))
        exact = m_spectrum(A, a)
        numeric = m_spectrum(A, a, mode="numeric")
        assert numeric.certainty == "numeric"
        for p in exact.exact_points:
            assert min(abs(complex(p) - z) for z in numeric.numeric_points) < 1e-9


def test_support_restriction_examples():
    r = support_restriction(BLOCK7, BLOCK7.basis(6))
    assert r.indices == (6, 4, 5)
    assert r.submatrix.shape == (3, 3)
    assert r.padded_alpha == pts(1, 0, 0)
    full = el(1, 2)
    assert support_restriction(RADICAL_2X2, full).indices == (1, 2)
    assert support_restriction(CHAIN, CHAIN.basis(1)).indices == (1, 2)
    with pytest.raises(InvalidInputError):
        support_restriction(CHAIN, el(0, 0, 0))


def test_support_restriction_agrees_with_full():
    rng = random.Random(17)
    cfg = RandomAlgebraConfig(n_min=2, n_max=10, density=0.15, diagonal_density=0.5)
    for _ in range(80):
        A = random_algebra(rng, cfg)
        a = random_element(rng, A.n, density=0.3)
        if a.is_zero() or unit_of(A) is not None:
            continue
        for fn in (m_spectrum, spectrum):
            full, restricted = fn(A, a), fn(A, a, restrict=True)
            assert set(full.exact_points) == set(restricted.exact_points)
            assert len(full.numeric_points) == len(restricted.numeric_points)


# -------------------------------------------------------------- radii


def test_spectral_radii_examples():
    r = spectral_radii(SWAP, SWAP.basis(1))
    assert r.rho_m == 0 and r.rho_m_zero_exact and r.rho_zero_exact
    r = spectral_radii(SWAP, el(1, 1))
    assert r.rho_m == 1 and not r.rho_m_zero_exact
    r = spectral_radii(SWAP, el(0, 0))
    assert r.rho == r.rho_m == 0


@given(algebra_with_elements(n_max=5))
def test_radii_order_and_nilpotency(data):
    A, a = data
    r = spectral_radii(A, a)
    assert r.rho <= r.rho_m + 1e-12
    if r.rho_m_zero_exact:
        assert r.rho_m == 0 and r.rho_zero_exact
        assert element_power(A, a, A.n + 1).is_zero()


# ----------------------------------------------------- subspace nilpotency


def test_symbolic_certificate():
    gens = [CHAIN.square(1), CHAIN.square(2)]  # e2, e3
    out = subspace_m_nilpotency(CHAIN, gens, trials=0)
    assert out.status == "nilpotent"
    out = subspace_m_nilpotency(SWAP, [SWAP.basis(1), SWAP.basis(2)], trials=0)
    assert out.status == "witness"
    assert not is_nilpotent_matrix(left_mul_matrix(SWAP, out.witness))


def test_symbolic_coefficients_match_pointwise():
    rng = random.Random(21)
    for _ in range(30):
        A = random_algebra(rng, RandomAlgebraConfig(n_max=4))
        gens = [random_element(rng, A.n) for _ in range(rng.randint(1, 3))]
        coeffs = _symbolic_char_coeffs(A, gens)
        point = [rng.randint(-3, 3) for _ in gens]
        a = Element(tuple(sum((t * g.coeffs[k] for t, g in zip(point, gens)), ZERO) for k in range(A.n)))
        concrete = char_poly(left_mul_matrix(A, a)).coeffs
        assert [_mp_eval(c, point) for c in coeffs] == list(concrete[:-1])


# --------------------------------------------------------- semisimplicity


def test_radical_but_m_semisimple():
    assert jacobson_radical(RADICAL_2X2).classification == "radical"
    v = m_semisimple_check(RADICAL_2X2)
    assert v.value == "yes"
    assert [(w.index, w.eigenvalue) for w in v.witnesses] == [(1, gs("1/12")), (2, gs("-1/8"))]
    assert spectrally_semisimple_check(RADICAL_2X2).value == "yes"


def test_one_dimensional():
    for w in ("1", "-3/2", "i"):
        A = EvolutionAlgebra.diagonal([w])
        assert m_semisimple_check(A).value == "yes"
        assert spectrally_semisimple_check(A).value == "yes"


def test_zero_product_algebra():
    Z = load("zero3.json")
    for check in (m_semisimple_check, spectrally_semisimple_check):
        v = check(Z)
        assert v.value == "no"
        assert v.counterexample[1].support == {1, 2, 3}


def test_trivial_is_spectrally_semisimple():
    assert spectrally_semisimple_check(EvolutionAlgebra.diagonal([1, 1])).value == "yes"


def test_chain_certified_no():
    v = m_semisimple_check(CHAIN)
    assert v.value == "no"
    idx, ideal = v.counterexample
    for g in ideal.generators:
        assert is_nilpotent_matrix(left_mul_matrix(CHAIN, g))


def test_trials_validation():
    with pytest.raises(InvalidInputError):
        m_semisimple_check(KE1, trials=0)


def test_seed_reproducible():
    A = load("swap2.json")
    assert m_semisimple_check(A, seed=3) == m_semisimple_check(A, seed=3)


def test_implication_order_random():
    rng = random.Random(23)
    for _ in range(60):
        A = random_algebra(rng, RandomAlgebraConfig(n_max=5, density=0.3))
        semisimple = jacobson_radical(A).classification == "semisimple"
        spectral = spectrally_semisimple_check(A, trials=8).affirmative
        m = m_semisimple_check(A, trials=8).affirmative
        assert not semisimple or spectral
        assert not spectral or m
