import pytest
from hypothesis import given

from evolkit.algebra import (
    BasisCandidate,
    Element,
    EvolutionAlgebra,
    annihilator,
    bases_related,
    element_power,
    is_nondegenerate,
    is_nonzero_trivial,
    left_mul_matrix,
    product,
    unit_of,
    unitization_is_evolution,
    verify_natural_basis,
)
from evolkit.descent import descent_graph, first_generation
from evolkit.errors import InvalidInputError
from evolkit.exactla import DenseMatrix
from evolkit.gscalar import ZERO, gs
from strategies import algebra_with_elements, algebras

RADICAL_2X2 = EvolutionAlgebra.from_matrix([["-1/2", "3/4"], ["-1/3", "1/2"]])
KE1 = EvolutionAlgebra.from_matrix([[1, 1], [0, 1]])
SWAP = EvolutionAlgebra.from_matrix([[0, 1], [1, 0]])


def el(*cs):
    return Element(tuple(gs(c) for c in cs))


def test_product_worked_example():
    a, b = el(3, 2), el(2, "4/3")
    assert product(RADICAL_2X2, a, b) == el(-1, "-2/3")


def test_basis_orthogonal():
    for i in range(1, 3):
        for j in range(1, 3):
            p = product(RADICAL_2X2, RADICAL_2X2.basis(i), RADICAL_2X2.basis(j))
            assert p.is_zero() == (i != j)


def test_e1_squared():
    assert product(KE1, KE1.basis(1), KE1.basis(1)) == el(1, 0)


def test_product_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        product(KE1, el(1, 0), el(1, 0, 0))


def test_left_mul_examples():
    assert left_mul_matrix(RADICAL_2X2, el(0, 0)).is_zero()
    assert left_mul_matrix(RADICAL_2X2, RADICAL_2X2.square(1)) == DenseMatrix.from_rows(
        [["1/4", "-1/4"], ["1/6", "-1/6"]]
    )
    D = EvolutionAlgebra.diagonal([2, "-1/3", 5])
    assert left_mul_matrix(D, el(1, 3, "1/5")) == DenseMatrix.diagonal([2, -1, 1])


@given(algebra_with_elements(count=3))
def test_product_bilinear_commutative(data):
    A, a, b, c = data
    assert product(A, a, b) == product(A, b, a)
    assert product(A, a + b, c) == product(A, a, c) + product(A, b, c)
    assert product(A, a * gs("3/2"), b) == product(A, a, b) * gs("3/2")


@given(algebra_with_elements(count=2))
def test_product_matches_operator(data):
    A, a, b = data
    assert product(A, a, b).coeffs == left_mul_matrix(A, a) @ b.coeffs


@given(algebra_with_elements(count=2))
def test_product_support_in_first_generation(data):
    A, a, b = data
    G = descent_graph(A)
    allowed = set().union(*(first_generation(G, i) for i in a.support & b.support))
    assert product(A, a, b).support <= allowed


def test_powers_in_swap_algebra():
    e1, e2 = SWAP.basis(1), SWAP.basis(2)
    assert element_power(SWAP, e1, 2) == e2
    assert element_power(SWAP, e1, 3).is_zero()
    for k in range(2, 7):
        assert element_power(SWAP, e1 + e2, k) == e1 + e2
    assert element_power(SWAP, e1, 1) == e1
    with pytest.raises(InvalidInputError):
        element_power(SWAP, e1, 0)


@given(algebra_with_elements(count=1, n_max=4))
def test_power_krylov_bound(data):
    A, a = data
    L = left_mul_matrix(A, a)
    n = A.n
    # brute force: walk the power chain up to 2n
    chain_hits_zero = any(element_power(A, a, k).is_zero() for k in range(1, 2 * n + 1))
    assert element_power(A, a, n + 1).is_zero() == (not any((L ** n) @ a.coeffs))
    assert chain_hits_zero == element_power(A, a, n + 1).is_zero()


def test_unit_examples():
    assert unit_of(EvolutionAlgebra.diagonal([2, 4])) == el("1/2", "1/4")
    assert unit_of(KE1) is None
    assert unit_of(EvolutionAlgebra.from_matrix([[0, 0], [0, 0]])) is None


@given(algebra_with_elements(count=1))
def test_unit_acts_as_identity(data):
    A, a = data
    e = unit_of(A)
    if e is not None:
        assert product(A, a, e) == a


def test_annihilator():
    assert annihilator(EvolutionAlgebra.from_matrix([[0, 0], [0, 1]])) == {1}
    assert annihilator(EvolutionAlgebra.diagonal([1, 1])) == frozenset()
    assert annihilator(EvolutionAlgebra.from_matrix([[0] * 3] * 3)) == {1, 2, 3}
    assert not is_nondegenerate(EvolutionAlgebra.from_matrix([[0, 0], [0, 1]]))


def test_trivial_predicates():
    assert is_nonzero_trivial(EvolutionAlgebra.diagonal([1, -2, "1/3"]))
    assert not is_nonzero_trivial(EvolutionAlgebra.from_matrix([[0, 0], [0, 1]]))
    assert not is_nonzero_trivial(KE1)
    assert unitization_is_evolution(EvolutionAlgebra.diagonal([1, 1]))
    assert not unitization_is_evolution(KE1)
    assert not unitization_is_evolution(EvolutionAlgebra.from_matrix([[0, 0], [0, 0]]))


def test_natural_bases():
    diago = EvolutionAlgebra.from_matrix([[0, 0], [0, 1]])
    ref = BasisCandidate((diago.basis(1), diago.basis(2)))
    other = BasisCandidate((el(1, 0), el(1, 1)))
    assert verify_natural_basis(diago, ref)
    assert verify_natural_basis(diago, other)
    assert not verify_natural_basis(diago, BasisCandidate((el(1, 0), el(1, 0))))
    assert not bases_related(ref, other)


def test_related_bases():
    ref = BasisCandidate((el(1, 0), el(0, 1)))
    assert bases_related(ref, BasisCandidate((el(0, 2), el(2, 0))))
    alt = BasisCandidate((el(1, 1), el(1, -1)))
    # (e1 + e2)(e1 - e2) = e1^2 - e2^2, which vanishes for e2^2 = e1 but not for e2^2 = -e1
    assert verify_natural_basis(EvolutionAlgebra.from_matrix([[1, 1], [0, 0]]), alt)
    assert not verify_natural_basis(EvolutionAlgebra.from_matrix([[1, -1], [0, 0]]), alt)
    assert not bases_related(ref, alt)
    with pytest.raises(InvalidInputError):
        bases_related(ref, BasisCandidate((el(1, 1), el(2, 2))))


@given(algebras())
def test_reference_basis_is_natural(A):
    assert verify_natural_basis(A, BasisCandidate(tuple(A.basis(i) for i in A.index_range())))


def test_construction_validation():
    with pytest.raises(InvalidInputError):
        EvolutionAlgebra.from_matrix([[1, 2]])
    with pytest.raises(InvalidInputError):
        EvolutionAlgebra(2, (((3, gs(1)),), ()))
    with pytest.raises(InvalidInputError):
        EvolutionAlgebra(1, (((1, gs(1)), (1, gs(2))),))
    with pytest.raises(InvalidInputError):
        EvolutionAlgebra(0, ())
    A = EvolutionAlgebra(2, (((2, gs(3)), (1, ZERO)), ()))
    assert A.columns == (((2, gs(3)),), ())


def test_element_rendering():
    assert str(el(-1, "-2/3")) == "-e1 - 2/3*e2"
    assert str(el(0, 0)) == "0"
