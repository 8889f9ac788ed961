"""Exact computations on finite-dimensional evolution algebras."""

from .algebra import (
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
from .descent import (
    DescentGraph,
    descendants,
    descendants_of_set,
    descent_graph,
    first_generation,
    nth_generation,
)
from .errors import DocumentError, InvalidInputError, NumericFailureError
from .exactla import (
    DenseMatrix,
    LinearSolution,
    Poly,
    char_poly,
    is_nilpotent_matrix,
    numeric_roots,
    rank,
    rational_roots,
    solve_linear,
)
from .gscalar import GScalar, gs
from .radical import (
    IdealDescriptor,
    RadicalReport,
    ideal_sandwich,
    is_modular_ideal_support,
    is_modular_unit,
    jacobson_radical,
    maximal_modular_ideals,
    modular_indexes,
    quotient_mod_radical,
    square_ideal,
)
from .spectra import (
    SemisimplicityVerdict,
    SpectralRadii,
    SpectrumResult,
    m_semisimple_check,
    m_spectrum,
    quasi_inverse,
    spectral_radii,
    spectrally_semisimple_check,
    spectrum,
    subspace_m_nilpotency,
    support_restriction,
)

__version__ = "0.1.0"
