"""hjlie: hom-Jordan-Lie algebras over exact rationals.

Structure-constant presentations, axiom and identity verdicts, derivation
and cohomology solvers, and the standard constructions (direct sums,
semidirect products, central / derivation / T*-extensions, Nijenhuis
deformations). All arithmetic is exact; every constructor re-verifies its
postconditions.
"""

from .algebra import (
    AlgebraMorphism,
    AxiomReport,
    DeltaHomAssociative,
    HJLAlgebra,
    Subspace,
    bracket_span,
    check_axioms,
    check_delta_hom_associative,
    commutator_algebra,
    direct_sum,
    graph_subspace,
    is_ideal,
    is_morphism,
    is_subalgebra,
    morphism_violation,
)
from .deformations import (
    check_deformation,
    deformation_cochain,
    deformation_from_nijenhuis,
    is_nijenhuis,
    nijenhuis_bracket,
    trivialization_coefficients,
    verify_trivial_deformation,
)
from .derivations import (
    Derivation,
    derivation_commutator,
    derivation_extension,
    derivation_space,
    inner_derivation,
    is_alpha_k_derivation,
)
from .errors import CheckError, InputError
from .linalg import (
    Matrix,
    Rational,
    Tensor3,
    echelon_basis,
    inverse,
    nullspace,
    qstr,
    rank,
    solve,
)
from .quadratic import (
    BilinearForm,
    DualCochain1,
    DualCochain2,
    QuadraticHJL,
    check_form,
    check_length_bounds,
    cyclic_average,
    is_isotropic,
    is_jordancyclic,
    jordancyclic_cocycle_space,
    reconstruct_from_isotropic_ideal,
    series,
    tstar_cocycle_witness,
    tstar_equivalence,
    tstar_extension,
    tstar_split,
)
from .representations import (
    Cochain1,
    Cochain2,
    Representation,
    adjoint_representation,
    central_extension,
    central_extensions_equivalent,
    check_representation,
    coadjoint_representation,
    cochain1_space,
    cochain2_space,
    cocycle_derivation_match,
    cohomology2,
    d1,
    d2,
    one_cocycle_space,
    semidirect_product,
    trivial_representation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
