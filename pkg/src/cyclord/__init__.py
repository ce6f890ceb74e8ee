"""MV-algebras, good sequences and partially cyclically ordered groups."""
from .kernels import BACKEND
from .mv_core import (
    AxiomReport,
    MvAlgebra,
    Shape,
    StructureError,
    algebra_predicates,
    build_mv,
    check_mv_axioms,
    decompose_product,
    derived_op,
    element_predicates,
    lukasiewicz,
    make_gamma,
    polar,
    product,
    shape_classify,
)
from .good_seq import (
    ChangElement,
    GoodSequence,
    NotComparable,
    chang_element,
    chang_normalize,
    chang_op,
    good_add,
    good_decompose,
    good_sequence,
    good_subtract,
    is_good_sequence,
)
from .pco import (
    FinitePco,
    LatticeQuotientPco,
    NotInACClass,
    UnwoundElement,
    build_pco,
    c_hom_check,
    canonical_mv,
    check_ac_class,
    check_pco_axioms,
    generated_subgroup,
    good_seq_formulas,
    is_co,
    is_lco,
    lq_normalize,
    lq_relation,
    make_cyclic_group,
    make_product_pco,
    non_isolated,
    r_from_order,
    r_tuple,
    unwound_op,
    wound_round,
)
from .model_check import (
    InvariantVector,
    chain_regular,
    co_predicates,
    d_formula,
    d_law,
    eq_invariants,
    invariant_factors,
    pseudo_classify,
    torsion_subgroup,
    zakon_invariant,
)
from .correspondence import (
    IsoWitness,
    chain_from_co,
    chang_of_chain_op,
    co_from_chain,
    iso,
    rieger_check,
    round_trip,
)
from .cli_io import parse_structure, serialize_structure

__all__ = [name for name in dir() if not name.startswith("_")]
