//! Exact computations with Leonard pairs over the rationals and odd prime
//! fields: parameter arrays, TD/D sequences, the flat part and bipartite
//! contraction, the low-diameter classifications, primary data of types
//! I, II and III⁺, and near-bipartite contraction and expansion.

pub mod census;
pub mod document;
pub mod field;
pub mod flat;
pub mod matrix;
pub mod nearbip;
pub mod params;
pub mod poly;
pub mod primary;
pub mod sample;
pub mod small;
pub mod verify;

pub use census::{census_d1, census_d2, CensusError, CensusReport};
pub use document::{Document, DocumentError, Payload};
pub use field::{Field, FieldError, Scalar};
pub use flat::{
    bipartite_contraction, bipartite_status_array, bipartite_status_tdd, contraction_condition, flat_part,
    BipartiteStatus, Contraction, ContractionOutcome, FlatError, FlatPart,
};
pub use matrix::{commutator, primitive_idempotents, Matrix, MatrixError, SpectrumReport};
pub use params::{
    affine_transform, parameter_array_relatives, parameter_arrays_from_tdd, realize_matrices,
    tdd_affine, tdd_from_parameter_array, validate_parameter_array, ParameterArray, ParamsError,
    SplitPolynomials, TddSequence, ValidationReport, Violation,
};
pub use nearbip::{
    classify_near_bipartite, contract_dual_q_krawtchouk, contract_krawtchouk, dual_q_contraction_poly,
    expansions_dual_q_krawtchouk, expansions_krawtchouk, krawtchouk_contraction_poly, krawtchouk_mu_prime_sq,
    structure_h, structure_k, ContractError, ExpandError, Expansion, Fallback, NearBipError,
    NearBipartiteClassification, Reason,
};
pub use poly::Polynomial;
pub use primary::{
    check_primary_data, dual_eigenvalue_ratio, dual_q_krawtchouk_conditions, fundamental_type, is_reinforced,
    krawtchouk_conditions, not_root_of_unity, parameter_array_from_primary_data, phi_products_equal,
    primary_data_from_parameter_array, primary_data_relatives, q_from_beta, reinforced_from_ratio,
    special_type_flags, type_ii_ratio_conditions, FundamentalType, InequalityViolation, PrimaryData, PrimaryError,
    PrimarySeq, SpecialTypeFlags, TypeTag,
};
pub use sample::{Family, SampleError, Sampler, ALL_FAMILIES, MAX_RETRIES};
pub use small::{leonard_d1, leonard_d2, Classification1, Classification2};
pub use verify::{trace_data, verify_leonard_pair, MatrixPair, NotLeonardReason, Role, TraceError, VerificationReport};
