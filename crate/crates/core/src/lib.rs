//! Border bases of zero-dimensional polynomial ideals for any admissible
//! order ideal, found as integral points of the order ideal polytope.
//!
//! The pipeline: compute a stable span of the generators in a large enough
//! degree-truncated universe, read off the quotient dimension `d`, build the
//! polytope over `T^n_{<=d-1}`, pick an integral point (fixed, optimized for
//! a preference, or the degrevlex staircase) and extract the border basis by
//! Gaussian elimination with the order ideal columns moved to the right.

pub mod clique;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod order_ideal;
pub mod ordering;
pub mod parse;
pub mod polynomial;
pub mod polytope;
pub mod scalar;
pub mod stable_span;

pub use clique::{
    brute_force_clique, brute_force_max_edges, clique_preference, generate_f_nk, solve_k_clique,
    CliqueOutcome, CliqueSolver, Graph,
};
pub use engine::{
    basis_transformation, basis_transformation_with, bbasis, bbasis_prepared, certificate, choose,
    default_degree_cap, dim_quotient, head, prepare, verify_border_basis, BorderBasis, Check,
    Chooser, Computation, EngineOptions, HeadFunction, Prepared, VerificationReport,
};
pub use error::{Error, Result};
pub use linalg::{canonical_form, gauss_el, rank, CoeffMatrix, ColumnOrder, Echelon};
pub use monomial::{divides, monomials_of_degree, monomials_up_to, Monomial};
pub use order_ideal::{border, is_degree_compatible, is_order_ideal, OrderIdeal};
pub use ordering::{MonomialOrder, OrderingKind, TermOrdering};
pub use parse::{parse_monomial, parse_monomial_list, parse_polynomial};
pub use polynomial::{leading_form, leading_term, Polynomial};
pub use polytope::{
    build_instance, enumerate_admissible, is_admissible, optimize, order_ideal_of_point,
    point_of_order_ideal, separation_oracle, IntegralPoint, PolytopeInstance, Preference,
    SolveOptions, Violation,
};
pub use scalar::{Field, Scalar};
pub use stable_span::{is_l_stabilized, l_stable_span, neighborhood_extension, Universe};
