//! Semi-invariants of `V ⊗ W ⊗ U` under `gl(n)` and their 6j-symbols.

pub mod action;
pub mod error;
pub mod exec;
pub mod index;
pub mod poly;
pub mod seminv;
pub mod sixj;
pub mod weyl;

pub use action::{act_root, check_semi_invariant, weight_of, SemiInvariance, Weight};
pub use error::{Error, Result};
pub use exec::Exec;
pub use index::{normalize, IndexSet, Letter, Symbol};
pub use poly::{apply_diff, format_rational, pairing, Monomial, Rational, SparsePoly, Variable, ZVar};
pub use seminv::{
    chain_assign, expand, expand_with, infer_weights, parse_expr, support_lattice, BracketSpec, Diagnostic,
    Expansion, SupportLattice,
};
pub use sixj::{build_problem, selection_set, sixj_oracle, sixj_value, SelectionSet, SixJProblem};
pub use weyl::{expand_determinant, membership_check, young_overlay, YoungTableau};
