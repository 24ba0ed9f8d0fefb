//! Finite m-ary groupoids and quasigroups stored as dense Latin-hypercube
//! tables, with the superposition operator `⊙_f`, the Hadamard quasigroup
//! product, isotopy and conjugation, identity checking over terms, and
//! orthogonal sets of operations.
//!
//! Symbols are 0-based in memory and 1-based in every rendered form.
//!
//! ```
//! use mquasi::{load_fixture, lift_operation, OperationIndex};
//!
//! let z2 = load_fixture("z2").unwrap();
//! let lifted = lift_operation(&z2, 2).unwrap();
//! assert_eq!(lifted.carrier_size(), 16);
//! assert!(lifted.operation().is_quasigroup());
//! assert_eq!(z2.canonical_index().unwrap(), OperationIndex(6));
//! ```

pub mod config;
pub mod error;
pub mod hypercube;
pub mod identity;
pub mod io;
pub mod orthogonality;
pub mod superposition;
pub mod terms;
pub mod transforms;

pub use config::{Limits, SearchConfig};
pub use error::{Error, Result};
pub use hypercube::{
    all_operations, make_operation, operation_count, symbols, table_len, tuples, CellSet,
    MultaryOperation, OperationIndex, Symbol,
};
pub use identity::{all_inverses, has_unique_inverses, i_identity_set, identity_set, inverses, IdentityReport};
pub use io::{fixture_names, load_fixture, parse_operation_file, parse_permutation, write_operation_file};
pub use orthogonality::{
    count_quasigroups, enumerate_ort, enumerate_quasigroups, is_orthogonal_set, ort_contains, ort_iter,
    orthogonal_mates, solve_for_f, transversal_family, verify_bijection, BijectionReport, OperationSet,
    TransversalVerdict, TransversalWitness,
};
pub use superposition::{
    constant_map, hadamard_product, is_distributive_over, iterate_hadamard_cycle, iterate_hadamard_cycle_with,
    lift_operation, lift_operation_with, mult_set, mult_set_with, self_superpose, superpose, tri_right,
    tri_symmetric, Distributivity, HadamardCycle, HadamardProduct, LiftedGroupoid,
};
pub use terms::{
    eval_term, eval_term_lifted, lifted_identity_check, lifted_identity_check_with, parse_identity, parse_term,
    satisfies_identity, satisfies_identity_with, IdentityCheck, Term,
};
pub use transforms::{
    apply_isotopism, conjugate, find_isomorphism, find_isomorphism_with_guard, is_isomorphism, post_compose,
    ConjugationPerm, Isotopism, Permutation,
};
