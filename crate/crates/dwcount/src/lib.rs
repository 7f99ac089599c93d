//! Exact invariants of Seifert fibered 3-manifolds for cyclic gauge
//! groups, and counts of based homotopy classes of mappings into the
//! corresponding lens space, per degree class.
//!
//! For a manifold `MO(g; (a_1,b_1), ..., (a_r,b_r))` and the cyclic
//! group of order m, the crate evaluates the invariant table
//! `l -> Z^l(M)` exactly in the cyclotomic ring `(1/D) * Z[zeta_(m^2)]`,
//! then recovers the number of homotopy classes of each mapping degree
//! by exact Fourier inversion over Z/mZ:
//!
//! ```text
//!   #deg^-1(k) = sum_l Z^l(M) * zeta_m^(-kl)
//! ```
//!
//! The counts are nonnegative integers, depend only on k mod m, and sum
//! to the number of homomorphisms from the fundamental group to Z/mZ.
//! Every step is exact; floating point appears only in the optional
//! cross-validation oracle and in cosmetic approximations attached to
//! rendered output.
//!
//! ```
//! use dwcount::{dw_all, degree_count_table, validate_seifert, WorkBudget};
//!
//! let rp3 = validate_seifert(0, &[(1, 2)]).unwrap();
//! let budget = WorkBudget::default();
//!
//! let dw = dw_all(&rp3, 2, &budget).unwrap();
//! assert_eq!(dw.get(0).to_integer().unwrap(), 1.into());
//! assert_eq!(dw.get(1).to_integer().unwrap(), 0.into());
//!
//! let counts = degree_count_table(&rp3, 2, &budget).unwrap();
//! assert_eq!(counts.count(0), &1u32.into());
//! assert_eq!(counts.count(-1), &1u32.into());
//! ```
//!
//! Module map:
//!
//! - [`seifert`]: manifold descriptors, the homology presentation
//!   matrix, Smith normal form, closed-form homomorphism counting
//! - [`cyclotomic`]: exact arithmetic in `(1/D) * Z[zeta_N]`
//! - [`dw`]: evaluation of the invariant table
//! - [`counting`]: degree-class counts and consistency checks
//! - [`oracle`]: independent brute-force and floating-point validation
//! - [`cli`]: command-line frontend (parsing, rendering, batch mode)

pub mod cli;
pub mod counting;
pub mod cyclotomic;
pub mod dw;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod seifert;

pub use counting::{
    check_consistency, degree_count, degree_count_table, degree_count_table_from_dw,
    fourier_forward, verify_consistency, ConsistencyReport, DegreeCountTable,
};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycloValue, ReducedForm};
pub use dw::{
    dw_all, dw_all_collapsed, dw_invariant, dw_invariant_collapsed, inner_factor,
    solve_congruence, CongruenceSolutions, DwVector,
};
pub use error::{Error, ParseError, Result};
pub use limits::WorkBudget;
pub use oracle::{approx_dw_float, brute_count_homs, cross_validate, HomTuple};
pub use seifert::{
    count_homs, presentation_matrix, smith_normal_form, validate_seifert, FiberPair,
    PresentationMatrix, SeifertData, SnfResult,
};
