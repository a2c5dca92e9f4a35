//! Bohr and Rogosinski type inequalities for bounded analytic functions.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`series`] holds truncated Taylor expansions of functions in the unit
//!   ball `B` of `H^∞(𝔻)` together with rigorous bounds for the discarded tail.
//! * [`radii`] defines the polynomial equations whose roots in `(0, 1)` are the
//!   sharp radii, and isolates those roots with bracketing certificates.
//! * [`functionals`] evaluates the left-hand sides of the inequalities (the
//!   derivative partial sums and the five Bohr-type sums `A_f … E_f`) and the
//!   closed forms they take on the extremal Möbius families.
//! * [`harness`] samples admissible functions and checks every inequality
//!   below its radius and its failure just above it.

pub mod error;
pub mod functionals;
pub mod harness;
pub mod radii;
pub mod series;

pub use error::{Error, Result};
pub use functionals::{
    functional_a, functional_a_at, functional_b, functional_b_at, functional_c, functional_c_at,
    functional_d, functional_d_at, functional_e, functional_e_at, rogosinski_bound,
    rogosinski_partial, sharpness_gap, FunctionalResult, HarmonicPair,
};
pub use harness::{
    probe_sharpness, sample_bounded_function, verify_family, verify_rogosinski, Check, SampleKind,
    SampleSpec, SharpnessReport, SharpnessRow, VerificationReport,
};
pub use num_complex::Complex64 as Complex;
pub use radii::{
    classical_constants, compute_radius, equation_value, limit_radius, FamilyKind, RadiusFamily,
    RootCertificate, Selection,
};
pub use series::{schwarz_pick_bounds, FamilyTag, Tail, TruncatedSeries, DEFAULT_ORDER};
