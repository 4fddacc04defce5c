//! Construction and verification of complement functions.
//!
//! Given a total `f: {0,1}^a -> {0,1}^n`, a complement is a total
//! `g: {0,1}^b -> {0,1}^n` whose image is exactly the part of the universe
//! `f` never reaches. The crate builds `g` from a mapping table in four
//! independent representations and checks them against each other:
//!
//! * [`newton`]: a univariate polynomial over exact rationals,
//! * [`boolean`]: per-bit DNF, minimized and arithmetized,
//! * [`fourier`]: per-bit multilinear expansion over `{-1,+1}`,
//! * [`iterative`]: an on-demand scan of the universe, plus an unbounded
//!   enumerator for decidable languages.
//!
//! ```
//! use complement_core::{cross_check_backends, FiniteFunction, OrderingPolicy};
//!
//! let f = FiniteFunction::new(1, 2, vec![0, 2]).unwrap();
//! let report = cross_check_backends(&f, OrderingPolicy::Ascending, None).unwrap();
//! assert!(report.passed());
//! ```

pub mod artifact;
pub mod boolean;
pub mod error;
pub mod fourier;
pub mod iterative;
pub mod model;
pub mod newton;
pub mod rational;
pub mod synth;
pub mod verify;

pub use error::{ComplementError, Result};
pub use model::{
    build_mapping, build_mapping_by, check_existence_inequality, choose_domain_bits,
    complement_set, compute_image, EntryKind, FiniteFunction, MappingEntry, MappingTable,
    OrderingPolicy, ValueSet, Word, MAX_BITS,
};
pub use newton::{newton_interpolate, poly_eval, synthesize_newton, DensePolynomial};
pub use rational::Rational;
pub use synth::{synthesize, Backend, Plan, Representation};
pub use verify::{cross_check_backends, verify_complement, VerificationReport};
