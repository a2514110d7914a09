//! Hyperbolic polynomials under the spectral order.
//!
//! A monic real-rooted polynomial is identified with its sorted zero tuple,
//! and two polynomials of the same degree are compared by majorization of
//! those tuples. The crate provides certified majorization checks, chains of
//! zero-transfer contractions, Laguerre–Pólya type differential operators,
//! pencil trajectories, and a seeded harness that exercises all of them.

pub mod api;
pub mod contraction;
pub mod error;
pub mod harness;
pub mod hyperbolic;
pub mod io;
pub mod lp;
pub mod majorization;
pub mod pencil;
pub mod poly;
pub mod roots;
pub mod scalar;

pub use contraction::{
    apply_contraction, decompose_majorization, decompose_perturbed, discrepancy, expand_transfer,
    random_comparable_pair, transfer_chain, ContractionChain, ContractionStep, Decomposition, DEFAULT_STEP_CAP,
};
pub use error::{Error, Result};
pub use hyperbolic::{HyperbolicPoly, RootTuple, StrictnessReport};
pub use lp::{
    appell, approximant, gaussian_op, laguerre_closed_form, laguerre_ms, shift_pencil, DeformationVector, DiffOperator,
    LPFunction, MultiplierSequence,
};
pub use majorization::{
    build_witness, check_majorization, hinge_oracle, matching_distance, schur_eval, ConvexProbeReport,
    DoublyStochasticWitness, MajorizationCertificate, SchurProbe, Verdict,
};
pub use pencil::{pencil_at, pencil_majorization_check, scan_monotonicity, PencilSample};
pub use poly::Poly;
pub use scalar::{Mode, Rational, Scalar};
