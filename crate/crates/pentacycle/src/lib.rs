//! Exact arithmetic pipeline around the genus-2 curve
//! `y^2 = x^6 + 8x^5 + 22x^4 + 22x^3 + 5x^2 + 6x + 1` and the cycle
//! structure of quadratic maps `z^2 + c`.
//!
//! The crate mechanically reproduces a chain of computations: trace and
//! dynatomic polynomials of `z^2 + c`, the birational reduction of the
//! 5-cycle trace curve to a sextic model, Jacobian arithmetic in Mumford
//! form, point counting over small fields, a 2-descent through the sextic
//! algebra `L = Q[T]/(f(T))`, a 3-adic formal-group argument bounding the
//! rational points, an endomorphism-ring analysis, and a bounded-height
//! scan of the 6-cycle trace curve.  Every stage emits a machine-checkable
//! certificate; the `pentacycle` binary exposes each stage as a subcommand.

pub mod exact;

pub mod cert;
pub mod chabauty;
pub mod count;
pub mod cyclesearch;
pub mod descent;
pub mod dynatomic;
pub mod endo;
pub mod jacobian;
pub mod lfield;
pub mod localnum;
pub mod model;
pub mod stages;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial not allowed: {0}")]
    ZeroPolynomial(&'static str),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("exact division left a remainder")]
    InexactDivision,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("points are not conjugate over the base field")]
    NotConjugate,
    #[error("divisor is not good: {0}")]
    BadDivisor(&'static str),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("fixture mismatch: {0}")]
    Fixture(String),
    #[error("p-adic precision exhausted: {0}")]
    Precision(String),
    #[error("strassman bound indeterminate at this precision")]
    StrassmanIndeterminate,
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
