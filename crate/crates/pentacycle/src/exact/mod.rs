//! Exact arithmetic kernel: big rationals, dense polynomials, bivariate
//! polynomials, resultants, root machinery and small-field linear algebra.

pub mod bipoly;
pub mod field;
pub mod intfactor;
pub mod linalg;
pub mod num;
pub mod orders;
pub mod poly;
pub mod quot;
pub mod roots;

pub use bipoly::BiPoly;
pub use field::{Field, Fp, Fp2, QuadExt};
pub use num::{rat, ratio, Rat};
pub use poly::{Poly, QPoly};
