//! Exact computation in φ-deformed shuffle bialgebras over words.
//!
//! Coefficients live in `ℚ(q)`. A [`PhiLaw`] fixes the deformation; the
//! modules build products and coproducts on top of it ([`products`]), the
//! Eulerian projectors ([`projectors`]), the dual bases `Π_w`, `Σ_w`
//! ([`bases`]) and the Schützenberger factorization with local coordinates
//! ([`factorization`]).
//!
//! ```
//! use phishuffle::{products::phi_shuffle, NCPoly, PhiLaw};
//!
//! let law = PhiLaw::q_stuffle();
//! let y1: NCPoly = "y1".parse().unwrap();
//! assert_eq!(phi_shuffle(&law, &y1, &y1).unwrap().to_string(), "q*y2 + 2*y1.y1");
//! ```

pub mod alphabet;
pub mod bases;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod law;
pub mod lawfile;
pub mod linalg;
pub mod poly;
pub mod products;
pub mod projectors;
pub mod scalar;
pub mod text;

pub use alphabet::{Alphabet, Letter, LetterOrder, Word};
pub use error::{Error, Result};
pub use law::{analyze_law, LawReport, PhiLaw, Verdict};
pub use poly::{NCPoly, Tensor, TensorPoly, TruncSeries};
pub use scalar::Scalar;
