//! Exact homology of Koszul complexes for modules of projective dimension
//! one over graded polynomial rings.
//!
//! Layers, bottom-up: [`polyring`] (coefficients and polynomials),
//! [`linalg`] (dense and sparse matrices over the prime field), [`groebner`]
//! (graded free modules, Gröbner bases, syzygies, resolutions), [`modcore`]
//! (subquotient modules, homology, invariants, the degreewise oracle),
//! [`koszul`] (exterior and symmetric powers, bicomplex, the comparison
//! maps) and [`verify`] (scenario checks). [`scenario`] and [`report`] hold
//! the file formats used by the command-line tool.

pub mod error;
pub mod groebner;
pub mod koszul;
pub mod modcore;
pub mod linalg;
pub mod polyring;
pub mod report;
pub mod scenario;
pub mod verify;

pub use error::{Error, Result};
