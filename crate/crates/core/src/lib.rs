//! Quasi-exactly solvable sector of the confluent Heun equation.
//!
//! The crate builds the critical polynomials `P_k(q)` whose roots are the
//! algebraic eigenvalues of the confluent Heun operator when `α = -n ε`, the
//! corresponding polynomial eigenfunctions, the changes of variable to the
//! descendant equations (generalized spheroidal, Razavy, Whittaker–Hill,
//! Mathieu), the Schrödinger form of the operator, the orthogonality
//! structures of both the eigenfunctions and the `P_k`, and an application:
//! Demkov's elementary eigenfunctions of the two-center Coulomb problem in
//! two and three dimensions.
//!
//! ```
//! use confluent_heun::cheq::{build_family, spectral_roots, build_solution};
//!
//! // γ = δ = 1, ε = 0, n = 1: P_2(q) = q² - 2q
//! let family = build_family(1.0, 1.0, 0.0, 1);
//! let roots = spectral_roots(&family).unwrap();
//! assert_eq!(roots.as_slice(), &[0.0, 2.0]);
//! let u = build_solution(&family, roots.q(2)).unwrap();
//! assert_eq!(u.shifted_coeffs(), &[1.0, -1.0]);
//! ```

pub mod cheq;
pub mod error;
mod intpoly;
pub mod ortho;
pub mod poly;
pub mod quad;
pub mod reductions;
pub mod scalar;
pub mod sturm;
pub mod twocenter;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/qes.md")]
    mod qes {}
    #[doc = include_str!("../../../book/src/solutions.md")]
    mod solutions {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/orthogonality.md")]
    mod orthogonality {}
    #[doc = include_str!("../../../book/src/two-center.md")]
    mod two_center {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
