//! Exact-arithmetic decision procedures for (semi)stability of linear group
//! actions: torus weight-polytope criteria, twisted affine semistability,
//! graded-unipotent semistable loci, and the full stability pipeline for
//! representations of quivers with multiplicities.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere in this crate. The decision procedures
//! bottom out in an exact simplex solver ([`lp`]) and exact Gaussian
//! elimination ([`linalg`]).
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so the whole API can be shared across
//! threads without coordination; sampled checks take an explicit seed.
//!
//! ```
//! use nrgit_core::linalg::QVector;
//! use nrgit_core::torus::{self, TorusRep};
//!
//! // two coordinates with weights (1,0) and (0,1), twisted by (1,1):
//! // a point is semistable exactly when both coordinates are non-zero
//! let rep = TorusRep::from_int_weights(2, &[&[1, 0], &[0, 1]])?;
//! let rho = QVector::from_ints(&[1, 1]);
//! assert!(torus::is_rho_ss(&rep, &QVector::from_ints(&[1, 1]), &rho)?);
//! assert!(!torus::is_rho_ss(&rep, &QVector::from_ints(&[1, 0]), &rho)?);
//!
//! // the twist meets the augmented weight hull at one half, so the least
//! // usable twisting degree is two
//! let degree = torus::halic_min_degree(&rep, &QVector::from_ints(&[1, 1]), &rho)?;
//! assert_eq!(degree, Some(2));
//! # Ok::<(), nrgit_core::Error>(())
//! ```

pub mod borel;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod lp;
pub mod polyhedra;
pub mod quiver;
pub mod rational;
pub mod rng;
pub mod torus;
pub mod truncpoly;

pub use error::{Error, Result};
pub use linalg::{QMatrix, QVector};
pub use rational::Rational;
pub use truncpoly::{AmMatrix, TruncPoly};
