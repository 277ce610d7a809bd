//! Ribaucour transformations in the projective light-cone model of
//! Möbius geometry.
//!
//! The crate realizes, numerically, a family of constructions on curves
//! and circular nets: dimension reduction onto a fixed sphere, commuting
//! double reductions (Ribaucour coordinates), interpolation between two
//! curves through a chain of transforms, and channel-surface smoothing of
//! semi-discrete nets.
//!
//! Modules, bottom up:
//!
//! * [`lorentz`] — Minkowski linear algebra of R^{n+1,1}: lifts, Gram
//!   signatures, subspaces, null directions.
//! * [`incidence`] — spheres, planes, circles and their intersections.
//! * [`discrete`] — discrete curves and circular nets: transforms onto a
//!   sphere, Miguel consistency, interpolation, Ribaucour coordinates.
//! * [`smooth`] — sampled smooth curves: parallel normal transport,
//!   enveloped sphere congruences, algebraic reduction, permutability.
//! * [`channel`] — channel-surface strips and C¹ smoothing of
//!   semi-discrete nets.

pub mod channel;
pub mod discrete;
pub mod error;
pub mod incidence;
pub mod lorentz;
pub mod smooth;

pub use channel::QuadStrip;
pub use discrete::{CircularNet, DiscreteCurve, InitialSquare};
pub use error::{GeomError, Result};
pub use incidence::SphereVec;
pub use lorentz::{LorentzMap, LorentzVec, SphereSubspace, Tol};
pub use smooth::{FramedCurve, SphereCongruence};
