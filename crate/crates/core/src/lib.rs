//! Exact and certified machinery for Thue inequalities `|F(x, y)| <= h` over
//! lacunary binary forms.
//!
//! The crate is `no_std` and only needs `alloc`. Every quantity that gates a
//! decision (hull vertices, discriminants, Vandermonde determinants) is computed
//! with arbitrary-precision integers; every transcendental comparison goes
//! through outward-rounded [`Interval`]s and reports ambiguity instead of
//! guessing.
//!
//! Module map:
//!
//! * [`forms`]: sparse binary forms, evaluation, height, sparsity functionals.
//! * [`polygon`]: the Archimedean Newton polygon and per-root slope indices.
//! * [`roots`]: certified complex roots, Mahler measure, discriminant, root
//!   distances and amplifier subsets.
//! * [`determinants`]: falling factorials, Vandermonde-type determinants and
//!   large-derivative witnesses.
//! * [`bounds`]: log-space constants and solution-height thresholds.
//! * [`census`]: solution enumeration, classification and verification checks.
//! * [`analysis`]: all of the above for one `(F, h)`, plus the precision ladder.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod bounds;
pub mod census;
pub mod determinants;
pub mod dyadic;
mod error;
pub mod forms;
pub mod interval;
pub mod linalg;
pub mod poly;
pub mod polygon;
pub mod roots;

pub use analysis::{Analysis, AnalysisParams};
pub use bounds::{SiegelParameters, ThresholdSet};
pub use census::{SolutionCensus, SolutionClass, SolutionRecord};
pub use dyadic::{DyComplex, Dyadic};
pub use error::Error;
pub use forms::{FormError, SparseForm, SparsityProfile};
pub use interval::Interval;
pub use polygon::{NewtonPolygon, RootPolygonIndices};
pub use roots::{AmplifierSubset, RootSet};

/// Default starting precision (bits) for certified root disks.
pub const DEFAULT_PRECISION: u32 = 96;

/// Default precision ceiling (bits) for the retry ladder.
pub const DEFAULT_PRECISION_CEILING: u32 = 2048;
