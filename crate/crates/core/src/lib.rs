//! Exact equilibrium geometry for games with payoff `x*y` to one player and
//! `-x*y` to the other (scaled matching pennies).
//!
//! The crate enumerates extreme Nash and extreme correlated equilibria of the
//! finite games, checks the cycle construction against brute-force vertex
//! enumeration of the correlated-equilibrium polytope, builds the
//! infinite-support rotation equilibrium, and splits measures while keeping
//! finitely many moments fixed.

pub mod ce;
pub mod counting;
pub mod cycle;
pub mod dd;
pub mod ergodic;
pub mod error;
pub mod game;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod moments;
pub mod nash;
pub mod polytope;
pub mod rational;
pub mod svg;
pub mod validate;

pub use ce::{is_ce_definition, is_ce_projection, projections, Integrand, ProjectionPair};
pub use counting::{count_extreme_ce, f_ratio};
pub use cycle::{cycle_measure, enumerate_extreme_ce, CyclePattern};
pub use ergodic::orbit::{rational_orbit_to_cycle, RationalRotation};
pub use ergodic::{
    conditional_mean_residuals, equidistribution_check, rotation_map, sample, support_segments,
    RotationParams,
};
pub use error::{Error, Result};
pub use game::{make_example_game, FiniteGame};
pub use measure::{
    measure_mean, product_measure, FiniteMeasure, MixedStrategy, SignedFiniteMeasure,
};
pub use moments::{
    caratheodory_split, moments_of, non_describability_demo, MomentBasis, MomentVector,
    SplitOutcome,
};
pub use nash::{count_extreme_nash, enumerate_extreme_nash, is_nash, NashPair};
pub use polytope::{ce_hrep, classify_vertices, enumerate_vertices, HPolytope, VertexSet};
pub use rational::Rational;
