//! Exact wall-and-chamber computations for tilt and Bridgeland stability on
//! projective three-space.
//!
//! Everything in the algebraic core is an exact rational; floating point only
//! appears when tracing a Bridgeland wall along a path and when drawing.

pub mod bridgeland;
pub mod chern;
pub mod destabilizers;
pub mod error;
pub mod fixtures;
pub mod inequalities;
pub mod ledger;
pub mod poly;
pub mod rational;
pub mod report;
pub mod slopes;
pub mod svg;
pub mod walls;

pub use bridgeland::{bridgeland_wall, crossing_order, BridgelandWallCurve, CrossingOrder, PathDirection, PathSpec};
pub use chern::{ChernCharacter, TruncatedChern};
pub use destabilizers::{
    candidates_on_ray, classify, corollary_pairs, resolve_ch3, tilt_walls, DestabilizerCandidate,
    GeometricLabel, ResolvedPair, Side, TiltWallOptions, TiltWalls,
};
pub use error::{Error, Result};
pub use fixtures::Fixtures;
pub use inequalities::{bmt_region, bmt_value, q_tilt, BmtRegion, RegionShape};
pub use ledger::{
    cone_duality_check, euler_char, euler_pairing, expected_dim, ext_estimate, extension_locus_dim,
};
pub use rational::{format_rational, parse_rational, Rational};
pub use report::{ChamberOptions, ChamberReport, WallReportJson};
pub use slopes::{
    central_charge, in_pv, lambda, mu, nu, CentralChargeValue, ExtendedRational, TiltPoint,
};
pub use walls::{
    hyperbola, numerical_wall, vertical_wall, wall_top, walls_identical, Hyperbola, NumericalWall,
    WallKind,
};
