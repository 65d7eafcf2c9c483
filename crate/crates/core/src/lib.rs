//! Exact computations for the parameter-dependent stability of
//! U(p,q)-Hitchin pairs: α-slopes, Toledo invariants, Milnor–Wood bounds,
//! critical values of α with their chambers, and irreducibility
//! certificates.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod certificate;
pub mod error;
pub mod milnor_wood;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod walls;

pub use certificate::{irreducibility_certificate, AlphaWindow, ConditionCheck, IrreducibilityCertificate};
pub use error::{Error, Result};
pub use milnor_wood::{mw_check, rank_bounds, regime_bounds, regime_formula, BoundInterval, MwVerdict, Regime, Side};
pub use model::{
    alpha_slope_quiver, alpha_slope_upq, alpha_to_c_pair, compare_at, slope, toledo, toledo_from_slopes, Arrow,
    GeometryContext, HiggsRankPair, HitchinPairType, ParameterVector, Quiver, QuiverNumericalType, TwistAssignment,
    VertexData,
};
pub use oracle::{brute_force_walls, envelope_bounds, property_driver, SelfTestReport};
pub use rational::{ratio, Rational};
pub use walls::{chamber_report, enumerate_walls, wall_alpha, Chamber, ChamberReport, Wall, WallOptions, WallWitness};
