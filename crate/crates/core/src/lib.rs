//! Interval calculus with the generalized Hukuhara difference, and the
//! weak-subdifferential theory built on it: membership tests, exact 1D
//! subdifferential regions, lower-Lipschitz estimates and optimality
//! conditions for interval-valued functions.

pub mod corpus;
pub mod error;
pub mod expr;
pub mod grid;
pub mod interval;
pub mod ivf;
pub mod optimality;
pub mod weak_subdiff;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use interval::{family_inf_sup, DominanceRelation, ElementwiseOp, Interval, IntervalVector};
pub use ivf::{parse_ivf, IntervalFn, Ivf, Piece};
pub use weak_subdiff::{
    EndpointRange, EquivalenceReport, LipschitzReport, Region1D, WeakCandidate,
};
pub use optimality::{
    EfficiencyVerdict, InclusionReport, SumRuleReport, WidthCondition, ZeroOptimality,
};
