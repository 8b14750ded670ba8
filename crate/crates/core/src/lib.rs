//! Edge ideals of vertex-weighted oriented graphs.
//!
//! The crate builds the edge ideal `I(D) = (x_i x_j^{w_j} : x_i -> x_j)` of
//! a vertex-weighted oriented graph, computes its exact graded Betti table
//! (and from it regularity, projective dimension and depth), and compares
//! the result with closed-form predictions for three families of layered
//! oriented m-partite graphs.
//!
//! * [`monomial`], [`parse`], [`polarize`]: monomial ideal arithmetic.
//! * [`oracle`]: Betti tables through Hochster's formula.
//! * [`digraph`], [`family`]: graphs, edge ideals and family builders.
//! * [`formulas`]: closed-form predictions.
//! * [`harness`]: comparisons, sweeps and the bundled fixture suite.

pub mod digraph;
pub mod error;
pub mod family;
pub mod formulas;
pub mod harness;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod polarize;

pub use digraph::{GraphJson, Vertex, VertexWeightedDigraph};
pub use error::{Error, Result};
pub use family::{build_family, validate, Family, FamilyInstance, MembershipReport, Violation};
pub use formulas::{predict, predict_special, FormulaPrediction, SpecialShape};
pub use monomial::{AmbientRing, Monomial, MonomialIdeal};
pub use oracle::{
    betti_table, hochster_betti, resolve, summarize, BettiReport, BettiTable, Field, OracleConfig,
    ResolutionSummary, Route,
};
pub use parse::{parse_ideal, parse_ideal_in, parse_monomial};
pub use polarize::{polarize, PolarizationMap};
