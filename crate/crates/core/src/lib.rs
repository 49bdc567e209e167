//! Finite-scale true-stage relations and the constructions built on them:
//! ordinal notations, relativized jumps, the level relations `⪯_α`,
//! Hausdorff–Kuratowski conversions, Wadge decompositions and the
//! separation game.

pub mod error;
pub mod hierarchy;
pub mod jump;
pub mod lsr;
pub mod ordinal;
pub mod seq;
pub mod stages;
pub mod verify;
pub mod wadge;

pub use error::{Error, Result};
pub use hierarchy::{ApproxFn, DifferenceFamily, UpsetRep, WitnessFn};
pub use jump::{DefaultOperator, EnumerationOperator, JumpTrace, ReversedOperator};
pub use lsr::{GameInstance, PairTree, Position};
pub use ordinal::{enum_copy, parse_ordinal, ComputableCopy, Ordinal};
pub use seq::{FinSeq, Universe};
pub use stages::{GuessString, StageConfig, TrueStageSystem};
pub use verify::{ts_verify, PropertyReport, VerifyOptions};
pub use wadge::DecompositionTree;
