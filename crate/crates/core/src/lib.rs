//! Exact imprecise-probability computations on finite possibility spaces.
//!
//! Coherent sets of desirable gambles are represented as finitely generated
//! cones, conditional lower previsions are checked for Williams-coherence and
//! extended to all gambles, and two marginal models are combined into their
//! independent natural extension. Every number is an exact rational and
//! every verdict comes out of an exact linear program.

pub mod assessment;
pub mod envelope;
pub mod error;
pub mod instance;
pub mod lp;
pub mod measurable;
pub mod product;
pub mod rational;
pub mod space;
pub mod verify;
pub mod strict;
pub mod cone;
pub mod lowprev;
pub mod sample;

pub use assessment::{AssessmentSet, ConditionalAssessment, ConditioningFamily};
pub use error::{InstanceError, ModelError};
pub use rational::Rational;
pub use space::{indicator, Event, Gamble, ProductSpace, Space};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;
