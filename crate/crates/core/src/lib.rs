//! Conditional independence over discrete variables: exact distributions,
//! entropy set functions, the conditional Ingleton inequalities and an
//! inference engine for CI structures over four variables.

pub mod basic_set;
pub mod catalog;
pub mod dist;
pub mod error;
pub mod inequalities;
pub mod inference;
pub mod pattern;
pub mod report;
pub mod reproduce;
pub mod scalar;
pub mod setfn;
pub mod structure;

pub use basic_set::{BasicSet, SubsetMask};
pub use dist::{JointDistribution, SampleSpace};
pub use error::{Error, Result};
pub use catalog::CatalogEntry;
pub use pattern::{Assignment, Pattern, Slots};
pub use report::{Check, Report};
pub use scalar::{Rational, Scalar};
pub use setfn::{h_xy, CheckWitness, SetFunction};
pub use structure::{expand_to_elementary, CIStructure, ElementaryTriplet, Triplet};
