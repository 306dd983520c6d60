//! Exact-arithmetic workbench for operads presented by binary generators
//! and arity-3 relations.
//!
//! The crate computes multilinear components of free operads, spanning sets
//! of operadic ideals, quotient and associated-graded dimensions, and
//! checks identities and generator substitutions between presentations.

pub mod cli;
pub mod coeff;
pub mod graded;
pub mod linalg;
pub mod morphism;
pub mod presentation;
pub mod proofs;
pub mod spanning;
pub mod term;
pub mod text;
