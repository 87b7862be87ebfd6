//! Exact higher commuting probabilities `P_r(G)`, higher class numbers
//! `kappa_r(G)`, and the finite Dirichlet spectrum of small finite groups.

pub mod arith;
pub mod corpus;
pub mod counting;
pub mod error;
pub mod group;
pub mod lattice;
pub mod spectrum;
pub mod split;

pub use error::{Error, ErrorClass, Result};
