//! Finite simplicial sets, fibration certificates, fiber transport and
//! integral homology.

pub mod simplicial;
pub mod homology;
pub mod category;
pub mod lifting;
pub mod corpus;
pub mod verify;
