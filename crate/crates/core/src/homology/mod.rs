//! Integral simplicial homology: normalized chains, Smith normal form,
//! induced maps, components and Euler characteristics.

mod chain;
mod groups;
mod matrix;
mod snf;

pub use chain::{chain_complex, chain_map, ChainComplex};
pub use groups::{
    euler_characteristic, homology, induced_homology, induced_map, pi0, pi0_bijection, Components,
    EulerCharacteristic, GroupMap, HomologyGroup, HomologyProfile, InducedMap,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, solve_integral, SmithForm};
