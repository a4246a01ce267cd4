//! Exact arithmetic for finite abelian groups, their integral group rings and
//! the lattices `L(A) = (ΔA)^2` inside them.

pub mod basis;
pub mod enumeration;
pub mod error;
pub mod eutaxy;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod rational;
pub mod ring;

pub use basis::{Construction, MinimalBasis};
pub use error::{Error, Result};
pub use eutaxy::{EutaxyCertificate, ExtremalityReport, PerfectionReport, VerificationReport};
pub use group::{AbelianGroup, GroupElement, Subgroup};
pub use lattice::LatticeDescription;
pub use rational::Q;
pub use ring::GroupRingElement;
