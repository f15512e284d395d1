//! Thurston's gluing equation and its homogeneous variant over finite
//! commutative rings, with cross-ratio developing maps, PGL(2,R) holonomy
//! and solution transfer along Pachner moves.

pub mod complex;
pub mod cross_ratio;
pub mod developing;
pub mod equations;
pub mod pachner;
pub mod ring;

pub mod cli;

pub use complex::{derive, Derived, Quad, Triangulation};
pub use ring::{Elem, Ring};
