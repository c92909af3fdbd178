//! Perfect-matching and S-matching polytopes of grids, tori and small simple
//! graphs: exact lattice-point counting, Ehrhart polynomials, h*-vectors and
//! Gorenstein checks.

pub mod bitset;
pub mod budget;
pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod matching;
pub mod paperlab;
pub mod polytope;
pub mod rational;

pub use budget::Budget;
pub use ehrhart::EhrhartProfile;
pub use error::{Error, Result};
pub use graph::{Family, Graph, NeighborGraph, SubsetSpec};
pub use matching::{EdgeVector, Matching};
pub use polytope::{Region, ScalableHRep};
