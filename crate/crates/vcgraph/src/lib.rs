//! Set-system machinery for the edge relation on highly regular graph
//! families.
//!
//! The crate builds Johnson graphs `J(m,k)`, Hamming graphs `H(d,q)`, rook's
//! graphs `R(m,n)`, complete graphs, and 1-subdivisions of complete graphs,
//! then studies the set system of (open or closed) vertex neighbourhoods:
//! which vertex sets are shattered, how large a shattered set can get
//! (VC-dimension), and how the shatter function grows.
//!
//! Two kinds of answers are always available and cross-checkable:
//!
//! * closed-form predicates for Johnson and Hamming graphs
//!   ([`johnson`], [`hamming`]) derived from the structure of their
//!   neighbourhoods, and
//! * exhaustive bit-set search over the concrete graph ([`set_system`],
//!   [`search`]), which is the final authority.
//!
//! A small witness bank ([`witness`]) ships explicit shattered sets with a
//! verifiable witness for every subset, and [`density`] measures
//! shatter-function growth against the quadratic bounds these graph families
//! obey.
//!
//! The `vcgraph` binary exposes all of this on the command line; see the
//! `book/` guide for a narrative walk-through.

pub mod bits;
pub mod cli;
pub mod combin;
pub mod density;
pub mod graph;
pub mod hamming;
pub mod johnson;
pub mod report;
pub mod rng;
pub mod search;
pub mod set_system;
pub mod witness;

mod book;

pub use bits::VertexSet;
pub use graph::{DomainLabel, FamilyTag, Graph, GraphError, GraphSpec, SubsetLabel, TupleLabel};
pub use search::{vc_dimension_edge, SearchBudget};
pub use set_system::{
    sauer_shelah_bound, NeighborhoodMode, PiMode, PiRow, SetSystem, ShatterCertificate,
    VcDimension,
};
