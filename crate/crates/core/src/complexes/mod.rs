//! Simplicial complexes, closed 1-cocycles, flat local systems and the
//! twisted cochain complex.

mod cocycle;
mod local_system;
pub(crate) mod simplicial;
mod twisted;

pub use cocycle::OneCocycle;
pub use local_system::{tensor, LocalSystem};
pub use simplicial::{drop_vertex, SimplicialComplex};
pub use twisted::{
    betti_numbers, euler_characteristic, jump_set, novikov_numbers, novikov_numbers_with,
    twisted_complex, validate, TwistedComplex,
};

use thiserror::Error;

use crate::exactalg::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("simplex {simplex:?} is listed but its face {face:?} is not")]
    MissingFace { simplex: Vec<usize>, face: Vec<usize> },
    #[error("simplex {simplex:?} is not a strictly increasing vertex list")]
    NotIncreasing { simplex: Vec<usize> },
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("no edge between vertices {a} and {b}")]
    UnknownEdge { a: usize, b: usize },
    #[error("cocycle is not closed on {simplex:?} (defect {defect})")]
    NotClosed { simplex: Vec<usize>, defect: ExactRational },
    #[error("local system is not flat on {simplex:?}")]
    NotFlat { simplex: Vec<usize> },
    #[error("transport on edge {edge:?} is not invertible")]
    NotInvertible { edge: Vec<usize> },
    #[error("transport on edge {edge:?} is not {rank}x{rank}")]
    TransportShape { edge: Vec<usize>, rank: usize },
    #[error("data do not match the complex: {0}")]
    ComplexMismatch(String),
    #[error("cocycle values are too large to use as exponents")]
    ExponentOverflow,
    #[error("assembled differentials do not square to zero")]
    NotACochainComplex,
}
