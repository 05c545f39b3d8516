//! Finite group actions, equivariant local systems, join resolutions, the
//! Borel cochain complex and descent to free quotients.

pub(crate) mod action;
mod borel;
mod descent;
mod group;
mod join;

pub use action::{validate_action, CochainMap, EquivariantData, EquivariantLocalSystem, SimplicialAction};
pub use borel::{borel_complex, borel_dimension, equivariant_dims, stability_check, BorelComplex};
pub use descent::{descend_free_quotient, CellFace, EdgeStep, OrbitComplex, QuotientData};
pub use group::FiniteGroup;
pub use join::{join_resolution, JoinResolution, JoinSimplex};

use thiserror::Error;

use crate::complexes::ComplexError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("action is not a homomorphism at ({g}, {h})")]
    NotHomomorphism { g: usize, h: usize },
    #[error("element {element} maps simplex {simplex:?} outside the complex")]
    NotSimplicial { element: usize, simplex: Vec<usize> },
    #[error("element {element} fixes simplex {simplex:?} setwise but not pointwise; hint: subdivide barycentrically")]
    NotAdmissible { element: usize, simplex: Vec<usize> },
    #[error("fiber map of element {element} at vertex {vertex} is not an invertible square matrix of the fiber rank")]
    FiberMapNotInvertible { element: usize, vertex: usize },
    #[error("fiber maps violate A_gh = A_g A_h at g = {g}, h = {h}, vertex {vertex}")]
    CocycleLawViolation { g: usize, h: usize, vertex: usize },
    #[error("fiber maps of element {element} do not intertwine the transport on edge {edge:?}")]
    TransportIncompatible { element: usize, edge: Vec<usize> },
    #[error("cocycle is not invariant under element {element} on edge {edge:?}")]
    CocycleNotInvariant { element: usize, edge: Vec<usize> },
    #[error("action is not free: element {element} fixes vertex {vertex}")]
    ActionNotFree { element: usize, vertex: usize },
    #[error("Borel complex has total dimension {required}, limit is {limit}")]
    ResourceLimit { required: usize, limit: usize },
    #[error("degree {degree} needs acyclicity at least {}, got {acyclicity}", degree + 1)]
    InsufficientAcyclicity { degree: usize, acyclicity: usize },
    #[error("dimensions differ between acyclicity {} ({:?}) and {} ({:?})", first.0, first.1, second.0, second.1)]
    StabilityViolation {
        first: (usize, Vec<usize>),
        second: (usize, Vec<usize>),
    },
}
