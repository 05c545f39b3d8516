//! Exact computation of Novikov numbers, twisted equivariant cohomology of
//! finite group actions, and Morse and Novikov counting series.

pub mod complexes;
pub mod config;
pub mod equivariant;
pub mod exactalg;
pub mod morse;
pub mod novikov;
pub mod samples;
pub mod symplectic;

pub use config::Config;

use thiserror::Error;

/// Any failure from the library, one variant per module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] exactalg::AlgebraError),
    #[error(transparent)]
    Complex(#[from] complexes::ComplexError),
    #[error(transparent)]
    Equivariant(#[from] equivariant::EquivariantError),
    #[error(transparent)]
    Novikov(#[from] novikov::NovikovError),
    #[error(transparent)]
    Morse(#[from] morse::MorseError),
    #[error(transparent)]
    Symplectic(#[from] symplectic::SymplecticError),
}
