use super::{ComplexError, SimplicialComplex};
use crate::exactalg::{rat, RationalMatrix};

/// A flat system of `rank`-dimensional rational fibers over the vertices.
///
/// `transport(e)` for the edge `e = [v0, v1]` maps the fiber at `v1` to the
/// fiber at `v0`. Flatness means `T[v0v1] T[v1v2] = T[v0v2]` on triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSystem {
    rank: usize,
    transports: Vec<RationalMatrix>,
    inverses: Vec<RationalMatrix>,
}

impl LocalSystem {
    pub fn trivial(complex: &SimplicialComplex, rank: usize) -> Self {
        let transports = vec![RationalMatrix::identity(rank); complex.edges().len()];
        Self {
            rank,
            inverses: transports.clone(),
            transports,
        }
    }

    /// Transports indexed like `complex.edges()`. Each must be an invertible
    /// `rank x rank` matrix. Flatness is checked separately by
    /// [`Self::check_flat`].
    pub fn from_transports(
        complex: &SimplicialComplex,
        rank: usize,
        transports: Vec<RationalMatrix>,
    ) -> Result<Self, ComplexError> {
        if transports.len() != complex.edges().len() {
            return Err(ComplexError::ComplexMismatch(format!(
                "{} transports for {} edges",
                transports.len(),
                complex.edges().len()
            )));
        }
        let mut inverses = Vec::with_capacity(transports.len());
        for (i, t) in transports.iter().enumerate() {
            let edge = complex.edges()[i].clone();
            if t.rows() != rank || t.cols() != rank {
                return Err(ComplexError::TransportShape { edge, rank });
            }
            inverses.push(t.inverse().map_err(|_| ComplexError::NotInvertible { edge })?);
        }
        Ok(Self {
            rank,
            transports,
            inverses,
        })
    }

    /// Sets the listed oriented edges `(a, b, T)` where `T` maps fiber(b)
    /// to fiber(a); unlisted edges get the identity.
    pub fn from_edges(
        complex: &SimplicialComplex,
        rank: usize,
        edges: Vec<(usize, usize, RationalMatrix)>,
    ) -> Result<Self, ComplexError> {
        let mut transports = vec![RationalMatrix::identity(rank); complex.edges().len()];
        for (a, b, t) in edges {
            let idx = complex
                .edge_index(a, b)
                .filter(|_| a != b)
                .ok_or(ComplexError::UnknownEdge { a, b })?;
            transports[idx] = if a < b {
                t
            } else {
                t.inverse().map_err(|_| ComplexError::NotInvertible { edge: vec![b, a] })?
            };
        }
        Self::from_transports(complex, rank, transports)
    }

    /// Rank-one system with transports `±1` from the given edge signs.
    pub fn sign(complex: &SimplicialComplex, negative_edges: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let edges = negative_edges
            .iter()
            .map(|&(a, b)| (a, b, RationalMatrix::scalar(rat(-1))))
            .collect();
        Self::from_edges(complex, 1, edges)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edge_count(&self) -> usize {
        self.transports.len()
    }

    pub fn transport(&self, edge: usize) -> &RationalMatrix {
        &self.transports[edge]
    }

    pub fn inverse_transport(&self, edge: usize) -> &RationalMatrix {
        &self.inverses[edge]
    }

    /// Map fiber(b) -> fiber(a) along the edge between them, in either
    /// orientation.
    pub fn oriented(&self, complex: &SimplicialComplex, a: usize, b: usize) -> Option<&RationalMatrix> {
        let idx = complex.edge_index(a, b)?;
        Some(if a < b { &self.transports[idx] } else { &self.inverses[idx] })
    }

    pub fn check_flat(&self, complex: &SimplicialComplex) -> Result<(), ComplexError> {
        if self.transports.len() != complex.edges().len() {
            return Err(ComplexError::ComplexMismatch("local system does not match complex".into()));
        }
        for t in complex.simplices(2) {
            let e = |a, b| &self.transports[complex.edge_index(a, b).expect("closed complex")];
            if e(t[0], t[1]).mul(e(t[1], t[2])) != *e(t[0], t[2]) {
                return Err(ComplexError::NotFlat { simplex: t.clone() });
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.transports.iter().all(RationalMatrix::is_identity)
    }
}

/// Fiberwise tensor product; transports are Kronecker products.
pub fn tensor(first: &LocalSystem, second: &LocalSystem) -> Result<LocalSystem, ComplexError> {
    if first.edge_count() != second.edge_count() {
        return Err(ComplexError::ComplexMismatch(format!(
            "local systems over {} and {} edges",
            first.edge_count(),
            second.edge_count()
        )));
    }
    let kron = |a: &[RationalMatrix], b: &[RationalMatrix]| -> Vec<RationalMatrix> {
        a.iter().zip(b).map(|(x, y)| x.kron(y)).collect()
    };
    Ok(LocalSystem {
        rank: first.rank * second.rank,
        transports: kron(&first.transports, &second.transports),
        inverses: kron(&first.inverses, &second.inverses),
    })
}
