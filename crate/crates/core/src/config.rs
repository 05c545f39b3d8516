use std::sync::Arc;

use crate::exactalg::{default_rank_engine, rank_engine, RankEngine};

/// Default cap on the total dimension of an assembled Borel complex.
pub const DEFAULT_DIMENSION_LIMIT: usize = 200_000;

/// Runtime knobs shared by the equivariant pipeline.
#[derive(Debug, Clone)]
pub struct Config {
    pub engine: Arc<dyn RankEngine>,
    pub dimension_limit: usize,
    /// Recompute at a higher acyclicity and compare.
    pub verify_stability: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            engine: default_rank_engine(),
            dimension_limit: DEFAULT_DIMENSION_LIMIT,
            verify_stability: false,
        }
    }
}

impl Config {
    /// Selects a registered rank engine by name.
    pub fn with_engine(mut self, name: &str) -> Option<Self> {
        self.engine = rank_engine(name)?;
        Some(self)
    }

    pub fn with_dimension_limit(mut self, limit: usize) -> Self {
        self.dimension_limit = limit;
        self
    }

    pub fn with_stability_check(mut self, on: bool) -> Self {
        self.verify_stability = on;
        self
    }
}
