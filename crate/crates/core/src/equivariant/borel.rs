use super::{join_resolution, CochainMap, EquivariantData, EquivariantError, JoinResolution};
use crate::complexes::TwistedComplex;
use crate::config::Config;
use crate::exactalg::{rat, CohomologyJumps, LaurentPolynomial, RankEngine, RationalFunctionMatrix};

/// The complex of `G`-equivariant maps from chains of a free resolution to
/// twisted cochains of the space, `C^n = ⊕_{p+q=n} Hom_G(C_p(E), C^q(M))`,
/// with differential `D f = δ f + (-1)^q f ∂`.
///
/// An equivariant map is determined by its values on orbit
/// representatives of `E`, so each `(p, q)` block has one copy of
/// `C^q(M)` per `p`-simplex orbit.
#[derive(Debug, Clone)]
pub struct BorelComplex {
    complex: TwistedComplex,
    join_count: usize,
}

impl BorelComplex {
    pub fn complex(&self) -> &TwistedComplex {
        &self.complex
    }

    pub fn join_count(&self) -> usize {
        self.join_count
    }

    /// Highest degree whose cohomology is the equivariant cohomology, or
    /// `None` when the resolution is too short to certify any degree.
    pub fn valid_degree_max(&self) -> Option<usize> {
        self.join_count.checked_sub(3)
    }

    /// Generic dimensions in the valid degrees.
    pub fn betti_numbers(&self, engine: &dyn RankEngine) -> Vec<usize> {
        let valid = self.valid_degree_max().map_or(0, |v| v + 1);
        let mut dims = self.complex.betti_numbers(engine);
        dims.truncate(valid);
        dims
    }

    pub fn jumps(&self, degree: usize) -> CohomologyJumps {
        self.complex.jumps(degree)
    }
}

/// Total dimension `Σ_k dim C^k` of the Borel complex through cochain
/// degree `top`, without building it.
pub fn borel_dimension(resolution: &JoinResolution, data: &EquivariantData, top: usize) -> usize {
    borel_dims(resolution, data, top).into_iter().fold(0usize, usize::saturating_add)
}

fn blocks(resolution: &JoinResolution, data: &EquivariantData, degree: usize) -> Vec<(usize, usize, usize)> {
    // (p, q, offset)
    let mdims = data.twisted().dims();
    let mut offset = 0;
    let mut out = Vec::new();
    for p in 0..=degree {
        let q = degree - p;
        if q >= mdims.len() || p >= resolution.join_count() {
            continue;
        }
        out.push((p, q, offset));
        offset += resolution.orbit_count(p) * mdims[q];
    }
    out
}

fn borel_dims(resolution: &JoinResolution, data: &EquivariantData, top: usize) -> Vec<usize> {
    let mdims = data.twisted().dims();
    (0..=top)
        .map(|k| {
            blocks(resolution, data, k)
                .iter()
                .map(|&(p, q, _)| resolution.orbit_count(p) * mdims[q])
                .sum()
        })
        .collect()
}

/// Builds the Borel complex through cochain degree `acyclicity(E)`; its
/// cohomology is the equivariant cohomology in degrees below that.
pub fn borel_complex(
    resolution: &JoinResolution,
    data: &EquivariantData,
    limit: usize,
) -> Result<BorelComplex, EquivariantError> {
    let top = resolution.acyclicity();
    let required = borel_dimension(resolution, data, top);
    if required > limit {
        return Err(EquivariantError::ResourceLimit {
            required,
            limit,
        });
    }
    let group = data.group();
    let mdims = data.twisted().dims().to_vec();
    let actions: Vec<Vec<CochainMap>> = group
        .elements()
        .map(|g| (0..mdims.len()).map(|q| data.cochain_action(g, q)).collect())
        .collect();
    let reps: Vec<_> = (0..=top).map(|p| resolution.orbit_representatives(p)).collect();
    let rep_index: Vec<_> = (0..=top).map(|p| resolution.representative_index(p)).collect();
    let dims = borel_dims(resolution, data, top);
    let mut differentials = Vec::with_capacity(top);
    for k in 0..top {
        let mut d = RationalFunctionMatrix::zeros(dims[k + 1], dims[k]);
        let target_blocks = blocks(resolution, data, k + 1);
        let target_offset = |p: usize, q: usize| {
            target_blocks
                .iter()
                .find(|b| b.0 == p && b.1 == q)
                .map(|b| b.2)
        };
        for (p, q, col0) in blocks(resolution, data, k) {
            // δ on each representative's value.
            if let (Some(delta), Some(row0)) = (data.twisted().differential(q), target_offset(p, q + 1)) {
                for r in 0..reps[p].len() {
                    d.add_block(row0 + r * mdims[q + 1], col0 + r * mdims[q], delta);
                }
            }
            // (-1)^q f ∂ on each (p+1)-representative, faces pulled back to
            // representatives through the group action.
            if let Some(row0) = target_offset(p + 1, q) {
                for (t, tau) in reps[p + 1].iter().enumerate() {
                    for j in 0..tau.len() {
                        let face: Vec<_> = tau.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
                        let (h, rep) = resolution.normalize(&face);
                        let r = rep_index[p][&rep];
                        let sign = if (q + j) % 2 == 0 { 1 } else { -1 };
                        actions[h][q].add_into(
                            &mut d,
                            row0 + t * mdims[q],
                            col0 + r * mdims[q],
                            &LaurentPolynomial::constant(rat(sign)),
                        );
                    }
                }
            }
        }
        differentials.push(d);
    }
    Ok(BorelComplex {
        complex: TwistedComplex::from_differentials(dims, differentials)?
            .with_exponent_scale(data.twisted().exponent_scale().clone()),
        join_count: resolution.join_count(),
    })
}

/// Generic equivariant cohomology dimensions in degrees `0..=i_max`, from a
/// resolution of acyclicity `i_max + 1`.
pub fn equivariant_dims(data: &EquivariantData, i_max: usize, config: &Config) -> Result<Vec<usize>, EquivariantError> {
    let dims = dims_at_acyclicity(data, i_max, i_max + 1, config)?;
    if config.verify_stability {
        let again = dims_at_acyclicity(data, i_max, i_max + 2, config)?;
        if again != dims {
            return Err(EquivariantError::StabilityViolation {
                first: (i_max + 1, dims),
                second: (i_max + 2, again),
            });
        }
    }
    Ok(dims)
}

fn dims_at_acyclicity(
    data: &EquivariantData,
    i_max: usize,
    acyclicity: usize,
    config: &Config,
) -> Result<Vec<usize>, EquivariantError> {
    let resolution = join_resolution(data.group(), acyclicity);
    let borel = borel_complex(&resolution, data, config.dimension_limit)?;
    let mut dims = borel.betti_numbers(config.engine.as_ref());
    dims.truncate(i_max + 1);
    Ok(dims)
}

/// Dimensions in degrees `0..=degree` agree for resolutions of acyclicity
/// `n1` and `n2`, both at least `degree + 1`.
pub fn stability_check(
    data: &EquivariantData,
    degree: usize,
    n1: usize,
    n2: usize,
    config: &Config,
) -> Result<Vec<usize>, EquivariantError> {
    if n1 < degree + 1 || n2 < degree + 1 {
        return Err(EquivariantError::InsufficientAcyclicity {
            degree,
            acyclicity: n1.min(n2),
        });
    }
    let first = dims_at_acyclicity(data, degree, n1, config)?;
    if n1 == n2 {
        return Ok(first);
    }
    let second = dims_at_acyclicity(data, degree, n2, config)?;
    if first != second {
        return Err(EquivariantError::StabilityViolation {
            first: (n1, first),
            second: (n2, second),
        });
    }
    Ok(first)
}
