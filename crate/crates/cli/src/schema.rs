//! Input documents. A problem is one JSON object; rationals are strings
//! `"p/q"` (or integers written as strings), matrices are arrays of rows.

use serde::Deserialize;

use novikov_core::complexes::{LocalSystem, OneCocycle, SimplicialComplex};
use novikov_core::equivariant::{EquivariantData, EquivariantLocalSystem, FiniteGroup, SimplicialAction};
use novikov_core::exactalg::{parse_rational, CountingSeries, ExactRational, RationalMatrix};
use novikov_core::morse::{ComponentModel, ComponentPayload, CriticalComponent};
use novikov_core::symplectic::{FixedComponent, FixedPointData};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub schema_version: u32,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub complex: Option<ComplexSpec>,
    #[serde(default)]
    pub local_system: Option<SystemSpec>,
    #[serde(default)]
    pub cocycle: Option<Vec<EdgeValue>>,
    #[serde(default)]
    pub group: Option<GroupSpec>,
    /// One vertex permutation per group element.
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    /// `fiber_maps[g][v]`; identity when absent.
    #[serde(default)]
    pub fiber_maps: Option<Vec<Vec<Matrix>>>,
    /// Scalar fiber action `g -> χ(g) I`, an alternative to `fiber_maps`.
    #[serde(default)]
    pub fiber_character: Option<Vec<String>>,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default)]
    pub critical_components: Option<Vec<ComponentSpec>>,
    /// A precomputed Novikov series; replaces the computation in `verify`
    /// and is required by `symplectic`.
    #[serde(default)]
    pub novikov_series: Option<Vec<String>>,
    #[serde(default)]
    pub fixed_points: Option<FixedPointSpec>,
    /// Equivariant cohomology dimensions of a Hamiltonian action.
    #[serde(default)]
    pub equivariant_dims: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub vertices: usize,
    /// Maximal simplices; the complex is their closure.
    pub facets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub rank: usize,
    /// Oriented edges `a -> b` with `T` mapping fiber(b) to fiber(a);
    /// unlisted edges carry the identity.
    #[serde(default)]
    pub transports: Vec<EdgeMatrix>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeMatrix {
    pub edge: [usize; 2],
    pub matrix: Matrix,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeValue {
    pub edge: [usize; 2],
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub table: Vec<Vec<usize>>,
}

pub type Matrix = Vec<Vec<String>>;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub pmax: Option<usize>,
    #[serde(default)]
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub label: String,
    pub index: usize,
    /// Ambient group elements fixing the component; `[0]` when absent.
    #[serde(default)]
    pub stabilizer: Option<Vec<usize>>,
    /// The equivariant Poincaré series, given directly.
    #[serde(default)]
    pub series: Option<Vec<String>>,
    /// Or a model to compute it from.
    #[serde(default)]
    pub model: Option<ModelSpec>,
}

/// Group data of a model refers to the stabilizer: `action[k]` and
/// `fiber_maps[k]` belong to the `k`-th listed stabilizer element.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub complex: ComplexSpec,
    #[serde(default)]
    pub local_system: Option<SystemSpec>,
    #[serde(default)]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub fiber_maps: Option<Vec<Vec<Matrix>>>,
    #[serde(default)]
    pub fiber_character: Option<Vec<String>>,
    #[serde(default)]
    pub orientation: OrientationSpec,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrientationSpec {
    /// Edges whose orientation transport is `-1`.
    #[serde(default)]
    pub negative_edges: Vec<[usize; 2]>,
    /// `±1` per stabilizer element; all `+1` when absent.
    #[serde(default)]
    pub character: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointSpec {
    pub ambient_dimension: usize,
    pub rank: usize,
    pub torus_rank: usize,
    #[serde(default)]
    pub euler_characteristic: Option<i64>,
    pub components: Vec<FixedComponentSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedComponentSpec {
    pub index: usize,
    pub betti: Vec<usize>,
}

pub fn parse(text: &str) -> Result<Descriptor, CliError> {
    let d: Descriptor = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    if d.schema_version != SCHEMA_VERSION {
        return Err(CliError::Schema(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            d.schema_version
        )));
    }
    Ok(d)
}

fn rational(text: &str) -> Result<ExactRational, CliError> {
    parse_rational(text).map_err(|e| CliError::Schema(e.to_string()))
}

pub fn series(values: &[String], p_max: usize) -> Result<CountingSeries, CliError> {
    let c = values.iter().map(|v| rational(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(CountingSeries::from_coefficients(c, p_max))
}

fn matrix(rows: &Matrix) -> Result<RationalMatrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|v| rational(v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    RationalMatrix::from_rows(rows).map_err(|e| CliError::Schema(e.to_string()))
}

fn build_complex(spec: &ComplexSpec) -> Result<SimplicialComplex, CliError> {
    Ok(SimplicialComplex::from_facets(spec.vertices, spec.facets.clone())?)
}

fn build_system(complex: &SimplicialComplex, spec: Option<&SystemSpec>) -> Result<LocalSystem, CliError> {
    let Some(spec) = spec else {
        return Ok(LocalSystem::trivial(complex, 1));
    };
    let edges = spec
        .transports
        .iter()
        .map(|t| Ok((t.edge[0], t.edge[1], matrix(&t.matrix)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(LocalSystem::from_edges(complex, spec.rank, edges)?)
}

fn build_cocycle(complex: &SimplicialComplex, spec: Option<&[EdgeValue]>) -> Result<OneCocycle, CliError> {
    let Some(values) = spec else {
        return Ok(OneCocycle::zero(complex));
    };
    let edges = values
        .iter()
        .map(|e| Ok((e.edge[0], e.edge[1], rational(&e.value)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(OneCocycle::from_edges(complex, &edges)?)
}

fn build_fiber_action(
    base: LocalSystem,
    group: &FiniteGroup,
    vertex_count: usize,
    maps: Option<&Vec<Vec<Matrix>>>,
    character: Option<&Vec<String>>,
) -> Result<EquivariantLocalSystem, CliError> {
    match (maps, character) {
        (Some(_), Some(_)) => Err(CliError::Schema(
            "give either fiber_maps or fiber_character, not both".into(),
        )),
        (Some(maps), None) => {
            let maps = maps
                .iter()
                .map(|per_vertex| per_vertex.iter().map(matrix).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(EquivariantLocalSystem::new(base, maps))
        }
        (None, Some(chi)) => {
            let chi = chi.iter().map(|c| rational(c)).collect::<Result<Vec<_>, _>>()?;
            Ok(EquivariantLocalSystem::scalar_action(base, &chi, vertex_count))
        }
        (None, None) => Ok(EquivariantLocalSystem::trivial_action(base, group, vertex_count)),
    }
}

/// The plain twisted data of a descriptor.
pub struct Space {
    pub complex: SimplicialComplex,
    pub system: LocalSystem,
    pub cocycle: OneCocycle,
}

impl Descriptor {
    fn complex_spec(&self) -> Result<&ComplexSpec, CliError> {
        self.complex
            .as_ref()
            .ok_or_else(|| CliError::Schema("missing field `complex`".into()))
    }

    pub fn has_group(&self) -> bool {
        self.group.is_some()
    }

    pub fn space(&self) -> Result<Space, CliError> {
        let complex = build_complex(self.complex_spec()?)?;
        let system = build_system(&complex, self.local_system.as_ref())?;
        let cocycle = build_cocycle(&complex, self.cocycle.as_deref())?;
        Ok(Space {
            complex,
            system,
            cocycle,
        })
    }

    /// Equivariant data; the trivial group when none is given.
    pub fn equivariant(&self) -> Result<EquivariantData, CliError> {
        let Space {
            complex,
            system,
            cocycle,
        } = self.space()?;
        let group = match &self.group {
            Some(g) => FiniteGroup::from_table(g.table.clone())?,
            None => FiniteGroup::trivial(),
        };
        let n = complex.vertex_count();
        let action = match &self.action {
            Some(perms) => SimplicialAction::new(perms.clone()),
            None if group.order() == 1 => SimplicialAction::trivial(&group, n),
            None => return Err(CliError::Schema("a group needs an `action`".into())),
        };
        let fibers = build_fiber_action(system, &group, n, self.fiber_maps.as_ref(), self.fiber_character.as_ref())?;
        Ok(EquivariantData::new(complex, group, action, fibers, cocycle)?)
    }

    pub fn group(&self) -> Result<FiniteGroup, CliError> {
        match &self.group {
            Some(g) => Ok(FiniteGroup::from_table(g.table.clone())?),
            None => Ok(FiniteGroup::trivial()),
        }
    }
}

impl ComponentSpec {
    pub fn build(&self, ambient: &FiniteGroup, p_max: usize) -> Result<CriticalComponent, CliError> {
        let stabilizer = self.stabilizer.clone().unwrap_or_else(|| vec![ambient.identity()]);
        let payload = match (&self.series, &self.model) {
            (Some(s), None) => ComponentPayload::Series(series(s, p_max)?),
            (None, Some(m)) => ComponentPayload::Model(m.build(&self.label, ambient, &stabilizer)?),
            _ => {
                return Err(CliError::Schema(format!(
                    "component {}: give exactly one of `series` and `model`",
                    self.label
                )))
            }
        };
        Ok(CriticalComponent {
            label: self.label.clone(),
            index: self.index,
            stabilizer,
            payload,
        })
    }
}

impl ModelSpec {
    fn build(&self, label: &str, ambient: &FiniteGroup, stabilizer: &[usize]) -> Result<ComponentModel, CliError> {
        if !ambient.is_subgroup(stabilizer) {
            return Err(CliError::Validation(
                novikov_core::morse::MorseError::NotASubgroup {
                    label: label.to_string(),
                    stabilizer: stabilizer.to_vec(),
                }
                .into(),
            ));
        }
        let group = ambient.restrict(stabilizer)?;
        let complex = build_complex(&self.complex)?;
        let n = complex.vertex_count();
        let system = build_system(&complex, self.local_system.as_ref())?;
        let action = match &self.action {
            Some(perms) => SimplicialAction::new(perms.clone()),
            None => SimplicialAction::trivial(&group, n),
        };
        let system = build_fiber_action(system, &group, n, self.fiber_maps.as_ref(), self.fiber_character.as_ref())?;
        let negative: Vec<(usize, usize)> = self.orientation.negative_edges.iter().map(|e| (e[0], e[1])).collect();
        let signs = LocalSystem::sign(&complex, &negative)?;
        let orientation = match &self.orientation.character {
            Some(chi) => {
                let chi = chi.iter().map(|c| rational(c)).collect::<Result<Vec<_>, _>>()?;
                EquivariantLocalSystem::scalar_action(signs, &chi, n)
            }
            None => EquivariantLocalSystem::trivial_action(signs, &group, n),
        };
        Ok(ComponentModel {
            complex,
            group,
            action,
            system,
            orientation,
        })
    }
}

impl FixedPointSpec {
    pub fn build(&self) -> Result<FixedPointData, CliError> {
        let components = self
            .components
            .iter()
            .map(|c| FixedComponent {
                betti: CountingSeries::from_counts(&c.betti, c.betti.len().saturating_sub(1)),
                index: c.index,
            })
            .collect();
        Ok(FixedPointData::new(
            self.ambient_dimension,
            self.rank,
            components,
            self.torus_rank,
        )?)
    }
}
