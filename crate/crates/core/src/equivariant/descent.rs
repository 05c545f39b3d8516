use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{EquivariantData, EquivariantError};
use crate::complexes::{drop_vertex, TwistedComplex};
use crate::exactalg::{rat, ExactRational, LaurentPolynomial, RankEngine, RationalFunctionMatrix, RationalMatrix};

/// One edge of a path in the quotient. `forward` walks from the second
/// endpoint of the representative edge to the first, using `s^{θ'} T'`;
/// backward uses the inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeStep {
    pub edge: usize,
    pub forward: bool,
}

/// A face of a quotient cell: `sign * (transport along steps) * c(cell)`.
/// Steps apply last to first, so `steps[0]` is the outermost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellFace {
    pub cell: usize,
    pub sign: i64,
    pub steps: Vec<EdgeStep>,
}

/// The orbit cell complex of a free admissible action. Cells are orbits of
/// simplices, represented by their lexicographically least member; vertex
/// orbits by their least vertex. Quotient cells need not be simplices (two
/// edges may share both endpoints), so faces are recorded explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitComplex {
    cells: Vec<Vec<Vec<usize>>>,
    edge_ends: Vec<(usize, usize)>,
    faces: Vec<Vec<Vec<CellFace>>>,
}

impl OrbitComplex {
    pub fn vertex_count(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    /// Representative simplices of the `k`-cells.
    pub fn cells(&self, k: usize) -> &[Vec<usize>] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> usize {
        self.cells.len()
    }

    /// Quotient vertices joined by each edge, representative orientation.
    pub fn edge_ends(&self) -> &[(usize, usize)] {
        &self.edge_ends
    }

    pub fn faces(&self, k: usize, cell: usize) -> &[CellFace] {
        &self.faces[k][cell]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }
}

/// Quotient complex with the pushed-forward local system and cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientData {
    pub complex: OrbitComplex,
    pub rank: usize,
    /// `T'` per quotient edge: fiber(second end) -> fiber(first end).
    pub transports: Vec<RationalMatrix>,
    /// `θ'` per quotient edge, first end to second end.
    pub cocycle: Vec<ExactRational>,
    /// Exponent scale shared with the source, so `s` means the same thing.
    pub exponent_scale: BigInt,
}

impl QuotientData {
    fn step_matrix(&self, step: &EdgeStep) -> RationalFunctionMatrix {
        let l = ExactRational::from_integer(self.exponent_scale.clone());
        let e = (&self.cocycle[step.edge] * l).to_integer().to_i64().expect("exponent fits");
        if step.forward {
            self.transports[step.edge]
                .to_function_matrix()
                .scale(&LaurentPolynomial::power(e))
        } else {
            self.transports[step.edge]
                .inverse()
                .expect("transports are invertible")
                .to_function_matrix()
                .scale(&LaurentPolynomial::power(-e))
        }
    }

    /// The twisted cochain complex of the quotient.
    pub fn twisted_complex(&self) -> Result<TwistedComplex, EquivariantError> {
        let d = self.rank;
        let dims: Vec<usize> = self.complex.cells.iter().map(|c| c.len() * d).collect();
        let mut differentials = Vec::new();
        for k in 0..self.complex.levels().saturating_sub(1) {
            let mut m = RationalFunctionMatrix::zeros(dims[k + 1], dims[k]);
            for (cell, faces) in self.complex.faces[k + 1].iter().enumerate() {
                for face in faces {
                    let mut block = RationalFunctionMatrix::identity(d);
                    for step in &face.steps {
                        block = block.mul(&self.step_matrix(step));
                    }
                    let block = block.scale(&LaurentPolynomial::constant(rat(face.sign)));
                    m.add_block(cell * d, face.cell * d, &block);
                }
            }
            differentials.push(m);
        }
        Ok(TwistedComplex::from_differentials(dims, differentials)?.with_exponent_scale(self.exponent_scale.clone()))
    }

    pub fn novikov_numbers(&self, engine: &dyn RankEngine) -> Result<Vec<usize>, EquivariantError> {
        Ok(self.twisted_complex()?.betti_numbers(engine))
    }

    /// Sum of `θ'` around a closed edge path given as `(edge, forward)`.
    pub fn loop_sum(&self, path: &[(usize, bool)]) -> ExactRational {
        path.iter().fold(rat(0), |acc, &(e, fwd)| {
            if fwd {
                acc + &self.cocycle[e]
            } else {
                acc - &self.cocycle[e]
            }
        })
    }
}

/// Passes to the orbit complex of a free action. Fibers over a vertex
/// orbit are identified with the fiber at its least vertex `r` through
/// `A_g(r)`, so the representative edge `[a, b]` with `a = g_a r_a`,
/// `b = g_b r_b` carries `T' = A_{g_a}(r_a)^{-1} T[a b] A_{g_b}(r_b)`.
pub fn descend_free_quotient(data: &EquivariantData) -> Result<QuotientData, EquivariantError> {
    let group = data.group();
    let action = data.action();
    let complex = data.complex();
    if let Some((element, vertex)) = action.fixed_point(group) {
        return Err(EquivariantError::ActionNotFree { element, vertex });
    }
    // Vertex orbits: least vertex and the element carrying it to each member.
    let n = complex.vertex_count();
    let mut vertex_orbit = vec![usize::MAX; n];
    let mut carrier = vec![0usize; n];
    let mut vertex_reps = Vec::new();
    for v in 0..n {
        if vertex_orbit[v] != usize::MAX {
            continue;
        }
        for g in group.elements() {
            let w = action.apply(g, v);
            vertex_orbit[w] = vertex_reps.len();
            carrier[w] = g;
        }
        vertex_reps.push(v);
    }
    // Cell orbits: least simplex, and for each simplex (orbit, element).
    let mut cells: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut lookup: Vec<HashMap<Vec<usize>, (usize, usize)>> = Vec::new();
    for k in 0..complex.levels() {
        let mut reps = Vec::new();
        let mut map = HashMap::new();
        for s in complex.simplices(k) {
            if map.contains_key(s) {
                continue;
            }
            let idx = reps.len();
            for g in group.elements() {
                let (image, _) = action.apply_simplex(g, s);
                map.insert(image, (idx, g));
            }
            reps.push(s.clone());
        }
        cells.push(reps);
        lookup.push(map);
    }
    // Quotient edges.
    let system = data.system();
    let mut transports = Vec::new();
    let mut cocycle = Vec::new();
    let mut edge_ends = Vec::new();
    for rep in cells.get(1).map_or(&[][..], Vec::as_slice) {
        let (a, b) = (rep[0], rep[1]);
        let ia = system.fiber_map(carrier[a], vertex_reps[vertex_orbit[a]]);
        let ib = system.fiber_map(carrier[b], vertex_reps[vertex_orbit[b]]);
        let t = complex.edge_index(a, b).expect("edge");
        let transport = ia.inverse().expect("validated").mul(system.base().transport(t)).mul(ib);
        transports.push(transport);
        cocycle.push(data.cocycle().value(t).clone());
        edge_ends.push((vertex_orbit[a], vertex_orbit[b]));
    }
    // Step along the source edge from x to y (transport fiber(y) -> fiber(x)).
    let step = |x: usize, y: usize| -> EdgeStep {
        let (lo, hi) = (x.min(y), x.max(y));
        let (edge, g) = lookup[1][&vec![lo, hi]];
        let rep = &cells[1][edge];
        let forward = action.apply(g, rep[0]) == x;
        EdgeStep { edge, forward }
    };
    let mut faces: Vec<Vec<Vec<CellFace>>> = vec![vec![Vec::new(); cells[0].len()]];
    for k in 1..cells.len() {
        let mut level = Vec::with_capacity(cells[k].len());
        for tau in &cells[k] {
            let mut list = Vec::with_capacity(tau.len());
            for i in 0..tau.len() {
                let face = drop_vertex(tau, i);
                let (cell, h) = lookup[k - 1][&face];
                let rho = &cells[k - 1][cell];
                let moved: Vec<usize> = rho.iter().map(|&v| action.apply(h, v)).collect();
                let (_, perm_sign) = super::action::sort_with_sign(moved.clone());
                let mut steps = Vec::new();
                if i == 0 {
                    steps.push(step(tau[0], tau[1]));
                }
                if face[0] != moved[0] {
                    steps.push(step(face[0], moved[0]));
                }
                let sign = if i % 2 == 0 { perm_sign } else { -perm_sign };
                list.push(CellFace { cell, sign, steps });
            }
            level.push(list);
        }
        faces.push(level);
    }
    Ok(QuotientData {
        complex: OrbitComplex {
            cells,
            edge_ends,
            faces,
        },
        rank: system.rank(),
        transports,
        cocycle,
        exponent_scale: data.cocycle().denominator_lcm(),
    })
}
