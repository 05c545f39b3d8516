use super::{EquivariantError, FiniteGroup};
use crate::complexes::{twisted_complex, LocalSystem, OneCocycle, SimplicialComplex, TwistedComplex};
use crate::exactalg::{rat, ExactRational, LaurentPolynomial, RationalFunctionMatrix, RationalMatrix};

/// A group acting on the vertex set, one permutation per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialAction {
    permutations: Vec<Vec<usize>>,
}

impl SimplicialAction {
    pub fn new(permutations: Vec<Vec<usize>>) -> Self {
        Self { permutations }
    }

    pub fn trivial(group: &FiniteGroup, vertex_count: usize) -> Self {
        Self::new(vec![(0..vertex_count).collect(); group.order()])
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.permutations
    }

    pub fn apply(&self, g: usize, v: usize) -> usize {
        self.permutations[g][v]
    }

    /// Sorted image of `simplex` under `g` and the sign of the sorting
    /// permutation.
    pub fn apply_simplex(&self, g: usize, simplex: &[usize]) -> (Vec<usize>, i64) {
        let image: Vec<usize> = simplex.iter().map(|&v| self.apply(g, v)).collect();
        sort_with_sign(image)
    }

    /// Checks the action against the complex and group.
    pub fn validate(&self, complex: &SimplicialComplex, group: &FiniteGroup) -> Result<(), EquivariantError> {
        let n = complex.vertex_count();
        if self.permutations.len() != group.order() {
            return Err(EquivariantError::InvalidAction(format!(
                "{} permutations for a group of order {}",
                self.permutations.len(),
                group.order()
            )));
        }
        for (g, p) in self.permutations.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
                return Err(EquivariantError::InvalidAction(format!(
                    "element {g} is not a permutation of {n} vertices"
                )));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..n).any(|v| self.apply(gh, v) != self.apply(g, self.apply(h, v))) {
                    return Err(EquivariantError::NotHomomorphism { g, h });
                }
            }
        }
        for g in group.elements() {
            for k in 1..complex.levels() {
                for s in complex.simplices(k) {
                    let (image, _) = self.apply_simplex(g, s);
                    if complex.index_of(&image).is_none() {
                        return Err(EquivariantError::NotSimplicial {
                            element: g,
                            simplex: s.clone(),
                        });
                    }
                    if image == *s && s.iter().any(|&v| self.apply(g, v) != v) {
                        return Err(EquivariantError::NotAdmissible {
                            element: g,
                            simplex: s.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// First non-identity element fixing a vertex, if any.
    pub fn fixed_point(&self, group: &FiniteGroup) -> Option<(usize, usize)> {
        group
            .elements()
            .filter(|&g| g != group.identity())
            .find_map(|g| {
                self.permutations[g]
                    .iter()
                    .enumerate()
                    .find(|&(v, &w)| v == w)
                    .map(|(v, _)| (g, v))
            })
    }
}

pub(crate) fn sort_with_sign(mut items: Vec<usize>) -> (Vec<usize>, i64) {
    let mut sign = 1;
    // Insertion sort; simplices are short.
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1] > items[j] {
            items.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (items, sign)
}

/// A local system with fiber maps `A_g(v): fiber(v) -> fiber(g v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantLocalSystem {
    base: LocalSystem,
    fiber_maps: Vec<Vec<RationalMatrix>>,
}

impl EquivariantLocalSystem {
    /// `fiber_maps[g][v]` is `A_g(v)`.
    pub fn new(base: LocalSystem, fiber_maps: Vec<Vec<RationalMatrix>>) -> Self {
        Self { base, fiber_maps }
    }

    /// All fiber maps the identity.
    pub fn trivial_action(base: LocalSystem, group: &FiniteGroup, vertex_count: usize) -> Self {
        let id = RationalMatrix::identity(base.rank());
        Self::new(base, vec![vec![id; vertex_count]; group.order()])
    }

    /// `A_g(v) = character[g] * identity` at every vertex.
    pub fn scalar_action(base: LocalSystem, character: &[ExactRational], vertex_count: usize) -> Self {
        let rank = base.rank();
        let maps = character
            .iter()
            .map(|c| {
                let mut m = RationalMatrix::zeros(rank, rank);
                for i in 0..rank {
                    m.set(i, i, c.clone());
                }
                vec![m; vertex_count]
            })
            .collect();
        Self::new(base, maps)
    }

    pub fn base(&self) -> &LocalSystem {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn fiber_map(&self, g: usize, v: usize) -> &RationalMatrix {
        &self.fiber_maps[g][v]
    }

    pub fn fiber_maps(&self) -> &[Vec<RationalMatrix>] {
        &self.fiber_maps
    }

    /// Fiberwise tensor product of two equivariant systems over the same
    /// action.
    pub fn tensor(&self, other: &Self) -> Result<Self, EquivariantError> {
        let base = crate::complexes::tensor(&self.base, &other.base)?;
        if self.fiber_maps.len() != other.fiber_maps.len() {
            return Err(EquivariantError::InvalidAction("fiber maps for different groups".into()));
        }
        let maps = self
            .fiber_maps
            .iter()
            .zip(&other.fiber_maps)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.kron(y)).collect())
            .collect();
        Ok(Self::new(base, maps))
    }
}

/// Checks the action, the fiber maps and invariance of the cocycle.
pub fn validate_action(
    complex: &SimplicialComplex,
    group: &FiniteGroup,
    action: &SimplicialAction,
    system: &EquivariantLocalSystem,
    cocycle: &OneCocycle,
) -> Result<(), EquivariantError> {
    crate::complexes::validate(complex, system.base(), cocycle)?;
    action.validate(complex, group)?;
    let n = complex.vertex_count();
    let d = system.rank();
    if system.fiber_maps.len() != group.order() || system.fiber_maps.iter().any(|row| row.len() != n) {
        return Err(EquivariantError::InvalidAction("fiber maps must be given for every element and vertex".into()));
    }
    for g in group.elements() {
        for v in 0..n {
            let a = system.fiber_map(g, v);
            if a.rows() != d || a.cols() != d || a.inverse().is_err() {
                return Err(EquivariantError::FiberMapNotInvertible { element: g, vertex: v });
            }
        }
    }
    let e = group.identity();
    for v in 0..n {
        if !system.fiber_map(e, v).is_identity() {
            return Err(EquivariantError::CocycleLawViolation { g: e, h: e, vertex: v });
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            for v in 0..n {
                let composed = system.fiber_map(g, action.apply(h, v)).mul(system.fiber_map(h, v));
                if composed != *system.fiber_map(gh, v) {
                    return Err(EquivariantError::CocycleLawViolation { g, h, vertex: v });
                }
            }
        }
    }
    // A_g(v0) T[v0 v1] = T(g v0, g v1) A_g(v1), where T(a, b) is the oriented
    // transport fiber(b) -> fiber(a); an order-reversing g is compared
    // against the inverse of the stored transport.
    for g in group.elements() {
        for (idx, edge) in complex.edges().iter().enumerate() {
            let (v0, v1) = (edge[0], edge[1]);
            let (w0, w1) = (action.apply(g, v0), action.apply(g, v1));
            let moved = system.base().oriented(complex, w0, w1).expect("action is simplicial");
            let left = system.fiber_map(g, v0).mul(system.base().transport(idx));
            let right = moved.mul(system.fiber_map(g, v1));
            if left != right {
                return Err(EquivariantError::TransportIncompatible {
                    element: g,
                    edge: edge.clone(),
                });
            }
            let image_value = cocycle.oriented(complex, w0, w1).expect("action is simplicial");
            if image_value != *cocycle.value(idx) {
                return Err(EquivariantError::CocycleNotInvariant {
                    element: g,
                    edge: edge.clone(),
                });
            }
        }
    }
    Ok(())
}

/// A validated equivariant twisted problem: complex, group, action,
/// equivariant local system and invariant closed cocycle.
#[derive(Debug, Clone)]
pub struct EquivariantData {
    complex: SimplicialComplex,
    group: FiniteGroup,
    action: SimplicialAction,
    system: EquivariantLocalSystem,
    cocycle: OneCocycle,
    exponents: Vec<i64>,
    twisted: TwistedComplex,
}

impl EquivariantData {
    pub fn new(
        complex: SimplicialComplex,
        group: FiniteGroup,
        action: SimplicialAction,
        system: EquivariantLocalSystem,
        cocycle: OneCocycle,
    ) -> Result<Self, EquivariantError> {
        validate_action(&complex, &group, &action, &system, &cocycle)?;
        let exponents = cocycle.integer_exponents()?;
        let twisted = twisted_complex(&complex, system.base(), &cocycle)?;
        Ok(Self {
            complex,
            group,
            action,
            system,
            cocycle,
            exponents,
            twisted,
        })
    }

    /// Same data with the cocycle replaced.
    pub fn with_cocycle(&self, cocycle: OneCocycle) -> Result<Self, EquivariantError> {
        Self::new(
            self.complex.clone(),
            self.group.clone(),
            self.action.clone(),
            self.system.clone(),
            cocycle,
        )
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self) -> &SimplicialAction {
        &self.action
    }

    pub fn system(&self) -> &EquivariantLocalSystem {
        &self.system
    }

    pub fn cocycle(&self) -> &OneCocycle {
        &self.cocycle
    }

    /// The non-equivariant twisted complex of the underlying space.
    pub fn twisted(&self) -> &TwistedComplex {
        &self.twisted
    }

    /// Integer `s`-exponent along the oriented edge `a -> b`.
    pub(crate) fn exponent(&self, a: usize, b: usize) -> i64 {
        let idx = self.complex.edge_index(a, b).expect("edge");
        if a < b {
            self.exponents[idx]
        } else {
            -self.exponents[idx]
        }
    }

    /// Twisted parallel transport `fiber(b) -> fiber(a)` along an edge:
    /// `s^{Lθ(a -> b)} T(a, b)`. The identity when `a == b`.
    pub(crate) fn parallel_transport(&self, a: usize, b: usize) -> RationalFunctionMatrix {
        if a == b {
            return RationalFunctionMatrix::identity(self.system.rank());
        }
        let t = self.system.base().oriented(&self.complex, a, b).expect("edge");
        t.to_function_matrix().scale(&LaurentPolynomial::power(self.exponent(a, b)))
    }

    /// The action of `g` on degree-`q` twisted cochains:
    /// `(g_* c)(sort(g σ)) = sgn · P(w0 <- g v0) A_g(v0) c(σ)`, where `w0` is the
    /// least vertex of `g σ` and `P` is the twisted parallel transport.
    pub fn cochain_action(&self, g: usize, q: usize) -> CochainMap {
        let blocks = self
            .complex
            .simplices(q)
            .iter()
            .map(|sigma| {
                let (image, sign) = self.action.apply_simplex(g, sigma);
                let target = self.complex.index_of(&image).expect("action is simplicial");
                let head = self.action.apply(g, sigma[0]);
                let fiber = self.system.fiber_map(g, sigma[0]).to_function_matrix();
                let block = self
                    .parallel_transport(image[0], head)
                    .mul(&fiber)
                    .scale(&LaurentPolynomial::constant(rat(sign)));
                (target, block)
            })
            .collect();
        CochainMap {
            rank: self.system.rank(),
            blocks,
        }
    }

    /// Averaging projector `|G|^{-1} Σ_g g_*` on degree-`q` cochains.
    pub fn averaging_projector(&self, q: usize) -> RationalFunctionMatrix {
        let n = self.twisted.dims().get(q).copied().unwrap_or(0);
        let mut out = RationalFunctionMatrix::zeros(n, n);
        for g in self.group.elements() {
            out.add_block(0, 0, &self.cochain_action(g, q).to_matrix());
        }
        let weight = ExactRational::new(1.into(), (self.group.order() as i64).into());
        out.scale(&LaurentPolynomial::constant(weight))
    }
}

/// A block-monomial map on cochains: source simplex `i` goes to simplex
/// `blocks[i].0` through the fiber block `blocks[i].1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainMap {
    pub rank: usize,
    pub blocks: Vec<(usize, RationalFunctionMatrix)>,
}

impl CochainMap {
    pub fn to_matrix(&self) -> RationalFunctionMatrix {
        let n = self.blocks.len() * self.rank;
        let mut out = RationalFunctionMatrix::zeros(n, n);
        self.add_into(&mut out, 0, 0, &LaurentPolynomial::one());
        out
    }

    /// Adds `factor * self` into `target` with the given offsets.
    pub fn add_into(
        &self,
        target: &mut RationalFunctionMatrix,
        row0: usize,
        col0: usize,
        factor: &LaurentPolynomial,
    ) {
        let d = self.rank;
        for (source, (dest, block)) in self.blocks.iter().enumerate() {
            for a in 0..d {
                for b in 0..d {
                    let e = block.get(a, b);
                    if !e.is_zero() {
                        target.add_to(row0 + dest * d + a, col0 + source * d + b, &(e * factor));
                    }
                }
            }
        }
    }
}
