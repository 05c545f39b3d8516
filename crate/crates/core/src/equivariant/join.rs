use std::collections::HashMap;

use super::FiniteGroup;
use crate::complexes::SimplicialComplex;

/// The `m`-fold join `G * G * ... * G` with `G` acting diagonally by left
/// multiplication. Vertex `(g, i)` (element `g` in copy `i`) is numbered
/// `i |G| + g`; a `p`-simplex takes one vertex from each of `p + 1`
/// distinct copies. The action is free and the complex is
/// `(m - 2)`-acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinResolution {
    group: FiniteGroup,
    join_count: usize,
}

/// A simplex of the join as `(element, copy)` pairs with increasing copies.
pub type JoinSimplex = Vec<(usize, usize)>;

impl JoinResolution {
    pub fn new(group: FiniteGroup, join_count: usize) -> Self {
        assert!(join_count >= 1, "join of zero copies");
        Self { group, join_count }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn join_count(&self) -> usize {
        self.join_count
    }

    /// Degree through which reduced cohomology vanishes.
    pub fn acyclicity(&self) -> usize {
        self.join_count.saturating_sub(2)
    }

    pub fn vertex(&self, element: usize, copy: usize) -> usize {
        copy * self.group.order() + element
    }

    /// Orbit representatives of `p`-simplices: those whose first element is
    /// the identity. Ordered lexicographically by vertex number.
    pub fn orbit_representatives(&self, p: usize) -> Vec<JoinSimplex> {
        let mut out = Vec::new();
        if p >= self.join_count {
            return out;
        }
        let n = self.group.order();
        for copies in combinations(self.join_count, p + 1) {
            for code in 0..n.pow(p as u32) {
                let mut simplex = Vec::with_capacity(p + 1);
                simplex.push((self.group.identity(), copies[0]));
                let mut c = code;
                for &copy in &copies[1..] {
                    simplex.push((c % n, copy));
                    c /= n;
                }
                out.push(simplex);
            }
        }
        let key = |s: &JoinSimplex| -> Vec<usize> { s.iter().map(|&(g, i)| self.vertex(g, i)).collect() };
        out.sort_by_key(key);
        out
    }

    /// Number of `p`-simplex orbits: `C(m, p + 1) |G|^p`.
    pub fn orbit_count(&self, p: usize) -> usize {
        if p >= self.join_count {
            return 0;
        }
        binomial(self.join_count, p + 1) * self.group.order().pow(p as u32)
    }

    /// Writes `simplex = h . rep` and returns `(h, rep)`.
    pub fn normalize(&self, simplex: &[(usize, usize)]) -> (usize, JoinSimplex) {
        let h = simplex[0].0;
        let h_inv = self.group.inverse(h);
        let rep = simplex.iter().map(|&(g, i)| (self.group.mul(h_inv, g), i)).collect();
        (h, rep)
    }

    /// Index of each orbit representative of dimension `p`.
    pub fn representative_index(&self, p: usize) -> HashMap<JoinSimplex, usize> {
        self.orbit_representatives(p)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect()
    }

    /// The whole join as a simplicial complex.
    pub fn complex(&self) -> SimplicialComplex {
        let n = self.group.order();
        let m = self.join_count;
        let mut facets = Vec::new();
        let total = n.pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let facet = (0..m)
                .map(|i| {
                    let g = c % n;
                    c /= n;
                    self.vertex(g, i)
                })
                .collect();
            facets.push(facet);
        }
        SimplicialComplex::from_facets(n * m, facets).expect("join facets are valid")
    }
}

/// `G^{*(n + 2)}`, which is `n`-acyclic.
pub fn join_resolution(group: &FiniteGroup, acyclicity: usize) -> JoinResolution {
    JoinResolution::new(group.clone(), acyclicity + 2)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}
