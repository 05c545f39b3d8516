use std::collections::{BTreeSet, HashMap};

use super::ComplexError;

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// Simplices are strictly increasing vertex tuples, stored per dimension in
/// lexicographic order. Every vertex is a 0-simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Builds from an explicit list of simplices, which must be closed under
    /// taking faces.
    pub fn new(vertex_count: usize, simplices: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertex_count).map(|v| vec![v]).collect()];
        for s in simplices {
            check_simplex(vertex_count, &s)?;
            let k = s.len() - 1;
            if by_dim.len() <= k {
                by_dim.resize(k + 1, BTreeSet::new());
            }
            by_dim[k].insert(s);
        }
        for k in 1..by_dim.len() {
            for s in &by_dim[k] {
                for i in 0..s.len() {
                    let face = drop_vertex(s, i);
                    if !by_dim[k - 1].contains(&face) {
                        return Err(ComplexError::MissingFace {
                            simplex: s.clone(),
                            face,
                        });
                    }
                }
            }
        }
        Ok(Self::from_sets(vertex_count, by_dim))
    }

    /// Builds the closure of the given facets.
    pub fn from_facets(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertex_count).map(|v| vec![v]).collect()];
        for f in facets {
            check_simplex(vertex_count, &f)?;
            let n = f.len();
            // All nonempty subsets of the facet.
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let k = face.len() - 1;
                if by_dim.len() <= k {
                    by_dim.resize(k + 1, BTreeSet::new());
                }
                by_dim[k].insert(face);
            }
        }
        Ok(Self::from_sets(vertex_count, by_dim))
    }

    fn from_sets(vertex_count: usize, mut by_dim: Vec<BTreeSet<Vec<usize>>>) -> Self {
        while by_dim.len() > 1 && by_dim.last().is_some_and(BTreeSet::is_empty) {
            by_dim.pop();
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self {
            vertex_count,
            simplices,
            index,
        }
    }

    pub fn point() -> Self {
        Self::from_facets(1, vec![]).unwrap()
    }

    /// The `n`-cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simplicial cycle needs at least 3 vertices");
        let edges = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                vec![i.min(j), i.max(j)]
            })
            .collect();
        Self::from_facets(n, edges).unwrap()
    }

    /// The full `n`-simplex.
    pub fn simplex(n: usize) -> Self {
        Self::from_facets(n + 1, vec![(0..=n).collect()]).unwrap()
    }

    /// Boundary of the `(n+1)`-simplex: an `n`-sphere.
    pub fn sphere(n: usize) -> Self {
        let facets = (0..n + 2)
            .map(|skip| (0..n + 2).filter(|&v| v != skip).collect())
            .collect();
        Self::from_facets(n + 2, facets).unwrap()
    }

    /// Torus triangulated as the `3 x 3` grid quotient: vertex `(i, j)` is
    /// `3 i + j`, and each grid square is cut along its diagonal.
    pub fn torus() -> Self {
        let v = |i: usize, j: usize| 3 * (i % 3) + (j % 3);
        let mut facets = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let mut a = vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)];
                let mut b = vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)];
                a.sort_unstable();
                b.sort_unstable();
                facets.push(a);
                facets.push(b);
            }
        }
        Self::from_facets(9, facets).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Highest dimension with a simplex; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        if self.vertex_count == 0 {
            None
        } else {
            Some(self.simplices.len() - 1)
        }
    }

    /// Number of dimension slots, `dimension + 1` (0 when empty).
    pub fn levels(&self) -> usize {
        if self.vertex_count == 0 {
            0
        } else {
            self.simplices.len()
        }
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.index.get(k)?.get(simplex).copied()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices(1)
    }

    /// Index of the edge `{a, b}` in either orientation.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&[a.min(b), a.max(b)])
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.levels())
            .map(|k| {
                let n = self.count(k) as i64;
                if k % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.edges() {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.vertex_count {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

fn check_simplex(vertex_count: usize, s: &[usize]) -> Result<(), ComplexError> {
    if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ComplexError::NotIncreasing { simplex: s.to_vec() });
    }
    if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
        return Err(ComplexError::VertexOutOfRange { vertex: v, vertex_count });
    }
    if s.len() > 63 {
        return Err(ComplexError::NotIncreasing { simplex: s.to_vec() });
    }
    Ok(())
}

/// The face of `s` opposite its `i`-th vertex.
pub fn drop_vertex(s: &[usize], i: usize) -> Vec<usize> {
    s.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        assert_eq!(SimplicialComplex::cycle(3).euler_characteristic(), 0);
        assert_eq!(SimplicialComplex::sphere(2).euler_characteristic(), 2);
        assert_eq!(SimplicialComplex::point().euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::torus().euler_characteristic(), 0);
        assert_eq!(SimplicialComplex::simplex(3).euler_characteristic(), 1);
    }

    #[test]
    fn explicit_lists_must_be_closed() {
        let err = SimplicialComplex::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, ComplexError::MissingFace { .. }));
        assert!(matches!(
            SimplicialComplex::new(3, vec![vec![1, 0]]),
            Err(ComplexError::NotIncreasing { .. })
        ));
        assert!(matches!(
            SimplicialComplex::new(2, vec![vec![0, 2]]),
            Err(ComplexError::VertexOutOfRange { .. })
        ));
        let ok = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(ok, SimplicialComplex::cycle(3));
    }

    #[test]
    fn torus_counts_and_components() {
        let t = SimplicialComplex::torus();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (9, 27, 18));
        assert_eq!(t.components().len(), 1);
        let two = SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
    }
}
