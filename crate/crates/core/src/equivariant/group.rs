use super::EquivariantError;

/// A finite group given by its multiplication table on `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, EquivariantError> {
        let n = table.len();
        if n == 0 {
            return Err(EquivariantError::InvalidGroup("empty multiplication table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(EquivariantError::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(EquivariantError::InvalidGroup(format!("product {x} out of range in row {a}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| EquivariantError::InvalidGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| EquivariantError::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(EquivariantError::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Direct product; `(x, y)` is element `x * |other| + y`.
    pub fn product(&self, other: &Self) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// The subgroup on `elements` as a group in its own right; element `k`
    /// of the result is `elements[k]`.
    pub fn restrict(&self, elements: &[usize]) -> Result<Self, EquivariantError> {
        if !self.is_subgroup(elements) {
            return Err(EquivariantError::InvalidGroup(format!("{elements:?} is not a subgroup")));
        }
        let position = |x: usize| elements.iter().position(|&y| y == x).expect("closed");
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| position(self.mul(a, b))).collect())
            .collect();
        Self::from_table(table)
    }

    /// Nonempty, contains the identity, closed under products and inverses.
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let inside = |x: usize| elements.contains(&x);
        elements.iter().all(|&x| x < self.order())
            && inside(self.identity)
            && elements.iter().all(|&a| {
                inside(self.inverse(a)) && elements.iter().all(|&b| inside(self.mul(a, b)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_product() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.inverse(1), 2);
        let v = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        assert_eq!(v.order(), 4);
        assert!(v.elements().all(|g| v.mul(g, g) == v.identity()));
        assert!(z3.is_subgroup(&[0]));
        assert!(!z3.is_subgroup(&[0, 1]));
        assert!(v.is_subgroup(&[0, 3]));
        let sub = v.restrict(&[0, 3]).unwrap();
        assert_eq!(sub, FiniteGroup::cyclic(2));
        assert!(z3.restrict(&[0, 1]).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).is_err());
        // Identity and inverses but not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(EquivariantError::InvalidGroup(_))));
    }
}
