use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{AlgebraError, ExactRational, LaurentPolynomial};

/// Dense matrix over `Q`. Used for fiber transports and group fiber maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ExactRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ExactRational::one();
        }
        m
    }

    pub fn scalar(c: ExactRational) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![c],
        }
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::rat(x)).collect())
                .collect(),
        )
        .expect("ragged literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(AlgebraError::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).recip();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: &ExactRational) {
        for c in 0..self.cols {
            self.data[r * self.cols + c] *= f;
        }
    }

    /// row[target] -= f * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, f: &ExactRational) {
        for c in 0..self.cols {
            let v = f * &self.data[source * self.cols + c];
            self.data[target * self.cols + c] -= v;
        }
    }

    /// Lifts to a constant matrix over `Q(s)`.
    pub fn to_function_matrix(&self) -> RationalFunctionMatrix {
        let mut out = RationalFunctionMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, LaurentPolynomial::constant(self.get(r, c).clone()));
            }
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", super::format_rational(self.get(r, c)))?;
            }
        }
        write!(f, "]")
    }
}

static ZERO_ENTRY: LaurentPolynomial = LaurentPolynomial::ZERO;

/// Matrix with Laurent-polynomial entries, read as a matrix over the
/// rational function field `Q(s)`. Stored as sparse rows.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunctionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, LaurentPolynomial>>,
}

impl RationalFunctionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPolynomial::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPolynomial>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape("ragged matrix rows".into()));
        }
        let data = rows
            .into_iter()
            .map(|row| row.into_iter().enumerate().filter(|(_, e)| !e.is_zero()).collect())
            .collect();
        Ok(Self { rows: r, cols: c, data })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: Vec<LaurentPolynomial>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPolynomial {
        assert!(c < self.cols, "column out of range");
        self.data[r].get(&c).unwrap_or(&ZERO_ENTRY)
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPolynomial) {
        assert!(c < self.cols, "column out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &LaurentPolynomial) {
        assert!(c < self.cols, "column out of range");
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        let sum = match row.get(&c) {
            Some(old) => old + v,
            None => v.clone(),
        };
        if sum.is_zero() {
            row.remove(&c);
        } else {
            row.insert(c, sum);
        }
    }

    /// Nonzero entries of row `r` in column order.
    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, &LaurentPolynomial)> {
        self.data[r].iter().map(|(&c, e)| (c, e))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in &self.data[i] {
                for (j, b) in &other.data[*k] {
                    out.add_to(i, *j, &(a * b));
                }
            }
        }
        out
    }

    /// Sparse row view.
    pub(crate) fn sparse_rows(&self) -> Vec<BTreeMap<usize, LaurentPolynomial>> {
        self.data.clone()
    }

    /// Entry-wise evaluation at `s0`, which must be nonzero.
    pub fn eval(&self, s0: &ExactRational) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, e) in row {
                out.set(r, c, e.eval(s0));
            }
        }
        out
    }

    /// Adds `block` into position `(row0, col0)`.
    pub fn add_block(&mut self, row0: usize, col0: usize, block: &RationalFunctionMatrix) {
        for (r, row) in block.data.iter().enumerate() {
            for (&c, e) in row {
                self.add_to(row0 + r, col0 + c, e);
            }
        }
    }

    pub fn scale(&self, f: &LaurentPolynomial) -> Self {
        if f.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(&c, e)| (c, e * f)).collect())
                .collect(),
        }
    }
}

impl fmt::Debug for RationalFunctionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
