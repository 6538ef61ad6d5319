use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::exactla::Scalar;

/// Sparse vector: index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// `target += coeff * src`, dropping entries that cancel.
pub fn axpy(target: &mut SparseVec, coeff: &Scalar, src: &SparseVec) {
    if coeff.is_zero() {
        return;
    }
    for (&i, v) in src {
        add_entry(target, i, coeff * v);
    }
}

/// `target[i] += value`, dropping the entry if it cancels.
pub fn add_entry(target: &mut SparseVec, i: usize, value: Scalar) {
    if value.is_zero() {
        return;
    }
    match target.entry(i) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Sparse exact matrix stored by columns. No zero is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.cols[i].insert(i, Scalar::one());
        }
        m
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = Matrix::zeros(rows, cols);
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfBounds { row: r, col: c, rows, cols });
            }
            add_entry(&mut m.cols[c], r, v);
        }
        Ok(m)
    }

    /// Dense rows of small integers; handy in tests and examples.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                add_entry(&mut m.cols[c], r, Scalar::from_int(v));
            }
        }
        m
    }

    /// Builds from column vectors. Panics if an index exceeds `rows`.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        for c in &cols {
            if let Some((&last, _)) = c.iter().next_back() {
                assert!(last < rows, "row index {last} out of bounds ({rows})");
            }
            debug_assert!(c.values().all(|v| !v.is_zero()));
        }
        Matrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(&r).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols.len());
        add_entry(&mut self.cols[c], r, v);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// Nonzero entries in column-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols(), self.rows);
        for (r, c, v) in self.triples() {
            t.cols[r].insert(c, v.clone());
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols());
        }
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(&i, v)| (i, v * s)).collect())
            .collect();
        Matrix { rows: self.rows, cols }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (c, col) in other.cols.iter().enumerate() {
            axpy(&mut out.cols[c], &Scalar::one(), col);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (c, col) in other.cols.iter().enumerate() {
            axpy(&mut out.cols[c], &-Scalar::one(), col);
        }
        Ok(out)
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                left: (self.rows, self.cols()),
                right: (other.rows, other.cols()),
            });
        }
        let cols = other.cols.iter().map(|bcol| self.apply(bcol)).collect();
        Ok(Matrix { rows: self.rows, cols })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, coeff) in v {
            axpy(&mut out, coeff, &self.cols[k]);
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut cols = self.cols.clone();
        for c in &other.cols {
            cols.push(c.iter().map(|(&i, v)| (i + self.rows, v.clone())).collect());
        }
        Matrix { rows: self.rows + other.rows, cols }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), Error> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::DimensionMismatch {
                context: "matrix sum",
                left: (self.rows, self.cols()),
                right: (other.rows, other.cols()),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols())?;
        if self.rows * self.cols() <= 400 {
            for r in 0..self.rows {
                let row: Vec<String> = (0..self.cols()).map(|c| self.get(r, c).to_string()).collect();
                writeln!(f, "  {}", row.join(" "))?;
            }
        } else {
            for (r, c, v) in self.triples() {
                writeln!(f, "  ({r},{c}) = {v}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_stored_zeros_after_cancellation() {
        let mut m = Matrix::zeros(2, 2);
        m.add_to(0, 1, Scalar::from_int(3));
        m.add_to(0, 1, Scalar::from_int(-3));
        assert!(m.is_zero());
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_int_rows(&[vec![1, 2], vec![0, 1]]);
        let b = Matrix::from_int_rows(&[vec![1, 0], vec![3, 1]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_int_rows(&[vec![7, 2], vec![3, 1]]));
        assert_eq!(a.transpose(), Matrix::from_int_rows(&[vec![1, 0], vec![2, 1]]));
        assert!(a.mul(&Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn out_of_bounds_triple() {
        let r = Matrix::from_triples(2, 2, [(2, 0, Scalar::one())]);
        assert!(matches!(r, Err(Error::IndexOutOfBounds { .. })));
    }
}
