use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{add_entry, Matrix, Scalar, SparseVec};
use crate::words;

/// A linear map `A^{⊗k} -> A^{⊗l}` over an algebra of dimension `dim`.
///
/// Column `c` of the matrix is the image of the input word with index `c`;
/// rows are output words. Both use the lexicographic word encoding of
/// [`crate::words`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearOp {
    dim: usize,
    k: usize,
    l: usize,
    matrix: Matrix,
}

/// Wire form: `{ "k", "l", "entries": [[in_word, out_word, "num/den"], ..] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpRecord {
    pub k: usize,
    pub l: usize,
    pub entries: Vec<(Vec<usize>, Vec<usize>, Scalar)>,
}

impl MultilinearOp {
    pub fn new(dim: usize, k: usize, l: usize, matrix: Matrix) -> Result<Self, Error> {
        let expected = (words::pow(dim, l), words::pow(dim, k));
        if (matrix.rows(), matrix.cols()) != expected {
            return Err(Error::DimensionMismatch {
                context: "operator matrix vs tensor bases",
                left: (matrix.rows(), matrix.cols()),
                right: expected,
            });
        }
        Ok(MultilinearOp { dim, k, l, matrix })
    }

    pub fn zero(dim: usize, k: usize, l: usize) -> Self {
        MultilinearOp { dim, k, l, matrix: Matrix::zeros(words::pow(dim, l), words::pow(dim, k)) }
    }

    /// Identity on `A^{⊗k}`.
    pub fn identity(dim: usize, k: usize) -> Self {
        MultilinearOp { dim, k, l: k, matrix: Matrix::identity(words::pow(dim, k)) }
    }

    /// The (0,0) operator `c`, i.e. a scalar on the empty word.
    pub fn scalar(dim: usize, c: Scalar) -> Self {
        let mut m = Matrix::zeros(1, 1);
        m.add_to(0, 0, c);
        MultilinearOp { dim, k: 0, l: 0, matrix: m }
    }

    /// Builds from a function giving the image of each input word.
    pub fn from_fn<F>(dim: usize, k: usize, l: usize, mut image: F) -> Self
    where
        F: FnMut(&[usize]) -> Vec<(Vec<usize>, Scalar)>,
    {
        let mut m = Matrix::zeros(words::pow(dim, l), words::pow(dim, k));
        for c in 0..words::pow(dim, k) {
            let w = words::decode(c, dim, k);
            for (out, v) in image(&w) {
                assert_eq!(out.len(), l, "output word has wrong length");
                m.add_to(words::encode(&out, dim), c, v);
            }
        }
        MultilinearOp { dim, k, l, matrix: m }
    }

    /// Random operator: each matrix entry is nonzero with probability
    /// `density`, with value in `{-2, -1, 1, 2}`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, k: usize, l: usize, density: f64) -> Self {
        let rows = words::pow(dim, l);
        let cols = (0..words::pow(dim, k))
            .map(|_| {
                let mut c = SparseVec::new();
                for r in 0..rows {
                    if rng.gen_bool(density) {
                        let v = [-2, -1, 1, 2][rng.gen_range(0..4)];
                        c.insert(r, Scalar::from_int(v));
                    }
                }
                c
            })
            .collect();
        MultilinearOp { dim, k, l, matrix: Matrix::from_columns(rows, cols) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    /// Total degree `k - l`.
    pub fn degree(&self) -> i64 {
        self.k as i64 - self.l as i64
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        MultilinearOp { matrix: self.matrix.scale(s), ..*self }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_compatible(other)?;
        Ok(MultilinearOp { matrix: self.matrix.add(&other.matrix)?, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_compatible(other)?;
        Ok(MultilinearOp { matrix: self.matrix.sub(&other.matrix)?, ..*self })
    }

    /// Operator composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::AlgebraMismatch(self.dim, other.dim));
        }
        if self.k != other.l {
            return Err(Error::ArityViolation(format!(
                "cannot compose ({},{}) after ({},{})",
                self.k, self.l, other.k, other.l
            )));
        }
        Ok(MultilinearOp {
            dim: self.dim,
            k: other.k,
            l: self.l,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// Applies the operator to the window starting at `pos` of every word
    /// in `v`, a vector over words of length `len`; identity elsewhere.
    pub fn act_at(&self, v: &SparseVec, len: usize, pos: usize) -> SparseVec {
        debug_assert!(pos + self.k <= len);
        let suffix = len - pos - self.k;
        let mut out = SparseVec::new();
        for (&idx, c) in v {
            let (pre, mid, suf) = words::split3(idx, self.dim, self.k, suffix);
            for (&o, x) in self.matrix.column(mid) {
                add_entry(&mut out, words::join3(pre, o, suf, self.dim, self.l, suffix), c * x);
            }
        }
        out
    }

    /// Image of a single input word.
    pub fn eval_word(&self, word: &[usize]) -> Vec<(Vec<usize>, Scalar)> {
        assert_eq!(word.len(), self.k);
        self.matrix
            .column(words::encode(word, self.dim))
            .iter()
            .map(|(&o, v)| (words::decode(o, self.dim, self.l), v.clone()))
            .collect()
    }

    pub fn to_record(&self) -> OpRecord {
        let entries = self
            .matrix
            .triples()
            .map(|(r, c, v)| {
                (words::decode(c, self.dim, self.k), words::decode(r, self.dim, self.l), v.clone())
            })
            .collect();
        OpRecord { k: self.k, l: self.l, entries }
    }

    pub fn from_record(dim: usize, rec: &OpRecord) -> Result<Self, Error> {
        let mut m = Matrix::zeros(words::pow(dim, rec.l), words::pow(dim, rec.k));
        for (input, output, v) in &rec.entries {
            if input.len() != rec.k || output.len() != rec.l {
                return Err(Error::ArityViolation("entry word length disagrees with (k,l)".into()));
            }
            if input.iter().chain(output).any(|&i| i >= dim) {
                return Err(Error::ArityViolation("basis index outside algebra".into()));
            }
            m.add_to(words::encode(output, dim), words::encode(input, dim), v.clone());
        }
        MultilinearOp::new(dim, rec.k, rec.l, m)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), Error> {
        if self.dim != other.dim {
            return Err(Error::AlgebraMismatch(self.dim, other.dim));
        }
        if self.arity() != other.arity() {
            return Err(Error::ArityViolation(format!(
                "bi-arity {:?} vs {:?}",
                self.arity(),
                other.arity()
            )));
        }
        Ok(())
    }
}

/// Parity of `a * b` for a possibly negative `b`.
#[inline]
pub(crate) fn sign_of_product(a: usize, b: i64) -> Scalar {
    Scalar::sign((a % 2) * (b.rem_euclid(2) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_checked() {
        assert!(MultilinearOp::new(2, 1, 1, Matrix::zeros(2, 3)).is_err());
        let z = MultilinearOp::zero(3, 0, 2);
        assert_eq!((z.matrix().rows(), z.matrix().cols()), (9, 1));
        assert_eq!(z.degree(), -2);
    }

    #[test]
    fn act_at_middle_window() {
        // swap on A^{⊗2}, applied at position 1 of a length-3 word
        let swap = MultilinearOp::from_fn(2, 2, 2, |w| vec![(vec![w[1], w[0]], Scalar::one())]);
        let v: SparseVec = [(words::encode(&[1, 0, 1], 2), Scalar::one())].into();
        let out = swap.act_at(&v, 3, 1);
        assert_eq!(out, SparseVec::from([(words::encode(&[1, 1, 0], 2), Scalar::one())]));
    }

    #[test]
    fn record_roundtrip() {
        let op = MultilinearOp::from_fn(2, 1, 2, |w| {
            vec![(vec![w[0], 1], Scalar::from_int(2)), (vec![1, w[0]], Scalar::new(-1, 3).unwrap())]
        });
        let rec = op.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back = MultilinearOp::from_record(2, &serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, op);
    }
}
