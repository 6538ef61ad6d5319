use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::op::{MultilinearOp, OpRecord};
use crate::error::Error;
use crate::exactla::Scalar;

/// A finite sum of multilinear operators of mixed bi-arity, keyed by `(k, l)`.
/// Zero components are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSum {
    dim: usize,
    parts: BTreeMap<(usize, usize), MultilinearOp>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpSumRecord {
    pub dim: usize,
    pub components: Vec<OpRecord>,
}

impl OpSum {
    pub fn zero(dim: usize) -> Self {
        OpSum { dim, parts: BTreeMap::new() }
    }

    pub fn from_op(op: MultilinearOp) -> Self {
        let mut s = OpSum::zero(op.dim());
        s.add_op(&op).expect("same dimension");
        s
    }

    pub fn from_ops<I: IntoIterator<Item = MultilinearOp>>(dim: usize, ops: I) -> Result<Self, Error> {
        let mut s = OpSum::zero(dim);
        for op in ops {
            s.add_op(&op)?;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, k: usize, l: usize) -> Option<&MultilinearOp> {
        self.parts.get(&(k, l))
    }

    /// Component at `(k, l)`, zero if absent.
    pub fn component(&self, k: usize, l: usize) -> MultilinearOp {
        self.get(k, l).cloned().unwrap_or_else(|| MultilinearOp::zero(self.dim, k, l))
    }

    pub fn components(&self) -> impl Iterator<Item = &MultilinearOp> {
        self.parts.values()
    }

    /// Bi-arities carrying a nonzero component.
    pub fn spectrum(&self) -> Vec<(usize, usize)> {
        self.parts.keys().copied().collect()
    }

    pub fn add_op(&mut self, op: &MultilinearOp) -> Result<(), Error> {
        if op.dim() != self.dim {
            return Err(Error::AlgebraMismatch(self.dim, op.dim()));
        }
        if op.is_zero() {
            return Ok(());
        }
        let key = op.arity();
        let merged = match self.parts.remove(&key) {
            Some(old) => old.add(op)?,
            None => op.clone(),
        };
        if !merged.is_zero() {
            self.parts.insert(key, merged);
        }
        Ok(())
    }

    pub fn add_scaled_op(&mut self, c: &Scalar, op: &MultilinearOp) -> Result<(), Error> {
        if c.is_zero() {
            return Ok(());
        }
        self.add_op(&op.scale(c))
    }

    pub fn add(&self, other: &OpSum) -> Result<OpSum, Error> {
        let mut out = self.clone();
        for op in other.components() {
            out.add_op(op)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &OpSum) -> Result<OpSum, Error> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> OpSum {
        if c.is_zero() {
            return OpSum::zero(self.dim);
        }
        OpSum { dim: self.dim, parts: self.parts.iter().map(|(&k, op)| (k, op.scale(c))).collect() }
    }

    /// True if every component has the given total degree.
    pub fn is_homogeneous_of_degree(&self, d: i64) -> bool {
        self.parts.values().all(|op| op.degree() == d)
    }

    pub fn to_record(&self) -> OpSumRecord {
        OpSumRecord { dim: self.dim, components: self.parts.values().map(|op| op.to_record()).collect() }
    }

    pub fn from_record(rec: &OpSumRecord) -> Result<Self, Error> {
        let mut s = OpSum::zero(rec.dim);
        for c in &rec.components {
            s.add_op(&MultilinearOp::from_record(rec.dim, c)?)?;
        }
        Ok(s)
    }
}

impl From<MultilinearOp> for OpSum {
    fn from(op: MultilinearOp) -> Self {
        OpSum::from_op(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancelling_components_are_dropped() {
        let id = MultilinearOp::identity(2, 1);
        let mut s = OpSum::from_op(id.clone());
        s.add_op(&MultilinearOp::scalar(2, Scalar::one())).unwrap();
        assert_eq!(s.spectrum(), vec![(0, 0), (1, 1)]);
        s.add_scaled_op(&-Scalar::one(), &id).unwrap();
        assert_eq!(s.spectrum(), vec![(0, 0)]);
        assert!(s.sub(&s).unwrap().is_zero());
    }

    #[test]
    fn dimension_checked() {
        let mut s = OpSum::zero(2);
        assert!(matches!(
            s.add_op(&MultilinearOp::identity(3, 1)),
            Err(Error::AlgebraMismatch(2, 3))
        ));
    }
}
