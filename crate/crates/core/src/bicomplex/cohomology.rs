use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::assemble::{Bicomplex, Window};
use crate::error::Error;
use crate::exactla::{cohomology_dim, Matrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub algebra: String,
    pub window: Window,
    /// Total degree `k - l` to cohomology dimension, for every degree met by the window.
    pub by_total_degree: BTreeMap<i64, usize>,
    /// Degrees whose value is not affected by cutting the complex off.
    pub reliable: Vec<i64>,
}

impl CohomologyTable {
    pub fn reliable_dims(&self) -> BTreeMap<i64, usize> {
        self.reliable.iter().map(|i| (*i, self.by_total_degree[i])).collect()
    }

    /// Dimensions summed over degrees, ignoring reliability.
    pub fn total(&self) -> usize {
        self.by_total_degree.values().sum()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra {}  window {:?}", self.algebra, self.window);
        let _ = writeln!(s, "{:>7} {:>6} {:>9}", "degree", "dim", "reliable");
        for (i, d) in &self.by_total_degree {
            let r = if self.reliable.contains(i) { "yes" } else { "no" };
            let _ = writeln!(s, "{i:>7} {d:>6} {r:>9}");
        }
        s
    }
}

type Placed = Vec<((usize, usize), usize)>;

/// Slots of total degree `i`, in increasing `k`, with their offsets.
fn layout(b: &Bicomplex, i: i64) -> (Placed, usize) {
    let mut off = 0;
    let mut out = Vec::new();
    for (&(k, l), s) in &b.slots {
        if k as i64 - l as i64 == i {
            out.push(((k, l), off));
            off += s.dim();
        }
    }
    (out, off)
}

/// Offset of slot `(k, l)` inside the total-degree `k - l` cochains.
pub fn slot_offset(b: &Bicomplex, k: usize, l: usize) -> Option<usize> {
    let (lay, _) = layout(b, k as i64 - l as i64);
    lay.into_iter().find(|(key, _)| *key == (k, l)).map(|(_, o)| o)
}

/// Dimension of the total-degree `i` cochains.
pub fn total_dim(b: &Bicomplex, i: i64) -> usize {
    layout(b, i).1
}

fn place(target: &mut Matrix, block: &Matrix, row0: usize, col0: usize) {
    for (r, c, v) in block.triples() {
        target.add_to(row0 + r, col0 + c, v.clone());
    }
}

/// Matrix of `d = d1 + d2 : C^i -> C^{i+1}`.
pub fn total_differential(b: &Bicomplex, i: i64) -> Matrix {
    let (src, ncols) = layout(b, i);
    let (dst, nrows) = layout(b, i + 1);
    let at = |key: (usize, usize)| dst.iter().find(|(k, _)| *k == key).map(|(_, o)| *o);
    let mut m = Matrix::zeros(nrows, ncols);
    for &((k, l), col0) in &src {
        if let (Some(d), Some(row0)) = (b.d1.get(&(k, l)), at((k + 1, l))) {
            place(&mut m, d, row0, col0);
        }
        if l >= 1 {
            if let (Some(d), Some(row0)) = (b.d2.get(&(k, l)), at((k, l - 1))) {
                place(&mut m, d, row0, col0);
            }
        }
    }
    m
}

pub fn total_cohomology(b: &Bicomplex) -> Result<CohomologyTable, Error> {
    let degrees: Vec<i64> = {
        let mut d: Vec<i64> = b.slots.keys().map(|&(k, l)| k as i64 - l as i64).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let mut by_total_degree = BTreeMap::new();
    let mut reliable = Vec::new();
    for &i in &degrees {
        let d_in = total_differential(b, i - 1);
        let d_out = total_differential(b, i);
        by_total_degree.insert(i, cohomology_dim(&d_in, &d_out)?);
        let ok = match b.window {
            Window::Bidegree { .. } => true,
            // A degree is trusted only if nothing on its neighbouring
            // anti-diagonals lies on or past the cut. Anti-diagonals are
            // infinite and Hom spaces over a nonzero algebra never vanish.
            Window::Rect { .. } => b.dim == 0,
        };
        if ok {
            reliable.push(i);
        }
    }
    Ok(CohomologyTable { algebra: b.algebra.clone(), window: b.window, by_total_degree, reliable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground_field, truncated_polynomial_algebra};

    fn bidegree(n: usize, p: u32, q: u32) -> CohomologyTable {
        let a = truncated_polynomial_algebra(n, p.max(q).max(1));
        total_cohomology(&Bicomplex::assemble(&a, Window::Bidegree { p, q }).unwrap()).unwrap()
    }

    #[test]
    fn corner_block() {
        let t = bidegree(2, 0, 0);
        assert_eq!(t.by_total_degree, BTreeMap::from([(0, 1)]));
        assert_eq!(t.reliable, vec![0]);
    }

    #[test]
    fn small_blocks() {
        let t = bidegree(1, 1, 1);
        assert_eq!(t.by_total_degree.get(&0), Some(&1));
        assert_eq!(t.total(), 1);
        assert_eq!(bidegree(1, 2, 1).total(), 0);
        assert_eq!(bidegree(2, 1, 1).by_total_degree.get(&0), Some(&4));
    }

    #[test]
    fn rectangular_windows_are_flagged() {
        let b = Bicomplex::assemble(&ground_field(), Window::Rect { k_max: 4, l_max: 4 }).unwrap();
        let t = total_cohomology(&b).unwrap();
        assert!(t.reliable.is_empty());
        assert_eq!(t.by_total_degree.len(), 9);
        assert!(t.to_text().contains("degree"));
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<CohomologyTable>(&json).unwrap(), t);
    }
}
