//! Rank, solving and cohomology dimensions.
//!
//! Rank uses fraction-free elimination over the integers: every vector is
//! scaled to a primitive integer vector, and a reduction step
//! `v <- p*v - a*pivot` is followed by division by the content, so entries
//! stay as small as the gcd structure allows and no rational arithmetic
//! happens in the inner loop.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactla::{axpy, Matrix, Scalar, SparseVec};

type IntVec = BTreeMap<usize, BigInt>;

fn primitive_int_vec(v: &SparseVec) -> IntVec {
    let mut lcm = BigInt::one();
    for x in v.values() {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: IntVec = v
        .iter()
        .map(|(&i, x)| (i, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut IntVec) {
    let mut g = BigInt::zero();
    for x in v.values() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.values_mut() {
        *x /= &g;
    }
}

/// Incremental echelon basis over the integers, keyed by leading index.
#[derive(Default)]
struct IntEchelon {
    pivots: BTreeMap<usize, IntVec>,
}

impl IntEchelon {
    /// Reduces `v` against the basis; inserts it if independent. Returns
    /// whether the rank grew.
    fn insert(&mut self, mut v: IntVec) -> bool {
        loop {
            let Some((&lead, _)) = v.iter().next() else {
                return false;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                if v[&lead].is_negative() {
                    for x in v.values_mut() {
                        *x = -&*x;
                    }
                }
                self.pivots.insert(lead, v);
                return true;
            };
            let p = &pivot[&lead];
            let a = &v[&lead];
            let g = p.gcd(a);
            let (pm, am) = (p / &g, a / &g);
            let mut next = IntVec::new();
            for (&i, x) in &v {
                let y = x * &pm;
                if !y.is_zero() {
                    next.insert(i, y);
                }
            }
            for (&i, x) in pivot {
                let e = next.entry(i).or_insert_with(BigInt::zero);
                *e -= x * &am;
                if e.is_zero() {
                    next.remove(&i);
                }
            }
            debug_assert!(!next.contains_key(&lead));
            make_primitive(&mut next);
            v = next;
        }
    }
}

/// Rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    // Rank of the column set; work on whichever side has fewer vectors.
    let vectors: Vec<SparseVec> = if m.cols() <= m.rows() {
        m.columns().to_vec()
    } else {
        m.transpose().columns().to_vec()
    };
    let mut ech = IntEchelon::default();
    let mut r = 0;
    for v in &vectors {
        if v.is_empty() {
            continue;
        }
        if ech.insert(primitive_int_vec(v)) {
            r += 1;
        }
    }
    r
}

/// `dim ker(d_out) - rank(d_in)` for `d_in: X -> M`, `d_out: M -> Y`.
pub fn cohomology_dim(d_in: &Matrix, d_out: &Matrix) -> Result<usize, Error> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch {
            context: "cohomology_dim: cols(d_out) must equal rows(d_in)",
            left: (d_out.rows(), d_out.cols()),
            right: (d_in.rows(), d_in.cols()),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    let mid = d_in.rows();
    let kernel = mid - rank(d_out);
    let image = rank(d_in);
    debug_assert!(image <= kernel);
    Ok(kernel - image)
}

/// Reduced row echelon form over the rationals of a set of row vectors.
/// Returns `(pivot_col -> row)`, each row normalized to 1 at its pivot and
/// zero in every other pivot column.
fn rref_rows(rows: Vec<SparseVec>) -> BTreeMap<usize, SparseVec> {
    let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for mut v in rows {
        for (pc, prow) in &pivots {
            if let Some(c) = v.get(pc).cloned() {
                axpy(&mut v, &-c, prow);
            }
        }
        let Some((&lead, lv)) = v.iter().next() else { continue };
        let inv = lv.inv().expect("nonzero leading entry");
        for x in v.values_mut() {
            *x *= &inv;
        }
        for prow in pivots.values_mut() {
            if let Some(c) = prow.get(&lead).cloned() {
                axpy(prow, &-c, &v);
            }
        }
        pivots.insert(lead, v);
    }
    pivots
}

/// Finds some `x` with `a * x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &Matrix, b: &SparseVec) -> Result<Option<SparseVec>, Error> {
    if let Some((&last, _)) = b.iter().next_back() {
        if last >= a.rows() {
            return Err(Error::DimensionMismatch {
                context: "solve: right-hand side longer than matrix rows",
                left: (a.rows(), a.cols()),
                right: (last + 1, 1),
            });
        }
    }
    // Rows of the augmented matrix [A | b]; the augmented column is index `n`.
    let n = a.cols();
    let t = a.transpose();
    let rows: Vec<SparseVec> = (0..a.rows())
        .map(|r| {
            let mut row = t.column(r).clone();
            if let Some(v) = b.get(&r) {
                row.insert(n, v.clone());
            }
            row
        })
        .collect();
    let pivots = rref_rows(rows);
    if pivots.contains_key(&n) {
        return Ok(None);
    }
    let mut x = SparseVec::new();
    for (&pc, row) in &pivots {
        if let Some(v) = row.get(&n) {
            x.insert(pc, v.clone());
        }
    }
    Ok(Some(x))
}

/// Basis of the null space of `m`, one sparse vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<SparseVec> {
    let t = m.transpose();
    let rows: Vec<SparseVec> = (0..m.rows()).map(|r| t.column(r).clone()).collect();
    let pivots = rref_rows(rows);
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains_key(c)) {
        let mut v = SparseVec::new();
        v.insert(free, Scalar::one());
        for (&pc, row) in &pivots {
            if let Some(c) = row.get(&free) {
                v.insert(pc, -c);
            }
        }
        basis.push(v);
    }
    basis
}
