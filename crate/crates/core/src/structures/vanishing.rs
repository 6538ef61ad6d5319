use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lie::binomial;
use crate::algebra::{truncated_polynomial_algebra, Algebra};
use crate::bicomplex::{bar_homology, total_cohomology, Bicomplex, CohomologyTable, Window};
use crate::error::Error;
use crate::exactla::{cohomology_dim, Matrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitalReport {
    pub claim: String,
    pub algebra: String,
    pub k_max: usize,
    pub l_max: usize,
    /// `(k, l, dim)` for interior rows where the column complex is not exact.
    pub column_failures: Vec<(usize, usize, usize)>,
    /// Cohomology of the `l = 0` row at `k = 0..k_max-1`.
    pub row0_cohomology: Vec<usize>,
    /// Homology of the bar complex at `A^{⊗l}`, `l = 0..l_max-1`.
    pub bar_homology: Vec<usize>,
    pub windowed: CohomologyTable,
    pub pass: bool,
}

/// Evidence that the complex of a unital algebra is `C` in degree 0: each
/// column `Hom(A^k, B)` is exact at interior rows, the bottom row (the dual
/// bar complex) is `C` at `k = 0` and exact after, and so is the bar complex.
pub fn verify_unital_vanishing(a: &Algebra, k_max: usize, l_max: usize) -> Result<UnitalReport, Error> {
    if a.unit().is_none() {
        return Err(Error::NoUnit(a.name().to_string()));
    }
    let b = Bicomplex::assemble(a, Window::Rect { k_max, l_max })?;
    let zero_into = |rows: usize| Matrix::zeros(rows, 0);
    let zero_from = |cols: usize| Matrix::zeros(0, cols);

    let mut column_failures = Vec::new();
    for k in 0..=k_max {
        for l in 1..l_max {
            let d_in = &b.d2[&(k, l + 1)];
            let d_out = &b.d2[&(k, l)];
            let h = cohomology_dim(d_in, d_out)?;
            if h != 0 {
                column_failures.push((k, l, h));
            }
        }
    }

    let row0_cohomology = (0..k_max)
        .map(|k| {
            let dim = b.slots[&(k, 0)].dim();
            let d_in = if k == 0 { zero_into(dim) } else { b.d1[&(k - 1, 0)].clone() };
            let d_out = b.d1.get(&(k, 0)).cloned().unwrap_or_else(|| zero_from(dim));
            cohomology_dim(&d_in, &d_out)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let bar = bar_homology(a, l_max);
    let expect = |len: usize| (0..len).map(|i| usize::from(i == 0)).collect::<Vec<_>>();
    let pass = column_failures.is_empty() && row0_cohomology == expect(k_max) && bar == expect(l_max);
    Ok(UnitalReport {
        claim: format!("thm3:{}:K={k_max}:L={l_max}", a.name()),
        algebra: a.name().to_string(),
        k_max,
        l_max,
        column_failures,
        row0_cohomology,
        bar_homology: bar,
        windowed: total_cohomology(&b)?,
        pass,
    })
}

/// Predicted cohomology of polynomials without constant term in `n`
/// variables: `Λ(V) ⊗ Λ(V^*)`, the block `(p, q)` contributing `C(n,p) C(n,q)`
/// in degree `p - q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliffordTable {
    pub n: usize,
    pub total_by_degree: BTreeMap<i64, usize>,
}

impl CliffordTable {
    pub fn new(n: usize) -> Self {
        let mut total_by_degree = BTreeMap::new();
        for p in 0..=n {
            for q in 0..=n {
                *total_by_degree.entry(p as i64 - q as i64).or_insert(0) += binomial(n, p) * binomial(n, q);
            }
        }
        CliffordTable { n, total_by_degree }
    }

    /// `(degree, dimension)` expected in block `(p, q)`.
    pub fn expected(&self, p: usize, q: usize) -> (i64, usize) {
        (p as i64 - q as i64, binomial(self.n, p) * binomial(self.n, q))
    }

    pub fn total(&self) -> usize {
        self.total_by_degree.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sv0Report {
    pub claim: String,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub dims: BTreeMap<i64, usize>,
    pub expected_degree: i64,
    pub expected_dim: usize,
    pub pass: bool,
}

/// Block `(p, q)` of the complex of `S(V)_0` truncated at `max(p, q, 1)`.
pub fn verify_sv0_cohomology(n: usize, p: usize, q: usize) -> Result<Sv0Report, Error> {
    let d = p.max(q).max(1) as u32;
    let a = truncated_polynomial_algebra(n, d);
    let b = Bicomplex::assemble(&a, Window::Bidegree { p: p as u32, q: q as u32 })?;
    let t = total_cohomology(&b)?;
    let (deg, dim) = CliffordTable::new(n).expected(p, q);
    let pass = t.by_total_degree.iter().all(|(&i, &h)| h == if i == deg { dim } else { 0 })
        && (dim == 0 || t.by_total_degree.contains_key(&deg));
    Ok(Sv0Report {
        claim: format!("thm4:n={n}:p={p}:q={q}"),
        n,
        p,
        q,
        dims: t.by_total_degree,
        expected_degree: deg,
        expected_dim: dim,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, ground_field, square_zero};

    #[test]
    fn unital_examples() {
        let r = verify_unital_vanishing(&ground_field(), 4, 4).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.windowed.reliable.is_empty());
        assert!(verify_unital_vanishing(&dual_numbers(), 3, 3).unwrap().pass);
        assert!(matches!(verify_unital_vanishing(&square_zero(2), 2, 2), Err(Error::NoUnit(_))));
    }

    #[test]
    fn clifford_totals() {
        for n in 1..=3 {
            assert_eq!(CliffordTable::new(n).total(), 4usize.pow(n as u32));
        }
        assert_eq!(CliffordTable::new(2).total_by_degree[&0], 6);
    }

    #[test]
    fn sv0_examples() {
        let r = verify_sv0_cohomology(1, 1, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.dims.get(&0), Some(&1));
        let r = verify_sv0_cohomology(1, 2, 0).unwrap();
        assert!(r.pass);
        assert!(r.dims.values().all(|&d| d == 0));
        let r = verify_sv0_cohomology(2, 1, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.dims.get(&0), Some(&4));
    }
}
