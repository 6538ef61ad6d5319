use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{add_entry, cohomology_dim, rank, Matrix, Scalar, SparseVec};

/// Sorted `p`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts a word of distinct letters, returning the permutation sign, or
/// `None` if a letter repeats.
pub fn sort_with_sign(word: &[usize]) -> Option<(Vec<usize>, Scalar)> {
    let mut w = word.to_vec();
    let mut swaps = 0;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                swaps += 1;
            } else if w[j] == w[j + 1] {
                return None;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, Scalar::sign(swaps)))
}

/// A cochain complex `0 -> Λ^0 -> Λ^1 -> .. -> Λ^n` with `Q_i : Λ^i -> Λ^{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QComplex {
    pub n: usize,
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QReport {
    pub claim: String,
    pub n: usize,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub bounds_ok: bool,
    pub pass: bool,
}

impl QComplex {
    pub fn zero(n: usize) -> Self {
        QComplex { n, maps: (0..n).map(|i| Matrix::zeros(binomial(n, i + 1), binomial(n, i))).collect() }
    }

    fn check_shapes(&self) -> Result<(), Error> {
        if self.maps.len() != self.n {
            return Err(Error::ShapeMismatch(format!("expected {} maps, got {}", self.n, self.maps.len())));
        }
        for (i, m) in self.maps.iter().enumerate() {
            let want = (binomial(self.n, i + 1), binomial(self.n, i));
            if (m.rows(), m.cols()) != want {
                return Err(Error::ShapeMismatch(format!(
                    "Q_{i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(())
    }

    /// `Q_{i+1} Q_i = 0` for every `i`.
    pub fn check_complex(&self) -> Result<(), Error> {
        self.check_shapes()?;
        for i in 0..self.n.saturating_sub(1) {
            if !self.maps[i + 1].mul(&self.maps[i])?.is_zero() {
                return Err(Error::NotAComplexAt(i));
            }
        }
        Ok(())
    }

    pub fn betti(&self) -> Result<Vec<usize>, Error> {
        self.check_complex()?;
        let n = self.n;
        (0..=n)
            .map(|i| {
                let d_in = if i == 0 { Matrix::zeros(1, 0) } else { self.maps[i - 1].clone() };
                let d_out = if i == n { Matrix::zeros(0, 1) } else { self.maps[i].clone() };
                cohomology_dim(&d_in, &d_out)
            })
            .collect()
    }

    /// `Q_i -> A_{i+1} Q_i A_i^{-1}`; `inverses[i]` must be the inverse of `changes[i]`.
    pub fn conjugate(&self, changes: &[Matrix], inverses: &[Matrix]) -> Result<QComplex, Error> {
        let maps = (0..self.n)
            .map(|i| changes[i + 1].mul(&self.maps[i])?.mul(&inverses[i]))
            .collect::<Result<_, _>>()?;
        Ok(QComplex { n: self.n, maps })
    }
}

pub fn q_complex_check(q: &QComplex) -> Result<QReport, Error> {
    let betti = q.betti()?;
    let euler: i64 = betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    let bounds_ok = betti.iter().enumerate().all(|(i, &b)| b <= binomial(q.n, i));
    // the alternating sum of C(n,i) vanishes only for n >= 1
    let euler_expected = if q.n == 0 { 1 } else { 0 };
    Ok(QReport {
        claim: format!("q-complex:n={}", q.n),
        n: q.n,
        betti,
        euler_characteristic: euler,
        bounds_ok,
        pass: bounds_ok && euler == euler_expected,
    })
}

/// The complete invariant of a complex under grading-preserving changes of basis.
pub fn gauge_invariants(q: &QComplex) -> Result<Vec<usize>, Error> {
    q.betti()
}

/// Random invertible `n x n` matrix with entries in `-2..=2`, with its inverse.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> (Matrix, Matrix) {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let m = Matrix::from_int_rows(&rows);
        if n == 0 {
            return (Matrix::zeros(0, 0), Matrix::zeros(0, 0));
        }
        if rank(&m) == n {
            let inv = invert(&m).expect("full rank");
            return (m, inv);
        }
    }
}

fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let cols = (0..n)
        .map(|j| {
            let e: SparseVec = [(j, Scalar::one())].into();
            crate::exactla::solve(m, &e).ok().flatten()
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_columns(n, cols))
}

/// Structure constants `[e_i, e_j] = Σ_k c_{ij}^k e_k` of an `n`-dimensional Lie algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieStructure {
    pub name: String,
    pub n: usize,
    /// `(i, j, k, c)`; only `i < j` needs to be listed, the rest follows by antisymmetry.
    pub constants: Vec<(usize, usize, usize, Scalar)>,
}

impl LieStructure {
    pub fn abelian(n: usize) -> Self {
        LieStructure { name: format!("abelian{n}"), n, constants: Vec::new() }
    }

    /// Basis `x, y` with `[x, y] = y`.
    pub fn nonabelian2() -> Self {
        LieStructure { name: "nonabelian2".into(), n: 2, constants: vec![(0, 1, 1, Scalar::one())] }
    }

    pub fn by_name(name: &str) -> Result<Self, Error> {
        if name == "nonabelian2" {
            return Ok(Self::nonabelian2());
        }
        name.strip_prefix("abelian")
            .and_then(|r| r.parse().ok())
            .map(Self::abelian)
            .ok_or_else(|| Error::UnknownName(name.into()))
    }

    /// Full table `c[(i, j)] = [e_i, e_j]`, checked for antisymmetry.
    pub fn table(&self) -> Result<BTreeMap<(usize, usize), SparseVec>, Error> {
        let mut t: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        let mut explicit: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, k, c) in &self.constants {
            if *i >= self.n || *j >= self.n || *k >= self.n {
                return Err(Error::ShapeMismatch(format!("index out of range in ({i},{j},{k})")));
            }
            if i == j && !c.is_zero() {
                return Err(Error::NotAntisymmetric(*i, *j));
            }
            *explicit.entry((*i, *j, *k)).or_insert_with(Scalar::zero) += c;
        }
        for (&(i, j, k), c) in &explicit {
            if let Some(other) = explicit.get(&(j, i, k)) {
                if !(other + c).is_zero() {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
            add_entry(t.entry((i, j)).or_default(), k, c.clone());
            if !explicit.contains_key(&(j, i, k)) {
                add_entry(t.entry((j, i)).or_default(), k, -c);
            }
        }
        Ok(t)
    }

    fn bracket_vec(t: &BTreeMap<(usize, usize), SparseVec>, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                if let Some(c) = t.get(&(i, j)) {
                    for (&k, x) in c {
                        add_entry(&mut out, k, &(a * b) * x);
                    }
                }
            }
        }
        out
    }

    /// First triple `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_witness(&self) -> Result<Option<(usize, usize, usize)>, Error> {
        let t = self.table()?;
        let e = |i: usize| -> SparseVec { [(i, Scalar::one())].into() };
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let mut sum = SparseVec::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = Self::bracket_vec(&t, &e(a), &e(b));
                        for (idx, v) in Self::bracket_vec(&t, &inner, &e(c)) {
                            add_entry(&mut sum, idx, v);
                        }
                    }
                    if !sum.is_empty() {
                        return Ok(Some((i, j, k)));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Chevalley–Eilenberg differential on `Λ^• g^*` with trivial coefficients:
/// `d e^k = -Σ_{i<j} c_{ij}^k e^i ∧ e^j`, extended as a graded derivation.
pub fn ce_differential(g: &LieStructure) -> Result<QComplex, Error> {
    let t = g.table()?;
    let n = g.n;
    // d of each generator, as a list of (sorted pair, coefficient)
    let mut dgen: Vec<Vec<(Vec<usize>, Scalar)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if let Some(c) = t.get(&(i, j)) {
                for (&k, x) in c {
                    dgen[k].push((vec![i, j], -x));
                }
            }
        }
    }
    let mut maps = Vec::with_capacity(n);
    for p in 0..n {
        let src = subsets(n, p);
        let dst = subsets(n, p + 1);
        let pos: BTreeMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (ci, mono) in src.iter().enumerate() {
            for r in 0..mono.len() {
                for (pair, c) in &dgen[mono[r]] {
                    let mut word = mono[..r].to_vec();
                    word.extend_from_slice(pair);
                    word.extend_from_slice(&mono[r + 1..]);
                    if let Some((sorted, s)) = sort_with_sign(&word) {
                        m.add_to(pos[&sorted], ci, &(Scalar::sign(r) * s) * c);
                    }
                }
            }
        }
        maps.push(m);
    }
    let q = QComplex { n, maps };
    match q.check_complex() {
        Ok(()) => Ok(q),
        Err(Error::NotAComplexAt(_)) => match g.jacobi_witness()? {
            Some(triple) => Err(Error::JacobiFailure { triple }),
            None => Err(Error::InvariantFailure("Q^2 != 0 although Jacobi holds".into())),
        },
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_complex_has_full_betti() {
        let r = q_complex_check(&QComplex::zero(2)).unwrap();
        assert_eq!(r.betti, vec![1, 2, 1]);
        assert!(r.pass);
        assert_eq!(gauge_invariants(&QComplex::zero(1)).unwrap(), vec![1, 1]);
    }

    #[test]
    fn acyclic_two_term() {
        let q = QComplex { n: 1, maps: vec![Matrix::from_int_rows(&[vec![3]])] };
        assert_eq!(gauge_invariants(&q).unwrap(), vec![0, 0]);
    }

    #[test]
    fn guards() {
        let q = QComplex { n: 2, maps: vec![Matrix::from_int_rows(&[vec![1], vec![0]]), Matrix::from_int_rows(&[vec![1, 0]])] };
        assert!(matches!(q_complex_check(&q), Err(Error::NotAComplexAt(0))));
        let bad = QComplex { n: 2, maps: vec![Matrix::zeros(2, 2), Matrix::zeros(1, 2)] };
        assert!(matches!(q_complex_check(&bad), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn lie_cohomology() {
        let q = ce_differential(&LieStructure::nonabelian2()).unwrap();
        // d y* = -x* ∧ y*
        assert_eq!(q.maps[1], Matrix::from_int_rows(&[vec![0, -1]]));
        let r = q_complex_check(&q).unwrap();
        assert_eq!(r.betti, vec![1, 1, 0]);
        assert!(r.pass);
        assert_eq!(q_complex_check(&ce_differential(&LieStructure::abelian(2)).unwrap()).unwrap().betti, vec![1, 2, 1]);
    }

    #[test]
    fn jacobi_failure_is_detected() {
        let g = LieStructure {
            name: "bad".into(),
            n: 3,
            constants: vec![(0, 1, 0, Scalar::one()), (1, 2, 1, Scalar::one())],
        };
        assert!(matches!(ce_differential(&g), Err(Error::JacobiFailure { triple: (0, 1, 2) })));
        let asym = LieStructure { name: "a".into(), n: 2, constants: vec![(0, 1, 0, Scalar::one()), (1, 0, 0, Scalar::one())] };
        assert!(matches!(asym.table(), Err(Error::NotAntisymmetric(..))));
    }

    #[test]
    fn conjugation_keeps_betti() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let q = ce_differential(&LieStructure::nonabelian2()).unwrap();
        let (a, ai): (Vec<_>, Vec<_>) = (0..=2).map(|i| random_invertible(&mut rng, binomial(2, i))).unzip();
        let q2 = q.conjugate(&a, &ai).unwrap();
        assert_eq!(gauge_invariants(&q2).unwrap(), gauge_invariants(&q).unwrap());
    }
}
