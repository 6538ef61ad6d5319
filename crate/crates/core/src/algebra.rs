//! Finite-dimensional associative algebras given by structure constants,
//! truncated polynomial algebras without unit, and tensor bases.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{add_entry, axpy, Matrix, Scalar, SparseVec};
use crate::operators::MultilinearOp;
use crate::words;

/// JSON description of an algebra. Indices are 0-based; omitted triples are zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraSpecDocument {
    pub name: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub mult: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default)]
    pub unit: Option<usize>,
    #[serde(default)]
    pub grading: Option<Vec<u32>>,
    #[serde(default)]
    pub truncation_degree: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    labels: Vec<String>,
    /// `products[i][j]` is `e_i * e_j` as a sparse vector.
    products: Vec<Vec<SparseVec>>,
    /// `factorizations[k]` lists `(i, j, c)` with `c = coefficient of e_k in e_i*e_j`.
    factorizations: Vec<Vec<(usize, usize, Scalar)>>,
    unit: Option<usize>,
    grading: Option<Vec<u32>>,
    truncation_degree: Option<u32>,
    /// Exponent vectors, present for truncated polynomial algebras.
    exponents: Option<Vec<Vec<u32>>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.labels == other.labels
            && self.products == other.products
            && self.unit == other.unit
            && self.grading == other.grading
            && self.truncation_degree == other.truncation_degree
    }
}

impl Algebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn grading(&self) -> Option<&[u32]> {
        self.grading.as_deref()
    }

    pub fn truncation_degree(&self) -> Option<u32> {
        self.truncation_degree
    }

    pub fn exponents(&self) -> Option<&[Vec<u32>]> {
        self.exponents.as_deref()
    }

    /// `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i][j]
    }

    /// Structure constant: coefficient of `e_k` in `e_i * e_j`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.products[i][j].get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// All `(i, j, c)` with `e_i * e_j` having coefficient `c != 0` on `e_k`.
    pub fn factorizations(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.factorizations[k]
    }

    /// Product of two elements given in coordinates.
    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, x) in a {
            for (&j, y) in b {
                axpy(&mut out, &(x * y), &self.products[i][j]);
            }
        }
        out
    }

    /// Total degree of a tensor word, if graded.
    pub fn word_degree(&self, word: &[usize]) -> Option<u32> {
        self.grading.as_ref().map(|g| word.iter().map(|&w| g[w]).sum())
    }

    /// Builds an algebra from raw parts and validates every invariant.
    pub fn from_spec(spec: &AlgebraSpecDocument) -> Result<Algebra, Error> {
        let n = spec.basis.len();
        if n == 0 {
            return Err(Error::MalformedSpec("empty basis".into()));
        }
        let mut products = vec![vec![SparseVec::new(); n]; n];
        for (i, j, k, c) in &spec.mult {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::MalformedSpec(format!(
                    "structure constant index ({i},{j},{k}) outside basis of size {n}"
                )));
            }
            add_entry(&mut products[*i][*j], *k, c.clone());
        }
        if let Some(u) = spec.unit {
            if u >= n {
                return Err(Error::MalformedSpec(format!("unit index {u} outside basis")));
            }
        }
        if let Some(g) = &spec.grading {
            if g.len() != n {
                return Err(Error::MalformedSpec(format!(
                    "grading has {} entries for {n} basis elements",
                    g.len()
                )));
            }
        }
        if spec.truncation_degree.is_some() && spec.grading.is_none() {
            return Err(Error::MalformedSpec("truncation_degree requires a grading".into()));
        }
        let alg = Algebra::assemble(
            spec.name.clone(),
            spec.basis.clone(),
            products,
            spec.unit,
            spec.grading.clone(),
            spec.truncation_degree,
            None,
        );
        alg.validate()?;
        Ok(alg)
    }

    fn assemble(
        name: String,
        labels: Vec<String>,
        products: Vec<Vec<SparseVec>>,
        unit: Option<usize>,
        grading: Option<Vec<u32>>,
        truncation_degree: Option<u32>,
        exponents: Option<Vec<Vec<u32>>>,
    ) -> Algebra {
        let n = labels.len();
        let mut factorizations = vec![Vec::new(); n];
        for (i, row) in products.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (&k, c) in p {
                    factorizations[k].push((i, j, c.clone()));
                }
            }
        }
        Algebra { name, labels, products, factorizations, unit, grading, truncation_degree, exponents }
    }

    /// Checks grading, unit and associativity (in that order).
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.dim();
        if let Some(g) = &self.grading {
            for i in 0..n {
                for j in 0..n {
                    let total = g[i] + g[j];
                    for &k in self.products[i][j].keys() {
                        let truncated = self.truncation_degree.is_some_and(|d| total > d);
                        if g[k] != total || truncated {
                            return Err(Error::GradingViolation { i, j, k });
                        }
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            for i in 0..n {
                let ei: SparseVec = [(i, Scalar::one())].into();
                if self.products[u][i] != ei || self.products[i][u] != ei {
                    return Err(Error::BadUnit { unit: u, witness: i });
                }
            }
        }
        if let Some(triple) = self.associativity_witness() {
            return Err(Error::NonAssociative { triple });
        }
        Ok(())
    }

    /// First basis triple (lexicographic) with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ek: SparseVec = [(k, Scalar::one())].into();
                    let ei: SparseVec = [(i, Scalar::one())].into();
                    let left = self.mul_vec(&self.products[i][j], &ek);
                    let right = self.mul_vec(&ei, &self.products[j][k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn to_spec(&self) -> AlgebraSpecDocument {
        let mut mult = Vec::new();
        for (i, row) in self.products.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (&k, c) in p {
                    mult.push((i, j, k, c.clone()));
                }
            }
        }
        AlgebraSpecDocument {
            name: self.name.clone(),
            basis: self.labels.clone(),
            mult,
            unit: self.unit,
            grading: self.grading.clone(),
            truncation_degree: self.truncation_degree,
        }
    }

    /// Returns a copy whose structure constant `c(i,j,k)` is shifted by `delta`.
    /// The result is not validated; this is how associativity failures are
    /// produced on purpose.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: Scalar) -> Algebra {
        let mut products = self.products.clone();
        add_entry(&mut products[i][j], k, delta);
        Algebra::assemble(
            format!("{}+perturbed({i},{j},{k})", self.name),
            self.labels.clone(),
            products,
            None,
            None,
            None,
            None,
        )
    }
}

/// Parses and validates an algebra from its JSON document.
pub fn load_algebra(json: &str) -> Result<Algebra, Error> {
    let spec: AlgebraSpecDocument =
        serde_json::from_str(json).map_err(|e| Error::MalformedSpec(e.to_string()))?;
    Algebra::from_spec(&spec)
}

/// The ground field, one basis element `e` with `e*e = e`.
pub fn ground_field() -> Algebra {
    let spec = AlgebraSpecDocument {
        name: "C".into(),
        basis: vec!["e".into()],
        mult: vec![(0, 0, 0, Scalar::one())],
        unit: Some(0),
        grading: None,
        truncation_degree: None,
    };
    Algebra::from_spec(&spec).expect("ground field is valid")
}

/// Dual numbers `Q[x]/(x^2)` with basis `{1, x}`.
pub fn dual_numbers() -> Algebra {
    let spec = AlgebraSpecDocument {
        name: "dual".into(),
        basis: vec!["1".into(), "x".into()],
        mult: vec![
            (0, 0, 0, Scalar::one()),
            (0, 1, 1, Scalar::one()),
            (1, 0, 1, Scalar::one()),
        ],
        unit: Some(0),
        grading: None,
        truncation_degree: None,
    };
    Algebra::from_spec(&spec).expect("dual numbers are valid")
}

fn variable_names(n: usize) -> Vec<String> {
    const SHORT: [&str; 3] = ["x", "y", "z"];
    if n <= SHORT.len() {
        SHORT[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Exponent vectors of total degree `d` in `n` variables, lexicographically
/// descending (`x^2, xy, y^2`).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn monomial_label(exp: &[u32], names: &[String]) -> String {
    let mut s = String::new();
    for (e, name) in exp.iter().zip(names) {
        match e {
            0 => {}
            1 => s.push_str(name),
            _ => s.push_str(&format!("{name}^{e}")),
        }
    }
    s
}

/// Polynomials without constant term in `n` variables, truncated above
/// degree `max_degree`. Basis: monomials of degree `1..=max_degree` in
/// graded-lex order; products past the truncation vanish.
pub fn truncated_polynomial_algebra(n: usize, max_degree: u32) -> Algebra {
    assert!(n >= 1 && max_degree >= 1, "need n >= 1 and D >= 1");
    let names = variable_names(n);
    let exponents: Vec<Vec<u32>> =
        (1..=max_degree).flat_map(|d| monomials_of_degree(n, d)).collect();
    let index: HashMap<&[u32], usize> =
        exponents.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let dim = exponents.len();
    let mut products = vec![vec![SparseVec::new(); dim]; dim];
    for (i, a) in exponents.iter().enumerate() {
        for (j, b) in exponents.iter().enumerate() {
            let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(&k) = index.get(c.as_slice()) {
                products[i][j].insert(k, Scalar::one());
            }
        }
    }
    let labels = exponents.iter().map(|e| monomial_label(e, &names)).collect();
    let grading = exponents.iter().map(|e| e.iter().sum()).collect();
    let name = if max_degree == 1 {
        format!("sq0-n{n}")
    } else {
        format!("poly0-n{n}-D{max_degree}")
    };
    Algebra::assemble(name, labels, products, None, Some(grading), Some(max_degree), Some(exponents))
}

/// Square-zero algebra on `n` generators (all products vanish).
pub fn square_zero(n: usize) -> Algebra {
    truncated_polynomial_algebra(n, 1)
}

/// Built-in algebras: `C`, `dual`, `sq0-n<k>`, `poly0-n<k>-D<d>`.
pub fn by_name(name: &str) -> Result<Algebra, Error> {
    let unknown = || Error::UnknownName(name.to_string());
    match name {
        "C" => return Ok(ground_field()),
        "dual" => return Ok(dual_numbers()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("sq0-n") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return Ok(square_zero(n));
    }
    if let Some(rest) = name.strip_prefix("poly0-n") {
        let (n, d) = rest.split_once("-D").ok_or_else(unknown)?;
        let n: usize = n.parse().map_err(|_| unknown())?;
        let d: u32 = d.parse().map_err(|_| unknown())?;
        if n == 0 || d == 0 {
            return Err(unknown());
        }
        return Ok(truncated_polynomial_algebra(n, d));
    }
    Err(unknown())
}

/// Ordered multi-indices spanning a tensor power, optionally restricted to
/// one internal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorBasis {
    pub k: usize,
    pub degree: Option<u32>,
    pub elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TensorBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }
}

/// Lexicographic basis of `A^{⊗k}`, filtered to internal degree `p` if given.
pub fn tensor_basis(a: &Algebra, k: usize, p: Option<u32>) -> Result<TensorBasis, Error> {
    let n = a.dim();
    let elements: Vec<Vec<usize>> = match p {
        None => (0..words::pow(n, k)).map(|i| words::decode(i, n, k)).collect(),
        Some(p) => {
            let g = a.grading().ok_or(Error::FilterWithoutGrading)?;
            let mut out = Vec::new();
            let mut word = Vec::with_capacity(k);
            fn rec(g: &[u32], k: usize, left: i64, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if word.len() == k {
                    if left == 0 {
                        out.push(word.clone());
                    }
                    return;
                }
                for (i, &d) in g.iter().enumerate() {
                    if (d as i64) <= left {
                        word.push(i);
                        rec(g, k, left - d as i64, word, out);
                        word.pop();
                    }
                }
            }
            rec(g, k, p as i64, &mut word, &mut out);
            out
        }
    };
    let index = elements.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    Ok(TensorBasis { k, degree: p, elements, index })
}

/// The multiplication `m_A : A⊗A -> A` as a (2,1) operator.
pub fn multiplication_op(a: &Algebra) -> MultilinearOp {
    let n = a.dim();
    let mut m = Matrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            for (&k, c) in a.product(i, j) {
                m.add_to(k, i * n + j, c.clone());
            }
        }
    }
    MultilinearOp::new(n, 2, 1, m).expect("shape matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for name in ["C", "dual", "sq0-n2", "poly0-n2-D2", "poly0-n1-D3"] {
            let a = by_name(name).unwrap();
            a.validate().unwrap();
            assert_eq!(a.name(), name);
        }
        assert!(by_name("poly0-n0-D2").is_err());
        assert!(by_name("nope").is_err());
    }

    #[test]
    fn one_variable_truncation() {
        let a = truncated_polynomial_algebra(1, 3);
        assert_eq!(a.labels(), ["x", "x^2", "x^3"]);
        assert_eq!(a.product(0, 1), &SparseVec::from([(2, Scalar::one())]));
        assert!(a.product(1, 1).is_empty());
        assert!(a.unit().is_none());
    }

    #[test]
    fn two_variables_degree_two() {
        let a = truncated_polynomial_algebra(2, 2);
        assert_eq!(a.labels(), ["x", "y", "x^2", "xy", "y^2"]);
        assert_eq!(a.grading().unwrap(), [1, 1, 2, 2, 2]);
        // Counting monomials of degree 1..=2 in two variables: 2 + 3.
        let count: usize = (1..=2).map(|d| monomials_of_degree(2, d).len()).sum();
        assert_eq!(a.dim(), count);
    }

    #[test]
    fn square_zero_products_vanish() {
        let a = square_zero(2);
        assert_eq!(a.labels(), ["x", "y"]);
        assert!((0..2).all(|i| (0..2).all(|j| a.product(i, j).is_empty())));
        assert!(multiplication_op(&a).matrix().is_zero());
    }

    #[test]
    fn load_dual_numbers_from_json() {
        let json = r#"{"name":"dual","basis":["1","x"],
            "mult":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],
            "unit":0,"grading":null,"truncation_degree":null}"#;
        let a = load_algebra(json).unwrap();
        assert_eq!(a, dual_numbers());
        let m = multiplication_op(&a);
        // columns: 1⊗1, 1⊗x, x⊗1, x⊗x
        assert_eq!(m.matrix().get(0, 0), Scalar::one());
        assert_eq!(m.matrix().get(1, 1), Scalar::one());
        assert_eq!(m.matrix().get(1, 2), Scalar::one());
        assert!(m.matrix().column(3).is_empty());
    }

    #[test]
    fn ground_field_mult_op() {
        let m = multiplication_op(&ground_field());
        assert_eq!((m.k(), m.l()), (2, 1));
        assert_eq!(m.matrix().get(0, 0), Scalar::one());
    }

    /// Brute-force associativity over all triples, written independently.
    fn first_nonassociative(dim: usize, c: &dyn Fn(usize, usize, usize) -> i64) -> Option<(usize, usize, usize)> {
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for out in 0..dim {
                        let lhs: i64 = (0..dim).map(|t| c(i, j, t) * c(t, k, out)).sum();
                        let rhs: i64 = (0..dim).map(|t| c(j, k, t) * c(i, t, out)).sum();
                        if lhs != rhs {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn nonassociative_spec_reports_witness() {
        // e*e = e, e*f = f, f*e = 0, f*f = e
        let table = |i: usize, j: usize, k: usize| -> i64 {
            match (i, j, k) {
                (0, 0, 0) | (0, 1, 1) | (1, 1, 0) => 1,
                _ => 0,
            }
        };
        let expected = first_nonassociative(2, &table).unwrap();
        assert_eq!(expected, (1, 0, 1));
        let json = r#"{"name":"bad","basis":["e","f"],
            "mult":[[0,0,0,"1"],[0,1,1,"1"],[1,1,0,"1"]],"unit":null}"#;
        match load_algebra(json) {
            Err(Error::NonAssociative { triple }) => assert_eq!(triple, expected),
            other => panic!("expected NonAssociative, got {other:?}"),
        }
    }

    #[test]
    fn bad_unit_and_grading() {
        let json = r#"{"name":"u","basis":["e","f"],"mult":[[0,0,0,"1"]],"unit":0}"#;
        assert!(matches!(load_algebra(json), Err(Error::BadUnit { unit: 0, witness: 1 })));
        let json = r#"{"name":"g","basis":["x","y"],"mult":[[0,0,1,"1"]],"grading":[1,1]}"#;
        assert!(matches!(load_algebra(json), Err(Error::GradingViolation { i: 0, j: 0, k: 1 })));
        let json = r#"{"name":"t","basis":["x","y"],"mult":[[0,0,1,"1"]],
            "grading":[1,2],"truncation_degree":1}"#;
        assert!(matches!(load_algebra(json), Err(Error::GradingViolation { .. })));
        assert!(matches!(load_algebra("{"), Err(Error::MalformedSpec(_))));
        let json = r#"{"name":"i","basis":["x"],"mult":[[0,0,3,"1"]]}"#;
        assert!(matches!(load_algebra(json), Err(Error::MalformedSpec(_))));
    }

    #[test]
    fn tensor_basis_examples() {
        let dual = dual_numbers();
        assert_eq!(tensor_basis(&dual, 2, None).unwrap().len(), 4);
        assert!(matches!(tensor_basis(&dual, 2, Some(1)), Err(Error::FilterWithoutGrading)));

        let a = truncated_polynomial_algebra(1, 2);
        let b = tensor_basis(&a, 2, Some(2)).unwrap();
        assert_eq!(b.elements, vec![vec![0, 0]]);
        assert!(tensor_basis(&a, 3, Some(2)).unwrap().is_empty());

        let empty = tensor_basis(&a, 0, None).unwrap();
        assert_eq!(empty.elements, vec![Vec::<usize>::new()]);
        assert_eq!(tensor_basis(&a, 0, Some(0)).unwrap().len(), 1);
    }

    #[test]
    fn degree_filters_partition_tensor_power() {
        for (n, d) in [(1, 3), (2, 2), (2, 3)] {
            let a = truncated_polynomial_algebra(n, d);
            for k in 1..=2usize {
                let total: usize = (0..=(k as u32 * d))
                    .map(|p| tensor_basis(&a, k, Some(p)).unwrap().len())
                    .sum();
                assert_eq!(total, a.dim().pow(k as u32));
                for p in 0..k as u32 {
                    assert!(tensor_basis(&a, k, Some(p)).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn perturbation_breaks_associativity() {
        // x*1 = x becomes x*1 = 1 + x
        let bad = dual_numbers().perturbed(1, 0, 0, Scalar::one());
        assert!(bad.associativity_witness().is_some());
    }
}
