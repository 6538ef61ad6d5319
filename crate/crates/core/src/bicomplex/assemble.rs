use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::diff::merge_at;
use crate::algebra::{tensor_basis, Algebra, TensorBasis};
use crate::error::Error;
use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::operators::MultilinearOp;
use crate::words;

/// Which finite piece of the double complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    /// All slots `k <= k_max`, `l <= l_max`.
    Rect { k_max: usize, l_max: usize },
    /// Operators from input degree `p` to output degree `q` of a graded
    /// algebra, with `d1` reduced to its degree-preserving (middle) terms.
    Bidegree { p: u32, q: u32 },
}

/// `Hom(inputs, outputs)`, coordinates ordered input-major.
#[derive(Clone, Debug)]
pub struct Slot {
    pub k: usize,
    pub l: usize,
    pub inputs: TensorBasis,
    pub outputs: TensorBasis,
}

impl Slot {
    pub fn dim(&self) -> usize {
        self.inputs.len() * self.outputs.len()
    }

    fn coord(&self, u: usize, o: usize) -> usize {
        u * self.outputs.len() + o
    }

    /// Coordinates of `op` restricted to this slot.
    pub fn vectorize(&self, op: &MultilinearOp) -> SparseVec {
        assert_eq!(op.arity(), (self.k, self.l));
        let mut v = SparseVec::new();
        for (ui, u) in self.inputs.elements.iter().enumerate() {
            for (o, c) in op.eval_word(u) {
                if let Some(oi) = self.outputs.position(&o) {
                    v.insert(self.coord(ui, oi), c);
                }
            }
        }
        v
    }

    /// Operator with the given coordinates, zero off the slot.
    pub fn devectorize(&self, dim: usize, v: &SparseVec) -> MultilinearOp {
        let no = self.outputs.len();
        let mut m = Matrix::zeros(words::pow(dim, self.l), words::pow(dim, self.k));
        for (&i, c) in v {
            let (u, o) = (&self.inputs.elements[i / no], &self.outputs.elements[i % no]);
            m.add_to(words::encode(o, dim), words::encode(u, dim), c.clone());
        }
        MultilinearOp::new(dim, self.k, self.l, m).expect("slot shape")
    }
}

#[derive(Clone, Debug)]
pub struct Bicomplex {
    pub algebra: String,
    pub dim: usize,
    pub window: Window,
    pub slots: BTreeMap<(usize, usize), Slot>,
    /// `(k,l) -> (k+1,l)`, present when the target is in the window.
    pub d1: BTreeMap<(usize, usize), Matrix>,
    /// `(k,l) -> (k,l-1)`, present for `l >= 1`.
    pub d2: BTreeMap<(usize, usize), Matrix>,
}

/// Alternating sum of adjacent products `B_k -> B_{k-1}` restricted to the given bases.
pub(crate) fn bar_map(a: &Algebra, from: &TensorBasis, to: &TensorBasis) -> Matrix {
    let mut m = Matrix::zeros(to.len(), from.len());
    for (wi, w) in from.elements.iter().enumerate() {
        for t in 0..w.len().saturating_sub(1) {
            let s = Scalar::sign(t);
            for (u, x) in merge_at(a, w, t) {
                let ui = to.position(&u).expect("products preserve degree");
                m.add_to(ui, wi, &s * &x);
            }
        }
    }
    m
}

fn slot_d1(a: &Algebra, src: &Slot, dst: &Slot, outer: bool) -> Matrix {
    let ny = src.outputs.len();
    let k = src.k;
    let l = src.l;
    let mut m = Matrix::zeros(dst.dim(), src.dim());
    // middle terms: -psi ∘ b'
    let b = bar_map(a, &dst.inputs, &src.inputs);
    for (wi, col) in b.columns().iter().enumerate() {
        for (&ui, x) in col {
            let v = -x;
            for o in 0..ny {
                m.add_to(dst.coord(wi, o), src.coord(ui, o), v.clone());
            }
        }
    }
    if outer && l >= 1 {
        let right = Scalar::sign(k + 1);
        for (wi, w) in dst.inputs.elements.iter().enumerate() {
            let left_u = src.inputs.position(&w[1..]);
            let right_u = src.inputs.position(&w[..k]);
            for (oi, o) in src.outputs.elements.iter().enumerate() {
                if let Some(ui) = left_u {
                    for (&c, x) in a.product(w[0], o[0]) {
                        let mut o2 = o.clone();
                        o2[0] = c;
                        if let Some(oj) = dst.outputs.position(&o2) {
                            m.add_to(dst.coord(wi, oj), src.coord(ui, oi), x.clone());
                        }
                    }
                }
                if let Some(ui) = right_u {
                    for (&c, x) in a.product(o[l - 1], w[k]) {
                        let mut o2 = o.clone();
                        o2[l - 1] = c;
                        if let Some(oj) = dst.outputs.position(&o2) {
                            m.add_to(dst.coord(wi, oj), src.coord(ui, oi), &right * x);
                        }
                    }
                }
            }
        }
    }
    m
}

fn slot_d2(a: &Algebra, src: &Slot, dst: &Slot) -> Matrix {
    let nx = src.inputs.len();
    let global = Scalar::sign((src.k + src.l) % 2);
    let b = bar_map(a, &src.outputs, &dst.outputs);
    let mut m = Matrix::zeros(dst.dim(), src.dim());
    for (oi, col) in b.columns().iter().enumerate() {
        for (&oj, x) in col {
            let v = &global * x;
            for u in 0..nx {
                m.add_to(dst.coord(u, oj), src.coord(u, oi), v.clone());
            }
        }
    }
    m
}

fn check(cond: bool, what: &str, at: (usize, usize)) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvariantFailure(format!("{what} at slot {at:?}")))
    }
}

impl Bicomplex {
    pub fn assemble(a: &Algebra, window: Window) -> Result<Bicomplex, Error> {
        let (keys, filter, outer) = match window {
            Window::Rect { k_max, l_max } => {
                let keys: Vec<(usize, usize)> = (0..=k_max).flat_map(|k| (0..=l_max).map(move |l| (k, l))).collect();
                (keys, None, true)
            }
            Window::Bidegree { p, q } => {
                let g = a.grading().ok_or_else(|| {
                    Error::WindowMismatch(format!("bidegree window needs a graded algebra, {} is not", a.name()))
                })?;
                if g.contains(&0) {
                    return Err(Error::WindowMismatch("generators of degree 0 make bidegree blocks infinite".into()));
                }
                let d = a.truncation_degree().unwrap_or(u32::MAX);
                if p > d || q > d {
                    return Err(Error::WindowMismatch(format!("bidegree ({p},{q}) exceeds truncation degree {d}")));
                }
                let keys = (0..=p as usize).flat_map(|k| (0..=q as usize).map(move |l| (k, l))).collect();
                (keys, Some((p, q)), false)
            }
        };
        let slots: BTreeMap<(usize, usize), Slot> = keys
            .par_iter()
            .map(|&(k, l)| {
                let inputs = tensor_basis(a, k, filter.map(|f| f.0))?;
                let outputs = tensor_basis(a, l, filter.map(|f| f.1))?;
                Ok(((k, l), Slot { k, l, inputs, outputs }))
            })
            .collect::<Result<_, Error>>()?;

        let d1: BTreeMap<_, _> = slots
            .par_iter()
            .filter_map(|(&(k, l), s)| slots.get(&(k + 1, l)).map(|t| ((k, l), slot_d1(a, s, t, outer))))
            .collect();
        let d2: BTreeMap<_, _> = slots
            .par_iter()
            .filter(|(&(_, l), _)| l >= 1)
            .map(|(&(k, l), s)| ((k, l), slot_d2(a, s, &slots[&(k, l - 1)])))
            .collect();

        let b = Bicomplex { algebra: a.name().to_string(), dim: a.dim(), window, slots, d1, d2 };
        b.verify()?;
        Ok(b)
    }

    /// `d1² = 0`, `d2² = 0`, `d1 d2 + d2 d1 = 0` wherever the composites fit.
    pub fn verify(&self) -> Result<(), Error> {
        for (&(k, l), x) in &self.d1 {
            if let Some(y) = self.d1.get(&(k + 1, l)) {
                check(y.mul(x)?.is_zero(), "d1 d1 != 0", (k, l))?;
            }
        }
        for (&(k, l), x) in &self.d2 {
            if let Some(y) = self.d2.get(&(k, l - 1)) {
                check(y.mul(x)?.is_zero(), "d2 d2 != 0", (k, l))?;
            }
            if let (Some(a), Some(b)) = (self.d1.get(&(k, l - 1)), self.d1.get(&(k, l))) {
                let c = self.d2.get(&(k + 1, l)).expect("d2 exists where d1 lands");
                let sum = a.mul(x)?.add(&c.mul(b)?)?;
                check(sum.is_zero(), "d1 d2 + d2 d1 != 0", (k, l))?;
            }
        }
        Ok(())
    }

    pub fn slot(&self, k: usize, l: usize) -> Option<&Slot> {
        self.slots.get(&(k, l))
    }

    /// Slot dimensions, keyed by `(k, l)`.
    pub fn dims(&self) -> BTreeMap<(usize, usize), usize> {
        self.slots.iter().map(|(&key, s)| (key, s.dim())).collect()
    }
}
