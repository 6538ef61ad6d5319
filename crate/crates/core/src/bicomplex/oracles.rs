//! Textbook formulas, written without reference to the insertion bracket or
//! the slot machinery, used to cross-check them.

use crate::algebra::Algebra;
use crate::error::Error;
use crate::exactla::{rank, Matrix, Scalar};
use crate::operators::MultilinearOp;
use crate::words;

/// Hochschild coboundary `C^k(A, A) -> C^{k+1}(A, A)`:
///
/// `(δf)(a_0..a_k) = a_0 f(a_1..a_k) + Σ_{i<k} (-1)^{i+1} f(.., a_i a_{i+1}, ..) + (-1)^{k+1} f(a_0..a_{k-1}) a_k`.
///
/// A cochain `f` has coordinate `f(word u)_o` at index `u * dim + o`.
pub fn hochschild_oracle_differential(a: &Algebra, k: usize) -> Matrix {
    let n = a.dim();
    let src = words::pow(n, k) * n;
    let dst = words::pow(n, k + 1) * n;
    let mut m = Matrix::zeros(dst, src);
    for w in 0..words::pow(n, k + 1) {
        let word = words::decode(w, n, k + 1);
        for o in 0..n {
            // a_0 · f(a_1..a_k): contributes from coordinate (a_1..a_k, o)
            let tail = words::encode(&word[1..], n);
            for (&r, x) in a.product(word[0], o) {
                m.add_to(w * n + r, tail * n + o, x.clone());
            }
            // f(a_0..a_{k-1}) · a_k
            let head = words::encode(&word[..k], n);
            for (&r, x) in a.product(o, word[k]) {
                m.add_to(w * n + r, head * n + o, Scalar::sign(k + 1) * x);
            }
            for i in 0..k {
                for (&p, x) in a.product(word[i], word[i + 1]) {
                    let mut merged = word[..i].to_vec();
                    merged.push(p);
                    merged.extend_from_slice(&word[i + 2..]);
                    let u = words::encode(&merged, n);
                    m.add_to(w * n + o, u * n + o, Scalar::sign(i + 1) * x);
                }
            }
        }
    }
    m
}

/// Circle product `(f ∘ g)(a..) = Σ_i (-1)^{i(k_g - 1)} f(a_1..a_i, g(a_{i+1}..a_{i+k_g}), ..)`.
fn circle(f: &MultilinearOp, g: &MultilinearOp) -> MultilinearOp {
    let (kf, kg) = (f.k(), g.k());
    let total = kf + kg - 1;
    MultilinearOp::from_fn(f.dim(), total, 1, |w| {
        let mut out = Vec::new();
        for i in 0..kf {
            let s = Scalar::sign(i * (kg + 1));
            for (gv, gc) in g.eval_word(&w[i..i + kg]) {
                let mut inner = w[..i].to_vec();
                inner.push(gv[0]);
                inner.extend_from_slice(&w[i + kg..]);
                for (fv, fc) in f.eval_word(&inner) {
                    out.push((fv, &s * &(&gc * &fc)));
                }
            }
        }
        out
    })
}

/// Gerstenhaber bracket `f ∘ g - (-1)^{(k_f-1)(k_g-1)} g ∘ f` of two Hochschild cochains.
pub fn gerstenhaber_oracle(f: &MultilinearOp, g: &MultilinearOp) -> Result<MultilinearOp, Error> {
    if f.l() != 1 || g.l() != 1 {
        return Err(Error::ArityViolation("Gerstenhaber bracket needs single outputs".into()));
    }
    if f.dim() != g.dim() {
        return Err(Error::AlgebraMismatch(f.dim(), g.dim()));
    }
    if f.k() + g.k() == 0 {
        return Ok(MultilinearOp::zero(f.dim(), 0, 1));
    }
    let total = f.k() + g.k() - 1;
    let fg = if f.k() > 0 { circle(f, g) } else { MultilinearOp::zero(f.dim(), total, 1) };
    let gf = if g.k() > 0 { circle(g, f) } else { MultilinearOp::zero(f.dim(), total, 1) };
    let s = Scalar::sign((f.k() + 1) * (g.k() + 1));
    fg.sub(&gf.scale(&s))
}

/// Bar differentials `b'_l : A^{⊗l} -> A^{⊗(l-1)}` for `l = 1..=max_len`,
/// `b'_l = Σ_{t=0}^{l-2} (-1)^t m_{t,t+1}`. The first one, `A -> C`, is zero.
pub fn bar_complex(a: &Algebra, max_len: usize) -> Vec<Matrix> {
    let n = a.dim();
    (1..=max_len)
        .map(|l| {
            let mut m = Matrix::zeros(words::pow(n, l - 1), words::pow(n, l));
            for w in 0..words::pow(n, l) {
                let word = words::decode(w, n, l);
                for t in 0..l - 1 {
                    for (&p, x) in a.product(word[t], word[t + 1]) {
                        let mut merged = word[..t].to_vec();
                        merged.push(p);
                        merged.extend_from_slice(&word[t + 2..]);
                        m.add_to(words::encode(&merged, n), w, Scalar::sign(t) * x);
                    }
                }
            }
            m
        })
        .collect()
}

/// Homology dimensions of the bar complex at `A^{⊗l}` for `l = 0..max_len-1`
/// (the spot `A^{⊗max_len}` is left out: nothing maps into it in the window).
pub fn bar_homology(a: &Algebra, max_len: usize) -> Vec<usize> {
    let maps = bar_complex(a, max_len);
    let n = a.dim();
    (0..max_len)
        .map(|l| {
            let out = if l == 0 { 0 } else { rank(&maps[l - 1]) };
            words::pow(n, l) - out - rank(&maps[l])
        })
        .collect()
}
