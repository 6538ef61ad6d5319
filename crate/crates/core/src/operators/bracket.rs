use super::op::{sign_of_product, MultilinearOp};
use super::sum::OpSum;
use crate::error::Error;
use crate::exactla::{axpy, Matrix, Scalar, SparseVec};
use crate::words;

/// Which overlap sizes enter the bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overlaps {
    /// All `s >= 0`, including the inseparable `s = 0` placements.
    Full,
    /// Only connected compositions, `s >= 1`.
    Connected,
}

/// The insertion operator `i(psi)` on `A^{⊗n}`: the signed sum of `psi`
/// applied to every window of `k` consecutive factors.
pub fn insertion(psi: &MultilinearOp, n: usize) -> Result<Matrix, Error> {
    let (k, l) = psi.arity();
    if k > n {
        return Err(Error::ArityTooLarge { k, n });
    }
    let dim = psi.dim();
    let out_len = n - k + l;
    let mut cols = Vec::with_capacity(words::pow(dim, n));
    for c in 0..words::pow(dim, n) {
        let e: SparseVec = [(c, Scalar::one())].into();
        let mut col = SparseVec::new();
        for j in 0..=n - k {
            axpy(&mut col, &sign_of_product(j, psi.degree()), &psi.act_at(&e, n, j));
        }
        cols.push(col);
    }
    Ok(Matrix::from_columns(words::pow(dim, out_len), cols))
}

/// Insertion of every component of a sum that fits on `A^{⊗n}`, grouped by
/// output length.
pub fn insertion_sum(a: &OpSum, n: usize) -> Vec<(usize, Matrix)> {
    let mut out: Vec<(usize, Matrix)> = Vec::new();
    for op in a.components().filter(|op| op.k() <= n) {
        let m = insertion(op, n).expect("arity checked");
        let len = n - op.k() + op.l();
        match out.iter_mut().find(|(l, _)| *l == len) {
            Some((_, acc)) => *acc = acc.add(&m).expect("same shape"),
            None => out.push((len, m)),
        }
    }
    out.sort_by_key(|(l, _)| *l);
    out
}

/// Window placements `(a0, b0, weight)` for the overlap composition:
/// `f` reads the intermediate word at `a0`, `g` writes it at `b0`.
fn placements(fk: usize, gl: usize, s: usize) -> Vec<(usize, usize, i64)> {
    let mut pl = Vec::new();
    if s >= 1 {
        for t in -(fk as i64 - 1)..gl as i64 {
            let lo = t.max(0);
            let hi = (t + fk as i64).min(gl as i64);
            if hi - lo == s as i64 {
                pl.push((lo as usize, (-t).max(0) as usize, 1));
            }
        }
    } else {
        if fk == 0 && gl >= 2 {
            pl.extend((1..gl).map(|t| (t, 0, 1)));
        }
        if gl == 0 && fk >= 2 {
            pl.extend((1..fk).map(|t| (0, t, 1)));
        }
        if fk == 0 && gl == 0 {
            pl.push((0, 0, -1));
        }
    }
    pl
}

/// `C(f, g, s)`: outputs of `g` overlapping inputs of `f` in exactly `s`
/// consecutive slots, summed over placements with the insertion signs.
pub fn compose_overlap(f: &MultilinearOp, g: &MultilinearOp, s: usize) -> Result<MultilinearOp, Error> {
    if f.dim() != g.dim() {
        return Err(Error::AlgebraMismatch(f.dim(), g.dim()));
    }
    if s > f.k().min(g.l()) {
        return Err(Error::OverlapOutOfRange { s, f: f.arity(), g: g.arity() });
    }
    let dim = f.dim();
    let u = f.k() + g.l() - s;
    let kin = f.k() + g.k() - s;
    let lout = f.l() + g.l() - s;
    let pl = placements(f.k(), g.l(), s);
    let mut cols = Vec::with_capacity(words::pow(dim, kin));
    for c in 0..words::pow(dim, kin) {
        let e: SparseVec = [(c, Scalar::one())].into();
        let mut col = SparseVec::new();
        for &(a0, b0, w) in &pl {
            let mid = g.act_at(&e, kin, b0);
            let img = f.act_at(&mid, u, a0);
            let sign = sign_of_product(b0, g.degree()) * sign_of_product(a0, f.degree()) * Scalar::from_int(w);
            axpy(&mut col, &sign, &img);
        }
        cols.push(col);
    }
    MultilinearOp::new(dim, kin, lout, Matrix::from_columns(words::pow(dim, lout), cols))
}

fn overlap_range(f: &MultilinearOp, g: &MultilinearOp, which: Overlaps) -> std::ops::RangeInclusive<usize> {
    let lo = match which {
        Overlaps::Full => 0,
        Overlaps::Connected => 1,
    };
    lo..=f.k().min(g.l())
}

/// `[f, g] = sum_s C(f,g,s) - (-1)^{deg f deg g} sum_s C(g,f,s)`.
pub fn bracket_ops(f: &MultilinearOp, g: &MultilinearOp, which: Overlaps) -> Result<OpSum, Error> {
    if f.dim() != g.dim() {
        return Err(Error::AlgebraMismatch(f.dim(), g.dim()));
    }
    let mut out = OpSum::zero(f.dim());
    for s in overlap_range(f, g, which) {
        out.add_op(&compose_overlap(f, g, s)?)?;
    }
    let sign = -sign_of_product((f.degree().rem_euclid(2)) as usize, g.degree());
    for s in overlap_range(g, f, which) {
        out.add_scaled_op(&sign, &compose_overlap(g, f, s)?)?;
    }
    Ok(out)
}

/// Bilinear extension of [`bracket_ops`] to sums.
pub fn bracket_with(a: &OpSum, b: &OpSum, which: Overlaps) -> Result<OpSum, Error> {
    if a.dim() != b.dim() {
        return Err(Error::AlgebraMismatch(a.dim(), b.dim()));
    }
    let mut out = OpSum::zero(a.dim());
    for f in a.components() {
        for g in b.components() {
            out = out.add(&bracket_ops(f, g, which)?)?;
        }
    }
    Ok(out)
}

pub fn bracket(a: &OpSum, b: &OpSum) -> Result<OpSum, Error> {
    bracket_with(a, b, Overlaps::Full)
}

pub fn connected_bracket(a: &OpSum, b: &OpSum) -> Result<OpSum, Error> {
    bracket_with(a, b, Overlaps::Connected)
}

/// Graded commutator of insertions on `A^{⊗n}`, computed directly:
/// `i(f) i(g) - (-1)^{deg f deg g} i(g) i(f)`.
pub fn insertion_commutator_oracle(f: &MultilinearOp, g: &MultilinearOp, n: usize) -> Result<Matrix, Error> {
    if f.dim() != g.dim() {
        return Err(Error::AlgebraMismatch(f.dim(), g.dim()));
    }
    if n < f.k() + g.k() {
        return Err(Error::ArityTooLarge { k: f.k() + g.k(), n });
    }
    let fg = insertion(f, n - g.k() + g.l())?.mul(&insertion(g, n)?)?;
    let gf = insertion(g, n - f.k() + f.l())?.mul(&insertion(f, n)?)?;
    let sign = sign_of_product((f.degree().rem_euclid(2)) as usize, g.degree());
    fg.sub(&gf.scale(&sign))
}

/// Checks `i([f,g]) = [i(f), i(g)]` on `A^{⊗n}`.
pub fn oracle_identity_holds(f: &MultilinearOp, g: &MultilinearOp, n: usize) -> Result<bool, Error> {
    let lhs = insertion_commutator_oracle(f, g, n)?;
    let br = bracket_ops(f, g, Overlaps::Full)?;
    let parts = insertion_sum(&br, n);
    let out_len = n + f.l() + g.l() - f.k() - g.k();
    Ok(match parts.iter().find(|(l, _)| *l == out_len) {
        Some((_, m)) => *m == lhs,
        None => lhs.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_op(rng: &mut ChaCha8Rng, dim: usize, k: usize, l: usize) -> MultilinearOp {
        MultilinearOp::from_fn(dim, k, l, |_| {
            (0..words::pow(dim, l))
                .filter_map(|o| {
                    let v = rng.gen_range(-2i64..=2);
                    (v != 0).then(|| (words::decode(o, dim, l), Scalar::from_int(v)))
                })
                .collect()
        })
    }

    fn mult_c() -> MultilinearOp {
        // complex numbers as a real algebra: basis 1, i
        MultilinearOp::from_fn(2, 2, 1, |w| {
            let (a, b) = (w[0], w[1]);
            let v = if a == 1 && b == 1 { -1 } else { 1 };
            vec![(vec![a ^ b], Scalar::from_int(v))]
        })
    }

    #[test]
    fn insertion_of_identity_and_scalars() {
        let id = MultilinearOp::identity(2, 1);
        assert_eq!(insertion(&id, 2).unwrap(), Matrix::identity(4).scale(&Scalar::from_int(2)));
        let c = MultilinearOp::scalar(2, Scalar::new(1, 2).unwrap());
        assert_eq!(insertion(&c, 2).unwrap(), Matrix::identity(4).scale(&Scalar::new(3, 2).unwrap()));
        assert!(matches!(insertion(&mult_c(), 1), Err(Error::ArityTooLarge { k: 2, n: 1 })));
    }

    #[test]
    fn insertion_of_associative_product_squares_to_zero() {
        let m = mult_c();
        let i3 = insertion(&m, 3).unwrap();
        let i2 = insertion(&m, 2).unwrap();
        assert!(i2.mul(&i3).unwrap().is_zero());
    }

    #[test]
    fn identity_bracket_counts_arity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let id = OpSum::from_op(MultilinearOp::identity(2, 1));
        for (k, l) in [(2, 1), (1, 3), (0, 2), (3, 0), (2, 2)] {
            let psi = random_op(&mut rng, 2, k, l);
            let br = bracket(&id, &OpSum::from_op(psi.clone())).unwrap();
            let expect = OpSum::from_op(psi.scale(&Scalar::from_int(l as i64 - k as i64)));
            assert_eq!(br, expect, "arity ({k},{l})");
        }
        let m = OpSum::from_op(mult_c());
        assert_eq!(bracket(&id, &m).unwrap(), m.scale(&-Scalar::one()));
    }

    #[test]
    fn overlap_range_is_checked() {
        let m = mult_c();
        let id = MultilinearOp::identity(2, 1);
        assert!(matches!(compose_overlap(&m, &id, 2), Err(Error::OverlapOutOfRange { .. })));
        assert!(compose_overlap(&m, &id, 1).is_ok());
    }

    #[test]
    fn oracle_identity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let shapes = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (0, 2), (2, 0)];
        for &(kf, lf) in &shapes {
            for &(kg, lg) in &shapes {
                let f = random_op(&mut rng, 2, kf, lf);
                let g = random_op(&mut rng, 2, kg, lg);
                for n in (kf + kg)..=(kf + kg + 1) {
                    assert!(oracle_identity_holds(&f, &g, n).unwrap(), "({kf},{lf}) ({kg},{lg}) n={n}");
                }
            }
        }
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shapes = [(0, 1), (1, 0), (2, 1), (1, 1), (0, 0), (1, 2)];
        for (idx, &(k1, l1)) in shapes.iter().enumerate() {
            let (k2, l2) = shapes[(idx + 1) % shapes.len()];
            let (k3, l3) = shapes[(idx + 3) % shapes.len()];
            let f = random_op(&mut rng, 2, k1, l1);
            let g = random_op(&mut rng, 2, k2, l2);
            let h = random_op(&mut rng, 2, k3, l3);
            let (df, dg, dh) = (f.degree(), g.degree(), h.degree());
            let (f, g, h) = (OpSum::from(f), OpSum::from(g), OpSum::from(h));

            let fg = bracket(&f, &g).unwrap();
            let gf = bracket(&g, &f).unwrap();
            let s = -sign_of_product(df.rem_euclid(2) as usize, dg);
            assert_eq!(fg, gf.scale(&s));

            let term = |x: &OpSum, y: &OpSum, z: &OpSum, dx: i64, dz: i64| {
                bracket(x, &bracket(y, z).unwrap()).unwrap().scale(&sign_of_product(dx.rem_euclid(2) as usize, dz))
            };
            let total = term(&f, &g, &h, df, dh)
                .add(&term(&g, &h, &f, dg, df))
                .unwrap()
                .add(&term(&h, &f, &g, dh, dg))
                .unwrap();
            assert!(total.is_zero(), "Jacobi at {:?}", (k1, l1, k2, l2, k3, l3));
        }
    }

    #[test]
    fn degree_is_additive_and_spectrum_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_op(&mut rng, 2, 2, 1);
        let g = random_op(&mut rng, 2, 1, 2);
        let br = bracket(&OpSum::from(f.clone()), &OpSum::from(g.clone())).unwrap();
        assert!(br.is_homogeneous_of_degree(f.degree() + g.degree()));
        for (k, l) in br.spectrum() {
            assert!(k <= f.k() + g.k() && l <= f.l() + g.l());
        }
    }

    #[test]
    fn connected_bracket_drops_inseparable_terms() {
        let c = OpSum::from(MultilinearOp::scalar(2, Scalar::one()));
        let v = OpSum::from(MultilinearOp::from_fn(2, 0, 2, |_| vec![(vec![0, 1], Scalar::one())]));
        assert!(connected_bracket(&c, &v).unwrap().is_zero());
        assert!(!bracket(&v, &OpSum::from(MultilinearOp::from_fn(2, 2, 0, |_| vec![(vec![], Scalar::one())])))
            .unwrap()
            .is_zero());
    }
}
