use crate::algebra::{multiplication_op, Algebra};
use crate::error::Error;
use crate::exactla::Scalar;
use crate::operators::{bracket, sign_of_product, MultilinearOp, OpSum};

/// Words obtained by multiplying letters `t` and `t+1`, with coefficients.
pub(crate) fn merge_at(a: &Algebra, word: &[usize], t: usize) -> Vec<(Vec<usize>, Scalar)> {
    a.product(word[t], word[t + 1])
        .iter()
        .map(|(&c, x)| {
            let mut w = Vec::with_capacity(word.len() - 1);
            w.extend_from_slice(&word[..t]);
            w.push(c);
            w.extend_from_slice(&word[t + 2..]);
            (w, x.clone())
        })
        .collect()
}

fn check_dim(a: &Algebra, psi: &MultilinearOp) -> Result<(), Error> {
    if a.dim() != psi.dim() {
        return Err(Error::AlgebraMismatch(a.dim(), psi.dim()));
    }
    Ok(())
}

/// Horizontal differential `Hom(A^k, A^l) -> Hom(A^{k+1}, A^l)`:
///
/// `a_1 . psi(a_2..) + sum_i (-1)^i psi(.., a_i a_{i+1}, ..) + (-1)^{k+1} psi(..a_k) . a_{k+1}`
///
/// where the outer actions multiply the first (resp. last) output factor.
/// For `l = 0` only the middle terms survive.
pub fn d1(a: &Algebra, psi: &MultilinearOp) -> Result<MultilinearOp, Error> {
    check_dim(a, psi)?;
    let (k, l) = psi.arity();
    Ok(MultilinearOp::from_fn(a.dim(), k + 1, l, |w| {
        let mut out = Vec::new();
        if l >= 1 {
            for (o, c) in psi.eval_word(&w[1..]) {
                for (&b, x) in a.product(w[0], o[0]) {
                    let mut o2 = o.clone();
                    o2[0] = b;
                    out.push((o2, &c * x));
                }
            }
            let s = Scalar::sign(k + 1);
            for (o, c) in psi.eval_word(&w[..k]) {
                for (&b, x) in a.product(o[l - 1], w[k]) {
                    let mut o2 = o.clone();
                    o2[l - 1] = b;
                    out.push((o2, &s * &(&c * x)));
                }
            }
        }
        for t in 0..k {
            let s = Scalar::sign(t + 1);
            for (u, x) in merge_at(a, w, t) {
                for (o, c) in psi.eval_word(&u) {
                    out.push((o, &s * &(&c * &x)));
                }
            }
        }
        out
    }))
}

/// Vertical differential `Hom(A^k, A^l) -> Hom(A^k, A^{l-1})`:
/// `(-1)^{k-l} sum_t (-1)^t m_{t,t+1} ∘ psi`. Zero for `l = 1`; `None` for `l = 0`.
pub fn d2(a: &Algebra, psi: &MultilinearOp) -> Result<Option<MultilinearOp>, Error> {
    check_dim(a, psi)?;
    let (k, l) = psi.arity();
    if l == 0 {
        return Ok(None);
    }
    let global = sign_of_product(1, psi.degree());
    Ok(Some(MultilinearOp::from_fn(a.dim(), k, l - 1, |w| {
        let mut out = Vec::new();
        for (o, c) in psi.eval_word(w) {
            for t in 0..l.saturating_sub(1) {
                let s = &global * &Scalar::sign(t);
                for (o2, x) in merge_at(a, &o, t) {
                    out.push((o2, &s * &(&c * &x)));
                }
            }
        }
        out
    })))
}

/// For a functional `psi: A^k -> C`, the operator `x ⊗ w ⊗ y ↦ psi(w) xy`.
/// This is the part of `[m, psi]` that does not come from `d1`, `d2`.
pub fn iota(a: &Algebra, psi: &MultilinearOp) -> Result<MultilinearOp, Error> {
    check_dim(a, psi)?;
    if psi.l() != 0 {
        return Err(Error::ArityViolation("iota is defined on functionals only".into()));
    }
    let k = psi.k();
    Ok(MultilinearOp::from_fn(a.dim(), k + 2, 1, |w| {
        let val: Scalar = psi.eval_word(&w[1..=k]).into_iter().map(|(_, c)| c).sum();
        if val.is_zero() {
            return Vec::new();
        }
        a.product(w[0], w[k + 1]).iter().map(|(&b, x)| (vec![b], &val * x)).collect()
    }))
}

/// `[m_A, psi]`, checked against `(-1)^{deg psi} (d1 psi + d2 psi)`
/// (plus `iota(psi)` when `psi` is a functional).
pub fn bracket_with_m_decomposition(a: &Algebra, psi: &MultilinearOp) -> Result<OpSum, Error> {
    check_dim(a, psi)?;
    let m = OpSum::from_op(multiplication_op(a));
    let br = bracket(&m, &OpSum::from_op(psi.clone()))?;
    let mut expected = OpSum::zero(a.dim());
    expected.add_op(&d1(a, psi)?)?;
    match d2(a, psi)? {
        Some(v) => expected.add_op(&v)?,
        None => expected.add_op(&iota(a, psi)?)?,
    }
    let expected = expected.scale(&sign_of_product(1, psi.degree()));
    if br != expected {
        return Err(Error::InvariantFailure(format!(
            "[m, psi] differs from d1 + d2 at bi-arity ({}, {})",
            psi.k(),
            psi.l()
        )));
    }
    Ok(br)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, ground_field, square_zero, truncated_polynomial_algebra};
    use crate::words;
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

    #[test]
    fn d1_of_identity_is_product() {
        let a = dual_numbers();
        assert_eq!(d1(&a, &MultilinearOp::identity(2, 1)).unwrap(), multiplication_op(&a));
    }

    #[test]
    fn d1_of_product_vanishes() {
        for a in [ground_field(), dual_numbers(), truncated_polynomial_algebra(2, 2)] {
            assert!(d1(&a, &multiplication_op(&a)).unwrap().is_zero());
        }
    }

    #[test]
    fn d1_on_scalar_row_of_c_alternates() {
        let a = ground_field();
        for k in 0..5 {
            let psi = MultilinearOp::from_fn(1, k, 0, |_| vec![(vec![], Scalar::one())]);
            let z = d1(&a, &psi).unwrap();
            assert_eq!(z.is_zero(), k % 2 == 0, "k = {k}");
        }
    }

    #[test]
    fn d2_examples() {
        let a = dual_numbers();
        let psi = MultilinearOp::from_fn(2, 3, 1, |w| vec![(vec![w[0]], Scalar::one())]);
        let z = d2(&a, &psi).unwrap().unwrap();
        assert_eq!(z.arity(), (3, 0));
        assert!(z.is_zero());
        let id2 = d2(&a, &MultilinearOp::identity(2, 2)).unwrap().unwrap();
        assert_eq!(id2, multiplication_op(&a));
        // e ⊗ e picked out of the ground field: C -> A^2 -> A picks e
        let ee = MultilinearOp::from_fn(1, 0, 2, |_| vec![(vec![0, 0], Scalar::one())]);
        let e = d2(&ground_field(), &ee).unwrap().unwrap();
        assert_eq!(e, MultilinearOp::from_fn(1, 0, 1, |_| vec![(vec![0], Scalar::one())]));
    }

    #[test]
    fn m_bracket_examples() {
        let a = ground_field();
        let br = bracket_with_m_decomposition(&a, &MultilinearOp::identity(1, 1)).unwrap();
        assert_eq!(br, OpSum::from_op(multiplication_op(&a)));
        let b = dual_numbers();
        assert!(bracket_with_m_decomposition(&b, &multiplication_op(&b)).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sq = square_zero(2);
        let psi = random_op(&mut rng, 2, 2, 2);
        assert!(bracket_with_m_decomposition(&sq, &psi).unwrap().is_zero());
    }

    #[test]
    fn m_bracket_and_bidifferential_on_random_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for a in [ground_field(), dual_numbers(), truncated_polynomial_algebra(1, 3)] {
            for k in 0..=2 {
                for l in 0..=3 {
                    let psi = random_op(&mut rng, a.dim(), k, l);
                    bracket_with_m_decomposition(&a, &psi).unwrap();
                    let x = d1(&a, &psi).unwrap();
                    assert!(d1(&a, &x).unwrap().is_zero());
                    if let Some(y) = d2(&a, &psi).unwrap() {
                        if let Some(yy) = d2(&a, &y).unwrap() {
                            assert!(yy.is_zero());
                        }
                        let lhs = d1(&a, &y).unwrap();
                        let rhs = d2(&a, &x).unwrap().unwrap();
                        assert!(lhs.add(&rhs).unwrap().is_zero(), "anticommute at ({k},{l})");
                    }
                }
            }
        }
    }
}
