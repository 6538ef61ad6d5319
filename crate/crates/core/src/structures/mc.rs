use serde::{Deserialize, Serialize};

use super::lie::LieStructure;
use crate::algebra::{multiplication_op, truncated_polynomial_algebra, Algebra};
use crate::error::Error;
use crate::exactla::Scalar;
use crate::operators::{bracket, MultilinearOp, OpSum};
use crate::words;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McComponent {
    pub k: usize,
    pub l: usize,
    /// Nonzero entries of the residual inside the checked window.
    pub residual_entries: usize,
    /// Nonzero entries of `[m, gamma]` alone.
    pub linear_entries: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub claim: String,
    pub algebra: String,
    /// Largest input degree checked; `None` means every input.
    pub input_degree_window: Option<u32>,
    pub components: Vec<McComponent>,
    /// `[m, gamma] = 0` in the window (first-order / cocycle condition).
    pub linear_part_vanishes: bool,
    pub holds: bool,
}

/// Nonzero entries of `op` on input words of degree at most `window`.
fn entries_in_window(a: &Algebra, op: &MultilinearOp, window: Option<u32>) -> usize {
    op.matrix()
        .triples()
        .filter(|&(_, c, _)| match window {
            None => true,
            Some(d) => a.word_degree(&words::decode(c, a.dim(), op.k())).is_some_and(|w| w <= d),
        })
        .count()
}

fn check_degree(gamma: &OpSum) -> Result<(), Error> {
    match gamma.components().find(|op| op.degree() != 1) {
        Some(op) => Err(Error::DegreeViolation(op.arity())),
        None => Ok(()),
    }
}

fn report(a: &Algebra, claim: String, linear: &OpSum, residual: &OpSum) -> McReport {
    // Past the truncation degree products are cut off, so identities are
    // only checked on inputs whose total degree stays below it.
    let window = a.truncation_degree();
    let mut keys: Vec<(usize, usize)> = linear.spectrum();
    keys.extend(residual.spectrum());
    keys.sort_unstable();
    keys.dedup();
    let components: Vec<McComponent> = keys
        .into_iter()
        .map(|(k, l)| McComponent {
            k,
            l,
            residual_entries: entries_in_window(a, &residual.component(k, l), window),
            linear_entries: entries_in_window(a, &linear.component(k, l), window),
        })
        .collect();
    McReport {
        claim,
        algebra: a.name().to_string(),
        input_degree_window: window,
        linear_part_vanishes: components.iter().all(|c| c.linear_entries == 0),
        holds: components.iter().all(|c| c.residual_entries == 0),
        components,
    }
}

/// `[m, gamma] + ½ [gamma, gamma]`, component by component.
pub fn mc_check(gamma: &OpSum, a: &Algebra) -> Result<McReport, Error> {
    check_degree(gamma)?;
    let m = OpSum::from_op(multiplication_op(a));
    let linear = bracket(&m, gamma)?;
    let half = Scalar::new(1, 2)?;
    let residual = linear.add(&bracket(gamma, gamma)?.scale(&half))?;
    Ok(report(a, format!("mc:{}", a.name()), &linear, &residual))
}

/// `gamma = Σ_w ħ^w gamma_w` with `gammas[w-1] = gamma_w`; checks the
/// equation at every order `1..=gammas.len()`.
pub fn mc_check_weighted(gammas: &[OpSum], a: &Algebra) -> Result<Vec<McReport>, Error> {
    for g in gammas {
        check_degree(g)?;
    }
    let m = OpSum::from_op(multiplication_op(a));
    let half = Scalar::new(1, 2)?;
    (1..=gammas.len())
        .map(|order| {
            let linear = bracket(&m, &gammas[order - 1])?;
            let mut residual = linear.clone();
            for i in 1..order {
                residual = residual.add(&bracket(&gammas[i - 1], &gammas[order - i - 1])?.scale(&half))?;
            }
            Ok(report(a, format!("mc:{}:order={order}", a.name()), &linear, &residual))
        })
        .collect()
}

/// `S(g)` without constant term, truncated above degree `max_degree`, with
/// the first-order star-product term `B1(f, g) = ½ {f, g}` for the linear
/// Poisson structure of `g`.
pub fn gutt_first_order(g: &LieStructure, max_degree: u32) -> Result<(Algebra, MultilinearOp), Error> {
    let table = g.table()?;
    let a = truncated_polynomial_algebra(g.n, max_degree);
    let exps = a.exponents().expect("polynomial algebra").to_vec();
    let index = |e: &[u32]| exps.iter().position(|x| x.as_slice() == e);
    let half = Scalar::new(1, 2)?;
    let op = MultilinearOp::from_fn(a.dim(), 2, 1, |w| {
        let (alpha, beta) = (&exps[w[0]], &exps[w[1]]);
        let mut out = Vec::new();
        for (&(i, j), c) in &table {
            if alpha[i] == 0 || beta[j] == 0 {
                continue;
            }
            let scale = Scalar::from_int(i64::from(alpha[i]) * i64::from(beta[j]));
            for (&k, x) in c {
                let mut e: Vec<u32> = alpha.iter().zip(beta).map(|(p, q)| p + q).collect();
                e[i] -= 1;
                e[j] -= 1;
                e[k] += 1;
                if let Some(pos) = index(&e) {
                    out.push((vec![pos], &(&half * &scale) * x));
                }
            }
        }
        out
    });
    Ok((a, op))
}
