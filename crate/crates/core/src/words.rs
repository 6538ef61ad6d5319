//! Tensor words over a basis of size `n`, encoded as base-`n` integers.
//!
//! A word `(w_0, .., w_{k-1})` has index `sum w_t * n^(k-1-t)`, which is the
//! lexicographic position of the word among all length-`k` words. The empty
//! word has index 0.

pub fn pow(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).expect("tensor power overflows usize")
}

pub fn encode(word: &[usize], n: usize) -> usize {
    word.iter().fold(0, |acc, &w| acc * n + w)
}

pub fn decode(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut w = vec![0; k];
    for slot in w.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    w
}

/// Splits a length-`prefix + mid + suffix` word index into its three parts.
#[inline]
pub fn split3(index: usize, n: usize, mid: usize, suffix: usize) -> (usize, usize, usize) {
    let ns = pow(n, suffix);
    let nm = pow(n, mid);
    let suf = index % ns;
    let rest = index / ns;
    (rest / nm, rest % nm, suf)
}

/// Inverse of [`split3`].
#[inline]
pub fn join3(pre: usize, mid: usize, suf: usize, n: usize, mid_len: usize, suffix: usize) -> usize {
    (pre * pow(n, mid_len) + mid) * pow(n, suffix) + suf
}
