//! Newton identities between elementary symmetric functions and power sums,
//! with truncated series as the coefficient ring.

use crate::error::{Error, Result};
use crate::series::{GaussianRational, TruncatedSeries};

/// `p_1..p_m` from `e_1..e_k` (with `e_j = 0` for `j > k`).
///
/// `p_m = e_1 p_{m-1} - e_2 p_{m-2} + ... + (-1)^{m-1} m e_m`.
pub fn power_sums_from_elementary(e: &[TruncatedSeries], m: usize) -> Result<Vec<TruncatedSeries>> {
    let first = e.first().ok_or(Error::EmptyProfile)?;
    let zero = TruncatedSeries::zero(first.signature(), first.order());
    let mut p: Vec<TruncatedSeries> = Vec::with_capacity(m);
    for n in 1..=m {
        let mut acc = zero.clone();
        for i in 1..n.min(e.len() + 1) {
            let term = e[i - 1].mul(&p[n - i - 1])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        if n <= e.len() {
            let term = e[n - 1].scale(&GaussianRational::from_integer(n as i64));
            acc = if n % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        p.push(acc);
    }
    Ok(p)
}

/// Inverse Newton recursion: `e_n = (1/n) sum_{i=1}^n (-1)^{i-1} e_{n-i} p_i`.
pub fn elementary_from_power_sums(p: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    let first = p.first().ok_or(Error::EmptyProfile)?;
    let one = TruncatedSeries::one(first.signature(), first.order());
    let mut e: Vec<TruncatedSeries> = vec![one];
    for n in 1..=p.len() {
        let mut acc = TruncatedSeries::zero(first.signature(), first.order());
        for i in 1..=n {
            let term = e[n - i].mul(&p[i - 1])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        e.push(acc.scale(&GaussianRational::ratio(1, n as i64)));
    }
    e.remove(0);
    Ok(e)
}

/// A fiber described by either of its two equivalent symmetric profiles.
#[derive(Clone, Debug, PartialEq)]
pub enum SymmetricProfile {
    Elementary(Vec<TruncatedSeries>),
    PowerSums(Vec<TruncatedSeries>),
}

impl SymmetricProfile {
    pub fn k(&self) -> usize {
        match self {
            SymmetricProfile::Elementary(v) | SymmetricProfile::PowerSums(v) => v.len(),
        }
    }

    pub fn elementary(&self) -> Result<Vec<TruncatedSeries>> {
        match self {
            SymmetricProfile::Elementary(e) => Ok(e.clone()),
            SymmetricProfile::PowerSums(p) => elementary_from_power_sums(p),
        }
    }

    pub fn power_sums(&self) -> Result<Vec<TruncatedSeries>> {
        match self {
            SymmetricProfile::Elementary(e) => power_sums_from_elementary(e, e.len()),
            SymmetricProfile::PowerSums(p) => Ok(p.clone()),
        }
    }
}
