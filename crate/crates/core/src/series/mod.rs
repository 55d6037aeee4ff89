//! Weighted-truncated multivariate power series over `Q(i)`.
//!
//! A [`TruncatedSeries`] stores the terms of weighted degree at most its
//! order `N`. Terms above `N` are unknown, never zero-padded, so every
//! operation reports the order up to which its result is exact.

mod gaussian;
mod io;
mod monomial;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

pub use self::gaussian::{format_fraction, parse_rational, GaussianRational};
pub use self::io::{parse_monomial, parse_series, serialize_series};
pub use self::monomial::{Exponents, Monomial, Signature, W, WBAR, Z, ZBAR};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    sig: Signature,
    order: u32,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl TruncatedSeries {
    pub fn zero(sig: &Signature, order: u32) -> Self {
        TruncatedSeries {
            sig: sig.clone(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: &Signature, order: u32, c: GaussianRational) -> Self {
        let mut s = Self::zero(sig, order);
        s.add_term(sig.one(), c);
        s
    }

    pub fn one(sig: &Signature, order: u32) -> Self {
        Self::constant(sig, order, GaussianRational::one())
    }

    /// The variable `name` itself, or zero if its weight exceeds `order`.
    pub fn variable(sig: &Signature, order: u32, name: &str) -> Result<Self> {
        let idx = sig.index_of(name)?;
        Ok(Self::monomial(sig, order, sig.var(idx, 1), GaussianRational::one()))
    }

    pub fn monomial(sig: &Signature, order: u32, m: Monomial, c: GaussianRational) -> Self {
        let mut s = Self::zero(sig, order);
        s.add_term(m, c);
        s
    }

    pub fn from_terms(
        sig: &Signature,
        order: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, GaussianRational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(sig, order);
        for (exps, c) in terms {
            let m = sig.monomial(&exps)?;
            s.add_term(m, c);
        }
        Ok(s)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded, then lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> GaussianRational {
        match self.sig.monomial(exps) {
            Ok(m) => self.coeff(&m),
            Err(_) => GaussianRational::zero(),
        }
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&self.sig.one())
    }

    /// Smallest weighted degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Adds `c·m`, silently dropping terms above the order and zero results.
    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if m.degree() > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!("{} vs {}", self.sig, other.sig)))
        }
    }

    /// Drops every term above `order` (never raises the order).
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            sig: self.sig.clone(),
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the stored terms at a different order.
    ///
    /// Raising the order asserts that the stored terms are the complete
    /// expansion up to the new bound, e.g. for exact polynomials.
    pub fn with_order(&self, order: u32) -> Self {
        let mut s = self.truncate(order);
        s.order = order;
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.truncate(other.order);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig, self.order);
        }
        TruncatedSeries {
            sig: self.sig.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies every term by the monomial `m` with coefficient `c`.
    pub fn mul_monomial(&self, m: &Monomial, c: &GaussianRational) -> Self {
        let mut out = Self::zero(&self.sig, self.order);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            let prod = k.mul(m);
            if prod.degree() <= self.order {
                out.terms.insert(prod, v * c);
            }
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.sig, order);
        for (ma, ca) in &self.terms {
            if ma.degree() > order {
                break;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > order {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.sig, self.order);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same signature");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same signature");
            }
        }
        acc
    }

    /// Inverse of a series with nonzero constant term, exact up to the order.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c0_inv = c0.inv()?;
        // self = c0 (1 - x) with x of positive degree, so 1/self = c0^{-1} sum x^j.
        let mut x = self.scale(&c0_inv).neg();
        x.add_term(self.sig.one(), GaussianRational::one());
        let mut acc = Self::one(&self.sig, self.order);
        let mut power = Self::one(&self.sig, self.order);
        loop {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Formal composition: replaces the variable `var` of `self` by `g`.
    ///
    /// The other variables are carried over by name into `g`'s signature,
    /// so `g` determines the target signature. The result order is the
    /// largest bound up to which the composition is determined by the
    /// known terms of `self` and `g`.
    pub fn substitute(&self, var: &str, g: &Self) -> Result<Self> {
        let src = &self.sig;
        let dst = &g.sig;
        let var_idx = src.index_of(var)?;
        if !g.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        // index of each source variable in the target signature (None for `var`)
        let mut map: Vec<Option<usize>> = Vec::with_capacity(src.len());
        for (i, name) in src.names().iter().enumerate() {
            if i == var_idx {
                map.push(None);
            } else {
                let used = self.terms.keys().any(|m| m.exponent(i) > 0);
                match dst.index_of(name) {
                    Ok(j) => map.push(Some(j)),
                    Err(e) if used => return Err(e),
                    Err(_) => map.push(None),
                }
            }
        }
        // A term of source degree d lands in target degree >= ratio * d.
        let g_min = g.min_degree().unwrap_or(u32::MAX);
        let mut ratio: (u64, u64) = (g_min.min(g.order + 1) as u64, src.weights()[var_idx] as u64);
        for (i, j) in map.iter().enumerate() {
            if let Some(j) = j {
                let cand = (dst.weights()[*j] as u64, src.weights()[i] as u64);
                if cand.0 * ratio.1 < ratio.0 * cand.1 {
                    ratio = cand;
                }
            }
        }
        let from_self = ((self.order as u64 + 1) * ratio.0).div_ceil(ratio.1) - 1;
        let order = (from_self.min(u32::MAX as u64) as u32).min(g.order);

        let g = g.truncate(order);
        let mut powers: Vec<TruncatedSeries> = vec![TruncatedSeries::one(dst, order)];
        let mut out = TruncatedSeries::zero(dst, order);
        for (m, c) in &self.terms {
            let mut exps: Exponents = std::iter::repeat_n(0, dst.len()).collect();
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    exps[*j] += m.exponent(i);
                }
            }
            let rest = Monomial::from_parts(dst.weighted_degree(&exps), exps);
            if rest.degree() > order {
                continue;
            }
            let e = m.exponent(var_idx) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(&g)?;
                powers.push(next);
            }
            let term = powers[e].mul_monomial(&rest, c);
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Maps the series into another signature, matching variables by name.
    ///
    /// Variables missing from `target` must not occur in `self`.
    pub fn remap(&self, target: &Signature, order: u32) -> Result<Self> {
        let mut map = Vec::with_capacity(self.sig.len());
        for name in self.sig.names() {
            map.push(target.index_of(name).ok());
        }
        let mut out = TruncatedSeries::zero(target, order);
        for (m, c) in &self.terms {
            let mut exps: Exponents = std::iter::repeat_n(0, target.len()).collect();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => return Err(Error::UnknownVariable(self.sig.names()[i].clone())),
                }
            }
            out.add_term(Monomial::from_parts(target.weighted_degree(&exps), exps), c.clone());
        }
        Ok(out)
    }

    /// The map `f(z, w, zbar, wbar) -> conj(f)(zbar, wbar, z, w)`.
    pub fn involution(&self) -> Result<Self> {
        self.sig.require_external()?;
        let mut out = Self::zero(&self.sig, self.order);
        for (m, c) in &self.terms {
            let e = m.exponents();
            let swapped: Exponents = [e[ZBAR], e[WBAR], e[Z], e[W]].into_iter().collect();
            out.terms.insert(Monomial::from_parts(m.degree(), swapped), c.conj());
        }
        Ok(out)
    }

    /// The part of holomorphic weight `a` and antiholomorphic weight `b`.
    pub fn weighted_component(&self, a: u32, b: u32) -> Result<Self> {
        self.sig.require_external()?;
        Ok(self
            .filter(|m| m.partial_degree(&self.sig, &[Z, W]) == a && m.partial_degree(&self.sig, &[ZBAR, WBAR]) == b))
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        TruncatedSeries {
            sig: self.sig.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when no variable at one of `idxs` occurs.
    pub fn is_free_of(&self, idxs: &[usize]) -> bool {
        self.terms.keys().all(|m| idxs.iter().all(|&i| m.exponent(i) == 0))
    }

    /// Holomorphic: only `z` and `w` occur (external signature).
    pub fn is_holomorphic(&self) -> bool {
        self.sig.is_external() && self.is_free_of(&[ZBAR, WBAR])
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.sig.is_external() && self.is_free_of(&[Z, W])
    }

    /// Every stored term has weighted degree exactly `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Numeric evaluation at a point given as `(re, im)` pairs.
    pub fn eval_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_f64_pair();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    let p = point[i];
                    t = (t.0 * p.0 - t.1 * p.1, t.0 * p.1 + t.1 * p.0);
                }
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        io::fmt_series(self, f)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self, self.order + 1)
    }
}
