//! The averaging operator over Segre fibers and the objects built from it.
//!
//! For a hypersurface model every germ is first reduced to
//! `sum_{j<k} f_j(z, w) zbar^j`; averaging then only needs the power sums
//! `P_j` of the fiber roots, `A f = sum_j f_j P_j / k`. Product-fiber models
//! are averaged term by term through their closed-form mixed power sums.

use std::collections::{BTreeMap, HashMap};

use log::debug;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{FiberData, HypersurfaceFiber, ModelHypersurface};
use crate::series::{GaussianRational, Signature, TruncatedSeries, W, WBAR, Z, ZBAR};

/// Remainder of `f` modulo a relation monic of degree `k` in `var`.
///
/// Every occurrence of `var^k` is replaced by `var^k - rel` until the
/// degree in `var` drops below `k`. Each rewrite strictly lowers the
/// `var`-degree of the affected term, so the loop terminates.
pub fn reduce_by_monic(f: &TruncatedSeries, rel: &TruncatedSeries, k: u32, var: &str) -> Result<TruncatedSeries> {
    let sig = f.signature();
    if sig != rel.signature() {
        return Err(Error::SignatureMismatch(format!("{} vs {}", sig, rel.signature())));
    }
    let idx = sig.index_of(var)?;
    let lead = sig.var(idx, k);
    if !rel.coeff(&lead).is_one()
        || rel
            .terms()
            .any(|(m, _)| m.exponent(idx) > k || (m.exponent(idx) == k && *m != lead))
    {
        return Err(Error::NotAModel(format!(
            "relation is not monic of degree {k} in {var}"
        )));
    }
    let tail = rel.filter(|m| *m != lead);
    let order = f.order().min(rel.order());
    let mut low = TruncatedSeries::zero(sig, order);
    let mut high = f.truncate(order);
    while !high.is_zero() {
        let mut next = TruncatedSeries::zero(sig, order);
        for (m, c) in high.terms() {
            let e = m.exponent(idx);
            if e < k {
                low.add_term(m.clone(), c.clone());
            } else {
                let rest = m.with_exponent(sig, idx, e - k);
                for (tm, tc) in tail.mul_monomial(&rest, &-c).terms() {
                    next.add_term(tm.clone(), tc.clone());
                }
            }
        }
        high = next;
    }
    Ok(low)
}

/// `f = sum_{j<k} f_j(z, w) zbar^j` on the model.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedRepresentative {
    pub coeffs: Vec<TruncatedSeries>,
}

impl ReducedRepresentative {
    pub fn order(&self) -> u32 {
        self.coeffs.iter().map(TruncatedSeries::order).min().unwrap_or(0)
    }

    /// Reassembles `sum_j f_j zbar^j`.
    pub fn to_series(&self) -> TruncatedSeries {
        let first = &self.coeffs[0];
        let sig = first.signature();
        let mut out = TruncatedSeries::zero(sig, self.order());
        for (j, fj) in self.coeffs.iter().enumerate() {
            let shifted = fj.mul_monomial(&sig.var(ZBAR, j as u32), &GaussianRational::one());
            out = out.add(&shifted).expect("same signature");
        }
        out
    }
}

fn check_input(f: &TruncatedSeries, sig: &Signature) -> Result<()> {
    if f.signature() != sig {
        return Err(Error::SignatureMismatch(format!(
            "series in {} but the model uses {}",
            f.signature(),
            sig
        )));
    }
    Ok(())
}

/// The relation `zbar^k + sum_{j>=1} (alpha_j/alpha_0) z^j zbar^(k-j) - w/alpha_0` on the model.
fn zbar_relation(model: &ModelHypersurface, order: u32) -> TruncatedSeries {
    let a0_inv = model.alpha()[0].inv().expect("fiber data has alpha_0 != 0");
    model.ideal_generator(order).scale(&-a0_inv)
}

pub fn reduce(f: &TruncatedSeries, fd: &FiberData, order: u32) -> Result<ReducedRepresentative> {
    let h = fd.as_hypersurface()?;
    check_input(f, &h.signature())?;
    reduce_hypersurface(f, h, order)
}

fn reduce_hypersurface(f: &TruncatedSeries, h: &HypersurfaceFiber, order: u32) -> Result<ReducedRepresentative> {
    let model = h.model();
    let order = order.min(f.order());
    let k = model.k();
    let f = f.truncate(order);
    let no_wbar = if f.is_free_of(&[WBAR]) {
        f
    } else {
        f.substitute("wbar", &model.conjugate_polynomial(order))?
    };
    let rem = reduce_by_monic(&no_wbar, &zbar_relation(model, order), k, "zbar")?;
    let sig = rem.signature().clone();
    let mut coeffs = vec![TruncatedSeries::zero(&sig, order); k as usize];
    for (m, c) in rem.terms() {
        let j = m.exponent(ZBAR) as usize;
        coeffs[j].add_term(m.with_exponent(&sig, ZBAR, 0), c.clone());
    }
    Ok(ReducedRepresentative { coeffs })
}

/// `A f (z, w) = (1/k) sum over the fiber of f(z, w, zeta, omega)`, exact up to `order`.
pub fn average(f: &TruncatedSeries, fd: &FiberData, order: u32) -> Result<TruncatedSeries> {
    check_input(f, &fd.signature())?;
    let order = order.min(f.order());
    let k_inv = GaussianRational::ratio(1, fd.multiplicity() as i64);
    match fd {
        FiberData::Hypersurface(h) => {
            let rep = reduce_hypersurface(f, h, order)?;
            let p = h.power_sums(h.k() - 1, order);
            let mut out = TruncatedSeries::zero(&h.signature(), order);
            for (fj, pj) in rep.coeffs.iter().zip(&p) {
                if !fj.is_zero() {
                    out = out.add(&fj.mul(pj)?)?;
                }
            }
            Ok(out.scale(&k_inv))
        }
        FiberData::Product(p) => {
            let sig = p.signature();
            let mut sums: HashMap<(u32, u32), TruncatedSeries> = HashMap::new();
            let mut out = TruncatedSeries::zero(&sig, order);
            for (m, c) in f.truncate(order).terms() {
                let key = (m.exponent(ZBAR), m.exponent(WBAR));
                let s = sums
                    .entry(key)
                    .or_insert_with(|| p.mixed_power_sum(key.0, key.1, order));
                let hol = m.with_exponent(&sig, ZBAR, 0).with_exponent(&sig, WBAR, 0);
                out = out.add(&s.mul_monomial(&hol, c))?;
            }
            Ok(out.scale(&k_inv))
        }
    }
}

/// The restricted averaging operator: `average` on series in `(zbar, wbar)` only.
pub fn raverage(g: &TruncatedSeries, fd: &FiberData, order: u32) -> Result<TruncatedSeries> {
    check_input(g, &fd.signature())?;
    if !g.is_free_of(&[Z, W]) {
        return Err(Error::NotAntiholomorphic(g.to_string()));
    }
    average(g, fd, order)
}

/// `R(zbar^a wbar^b)` for all `(a, b)` of weighted degree at most `degree_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSeriesTable {
    pub k: u32,
    pub degree_bound: u32,
    pub order: u32,
    pub entries: BTreeMap<(u32, u32), TruncatedSeries>,
}

impl RSeriesTable {
    pub fn get(&self, a: u32, b: u32) -> Option<&TruncatedSeries> {
        self.entries.get(&(a, b))
    }

    /// Compares the `z`-free part of every entry with the value the fiber
    /// at `z = 0` predicts: there `zeta^k = w/alpha_0` and
    /// `omega = conj(alpha_k) zeta^k`, so the entry is
    /// `conj(alpha_k)^b (w/alpha_0)^(a/k + b)` when `k | a`, and 0
    /// otherwise. For normalized models this is `w^(a/k)` when `b = 0` and
    /// `k | a`, and 0 otherwise.
    pub fn leading_term_checks(&self, model: &ModelHypersurface) -> Vec<LeadingTermCheck> {
        let k = model.k();
        let sig = model.signature();
        let a0_inv = model.alpha()[0].inv().expect("alpha_0 != 0");
        let alpha_k = model.alpha()[k as usize].conj();
        self.entries
            .iter()
            .map(|(&(a, b), entry)| {
                let z_free = entry.filter(|m| m.exponent(Z) == 0);
                let expected = if a % k == 0 {
                    let wpow = a / k + b;
                    let c = &alpha_k.pow(b) * &a0_inv.pow(wpow);
                    TruncatedSeries::monomial(&sig, entry.order(), sig.var(W, wpow), c)
                } else {
                    TruncatedSeries::zero(&sig, entry.order())
                };
                LeadingTermCheck {
                    a,
                    b,
                    holds: z_free == expected,
                    z_free,
                    expected,
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeadingTermCheck {
    pub a: u32,
    pub b: u32,
    pub z_free: TruncatedSeries,
    pub expected: TruncatedSeries,
    pub holds: bool,
}

pub fn r_table(fd: &FiberData, degree_bound: u32, order: u32) -> Result<RSeriesTable> {
    let sig = fd.signature();
    let (wz, ww) = (sig.weights()[ZBAR], sig.weights()[WBAR]);
    let keys: Vec<(u32, u32)> = (0..=degree_bound / ww)
        .flat_map(|b| (0..=(degree_bound - b * ww) / wz).map(move |a| (a, b)))
        .collect();
    let entries = keys
        .par_iter()
        .map(|&(a, b)| {
            let g = TruncatedSeries::monomial(&sig, order, sig.monomial(&[0, 0, a, b])?, GaussianRational::one());
            Ok(((a, b), raverage(&g, fd, order)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    debug!(
        "built R-table with {} entries up to degree {degree_bound}",
        entries.len()
    );
    Ok(RSeriesTable {
        k: fd.multiplicity(),
        degree_bound,
        order,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingEntry {
    pub a: u32,
    /// Coefficient of `s^a` in `sum_a R(zbar^a) s^a`.
    pub averaged: TruncatedSeries,
    /// Coefficient of `s^a` in `(1/k) sum_a P_a s^a` from the rational identity.
    pub generating: TruncatedSeries,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingSeriesReport {
    pub order: u32,
    pub s_order: u32,
    pub entries: Vec<GeneratingEntry>,
}

impl GeneratingSeriesReport {
    pub fn all_agree(&self) -> bool {
        self.entries.iter().all(|e| e.agree)
    }
}

/// Checks `sum_a R(zbar^a) s^a` against
/// `(1/k) (k E(s) - s E'(s)) / E(s)` with `E(s) = sum_j (-1)^j e_j s^j`,
/// the generating function of the power sums of the fiber roots.
pub fn generating_series_check(fd: &FiberData, order: u32, s_order: u32) -> Result<GeneratingSeriesReport> {
    let h = fd.as_hypersurface()?;
    let k = h.k();
    let ext = h.signature();
    // s gets weight 1: every s^a coefficient is homogeneous of degree a,
    // so truncating at order + s_order keeps all of them exact up to `order`.
    let gsig = Signature::new([("z", 1), ("w", k), ("s", 1)])?;
    let gorder = order + s_order;
    let e = h.elementary(gorder);
    let mut denom = TruncatedSeries::one(&gsig, gorder);
    let mut numer = TruncatedSeries::constant(&gsig, gorder, GaussianRational::from_integer(k as i64));
    for (j, ej) in e.iter().enumerate() {
        let j = j as u32 + 1;
        let sign = if j.is_multiple_of(2) { 1 } else { -1 };
        let ej = ej.remap(&gsig, gorder)?;
        let sj = gsig.var(2, j);
        denom = denom.add(&ej.mul_monomial(&sj, &GaussianRational::from_integer(sign)))?;
        let weight = sign * (k as i64 - j as i64);
        numer = numer.add(&ej.mul_monomial(&sj, &GaussianRational::from_integer(weight)))?;
    }
    let rhs = numer
        .mul(&denom.invert_unit()?)?
        .scale(&GaussianRational::ratio(1, k as i64));

    let entries = (0..=s_order)
        .into_par_iter()
        .map(|a| {
            let g = TruncatedSeries::monomial(&ext, order, ext.var(ZBAR, a), GaussianRational::one());
            let averaged = raverage(&g, fd, order)?;
            let coeff = rhs.filter(|m| m.exponent(2) == a);
            let mut generating = TruncatedSeries::zero(&ext, order);
            for (m, c) in coeff.terms() {
                generating.add_term(ext.monomial(&[m.exponent(0), m.exponent(1), 0, 0])?, c.clone());
            }
            let agree = averaged == generating;
            Ok(GeneratingEntry {
                a,
                averaged,
                generating,
                agree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratingSeriesReport {
        order,
        s_order,
        entries,
    })
}
