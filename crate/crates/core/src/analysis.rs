//! Decision procedures built on the averaging operator.
//!
//! Every verdict is a statement up to a weighted truncation order `N`:
//! "holds" means every checked identity agrees through degree `N`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::averaging::{average, raverage, RSeriesTable};
use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{FiberData, ModelHypersurface};
use crate::series::{GaussianRational, Monomial, TruncatedSeries, W, Z};
use crate::symm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    HoldsToOrder,
    Fails,
}

/// First failing power and its nonzero discrepancy series.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub ell: u32,
    pub discrepancy: TruncatedSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub order: u32,
    pub witness: Option<Witness>,
    /// The holomorphic extension `A f` when a holomorphy check holds.
    pub extension: Option<TruncatedSeries>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == VerdictStatus::HoldsToOrder
    }

    fn from_discrepancies(order: u32, discrepancies: Vec<TruncatedSeries>) -> Self {
        let witness = discrepancies
            .into_iter()
            .enumerate()
            .find(|(_, d)| !d.is_zero())
            .map(|(i, d)| Witness {
                ell: i as u32 + 1,
                discrepancy: d,
            });
        Verdict {
            status: if witness.is_some() {
                VerdictStatus::Fails
            } else {
                VerdictStatus::HoldsToOrder
            },
            order,
            witness,
            extension: None,
        }
    }
}

fn powers(f: &TruncatedSeries, k: u32) -> Vec<TruncatedSeries> {
    let mut out = Vec::with_capacity(k as usize);
    let mut acc = f.clone();
    out.push(acc.clone());
    for _ in 1..k {
        acc = acc.mul(f).expect("same signature");
        out.push(acc.clone());
    }
    out
}

/// `A(f^ell) - (A f)^ell`.
pub fn holomorphic_discrepancy(f: &TruncatedSeries, fd: &FiberData, order: u32, ell: u32) -> Result<TruncatedSeries> {
    let f = f.truncate(order);
    let af = average(&f, fd, order)?;
    average(&f.pow(ell), fd, order)?.sub(&af.pow(ell))
}

/// `f` agrees on the model with a holomorphic function iff
/// `A(f^ell) = (A f)^ell` for `ell = 1..k`; the extension is then `A f`.
pub fn is_holomorphic_restriction(f: &TruncatedSeries, fd: &FiberData, order: u32) -> Result<Verdict> {
    let k = fd.multiplicity();
    let f = f.truncate(order);
    let order = f.order();
    let af = average(&f, fd, order)?;
    let fp = powers(&f, k);
    let ap = powers(&af, k);
    let discrepancies = fp
        .par_iter()
        .zip(ap.par_iter())
        .map(|(fl, al)| average(fl, fd, order)?.sub(al))
        .collect::<Result<Vec<_>>>()?;
    let mut verdict = Verdict::from_discrepancies(order, discrepancies);
    if verdict.holds() {
        verdict.extension = Some(af);
    }
    Ok(verdict)
}

/// `A((f - g)^ell)`.
pub fn equality_discrepancy(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    fd: &FiberData,
    order: u32,
    ell: u32,
) -> Result<TruncatedSeries> {
    average(&f.sub(g)?.truncate(order).pow(ell), fd, order)
}

/// `f = g` on the model iff `A((f - g)^ell) = 0` for `ell = 1..k`.
pub fn equal_on_x(f: &TruncatedSeries, g: &TruncatedSeries, fd: &FiberData, order: u32) -> Result<Verdict> {
    let d = f.sub(g)?.truncate(order);
    let order = d.order();
    let discrepancies = powers(&d, fd.multiplicity())
        .par_iter()
        .map(|dl| average(dl, fd, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_discrepancies(order, discrepancies))
}

fn require_holomorphic(f: &TruncatedSeries) -> Result<()> {
    if f.is_holomorphic() {
        Ok(())
    } else {
        Err(Error::NotHolomorphic(f.to_string()))
    }
}

/// `R(conj(f)^ell) - f^ell`.
pub fn real_valued_discrepancy(f: &TruncatedSeries, fd: &FiberData, order: u32, ell: u32) -> Result<TruncatedSeries> {
    require_holomorphic(f)?;
    let f = f.truncate(order);
    raverage(&f.involution()?.pow(ell), fd, order)?.sub(&f.pow(ell))
}

/// A holomorphic `f` is real-valued on the model iff
/// `R(conj(f)^ell) = f^ell` for `ell = 1..k`.
pub fn is_real_valued(f: &TruncatedSeries, fd: &FiberData, order: u32) -> Result<Verdict> {
    require_holomorphic(f)?;
    let f = f.truncate(order);
    let order = f.order();
    let fbar = f.involution()?;
    let k = fd.multiplicity();
    let discrepancies = powers(&fbar, k)
        .par_iter()
        .zip(powers(&f, k).par_iter())
        .map(|(bl, fl)| raverage(bl, fd, order)?.sub(fl))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_discrepancies(order, discrepancies))
}

/// A degree-`k` real-valued candidate `a z^k + b w`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaCandidate {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub polynomial: TruncatedSeries,
    /// `(cos theta, sin theta)` up to a positive factor, from `b = f_k e^{-i theta}`.
    pub direction: Option<(BigRational, BigRational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatteningResult {
    pub degree_bound: u32,
    pub order: u32,
    pub theta_candidates: Vec<ThetaCandidate>,
    /// Real basis of `{f : R(conj f) = f}` in weighted degrees `1..=D`.
    pub linear_basis: Vec<TruncatedSeries>,
    /// Basis elements that also pass `R(conj(f)^ell) = f^ell` for `ell <= k`.
    pub verified: Vec<TruncatedSeries>,
}

fn gr_from_parts(re: &BigRational, im: &BigRational) -> GaussianRational {
    GaussianRational::new(re.clone(), im.clone())
}

/// Real solutions `(a, b)` of "`a z^k + b w` is real-valued on `M_p`".
///
/// On the model, `a z^k + b w = (a + b alpha_k) z^k + b alpha_0 zbar^k +
/// sum_{0<j<k} b alpha_j z^j zbar^(k-j)`; equating with the conjugate gives
/// `a + b alpha_k = conj(b alpha_0)` and `b alpha_j = conj(b alpha_(k-j))`.
fn theta_candidates(model: &ModelHypersurface, order: u32) -> Vec<ThetaCandidate> {
    let k = model.k() as usize;
    let alpha = model.alpha();
    // unknowns: Re a, Im a, Re b, Im b; each complex equation gives two real rows
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut push_complex = |coef_a: GaussianRational, coef_b: GaussianRational, coef_bbar: GaussianRational| {
        // coef_a * a + coef_b * b + coef_bbar * conj(b) = 0, with a only entering linearly
        let (ar, ai) = (coef_a.re().clone(), coef_a.im().clone());
        let (br, bi) = (coef_b.re().clone(), coef_b.im().clone());
        let (cr, ci) = (coef_bbar.re().clone(), coef_bbar.im().clone());
        // real part: ar x_a - ai y_a + (br + cr) x_b + (-bi + ci) y_b
        rows.push(vec![ar.clone(), -ai.clone(), &br + &cr, -&bi + &ci]);
        // imaginary part: ai x_a + ar y_a + (bi + ci) x_b + (br - cr) y_b
        rows.push(vec![ai, ar, &bi + &ci, &br - &cr]);
    };
    push_complex(GaussianRational::one(), alpha[k].clone(), -alpha[0].conj());
    for j in 1..k {
        push_complex(GaussianRational::zero(), alpha[j].clone(), -alpha[k - j].conj());
    }
    let sig = model.signature();
    linalg::nullspace(&rows, 4)
        .into_iter()
        .map(|v| {
            let a = gr_from_parts(&v[0], &v[1]);
            let b = gr_from_parts(&v[2], &v[3]);
            let mut polynomial = TruncatedSeries::zero(&sig, order);
            polynomial.add_term(sig.var(Z, k as u32), a.clone());
            polynomial.add_term(sig.var(W, 1), b.clone());
            let direction = (!b.is_zero()).then(|| (b.re().clone(), -b.im().clone()));
            ThetaCandidate {
                a,
                b,
                polynomial,
                direction,
            }
        })
        .collect()
}

/// Searches for flattenings: holomorphic `f` real-valued on the model.
///
/// The linear condition `R(conj f) = f` is solved exactly over the real and
/// imaginary parts of the coefficients of `f` up to weighted degree `D`;
/// each basis element is then checked against the full set of conditions
/// `ell = 1..k`.
pub fn flatten_search(fd: &FiberData, degree_bound: u32, order: u32) -> Result<FlatteningResult> {
    let h = fd.as_hypersurface()?;
    let k = h.k();
    if degree_bound < k {
        return Err(Error::DegreeBelowMultiplicity {
            degree: degree_bound,
            k,
        });
    }
    if order < degree_bound {
        return Err(Error::OrderBelowDegree {
            order,
            degree: degree_bound,
        });
    }
    let sig = h.signature();
    // unknown monomials z^i w^j of weighted degree 1..=D, highest first
    let mut unknowns: Vec<Monomial> = Vec::new();
    for j in 0..=degree_bound / k {
        for i in 0..=(degree_bound - j * k) {
            if i + j > 0 {
                unknowns.push(sig.monomial(&[i, j, 0, 0])?);
            }
        }
    }
    unknowns.sort_by(|a, b| b.cmp(a));
    let images = unknowns
        .par_iter()
        .map(|m| {
            let conj = TruncatedSeries::monomial(&sig, order, m.clone(), GaussianRational::one()).involution()?;
            raverage(&conj, fd, order)
        })
        .collect::<Result<Vec<_>>>()?;

    let ncols = 2 * unknowns.len();
    let mut outputs: BTreeSet<Monomial> = unknowns.iter().cloned().collect();
    for img in &images {
        outputs.extend(img.terms().map(|(m, _)| m.clone()));
    }
    let mut rows = Vec::with_capacity(2 * outputs.len());
    for mu in &outputs {
        let mut re_row = vec![BigRational::zero(); ncols];
        let mut im_row = vec![BigRational::zero(); ncols];
        for (col, img) in images.iter().enumerate() {
            let c = img.coeff(mu);
            // conj(x + i y) (R + i I) = x R + y I + i (x I - y R)
            re_row[2 * col] += c.re();
            re_row[2 * col + 1] += c.im();
            im_row[2 * col] += c.im();
            im_row[2 * col + 1] -= c.re();
        }
        if let Some(col) = unknowns.iter().position(|m| m == mu) {
            re_row[2 * col] -= BigRational::one();
            im_row[2 * col + 1] -= BigRational::one();
        }
        rows.push(re_row);
        rows.push(im_row);
    }
    let mut linear_basis: Vec<TruncatedSeries> = linalg::nullspace(&rows, ncols)
        .into_iter()
        .map(|v| {
            let mut f = TruncatedSeries::zero(&sig, order);
            for (col, m) in unknowns.iter().enumerate() {
                f.add_term(m.clone(), gr_from_parts(&v[2 * col], &v[2 * col + 1]));
            }
            f
        })
        .collect();
    linear_basis.sort_by_key(leading);

    let checks = linear_basis
        .par_iter()
        .map(|f| is_real_valued(f, fd, order))
        .collect::<Result<Vec<_>>>()?;
    let verified = linear_basis
        .iter()
        .zip(&checks)
        .filter(|(_, v)| v.holds())
        .map(|(f, _)| f.clone())
        .collect();

    Ok(FlatteningResult {
        degree_bound,
        order,
        theta_candidates: theta_candidates(h.model(), order),
        linear_basis,
        verified,
    })
}

fn leading(f: &TruncatedSeries) -> Option<Monomial> {
    f.terms().next_back().map(|(m, _)| m.clone())
}

/// Recovers `M_p` from `R(zbar^a)`, `a = 1..k`.
///
/// `k R(zbar^a)` are the power sums of the fiber roots; the inverse Newton
/// recursion gives the elementary symmetric functions, from which the
/// monic fiber polynomial and hence `alpha` can be read off.
pub fn reconstruct_model(table: &RSeriesTable, k: u32) -> Result<ModelHypersurface> {
    if k < 2 {
        return Err(Error::NotAModel(format!("multiplicity {k} is below 2")));
    }
    let mut p = Vec::with_capacity(k as usize);
    for a in 1..=k {
        let entry = table
            .get(a, 0)
            .ok_or_else(|| Error::NotAModel(format!("table has no entry for zbar^{a}")))?;
        p.push(entry.scale(&GaussianRational::from_integer(k as i64)));
    }
    let sig = p[0].signature().clone();
    if sig.weights()[Z] != 1 || sig.weights()[W] != k {
        return Err(Error::NotAModel(format!(
            "table signature {sig} does not fit multiplicity {k}"
        )));
    }
    let e = symm::elementary_from_power_sums(&p)?;
    let sign = |j: u32| {
        if j.is_multiple_of(2) {
            GaussianRational::one()
        } else {
            -GaussianRational::one()
        }
    };

    let ek = &e[k as usize - 1];
    let w_coeff = ek.coeff(&sig.var(W, 1));
    if w_coeff.is_zero() {
        return Err(Error::NotAModel("e_k has no w term".into()));
    }
    let alpha0 = &sign(k + 1) * &w_coeff.inv()?;
    let mut alpha = vec![alpha0.clone()];
    for (j, ej) in e.iter().enumerate() {
        let j = j as u32 + 1;
        let zj = sig.var(Z, j);
        let allowed = |m: &Monomial| *m == zj || (j == k && *m == sig.var(W, 1));
        if let Some((m, _)) = ej.terms().find(|(m, _)| !allowed(m)) {
            return Err(Error::NotAModel(format!(
                "e_{j} contains {} which no model produces",
                TruncatedSeries::monomial(&sig, ej.order(), m.clone(), GaussianRational::one())
            )));
        }
        alpha.push(&(&sign(j) * &alpha0) * &ej.coeff(&zj));
    }
    ModelHypersurface::new(alpha)
}
