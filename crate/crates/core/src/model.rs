//! Model varieties in `C^2` and the symmetric data of their Segre fibers.
//!
//! A hypersurface model is `w = p(z, zbar)` with
//! `p(z, zbar) = sum_j alpha_j z^j zbar^(k-j)`. Over a point `(z, w)` the
//! Segre fiber consists of the `k` roots `zeta` of `p(z, zeta) = w`, each
//! paired with `omega = conj(p)(zeta, z)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{GaussianRational, Monomial, Signature, TruncatedSeries, W, Z};
use crate::symm;

/// `w = sum_j alpha_j z^j zbar^(k-j)`, with `alpha` indexed `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelHypersurface {
    alpha: Vec<GaussianRational>,
}

impl ModelHypersurface {
    /// Builds the model from `alpha_0..alpha_k`; needs `k >= 2`.
    pub fn new(alpha: Vec<GaussianRational>) -> Result<Self> {
        if alpha.len() < 3 {
            return Err(Error::DegenerateModel(format!(
                "Segre degree must be at least 2, got {}",
                alpha.len().saturating_sub(1)
            )));
        }
        Ok(ModelHypersurface { alpha })
    }

    /// `w = zbar^2 + 2 mu z zbar`.
    pub fn quadric(mu: GaussianRational) -> Self {
        let two_mu = &GaussianRational::from_integer(2) * &mu;
        Self::new(vec![GaussianRational::one(), two_mu, GaussianRational::zero()]).expect("quadric has degree 2")
    }

    /// `w = lambda (z^2 + zbar^2) + z zbar`.
    pub fn bishop(lambda: GaussianRational) -> Self {
        Self::new(vec![lambda.clone(), GaussianRational::one(), lambda]).expect("Bishop surface has degree 2")
    }

    pub fn k(&self) -> u32 {
        (self.alpha.len() - 1) as u32
    }

    pub fn alpha(&self) -> &[GaussianRational] {
        &self.alpha
    }

    pub fn signature(&self) -> Signature {
        Signature::external(1, self.k())
    }

    pub fn is_normalized(&self) -> bool {
        self.alpha[0].is_one() && self.alpha[self.k() as usize].is_zero()
    }

    /// The same hypersurface after `w -> (w - alpha_k z^k) / alpha_0`, which
    /// makes `alpha_0 = 1` and `alpha_k = 0`.
    pub fn normalized(&self) -> Result<Self> {
        let a0_inv = self.alpha[0]
            .inv()
            .map_err(|_| Error::DegenerateModel("alpha_0 = 0".into()))?;
        let k = self.k() as usize;
        let mut alpha: Vec<GaussianRational> = self.alpha.iter().map(|a| a * &a0_inv).collect();
        alpha[k] = GaussianRational::zero();
        Self::new(alpha)
    }

    /// `p(z, zbar)` as a series in `(z, w, zbar, wbar)`.
    pub fn defining_polynomial(&self, order: u32) -> TruncatedSeries {
        let sig = self.signature();
        let k = self.k();
        let mut out = TruncatedSeries::zero(&sig, order);
        for (j, a) in self.alpha.iter().enumerate() {
            let m = sig
                .monomial(&[j as u32, 0, k - j as u32, 0])
                .expect("external signature");
            out.add_term(m, a.clone());
        }
        out
    }

    /// `conj(p)(zbar, z) = sum_j conj(alpha_j) zbar^j z^(k-j)`, the value of `wbar` on `M_p`.
    pub fn conjugate_polynomial(&self, order: u32) -> TruncatedSeries {
        self.defining_polynomial(order)
            .involution()
            .expect("external signature")
    }

    /// `w - p(z, zbar)`, a generator of the ideal of the model.
    pub fn ideal_generator(&self, order: u32) -> TruncatedSeries {
        let w = TruncatedSeries::variable(&self.signature(), order, "w").expect("w exists");
        w.sub(&self.defining_polynomial(order)).expect("same signature")
    }

    /// `wbar - conj(p)(zbar, z)`.
    pub fn conjugate_ideal_generator(&self, order: u32) -> TruncatedSeries {
        self.ideal_generator(order).involution().expect("external signature")
    }
}

/// A fiber that is the Cartesian product of two root sets
/// `zeta^n1 = A(z, w)` and `omega^n2 = B(z, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFiberModel {
    name: String,
    weight_z: u32,
    weight_w: u32,
    zeta_degree: u32,
    zeta_power: Vec<(u32, u32, GaussianRational)>,
    omega_degree: u32,
    omega_power: Vec<(u32, u32, GaussianRational)>,
}

impl ProductFiberModel {
    /// `z^3 = w^2 + wbar^2`: together with its conjugate this gives the
    /// fiber `zeta^3 = z^3`, `omega^2 = z^3 - w^2` of multiplicity 6.
    ///
    /// With weights 2 for `z` and 3 for `w` the defining equation is
    /// weighted homogeneous, which keeps truncation coherent.
    pub fn silly_cubic() -> Self {
        ProductFiberModel {
            name: "silly-cubic".to_string(),
            weight_z: 2,
            weight_w: 3,
            zeta_degree: 3,
            zeta_power: vec![(3, 0, GaussianRational::one())],
            omega_degree: 2,
            omega_power: vec![(3, 0, GaussianRational::one()), (0, 2, -GaussianRational::one())],
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "silly-cubic" => Ok(Self::silly_cubic()),
            other => Err(Error::Parse(format!("unknown product model `{other}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn multiplicity(&self) -> u32 {
        self.zeta_degree * self.omega_degree
    }

    pub fn signature(&self) -> Signature {
        Signature::external(self.weight_z, self.weight_w)
    }

    fn holomorphic(&self, terms: &[(u32, u32, GaussianRational)], order: u32) -> TruncatedSeries {
        let sig = self.signature();
        let mut out = TruncatedSeries::zero(&sig, order);
        for (a, b, c) in terms {
            out.add_term(sig.monomial(&[*a, *b, 0, 0]).expect("external"), c.clone());
        }
        out
    }

    /// `sum over roots r of r^n = A` of `r^a`: `n A^(a/n)` when `n | a`, else 0.
    fn root_power_sum(
        &self,
        degree: u32,
        power: &[(u32, u32, GaussianRational)],
        a: u32,
        order: u32,
    ) -> TruncatedSeries {
        if !a.is_multiple_of(degree) {
            return TruncatedSeries::zero(&self.signature(), order);
        }
        self.holomorphic(power, order)
            .pow(a / degree)
            .scale(&GaussianRational::from_integer(degree as i64))
    }

    pub fn mixed_power_sum(&self, a: u32, b: u32, order: u32) -> TruncatedSeries {
        let zs = self.root_power_sum(self.zeta_degree, &self.zeta_power, a, order);
        let ws = self.root_power_sum(self.omega_degree, &self.omega_power, b, order);
        zs.mul(&ws).expect("same signature")
    }

    /// `A(z, w)`, `B(z, w)` and the root degrees, for numeric cross-checks.
    pub fn root_equations(&self, order: u32) -> [(u32, TruncatedSeries); 2] {
        [
            (self.zeta_degree, self.holomorphic(&self.zeta_power, order)),
            (self.omega_degree, self.holomorphic(&self.omega_power, order)),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Hypersurface(ModelHypersurface),
    Product(ProductFiberModel),
}

impl Model {
    pub fn segre_multiplicity(&self) -> u32 {
        match self {
            Model::Hypersurface(m) => m.k(),
            Model::Product(p) => p.multiplicity(),
        }
    }

    pub fn signature(&self) -> Signature {
        match self {
            Model::Hypersurface(m) => m.signature(),
            Model::Product(p) => p.signature(),
        }
    }

    pub fn fiber_data(&self) -> Result<FiberData> {
        match self {
            Model::Hypersurface(m) => fiber_data(m).map(FiberData::Hypersurface),
            Model::Product(p) => Ok(FiberData::Product(p.clone())),
        }
    }

    pub fn from_config(config: &ModelConfig) -> Result<Self> {
        match config {
            ModelConfig::Hypersurface { k, alpha } => {
                if alpha.len() != *k as usize + 1 {
                    return Err(Error::Parse(format!(
                        "k = {k} needs {} alpha entries, found {}",
                        k + 1,
                        alpha.len()
                    )));
                }
                let alpha = alpha
                    .iter()
                    .map(|[re, im]| GaussianRational::parse_parts(re, im))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Model::Hypersurface(ModelHypersurface::new(alpha)?))
            }
            ModelConfig::Product { name } => Ok(Model::Product(ProductFiberModel::by_name(name)?)),
        }
    }

    pub fn to_config(&self) -> ModelConfig {
        match self {
            Model::Hypersurface(m) => ModelConfig::Hypersurface {
                k: m.k(),
                alpha: m
                    .alpha()
                    .iter()
                    .map(|a| {
                        let (re, im) = a.to_strings();
                        [re, im]
                    })
                    .collect(),
            },
            Model::Product(p) => ModelConfig::Product {
                name: p.name().to_string(),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: ModelConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_config(&config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_config()).expect("config serializes")
    }
}

/// On-disk model description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelConfig {
    Hypersurface { k: u32, alpha: Vec<[String; 2]> },
    Product { name: String },
}

/// Elementary symmetric functions of the fiber roots of a hypersurface model.
///
/// They are monomials: `e_j = c_j z^j` for `j < k` and
/// `e_k = c_k z^k + d w`, fixed by requiring
/// `zeta^k - e_1 zeta^(k-1) + ... + (-1)^k e_k = p(z, zeta)/alpha_0 - w/alpha_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceFiber {
    model: ModelHypersurface,
    z_coeffs: Vec<GaussianRational>,
    w_coeff: GaussianRational,
}

pub fn fiber_data(m: &ModelHypersurface) -> Result<HypersurfaceFiber> {
    let a0_inv = m.alpha()[0]
        .inv()
        .map_err(|_| Error::DegenerateModel("alpha_0 = 0, p(0, zbar) vanishes identically".into()))?;
    let k = m.k() as usize;
    let sign = |j: usize| {
        if j.is_multiple_of(2) {
            GaussianRational::one()
        } else {
            -GaussianRational::one()
        }
    };
    let z_coeffs = (1..=k).map(|j| &(&m.alpha()[j] * &a0_inv) * &sign(j)).collect();
    // (-1)^k e_k carries -w / alpha_0
    let w_coeff = &(-a0_inv) * &sign(k);
    Ok(HypersurfaceFiber {
        model: m.clone(),
        z_coeffs,
        w_coeff,
    })
}

impl HypersurfaceFiber {
    pub fn model(&self) -> &ModelHypersurface {
        &self.model
    }

    pub fn k(&self) -> u32 {
        self.model.k()
    }

    pub fn signature(&self) -> Signature {
        self.model.signature()
    }

    /// `e_1..e_k` as series in the external signature.
    pub fn elementary(&self, order: u32) -> Vec<TruncatedSeries> {
        let sig = self.signature();
        let k = self.k();
        let mut out: Vec<TruncatedSeries> = self
            .z_coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| TruncatedSeries::monomial(&sig, order, sig.var(Z, j as u32 + 1), c.clone()))
            .collect();
        out[k as usize - 1].add_term(sig.var(W, 1), self.w_coeff.clone());
        out
    }

    /// Power sums `P_0 = k, P_1, ..., P_m` of the fiber roots.
    pub fn power_sums(&self, m: u32, order: u32) -> Vec<TruncatedSeries> {
        let sig = self.signature();
        let mut out = vec![TruncatedSeries::constant(
            &sig,
            order,
            GaussianRational::from_integer(self.k() as i64),
        )];
        if m > 0 {
            let p = symm::power_sums_from_elementary(&self.elementary(order), m as usize).expect("nonempty profile");
            out.extend(p);
        }
        out
    }

    /// Monic fiber polynomial in `(z, w, zeta)`.
    pub fn fiber_polynomial(&self, order: u32) -> TruncatedSeries {
        let k = self.k();
        let fsig = Signature::fiber(1, k);
        let mut out = TruncatedSeries::monomial(&fsig, order, fsig.var(2, k), GaussianRational::one());
        for (j, e) in self.elementary(order).iter().enumerate() {
            let j = j as u32 + 1;
            let sign = if j.is_multiple_of(2) {
                GaussianRational::one()
            } else {
                -GaussianRational::one()
            };
            let e = e.remap(&fsig, order).expect("fiber signature has z and w");
            let zeta = fsig.var(2, k - j);
            let term = e.mul_monomial(&zeta, &sign);
            out = out.add(&term).expect("same signature");
        }
        out
    }

    /// `omega = conj(p)(zeta, z)` in `(z, w, zeta)`.
    pub fn omega_on_fiber(&self, order: u32) -> TruncatedSeries {
        let fsig = Signature::fiber(1, self.k());
        let k = self.k();
        let mut out = TruncatedSeries::zero(&fsig, order);
        for (j, a) in self.model.alpha().iter().enumerate() {
            let m = fsig.monomial(&[k - j as u32, 0, j as u32]).expect("fiber");
            out.add_term(m, a.conj());
        }
        out
    }

    /// `sum over fiber points of zeta^a omega^b`, weighted homogeneous of degree `a + k b`.
    pub fn mixed_power_sum(&self, a: u32, b: u32, order: u32) -> TruncatedSeries {
        let k = self.k();
        // zeta^a conj(p)(zeta, z)^b as a polynomial in zeta; the z power is implied by homogeneity
        let mut poly = vec![GaussianRational::zero(); a as usize + 1];
        poly[a as usize] = GaussianRational::one();
        let conj_alpha: Vec<GaussianRational> = self.model.alpha().iter().map(|c| c.conj()).collect();
        for _ in 0..b {
            let mut next = vec![GaussianRational::zero(); poly.len() + k as usize];
            for (i, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, a) in conj_alpha.iter().enumerate() {
                    next[i + j] += &(c * a);
                }
            }
            poly = next;
        }
        let total = a + k * b;
        let sig = self.signature();
        let p = self.power_sums(total, order);
        let mut out = TruncatedSeries::zero(&sig, order);
        for (m, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let zpow = sig.var(Z, total - m as u32);
            out = out.add(&p[m].mul_monomial(&zpow, c)).expect("same signature");
        }
        out
    }
}

/// Fiber data for any supported model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberData {
    Hypersurface(HypersurfaceFiber),
    Product(ProductFiberModel),
}

impl FiberData {
    pub fn multiplicity(&self) -> u32 {
        match self {
            FiberData::Hypersurface(h) => h.k(),
            FiberData::Product(p) => p.multiplicity(),
        }
    }

    pub fn signature(&self) -> Signature {
        match self {
            FiberData::Hypersurface(h) => h.signature(),
            FiberData::Product(p) => p.signature(),
        }
    }

    pub fn as_hypersurface(&self) -> Result<&HypersurfaceFiber> {
        match self {
            FiberData::Hypersurface(h) => Ok(h),
            FiberData::Product(p) => Err(Error::UnsupportedModel(format!(
                "`{}` is not a hypersurface model",
                p.name()
            ))),
        }
    }

    pub fn mixed_power_sum(&self, a: u32, b: u32, order: u32) -> TruncatedSeries {
        match self {
            FiberData::Hypersurface(h) => h.mixed_power_sum(a, b, order),
            FiberData::Product(p) => p.mixed_power_sum(a, b, order),
        }
    }
}

pub fn mixed_power_sum(fd: &FiberData, a: u32, b: u32, order: u32) -> TruncatedSeries {
    fd.mixed_power_sum(a, b, order)
}

pub fn segre_multiplicity(m: &Model) -> u32 {
    m.segre_multiplicity()
}

/// Standard defining equations `Phi_gamma`, `|gamma| = k`, indexed by
/// `gamma = (gamma_z, gamma_w)`.
///
/// `equations` holds the holomorphic-leading form
/// `Phi_gamma = k!/gamma! z^gamma_z w^gamma_w + ...`, a product over the
/// fiber points in `(z, w)` above a fixed `(zbar, wbar)`. `barred` holds
/// the conjugate form, a product over the fiber points in `(zbar, wbar)`
/// above `(z, w)`; the two are exchanged by the involution.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardDefiningEquations {
    pub k: u32,
    pub equations: Vec<((u32, u32), TruncatedSeries)>,
    pub barred: Vec<((u32, u32), TruncatedSeries)>,
}

impl StandardDefiningEquations {
    pub fn get(&self, gamma: (u32, u32)) -> Option<&TruncatedSeries> {
        self.equations.iter().find(|(g, _)| *g == gamma).map(|(_, s)| s)
    }

    pub fn get_barred(&self, gamma: (u32, u32)) -> Option<&TruncatedSeries> {
        self.barred.iter().find(|(g, _)| *g == gamma).map(|(_, s)| s)
    }
}

fn binomial(n: u32, r: u32) -> i64 {
    (0..r).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Expands `prod_j (u_z (zbar - zeta^j) + u_w (wbar - omega^j))` through the
/// power sums of `u_z zeta + u_w omega` and Newton's identities, then reads off
/// the coefficients of `u^gamma`.
pub fn standard_defining_equations(fd: &FiberData, order: u32) -> Result<StandardDefiningEquations> {
    let k = fd.multiplicity();
    let sig = fd.signature();
    let (wz, ww) = (sig.weights()[Z], sig.weights()[W]);
    let usig = Signature::new([("z", wz), ("w", ww), ("zbar", wz), ("wbar", ww), ("uz", 1), ("uw", 1)])?;
    // parts of u-degree r stay exact up to (z, w, zbar, wbar)-degree order + k - r
    let uorder = order + k;
    let mut y_sums = Vec::with_capacity(k as usize);
    for r in 1..=k {
        let mut acc = TruncatedSeries::zero(&usig, uorder);
        for a in 0..=r {
            let s = fd.mixed_power_sum(a, r - a, uorder).remap(&usig, uorder)?;
            let u = usig.monomial(&[0, 0, 0, 0, a, r - a])?;
            acc = acc.add(&s.mul_monomial(&u, &GaussianRational::from_integer(binomial(r, a))))?;
        }
        y_sums.push(acc);
    }
    let e = symm::elementary_from_power_sums(&y_sums)?;
    let mut x = TruncatedSeries::zero(&usig, uorder);
    x.add_term(usig.monomial(&[0, 0, 1, 0, 1, 0])?, GaussianRational::one());
    x.add_term(usig.monomial(&[0, 0, 0, 1, 0, 1])?, GaussianRational::one());

    let mut product = x.pow(k);
    for (m, em) in e.iter().enumerate() {
        let m = m as u32 + 1;
        let term = em.mul(&x.pow(k - m))?;
        product = if m % 2 == 1 {
            product.sub(&term)?
        } else {
            product.add(&term)?
        };
    }

    let mut barred = Vec::with_capacity(k as usize + 1);
    let mut equations = Vec::with_capacity(k as usize + 1);
    for gz in (0..=k).rev() {
        let gw = k - gz;
        let mut phi = TruncatedSeries::zero(&sig, order);
        for (mono, c) in product.terms() {
            let ex = mono.exponents();
            if ex[4] == gz && ex[5] == gw {
                let m: Monomial = sig.monomial(&ex[..4])?;
                phi.add_term(m, c.clone());
            }
        }
        equations.push(((gz, gw), phi.involution()?));
        barred.push(((gz, gw), phi));
    }
    Ok(StandardDefiningEquations { k, equations, barred })
}

/// Substitutes the fiber point `(zbar, wbar) = (zeta, omega)` into `f`;
/// `zeta` and `omega` live in the fiber signature `(z, w, zeta)`.
pub fn on_fiber_point(f: &TruncatedSeries, zeta: &TruncatedSeries, omega: &TruncatedSeries) -> Result<TruncatedSeries> {
    let (ext, fsig) = (f.signature(), zeta.signature());
    let wide = Signature::new(
        ext.names()
            .iter()
            .cloned()
            .zip(ext.weights().iter().copied())
            .chain([("zeta".to_string(), fsig.weights()[2])]),
    )?;
    let order = f.order().min(zeta.order()).min(omega.order());
    let s = f
        .remap(&wide, order)?
        .substitute("zbar", &zeta.remap(&wide, order)?)?
        .substitute("wbar", &omega.remap(&wide, order)?)?;
    s.remap(fsig, s.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_series;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    fn ser(sig: &Signature, order: u32, text: &str) -> TruncatedSeries {
        parse_series(text, Some(sig), Some(order)).unwrap()
    }

    #[test]
    fn quadric_elementary_functions() {
        let m = ModelHypersurface::quadric(q(1, 2));
        let fd = fiber_data(&m).unwrap();
        let e = fd.elementary(6);
        let sig = m.signature();
        assert_eq!(e[0], ser(&sig, 6, "1,0,0,0\t-1\t0"));
        assert_eq!(e[1], ser(&sig, 6, "0,1,0,0\t-1\t0"));
    }

    #[test]
    fn bishop_elementary_functions() {
        let m = ModelHypersurface::bishop(q(1, 4));
        let fd = fiber_data(&m).unwrap();
        let e = fd.elementary(6);
        let sig = m.signature();
        assert_eq!(e[0], ser(&sig, 6, "1,0,0,0\t-4\t0"));
        assert_eq!(e[1], ser(&sig, 6, "2,0,0,0\t1\t0\n0,1,0,0\t-4\t0"));
    }

    #[test]
    fn pure_power_model() {
        for k in 2..6u32 {
            let mut alpha = vec![GaussianRational::zero(); k as usize + 1];
            alpha[0] = GaussianRational::one();
            let m = ModelHypersurface::new(alpha).unwrap();
            let e = fiber_data(&m).unwrap().elementary(2 * k);
            for ej in &e[..k as usize - 1] {
                assert!(ej.is_zero());
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let sig = m.signature();
            let expected = TruncatedSeries::monomial(&sig, 2 * k, sig.var(W, 1), sign.into());
            assert_eq!(e[k as usize - 1], expected);
        }
    }

    #[test]
    fn degenerate_models_rejected() {
        let m = ModelHypersurface::new(vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::one(),
        ])
        .unwrap();
        assert!(matches!(fiber_data(&m), Err(Error::DegenerateModel(_))));
        assert!(ModelHypersurface::new(vec![GaussianRational::one(); 2]).is_err());
    }

    #[test]
    fn fiber_polynomial_matches_defining_equation() {
        let m = ModelHypersurface::new(vec![
            q(2, 1),
            GaussianRational::from_parts((1, 3), (1, 1)),
            q(0, 1),
            q(-5, 2),
        ])
        .unwrap();
        let fd = fiber_data(&m).unwrap();
        let fsig = Signature::fiber(1, 3);
        // alpha_0^{-1} (sum_j alpha_j z^j zeta^(k-j) - w)
        let mut expected = TruncatedSeries::zero(&fsig, 9);
        for (j, a) in m.alpha().iter().enumerate() {
            expected.add_term(fsig.monomial(&[j as u32, 0, 3 - j as u32]).unwrap(), a / &q(2, 1));
        }
        expected.add_term(fsig.var(1, 1), q(-1, 2));
        assert_eq!(fd.fiber_polynomial(9), expected);
    }

    #[test]
    fn quadric_mixed_power_sums() {
        let m = ModelHypersurface::quadric(q(1, 2));
        let fd = FiberData::Hypersurface(fiber_data(&m).unwrap());
        let sig = m.signature();
        assert_eq!(fd.mixed_power_sum(1, 0, 6), ser(&sig, 6, "1,0,0,0\t-1\t0"));
        assert_eq!(
            fd.mixed_power_sum(2, 0, 6),
            ser(&sig, 6, "2,0,0,0\t1\t0\n0,1,0,0\t2\t0")
        );
        assert_eq!(
            fd.mixed_power_sum(0, 0, 6),
            TruncatedSeries::constant(&sig, 6, 2.into())
        );
        for (a, b) in [(0, 1), (3, 1), (1, 2), (5, 0)] {
            assert!(fd.mixed_power_sum(a, b, 12).is_homogeneous(a + 2 * b));
        }
    }

    #[test]
    fn silly_cubic_mixed_power_sums() {
        let p = ProductFiberModel::silly_cubic();
        let sig = p.signature();
        assert_eq!(p.multiplicity(), 6);
        assert_eq!(
            p.mixed_power_sum(0, 0, 12),
            TruncatedSeries::constant(&sig, 12, 6.into())
        );
        assert_eq!(
            p.mixed_power_sum(0, 2, 12),
            ser(&sig, 12, "3,0,0,0\t6\t0\n0,2,0,0\t-6\t0")
        );
        assert!(p.mixed_power_sum(0, 1, 12).is_zero());
        assert!(p.mixed_power_sum(1, 2, 12).is_zero());
        assert_eq!(p.mixed_power_sum(3, 0, 12), ser(&sig, 12, "3,0,0,0\t6\t0"));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(
            segre_multiplicity(&Model::Hypersurface(ModelHypersurface::quadric(q(1, 2)))),
            2
        );
        assert_eq!(segre_multiplicity(&Model::Product(ProductFiberModel::silly_cubic())), 6);
        let cubic = ModelHypersurface::new(vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(segre_multiplicity(&Model::Hypersurface(cubic)), 3);
    }

    #[test]
    fn bishop_standard_equations() {
        let m = ModelHypersurface::bishop(q(1, 4));
        let fd = FiberData::Hypersurface(fiber_data(&m).unwrap());
        let eqs = standard_defining_equations(&fd, 6).unwrap();
        let sig = m.signature();
        // (w - wbar)^2
        let phi02 = ser(&sig, 6, "0,2,0,0\t1\t0\n0,1,0,1\t-2\t0\n0,0,0,2\t1\t0");
        assert_eq!(eqs.get((0, 2)).unwrap(), &phi02);
        // 4 (w - wbar)(zbar + z/2)
        let phi11 = ser(&sig, 6, "0,1,1,0\t4\t0\n0,0,1,1\t-4\t0\n1,1,0,0\t2\t0\n1,0,0,1\t-2\t0");
        assert_eq!(eqs.get((1, 1)).unwrap(), &phi11);
        // z^2 + zbar^2 + z zbar / lambda - wbar / lambda
        let phi20 = ser(&sig, 6, "2,0,0,0\t1\t0\n0,0,2,0\t1\t0\n1,0,1,0\t4\t0\n0,0,0,1\t-4\t0");
        assert_eq!(eqs.get((2, 0)).unwrap(), &phi20);
    }

    #[test]
    fn barred_equations_vanish_on_fiber_points() {
        // a cubic whose fiber roots are not expressible; check on the generic root
        // through the fiber relation instead: Phi(zeta, omega) reduces to 0 modulo
        // the monic fiber polynomial.
        let m = ModelHypersurface::quadric(q(1, 3));
        let fd = fiber_data(&m).unwrap();
        let eqs = standard_defining_equations(&FiberData::Hypersurface(fd.clone()), 8).unwrap();
        let fsig = Signature::fiber(1, 2);
        let zeta = TruncatedSeries::variable(&fsig, 8, "zeta").unwrap();
        let omega = fd.omega_on_fiber(8);
        let rel = fd.fiber_polynomial(8);
        for (_, phi) in &eqs.barred {
            let v = on_fiber_point(phi, &zeta, &omega).unwrap();
            let r = crate::averaging::reduce_by_monic(&v, &rel, 2, "zeta").unwrap();
            assert!(r.is_zero(), "{v}");
        }
    }

    #[test]
    fn config_round_trip() {
        let m = Model::Hypersurface(ModelHypersurface::bishop(q(1, 4)));
        let json = m.to_json();
        assert_eq!(Model::from_json(&json).unwrap(), m);
        let silly = Model::from_json(r#"{ "kind": "product", "name": "silly-cubic" }"#).unwrap();
        assert_eq!(silly.segre_multiplicity(), 6);
        let quad = Model::from_json(r#"{ "kind": "hypersurface", "k": 2, "alpha": [["1","0"],["1","0"],["0","0"]] }"#)
            .unwrap();
        assert_eq!(quad, Model::Hypersurface(ModelHypersurface::quadric(q(1, 2))));
        assert!(Model::from_json(r#"{ "kind": "hypersurface", "k": 3, "alpha": [["1","0"]] }"#).is_err());
        assert!(Model::from_json(r#"{ "kind": "product", "name": "nope" }"#).is_err());
    }

    #[test]
    fn normalization() {
        let m = ModelHypersurface::bishop(q(1, 4)).normalized().unwrap();
        assert!(m.is_normalized());
        assert_eq!(m.alpha()[1], q(4, 1));
    }
}
