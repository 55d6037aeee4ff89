//! Shared test support: a floating-point fiber oracle and random inputs.
#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

use segre_core::model::{FiberData, Model, ModelHypersurface, ProductFiberModel};
use segre_core::series::Signature;
use segre_core::{GaussianRational, Monomial, TruncatedSeries};

/// Roots of `c[0] x^n + c[1] x^(n-1) + ... + c[n]` by Durand-Kerner iteration.
pub fn polynomial_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let monic: Vec<Complex64> = c.iter().map(|x| x / c[0]).collect();
    let eval = |x: Complex64| monic.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a);
    let radius = 1.0 + monic[1..].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-16 * radius {
            break;
        }
    }
    // one Newton polish per root
    for r in roots.iter_mut() {
        let d = monic
            .iter()
            .enumerate()
            .take(n)
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &a)| acc * *r + a * (n - i) as f64);
        if d.norm() > 0.0 {
            *r -= eval(*r) / d;
        }
    }
    roots
}

fn c64(g: &GaussianRational) -> Complex64 {
    let (re, im) = g.to_f64_pair();
    Complex64::new(re, im)
}

/// The fiber `{(zeta, omega)}` over `(z, w)`, computed numerically.
pub fn fiber_points(fd: &FiberData, z: Complex64, w: Complex64) -> Vec<(Complex64, Complex64)> {
    match fd {
        FiberData::Hypersurface(h) => {
            let alpha: Vec<Complex64> = h.model().alpha().iter().map(c64).collect();
            let k = alpha.len() - 1;
            let mut coeffs: Vec<Complex64> = alpha.iter().enumerate().map(|(j, a)| a * z.powu(j as u32)).collect();
            coeffs[k] -= w;
            polynomial_roots(&coeffs)
                .into_iter()
                .map(|zeta| {
                    let omega = alpha
                        .iter()
                        .enumerate()
                        .map(|(j, a)| a.conj() * zeta.powu(j as u32) * z.powu((k - j) as u32))
                        .sum();
                    (zeta, omega)
                })
                .collect()
        }
        FiberData::Product(p) => {
            let point = [(z.re, z.im), (w.re, w.im), (0.0, 0.0), (0.0, 0.0)];
            let [(dz, a), (dw, b)] = p.root_equations(16);
            let radicand = |s: &TruncatedSeries| {
                let (re, im) = s.eval_f64(&point);
                Complex64::new(re, im)
            };
            let nth_roots = |d: u32, v: Complex64| {
                let mut c = vec![Complex64::new(0.0, 0.0); d as usize + 1];
                c[0] = Complex64::new(1.0, 0.0);
                c[d as usize] = -v;
                polynomial_roots(&c)
            };
            let zetas = nth_roots(dz, radicand(&a));
            let omegas = nth_roots(dw, radicand(&b));
            zetas
                .iter()
                .flat_map(|&x| omegas.iter().map(move |&y| (x, y)))
                .collect()
        }
    }
}

/// Evaluates `f(z, w, zbar, wbar)` with `zbar, wbar` set to a fiber point.
pub fn eval_at(f: &TruncatedSeries, z: Complex64, w: Complex64, zeta: Complex64, omega: Complex64) -> Complex64 {
    let (re, im) = f.eval_f64(&[(z.re, z.im), (w.re, w.im), (zeta.re, zeta.im), (omega.re, omega.im)]);
    Complex64::new(re, im)
}

/// Mean of `f` over the numeric fiber, plus the mean of `|f|` as a scale.
pub fn numeric_average(fd: &FiberData, f: &TruncatedSeries, z: Complex64, w: Complex64) -> (Complex64, f64) {
    let pts = fiber_points(fd, z, w);
    let n = pts.len() as f64;
    let vals: Vec<Complex64> = pts.iter().map(|&(zeta, omega)| eval_at(f, z, w, zeta, omega)).collect();
    let mean = vals.iter().sum::<Complex64>() / n;
    let scale = vals.iter().map(|v| v.norm()).sum::<f64>() / n;
    (mean, scale)
}

pub fn builtin_models() -> Vec<(&'static str, Model)> {
    vec![
        (
            "quadric",
            Model::Hypersurface(ModelHypersurface::quadric(GaussianRational::ratio(1, 2))),
        ),
        (
            "bishop",
            Model::Hypersurface(ModelHypersurface::bishop(GaussianRational::ratio(1, 4))),
        ),
        ("silly-cubic", Model::Product(ProductFiberModel::silly_cubic())),
    ]
}

/// All monomials of the signature with weighted degree at most `d`.
pub fn monomials_up_to(sig: &Signature, d: u32) -> Vec<Monomial> {
    let w = sig.weights().to_vec();
    let mut out = Vec::new();
    let mut exps = vec![0u32; w.len()];
    fn rec(i: usize, left: u32, w: &[u32], exps: &mut Vec<u32>, sig: &Signature, out: &mut Vec<Monomial>) {
        if i == w.len() {
            out.push(sig.monomial(exps).unwrap());
            return;
        }
        for e in 0..=left / w[i] {
            exps[i] = e;
            rec(i + 1, left - e * w[i], w, exps, sig, out);
        }
        exps[i] = 0;
    }
    rec(0, d, &w, &mut exps, sig, &mut out);
    out
}

pub fn random_gaussian(rng: &mut StdRng, height: i64) -> GaussianRational {
    let mut part = || GaussianRational::ratio(rng.random_range(-height..=height), rng.random_range(1..=height));
    let re = part();
    let im = part();
    &re + &(&im * &GaussianRational::i())
}

/// Random polynomial of weighted degree at most `d` with sparse small coefficients.
pub fn random_polynomial(rng: &mut StdRng, sig: &Signature, order: u32, d: u32, density: f64) -> TruncatedSeries {
    let mut f = TruncatedSeries::zero(sig, order);
    for m in monomials_up_to(sig, d) {
        if rng.random_bool(density) {
            f.add_term(m, random_gaussian(rng, 5));
        }
    }
    f
}

/// Random point with `|z|, |w| <= 1/4`.
pub fn random_point(rng: &mut StdRng) -> (Complex64, Complex64) {
    let mut c = || {
        Complex64::from_polar(
            rng.random_range(0.05..0.25),
            rng.random_range(0.0..std::f64::consts::TAU),
        )
    };
    (c(), c())
}

// ---- proptest strategies ----

fn arb_coeff() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::from_parts((a, b), (c, d)))
}

/// Random series of weighted degree at most `d`, optionally restricted to
/// monomials accepted by `keep`.
pub fn arb_series(
    sig: Signature,
    order: u32,
    d: u32,
    keep: fn(&Monomial) -> bool,
) -> impl Strategy<Value = TruncatedSeries> {
    let monos: Vec<Monomial> = monomials_up_to(&sig, d).into_iter().filter(keep).collect();
    let n = monos.len();
    proptest::collection::vec((0..n, arb_coeff()), 0..8).prop_map(move |terms| {
        let mut f = TruncatedSeries::zero(&sig, order);
        for (i, c) in terms {
            f.add_term(monos[i].clone(), c);
        }
        f
    })
}

pub fn any_monomial(_: &Monomial) -> bool {
    true
}

pub fn holomorphic_monomial(m: &Monomial) -> bool {
    m.exponents()[2..].iter().all(|&e| e == 0)
}
pub mod oracle;
pub mod props;
