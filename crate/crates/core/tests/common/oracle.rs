//! Engine-versus-root-finder comparisons.

use rand::rngs::StdRng;
use rand::SeedableRng;

use segre_core::model::FiberData;
use segre_core::{average, TruncatedSeries};

use super::{numeric_average, random_point, random_polynomial};

/// Largest relative error seen, with the worst case described.
#[derive(Debug)]
pub struct OracleReport {
    pub comparisons: usize,
    pub worst: f64,
    pub worst_case: String,
}

/// `|engine - oracle| / max(|oracle|, mean |f| over the fiber)`; the second
/// scale keeps cancellation in the fiber mean from inflating the ratio.
pub fn relative_error(engine: num_complex::Complex64, oracle: num_complex::Complex64, scale: f64) -> f64 {
    (engine - oracle).norm() / oracle.norm().max(scale).max(f64::MIN_POSITIVE)
}

/// Averages `polys` random polynomials of weighted degree `<= degree`
/// over the fibers above `points` random points, both ways.
pub fn compare_averages(fd: &FiberData, seed: u64, polys: usize, points: usize, degree: u32) -> OracleReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let sig = fd.signature();
    let mut report = OracleReport {
        comparisons: 0,
        worst: 0.0,
        worst_case: String::new(),
    };
    for _ in 0..polys {
        let f = random_polynomial(&mut rng, &sig, degree, degree, 0.3);
        let af = average(&f, fd, degree).expect("average");
        for _ in 0..points {
            let (z, w) = random_point(&mut rng);
            let (oracle, scale) = numeric_average(fd, &f, z, w);
            let engine = super::eval_at(&af, z, w, 0.0.into(), 0.0.into());
            let err = relative_error(engine, oracle, scale);
            report.comparisons += 1;
            if err > report.worst || err.is_nan() {
                report.worst = err;
                report.worst_case = format!("f = {f} at z = {z}, w = {w}");
            }
        }
    }
    report
}

/// Evaluates a holomorphic series at `(z, w)`.
pub fn eval_holomorphic(
    f: &TruncatedSeries,
    z: num_complex::Complex64,
    w: num_complex::Complex64,
) -> num_complex::Complex64 {
    super::eval_at(f, z, w, 0.0.into(), 0.0.into())
}
