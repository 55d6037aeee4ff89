//! Workloads shared by the benchmarks.

use segre_core::model::{FiberData, ModelHypersurface, ProductFiberModel};
use segre_core::{fiber_data, GaussianRational, Signature, TruncatedSeries};

pub fn quadric() -> FiberData {
    FiberData::Hypersurface(fiber_data(&ModelHypersurface::quadric(GaussianRational::ratio(1, 2))).unwrap())
}

pub fn bishop() -> FiberData {
    FiberData::Hypersurface(fiber_data(&ModelHypersurface::bishop(GaussianRational::ratio(1, 4))).unwrap())
}

pub fn silly_cubic() -> FiberData {
    FiberData::Product(ProductFiberModel::silly_cubic())
}

/// A hypersurface model of multiplicity `k` with nonzero middle coefficients.
pub fn dense_model(k: usize) -> FiberData {
    let mut alpha: Vec<GaussianRational> = (0..k)
        .map(|j| GaussianRational::from_parts((j as i64 + 1, 2), ((j % 3) as i64, 5)))
        .collect();
    alpha[0] = GaussianRational::from_integer(1);
    alpha.push(GaussianRational::from_integer(0));
    FiberData::Hypersurface(fiber_data(&ModelHypersurface::new(alpha).unwrap()).unwrap())
}

/// Sum of every monomial of weighted degree `<= order`, with coefficient
/// `1 + (index mod 5)`: a dense input for the averaging operator.
pub fn dense_series(sig: &Signature, order: u32) -> TruncatedSeries {
    let weights = sig.weights().to_vec();
    let mut f = TruncatedSeries::zero(sig, order);
    let mut exps = vec![0u32; weights.len()];
    let mut index = 0i64;
    loop {
        let m = sig.monomial(&exps).unwrap();
        if m.degree() <= order {
            f.add_term(m, GaussianRational::from_integer(1 + index % 5));
            index += 1;
        }
        // odometer over exponent vectors bounded by the order
        let mut i = 0;
        loop {
            if i == exps.len() {
                return f;
            }
            exps[i] += 1;
            if exps[i] * weights[i] <= order {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}
