//! Property suites, runnable with any case count from several test targets.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use segre_core::model::{mixed_power_sum, FiberData, Model, ModelHypersurface, ProductFiberModel};
use segre_core::series::{Signature, WBAR, ZBAR};
use segre_core::{
    average, elementary_from_power_sums, equal_on_x, power_sums_from_elementary, GaussianRational, TruncatedSeries,
};

use super::{any_monomial, arb_series, holomorphic_monomial};

pub const ORDER: u32 = 8;

pub type Suite = fn(u32) -> Result<(), String>;

pub const SUITES: &[(&str, Suite)] = &[
    ("linearity of A", linearity),
    ("ideal annihilation", ideal_annihilation),
    ("holomorphic reproduction", holomorphic_reproduction),
    ("homogeneity P_(a,b) -> P_(a+b,0)", homogeneity),
    ("Newton identity round trip", newton_round_trip),
    ("involution twice is the identity", involution_twice),
    ("involution is conjugate-linear", involution_conjugate_linear),
    ("ring axioms", ring_axioms),
    ("truncation coherence", truncation_coherence),
    ("weighted components sum to f", components_sum),
    ("averaging agrees with fiber power sums", power_sum_route),
    ("equality on X is reflexive", equality_reflexive),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn err(e: segre_core::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-10i64..=10, 1i64..=10, -10i64..=10, 1i64..=10)
        .prop_map(|(a, b, c, d)| GaussianRational::from_parts((a, b), (c, d)))
}

/// Built-in models and random hypersurfaces with `k <= 4`.
pub fn arb_model() -> impl Strategy<Value = Model> {
    let random = (2usize..=4)
        .prop_flat_map(|k| proptest::collection::vec(arb_gaussian(), k + 1))
        .prop_map(|mut alpha| {
            if alpha[0] == GaussianRational::from_integer(0) {
                alpha[0] = GaussianRational::from_integer(1);
            }
            Model::Hypersurface(ModelHypersurface::new(alpha).unwrap())
        });
    prop_oneof![
        Just(Model::Hypersurface(ModelHypersurface::quadric(
            GaussianRational::ratio(1, 2)
        ))),
        Just(Model::Hypersurface(ModelHypersurface::bishop(GaussianRational::ratio(
            1, 4
        )))),
        Just(Model::Product(ProductFiberModel::silly_cubic())),
        random,
    ]
}

fn with_series(
    degree: u32,
    keep: fn(&segre_core::Monomial) -> bool,
    count: usize,
) -> impl Strategy<Value = (FiberData, Vec<TruncatedSeries>)> {
    arb_model().prop_flat_map(move |m| {
        let fd = m.fiber_data().unwrap();
        let sig = fd.signature();
        (
            Just(fd),
            proptest::collection::vec(arb_series(sig, ORDER, degree, keep), count),
        )
    })
}

pub fn linearity(cases: u32) -> Result<(), String> {
    check(
        cases,
        (with_series(6, any_monomial, 2), arb_gaussian(), arb_gaussian()),
        |((fd, fs), c1, c2)| {
            let lhs = average(&fs[0].scale(&c1).add(&fs[1].scale(&c2)).unwrap(), &fd, ORDER).map_err(err)?;
            let a1 = average(&fs[0], &fd, ORDER).map_err(err)?;
            let a2 = average(&fs[1], &fd, ORDER).map_err(err)?;
            prop_assert_eq!(lhs, a1.scale(&c1).add(&a2.scale(&c2)).unwrap());
            Ok(())
        },
    )
}

/// Generators of the ideal of the complexified model.
fn ideal_generators(fd: &FiberData) -> Vec<TruncatedSeries> {
    let sig = fd.signature();
    match fd {
        FiberData::Hypersurface(h) => {
            vec![
                h.model().ideal_generator(ORDER),
                h.model().conjugate_ideal_generator(ORDER),
            ]
        }
        FiberData::Product(p) => p
            .root_equations(ORDER)
            .into_iter()
            .zip([ZBAR, WBAR])
            .map(|((d, rhs), var)| {
                let lhs = TruncatedSeries::monomial(&sig, ORDER, sig.var(var, d), GaussianRational::from_integer(1));
                lhs.sub(&rhs).unwrap()
            })
            .collect(),
    }
}

pub fn ideal_annihilation(cases: u32) -> Result<(), String> {
    check(cases, with_series(4, any_monomial, 1), |(fd, gs)| {
        for gen in ideal_generators(&fd) {
            let f = gen.mul(&gs[0]).unwrap();
            let a = average(&f, &fd, ORDER).map_err(err)?;
            prop_assert!(a.is_zero(), "A(({gen}) * g) = {a}");
        }
        Ok(())
    })
}

pub fn holomorphic_reproduction(cases: u32) -> Result<(), String> {
    check(cases, with_series(ORDER, holomorphic_monomial, 1), |(fd, hs)| {
        prop_assert_eq!(average(&hs[0], &fd, ORDER).map_err(err)?, hs[0].clone());
        Ok(())
    })
}

pub fn homogeneity(cases: u32) -> Result<(), String> {
    check(
        cases,
        (with_series(6, any_monomial, 1), 0u32..=6, 0u32..=6),
        |((fd, fs), a, b)| {
            let part = fs[0].weighted_component(a, b).unwrap();
            let avg = average(&part, &fd, ORDER).map_err(err)?;
            prop_assert!(avg.is_holomorphic(), "{avg}");
            prop_assert!(avg.is_homogeneous(a + b), "A of a ({a},{b}) part is {avg}");
            Ok(())
        },
    )
}

pub fn newton_round_trip(cases: u32) -> Result<(), String> {
    let sig = Signature::external(1, 2);
    let strategy = (1usize..=6)
        .prop_flat_map(move |k| proptest::collection::vec(arb_series(sig.clone(), ORDER, ORDER, any_monomial), k));
    check(cases, strategy, |e| {
        let p = power_sums_from_elementary(&e, e.len()).map_err(err)?;
        prop_assert_eq!(elementary_from_power_sums(&p).map_err(err)?, e);
        Ok(())
    })
}

fn external_series(count: usize) -> impl Strategy<Value = Vec<TruncatedSeries>> {
    let sig = Signature::external(1, 2);
    proptest::collection::vec(arb_series(sig, ORDER, ORDER, any_monomial), count)
}

pub fn involution_twice(cases: u32) -> Result<(), String> {
    check(cases, external_series(1), |fs| {
        prop_assert_eq!(fs[0].involution().unwrap().involution().unwrap(), fs[0].clone());
        Ok(())
    })
}

pub fn involution_conjugate_linear(cases: u32) -> Result<(), String> {
    check(cases, (external_series(1), arb_gaussian()), |(fs, c)| {
        prop_assert_eq!(
            fs[0].scale(&c).involution().unwrap(),
            fs[0].involution().unwrap().scale(&c.conj())
        );
        Ok(())
    })
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    check(cases, external_series(3), |fs| {
        let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
        prop_assert_eq!(f.mul(g).unwrap().mul(h).unwrap(), f.mul(&g.mul(h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(g).unwrap(), g.mul(f).unwrap());
        prop_assert_eq!(f.add(g).unwrap().add(h).unwrap(), f.add(&g.add(h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(h).unwrap()).unwrap(),
            f.mul(g).unwrap().add(&f.mul(h).unwrap()).unwrap()
        );
        Ok(())
    })
}

pub fn truncation_coherence(cases: u32) -> Result<(), String> {
    check(cases, (external_series(2), 0u32..ORDER), |(fs, n)| {
        let (f, g) = (&fs[0], &fs[1]);
        let (ft, gt) = (f.truncate(n), g.truncate(n));
        prop_assert_eq!(ft.add(&gt).unwrap(), f.add(g).unwrap().truncate(n));
        prop_assert_eq!(ft.mul(&gt).unwrap(), f.mul(g).unwrap().truncate(n));
        // substitute z -> g without constant term
        let sig = f.signature().clone();
        let g0 = g
            .sub(&TruncatedSeries::constant(&sig, ORDER, g.constant_term()))
            .unwrap();
        let full = f.substitute("z", &g0).unwrap();
        let trunc = ft.substitute("z", &g0.truncate(n)).unwrap();
        let n = n.min(full.order()).min(trunc.order());
        prop_assert_eq!(trunc.truncate(n), full.truncate(n));
        Ok(())
    })
}

pub fn components_sum(cases: u32) -> Result<(), String> {
    check(cases, external_series(1), |fs| {
        let f = &fs[0];
        let mut acc = TruncatedSeries::zero(f.signature(), f.order());
        for a in 0..=ORDER {
            for b in 0..=ORDER - a {
                acc = acc.add(&f.weighted_component(a, b).unwrap()).unwrap();
            }
        }
        prop_assert_eq!(acc, f.clone());
        Ok(())
    })
}

/// `A(z^i w^j zbar^a wbar^b) = z^i w^j S_(a,b) / k` with `S` expanded
/// directly in the fiber roots rather than through reduction.
pub fn power_sum_route(cases: u32) -> Result<(), String> {
    check(
        cases,
        (arb_model(), 0u32..=3, 0u32..=2, 0u32..=5, 0u32..=2),
        |(m, i, j, a, b)| {
            let fd = m.fiber_data().unwrap();
            let sig = fd.signature();
            let mono = sig.monomial(&[i, j, a, b]).unwrap();
            let f = TruncatedSeries::monomial(&sig, ORDER, mono, GaussianRational::from_integer(1));
            let k = GaussianRational::from_integer(fd.multiplicity() as i64);
            let expected = mixed_power_sum(&fd, a, b, ORDER)
                .mul_monomial(&sig.monomial(&[i, j, 0, 0]).unwrap(), &k.inv().unwrap());
            prop_assert_eq!(average(&f, &fd, ORDER).map_err(err)?, expected);
            Ok(())
        },
    )
}

pub fn equality_reflexive(cases: u32) -> Result<(), String> {
    check(cases, with_series(4, any_monomial, 1), |(fd, fs)| {
        prop_assert!(equal_on_x(&fs[0], &fs[0], &fd, ORDER).map_err(err)?.holds());
        Ok(())
    })
}
