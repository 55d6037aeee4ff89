//! Exact Segre-fiber averaging for model real hypersurfaces in `C^2`.
//!
//! The engine works with weighted-truncated power series over `Q(i)`
//! ([`series`]), computes the symmetric data of Segre fibers ([`model`],
//! [`symm`]), averages real-analytic germs over those fibers
//! ([`averaging`]) and turns the averaging operator into decision
//! procedures ([`analysis`]). Every answer is certified up to an explicit
//! weighted truncation order `N`.

pub mod analysis;
pub mod averaging;
pub mod error;
mod linalg;
pub mod model;
pub mod report;
pub mod series;
pub mod symm;

pub use analysis::{
    equal_on_x, flatten_search, is_holomorphic_restriction, is_real_valued, reconstruct_model, FlatteningResult,
    ThetaCandidate, Verdict, VerdictStatus, Witness,
};
pub use averaging::{
    average, generating_series_check, r_table, raverage, reduce, GeneratingSeriesReport, LeadingTermCheck,
    RSeriesTable, ReducedRepresentative,
};
pub use error::{Error, Result};
pub use model::{
    fiber_data, mixed_power_sum, segre_multiplicity, standard_defining_equations, FiberData, Model, ModelConfig,
    ModelHypersurface, ProductFiberModel, StandardDefiningEquations,
};
pub use report::{AnalysisReport, RTableReport, SeriesRecord};
pub use series::{GaussianRational, Monomial, Signature, TruncatedSeries};
pub use symm::{elementary_from_power_sums, power_sums_from_elementary, SymmetricProfile};
