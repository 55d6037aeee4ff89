//! JSON reports for verdicts, flattenings, tables and defining equations.
//!
//! Series are stored in the text serialization format (with `# vars` and
//! `# order` headers) next to a human-readable rendering, so every report
//! can be parsed back into exact series.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::{FlatteningResult, Verdict, VerdictStatus};
use crate::averaging::{GeneratingSeriesReport, LeadingTermCheck, RSeriesTable};
use crate::error::{Error, Result};
use crate::model::{ModelConfig, StandardDefiningEquations};
use crate::series::{format_fraction, parse_series, serialize_series, GaussianRational, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub display: String,
    pub records: String,
}

impl SeriesRecord {
    pub fn new(s: &TruncatedSeries) -> Self {
        SeriesRecord {
            display: s.to_string(),
            records: serialize_series(s),
        }
    }

    pub fn to_series(&self) -> Result<TruncatedSeries> {
        parse_series(&self.records, None, None)
    }
}

fn complex_pair(c: &GaussianRational) -> [String; 2] {
    let (re, im) = c.to_strings();
    [re, im]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub ell: u32,
    pub discrepancy: SeriesRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub check: String,
    pub status: VerdictStatus,
    pub order: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extension: Option<SeriesRecord>,
}

impl VerdictReport {
    pub fn new(check: &str, v: &Verdict) -> Self {
        VerdictReport {
            check: check.to_string(),
            status: v.status,
            order: v.order,
            witness: v.witness.as_ref().map(|w| WitnessRecord {
                ell: w.ell,
                discrepancy: SeriesRecord::new(&w.discrepancy),
            }),
            extension: v.extension.as_ref().map(SeriesRecord::new),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRecord {
    pub a: [String; 2],
    pub b: [String; 2],
    pub polynomial: SeriesRecord,
    /// `(cos theta, sin theta)` up to a positive factor.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub direction: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatteningReport {
    pub degree_bound: u32,
    pub order: u32,
    pub theta_candidates: Vec<ThetaRecord>,
    pub linear_basis: Vec<SeriesRecord>,
    pub verified: Vec<SeriesRecord>,
}

impl From<&FlatteningResult> for FlatteningReport {
    fn from(r: &FlatteningResult) -> Self {
        FlatteningReport {
            degree_bound: r.degree_bound,
            order: r.order,
            theta_candidates: r
                .theta_candidates
                .iter()
                .map(|c| ThetaRecord {
                    a: complex_pair(&c.a),
                    b: complex_pair(&c.b),
                    polynomial: SeriesRecord::new(&c.polynomial),
                    direction: c
                        .direction
                        .as_ref()
                        .map(|(x, y)| [format_fraction(x), format_fraction(y)]),
                })
                .collect(),
            linear_basis: r.linear_basis.iter().map(SeriesRecord::new).collect(),
            verified: r.verified.iter().map(SeriesRecord::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RTableEntry {
    pub a: u32,
    pub b: u32,
    pub series: SeriesRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingTermRecord {
    pub a: u32,
    pub b: u32,
    pub z_free: String,
    pub expected: String,
    pub holds: bool,
}

impl From<&LeadingTermCheck> for LeadingTermRecord {
    fn from(c: &LeadingTermCheck) -> Self {
        LeadingTermRecord {
            a: c.a,
            b: c.b,
            z_free: c.z_free.to_string(),
            expected: c.expected.to_string(),
            holds: c.holds,
        }
    }
}

/// `R(zbar^a wbar^b)` entries; readable back with [`RTableReport::to_table`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RTableReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub model: Option<ModelConfig>,
    pub k: u32,
    pub degree_bound: u32,
    pub order: u32,
    pub entries: Vec<RTableEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub leading_terms: Vec<LeadingTermRecord>,
}

impl RTableReport {
    pub fn new(model: Option<ModelConfig>, table: &RSeriesTable, leading: &[LeadingTermCheck]) -> Self {
        RTableReport {
            model,
            k: table.k,
            degree_bound: table.degree_bound,
            order: table.order,
            entries: table
                .entries
                .iter()
                .map(|(&(a, b), s)| RTableEntry {
                    a,
                    b,
                    series: SeriesRecord::new(s),
                })
                .collect(),
            leading_terms: leading.iter().map(LeadingTermRecord::from).collect(),
        }
    }

    pub fn to_table(&self) -> Result<RSeriesTable> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok(((e.a, e.b), e.series.to_series()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(RSeriesTable {
            k: self.k,
            degree_bound: self.degree_bound,
            order: self.order,
            entries,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingEntryRecord {
    pub a: u32,
    pub averaged: String,
    pub generating: String,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingReport {
    pub order: u32,
    pub s_order: u32,
    pub all_agree: bool,
    pub entries: Vec<GeneratingEntryRecord>,
}

impl From<&GeneratingSeriesReport> for GeneratingReport {
    fn from(r: &GeneratingSeriesReport) -> Self {
        GeneratingReport {
            order: r.order,
            s_order: r.s_order,
            all_agree: r.all_agree(),
            entries: r
                .entries
                .iter()
                .map(|e| GeneratingEntryRecord {
                    a: e.a,
                    averaged: e.averaged.to_string(),
                    generating: e.generating.to_string(),
                    agree: e.agree,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationRecord {
    pub gamma: [u32; 2],
    pub series: SeriesRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningEquationsReport {
    pub k: u32,
    pub equations: Vec<EquationRecord>,
    pub barred: Vec<EquationRecord>,
}

impl From<&StandardDefiningEquations> for DefiningEquationsReport {
    fn from(d: &StandardDefiningEquations) -> Self {
        let records = |v: &[((u32, u32), TruncatedSeries)]| {
            v.iter()
                .map(|((gz, gw), s)| EquationRecord {
                    gamma: [*gz, *gw],
                    series: SeriesRecord::new(s),
                })
                .collect()
        };
        DefiningEquationsReport {
            k: d.k,
            equations: records(&d.equations),
            barred: records(&d.barred),
        }
    }
}

/// A single computed series (`average`, `raverage`, `reduce`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub operation: String,
    pub input: SeriesRecord,
    pub output: SeriesRecord,
}

/// Any report the engine writes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum AnalysisReport {
    Series(SeriesReport),
    Verdict(VerdictReport),
    Flattening(FlatteningReport),
    RTable(RTableReport),
    Reconstruction { model: ModelConfig },
    Generating(GeneratingReport),
    DefiningEquations(DefiningEquationsReport),
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
