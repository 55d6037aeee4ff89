//! Text forms of series: the exact record format and the display form.
//!
//! Record format, one term per line: comma-separated exponents, then the
//! real and imaginary parts as `p` or `p/q`, separated by tabs. For
//! `w + 1/2 z^2`:
//!
//! ```text
//! # vars z:1 w:2 zbar:1 wbar:2
//! # order 8
//! 0,1,0,0<TAB>1<TAB>0
//! 2,0,0,0<TAB>1/2<TAB>0
//! ```
//!
//! The two header lines are written by [`serialize_series`] and optional on
//! input when the caller supplies a signature and an order.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{GaussianRational, Monomial, Signature, TruncatedSeries};
use crate::error::{Error, Result};

pub fn serialize_series(s: &TruncatedSeries) -> String {
    let sig = s.signature();
    let vars: Vec<String> = sig
        .names()
        .iter()
        .zip(sig.weights())
        .map(|(n, w)| format!("{n}:{w}"))
        .collect();
    let mut out = format!("# vars {}\n# order {}\n", vars.join(" "), s.order());
    for (m, c) in s.terms() {
        let exps: Vec<String> = m.exponents().iter().map(u32::to_string).collect();
        let (re, im) = c.to_strings();
        out.push_str(&format!("{}\t{}\t{}\n", exps.join(","), re, im));
    }
    out
}

pub fn parse_series(
    text: &str,
    default_sig: Option<&Signature>,
    default_order: Option<u32>,
) -> Result<TruncatedSeries> {
    let mut sig = default_sig.cloned();
    let mut order = default_order;
    let mut records = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let header = header.trim();
            if let Some(vars) = header.strip_prefix("vars") {
                let parsed = parse_vars(vars)?;
                if let Some(expected) = default_sig {
                    if *expected != parsed {
                        return Err(Error::SignatureMismatch(format!(
                            "file declares {parsed}, expected {expected}"
                        )));
                    }
                }
                sig = Some(parsed);
            } else if let Some(n) = header.strip_prefix("order") {
                let n: u32 = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad order", lineno + 1)))?;
                // an explicit request never exceeds what the file provides
                order = Some(default_order.map_or(n, |d| d.min(n)));
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected 3 tab-separated fields",
                lineno + 1
            )));
        }
        let exps = fields[0]
            .split(',')
            .map(|e| e.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map_err(|_| Error::Parse(format!("line {}: bad exponent vector", lineno + 1)))?;
        let c = GaussianRational::parse_parts(fields[1], fields[2])?;
        records.push((exps, c));
    }
    let sig = sig.ok_or_else(|| Error::Parse("missing `# vars` header".into()))?;
    let order = order.ok_or_else(|| Error::Parse("missing `# order` header".into()))?;
    TruncatedSeries::from_terms(&sig, order, records)
}

fn parse_vars(spec: &str) -> Result<Signature> {
    let mut vars = Vec::new();
    for item in spec.split_whitespace() {
        let (name, weight) = item
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad variable `{item}`")))?;
        let weight: u32 = weight
            .parse()
            .map_err(|_| Error::Parse(format!("bad weight in `{item}`")))?;
        vars.push((name.to_string(), weight));
    }
    Signature::new(vars)
}

/// Parses `z`, `zbar^2`, `z^2*wbar`, `1` into a monomial of `sig`.
pub fn parse_monomial(text: &str, sig: &Signature) -> Result<Monomial> {
    let mut exps = vec![0u32; sig.len()];
    let text = text.trim();
    if text == "1" {
        return sig.monomial(&exps);
    }
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (
                n.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad power in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        if name.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{text}`")));
        }
        exps[sig.index_of(name)?] += power;
    }
    sig.monomial(&exps)
}

fn fmt_monomial(m: &Monomial, sig: &Signature) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(sig.names())
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    parts.join("*")
}

pub(super) fn fmt_series(s: &TruncatedSeries, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if s.is_zero() {
        return write!(f, "0");
    }
    for (idx, (m, c)) in s.terms().enumerate() {
        // pull a leading minus sign out of purely real or purely imaginary coefficients
        let negative = (c.im().is_zero() && c.re().is_negative()) || (c.re().is_zero() && c.im().is_negative());
        let magnitude = if negative { -c } else { c.clone() };
        let sep = match (idx, negative) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let mono = fmt_monomial(m, s.signature());
        let body = if mono.is_empty() {
            magnitude.to_string()
        } else if magnitude.is_one() {
            mono
        } else {
            format!("{magnitude} {mono}")
        };
        write!(f, "{sep}{body}")?;
    }
    Ok(())
}
