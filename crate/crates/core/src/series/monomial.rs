use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 6]>;

/// Ordered variable names with positive integer weights.
///
/// Cloning is cheap; the contents never change after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature(Arc<SignatureInner>);

#[derive(PartialEq, Eq, Hash)]
struct SignatureInner {
    names: Vec<String>,
    weights: Vec<u32>,
}

pub const Z: usize = 0;
pub const W: usize = 1;
pub const ZBAR: usize = 2;
pub const WBAR: usize = 3;

impl Signature {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let (names, weights): (Vec<String>, Vec<u32>) = vars.into_iter().map(|(n, w)| (n.into(), w)).unzip();
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(Error::SignatureMismatch(format!(
                "variable `{}` has weight 0",
                names[pos]
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::SignatureMismatch(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Signature(Arc::new(SignatureInner { names, weights })))
    }

    /// `(z, w, zbar, wbar)` with weights `(wz, ww, wz, ww)`.
    pub fn external(weight_z: u32, weight_w: u32) -> Self {
        Self::new([("z", weight_z), ("w", weight_w), ("zbar", weight_z), ("wbar", weight_w)])
            .expect("external signature weights must be positive")
    }

    /// `(z, w, zeta)`, the coordinates on a Segre fiber.
    pub fn fiber(weight_z: u32, weight_w: u32) -> Self {
        Self::new([("z", weight_z), ("w", weight_w), ("zeta", weight_z)])
            .expect("fiber signature weights must be positive")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// True for signatures laid out as `(z, w, zbar, wbar)`.
    pub fn is_external(&self) -> bool {
        self.0.names == ["z", "w", "zbar", "wbar"]
            && self.0.weights[Z] == self.0.weights[ZBAR]
            && self.0.weights[W] == self.0.weights[WBAR]
    }

    pub fn require_external(&self) -> Result<()> {
        if self.is_external() {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!(
                "expected (z, w, zbar, wbar), found {self}"
            )))
        }
    }

    pub fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.0.weights).map(|(e, w)| e * w).sum()
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        if exps.len() != self.len() {
            return Err(Error::SignatureMismatch(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                self.len()
            )));
        }
        Ok(Monomial::from_parts(
            self.weighted_degree(exps),
            exps.iter().copied().collect(),
        ))
    }

    pub fn one(&self) -> Monomial {
        Monomial::from_parts(0, std::iter::repeat_n(0, self.len()).collect())
    }

    pub fn var(&self, idx: usize, power: u32) -> Monomial {
        let mut exps: Exponents = std::iter::repeat_n(0, self.len()).collect();
        exps[idx] = power;
        Monomial::from_parts(self.0.weights[idx] * power, exps)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .names
            .iter()
            .zip(&self.0.weights)
            .map(|(n, w)| format!("{n}:{w}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An exponent vector together with its cached weighted degree.
///
/// The derived order compares weighted degree first and then the exponent
/// vectors lexicographically, which is the canonical output order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Exponents,
}

impl Monomial {
    pub(crate) fn from_parts(degree: u32, exps: Exponents) -> Self {
        Monomial { degree, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Weighted degree carried by the variables at `idxs`.
    pub fn partial_degree(&self, sig: &Signature, idxs: &[usize]) -> u32 {
        idxs.iter().map(|&i| self.exps[i] * sig.weights()[i]).sum()
    }

    pub fn with_exponent(&self, sig: &Signature, idx: usize, value: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[idx] = value;
        Monomial {
            degree: sig.weighted_degree(&exps),
            exps,
        }
    }
}
