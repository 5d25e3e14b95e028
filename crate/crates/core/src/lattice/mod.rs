//! Finitely supported real vectors over a structured countable basis.
//!
//! Every vector in the crate is a [`SparseVec`]: word vectors over a finite
//! set of axes, elements of the free-monoid algebra keyed by word sequences,
//! context vectors keyed by pairs of strings, and document indicators. The
//! order is the componentwise one, so meet and join are componentwise min
//! and max with absent keys read as zero.

mod key;
mod text;

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use key::BasisKey;
pub use text::{format_inline, format_vector, parse_inline, parse_vector};

use crate::error::{Error, Result};

/// Coefficients with absolute value below this are never stored.
pub const ZERO_TOL: f64 = 1e-12;

/// Relative tolerance used by vector equality.
pub const EQ_TOL: f64 = 1e-9;

/// Scalar comparison used throughout: `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq_scalar(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Clone, Default)]
pub struct SparseVec {
    entries: BTreeMap<BasisKey, f64>,
}

impl SparseVec {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `e_key`.
    pub fn basis(key: BasisKey) -> Self {
        Self::from_pairs([(key, 1.0)])
    }

    /// Builds a vector from `(key, coefficient)` pairs. Repeated keys
    /// accumulate.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (BasisKey, f64)>,
    {
        let mut entries = BTreeMap::new();
        for (key, c) in pairs {
            *entries.entry(key).or_insert(0.0) += c;
        }
        entries.retain(|_, c: &mut f64| c.abs() >= ZERO_TOL);
        SparseVec { entries }
    }

    /// Dense coordinates `(c_0, c_1, ...)` on `Axis(0), Axis(1), ...`.
    pub fn from_axes(coords: &[f64]) -> Self {
        Self::from_pairs(
            coords
                .iter()
                .enumerate()
                .map(|(i, &c)| (BasisKey::Axis(i as u64), c)),
        )
    }

    /// Dense coordinates over `Axis(0..n)`; axes absent from the support
    /// read as zero.
    pub fn to_axes(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| self.get(&BasisKey::Axis(i as u64)))
            .collect()
    }

    pub fn get(&self, key: &BasisKey) -> f64 {
        self.entries.get(key).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, BasisKey, f64> {
        self.entries.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, BasisKey, f64> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_key(&self, key: &BasisKey) -> bool {
        self.entries.contains_key(key)
    }

    /// True when no coefficient is negative.
    pub fn is_positive(&self) -> bool {
        self.entries.values().all(|&c| c > 0.0)
    }

    pub fn scale(&self, alpha: f64) -> SparseVec {
        Self::from_pairs(self.iter().map(|(k, &c)| (k.clone(), alpha * c)))
    }

    /// Applies `f` to every coefficient over the union of both supports,
    /// reading absent keys as zero.
    pub fn zip_with(&self, other: &SparseVec, f: impl Fn(f64, f64) -> f64) -> SparseVec {
        let mut out = BTreeMap::new();
        for (k, &a) in self.iter() {
            out.insert(k.clone(), f(a, other.get(k)));
        }
        for (k, &b) in other.iter() {
            if !self.contains_key(k) {
                out.insert(k.clone(), f(0.0, b));
            }
        }
        out.retain(|_, c: &mut f64| c.abs() >= ZERO_TOL);
        SparseVec { entries: out }
    }

    /// Support-wise equality with [`approx_eq_scalar`] at tolerance `tol`.
    pub fn approx_eq(&self, other: &SparseVec, tol: f64) -> bool {
        self.iter()
            .all(|(k, &a)| approx_eq_scalar(a, other.get(k), tol))
            && other
                .iter()
                .all(|(k, &b)| approx_eq_scalar(self.get(k), b, tol))
    }

    /// Fails with `NotPositive` naming the first negative coordinate.
    pub fn require_positive(&self) -> Result<()> {
        match self.iter().find(|(_, &c)| c < 0.0) {
            Some((k, _)) => Err(Error::NotPositive { key: k.to_string() }),
            None => Ok(()),
        }
    }

    /// The sum of all coefficients.
    pub fn sum(&self) -> f64 {
        self.entries.values().sum()
    }
}

impl PartialEq for SparseVec {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, EQ_TOL)
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·[{k}]")?;
        }
        Ok(())
    }
}

impl FromIterator<(BasisKey, f64)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (BasisKey, f64)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

impl<'a> IntoIterator for &'a SparseVec {
    type Item = (&'a BasisKey, &'a f64);
    type IntoIter = btree_map::Iter<'a, BasisKey, f64>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl Add for &SparseVec {
    type Output = SparseVec;

    fn add(self, rhs: &SparseVec) -> SparseVec {
        linear_combine(1.0, self, 1.0, rhs)
    }
}

impl Sub for &SparseVec {
    type Output = SparseVec;

    fn sub(self, rhs: &SparseVec) -> SparseVec {
        linear_combine(1.0, self, -1.0, rhs)
    }
}

impl Neg for &SparseVec {
    type Output = SparseVec;

    fn neg(self) -> SparseVec {
        self.scale(-1.0)
    }
}

impl Mul<&SparseVec> for f64 {
    type Output = SparseVec;

    fn mul(self, rhs: &SparseVec) -> SparseVec {
        rhs.scale(self)
    }
}

/// `alpha * u + beta * v`.
pub fn linear_combine(alpha: f64, u: &SparseVec, beta: f64, v: &SparseVec) -> SparseVec {
    u.zip_with(v, |a, b| alpha * a + beta * b)
}

/// Componentwise minimum.
pub fn meet(u: &SparseVec, v: &SparseVec) -> SparseVec {
    u.zip_with(v, f64::min)
}

/// Componentwise maximum.
pub fn join(u: &SparseVec, v: &SparseVec) -> SparseVec {
    u.zip_with(v, f64::max)
}

/// `u ∨ 0`.
pub fn pos_part(u: &SparseVec) -> SparseVec {
    SparseVec::from_pairs(
        u.iter()
            .filter(|(_, &c)| c > 0.0)
            .map(|(k, &c)| (k.clone(), c)),
    )
}

/// `(-u) ∨ 0`.
pub fn neg_part(u: &SparseVec) -> SparseVec {
    SparseVec::from_pairs(
        u.iter()
            .filter(|(_, &c)| c < 0.0)
            .map(|(k, &c)| (k.clone(), -c)),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    Inf,
}

pub fn norm(u: &SparseVec, p: Norm) -> f64 {
    let abs = u.iter().map(|(_, c)| c.abs());
    match p {
        Norm::L1 => abs.sum(),
        Norm::L2 => abs.map(|c| c * c).sum::<f64>().sqrt(),
        Norm::Inf => abs.fold(0.0, f64::max),
    }
}

/// Sum of `u_k * v_k` over the shared support.
pub fn inner(u: &SparseVec, v: &SparseVec) -> f64 {
    let (small, large) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    small.iter().map(|(k, &c)| c * large.get(k)).sum()
}

/// Degree to which `u` entails `v`: `‖u ∧ v‖₁ / ‖u‖₁`.
///
/// Both arguments must be positive; the result is then a conditional
/// probability in `[0, 1]`.
pub fn degree_of_entailment(u: &SparseVec, v: &SparseVec) -> Result<f64> {
    u.require_positive()?;
    v.require_positive()?;
    let denom = norm(u, Norm::L1);
    if denom == 0.0 {
        return Err(Error::ZeroAntecedent);
    }
    Ok(norm(&meet(u, v), Norm::L1) / denom)
}

#[cfg(test)]
mod tests;
