use std::fmt;

use super::types::{contracts, AdjointType, ComplexType};
use crate::error::{Error, Result};
use crate::lattice::{self, format_inline, BasisKey, SparseVec};

/// `s ⊗ e_γ`: a semantic vector over `Axis` keys paired with a type.
#[derive(Clone, Debug, PartialEq)]
pub struct TypedFactor {
    sem: SparseVec,
    typ: AdjointType,
}

impl TypedFactor {
    pub fn new(sem: SparseVec, typ: AdjointType) -> Result<Self> {
        if sem.is_zero() {
            return Err(Error::InvalidConfig(format!(
                "semantic part of a `{typ}` factor is zero"
            )));
        }
        if let Some(k) = sem.keys().find(|k| !matches!(k, BasisKey::Axis(_))) {
            return Err(Error::KeyVariantMismatch {
                op: "typed factor",
                expected: "axis",
                found: k.variant_name().to_owned(),
            });
        }
        Ok(TypedFactor { sem, typ })
    }

    pub fn sem(&self) -> &SparseVec {
        &self.sem
    }

    pub fn typ(&self) -> &AdjointType {
        &self.typ
    }
}

impl fmt::Display for TypedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ⊗ e_{})", format_inline(&self.sem), self.typ)
    }
}

/// `c · (s₁⊗e_γ₁) ⊗ … ⊗ (sₙ⊗e_γₙ)`; no factors is the scalar `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypedTensor {
    pub coeff: f64,
    pub factors: Vec<TypedFactor>,
}

impl TypedTensor {
    pub fn scalar(coeff: f64) -> Self {
        TypedTensor {
            coeff,
            factors: Vec::new(),
        }
    }

    pub fn new(coeff: f64, factors: Vec<TypedFactor>) -> Self {
        TypedTensor { coeff, factors }
    }

    /// `γ(v) = γ₁γ₂…γₙ`.
    pub fn type_of(&self) -> ComplexType {
        ComplexType(self.factors.iter().map(|f| f.typ.clone()).collect())
    }

    /// Contracts `aₙ` against `b₁` while their types cancel, replacing each
    /// cancelled pair by the inner product of its semantic parts, then
    /// concatenates what remains.
    pub fn product(&self, other: &TypedTensor) -> TypedTensor {
        let mut coeff = self.coeff * other.coeff;
        let mut left = self.factors.clone();
        let mut right = other.factors.as_slice();
        while let (Some(l), Some(r)) = (left.last(), right.first()) {
            if !contracts(&l.typ, &r.typ) {
                break;
            }
            coeff *= lattice::inner(&l.sem, &r.sem);
            left.pop();
            right = &right[1..];
        }
        left.extend_from_slice(right);
        TypedTensor::new(coeff, left)
    }

    /// Expansion over basis tensors. Each factor contributes a token
    /// `axis:type`; the scalar part is the empty sequence.
    pub fn expand(&self) -> SparseVec {
        let mut acc: Vec<(Vec<String>, f64)> = vec![(Vec::new(), self.coeff)];
        for f in &self.factors {
            let mut next = Vec::with_capacity(acc.len() * f.sem.len());
            for (tokens, c) in &acc {
                for (k, &s) in &f.sem {
                    let BasisKey::Axis(i) = k else {
                        unreachable!("factor keys are axes")
                    };
                    let mut t = tokens.clone();
                    t.push(format!("{i}:{}", f.typ));
                    next.push((t, c * s));
                }
            }
            acc = next;
        }
        SparseVec::from_pairs(acc.into_iter().map(|(t, c)| (BasisKey::Seq(t), c)))
    }
}

impl fmt::Display for TypedTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for factor in &self.factors {
            write!(f, " {factor}")?;
        }
        Ok(())
    }
}

/// A formal sum of typed tensors in `Γ(T(V))`.
#[derive(Clone, Debug, Default)]
pub struct GammaVec {
    terms: Vec<TypedTensor>,
}

impl GammaVec {
    pub fn zero() -> Self {
        GammaVec::default()
    }

    /// The scalar `1`, a two-sided unity for [`gamma_product`].
    pub fn one() -> Self {
        Self::from_terms([TypedTensor::scalar(1.0)])
    }

    /// Terms with identical factors are merged; zero terms are dropped.
    pub fn from_terms<I: IntoIterator<Item = TypedTensor>>(terms: I) -> Self {
        let mut out: Vec<TypedTensor> = Vec::new();
        for t in terms {
            match out.iter_mut().find(|o| o.factors == t.factors) {
                Some(o) => o.coeff += t.coeff,
                None => out.push(t),
            }
        }
        out.retain(|t| t.coeff.abs() >= lattice::ZERO_TOL);
        GammaVec { terms: out }
    }

    pub fn terms(&self) -> &[TypedTensor] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: f64) -> GammaVec {
        Self::from_terms(self.terms.iter().map(|t| TypedTensor {
            coeff: t.coeff * c,
            factors: t.factors.clone(),
        }))
    }

    pub fn add(&self, other: &GammaVec) -> GammaVec {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn expand(&self) -> SparseVec {
        SparseVec::from_pairs(self.terms.iter().flat_map(|t| {
            t.expand()
                .iter()
                .map(|(k, &c)| (k.clone(), c))
                .collect::<Vec<_>>()
        }))
    }

    /// Compares expansions, so different factorisations of one tensor agree.
    pub fn approx_eq(&self, other: &GammaVec, tol: f64) -> bool {
        self.expand().approx_eq(&other.expand(), tol)
    }

    /// Distinct types of the terms, in first-appearance order.
    pub fn types(&self) -> Vec<ComplexType> {
        let mut out: Vec<ComplexType> = Vec::new();
        for t in &self.terms {
            let ty = t.type_of();
            if !out.contains(&ty) {
                out.push(ty);
            }
        }
        out
    }
}

impl From<TypedTensor> for GammaVec {
    fn from(t: TypedTensor) -> Self {
        GammaVec::from_terms([t])
    }
}

impl fmt::Display for GammaVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Bilinear extension of [`TypedTensor::product`].
pub fn gamma_product(u: &GammaVec, v: &GammaVec) -> GammaVec {
    GammaVec::from_terms(
        u.terms
            .iter()
            .flat_map(|a| v.terms.iter().map(move |b| a.product(b))),
    )
}

fn split_token(tok: &str) -> Option<(&str, AdjointType)> {
    let (axis, ty) = tok.split_once(':')?;
    axis.parse::<u64>().ok()?;
    Some((axis, ty.parse().ok()?))
}

fn token_keys(key: &BasisKey) -> Result<Vec<(&str, AdjointType)>> {
    let bad = || Error::KeyVariantMismatch {
        op: "pregroup product",
        expected: "seq of axis:type",
        found: key.to_string(),
    };
    match key {
        BasisKey::Seq(toks) => toks
            .iter()
            .map(|t| split_token(t).ok_or_else(bad))
            .collect(),
        _ => Err(bad()),
    }
}

type ParsedTerm<'a> = (&'a BasisKey, Vec<(&'a str, AdjointType)>, f64);

fn parsed_terms(w: &SparseVec) -> Result<Vec<ParsedTerm<'_>>> {
    w.iter().map(|(k, &c)| Ok((k, token_keys(k)?, c))).collect()
}

/// The same product on expanded vectors: basis tensors contract across the
/// seam, where a cancelled pair contributes `⟨e_i, e_j⟩ = δᵢⱼ`.
pub fn basis_product(u: &SparseVec, v: &SparseVec) -> Result<SparseVec> {
    let us = parsed_terms(u)?;
    let vs = parsed_terms(v)?;
    let mut pairs = Vec::new();
    for (ka, ta, a) in &us {
        'terms: for (kb, tb, b) in &vs {
            let (BasisKey::Seq(sa), BasisKey::Seq(sb)) = (ka, kb) else {
                unreachable!("checked by token_keys")
            };
            let mut n = ta.len();
            let mut m = 0;
            while n > 0 && m < tb.len() && contracts(&ta[n - 1].1, &tb[m].1) {
                if ta[n - 1].0 != tb[m].0 {
                    continue 'terms;
                }
                n -= 1;
                m += 1;
            }
            let key: Vec<String> = sa[..n].iter().chain(&sb[m..]).cloned().collect();
            pairs.push((BasisKey::Seq(key), a * b));
        }
    }
    Ok(SparseVec::from_pairs(pairs))
}
