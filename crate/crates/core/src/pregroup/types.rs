use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A basic type with an iterated adjoint: `z < 0` is a left adjoint of
/// order `-z`, `z > 0` a right adjoint of order `z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjointType {
    pub base: String,
    pub z: i32,
}

impl AdjointType {
    pub fn new(base: impl Into<String>, z: i32) -> Self {
        AdjointType {
            base: base.into(),
            z,
        }
    }

    pub fn basic(base: impl Into<String>) -> Self {
        Self::new(base, 0)
    }

    pub fn left_adjoint(&self) -> Self {
        Self::new(self.base.clone(), self.z - 1)
    }

    pub fn right_adjoint(&self) -> Self {
        Self::new(self.base.clone(), self.z + 1)
    }
}

/// `x^l x ≤ 1` and `x x^r ≤ 1`, i.e. equal bases with `right.z = left.z + 1`.
pub fn contracts(left: &AdjointType, right: &AdjointType) -> bool {
    left.base == right.base && right.z == left.z + 1
}

impl fmt::Display for AdjointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        if self.z != 0 {
            let c = if self.z < 0 { "l" } else { "r" };
            write!(f, "^{}", c.repeat(self.z.unsigned_abs() as usize))?;
        }
        Ok(())
    }
}

fn valid_base(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || c == '^' || c == ':' || c == ';')
}

impl FromStr for AdjointType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, adj) = s.split_once('^').unwrap_or((s, ""));
        if !valid_base(base) {
            return Err(Error::parse(0, format!("invalid basic type `{s}`")));
        }
        let z = if adj.is_empty() {
            0
        } else if adj.chars().all(|c| c == 'l') {
            -(adj.len() as i32)
        } else if adj.chars().all(|c| c == 'r') {
            adj.len() as i32
        } else {
            return Err(Error::parse(0, format!("invalid adjoint `^{adj}`")));
        };
        if s.ends_with('^') {
            return Err(Error::parse(0, format!("invalid adjoint in `{s}`")));
        }
        Ok(AdjointType::new(base, z))
    }
}

/// A product of adjoint types; the empty product is the unit type `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexType(pub Vec<AdjointType>);

/// One application of a contraction rule: the pair at `position` and
/// `position + 1` is deleted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub position: usize,
    pub left: AdjointType,
    pub right: AdjointType,
}

/// A sequence of contractions from `start` to some target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub start: ComplexType,
    pub steps: Vec<Contraction>,
}

impl Derivation {
    /// Every intermediate type, `start` first.
    pub fn states(&self) -> Vec<ComplexType> {
        let mut cur = self.start.clone();
        let mut out = vec![cur.clone()];
        for step in &self.steps {
            cur.0.drain(step.position..step.position + 2);
            out.push(cur.clone());
        }
        out
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states: Vec<String> = self.states().iter().map(ToString::to_string).collect();
        f.write_str(&states.join(" → "))
    }
}

impl ComplexType {
    pub fn unit() -> Self {
        ComplexType(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ComplexType) -> ComplexType {
        ComplexType(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.windows(2).all(|w| !contracts(&w[0], &w[1]))
    }

    /// Searches the contractions of adjacent pairs for a path to `target`.
    pub fn reduces_to(&self, target: &ComplexType) -> Option<Derivation> {
        let mut dead = HashSet::new();
        let mut steps = Vec::new();
        search(&self.0, &target.0, &mut dead, &mut steps).then(|| Derivation {
            start: self.clone(),
            steps,
        })
    }

    /// Concatenation followed by cancelling contractions across the seam
    /// only. This is the type of a product of typed tensors.
    pub fn boundary_product(&self, other: &ComplexType) -> ComplexType {
        let mut left = self.0.clone();
        let mut right = other.0.as_slice();
        while let (Some(l), Some(r)) = (left.last(), right.first()) {
            if !contracts(l, r) {
                break;
            }
            left.pop();
            right = &right[1..];
        }
        left.extend_from_slice(right);
        ComplexType(left)
    }
}

fn search(
    cur: &[AdjointType],
    target: &[AdjointType],
    dead: &mut HashSet<Vec<AdjointType>>,
    steps: &mut Vec<Contraction>,
) -> bool {
    if cur == target {
        return true;
    }
    if cur.len() <= target.len() || dead.contains(cur) {
        return false;
    }
    for i in 0..cur.len() - 1 {
        if contracts(&cur[i], &cur[i + 1]) {
            let mut next = cur.to_vec();
            next.drain(i..i + 2);
            steps.push(Contraction {
                position: i,
                left: cur[i].clone(),
                right: cur[i + 1].clone(),
            });
            if search(&next, target, dead, steps) {
                return true;
            }
            steps.pop();
        }
    }
    dead.insert(cur.to_vec());
    false
}

impl fmt::Display for ComplexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for ComplexType {
    type Err = Error;

    /// Whitespace separated adjoint types; `1` or blank is the unit type.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(ComplexType::unit());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<_>>()
            .map(ComplexType)
    }
}

impl From<Vec<AdjointType>> for ComplexType {
    fn from(v: Vec<AdjointType>) -> Self {
        ComplexType(v)
    }
}
