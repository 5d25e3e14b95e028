//! Replays the worked examples of the framework and reports pass/fail.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebras::{
    additive_product, pointwise_product, rank_one, subsequence_xi, tensor_alg_product,
    ContextTheory,
};
use crate::context::{build_context_theory, ContextAlgebra, Language, LanguageClass};
use crate::error::Result;
use crate::lattice::{self, BasisKey, Norm, SparseVec, EQ_TOL};
use crate::pregroup::{
    contracts, gamma_product, AdjointType, ComplexType, GammaVec, TypedFactor, TypedTensor,
};

/// Operations the demo routes through, replaceable for mutation checks.
#[derive(Clone, Copy)]
pub struct DemoOps {
    pub meet: fn(&SparseVec, &SparseVec) -> SparseVec,
}

impl Default for DemoOps {
    fn default() -> Self {
        DemoOps {
            meet: lattice::meet,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DemoReport {
    pub checks: Vec<DemoCheck>,
}

impl DemoReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DemoCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &str, expected: String, actual: String, passed: bool) {
        self.checks.push(DemoCheck {
            name: name.to_owned(),
            expected,
            actual,
            passed,
        });
    }

    fn vector(&mut self, name: &str, expected: &SparseVec, actual: Result<SparseVec>) {
        match actual {
            Ok(v) => {
                let ok = v.approx_eq(expected, EQ_TOL);
                self.push(name, tidy(expected), tidy(&v), ok);
            }
            Err(e) => self.push(name, tidy(expected), format!("error: {e}"), false),
        }
    }

    fn number(&mut self, name: &str, expected: f64, actual: Result<f64>) {
        match actual {
            Ok(x) => {
                let ok = lattice::approx_eq_scalar(x, expected, EQ_TOL);
                self.push(name, round(expected).to_string(), round(x).to_string(), ok);
            }
            Err(e) => self.push(name, expected.to_string(), format!("error: {e}"), false),
        }
    }

    fn flag(&mut self, name: &str, expected: bool, actual: bool) {
        self.push(
            name,
            expected.to_string(),
            actual.to_string(),
            expected == actual,
        );
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "[{status}] {}: {}", c.name, c.actual)?;
            if !c.passed {
                writeln!(f, "       expected {}", c.expected)?;
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} checks passed", self.checks.len())
    }
}

fn round(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Display form with coefficients rounded to 12 decimals.
fn tidy(v: &SparseVec) -> String {
    SparseVec::from_pairs(v.iter().map(|(k, &c)| (k.clone(), round(c)))).to_string()
}

pub fn run_demo() -> DemoReport {
    run_demo_with(&DemoOps::default())
}

pub fn run_demo_with(ops: &DemoOps) -> DemoReport {
    let mut r = DemoReport::default();
    lattice_examples(&mut r, ops);
    algebra_examples(&mut r, ops);
    context_examples(&mut r);
    pregroup_examples(&mut r);
    r
}

fn ax(c: &[f64]) -> SparseVec {
    SparseVec::from_axes(c)
}

fn entail(ops: &DemoOps, u: &SparseVec, v: &SparseVec) -> Result<f64> {
    u.require_positive()?;
    v.require_positive()?;
    let n = lattice::norm(u, Norm::L1);
    if n == 0.0 {
        return Err(crate::Error::ZeroAntecedent);
    }
    Ok(lattice::norm(&(ops.meet)(u, v), Norm::L1) / n)
}

fn table() -> BTreeMap<String, SparseVec> {
    [
        ("cat", ax(&[0., 2., 3.])),
        ("animal", ax(&[2., 1., 2.])),
        ("big", ax(&[1., 3., 0.])),
    ]
    .into_iter()
    .map(|(w, v)| (w.to_owned(), v))
    .collect()
}

fn lattice_examples(r: &mut DemoReport, ops: &DemoOps) {
    let (cat, animal) = (ax(&[0., 2., 3.]), ax(&[2., 1., 2.]));
    r.vector(
        "cat ∧ animal",
        &ax(&[0., 1., 2.]),
        Ok((ops.meet)(&cat, &animal)),
    );
    r.number("‖cat‖₁", 5.0, Ok(lattice::norm(&cat, Norm::L1)));
    r.number("Ent(cat, animal)", 0.6, entail(ops, &cat, &animal));
}

fn algebra_examples(r: &mut DemoReport, ops: &DemoOps) {
    let (big, cat) = (ax(&[1., 3., 0.]), ax(&[0., 2., 3.]));
    r.vector(
        "pointwise big·cat",
        &ax(&[0., 6., 0.]),
        pointwise_product(&big, &cat),
    );
    r.vector(
        "additive big ⊞ cat",
        &ax(&[1., 1., 5., 3.]),
        additive_product(&ax(&[1., 1., 3., 0.]), &ax(&[1., 0., 2., 3.])),
    );
    let flat = [0., 2., 3., 0., 6., 9., 0., 0., 0.];
    let expected = SparseVec::from_pairs(
        flat.iter()
            .enumerate()
            .map(|(i, &c)| (BasisKey::axis_seq(&[i as u64 / 3, i as u64 % 3]), c)),
    );
    let tensor = rank_one(&big).and_then(|b| tensor_alg_product(&b, &rank_one(&cat)?));
    r.vector("tensor big ⊗ cat", &expected, tensor);
    r.vector(
        "subsequence ξ(a)",
        &SparseVec::from_pairs([(BasisKey::seq(&["a"]), 0.5), (BasisKey::empty_seq(), 0.5)]),
        Ok(subsequence_xi("a")),
    );
    match ContextTheory::pointwise(table()) {
        Ok(t) => {
            r.vector(
                "pointwise theory: big cat",
                &ax(&[0., 6., 0.]),
                t.lift_string(&["big", "cat"]),
            );
            let ent = t
                .lift_string(&["cat"])
                .and_then(|c| entail(ops, &c, &t.lift_string(&["animal"])?));
            r.number("pointwise theory: Ent(cat, animal)", 0.6, ent);
        }
        Err(e) => r.push(
            "pointwise theory",
            "theory".into(),
            format!("error: {e}"),
            false,
        ),
    }
}

fn words(s: &str) -> Vec<String> {
    crate::tokenize(s, false)
}

fn pair(l: &str, rt: &str) -> SparseVec {
    SparseVec::basis(BasisKey::pair(&words(l), &words(rt)))
}

fn context_examples(r: &mut DemoReport) {
    let corpus: Vec<Vec<String>> = ["a b c d", "a e c d", "a b f d"].map(words).to_vec();
    let lang = match Language::from_corpus(&corpus) {
        Ok(l) => l,
        Err(e) => return r.push("corpus language", "L".into(), format!("error: {e}"), false),
    };
    let third = 1.0 / 3.0;
    for s in ["a b c d", "a e c d", "a b f d"] {
        r.number(&format!("L({s})"), third, Ok(lang.get(&words(s))));
    }
    r.flag(
        "L is a distribution",
        true,
        lang.classify() == LanguageClass::Distribution,
    );
    let ctx = |s: &str| lang.context_vector(&words(s));
    r.vector(
        "b̂",
        &(&pair("a", "c d") + &pair("a", "f d")).scale(third),
        Ok(ctx("b")),
    );
    r.vector(
        "ĉ",
        &(&pair("a b", "d") + &pair("a e", "d")).scale(third),
        Ok(ctx("c")),
    );

    let ad = pair("a", "d");
    let small = ContextAlgebra::new(lang.clone(), 2);
    r.vector(
        "b̂·ĉ with a length-2 basis",
        &ad.scale(third),
        small.and_then(|a| a.product(&ctx("b"), &ctx("c"))),
    );
    let alg = match ContextAlgebra::new(lang.clone(), 4) {
        Ok(a) => a,
        Err(e) => {
            return r.push(
                "context algebra",
                "basis".into(),
                format!("error: {e}"),
                false,
            )
        }
    };
    r.vector("b̂·ĉ", &ad.scale(third), alg.product(&ctx("b"), &ctx("c")));
    r.vector("ê·f̂", &SparseVec::zero(), alg.product(&ctx("e"), &ctx("f")));
    r.vector(
        "3(b̂ − ê)",
        &pair("a", "f d"),
        Ok((&ctx("b") - &ctx("e")).scale(3.0)),
    );
    r.vector(
        "3(ĉ − f̂)",
        &pair("a e", "d"),
        Ok((&ctx("c") - &ctx("f")).scale(3.0)),
    );
    r.vector(
        "positivity witness (a,fd)·(ae,d)",
        &ad.scale(-3.0),
        alg.product(&pair("a", "f d"), &pair("a e", "d")),
    );
    r.vector(
        "(a,cd)·(ae,d)",
        &ad.scale(3.0),
        alg.product(&pair("a", "c d"), &pair("a e", "d")),
    );
    r.vector(
        "(a,fd)·(ab,d)",
        &ad.scale(3.0),
        alg.product(&pair("a", "f d"), &pair("a b", "d")),
    );
    r.vector(
        "(a,cd)·(ab,d)",
        &SparseVec::zero(),
        alg.product(&pair("a", "c d"), &pair("a b", "d")),
    );
    r.vector(
        "context theory: lift(b c)",
        &ad.scale(third),
        build_context_theory(lang.clone(), 4).and_then(|t| t.lift_string(&["b", "c"])),
    );
    let bar = lang.average_length().unwrap_or(f64::NAN);
    let bounded = lang
        .alphabet()
        .iter()
        .all(|w| lattice::norm(&lang.context_vector(&[w]), Norm::L1) <= bar);
    r.flag("‖x̂‖₁ ≤ average length for every word", true, bounded);
}

fn factor(c: &[f64], ty: &str) -> Option<TypedFactor> {
    TypedFactor::new(ax(c), ty.parse().ok()?).ok()
}

fn pregroup_examples(r: &mut DemoReport) {
    let at = |s: &str| s.parse::<AdjointType>().expect("literal type");
    let ty = |s: &str| s.parse::<ComplexType>().expect("literal type");
    r.flag("π π^r contracts", true, contracts(&at("π"), &at("π^r")));
    r.flag("o^l o contracts", true, contracts(&at("o^l"), &at("o")));
    r.flag(
        "π^r s o^l is irreducible",
        true,
        ty("π^r s o^l").is_irreducible(),
    );
    let derivation = ty("π π^r s o^l o").reduces_to(&ty("s"));
    r.push(
        "π (π^r s o^l) o reduces to s",
        "a derivation ending in s".into(),
        derivation
            .as_ref()
            .map_or_else(|| "no derivation".to_owned(), ToString::to_string),
        derivation.is_some(),
    );

    let (vj, v1, v2, v3, vm) = (
        [1., 2., 0.],
        [0.5, 1., 3.],
        [2., 0., 1.],
        [1., 1., 1.],
        [0., 4., 1.],
    );
    let built = (|| {
        let one = |f: TypedFactor| GammaVec::from(TypedTensor::new(1.0, vec![f]));
        let john = one(factor(&vj, "π")?);
        let likes = GammaVec::from(TypedTensor::new(
            1.0,
            vec![factor(&v1, "π^r")?, factor(&v2, "s")?, factor(&v3, "o^l")?],
        ));
        let mary = one(factor(&vm, "o")?);
        let first = gamma_product(&john, &one(factor(&v1, "π^r")?));
        let second = gamma_product(&one(factor(&v2, "s")?), &one(factor(&v3, "o^l")?));
        let full = gamma_product(&gamma_product(&john, &likes), &mary);
        let expected_second = GammaVec::from(TypedTensor::new(
            1.0,
            vec![factor(&v2, "s")?, factor(&v3, "o^l")?],
        ));
        // ⟨v_John, v₁⟩ = 2.5 and ⟨v₃, v_Mary⟩ = 5
        let expected_full = GammaVec::from(TypedTensor::new(12.5, vec![factor(&v2, "s")?]));
        Some((john, first, second, expected_second, full, expected_full))
    })();
    let Some((john, first, second, expected_second, full, expected_full)) = built else {
        return r.push(
            "John likes Mary",
            "tensors".into(),
            "construction failed".into(),
            false,
        );
    };
    r.vector(
        "(v_John⊗e_π)·(v₁⊗e_π^r)",
        &SparseVec::basis(BasisKey::empty_seq()).scale(2.5),
        Ok(first.expand()),
    );
    r.vector(
        "(v₂⊗e_s)·(v₃⊗e_o^l)",
        &expected_second.expand(),
        Ok(second.expand()),
    );
    r.vector(
        "John likes Mary",
        &expected_full.expand(),
        Ok(full.expand()),
    );
    r.push(
        "type of John likes Mary",
        "s".into(),
        full.types()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        full.types() == vec![ty("s")],
    );
    r.push(
        "type of v_John⊗e_π",
        "π".into(),
        john.types()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        john.types() == vec![ty("π")],
    );
}
