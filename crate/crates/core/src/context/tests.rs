use proptest::prelude::*;

use super::*;
use crate::lattice::{norm, Norm};

fn w(s: &str) -> Words {
    s.split_whitespace().map(str::to_owned).collect()
}

fn pair(l: &str, r: &str) -> BasisKey {
    BasisKey::CtxPair(w(l), w(r))
}

fn sec3() -> Language {
    Language::from_corpus(&[w("a b c d"), w("a e c d"), w("a b f d")]).unwrap()
}

fn third() -> f64 {
    1.0 / 3.0
}

/// Context vector by enumerating every `(y, z)` with `yxz` in the support.
fn brute_context(lang: &Language, x: &[String]) -> SparseVec {
    let mut pairs = Vec::new();
    for (s, v) in lang.iter() {
        for i in 0..=s.len() {
            for j in i..=s.len() {
                if s[i..j] == *x {
                    pairs.push((BasisKey::CtxPair(s[..i].to_vec(), s[j..].to_vec()), v));
                }
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

#[test]
fn corpus_language() {
    let l = sec3();
    for s in ["a b c d", "a e c d", "a b f d"] {
        assert_eq!(l.get(&w(s)), third());
    }
    assert_eq!(l.support_len(), 3);
    assert_eq!(Language::from_corpus(&[w("x")]).unwrap().get(&w("x")), 1.0);
    assert_eq!(
        Language::from_corpus(&[w("x"), w("x")])
            .unwrap()
            .get(&w("x")),
        1.0
    );
    assert!(matches!(
        Language::from_corpus(&[]),
        Err(Error::EmptyCorpus)
    ));
}

#[test]
fn classification() {
    assert_eq!(sec3().classify(), LanguageClass::Distribution);
    let half = Language::new([(w("a"), 0.5), (w("b"), 0.5)]);
    assert_eq!(half.classify(), LanguageClass::Distribution);
    assert_eq!(
        Language::new([(w("a"), -1.0)]).classify(),
        LanguageClass::Real
    );
    assert_eq!(
        Language::new([(w("a"), 0.5)]).classify(),
        LanguageClass::Fuzzy
    );
    assert_eq!(
        Language::new([(w("a"), 2.0)]).classify(),
        LanguageClass::Positive
    );
}

#[test]
fn context_vectors_of_the_worked_language() {
    let l = sec3();
    let b = l.context_vector(&w("b"));
    assert_eq!(
        b,
        SparseVec::from_pairs([(pair("a", "c d"), third()), (pair("a", "f d"), third())])
    );
    let c = l.context_vector(&w("c"));
    assert_eq!(
        c,
        SparseVec::from_pairs([(pair("a b", "d"), third()), (pair("a e", "d"), third())])
    );
    let eps = l.context_vector::<&str>(&[]);
    assert_eq!(eps, brute_context(&l, &[]));
    assert_eq!(eps.len(), 15);
    assert!(eps.iter().all(|(_, &v)| v == third()));
    let from_abcd = eps
        .keys()
        .filter(|k| matches!(k, BasisKey::CtxPair(l, r) if [l.clone(), r.clone()].concat() == w("a b c d")))
        .count();
    assert_eq!(from_abcd, 5);
    assert!(l.context_vector(&w("z")).is_zero());
}

#[test]
fn average_lengths() {
    assert_eq!(sec3().average_length().unwrap(), 4.0);
    assert_eq!(Language::new([(w(""), 1.0)]).average_length().unwrap(), 0.0);
    let k = 12u32;
    let truncated = Language::new((0..=k).map(|n| {
        let len = 1usize << n;
        (vec!["a".to_owned(); len], 0.5f64.powi(n as i32 + 1))
    }));
    assert_eq!(truncated.average_length().unwrap(), f64::from(k + 1) / 2.0);
    assert!(matches!(
        Language::new([(w("a"), -0.5)]).average_length(),
        Err(Error::NotPositive { .. })
    ));
}

#[test]
fn basis_selection() {
    let l = sec3();
    let basis = ContextBasis::select(&l, 2).unwrap();
    for word in l.alphabet() {
        assert!(basis.expand(&l.context_vector(&[&word])).is_ok());
    }
    let alg = ContextAlgebra::with_basis(l.clone(), basis);
    let bc = alg
        .product(&l.context_vector(&w("b")), &l.context_vector(&w("c")))
        .unwrap();
    assert_eq!(bc, SparseVec::from_pairs([(pair("a", "d"), third())]));

    let ab = Language::from_corpus(&[w("a b")]).unwrap();
    let basis = ContextBasis::select(&ab, 2).unwrap();
    assert!(basis.strings().contains(&w("a")) && basis.strings().contains(&w("b")));

    assert!(basis
        .expand(&ab.context_vector(&w("q")))
        .unwrap()
        .iter()
        .all(|&a| a == 0.0));
    assert!(matches!(
        ContextBasis::select(&l, 0),
        Err(Error::SpanNotReached { max_len: 0, .. })
    ));
    assert!(matches!(
        basis.expand(&SparseVec::basis(pair("z", "z"))),
        Err(Error::NotInSpan { .. })
    ));
}

#[test]
fn worked_products() {
    let l = sec3();
    let alg = ContextAlgebra::new(l.clone(), 4).unwrap();
    let ctx = |s: &str| l.context_vector(&w(s));
    let ad = SparseVec::basis(pair("a", "d"));

    assert_eq!(
        alg.product(&ctx("b"), &ctx("c")).unwrap(),
        ad.scale(third())
    );
    assert!(alg.product(&ctx("e"), &ctx("f")).unwrap().is_zero());

    let a_fd = SparseVec::basis(pair("a", "f d"));
    let a_cd = SparseVec::basis(pair("a", "c d"));
    let ab_d = SparseVec::basis(pair("a b", "d"));
    let ae_d = SparseVec::basis(pair("a e", "d"));
    // these contexts are combinations of word context vectors
    assert_eq!(a_fd, (&ctx("b") - &ctx("e")).scale(3.0));
    assert_eq!(ae_d, (&ctx("c") - &ctx("f")).scale(3.0));
    assert_eq!(alg.product(&a_fd, &ae_d).unwrap(), ad.scale(-3.0));
    assert_eq!(alg.product(&a_cd, &ae_d).unwrap(), ad.scale(3.0));
    assert_eq!(alg.product(&a_fd, &ab_d).unwrap(), ad.scale(3.0));
    assert!(alg.product(&a_cd, &ab_d).unwrap().is_zero());

    let eps = l.context_vector::<&str>(&[]);
    assert_eq!(alg.product(&eps, &ctx("b")).unwrap(), ctx("b"));
    assert_eq!(alg.product(&ctx("b"), &eps).unwrap(), ctx("b"));
}

#[test]
fn context_theory_of_the_worked_language() {
    let l = sec3();
    let bar = l.average_length().unwrap();
    let th = build_context_theory(l.clone(), 4).unwrap();
    assert_eq!(th.string_entailment(&["b", "c"], &["b", "c"]).unwrap(), 1.0);
    assert_eq!(
        th.lift_string(&["b", "c"]).unwrap(),
        SparseVec::from_pairs([(pair("a", "d"), third())])
    );
    assert_eq!(
        th.lift_string(&["a", "b", "c", "d"]).unwrap(),
        SparseVec::basis(pair("", "")).scale(third())
    );
    for word in l.alphabet() {
        assert!(norm(th.xi(&word).unwrap(), Norm::L1) <= bar);
    }
    assert!(matches!(
        build_context_theory(Language::new([(w("a"), 0.5)]), 2),
        Err(Error::NotDistribution(_))
    ));
}

#[test]
fn language_tsv_round_trip() {
    let l = Language::new([(w("a b"), 0.25), (w(""), 0.75)]);
    assert_eq!(Language::parse_tsv(&l.to_tsv()).unwrap(), l);
    assert!(Language::parse_tsv("a b 0.5").is_err());
    assert_eq!(parse_corpus("A b\n\nc\n", true), vec![w("a b"), w("c")]);
}

fn random_language() -> impl Strategy<Value = Language> {
    let word = prop::sample::select(vec!["a", "b", "c"]);
    let string = prop::collection::vec(word, 1..4);
    prop::collection::vec(string, 1..5).prop_map(|docs| {
        let docs: Vec<Words> = docs
            .into_iter()
            .map(|d| d.into_iter().map(str::to_owned).collect())
            .collect();
        Language::from_corpus(&docs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_basis_independent(l in random_language(), seed in any::<u64>()) {
        let max = l.max_string_len();
        let b1 = ContextBasis::select_with_order(&l, max, CandidateOrder::LengthLex).unwrap();
        let b2 = ContextBasis::select_with_order(&l, max, CandidateOrder::Shuffled(seed)).unwrap();
        let a1 = ContextAlgebra::with_basis(l.clone(), b1);
        let a2 = ContextAlgebra::with_basis(l.clone(), b2);
        let subs: Vec<Words> = l.substrings(max).into_iter().collect();
        for x in &subs {
            for y in &subs {
                let (xv, yv) = (l.context_vector(x), l.context_vector(y));
                let p1 = a1.product(&xv, &yv).unwrap();
                let p2 = a2.product(&xv, &yv).unwrap();
                prop_assert!(p1.approx_eq(&p2, 1e-9));
                let xy: Words = [x.clone(), y.clone()].concat();
                prop_assert!(p1.approx_eq(&l.context_vector(&xy), 1e-9));
            }
        }
    }

    #[test]
    fn context_norm_bounded_by_average_length(l in random_language()) {
        let bar = l.average_length().unwrap();
        for y in l.substrings(usize::MAX) {
            let n = norm(&l.context_vector(&y), Norm::L1);
            if y.is_empty() {
                // every string has |x| + 1 split positions
                prop_assert!((n - (bar + 1.0)).abs() < 1e-12);
            } else {
                prop_assert!(n <= bar + 1e-12);
            }
        }
    }
}
