use proptest::prelude::*;

use super::*;

fn ax(c: &[f64]) -> SparseVec {
    SparseVec::from_axes(c)
}

/// Context vector by brute force over every `(y, z)` split of every corpus
/// string that has `x` in the middle.
fn brute_context(corpus: &[&str], x: &str) -> SparseVec {
    let w = 1.0 / corpus.len() as f64;
    let mut pairs = Vec::new();
    for s in corpus {
        let chars: Vec<String> = s.chars().map(String::from).collect();
        for i in 0..=chars.len() {
            for j in i..=chars.len() {
                if chars[i..j].concat() == x {
                    pairs.push((BasisKey::pair(&chars[..i], &chars[j..]), w));
                }
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

#[test]
fn linear_combine_examples() {
    assert_eq!(
        linear_combine(1.0, &ax(&[0., 2., 3.]), 1.0, &ax(&[2., 1., 2.])),
        ax(&[2., 3., 5.])
    );
    assert!(linear_combine(0.0, &ax(&[1., 2.]), 0.0, &ax(&[3., 4.])).is_zero());

    let corpus = ["abcd", "aecd", "abfd"];
    let diff = &brute_context(&corpus, "b") - &brute_context(&corpus, "e");
    let tripled = linear_combine(3.0, &diff, 1.0, &SparseVec::zero());
    assert_eq!(
        tripled,
        SparseVec::basis(BasisKey::pair(&["a"], &["f", "d"]))
    );
}

#[test]
fn meet_and_join_examples() {
    assert_eq!(
        meet(&ax(&[0., 2., 3.]), &ax(&[2., 1., 2.])),
        ax(&[0., 1., 2.])
    );
    assert_eq!(meet(&ax(&[1., -2.]), &ax(&[0., 5.])), ax(&[0., -2.]));
    assert_eq!(
        join(&ax(&[0., 2., 3.]), &ax(&[2., 1., 2.])),
        ax(&[2., 2., 3.])
    );
    let u = ax(&[1., -2., 0., 4.]);
    assert_eq!(meet(&u, &u), u);
    assert_eq!(join(&u, &u), u);
    assert_eq!(join(&u, &SparseVec::zero()), pos_part(&u));
}

#[test]
fn positive_and_negative_parts() {
    let u = ax(&[1., -2., 0.]);
    assert_eq!(pos_part(&u), ax(&[1., 0., 0.]));
    assert_eq!(neg_part(&u), ax(&[0., 2., 0.]));
    assert!(pos_part(&SparseVec::zero()).is_zero());
}

#[test]
fn norms_and_inner() {
    assert_eq!(norm(&ax(&[0., 2., 3.]), Norm::L1), 5.0);
    assert_eq!(norm(&ax(&[3., 4.]), Norm::L2), 5.0);
    assert_eq!(norm(&ax(&[3., -7.]), Norm::Inf), 7.0);
    for p in [Norm::L1, Norm::L2, Norm::Inf] {
        assert_eq!(norm(&SparseVec::zero(), p), 0.0);
    }
    assert_eq!(inner(&ax(&[1., 0.]), &ax(&[0., 1.])), 0.0);
    assert_eq!(inner(&ax(&[1., 2.]), &ax(&[3., 4.])), 11.0);
    assert_eq!(inner(&ax(&[1., 2.]), &SparseVec::zero()), 0.0);
}

#[test]
fn entailment_examples() {
    let cat = ax(&[0., 2., 3.]);
    let animal = ax(&[2., 1., 2.]);
    assert!((degree_of_entailment(&cat, &animal).unwrap() - 0.6).abs() < 1e-15);
    assert_eq!(degree_of_entailment(&cat, &cat).unwrap(), 1.0);
    assert_eq!(
        degree_of_entailment(&ax(&[1., 0.]), &ax(&[0., 1.])).unwrap(),
        0.0
    );
}

#[test]
fn entailment_errors() {
    assert!(matches!(
        degree_of_entailment(&ax(&[1., -1.]), &ax(&[1., 1.])),
        Err(Error::NotPositive { .. })
    ));
    assert!(matches!(
        degree_of_entailment(&ax(&[1., 1.]), &ax(&[-1.])),
        Err(Error::NotPositive { .. })
    ));
    assert!(matches!(
        degree_of_entailment(&SparseVec::zero(), &ax(&[1.])),
        Err(Error::ZeroAntecedent)
    ));
}

#[test]
fn tiny_coefficients_are_dropped() {
    let v = SparseVec::from_pairs([(BasisKey::Axis(0), 1e-13), (BasisKey::Axis(1), 1.0)]);
    assert_eq!(v.len(), 1);
    let w = &v - &v;
    assert!(w.is_zero());
}

#[test]
fn mixed_variants_coexist_and_order_by_tag() {
    let v = SparseVec::from_pairs([
        (BasisKey::Axis(0), 1.0),
        (BasisKey::empty_seq(), 2.0),
        (BasisKey::seq(&["a"]), 3.0),
    ]);
    let keys: Vec<_> = v.keys().cloned().collect();
    assert_eq!(
        keys,
        vec![
            BasisKey::empty_seq(),
            BasisKey::seq(&["a"]),
            BasisKey::Axis(0)
        ]
    );
    assert_ne!(BasisKey::Axis(3), BasisKey::DocId(3));
}

#[test]
fn text_format_round_trip_and_errors() {
    let text = "axis:3\t1.5\nseq:\t2\npair:a b|c d\t-1\nbag:b a a\t0.25\ndoc:17\t1\nseq:a b c\t4\n";
    let v = parse_vector(text).unwrap();
    assert_eq!(v.get(&BasisKey::bag(&["a", "a", "b"])), 0.25);
    assert_eq!(v.get(&BasisKey::empty_seq()), 2.0);
    assert_eq!(v.get(&BasisKey::pair(&["a", "b"], &["c", "d"])), -1.0);
    assert_eq!(parse_vector(&format_vector(&v)).unwrap(), v);
    assert_eq!(parse_inline(&format_inline(&v), 1).unwrap(), v);

    assert!(parse_vector("axis:1 2").is_err());
    assert!(parse_vector("axis:x\t2").is_err());
    assert!(parse_vector("axis:1\t2\naxis:1\t3").is_err());
    assert!(parse_vector("pair:a b\t1").is_err());
    assert!(parse_inline("0", 1).unwrap().is_zero());
}

fn small_vec() -> impl Strategy<Value = SparseVec> {
    // dyadic coefficients keep sums and minima exact
    prop::collection::vec((0u64..6, -8i32..=8), 0..6).prop_map(|entries| {
        SparseVec::from_pairs(
            entries
                .into_iter()
                .map(|(k, c)| (BasisKey::Axis(k), f64::from(c) / 2.0)),
        )
    })
}

fn positive_vec() -> impl Strategy<Value = SparseVec> {
    small_vec().prop_map(|v| pos_part(&v))
}

proptest! {
    #[test]
    fn lattice_laws(u in small_vec(), v in small_vec(), w in small_vec()) {
        prop_assert_eq!(meet(&u, &v), meet(&v, &u));
        prop_assert_eq!(join(&u, &v), join(&v, &u));
        prop_assert_eq!(meet(&meet(&u, &v), &w), meet(&u, &meet(&v, &w)));
        prop_assert_eq!(join(&join(&u, &v), &w), join(&u, &join(&v, &w)));
        prop_assert_eq!(meet(&u, &join(&u, &v)), u.clone());
        prop_assert_eq!(join(&u, &meet(&u, &v)), u.clone());
    }

    #[test]
    fn order_compatibility(u in small_vec(), v in small_vec(), w in small_vec(), a in 0u32..5) {
        let lo = meet(&u, &v);
        let hi = join(&u, &v);
        // lo <= hi, so translating and scaling must preserve the order
        let lo_w = &lo + &w;
        let hi_w = &hi + &w;
        prop_assert_eq!(meet(&lo_w, &hi_w), lo_w);
        let alpha = f64::from(a);
        prop_assert_eq!(meet(&lo.scale(alpha), &hi.scale(alpha)), lo.scale(alpha));
    }

    #[test]
    fn parts_decompose(u in small_vec()) {
        prop_assert_eq!(&pos_part(&u) - &neg_part(&u), u.clone());
        prop_assert!(pos_part(&u).is_positive() && neg_part(&u).is_positive());
    }

    #[test]
    fn al_additivity(u in positive_vec(), v in positive_vec()) {
        // drop v's mass wherever u is supported
        let v = pos_part(&v.zip_with(&u, |b, a| if a > 0.0 { 0.0 } else { b }));
        prop_assert!(meet(&u, &v).is_zero());
        prop_assert_eq!(norm(&(&u + &v), Norm::L1), norm(&u, Norm::L1) + norm(&v, Norm::L1));
    }

    #[test]
    fn norm_inclusions(u in small_vec()) {
        prop_assert!(norm(&u, Norm::Inf) <= norm(&u, Norm::L2) + 1e-12);
        prop_assert!(norm(&u, Norm::L2) <= norm(&u, Norm::L1) + 1e-12);
    }

    #[test]
    fn entailment_symmetry(u in positive_vec(), v in positive_vec()) {
        prop_assume!(!u.is_zero() && !v.is_zero());
        let lhs = degree_of_entailment(&u, &v).unwrap() * norm(&u, Norm::L1);
        let rhs = degree_of_entailment(&v, &u).unwrap() * norm(&v, Norm::L1);
        prop_assert!(approx_eq_scalar(lhs, rhs, 1e-12));
        let e = degree_of_entailment(&u, &v).unwrap();
        prop_assert!((0.0..=1.0).contains(&e));
    }
}
