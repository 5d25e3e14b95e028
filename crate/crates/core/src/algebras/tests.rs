use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::*;
use crate::lattice::{degree_of_entailment, norm, Norm};

fn ax(c: &[f64]) -> SparseVec {
    SparseVec::from_axes(c)
}

fn seq(s: &str) -> BasisKey {
    BasisKey::seq(&s.split_whitespace().collect::<Vec<_>>())
}

fn bag(s: &str) -> BasisKey {
    BasisKey::bag(&s.split_whitespace().collect::<Vec<_>>())
}

fn table1() -> BTreeMap<String, SparseVec> {
    [
        ("cat", ax(&[0., 2., 3.])),
        ("animal", ax(&[2., 1., 2.])),
        ("big", ax(&[1., 3., 0.])),
    ]
    .into_iter()
    .map(|(w, v)| (w.to_owned(), v))
    .collect()
}

/// Square matrix `αI` plus the vector part in row 0, as in the embedding of
/// vector addition into matrix multiplication.
fn additive_matrix(u: &SparseVec, n: usize) -> Vec<Vec<f64>> {
    let coords = u.to_axes(n + 1);
    let mut m = vec![vec![0.0; n + 1]; n + 1];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = coords[0];
    }
    m[0][1..].copy_from_slice(&coords[1..]);
    m
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// All subsequences of `x`, by bitmask.
fn subsequences(x: &[&str]) -> BTreeSet<BasisKey> {
    (0u32..1 << x.len())
        .map(|mask| {
            let picked: Vec<&str> = (0..x.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| x[i])
                .collect();
            BasisKey::seq(&picked)
        })
        .collect()
}

#[test]
fn pointwise_examples() {
    assert_eq!(
        pointwise_product(&ax(&[1., 3., 0.]), &ax(&[0., 2., 3.])).unwrap(),
        ax(&[0., 6., 0.])
    );
    let u = ax(&[4., -1., 2.]);
    assert_eq!(pointwise_product(&u, &ax(&[1., 1., 1.])).unwrap(), u);
    assert!(pointwise_product(&ax(&[2., 0.]), &ax(&[0., 5.]))
        .unwrap()
        .is_zero());
    assert!(matches!(
        pointwise_product(&SparseVec::basis(seq("a")), &ax(&[1.])),
        Err(Error::KeyVariantMismatch { .. })
    ));
}

#[test]
fn additive_examples() {
    assert_eq!(
        additive_product(&ax(&[1., 1., 3., 0.]), &ax(&[1., 0., 2., 3.])).unwrap(),
        ax(&[1., 1., 5., 3.])
    );
    let u = ax(&[2., 1., 0.]);
    let v = ax(&[3., 0., 1.]);
    let oracle = matmul(&additive_matrix(&u, 2), &additive_matrix(&v, 2));
    assert_eq!(ax(&oracle[0]), ax(&[6., 3., 2.]));
    assert_eq!(additive_product(&u, &v).unwrap(), ax(&[6., 3., 2.]));
    assert_eq!(additive_product(&u, &ax(&[1.])).unwrap(), u);
    assert!(additive_product(&SparseVec::basis(bag("a")), &u).is_err());
}

#[test]
fn tensor_examples() {
    let p = tensor_alg_product(
        &rank_one(&ax(&[1., 3., 0.])).unwrap(),
        &rank_one(&ax(&[0., 2., 3.])).unwrap(),
    )
    .unwrap();
    // flatten rank-2 keys (i, j) to 3i + j
    let flat: Vec<f64> = (0..3u64)
        .flat_map(|i| (0..3u64).map(move |j| (i, j)))
        .map(|(i, j)| p.get(&BasisKey::axis_seq(&[i, j])))
        .collect();
    assert_eq!(flat, vec![0., 2., 3., 0., 6., 9., 0., 0., 0.]);

    let u = rank_one(&ax(&[1., 2.])).unwrap();
    let one = SparseVec::basis(BasisKey::axis_seq(&[]));
    assert_eq!(tensor_alg_product(&one, &u).unwrap(), u);

    let e1 = SparseVec::basis(BasisKey::axis_seq(&[1]));
    let e2 = SparseVec::basis(BasisKey::axis_seq(&[2]));
    let expected = SparseVec::from_pairs([
        (BasisKey::axis_seq(&[1, 1]), 1.0),
        (BasisKey::axis_seq(&[2, 1]), 1.0),
    ]);
    assert_eq!(tensor_alg_product(&(&e1 + &e2), &e1).unwrap(), expected);
}

#[test]
fn convolution_examples() {
    assert_eq!(
        convolution(&SparseVec::basis(seq("a b")), &SparseVec::basis(seq("b a"))).unwrap(),
        SparseVec::basis(seq("a b b a"))
    );
    let expected = SparseVec::from_pairs([
        (seq("a b"), 0.25),
        (seq("a"), 0.25),
        (seq("b"), 0.25),
        (seq(""), 0.25),
    ]);
    assert_eq!(
        convolution(&subsequence_xi("a"), &subsequence_xi("b")).unwrap(),
        expected
    );
    let u = &subsequence_xi("q") + &SparseVec::basis(seq("x y"));
    assert_eq!(convolution(&u, &SparseVec::basis(seq(""))).unwrap(), u);
}

#[test]
fn commutative_convolution_examples() {
    assert_eq!(
        commutative_convolution(&SparseVec::basis(bag("a b")), &SparseVec::basis(bag("b a")))
            .unwrap(),
        SparseVec::basis(bag("a a b b"))
    );
    let u = overlap_xi("a");
    assert_eq!(
        commutative_convolution(&u, &SparseVec::basis(bag(""))).unwrap(),
        u
    );
    let expected = SparseVec::from_pairs([(bag("a a"), 0.25), (bag("a"), 0.5), (bag(""), 0.25)]);
    assert_eq!(commutative_convolution(&u, &u).unwrap(), expected);
}

#[test]
fn word_embeddings() {
    let s = subsequence_xi("a");
    assert_eq!(s.get(&seq("a")), 0.5);
    assert_eq!(s.get(&seq("")), 0.5);
    assert_eq!(norm(&s, Norm::L1), 1.0);
    let o = overlap_xi("a");
    assert_eq!(o.get(&bag("a")), 0.5);
    assert_eq!(norm(&o, Norm::L1), 1.0);
    let th = ContextTheory::overlap(["a", "b"]);
    let lifted = th.lift_string(&["a", "b"]).unwrap();
    assert_eq!(lifted.len(), 4);
    assert!(lifted.iter().all(|(_, &c)| c == 0.25));
}

#[test]
fn lift_and_entail_pointwise_table() {
    let th = ContextTheory::pointwise(table1()).unwrap();
    assert_eq!(th.lift_string(&["big", "cat"]).unwrap(), ax(&[0., 6., 0.]));
    assert_eq!(th.lift_string::<&str>(&[]).unwrap(), ax(&[1., 1., 1.]));
    assert!((th.string_entailment(&["cat"], &["animal"]).unwrap() - 0.6).abs() < 1e-15);
    assert_eq!(
        th.string_entailment(&["big", "cat"], &["big", "cat"])
            .unwrap(),
        1.0
    );
    assert!(matches!(th.lift_string(&["dog"]), Err(Error::UnknownWord(w)) if w == "dog"));
}

#[test]
fn additive_and_tensor_theories() {
    let add = ContextTheory::additive(table1()).unwrap();
    assert_eq!(
        add.lift_string(&["big", "cat"]).unwrap(),
        ax(&[1., 1., 5., 3.])
    );
    assert_eq!(add.lift_string::<&str>(&[]).unwrap(), ax(&[1.]));
    let ten = ContextTheory::tensor(table1()).unwrap();
    let bc = ten.lift_string(&["big", "cat"]).unwrap();
    assert_eq!(bc.get(&BasisKey::axis_seq(&[1, 2])), 9.0);
    assert_eq!(ten.string_entailment(&["cat"], &["cat"]).unwrap(), 1.0);
}

#[test]
fn subsequence_theory_entailment() {
    let th = ContextTheory::subsequence(["a", "b", "c"]);
    let expected = SparseVec::from_pairs([
        (seq("a b"), 0.25),
        (seq("a"), 0.25),
        (seq("b"), 0.25),
        (seq(""), 0.25),
    ]);
    assert_eq!(th.lift_string(&["a", "b"]).unwrap(), expected);
    assert_eq!(
        th.string_entailment(&["b", "a"], &["a", "b"]).unwrap(),
        0.75
    );
    // a proper subsequence does not reach degree one under the literal definition
    assert_eq!(th.string_entailment(&["a"], &["a", "b"]).unwrap(), 0.5);
    assert_eq!(
        th.string_entailment(&["a", "b"], &["a", "c", "b"]).unwrap(),
        0.5
    );
    assert_eq!(
        th.lift_string::<&str>(&[]).unwrap(),
        SparseVec::basis(seq(""))
    );
}

#[test]
fn unity_must_be_an_identity() {
    let mut t = table1();
    t.insert("odd".into(), ax(&[0., 0., 0., 7.]));
    assert!(ContextTheory::pointwise_over(t, (0..3).map(BasisKey::Axis)).is_err());
}

#[test]
fn commutativity_witnesses() {
    let a = SparseVec::basis(seq("a"));
    let b = SparseVec::basis(seq("b"));
    assert_ne!(convolution(&a, &b).unwrap(), convolution(&b, &a).unwrap());
    let ta = SparseVec::basis(BasisKey::axis_seq(&[0]));
    let tb = SparseVec::basis(BasisKey::axis_seq(&[1]));
    assert_ne!(
        tensor_alg_product(&ta, &tb).unwrap(),
        tensor_alg_product(&tb, &ta).unwrap()
    );
}

#[test]
fn word_table_formats() {
    let dense = parse_word_table("cat\t0\t2\t3\n# comment\nbig\t1\t3\t0\n").unwrap();
    assert_eq!(dense["cat"], ax(&[0., 2., 3.]));
    let sparse = parse_word_table("cat\taxis:1\t2\ncat\taxis:2\t3\n").unwrap();
    assert_eq!(sparse["cat"], ax(&[0., 2., 3.]));
    assert!(parse_word_table("cat\tx\n").is_err());
    assert!(parse_word_table("cat\taxis:1\n").is_err());
}

fn axis_vec(dim: u64) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec((0..dim, -4i32..=4), 0..5).prop_map(|e| {
        SparseVec::from_pairs(
            e.into_iter()
                .map(|(k, c)| (BasisKey::Axis(k), f64::from(c))),
        )
    })
}

fn seq_vec() -> impl Strategy<Value = SparseVec> {
    let word = prop::sample::select(vec!["a", "b", "c"]);
    let key = prop::collection::vec(word, 0..3);
    prop::collection::vec((key, -4i32..=4), 0..4).prop_map(|e| {
        SparseVec::from_pairs(
            e.into_iter()
                .map(|(k, c)| (BasisKey::seq(&k), f64::from(c))),
        )
    })
}

fn bag_vec() -> impl Strategy<Value = SparseVec> {
    seq_vec().prop_map(|v| {
        SparseVec::from_pairs(v.iter().map(|(k, &c)| match k {
            BasisKey::Seq(w) => (BasisKey::bag(w), c),
            _ => unreachable!(),
        }))
    })
}

fn tensor_vec() -> impl Strategy<Value = SparseVec> {
    let key = prop::collection::vec(0u64..3, 0..3);
    prop::collection::vec((key, -4i32..=4), 0..4).prop_map(|e| {
        SparseVec::from_pairs(
            e.into_iter()
                .map(|(k, c)| (BasisKey::axis_seq(&k), f64::from(c))),
        )
    })
}

fn check_laws(
    p: &ProductKind,
    a: &SparseVec,
    b: &SparseVec,
    c: &SparseVec,
    s: f64,
    t: f64,
) -> Result<(), TestCaseError> {
    let m = |x: &SparseVec, y: &SparseVec| p.multiply(x, y).unwrap();
    let comb = crate::lattice::linear_combine(s, a, t, b);
    prop_assert_eq!(
        m(&comb, c),
        crate::lattice::linear_combine(s, &m(a, c), t, &m(b, c))
    );
    prop_assert_eq!(
        m(c, &comb),
        crate::lattice::linear_combine(s, &m(c, a), t, &m(c, b))
    );
    prop_assert_eq!(m(&m(a, b), c), m(a, &m(b, c)));
    Ok(())
}

proptest! {
    #[test]
    fn pointwise_laws(a in axis_vec(5), b in axis_vec(5), c in axis_vec(5), s in -3i32..3, t in -3i32..3) {
        check_laws(&ProductKind::Pointwise, &a, &b, &c, f64::from(s), f64::from(t))?;
        prop_assert_eq!(pointwise_product(&a, &b).unwrap(), pointwise_product(&b, &a).unwrap());
    }

    #[test]
    fn additive_laws(a in axis_vec(4), b in axis_vec(4), c in axis_vec(4), s in -3i32..3, t in -3i32..3) {
        check_laws(&ProductKind::Additive, &a, &b, &c, f64::from(s), f64::from(t))?;
        prop_assert_eq!(additive_product(&a, &b).unwrap(), additive_product(&b, &a).unwrap());
    }

    #[test]
    fn additive_matches_matrix_embedding(a in axis_vec(4), b in axis_vec(4)) {
        let prod = matmul(&additive_matrix(&a, 3), &additive_matrix(&b, 3));
        prop_assert_eq!(additive_matrix(&additive_product(&a, &b).unwrap(), 3), prod);
    }

    #[test]
    fn tensor_laws(a in tensor_vec(), b in tensor_vec(), c in tensor_vec(), s in -3i32..3, t in -3i32..3) {
        check_laws(&ProductKind::TensorAlg, &a, &b, &c, f64::from(s), f64::from(t))?;
    }

    #[test]
    fn convolution_laws(a in seq_vec(), b in seq_vec(), c in seq_vec(), s in -3i32..3, t in -3i32..3) {
        check_laws(&ProductKind::Convolution, &a, &b, &c, f64::from(s), f64::from(t))?;
    }

    #[test]
    fn commutative_convolution_laws(a in bag_vec(), b in bag_vec(), c in bag_vec(), s in -3i32..3, t in -3i32..3) {
        check_laws(&ProductKind::CommutativeConvolution, &a, &b, &c, f64::from(s), f64::from(t))?;
        prop_assert_eq!(
            commutative_convolution(&a, &b).unwrap(),
            commutative_convolution(&b, &a).unwrap()
        );
    }

    #[test]
    fn positive_inputs_give_positive_products(a in seq_vec(), b in seq_vec()) {
        let (a, b) = (crate::lattice::pos_part(&a), crate::lattice::pos_part(&b));
        let f = convolution(&a, &b).unwrap();
        prop_assert!(f.is_positive());
        prop_assert!(crate::lattice::approx_eq_scalar(
            norm(&f, Norm::L1),
            norm(&a, Norm::L1) * norm(&b, Norm::L1),
            1e-12
        ));
    }

    #[test]
    fn subsequence_support_law(
        x in prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 0..5),
        y in prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 0..5),
    ) {
        let th = ContextTheory::subsequence(["a", "b", "c"]);
        let xv = th.lift_string(&x).unwrap();
        let support: BTreeSet<BasisKey> = xv.keys().cloned().collect();
        prop_assert_eq!(&support, &subsequences(&x));
        let yv = th.lift_string(&y).unwrap();
        let included = xv.keys().all(|k| yv.contains_key(k));
        let x_key = BasisKey::seq(&x);
        prop_assert_eq!(included, subsequences(&y).contains(&x_key));
        let d = degree_of_entailment(&xv, &yv).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
    }
}
