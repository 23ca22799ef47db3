mod common;

use std::sync::Arc;

use proptest::prelude::*;

use bbcrystal::check::check_axioms_on;
use bbcrystal::{
    explore, explore_with, CartanDatum, Crystal, CrystalError, Elementary, ElementaryElement, Exec,
    FactorTensor, IndexSequence, MatrixRule, Op, SeqElem, SequenceCrystal, Tensor, TensorElem,
    Weight,
};
use common::*;

fn entry(d: &CartanDatum, i: usize, mut parts: Vec<u32>) -> ElementaryElement {
    if d.is_real(i) {
        parts.truncate(1);
    }
    ElementaryElement::of_index(d, i, parts)
}

fn any_datum() -> impl Strategy<Value = Arc<CartanDatum>> {
    prop::sample::select(vec![
        a1(),
        a2(),
        iso1(),
        imag1(),
        mixed_sym(),
        mixed(),
        rank3(),
        two_imaginary(),
    ])
    .prop_map(|d| d.datum)
}

fn datum_and_op() -> impl Strategy<Value = (Arc<CartanDatum>, Op)> {
    any_datum().prop_flat_map(|d| {
        let n = d.rank();
        (Just(d), 0..n, 1u32..4).prop_map(|(d, i, l)| {
            let l = if d.is_real(i) { 1 } else { l };
            let op = Op::new(&d, i, l).unwrap();
            (d, op)
        })
    })
}

type Raw = Vec<(usize, Vec<u32>)>;

fn raw_seq() -> impl Strategy<Value = Raw> {
    prop::collection::vec((1usize..7, prop::collection::vec(1u32..4, 0..3)), 0..5)
}

fn seq_elem(d: &CartanDatum, seq: &IndexSequence, raw: Raw) -> SeqElem {
    let mut b = SeqElem::zero();
    for (k, p) in raw {
        b.set(k, entry(d, seq.at(k), p));
    }
    b
}

/// The first `n` factors `c_n ⊗ ⋯ ⊗ c_1` of `B_𝐢` as an explicit tensor.
fn truncation(d: &Arc<CartanDatum>, seq: &IndexSequence, n: usize) -> FactorTensor {
    FactorTensor::new(
        d.clone(),
        (1..=n)
            .rev()
            .map(|k| Elementary::b(d.clone(), seq.at(k)))
            .collect(),
    )
}

fn flatten(d: &CartanDatum, seq: &IndexSequence, b: &SeqElem, n: usize) -> Vec<ElementaryElement> {
    (1..=n)
        .rev()
        .map(|k| {
            b.get(k)
                .cloned()
                .unwrap_or_else(|| ElementaryElement::zero(d, seq.at(k)))
        })
        .collect()
}

/// Matrix rules checked directly from the definition.
fn violates(m: &[Vec<i64>], r: &[i64]) -> bool {
    let n = m.len();
    (0..n).any(|i| {
        let aii = m[i][i];
        (aii != 2 && (aii > 0 || aii % 2 != 0))
            || (0..n).any(|j| j != i && (m[i][j] > 0 || r[i] * m[i][j] != r[j] * m[j][i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn validator_matches_definition(
        n in 1usize..4,
        entries in prop::collection::vec(-4i64..4, 9),
        r in prop::collection::vec(1i64..3, 3),
    ) {
        let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| entries[i * 3 + j]).collect()).collect();
        let r = r[..n].to_vec();
        let got = CartanDatum::new(m.clone(), r.clone());
        prop_assert_eq!(got.is_err(), violates(&m, &r));
        if let Err(CrystalError::InvalidMatrix(v)) = got {
            let odd = (0..n).any(|i| m[i][i] % 2 != 0);
            prop_assert_eq!(odd, v.iter().any(|x| x.rule == MatrixRule::OddDiagonal));
        }
    }

    #[test]
    fn pairing_is_additive(
        d in any_datum(),
        x in prop::collection::vec(-3i64..4, 6),
        y in prop::collection::vec(-3i64..4, 6),
    ) {
        let n = d.rank();
        let w = |v: &[i64]| Weight::from_parts(
            (0..n).map(|i| (i, v[i])),
            (0..n).map(|i| (i, v[3 + i])),
        );
        let (a, b) = (w(&x), w(&y));
        for j in d.indices() {
            prop_assert_eq!(d.pairing(j, &(&a + &b)), d.pairing(j, &a) + d.pairing(j, &b));
            prop_assert_eq!(d.pairing(j, &Weight::simple_root(j)), d.a(j, j));
        }
    }

    #[test]
    fn sequence_model_is_the_tensor_product((d, op) in datum_and_op(), raw in raw_seq()) {
        let seq = IndexSequence::standard(&d);
        let b = seq_elem(&d, &seq, raw);
        let n = b.support() + 2 * seq.base().len() + 1;
        let s = SequenceCrystal::new(d.clone(), seq.clone());
        let t = truncation(&d, &seq, n);
        let x = flatten(&d, &seq, &b, n);
        prop_assert_eq!(s.wt(&b), t.wt(&x));
        for i in d.indices() {
            prop_assert_eq!(s.eps(i, &b), t.eps(i, &x), "eps_{} at {}", i, s.render(&b));
            prop_assert_eq!(s.phi(i, &b), t.phi(i, &x), "phi_{} at {}", i, s.render(&b));
        }
        prop_assert_eq!(s.f(op, &b).map(|y| flatten(&d, &seq, &y, n)), t.f(op, &x));
        prop_assert_eq!(s.e(op, &b).map(|y| flatten(&d, &seq, &y, n)), t.e(op, &x));
    }

    #[test]
    fn sequence_model_axioms(d in any_datum(), raws in prop::collection::vec(raw_seq(), 1..6)) {
        let seq = IndexSequence::standard(&d);
        let s = SequenceCrystal::new(d.clone(), seq.clone());
        let elems: Vec<SeqElem> = raws.into_iter().map(|r| seq_elem(&d, &seq, r)).collect();
        let r = check_axioms_on(&s, &elems, 3, Exec::Sequential);
        prop_assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn elementary_round_trips((d, op) in datum_and_op(), parts in prop::collection::vec(1u32..5, 0..4)) {
        let i = op.index();
        let b = Elementary::b(d.clone(), i);
        let x = entry(&d, i, parts);
        if let Some(y) = b.f(op, &x) {
            prop_assert_eq!(b.e(op, &y), Some(x.clone()));
        }
        if let Some(y) = b.e(op, &x) {
            prop_assert_eq!(b.f(op, &y), Some(x));
        }
    }

    #[test]
    fn tensor_pairs_satisfy_axioms(
        d in any_datum(),
        i in 0usize..3,
        j in 0usize..3,
        p in prop::collection::vec(1u32..4, 0..3),
        q in prop::collection::vec(1u32..4, 0..3),
    ) {
        let (i, j) = (i % d.rank(), j % d.rank());
        let t = Tensor::new(Elementary::b(d.clone(), i), Elementary::b(d.clone(), j));
        let x = TensorElem::new(entry(&d, i, p), entry(&d, j, q));
        let r = check_axioms_on(&t, &[x], 3, Exec::Sequential);
        prop_assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn rebracketing_preserves_everything(
        (d, op) in datum_and_op(),
        idx in prop::collection::vec(0usize..3, 3),
        parts in prop::collection::vec(prop::collection::vec(1u32..4, 0..3), 3),
    ) {
        let idx: Vec<usize> = idx.iter().map(|&i| i % d.rank()).collect();
        let fac = |k: usize| Elementary::b(d.clone(), idx[k]);
        let el = |k: usize| entry(&d, idx[k], parts[k].clone());
        let lhs = Tensor::new(Tensor::new(fac(0), fac(1)), fac(2));
        let rhs = Tensor::new(fac(0), Tensor::new(fac(1), fac(2)));
        let x = TensorElem::new(TensorElem::new(el(0), el(1)), el(2));
        let y = TensorElem::new(el(0), TensorElem::new(el(1), el(2)));
        let re = |t: TensorElem<TensorElem<ElementaryElement, ElementaryElement>, ElementaryElement>| {
            TensorElem::new(t.left.left, TensorElem::new(t.left.right, t.right))
        };
        prop_assert_eq!(lhs.wt(&x), rhs.wt(&y));
        for i in d.indices() {
            prop_assert_eq!(lhs.eps(i, &x), rhs.eps(i, &y));
            prop_assert_eq!(lhs.phi(i, &x), rhs.phi(i, &y));
        }
        prop_assert_eq!(lhs.f(op, &x).map(re), rhs.f(op, &y));
        prop_assert_eq!(lhs.e(op, &x).map(re), rhs.e(op, &y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn explore_is_monotone_in_budget(d in any_datum(), budget in 0u32..4) {
        let s = SequenceCrystal::new(d.clone(), IndexSequence::standard(&d));
        let small = explore(&s, &[SeqElem::zero()], budget).unwrap();
        let big = explore(&s, &[SeqElem::zero()], budget + 1).unwrap();
        prop_assert!(small.len() <= big.len());
        prop_assert!(small.elems().all(|b| big.contains(b)));
        for n in big.nodes() {
            prop_assert_eq!(small.contains(&n.elem), n.depth <= budget as i64);
        }
    }

    #[test]
    fn exploration_is_path_independent(d in any_datum(), budget in 0u32..4, raw in raw_seq()) {
        let seq = IndexSequence::standard(&d);
        let s = SequenceCrystal::new(d.clone(), seq.clone());
        let seeds = vec![SeqElem::zero(), seq_elem(&d, &seq, raw)];
        let mut rev = seeds.clone();
        rev.reverse();
        let a = explore_with(&s, &seeds, budget, Exec::Sequential).unwrap();
        let b = explore_with(&s, &rev, budget, Exec::Parallel).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert!(a.is_induced_subgraph_of(&b) && b.is_induced_subgraph_of(&a));
        for n in a.nodes() {
            let m = b.node(b.index_of(&n.elem).unwrap());
            prop_assert_eq!((&n.wt, &n.eps, &n.phi, n.depth), (&m.wt, &m.eps, &m.phi, m.depth));
        }
    }
}
