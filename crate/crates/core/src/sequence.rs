//! The sequence model `B_𝐢 = ⋯ ⊗ B_{i_2} ⊗ B_{i_1}` over a periodic index
//! sequence, and `B(∞)` as the component of `(0)_𝐢`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::check::{check_strict_morphism, sync_isomorphism, IsoReport, MorphismReport};
use crate::crystal::{Crystal, ExtInt, Op};
use crate::elementary::{elem_e, elem_f, Elementary, ElementaryElement};
use crate::error::{CrystalError, Result};
use crate::graph::{explore, LabelledGraph};
use crate::tensor::{Tensor, TensorElem};

/// `i_k = base[(k - 1) mod n]` for `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IndexSequence {
    base: Vec<usize>,
}

impl IndexSequence {
    /// The base period must be nonempty and mention every index.
    pub fn new(datum: &CartanDatum, base: Vec<usize>) -> Result<Self> {
        if base.is_empty() {
            return Err(CrystalError::EmptySequence);
        }
        if let Some(&bad) = base.iter().find(|&&i| i >= datum.rank()) {
            return Err(CrystalError::UnknownIndex(bad.to_string()));
        }
        if let Some(missing) = datum.indices().find(|i| !base.contains(i)) {
            return Err(CrystalError::IncompleteSequence(
                datum.id(missing).to_string(),
            ));
        }
        Ok(IndexSequence { base })
    }

    /// Parses identifiers into a sequence.
    pub fn from_ids<S: AsRef<str>>(datum: &CartanDatum, ids: &[S]) -> Result<Self> {
        let base = ids
            .iter()
            .map(|s| datum.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(datum, base)
    }

    /// `1, 2, ..., n`.
    pub fn standard(datum: &CartanDatum) -> Self {
        IndexSequence {
            base: datum.indices().collect(),
        }
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn at(&self, k: usize) -> usize {
        assert!(k >= 1, "positions start at 1");
        self.base[(k - 1) % self.base.len()]
    }

    /// First position `>= from` carrying index `i`.
    pub fn next_with(&self, i: usize, from: usize) -> usize {
        (from..)
            .find(|&k| self.at(k) == i)
            .expect("every index occurs")
    }

    /// The sequence shifted so that position `k + 1` becomes position `k`.
    pub fn shifted(&self) -> Self {
        let mut base = self.base.clone();
        base.rotate_left(1);
        IndexSequence { base }
    }

    /// The sequence rotated so that its first entry is `i`.
    pub fn starting_with(&self, i: usize) -> Self {
        let at = self
            .base
            .iter()
            .position(|&j| j == i)
            .expect("every index occurs");
        let mut base = self.base.clone();
        base.rotate_left(at);
        IndexSequence { base }
    }
}

/// `⋯ ⊗ c_2 ⊗ c_1`, finitely supported. Only nonzero entries are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqElem {
    entries: BTreeMap<usize, ElementaryElement>,
}

impl SeqElem {
    /// `(0)_𝐢`
    pub fn zero() -> Self {
        SeqElem::default()
    }

    /// Builds an element from `(position, parts)` pairs, as in
    /// [`ElementaryElement::of_index`].
    pub fn from_parts(
        datum: &CartanDatum,
        seq: &IndexSequence,
        items: Vec<(usize, Vec<u32>)>,
    ) -> Self {
        let mut out = SeqElem::zero();
        for (k, parts) in items {
            out.set(k, ElementaryElement::of_index(datum, seq.at(k), parts));
        }
        out
    }

    pub fn get(&self, k: usize) -> Option<&ElementaryElement> {
        self.entries.get(&k)
    }

    /// Stores `c_k`, dropping it when trivial.
    pub fn set(&mut self, k: usize, c: ElementaryElement) {
        assert!(k >= 1, "positions start at 1");
        if c.is_trivial() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, c);
        }
    }

    /// Largest position with a nonzero entry, or 0.
    pub fn support(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &ElementaryElement)> {
        self.entries.iter().map(|(&k, c)| (k, c))
    }

    fn size(&self, k: usize) -> i64 {
        self.entries.get(&k).map_or(0, |c| c.size())
    }

    /// Drops `c_1` and moves every other entry one position down.
    pub fn shift_down(&self) -> (SeqElem, Option<ElementaryElement>) {
        let mut rest = SeqElem::zero();
        let mut first = None;
        for (&k, c) in &self.entries {
            if k == 1 {
                first = Some(c.clone());
            } else {
                rest.entries.insert(k - 1, c.clone());
            }
        }
        (rest, first)
    }
}

/// `B_𝐢` over the given datum.
#[derive(Debug, Clone)]
pub struct SequenceCrystal {
    datum: Arc<CartanDatum>,
    seq: IndexSequence,
}

impl SequenceCrystal {
    pub fn new(datum: Arc<CartanDatum>, seq: IndexSequence) -> Self {
        SequenceCrystal { datum, seq }
    }

    pub fn seq(&self) -> &IndexSequence {
        &self.seq
    }

    pub fn datum_arc(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    fn zero_at(&self, k: usize) -> ElementaryElement {
        ElementaryElement::zero(&self.datum, self.seq.at(k))
    }

    fn entry(&self, b: &SeqElem, k: usize) -> ElementaryElement {
        b.get(k).cloned().unwrap_or_else(|| self.zero_at(k))
    }

    /// `(k, Σ_{p>k} |c_p| a_{i,i_p})` for every `k <= support` with
    /// `i_k = i`, from the top position downwards.
    fn suffix_sums(&self, i: usize, b: &SeqElem) -> Vec<(usize, i64)> {
        let d = &*self.datum;
        let mut acc = 0;
        let mut out = Vec::new();
        for k in (1..=b.support()).rev() {
            if self.seq.at(k) == i {
                out.push((k, acc));
            }
            acc += b.size(k) * d.a(i, self.seq.at(k));
        }
        out
    }

    /// Real `i`: the candidates `(k, c_k + Σ_{p>k} |c_p| a_{i,i_p})`,
    /// including the first unused position above the support with value 0.
    fn real_values(&self, i: usize, b: &SeqElem) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = self
            .suffix_sums(i, b)
            .into_iter()
            .map(|(k, s)| (k, b.size(k) + s))
            .collect();
        out.push((self.seq.next_with(i, b.support() + 1), 0));
        out
    }

    /// Imaginary `i`: the smallest `k` with `i_k = i` and
    /// `Σ_{p>k} |c_p| a_{i,i_p} = 0`.
    fn imaginary_slot(&self, i: usize, b: &SeqElem) -> (usize, Vec<(usize, i64)>) {
        let sums = self.suffix_sums(i, b);
        let r = sums
            .iter()
            .rev()
            .find(|&&(_, s)| s == 0)
            .map(|&(k, _)| k)
            .unwrap_or_else(|| self.seq.next_with(i, b.support() + 1));
        (r, sums)
    }
}

impl Crystal for SequenceCrystal {
    type Elem = SeqElem;

    fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    fn wt(&self, b: &SeqElem) -> Weight {
        let mut w = Weight::zero();
        for (k, c) in b.entries() {
            w = w.add_root(self.seq.at(k), -c.size());
        }
        w
    }

    fn eps(&self, i: usize, b: &SeqElem) -> ExtInt {
        if self.datum.is_real(i) {
            let best = self.real_values(i, b).into_iter().map(|(_, v)| v).max();
            ExtInt::Fin(best.expect("virtual candidate"))
        } else {
            ExtInt::Fin(0)
        }
    }

    fn phi(&self, i: usize, b: &SeqElem) -> ExtInt {
        let d = &*self.datum;
        if d.is_real(i) {
            // max over k of -c_k - Σ_{p<k} |c_p| a_{i,i_p}
            let mut acc = 0;
            let mut best = i64::MIN;
            for k in 1..=b.support() {
                if self.seq.at(k) == i {
                    best = best.max(-b.size(k) - acc);
                }
                acc += b.size(k) * d.a(i, self.seq.at(k));
            }
            ExtInt::Fin(best.max(-acc))
        } else {
            let total: i64 = b
                .entries()
                .map(|(k, c)| c.size() * d.a(i, self.seq.at(k)))
                .sum();
            ExtInt::Fin(-total)
        }
    }

    fn f(&self, op: Op, b: &SeqElem) -> Option<SeqElem> {
        let i = op.index();
        let t = if self.datum.is_real(i) {
            let vals = self.real_values(i, b);
            let best = vals.iter().map(|&(_, v)| v).max()?;
            vals.iter()
                .filter(|&&(_, v)| v == best)
                .map(|&(k, _)| k)
                .min()?
        } else {
            self.imaginary_slot(i, b).0
        };
        let c = elem_f(&self.datum, op, &self.entry(b, t))?;
        let mut out = b.clone();
        out.set(t, c);
        Some(out)
    }

    fn e(&self, op: Op, b: &SeqElem) -> Option<SeqElem> {
        let i = op.index();
        let d = &*self.datum;
        let s = if d.is_real(i) {
            let vals = self.real_values(i, b);
            let best = vals.iter().map(|&(_, v)| v).max()?;
            if best <= 0 {
                return None;
            }
            vals.iter()
                .filter(|&&(_, v)| v == best)
                .map(|&(k, _)| k)
                .max()?
        } else {
            let (r, sums) = self.imaginary_slot(i, b);
            // every lower slot for i must sit strictly below l a_ii
            let bar = op.l_i64() * d.a(i, i);
            if sums.iter().any(|&(k, s)| k < r && s >= bar) {
                return None;
            }
            r
        };
        let c = elem_e(d, op, &self.entry(b, s))?;
        let mut out = b.clone();
        out.set(s, c);
        Some(out)
    }

    fn render(&self, b: &SeqElem) -> String {
        let top = b.support().max(1);
        let parts: Vec<String> = (1..=top)
            .rev()
            .map(|k| self.entry(b, k).render(&self.datum))
            .collect();
        format!("⋯⊗{}", parts.join("⊗"))
    }
}

/// `B(∞)` inside `B_𝐢`, explored to the given root height.
pub fn build_binfty(
    datum: Arc<CartanDatum>,
    seq: IndexSequence,
    budget: u32,
) -> Result<(SequenceCrystal, LabelledGraph<SeqElem>)> {
    let s = SequenceCrystal::new(datum, seq);
    let g = explore(&s, &[SeqElem::zero()], budget)?;
    Ok((s, g))
}

/// Outcome of checking `ψ_i : B(∞) → B(∞) ⊗ B_i`.
#[derive(Debug, Clone, Serialize)]
pub struct PsiReport {
    pub index: String,
    pub nodes: usize,
    pub morphism: MorphismReport,
    /// Images whose left factor is not in the explored `B(∞)` window.
    pub left_outside: Vec<String>,
    /// `(0)_𝐢 ↦ (0)_𝐢′ ⊗ (0)_i`
    pub unit_ok: bool,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.morphism.is_strict_embedding() && self.left_outside.is_empty() && self.unit_ok
    }
}

impl fmt::Display for PsiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "psi_{}: {} nodes, {} violations, injective {}, {} left factors outside B(inf)",
            self.index,
            self.nodes,
            self.morphism.report.violations.len(),
            self.morphism.injective,
            self.left_outside.len()
        )
    }
}

/// Checks `ψ_i` on the height-`budget` window of `B(∞)`, realized over the
/// rotation of `seq` starting at `i`.
pub fn psi_embedding(
    datum: Arc<CartanDatum>,
    seq: &IndexSequence,
    i: usize,
    budget: u32,
) -> Result<PsiReport> {
    let src_seq = seq.starting_with(i);
    let rest_seq = src_seq.shifted();
    let (src, g) = build_binfty(datum.clone(), src_seq, budget)?;
    let (rest, g_rest) = build_binfty(datum.clone(), rest_seq, budget)?;
    let target = Tensor::new(rest.clone(), Elementary::b(datum.clone(), i));

    let map = |b: &SeqElem| {
        let (left, first) = b.shift_down();
        Some(TensorElem::new(
            left,
            first.unwrap_or_else(|| ElementaryElement::zero(&datum, i)),
        ))
    };
    let unit_ok = map(&SeqElem::zero())
        == Some(TensorElem::new(
            SeqElem::zero(),
            ElementaryElement::zero(&datum, i),
        ));
    let morphism = check_strict_morphism(map, &src, &g, &target, None);
    let left_outside = g
        .elems()
        .filter_map(|b| {
            let (left, _) = b.shift_down();
            (!g_rest.contains(&left)).then(|| rest.render(&left))
        })
        .collect();
    Ok(PsiReport {
        index: datum.id(i).to_string(),
        nodes: g.len(),
        morphism,
        left_outside,
        unit_ok,
    })
}

/// Compares the `B(∞)` windows realized over two index sequences.
pub fn sequence_independence(
    datum: Arc<CartanDatum>,
    first: IndexSequence,
    second: IndexSequence,
    budget: u32,
) -> Result<IsoReport> {
    let (_, ga) = build_binfty(datum.clone(), first, budget)?;
    let (_, gb) = build_binfty(datum, second, budget)?;
    Ok(sync_isomorphism(&ga, &gb, ga.roots()[0], gb.roots()[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_axioms;

    fn datum(m: Vec<Vec<i64>>, r: Vec<i64>) -> Arc<CartanDatum> {
        Arc::new(CartanDatum::new(m, r).unwrap())
    }

    #[test]
    fn sequence_validation() {
        let d = datum(vec![vec![2, -1], vec![-1, 2]], vec![1, 1]);
        assert_eq!(
            IndexSequence::new(&d, vec![]),
            Err(CrystalError::EmptySequence)
        );
        assert_eq!(
            IndexSequence::new(&d, vec![0, 0]),
            Err(CrystalError::IncompleteSequence("2".into()))
        );
        let s = IndexSequence::new(&d, vec![1, 0]).unwrap();
        assert_eq!((s.at(1), s.at(2), s.at(3)), (1, 0, 1));
        assert_eq!(s.starting_with(0).base(), &[0, 1]);
    }

    #[test]
    fn a1_binfty_is_a_chain() {
        let d = datum(vec![vec![2]], vec![1]);
        let (s, g) = build_binfty(d.clone(), IndexSequence::standard(&d), 4).unwrap();
        assert_eq!(g.len(), 5);
        assert!(g.elems().all(|b| b.support() <= 1));
        assert!(check_axioms(&s, &g).passed());
    }

    #[test]
    fn imaginary_rank_one_grows_compositions() {
        let d = datum(vec![vec![-2]], vec![1]);
        let (s, g) = build_binfty(d.clone(), IndexSequence::standard(&d), 3).unwrap();
        assert_eq!(g.len(), 1 + 1 + 2 + 4);
        let op = |l| Op::new(&d, 0, l).unwrap();
        let b1 = s.f(op(1), &SeqElem::zero()).unwrap();
        let b21 = s.f(op(2), &b1).unwrap();
        assert_eq!(b21, SeqElem::from_parts(&d, s.seq(), vec![(1, vec![2, 1])]));
        assert_eq!(s.e(op(2), &b21), Some(b1.clone()));
        assert_eq!(s.e(op(1), &b21), None);
    }

    #[test]
    fn real_e_needs_positive_entry() {
        let d = datum(vec![vec![2, -1], vec![-1, 2]], vec![1, 1]);
        let seq = IndexSequence::standard(&d);
        let s = SequenceCrystal::new(d.clone(), seq.clone());
        let b = SeqElem::from_parts(&d, &seq, vec![(2, vec![1])]);
        let e1 = Op::new(&d, 0, 1).unwrap();
        assert_eq!(s.eps(0, &b), ExtInt::Fin(0));
        assert_eq!(s.e(e1, &b), None);
        let e2 = Op::new(&d, 1, 1).unwrap();
        assert_eq!(s.e(e2, &b), Some(SeqElem::zero()));
    }

    #[test]
    fn binfty_axioms_mixed() {
        let d = datum(
            vec![vec![2, -1, 0], vec![-1, -2, -1], vec![0, -1, 0]],
            vec![1, 1, 1],
        );
        let (s, g) = build_binfty(d.clone(), IndexSequence::standard(&d), 4).unwrap();
        let r = check_axioms(&s, &g);
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn render_elides_high_zeros() {
        let d = datum(vec![vec![2, -1], vec![-1, 2]], vec![1, 1]);
        let seq = IndexSequence::standard(&d);
        let s = SequenceCrystal::new(d.clone(), seq.clone());
        assert_eq!(s.render(&SeqElem::zero()), "⋯⊗(0)");
        let b = SeqElem::from_parts(&d, &seq, vec![(2, vec![1])]);
        assert_eq!(s.render(&b), "⋯⊗(1)⊗(0)");
    }

    #[test]
    fn psi_on_a2() {
        let d = datum(vec![vec![2, -1], vec![-1, 2]], vec![1, 1]);
        for i in 0..2 {
            let r = psi_embedding(d.clone(), &IndexSequence::standard(&d), i, 3).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
