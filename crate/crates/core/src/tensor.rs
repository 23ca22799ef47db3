//! Tensor products of crystals and the re-bracketing isomorphism.
//!
//! `wt(b1 ⊗ b2) = wt(b1) + wt(b2)`,
//! `ε_i = max(ε_i(b1), ε_i(b2) - <h_i, wt(b1)>)`,
//! `φ_i = max(φ_i(b1) + <h_i, wt(b2)>, φ_i(b2))`.
//!
//! Operators act on the left factor when `φ_i(b1)` beats `ε_i(b2)` and on
//! the right factor otherwise; for imaginary `ẽ_il` there is a band
//! `ε_i(b2) < φ_i(b1) <= ε_i(b2) - l a_ii` in which the result is null.

use std::fmt;
use std::sync::Arc;

use crate::cartan::{CartanDatum, Weight};
use crate::check::{check_strict_morphism, MorphismReport};
use crate::crystal::{Crystal, ExtInt, Op};
use crate::elementary::{Elementary, ElementaryElement};
use crate::error::Result;
use crate::graph::{close_component, LabelledGraph};

/// Which factor an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Null,
}

pub fn tensor_eps(
    datum: &CartanDatum,
    i: usize,
    eps1: ExtInt,
    eps2: ExtInt,
    wt1: &Weight,
) -> ExtInt {
    eps1.max(eps2 - datum.pairing(i, wt1))
}

pub fn tensor_phi(
    datum: &CartanDatum,
    i: usize,
    phi1: ExtInt,
    phi2: ExtInt,
    wt2: &Weight,
) -> ExtInt {
    (phi1 + datum.pairing(i, wt2)).max(phi2)
}

/// Side for `f̃_il(b1 ⊗ b2)`. `phi_total` is `φ_i(b1 ⊗ b2)`; when it is
/// `-∞` the result is null before any comparison.
pub fn f_side(phi1: ExtInt, eps2: ExtInt, phi_total: ExtInt) -> Side {
    if phi_total.is_neg_inf() {
        Side::Null
    } else if phi1 > eps2 {
        Side::Left
    } else {
        Side::Right
    }
}

/// Side for `ẽ_il(b1 ⊗ b2)`.
pub fn e_side(datum: &CartanDatum, op: Op, phi1: ExtInt, eps2: ExtInt, phi_total: ExtInt) -> Side {
    if phi_total.is_neg_inf() {
        return Side::Null;
    }
    let i = op.index();
    if datum.is_real(i) {
        if phi1 >= eps2 {
            Side::Left
        } else {
            Side::Right
        }
    } else if phi1 > eps2 - op.l_i64() * datum.a(i, i) {
        Side::Left
    } else if phi1 > eps2 {
        Side::Null
    } else {
        Side::Right
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElem<L, R> {
    pub left: L,
    pub right: R,
}

impl<L, R> TensorElem<L, R> {
    pub fn new(left: L, right: R) -> Self {
        TensorElem { left, right }
    }
}

/// `A ⊗ B` for any two crystals over the same datum.
#[derive(Debug, Clone)]
pub struct Tensor<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Crystal, B: Crystal> Tensor<A, B> {
    pub fn new(left: A, right: B) -> Self {
        debug_assert_eq!(
            left.datum(),
            right.datum(),
            "tensor factors must share a datum"
        );
        Tensor { left, right }
    }
}

impl<A: Crystal, B: Crystal> Crystal for Tensor<A, B> {
    type Elem = TensorElem<A::Elem, B::Elem>;

    fn datum(&self) -> &CartanDatum {
        self.left.datum()
    }

    fn wt(&self, b: &Self::Elem) -> Weight {
        &self.left.wt(&b.left) + &self.right.wt(&b.right)
    }

    fn eps(&self, i: usize, b: &Self::Elem) -> ExtInt {
        tensor_eps(
            self.datum(),
            i,
            self.left.eps(i, &b.left),
            self.right.eps(i, &b.right),
            &self.left.wt(&b.left),
        )
    }

    fn phi(&self, i: usize, b: &Self::Elem) -> ExtInt {
        tensor_phi(
            self.datum(),
            i,
            self.left.phi(i, &b.left),
            self.right.phi(i, &b.right),
            &self.right.wt(&b.right),
        )
    }

    fn e(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        let i = op.index();
        let phi1 = self.left.phi(i, &b.left);
        let eps2 = self.right.eps(i, &b.right);
        match e_side(self.datum(), op, phi1, eps2, self.phi(i, b)) {
            Side::Left => Some(TensorElem::new(self.left.e(op, &b.left)?, b.right.clone())),
            Side::Right => Some(TensorElem::new(b.left.clone(), self.right.e(op, &b.right)?)),
            Side::Null => None,
        }
    }

    fn f(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        let i = op.index();
        let phi1 = self.left.phi(i, &b.left);
        let eps2 = self.right.eps(i, &b.right);
        match f_side(phi1, eps2, self.phi(i, b)) {
            Side::Left => Some(TensorElem::new(self.left.f(op, &b.left)?, b.right.clone())),
            Side::Right => Some(TensorElem::new(b.left.clone(), self.right.f(op, &b.right)?)),
            Side::Null => None,
        }
    }

    fn render(&self, b: &Self::Elem) -> String {
        format!(
            "{} ⊗ {}",
            self.left.render(&b.left),
            self.right.render(&b.right)
        )
    }
}

/// An iterated tensor product `((F1 ⊗ F2) ⊗ F3) ⊗ ...` of elementary
/// crystals whose length is only known at run time.
#[derive(Debug, Clone)]
pub struct FactorTensor {
    datum: Arc<CartanDatum>,
    factors: Vec<Elementary>,
}

#[derive(Clone)]
struct PrefixStats {
    wt: Vec<Weight>,
    eps: Vec<ExtInt>,
    phi: Vec<ExtInt>,
}

impl FactorTensor {
    /// # Panics
    /// If `factors` is empty.
    pub fn new(datum: Arc<CartanDatum>, factors: Vec<Elementary>) -> Self {
        assert!(!factors.is_empty(), "a tensor needs at least one factor");
        FactorTensor { datum, factors }
    }

    pub fn factors(&self) -> &[Elementary] {
        &self.factors
    }

    /// The tensor of the factors' highest elements.
    pub fn highest(&self) -> Vec<ElementaryElement> {
        self.factors.iter().map(|f| f.highest()).collect()
    }

    /// Stats of every left prefix `x[0..k]`, `k = 1..=n`, at index `i`.
    fn prefixes(&self, i: usize, x: &[ElementaryElement]) -> PrefixStats {
        let d = &*self.datum;
        let mut st = PrefixStats {
            wt: Vec::with_capacity(x.len()),
            eps: Vec::with_capacity(x.len()),
            phi: Vec::with_capacity(x.len()),
        };
        for (k, (fac, b)) in self.factors.iter().zip(x).enumerate() {
            let (w, e, p) = (fac.wt(b), fac.eps(i, b), fac.phi(i, b));
            if k == 0 {
                st.wt.push(w);
                st.eps.push(e);
                st.phi.push(p);
            } else {
                let (pw, pe, pp) = (&st.wt[k - 1], st.eps[k - 1], st.phi[k - 1]);
                let eps = tensor_eps(d, i, pe, e, pw);
                let phi = tensor_phi(d, i, pp, p, &w);
                st.wt.push(pw + &w);
                st.eps.push(eps);
                st.phi.push(phi);
            }
        }
        st
    }

    fn act(&self, op: Op, x: &[ElementaryElement], raise: bool) -> Option<Vec<ElementaryElement>> {
        assert_eq!(
            x.len(),
            self.factors.len(),
            "element length must match factor count"
        );
        let i = op.index();
        let st = self.prefixes(i, x);
        let mut k = x.len() - 1;
        // walk from the outermost split towards the factor that acts
        while k > 0 {
            let phi1 = st.phi[k - 1];
            let eps2 = self.factors[k].eps(i, &x[k]);
            let side = if raise {
                e_side(&self.datum, op, phi1, eps2, st.phi[k])
            } else {
                f_side(phi1, eps2, st.phi[k])
            };
            match side {
                Side::Null => return None,
                Side::Right => break,
                Side::Left => k -= 1,
            }
        }
        let fac = &self.factors[k];
        let next = if raise {
            fac.e(op, &x[k])
        } else {
            fac.f(op, &x[k])
        }?;
        let mut out = x.to_vec();
        out[k] = next;
        Some(out)
    }
}

impl Crystal for FactorTensor {
    type Elem = Vec<ElementaryElement>;

    fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    fn wt(&self, b: &Self::Elem) -> Weight {
        self.factors
            .iter()
            .zip(b)
            .fold(Weight::zero(), |acc, (f, x)| &acc + &f.wt(x))
    }

    fn eps(&self, i: usize, b: &Self::Elem) -> ExtInt {
        *self.prefixes(i, b).eps.last().expect("nonempty")
    }

    fn phi(&self, i: usize, b: &Self::Elem) -> ExtInt {
        *self.prefixes(i, b).phi.last().expect("nonempty")
    }

    fn e(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        self.act(op, b, true)
    }

    fn f(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        self.act(op, b, false)
    }

    fn render(&self, b: &Self::Elem) -> String {
        b.iter()
            .map(|x| x.render(&self.datum))
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }
}

/// Outcome of comparing `(A ⊗ B) ⊗ C` with `A ⊗ (B ⊗ C)` around a seed.
#[derive(Debug, Clone)]
pub struct AssocReport {
    pub left_nodes: usize,
    pub right_nodes: usize,
    /// The re-bracketing is a bijection between the two windows.
    pub bijective: bool,
    pub morphism: MorphismReport,
}

impl AssocReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.morphism.is_strict_embedding()
    }
}

impl fmt::Display for AssocReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} / {} nodes, bijective {}, {} violations",
            self.left_nodes,
            self.right_nodes,
            self.bijective,
            self.morphism.report.violations.len()
        )
    }
}

/// Checks that `(b1 ⊗ b2) ⊗ b3 ↦ b1 ⊗ (b2 ⊗ b3)` is a crystal isomorphism
/// between the connected windows of both bracketings around the seed.
pub fn assoc_isomorphism<A, B, C>(
    a: &A,
    b: &B,
    c: &C,
    seed: (A::Elem, B::Elem, C::Elem),
    budget: u32,
) -> Result<AssocReport>
where
    A: Crystal,
    B: Crystal,
    C: Crystal,
{
    let lhs = Tensor::new(Tensor::new(a, b), c);
    let rhs = Tensor::new(a, Tensor::new(b, c));
    let (x, y, z) = seed;
    let seed_l = TensorElem::new(TensorElem::new(x.clone(), y.clone()), z.clone());
    let seed_r = TensorElem::new(x, TensorElem::new(y, z));
    let gl: LabelledGraph<_> = close_component(&lhs, &seed_l, budget)?;
    let gr = close_component(&rhs, &seed_r, budget)?;

    let rebracket = |t: &TensorElem<TensorElem<A::Elem, B::Elem>, C::Elem>| {
        Some(TensorElem::new(
            t.left.left.clone(),
            TensorElem::new(t.left.right.clone(), t.right.clone()),
        ))
    };
    let bijective = gl.len() == gr.len()
        && gl
            .elems()
            .all(|t| rebracket(t).is_some_and(|u| gr.contains(&u)));
    let morphism = check_strict_morphism(rebracket, &lhs, &gl, &rhs, Some(&gr));
    Ok(AssocReport {
        left_nodes: gl.len(),
        right_nodes: gr.len(),
        bijective,
        morphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::Elementary;

    fn a1() -> Arc<CartanDatum> {
        Arc::new(CartanDatum::new(vec![vec![2]], vec![1]).unwrap())
    }

    fn imag() -> Arc<CartanDatum> {
        Arc::new(CartanDatum::new(vec![vec![-2]], vec![1]).unwrap())
    }

    #[test]
    fn real_stats_example() {
        let d = a1();
        let t = Tensor::new(Elementary::b(d.clone(), 0), Elementary::b(d.clone(), 0));
        let x = TensorElem::new(ElementaryElement::real(0, 1), ElementaryElement::real(0, 0));
        assert_eq!(t.eps(0, &x), ExtInt::Fin(2));
    }

    #[test]
    fn minus_infinity_factors() {
        let d = a1();
        let lam = Weight::fundamental(0);
        let t = Tensor::new(
            Elementary::b(d.clone(), 0),
            Elementary::t(d.clone(), lam.clone()),
        );
        let x = TensorElem::new(
            ElementaryElement::real(0, 2),
            ElementaryElement::T(lam.clone()),
        );
        assert_eq!(t.eps(0, &x), ExtInt::Fin(2));
        let t2 = Tensor::new(
            Elementary::t(d.clone(), lam.clone()),
            Elementary::b(d.clone(), 0),
        );
        let y = TensorElem::new(ElementaryElement::T(lam), ElementaryElement::real(0, 2));
        assert_eq!(t2.phi(0, &y), ExtInt::Fin(-2));
    }

    #[test]
    fn real_f_acts_right_when_phi_small() {
        assert_eq!(
            f_side(ExtInt::Fin(-1), ExtInt::Fin(0), ExtInt::Fin(0)),
            Side::Right
        );
        assert_eq!(
            f_side(ExtInt::Fin(1), ExtInt::Fin(0), ExtInt::Fin(1)),
            Side::Left
        );
    }

    #[test]
    fn imaginary_cutoff_against_c() {
        let d = imag();
        let t = Tensor::new(Elementary::b(d.clone(), 0), Elementary::c(d.clone()));
        let op = Op::new(&d, 0, 1).unwrap();
        let top = TensorElem::new(ElementaryElement::comp(0, vec![]), ElementaryElement::C);
        assert_eq!(t.f(op, &top), None);
        let x = TensorElem::new(ElementaryElement::comp(0, vec![1]), ElementaryElement::C);
        assert_eq!(
            t.f(op, &x),
            Some(TensorElem::new(
                ElementaryElement::comp(0, vec![1, 1]),
                ElementaryElement::C
            ))
        );
    }

    #[test]
    fn imaginary_e_band() {
        let d = imag();
        let op = Op::new(&d, 0, 1).unwrap();
        let fin = ExtInt::Fin;
        assert_eq!(e_side(&d, op, fin(1), fin(0), fin(1)), Side::Null);
        assert_eq!(e_side(&d, op, fin(3), fin(0), fin(3)), Side::Left);
        assert_eq!(e_side(&d, op, fin(0), fin(0), fin(0)), Side::Right);
        assert_eq!(e_side(&d, op, fin(2), fin(0), fin(2)), Side::Null);
    }

    #[test]
    fn isotropic_has_no_band() {
        let d = CartanDatum::new(vec![vec![0]], vec![1]).unwrap();
        let fin = ExtInt::Fin;
        for l in 1..4 {
            let op = Op::new(&d, 0, l).unwrap();
            assert_eq!(e_side(&d, op, fin(1), fin(0), fin(1)), Side::Left);
            assert_eq!(e_side(&d, op, fin(0), fin(0), fin(0)), Side::Right);
        }
    }

    #[test]
    fn neg_inf_routes_to_null() {
        let d = a1();
        let op = Op::new(&d, 0, 1).unwrap();
        let n = ExtInt::NegInf;
        assert_eq!(f_side(n, n, n), Side::Null);
        assert_eq!(e_side(&d, op, n, n, n), Side::Null);
    }

    #[test]
    fn factor_tensor_matches_binary() {
        let d = Arc::new(CartanDatum::new(vec![vec![2, -1], vec![-1, -2]], vec![1, 1]).unwrap());
        let bin = Tensor::new(
            Tensor::new(Elementary::b(d.clone(), 0), Elementary::b(d.clone(), 1)),
            Elementary::b(d.clone(), 0),
        );
        let dynamic = FactorTensor::new(
            d.clone(),
            vec![
                Elementary::b(d.clone(), 0),
                Elementary::b(d.clone(), 1),
                Elementary::b(d.clone(), 0),
            ],
        );
        let g = crate::graph::explore(&dynamic, &[dynamic.highest()], 4).unwrap();
        for n in g.nodes() {
            let x = &n.elem;
            let b = TensorElem::new(TensorElem::new(x[0].clone(), x[1].clone()), x[2].clone());
            assert_eq!(bin.wt(&b), n.wt);
            for i in 0..2 {
                assert_eq!(bin.eps(i, &b), n.eps[i]);
                assert_eq!(bin.phi(i, &b), n.phi[i]);
            }
            for op in Op::all_up_to(&d, 3) {
                let flat = |t: TensorElem<
                    TensorElem<ElementaryElement, ElementaryElement>,
                    ElementaryElement,
                >| { vec![t.left.left, t.left.right, t.right] };
                assert_eq!(bin.f(op, &b).map(flat), dynamic.f(op, x));
                assert_eq!(bin.e(op, &b).map(flat), dynamic.e(op, x));
            }
        }
    }
}
