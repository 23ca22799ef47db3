//! Elementary crystals `B_i` in their three flavours, and the one-element
//! crystals `T_λ` and `C`.

use std::sync::Arc;

use crate::cartan::{CartanDatum, IndexClass, Weight};
use crate::crystal::{Crystal, ExtInt, Op};

/// An element of `B_i`, `T_λ` or `C`.
///
/// `Part` is kept weakly increasing so that `c ∪ l` has a single
/// representative. `Comp` keeps its literal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementaryElement {
    Real { index: usize, l: u32 },
    Comp { index: usize, parts: Vec<u32> },
    Part { index: usize, parts: Vec<u32> },
    T(Weight),
    C,
}

impl ElementaryElement {
    /// `(0)_i`, in the flavour dictated by the class of `i`.
    pub fn zero(datum: &CartanDatum, i: usize) -> Self {
        match datum.class(i) {
            IndexClass::Real => ElementaryElement::Real { index: i, l: 0 },
            IndexClass::ImaginaryNonIsotropic => ElementaryElement::Comp {
                index: i,
                parts: Vec::new(),
            },
            IndexClass::Isotropic => ElementaryElement::Part {
                index: i,
                parts: Vec::new(),
            },
        }
    }

    pub fn real(index: usize, l: u32) -> Self {
        ElementaryElement::Real { index, l }
    }

    /// # Panics
    /// If a part is zero.
    pub fn comp(index: usize, parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p >= 1),
            "composition parts must be positive"
        );
        ElementaryElement::Comp { index, parts }
    }

    /// Sorts `parts` into canonical order.
    ///
    /// # Panics
    /// If a part is zero.
    pub fn part(index: usize, mut parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p >= 1),
            "partition parts must be positive"
        );
        parts.sort_unstable();
        ElementaryElement::Part { index, parts }
    }

    /// Builds an element of `B_i` from a list of parts: a single entry `[l]`
    /// (or `[]`) for real `i`, a composition or a partition otherwise.
    pub fn of_index(datum: &CartanDatum, i: usize, parts: Vec<u32>) -> Self {
        match datum.class(i) {
            IndexClass::Real => {
                assert!(parts.len() <= 1, "real entries are a single integer");
                Self::real(i, parts.first().copied().unwrap_or(0))
            }
            IndexClass::ImaginaryNonIsotropic => Self::comp(i, parts),
            IndexClass::Isotropic => Self::part(i, parts),
        }
    }

    pub fn home(&self) -> Option<usize> {
        match self {
            ElementaryElement::Real { index, .. }
            | ElementaryElement::Comp { index, .. }
            | ElementaryElement::Part { index, .. } => Some(*index),
            _ => None,
        }
    }

    /// `|c|`; for real entries the integer itself.
    pub fn size(&self) -> i64 {
        match self {
            ElementaryElement::Real { l, .. } => *l as i64,
            ElementaryElement::Comp { parts, .. } | ElementaryElement::Part { parts, .. } => {
                parts.iter().map(|&p| p as i64).sum()
            }
            _ => 0,
        }
    }

    /// `m_l(c)`, the multiplicity of `l` as a part.
    pub fn multiplicity(&self, l: u32) -> usize {
        match self {
            ElementaryElement::Comp { parts, .. } | ElementaryElement::Part { parts, .. } => {
                parts.iter().filter(|&&p| p == l).count()
            }
            _ => 0,
        }
    }

    /// True for `(0)_i`.
    pub fn is_trivial(&self) -> bool {
        match self {
            ElementaryElement::Real { l, .. } => *l == 0,
            ElementaryElement::Comp { parts, .. } | ElementaryElement::Part { parts, .. } => {
                parts.is_empty()
            }
            _ => false,
        }
    }

    pub fn render(&self, datum: &CartanDatum) -> String {
        let list = |parts: &[u32]| {
            if parts.is_empty() {
                "(0)".to_string()
            } else {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                format!("({})", s.join(","))
            }
        };
        match self {
            ElementaryElement::Real { l, .. } => format!("({l})"),
            ElementaryElement::Comp { parts, .. } | ElementaryElement::Part { parts, .. } => {
                list(parts)
            }
            ElementaryElement::T(w) => format!("t[{}]", datum.render_weight(w)),
            ElementaryElement::C => "c".to_string(),
        }
    }
}

/// `(wt, ε, φ)` of an elementary element.
pub fn elem_stats(
    datum: &CartanDatum,
    x: &ElementaryElement,
) -> (Weight, Vec<ExtInt>, Vec<ExtInt>) {
    let eps = datum.indices().map(|i| elem_eps(datum, i, x)).collect();
    let phi = datum.indices().map(|i| elem_phi(datum, i, x)).collect();
    (elem_wt(x), eps, phi)
}

pub fn elem_wt(x: &ElementaryElement) -> Weight {
    match x {
        ElementaryElement::T(w) => w.clone(),
        ElementaryElement::C => Weight::zero(),
        other => match other.home() {
            Some(i) => Weight::simple_root(i).scale(-other.size()),
            None => Weight::zero(),
        },
    }
}

pub fn elem_eps(_datum: &CartanDatum, i: usize, x: &ElementaryElement) -> ExtInt {
    match x {
        ElementaryElement::T(_) => ExtInt::NegInf,
        ElementaryElement::C => ExtInt::Fin(0),
        ElementaryElement::Real { index, l } if *index == i => ExtInt::Fin(*l as i64),
        ElementaryElement::Comp { index, .. } | ElementaryElement::Part { index, .. }
            if *index == i =>
        {
            ExtInt::Fin(0)
        }
        _ => ExtInt::NegInf,
    }
}

pub fn elem_phi(datum: &CartanDatum, i: usize, x: &ElementaryElement) -> ExtInt {
    match x {
        ElementaryElement::T(_) => ExtInt::NegInf,
        ElementaryElement::C => ExtInt::Fin(0),
        ElementaryElement::Real { index, l } if *index == i => ExtInt::Fin(-(*l as i64)),
        ElementaryElement::Comp { index, .. } if *index == i => {
            ExtInt::Fin(-x.size() * datum.a(i, i))
        }
        ElementaryElement::Part { index, .. } if *index == i => ExtInt::Fin(0),
        _ => ExtInt::NegInf,
    }
}

pub fn elem_f(_datum: &CartanDatum, op: Op, x: &ElementaryElement) -> Option<ElementaryElement> {
    let (i, l) = (op.index(), op.l());
    match x {
        ElementaryElement::Real { index, l: n } if *index == i => {
            Some(ElementaryElement::Real { index: i, l: n + 1 })
        }
        ElementaryElement::Comp { index, parts } if *index == i => {
            let mut next = Vec::with_capacity(parts.len() + 1);
            next.push(l);
            next.extend_from_slice(parts);
            Some(ElementaryElement::Comp {
                index: i,
                parts: next,
            })
        }
        ElementaryElement::Part { index, parts } if *index == i => {
            let mut next = parts.clone();
            let at = next.partition_point(|&p| p <= l);
            next.insert(at, l);
            Some(ElementaryElement::Part {
                index: i,
                parts: next,
            })
        }
        _ => None,
    }
}

pub fn elem_e(_datum: &CartanDatum, op: Op, x: &ElementaryElement) -> Option<ElementaryElement> {
    let (i, l) = (op.index(), op.l());
    match x {
        ElementaryElement::Real { index, l: n } if *index == i => n
            .checked_sub(1)
            .map(|m| ElementaryElement::Real { index: i, l: m }),
        ElementaryElement::Comp { index, parts } if *index == i => match parts.split_first() {
            Some((&head, rest)) if head == l => Some(ElementaryElement::Comp {
                index: i,
                parts: rest.to_vec(),
            }),
            _ => None,
        },
        ElementaryElement::Part { index, parts } if *index == i => {
            let at = parts.iter().position(|&p| p == l)?;
            let mut next = parts.clone();
            next.remove(at);
            Some(ElementaryElement::Part {
                index: i,
                parts: next,
            })
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryKind {
    /// `B_i`
    B(usize),
    /// `T_λ`
    T(Weight),
    /// `C`
    C,
}

/// One of `B_i`, `T_λ`, `C` over a fixed datum.
#[derive(Debug, Clone)]
pub struct Elementary {
    datum: Arc<CartanDatum>,
    kind: ElementaryKind,
}

impl Elementary {
    pub fn b(datum: Arc<CartanDatum>, i: usize) -> Self {
        assert!(i < datum.rank(), "index out of range");
        Elementary {
            datum,
            kind: ElementaryKind::B(i),
        }
    }

    pub fn t(datum: Arc<CartanDatum>, lambda: Weight) -> Self {
        Elementary {
            datum,
            kind: ElementaryKind::T(lambda),
        }
    }

    pub fn c(datum: Arc<CartanDatum>) -> Self {
        Elementary {
            datum,
            kind: ElementaryKind::C,
        }
    }

    pub fn kind(&self) -> &ElementaryKind {
        &self.kind
    }

    pub fn datum_arc(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    /// `(0)_i`, `t_λ` or `c`.
    pub fn highest(&self) -> ElementaryElement {
        match &self.kind {
            ElementaryKind::B(i) => ElementaryElement::zero(&self.datum, *i),
            ElementaryKind::T(w) => ElementaryElement::T(w.clone()),
            ElementaryKind::C => ElementaryElement::C,
        }
    }

    /// True when `x` lives in this crystal's carrier.
    pub fn owns(&self, x: &ElementaryElement) -> bool {
        match (&self.kind, x) {
            (ElementaryKind::B(i), ElementaryElement::Real { index, .. }) => {
                i == index && self.datum.class(*i) == IndexClass::Real
            }
            (ElementaryKind::B(i), ElementaryElement::Comp { index, parts }) => {
                i == index
                    && self.datum.class(*i) == IndexClass::ImaginaryNonIsotropic
                    && parts.iter().all(|&p| p >= 1)
            }
            (ElementaryKind::B(i), ElementaryElement::Part { index, parts }) => {
                i == index
                    && self.datum.class(*i) == IndexClass::Isotropic
                    && parts.iter().all(|&p| p >= 1)
                    && parts.windows(2).all(|w| w[0] <= w[1])
            }
            (ElementaryKind::T(w), ElementaryElement::T(v)) => w == v,
            (ElementaryKind::C, ElementaryElement::C) => true,
            _ => false,
        }
    }
}

impl Crystal for Elementary {
    type Elem = ElementaryElement;

    fn datum(&self) -> &CartanDatum {
        &self.datum
    }
    fn wt(&self, b: &ElementaryElement) -> Weight {
        elem_wt(b)
    }
    fn eps(&self, i: usize, b: &ElementaryElement) -> ExtInt {
        elem_eps(&self.datum, i, b)
    }
    fn phi(&self, i: usize, b: &ElementaryElement) -> ExtInt {
        elem_phi(&self.datum, i, b)
    }
    fn e(&self, op: Op, b: &ElementaryElement) -> Option<ElementaryElement> {
        elem_e(&self.datum, op, b)
    }
    fn f(&self, op: Op, b: &ElementaryElement) -> Option<ElementaryElement> {
        elem_f(&self.datum, op, b)
    }
    fn render(&self, b: &ElementaryElement) -> String {
        b.render(&self.datum)
    }
}
