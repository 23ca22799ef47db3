//! Deliberately broken structures for exercising the checkers.

use crate::cartan::{CartanDatum, Weight};
use crate::crystal::{Crystal, ExtInt, Op};

/// Wraps a crystal and reports `φ_i(b) + 1` at every element.
#[derive(Debug, Clone)]
pub struct OffByOnePhi<C> {
    pub inner: C,
}

impl<C: Crystal> Crystal for OffByOnePhi<C> {
    type Elem = C::Elem;

    fn datum(&self) -> &CartanDatum {
        self.inner.datum()
    }
    fn wt(&self, b: &Self::Elem) -> Weight {
        self.inner.wt(b)
    }
    fn eps(&self, i: usize, b: &Self::Elem) -> ExtInt {
        self.inner.eps(i, b)
    }
    fn phi(&self, i: usize, b: &Self::Elem) -> ExtInt {
        self.inner.phi(i, b) + 1
    }
    fn e(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        self.inner.e(op, b)
    }
    fn f(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        self.inner.f(op, b)
    }
    fn render(&self, b: &Self::Elem) -> String {
        self.inner.render(b)
    }
}
