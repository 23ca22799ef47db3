//! The abstract crystal interface.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{CartanDatum, Weight};
use crate::error::{CrystalError, Result};

/// `Z ⊔ {-∞}`. Variant order gives `NegInf < Fin(n)` for all `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

impl ExtInt {
    pub fn is_neg_inf(self) -> bool {
        self == ExtInt::NegInf
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(n) => Some(n),
            ExtInt::NegInf => None,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Fin(n)
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, n: i64) -> ExtInt {
        match self {
            ExtInt::Fin(m) => ExtInt::Fin(m + n),
            ExtInt::NegInf => ExtInt::NegInf,
        }
    }
}

impl Sub<i64> for ExtInt {
    type Output = ExtInt;
    fn sub(self, n: i64) -> ExtInt {
        self + (-n)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(n) => write!(f, "{n}"),
            ExtInt::NegInf => f.write_str("-inf"),
        }
    }
}

// Serialized as a JSON integer, or the string "-inf".
impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(n) => s.serialize_i64(*n),
            ExtInt::NegInf => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(ExtInt::Fin(n)),
            Repr::Str(s) if s == "-inf" => Ok(ExtInt::NegInf),
            Repr::Str(s) => Err(serde::de::Error::custom(format!(
                "expected integer or \"-inf\", got {s:?}"
            ))),
        }
    }
}

/// A Kashiwara operator label `(i, l)` in `I^∞`: `l = 1` for real `i`,
/// `l >= 1` otherwise. Only constructible through a datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Op {
    index: usize,
    l: u32,
}

impl Op {
    pub fn new(datum: &CartanDatum, index: usize, l: u32) -> Result<Op> {
        if index >= datum.rank() {
            return Err(CrystalError::UnknownIndex(index.to_string()));
        }
        if l == 0 || (datum.is_real(index) && l != 1) {
            return Err(CrystalError::BadOperator {
                index: datum.id(index).to_string(),
                l,
            });
        }
        Ok(Op { index, l })
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn l(self) -> u32 {
        self.l
    }

    pub fn l_i64(self) -> i64 {
        self.l as i64
    }

    /// All operators with `l <= max_l`; real indices contribute `(i,1)` when
    /// `max_l >= 1`.
    pub fn all_up_to(datum: &CartanDatum, max_l: u32) -> Vec<Op> {
        let mut ops = Vec::new();
        for i in datum.indices() {
            let top = if datum.is_real(i) {
                max_l.min(1)
            } else {
                max_l
            };
            ops.extend((1..=top).map(|l| Op { index: i, l }));
        }
        ops
    }

    /// Operators at a single index with `l <= max_l`.
    pub fn at_index(datum: &CartanDatum, i: usize, max_l: u32) -> Vec<Op> {
        let top = if datum.is_real(i) {
            max_l.min(1)
        } else {
            max_l
        };
        (1..=top).map(|l| Op { index: i, l }).collect()
    }
}

/// An abstract crystal: a carrier with `wt`, `ε_i`, `φ_i` and partial
/// operators `ẽ_il`, `f̃_il`. `None` plays the role of the null element.
///
/// Implementations must be pure. The axioms are not enforced here; see
/// [`crate::check::check_axioms`].
pub trait Crystal: Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    fn datum(&self) -> &CartanDatum;
    fn wt(&self, b: &Self::Elem) -> Weight;
    fn eps(&self, i: usize, b: &Self::Elem) -> ExtInt;
    fn phi(&self, i: usize, b: &Self::Elem) -> ExtInt;
    fn e(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem>;
    fn f(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, b: &Self::Elem) -> String;

    fn eps_all(&self, b: &Self::Elem) -> Vec<ExtInt> {
        self.datum().indices().map(|i| self.eps(i, b)).collect()
    }

    fn phi_all(&self, b: &Self::Elem) -> Vec<ExtInt> {
        self.datum().indices().map(|i| self.phi(i, b)).collect()
    }
}

impl<C: Crystal + ?Sized> Crystal for &C {
    type Elem = C::Elem;

    fn datum(&self) -> &CartanDatum {
        (**self).datum()
    }
    fn wt(&self, b: &Self::Elem) -> Weight {
        (**self).wt(b)
    }
    fn eps(&self, i: usize, b: &Self::Elem) -> ExtInt {
        (**self).eps(i, b)
    }
    fn phi(&self, i: usize, b: &Self::Elem) -> ExtInt {
        (**self).phi(i, b)
    }
    fn e(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        (**self).e(op, b)
    }
    fn f(&self, op: Op, b: &Self::Elem) -> Option<Self::Elem> {
        (**self).f(op, b)
    }
    fn render(&self, b: &Self::Elem) -> String {
        (**self).render(b)
    }
}
