//! Even symmetrizable Borcherds-Cartan data and the weight lattice.
//!
//! Indices are addressed by position (`0..rank`). Each index also carries an
//! opaque string identifier used for rendering and serialization.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};

/// The rule a matrix entry breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixRule {
    OddDiagonal,
    PositiveDiagonalNotTwo,
    PositiveOffDiagonal,
    NotSymmetrizable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixViolation {
    pub rule: MatrixRule,
    pub row: String,
    pub col: String,
}

impl fmt::Display for MatrixViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at ({},{})", self.rule, self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexClass {
    Real,
    ImaginaryNonIsotropic,
    Isotropic,
}

impl IndexClass {
    pub fn is_real(self) -> bool {
        self == IndexClass::Real
    }

    pub fn is_imaginary(self) -> bool {
        !self.is_real()
    }
}

/// A validated even symmetrizable Borcherds-Cartan matrix together with its
/// symmetrizers. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    ids: Vec<String>,
    a: Vec<Vec<i64>>,
    r: Vec<i64>,
}

impl CartanDatum {
    /// Validates `matrix` with identifiers `"1"`, `"2"`, ... .
    pub fn new(matrix: Vec<Vec<i64>>, symmetrizers: Vec<i64>) -> Result<Self> {
        let ids = (1..=matrix.len()).map(|k| k.to_string()).collect();
        Self::with_ids(ids, matrix, symmetrizers)
    }

    pub fn with_ids(
        ids: Vec<String>,
        matrix: Vec<Vec<i64>>,
        symmetrizers: Vec<i64>,
    ) -> Result<Self> {
        let n = matrix.len();
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != n {
                return Err(CrystalError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
        }
        if symmetrizers.len() != n {
            return Err(CrystalError::LengthMismatch {
                what: "symmetrizers",
                expected: n,
                got: symmetrizers.len(),
            });
        }
        if ids.len() != n {
            return Err(CrystalError::LengthMismatch {
                what: "index identifiers",
                expected: n,
                got: ids.len(),
            });
        }
        for (k, id) in ids.iter().enumerate() {
            if ids[..k].contains(id) {
                return Err(CrystalError::DuplicateIndex(id.clone()));
            }
        }
        for (k, &r) in symmetrizers.iter().enumerate() {
            if r <= 0 {
                return Err(CrystalError::NonPositiveSymmetrizer {
                    index: ids[k].clone(),
                    value: r,
                });
            }
        }

        let mut violations = Vec::new();
        let mut push = |rule, i: usize, j: usize| {
            violations.push(MatrixViolation {
                rule,
                row: ids[i].clone(),
                col: ids[j].clone(),
            })
        };
        for i in 0..n {
            for j in 0..n {
                let x = matrix[i][j];
                if i == j {
                    if x.rem_euclid(2) != 0 {
                        push(MatrixRule::OddDiagonal, i, j);
                    } else if x > 0 && x != 2 {
                        push(MatrixRule::PositiveDiagonalNotTwo, i, j);
                    }
                } else {
                    if x > 0 {
                        push(MatrixRule::PositiveOffDiagonal, i, j);
                    }
                    if i < j && symmetrizers[i] * x != symmetrizers[j] * matrix[j][i] {
                        push(MatrixRule::NotSymmetrizable, i, j);
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(CrystalError::InvalidMatrix(violations));
        }
        Ok(CartanDatum {
            ids,
            a: matrix,
            r: symmetrizers,
        })
    }

    pub fn rank(&self) -> usize {
        self.ids.len()
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| CrystalError::UnknownIndex(id.to_string()))
    }

    /// Entry `a_ij`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.r[i]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.r
    }

    pub fn class(&self, i: usize) -> IndexClass {
        match self.a[i][i] {
            2 => IndexClass::Real,
            0 => IndexClass::Isotropic,
            _ => IndexClass::ImaginaryNonIsotropic,
        }
    }

    pub fn classify(&self, id: &str) -> Result<IndexClass> {
        Ok(self.class(self.index_of(id)?))
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.class(i).is_real()
    }

    /// `<h_j, w> = lam_j + sum_i rt_i a_ji`.
    pub fn pairing(&self, j: usize, w: &Weight) -> i64 {
        let lam = w.lam.get(&j).copied().unwrap_or(0);
        lam + w.rt.iter().map(|(&i, &k)| k * self.a[j][i]).sum::<i64>()
    }

    pub fn pairing_by_id(&self, id: &str, w: &Weight) -> Result<i64> {
        Ok(self.pairing(self.index_of(id)?, w))
    }

    /// Returns the first index at which `<h_i, w>` is negative, if any.
    pub fn dominance_failure(&self, w: &Weight) -> Option<(usize, i64)> {
        self.indices()
            .map(|i| (i, self.pairing(i, w)))
            .find(|&(_, v)| v < 0)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.dominance_failure(w).is_none()
    }

    pub fn require_dominant(&self, w: &Weight) -> Result<()> {
        match self.dominance_failure(w) {
            None => Ok(()),
            Some((i, value)) => Err(CrystalError::NotDominant {
                index: self.ids[i].clone(),
                value,
            }),
        }
    }

    /// ASCII rendering such as `2L1 - a1 - 3a2` (`L` fundamental weights,
    /// `a` simple roots).
    pub fn render_weight(&self, w: &Weight) -> String {
        let terms = w
            .lam
            .iter()
            .map(|(&i, &k)| (k, format!("L{}", self.ids[i])))
            .chain(w.rt.iter().map(|(&i, &k)| (k, format!("a{}", self.ids[i]))));
        let mut out = String::new();
        for (k, sym) in terms {
            let mag = k.unsigned_abs();
            let coeff = if mag == 1 {
                String::new()
            } else {
                mag.to_string()
            };
            if out.is_empty() {
                if k < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if k < 0 { " - " } else { " + " });
            }
            out.push_str(&coeff);
            out.push_str(&sym);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// An element of the weight lattice, kept as a finite combination of
/// fundamental weights `L_i` and simple roots `a_i`. Zero coefficients are
/// never stored, so structural equality is equality of weights.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    lam: BTreeMap<usize, i64>,
    rt: BTreeMap<usize, i64>,
}

fn bump(map: &mut BTreeMap<usize, i64>, i: usize, k: i64) {
    if k == 0 {
        return;
    }
    let v = map.entry(i).or_insert(0);
    *v += k;
    if *v == 0 {
        map.remove(&i);
    }
}

impl Weight {
    pub fn zero() -> Self {
        Weight::default()
    }

    pub fn fundamental(i: usize) -> Self {
        let mut w = Weight::zero();
        bump(&mut w.lam, i, 1);
        w
    }

    pub fn simple_root(i: usize) -> Self {
        let mut w = Weight::zero();
        bump(&mut w.rt, i, 1);
        w
    }

    pub fn from_parts<L, R>(lam: L, rt: R) -> Self
    where
        L: IntoIterator<Item = (usize, i64)>,
        R: IntoIterator<Item = (usize, i64)>,
    {
        let mut w = Weight::zero();
        for (i, k) in lam {
            bump(&mut w.lam, i, k);
        }
        for (i, k) in rt {
            bump(&mut w.rt, i, k);
        }
        w
    }

    /// `sum_i coeffs[i] L_i`.
    pub fn from_fundamental(coeffs: &[i64]) -> Self {
        Self::from_parts(coeffs.iter().copied().enumerate(), [])
    }

    pub fn lam_part(&self) -> &BTreeMap<usize, i64> {
        &self.lam
    }

    pub fn root_part(&self) -> &BTreeMap<usize, i64> {
        &self.rt
    }

    pub fn lam(&self, i: usize) -> i64 {
        self.lam.get(&i).copied().unwrap_or(0)
    }

    pub fn root(&self, i: usize) -> i64 {
        self.rt.get(&i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.lam.is_empty() && self.rt.is_empty()
    }

    /// `self + k a_i`.
    pub fn add_root(&self, i: usize, k: i64) -> Self {
        let mut w = self.clone();
        bump(&mut w.rt, i, k);
        w
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight::from_parts(
            self.lam.iter().map(|(&i, &v)| (i, v * k)),
            self.rt.iter().map(|(&i, &v)| (i, v * k)),
        )
    }

    /// Sum of the root coefficients. For `beta` in `Q+` this is `ht(beta)`.
    pub fn root_height(&self) -> i64 {
        self.rt.values().sum()
    }

    /// Sum of absolute root coefficients.
    pub fn root_norm(&self) -> i64 {
        self.rt.values().map(|v| v.abs()).sum()
    }

    pub fn is_pure_root(&self) -> bool {
        self.lam.is_empty()
    }

    /// True when this is `-beta` for some `beta` in `Q+`.
    pub fn in_negative_root_cone(&self) -> bool {
        self.lam.is_empty() && self.rt.values().all(|&v| v <= 0)
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let mut w = self.clone();
        for (&i, &k) in &rhs.lam {
            bump(&mut w.lam, i, k);
        }
        for (&i, &k) in &rhs.rt {
            bump(&mut w.rt, i, k);
        }
        w
    }
}

impl std::ops::Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self + &rhs.scale(-1)
    }
}

impl std::ops::Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}
