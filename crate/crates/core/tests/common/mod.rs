//! Shared test data and brute-force oracles.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use bbcrystal::{CartanDatum, Weight};

#[derive(Debug, Clone)]
pub struct Datum {
    pub name: &'static str,
    pub datum: Arc<CartanDatum>,
}

fn mk(name: &'static str, m: Vec<Vec<i64>>, r: Vec<i64>) -> Datum {
    Datum {
        name,
        datum: Arc::new(CartanDatum::new(m, r).expect("valid test datum")),
    }
}

pub fn a1() -> Datum {
    mk("A1", vec![vec![2]], vec![1])
}

pub fn a2() -> Datum {
    mk("A2", vec![vec![2, -1], vec![-1, 2]], vec![1, 1])
}

pub fn iso1() -> Datum {
    mk("isotropic rank 1", vec![vec![0]], vec![1])
}

pub fn imag1() -> Datum {
    mk("imaginary rank 1", vec![vec![-2]], vec![1])
}

pub fn mixed_sym() -> Datum {
    mk(
        "real/isotropic r=(1,2)",
        vec![vec![2, -2], vec![-1, 0]],
        vec![1, 2],
    )
}

pub fn mixed() -> Datum {
    mk("real/isotropic", vec![vec![2, -1], vec![-1, 0]], vec![1, 1])
}

pub fn rank3() -> Datum {
    mk(
        "real/imaginary/isotropic",
        vec![vec![2, -1, 0], vec![-1, -2, -1], vec![0, -1, 0]],
        vec![1, 1, 1],
    )
}

pub fn two_imaginary() -> Datum {
    mk("two imaginary", vec![vec![-2, -1], vec![-1, 0]], vec![1, 1])
}

pub fn all_data() -> Vec<Datum> {
    vec![a1(), a2(), iso1(), imag1(), mixed_sym(), mixed(), rank3()]
}

/// `Σ Λ_i`, dominant on every datum above.
pub fn rho(d: &CartanDatum) -> Weight {
    Weight::from_fundamental(&vec![1; d.rank()])
}

/// Number of partitions of `n`, by enumerating weakly decreasing lists.
pub fn partitions(n: u32) -> usize {
    fn go(n: u32, max: u32) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| go(n - p, p)).sum()
    }
    go(n, n)
}

/// Number of compositions of `n`, by enumerating ordered lists.
pub fn compositions(n: u32) -> usize {
    if n == 0 {
        return 1;
    }
    (1..=n).map(|first| compositions(n - first)).sum()
}

/// All partitions of `n` with distinct parts drawn from `1..=max`, as sorted lists.
pub fn distinct_part_sets(max: u32) -> BTreeSet<Vec<u32>> {
    (0u32..1 << max)
        .map(|mask| (1..=max).filter(|p| mask & (1 << (p - 1)) != 0).collect())
        .collect()
}

/// Kostant partition function for type A2: ways to write `a α1 + b α2` as
/// a sum of the positive roots `α1`, `α2`, `α1 + α2`.
pub fn kostant_a2(a: i64, b: i64) -> usize {
    (0..=a.min(b)).filter(|&k| a - k >= 0 && b - k >= 0).count()
}

/// Dimension of the irreducible `sl2` module of highest weight `n`, read off
/// its weight list `n, n-2, ..., -n`.
pub fn sl2_dim(n: i64) -> usize {
    (0..).map(|k| n - 2 * k).take_while(|&w| w >= -n).count()
}
