use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::word::Word;

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `K_k(i) = sum_j (-1)^j C(i, j) C(n - i, k - j)`.
pub fn krawtchouk(n: usize, k: usize, i: usize) -> BigInt {
    (0..=k)
        .map(|j| {
            let term = binom(i, j) * binom(n - i, k - j);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Table `[k][i]` of binary Krawtchouk values for length `n`.
pub fn krawtchouk_table(n: usize) -> Vec<Vec<BigInt>> {
    (0..=n)
        .map(|k| (0..=n).map(|i| krawtchouk(n, k, i)).collect())
        .collect()
}

/// `B'_k = (1/|C|) sum_i B_i K_k(i)`.
pub fn macwilliams_transform(b: &[BigRational], size: usize) -> Vec<BigRational> {
    let n = b.len() - 1;
    let table = krawtchouk_table(n);
    let inv = BigRational::new(BigInt::one(), BigInt::from(size));
    table
        .iter()
        .map(|row| {
            let s: BigRational = row
                .iter()
                .zip(b)
                .map(|(k, bi)| bi * BigRational::from_integer(k.clone()))
                .sum();
            s * &inv
        })
        .collect()
}

/// Recovers `B` from `B'` via `2^n B_k = |C| sum_i B'_i K_k(i)`.
pub fn inverse_macwilliams(b_dual: &[BigRational], size: usize) -> Vec<BigRational> {
    let n = b_dual.len() - 1;
    let table = krawtchouk_table(n);
    let scale = BigRational::new(BigInt::from(size), BigInt::one() << n);
    table
        .iter()
        .map(|row| {
            let s: BigRational = row
                .iter()
                .zip(b_dual)
                .map(|(k, bi)| bi * BigRational::from_integer(k.clone()))
                .sum();
            s * &scale
        })
        .collect()
}

fn ser_rats<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

fn ser_opt_rats<S: serde::Serializer>(
    v: &Option<Vec<BigRational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rats(v, s),
        None => s.serialize_none(),
    }
}

/// Distance and weight distributions of a code with the dual transform.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceData {
    pub n: usize,
    pub size: usize,
    /// `B_i`, the average weight distribution over codewords.
    #[serde(serialize_with = "ser_rats")]
    pub distance: Vec<BigRational>,
    /// `A_i(x)` for the requested word.
    pub weights: Option<Vec<usize>>,
    /// `B'_i` (binary codes only).
    #[serde(serialize_with = "ser_opt_rats")]
    pub dual: Option<Vec<BigRational>>,
    #[serde(skip)]
    pub krawtchouk: Option<Vec<Vec<BigInt>>>,
}

impl DistanceData {
    /// All dual coefficients are nonnegative.
    pub fn dual_nonnegative(&self) -> Option<bool> {
        self.dual
            .as_ref()
            .map(|d| d.iter().all(|x| *x >= BigRational::zero()))
    }
}

/// Weight distribution of `C + x`, i.e. the counts `A_i(x)`.
pub fn weight_distribution(code: &Code, x: &Word) -> Result<Vec<usize>> {
    code.space().check_same(&x.space())?;
    let mut a = vec![0usize; code.n() + 1];
    for c in code {
        a[c.distance_unchecked(x)] += 1;
    }
    Ok(a)
}

pub fn distance_data(code: &Code, x: Option<&Word>) -> Result<DistanceData> {
    distance_data_with(code, x, Exec::default())
}

pub fn distance_data_with(code: &Code, x: Option<&Word>, exec: Exec) -> Result<DistanceData> {
    if code.is_empty() {
        return Err(Error::EmptyCode);
    }
    let n = code.n();
    let words = code.words();
    let rows = par::map(exec, words, |u| {
        let mut row = vec![0u64; n + 1];
        for v in words {
            row[u.distance_unchecked(v)] += 1;
        }
        row
    });
    let mut pairs = vec![0u64; n + 1];
    for row in rows {
        for (acc, v) in pairs.iter_mut().zip(row) {
            *acc += v;
        }
    }
    let size = code.len();
    let distance: Vec<BigRational> = pairs
        .iter()
        .map(|&p| BigRational::new(BigInt::from(p), BigInt::from(size)))
        .collect();
    let weights = x.map(|x| weight_distribution(code, x)).transpose()?;
    let (dual, krawtchouk) = if code.space().is_binary() {
        (
            Some(macwilliams_transform(&distance, size)),
            Some(krawtchouk_table(n)),
        )
    } else {
        (None, None)
    };
    Ok(DistanceData {
        n,
        size,
        distance,
        weights,
        dual,
        krawtchouk,
    })
}
