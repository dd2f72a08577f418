use std::cmp::Reverse;
use std::collections::HashMap;

use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::word::{ball, Space, Word};

/// How the coverage maximum is located.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scan {
    /// Full space when it is small relative to the balls, otherwise ball union.
    Auto,
    /// Every vertex of the space.
    FullSpace,
    /// Only vertices within distance `r` of some codeword.
    BallUnion,
}

/// Outcome of [`verify_packing`].
#[derive(Clone, Debug, Serialize)]
pub struct PackingReport {
    pub size: usize,
    pub radius: usize,
    pub lambda: usize,
    /// Largest number of codewords (with multiplicity) in one ball.
    pub max_coverage: usize,
    /// Lexicographically first center attaining `max_coverage`.
    pub witness: Word,
    pub is_lambda_fold: bool,
    pub duplicate_words: Vec<(Word, usize)>,
    pub scan: Scan,
}

impl PackingReport {
    /// Whether the code is a `lambda`-fold packing for another `lambda`.
    pub fn is_fold(&self, lambda: usize) -> bool {
        self.max_coverage <= lambda
    }
}

/// Index of a word in lexicographic order of the space.
pub(crate) fn word_index(w: &Word) -> u64 {
    let space = w.space();
    if let Some(b) = w.bits() {
        return b.reverse_bits() >> (64 - space.n());
    }
    w.symbols()
        .iter()
        .fold(0u64, |acc, &s| acc * space.q() as u64 + s as u64)
}

/// Inverse of [`word_index`].
pub(crate) fn index_word(space: Space, idx: u64) -> Word {
    if space.is_packed() {
        let bits = idx.reverse_bits() >> (64 - space.n());
        return Word::from_bits_unchecked(space, bits);
    }
    let q = space.q() as u64;
    let mut symbols = vec![0u8; space.n()];
    let mut rest = idx;
    for i in (0..space.n()).rev() {
        symbols[i] = (rest % q) as u8;
        rest /= q;
    }
    Word::from_symbols(space, &symbols).expect("index within range")
}

/// Checks that every radius-`r` ball contains at most `lambda` codewords.
pub fn verify_packing(code: &Code, lambda: usize, r: usize) -> Result<PackingReport> {
    verify_packing_with(code, lambda, r, Scan::Auto, Exec::default())
}

pub fn verify_packing_with(
    code: &Code,
    lambda: usize,
    r: usize,
    scan: Scan,
    exec: Exec,
) -> Result<PackingReport> {
    let space = code.space();
    if r > space.n() {
        return Err(Error::RadiusTooLarge { r, n: space.n() });
    }
    let scan = match scan {
        Scan::Auto => {
            let union_work = 2u128
                .saturating_mul(code.len() as u128)
                .saturating_mul(space.ball_size(r));
            match space.num_vertices() {
                Some(v) if (v as u128) <= union_work && v <= FULL_SCAN_LIMIT => Scan::FullSpace,
                _ => Scan::BallUnion,
            }
        }
        s => s,
    };
    let (max_coverage, witness) = if code.is_empty() {
        (0, Word::zero(space))
    } else {
        match scan {
            Scan::FullSpace => full_space_max(code, r, exec)?,
            _ => ball_union_max(code, r, exec)?,
        }
    };
    Ok(PackingReport {
        size: code.len(),
        radius: r,
        lambda,
        max_coverage,
        witness,
        is_lambda_fold: max_coverage <= lambda,
        duplicate_words: code.duplicates(),
        scan,
    })
}

/// Maximum by count, ties to the smallest index.
fn better(a: (usize, Reverse<u64>), b: (usize, Reverse<u64>)) -> (usize, Reverse<u64>) {
    a.max(b)
}

/// Largest vertex count the full scan accepts (one counter per vertex).
const FULL_SCAN_LIMIT: u64 = 1 << 28;

/// Calls `f` on the index of every vertex within distance `r` of `idx`,
/// changing coordinates from `start` on in increasing order.
fn for_each_in_ball(
    q: u64,
    weights: &[u64],
    idx: u64,
    r: usize,
    start: usize,
    f: &mut impl FnMut(u64),
) {
    f(idx);
    if r == 0 {
        return;
    }
    for p in start..weights.len() {
        let digit = idx / weights[p] % q;
        let base = idx - digit * weights[p];
        for d in (0..q).filter(|&d| d != digit) {
            for_each_in_ball(q, weights, base + d * weights[p], r - 1, p + 1, f);
        }
    }
}

fn full_space_max(code: &Code, r: usize, exec: Exec) -> Result<(usize, Word)> {
    let space = code.space();
    let total = match space.num_vertices() {
        Some(v) if v <= FULL_SCAN_LIMIT => v,
        _ => return Err(Error::Unsupported("space too large for a full scan".into())),
    };
    let (n, q) = (space.n(), space.q() as u64);
    // coordinate 0 is the most significant digit of the index
    let weights: Vec<u64> = (0..n).map(|p| q.pow((n - 1 - p) as u32)).collect();
    let mut mult = vec![0u32; total as usize];
    for w in code {
        mult[word_index(w) as usize] += 1;
    }
    let (count, Reverse(idx)) = par::map_reduce(
        exec,
        0..total as usize,
        (0, Reverse(u64::MAX)),
        |i| {
            let mut c = 0usize;
            for_each_in_ball(q, &weights, i as u64, r, 0, &mut |j| {
                c += mult[j as usize] as usize
            });
            (c, Reverse(i as u64))
        },
        better,
    );
    Ok((count, index_word(space, idx)))
}

fn ball_union_max(code: &Code, r: usize, exec: Exec) -> Result<(usize, Word)> {
    let words = code.words();
    let chunk = words.len().div_ceil(64).max(1);
    let chunks: Vec<&[Word]> = words.chunks(chunk).collect();
    let maps = par::map(exec, &chunks, |part| {
        let mut counts: HashMap<Word, usize> = HashMap::new();
        for w in part.iter() {
            for v in ball(w, r).expect("radius checked") {
                *counts.entry(v).or_insert(0) += 1;
            }
        }
        counts
    });
    let mut merged: HashMap<Word, usize> = HashMap::new();
    for m in maps {
        for (k, v) in m {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    let (word, count) = merged
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .expect("nonempty code");
    Ok((count, word))
}
