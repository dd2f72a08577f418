//! Canonical forms of binary sets under translations and coordinate
//! permutations.
//!
//! For every admissible translation `T + t` (`t` ranges over the words of
//! `T` whose translate has the smallest weight histogram) the coordinates
//! are labeled by individualization and refinement on the word/coordinate
//! incidence structure. The canonical form is the smallest sorted word list
//! over all leaves of all these search trees. Automorphisms found along the
//! way prune sibling branches.

use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::linalg::permute_bits;
use crate::word::{Space, Word};

/// A canonical form and an isometry reaching it.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalLabeling {
    pub code: Code,
    /// `code = pi(input + translation)`.
    pub translation: Word,
    /// `pi` as `coordinate -> new coordinate`.
    pub permutation: Vec<usize>,
}

/// Ranks of the values, order preserving.
fn compress<T: Ord + Clone>(values: &[T]) -> (Vec<u32>, usize) {
    let mut uniq: Vec<T> = values.to_vec();
    uniq.sort();
    uniq.dedup();
    let ranks = values
        .iter()
        .map(|v| uniq.binary_search(v).expect("present") as u32)
        .collect();
    (ranks, uniq.len())
}

/// Alternating colour refinement on words and coordinates until the
/// coordinate partition is stable.
fn refine(n: usize, words: &[u64], colors: &mut Vec<u32>) {
    let mut cells = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        if cells == n {
            return;
        }
        let row_sig: Vec<Vec<u32>> = words
            .iter()
            .map(|&w| {
                let mut s: Vec<u32> = (0..n)
                    .filter(|&c| w >> c & 1 == 1)
                    .map(|c| colors[c])
                    .collect();
                s.sort_unstable();
                s
            })
            .collect();
        let (row_color, _) = compress(&row_sig);
        let col_sig: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|c| {
                let mut s: Vec<u32> = words
                    .iter()
                    .zip(&row_color)
                    .filter(|(&w, _)| w >> c & 1 == 1)
                    .map(|(_, &r)| r)
                    .collect();
                s.sort_unstable();
                (colors[c], s)
            })
            .collect();
        let (next, count) = compress(&col_sig);
        *colors = next;
        if count == cells {
            return;
        }
        cells = count;
    }
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let keyed: Vec<u32> = colors
        .iter()
        .enumerate()
        .map(|(c, &k)| 2 * k + u32::from(c != v))
        .collect();
    compress(&keyed).0
}

struct Leaf {
    cert: Vec<u64>,
    pos: Vec<usize>,
}

/// Search state for one translation.
struct Tree<'a> {
    n: usize,
    words: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as `column -> column`.
    autos: Vec<Vec<usize>>,
}

fn certificate(n: usize, words: &[u64], pos: &[usize]) -> Vec<u64> {
    let mut cert: Vec<u64> = words
        .iter()
        .map(|&w| {
            let mut x = 0u64;
            for (c, &p) in pos.iter().enumerate() {
                if w >> c & 1 == 1 {
                    x |= 1u64 << (n - 1 - p);
                }
            }
            x
        })
        .collect();
    cert.sort_unstable();
    cert
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl Tree<'_> {
    fn automorphism(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        // maps column c to the column that `a` sends where `b` sends c
        let mut inv = vec![0usize; self.n];
        for (c, &p) in a.iter().enumerate() {
            inv[p] = c;
        }
        b.iter().map(|&p| inv[p]).collect()
    }

    fn leaf(&mut self, colors: &[u32]) {
        let pos: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let cert = certificate(self.n, self.words, &pos);
        let mut found = Vec::new();
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.cert == cert {
                let g = self.automorphism(&known.pos, &pos);
                if g.iter().enumerate().any(|(c, &d)| c != d) {
                    found.push(g);
                }
            }
        }
        for g in found {
            if !self.autos.contains(&g) {
                self.autos.push(g);
            }
        }
        if self.first.is_none() {
            self.first = Some(Leaf {
                cert: cert.clone(),
                pos: pos.clone(),
            });
        }
        if self.best.as_ref().is_none_or(|b| cert < b.cert) {
            self.best = Some(Leaf { cert, pos });
        }
    }

    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        for g in &self.autos {
            if prefix.iter().all(|&p| g[p] == p) {
                for (c, &d) in g.iter().enumerate() {
                    let (a, b) = (find(&mut parent, c), find(&mut parent, d));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..self.n).map(|c| find(&mut parent, c)).collect()
    }

    fn search(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<usize>) {
        refine(self.n, self.words, &mut colors);
        let mut size = vec![0usize; self.n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let Some(target) = size.iter().position(|&s| s >= 2) else {
            self.leaf(&colors);
            return;
        };
        let members: Vec<usize> = (0..self.n)
            .filter(|&c| colors[c] as usize == target)
            .collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if !tried.is_empty() {
                let orbit = self.orbits(prefix);
                if tried.iter().any(|&u| orbit[u] == orbit[v]) {
                    continue;
                }
            }
            prefix.push(v);
            self.search(individualize(&colors, v), prefix);
            prefix.pop();
            tried.push(v);
        }
    }
}

/// Transpositions of identical coordinates.
fn twin_automorphisms(n: usize, words: &[u64]) -> Vec<Vec<usize>> {
    let column = |c: usize| -> Vec<bool> { words.iter().map(|&w| w >> c & 1 == 1).collect() };
    let cols: Vec<Vec<bool>> = (0..n).map(column).collect();
    let mut out = Vec::new();
    for a in 0..n {
        if let Some(b) = (a + 1..n).find(|&b| cols[a] == cols[b]) {
            let mut g: Vec<usize> = (0..n).collect();
            g.swap(a, b);
            out.push(g);
        }
    }
    out
}

fn weight_histogram(n: usize, words: &[u64]) -> Vec<usize> {
    let mut h = vec![0usize; n + 1];
    for w in words {
        h[w.count_ones() as usize] += 1;
    }
    h
}

/// Canonical labeling of a multiset of packed words of length `n <= 64`.
/// Returns `(certificate, translation, permutation)`; the certificate holds
/// the words with coordinate 0 as the most significant bit.
pub(crate) fn canonical_bits(n: usize, words: &[u64]) -> (Vec<u64>, u64, Vec<usize>) {
    if words.is_empty() {
        return (Vec::new(), 0, (0..n).collect());
    }
    let mut distinct: Vec<u64> = words.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let translates: Vec<(u64, Vec<u64>)> = distinct
        .iter()
        .map(|&t| (t, words.iter().map(|&w| w ^ t).collect()))
        .collect();
    let hists: Vec<Vec<usize>> = translates
        .iter()
        .map(|(_, w)| weight_histogram(n, w))
        .collect();
    let min_hist = hists.iter().min().expect("nonempty").clone();
    let mut best: Option<(Vec<u64>, u64, Vec<usize>)> = None;
    for ((t, shifted), h) in translates.iter().zip(&hists) {
        if *h != min_hist {
            continue;
        }
        let mut tree = Tree {
            n,
            words: shifted,
            first: None,
            best: None,
            autos: twin_automorphisms(n, shifted),
        };
        tree.search(vec![0; n], &mut Vec::new());
        let leaf = tree.best.expect("at least one leaf");
        if best.as_ref().is_none_or(|b| leaf.cert < b.0) {
            best = Some((leaf.cert, *t, leaf.pos));
        }
    }
    best.expect("at least one translation")
}

/// Converts a certificate word (coordinate 0 most significant) to packed bits.
pub(crate) fn cert_to_bits(n: usize, x: u64) -> u64 {
    x.reverse_bits() >> (64 - n)
}

fn binary_words(t: &Code) -> Result<Vec<u64>> {
    let space = t.space();
    if !space.is_binary() {
        return Err(Error::NotBinary(space.q()));
    }
    space.require_packed()?;
    t.bits()
}

pub fn canonical_labeling(t: &Code) -> Result<CanonicalLabeling> {
    let words = binary_words(t)?;
    let n = t.n();
    let (cert, translation, permutation) = canonical_bits(n, &words);
    let space = Space::binary(n)?;
    let code = Code::from_bits(n, cert.iter().map(|&x| cert_to_bits(n, x)))?;
    debug_assert_eq!(code.bits().unwrap_or_default().len(), words.len());
    Ok(CanonicalLabeling {
        code,
        translation: Word::from_bits_unchecked(space, translation),
        permutation,
    })
}

/// Representative of the class of `t` under translations and coordinate
/// permutations; idempotent.
pub fn canonical_form(t: &Code) -> Result<Code> {
    Ok(canonical_labeling(t)?.code)
}

pub fn are_equivalent(a: &Code, b: &Code) -> Result<bool> {
    a.space().check_same(&b.space())?;
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Applies `x -> pi(x + t)` to every word.
pub fn apply_isometry(t: &Code, translation: &Word, permutation: &[usize]) -> Result<Code> {
    let words = binary_words(t)?;
    let n = t.n();
    let tb = translation
        .bits()
        .ok_or_else(|| Error::NotBinary(translation.space().q()))?;
    let mut seen = vec![false; n];
    if permutation.len() != n
        || permutation
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::Precondition(
            "not a permutation of the coordinates".into(),
        ));
    }
    Code::from_bits(n, words.iter().map(|&w| permute_bits(w ^ tb, permutation)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    #[test]
    fn labeling_reaches_the_form() {
        let t = Code::from_bits(6, [0b000111, 0b011001, 0b101010, 0b110100, 0]).unwrap();
        let lab = canonical_labeling(&t).unwrap();
        let image = apply_isometry(&t, &lab.translation, &lab.permutation).unwrap();
        assert_eq!(image, lab.code);
        assert!(lab.code.contains(&Word::zero(t.space())));
    }

    #[test]
    fn small_cases() {
        let empty = Code::empty(Space::binary(4).unwrap());
        assert!(canonical_form(&empty).unwrap().is_empty());
        let a = Code::from_bits(3, [1]).unwrap();
        let b = Code::from_bits(3, [6]).unwrap();
        assert!(are_equivalent(&a, &b).unwrap());
        let c = Code::from_bits(3, [0, 3]).unwrap();
        let d = Code::from_bits(3, [0, 7]).unwrap();
        assert!(!are_equivalent(&c, &d).unwrap());
        assert_eq!(canonical_form(&c).unwrap().to_text(), "2 3\n000\n011\n");
    }

    #[test]
    fn rejects_non_binary() {
        let t = Code::from_strs(Space::new(2, 3).unwrap(), &["01"]).unwrap();
        assert!(canonical_form(&t).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn invariant_under_isometries(
            words in proptest::collection::vec(0u64..256, 1..24),
            t in 0u64..256,
            perm in perm_strategy(8),
        ) {
            let c = Code::from_bits(8, words).unwrap();
            let tw = Word::from_bits(8, t).unwrap();
            let image = apply_isometry(&c, &tw, &perm).unwrap();
            let f = canonical_form(&c).unwrap();
            prop_assert_eq!(&canonical_form(&image).unwrap(), &f);
            prop_assert_eq!(canonical_form(&f).unwrap(), f);
        }

        #[test]
        fn brute_force_agrees_on_equivalence(
            a in proptest::collection::btree_set(0u64..32, 1..7),
            b in proptest::collection::btree_set(0u64..32, 1..7),
        ) {
            let ca = Code::from_bits(5, a.iter().copied()).unwrap();
            let cb = Code::from_bits(5, b.iter().copied()).unwrap();
            let fast = are_equivalent(&ca, &cb).unwrap();
            let target: Vec<u64> = cb.bits().unwrap();
            let mut slow = false;
            let mut perm: Vec<usize> = (0..5).collect();
            'outer: for _ in 0..120 {
                for t in 0..32u64 {
                    let mut img: Vec<u64> = ca.bits().unwrap().iter().map(|&w| permute_bits(w ^ t, &perm)).collect();
                    img.sort_unstable();
                    let mut tg = target.clone();
                    tg.sort_unstable();
                    if img == tg {
                        slow = true;
                        break 'outer;
                    }
                }
                next_permutation(&mut perm);
            }
            prop_assert_eq!(fast, slow);
        }
    }

    fn next_permutation(p: &mut [usize]) {
        let n = p.len();
        let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
            p.reverse();
            return;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}
