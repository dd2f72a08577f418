use std::collections::HashSet;

use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};

use super::unitrade::{distance2_neighbors, packed};

/// Counts of ordered distance-2 pairs `(u, v)` split by `wt(v) - wt(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairProfile {
    pub n: usize,
    /// Total number of words.
    pub total: usize,
    /// Words of each weight, indexed by weight.
    pub by_weight: Vec<usize>,
    /// Pairs with `wt(v) = wt(u) - 2`, indexed by `wt(u)`.
    pub minus: Vec<usize>,
    /// Pairs with `wt(v) = wt(u)`.
    pub star: Vec<usize>,
    /// Pairs with `wt(v) = wt(u) + 2`.
    pub plus: Vec<usize>,
}

impl PairProfile {
    /// Linear relations that every extended unitrade through zero satisfies;
    /// returns a description of each one that fails.
    pub fn violations(&self) -> Vec<String> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..=n {
            if 2 * self.minus[i] + self.star[i] != i * self.by_weight[i] {
                out.push(format!("2W{i}- + W{i}* != {i} W{i}"));
            }
            if self.star[i] + 2 * self.plus[i] != (n - i) * self.by_weight[i] {
                out.push(format!("W{i}* + 2W{i}+ != {} W{i}", n - i));
            }
            if i >= 2 && self.minus[i] != self.plus[i - 2] {
                out.push(format!("W{i}- != W{}+", i - 2));
            }
        }
        out
    }
}

/// Pair profile of a set containing the all-zero word.
pub fn pair_profile(t: &Code) -> Result<PairProfile> {
    let bits = packed(t)?;
    let n = t.n();
    if !bits.contains(&0) {
        return Err(Error::Precondition(
            "the all-zero word must belong to the set".into(),
        ));
    }
    let set: HashSet<u64> = bits.iter().copied().collect();
    let mut p = PairProfile {
        n,
        total: set.len(),
        by_weight: vec![0; n + 1],
        minus: vec![0; n + 1],
        star: vec![0; n + 1],
        plus: vec![0; n + 1],
    };
    for &u in &set {
        let wu = u.count_ones() as usize;
        p.by_weight[wu] += 1;
        for v in distance2_neighbors(n, u, &set) {
            let wv = v.count_ones() as usize;
            match wv.cmp(&wu) {
                std::cmp::Ordering::Less => p.minus[wu] += 1,
                std::cmp::Ordering::Equal => p.star[wu] += 1,
                std::cmp::Ordering::Greater => p.plus[wu] += 1,
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Space;

    fn diagonal(n: usize) -> Code {
        let h = n / 2;
        Code::from_bits(n, (0..1u64 << h).map(|x| x | (x << h))).unwrap()
    }

    #[test]
    fn diagonal_profile() {
        let p = pair_profile(&diagonal(6)).unwrap();
        assert_eq!(p.plus[0], 3);
        assert_eq!(p.by_weight[2], 3);
        assert_eq!(2 * p.plus[2], 12);
        assert!(p.violations().is_empty());
        // brute-force count of the distance-2 pairs starting at weight 2
        let bits = diagonal(6).bits().unwrap();
        let up = bits
            .iter()
            .filter(|u| u.count_ones() == 2)
            .flat_map(|u| bits.iter().map(move |v| (u, v)))
            .filter(|(u, v)| (*u ^ *v).count_ones() == 2 && v.count_ones() == 4)
            .count();
        assert_eq!(up, p.plus[2]);
    }

    #[test]
    fn requires_zero() {
        let t = Code::from_strs(Space::binary(2).unwrap(), &["10", "01"]).unwrap();
        assert!(pair_profile(&t).is_err());
        assert!(pair_profile(&Code::empty(Space::binary(4).unwrap())).is_err());
    }
}
