use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{ball, Space, Word};

/// Result of a unitrade predicate; `witness` is the first failing ball center.
#[derive(Clone, Debug, Serialize)]
pub struct UnitradeCheck {
    pub holds: bool,
    pub witness: Option<Word>,
    /// Number of set elements in the witness ball.
    pub count: usize,
    /// Agreement of the halved-cube characterization (extended check, n >= 5).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halved_cube_agrees: Option<bool>,
}

impl UnitradeCheck {
    fn from_counts<I: IntoIterator<Item = (Word, usize)>>(counts: I) -> Self {
        let bad = counts
            .into_iter()
            .filter(|(_, c)| *c != 2)
            .min_by(|a, b| a.0.cmp(&b.0));
        match bad {
            Some((w, c)) => UnitradeCheck {
                holds: false,
                witness: Some(w),
                count: c,
                halved_cube_agrees: None,
            },
            None => UnitradeCheck {
                holds: true,
                witness: None,
                count: 0,
                halved_cube_agrees: None,
            },
        }
    }

    fn into_error(self) -> Error {
        Error::NotUnitrade {
            witness: self.witness.map(|w| w.to_string()).unwrap_or_default(),
            count: self.count,
        }
    }
}

/// Every radius-1 ball meets `t` in 0 or 2 words.
pub fn is_unitrade(t: &Code) -> UnitradeCheck {
    let mut counts: HashMap<Word, usize> = HashMap::new();
    for w in t {
        for v in ball(w, 1).expect("radius 1 <= n") {
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    UnitradeCheck::from_counts(counts)
}

pub(crate) fn packed(t: &Code) -> Result<Vec<u64>> {
    t.space().require_packed()?;
    t.bits()
}

/// Common parity of the words, `None` for the empty set.
pub(crate) fn common_parity(bits: &[u64]) -> Result<Option<u32>> {
    let Some(first) = bits.first() else {
        return Ok(None);
    };
    let p = first.count_ones() & 1;
    if bits.iter().any(|b| b.count_ones() & 1 != p) {
        return Err(Error::MixedParity);
    }
    Ok(Some(p))
}

/// Ball counts around the opposite-parity neighbors of `bits`.
pub(crate) fn extended_counts(n: usize, bits: &[u64]) -> HashMap<u64, usize> {
    let mut counts = HashMap::with_capacity(bits.len() * n);
    for &b in bits {
        for i in 0..n {
            *counts.entry(b ^ (1u64 << i)).or_insert(0) += 1;
        }
    }
    counts
}

/// Same parity set meeting every ball centered at the other parity in 0 or 2.
pub fn is_extended_unitrade(t: &Code) -> Result<UnitradeCheck> {
    let bits = packed(t)?;
    common_parity(&bits)?;
    let space = t.space();
    let counts = extended_counts(space.n(), &bits);
    let mut check = UnitradeCheck::from_counts(
        counts
            .into_iter()
            .map(|(b, c)| (Word::from_bits_unchecked(space, b), c)),
    );
    if space.n() >= 5 {
        check.halved_cube_agrees =
            Some(halved_cube_characterization(space.n(), &bits) == check.holds);
    }
    Ok(check)
}

/// Induced subgraph of the halved cube is `n/2`-regular and triangle-free.
pub(crate) fn halved_cube_characterization(n: usize, bits: &[u64]) -> bool {
    if n % 2 == 1 && !bits.is_empty() {
        return false;
    }
    let set: HashSet<u64> = bits.iter().copied().collect();
    if set.len() != bits.len() {
        return false;
    }
    for &u in bits {
        let nbrs = distance2_neighbors(n, u, &set);
        if nbrs.len() != n / 2 {
            return false;
        }
        for (a, &v) in nbrs.iter().enumerate() {
            for &w in &nbrs[a + 1..] {
                if (v ^ w).count_ones() == 2 {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn distance2_neighbors(n: usize, u: u64, set: &HashSet<u64>) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = u ^ (1u64 << i) ^ (1u64 << j);
            if set.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn conflict_neighbors(n: usize, u: u64, set: &HashSet<u64>, extended: bool) -> Vec<u64> {
    let mut out = distance2_neighbors(n, u, set);
    if !extended {
        out.extend((0..n).map(|i| u ^ (1u64 << i)).filter(|v| set.contains(v)));
    }
    out
}

fn require_unitrade(t: &Code, extended: bool) -> Result<()> {
    let check = if extended {
        is_extended_unitrade(t)?
    } else {
        is_unitrade(t)
    };
    if check.holds {
        Ok(())
    } else {
        Err(check.into_error())
    }
}

/// Split of a unitrade into two codes of minimum distance 3 (resp. 4).
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Bipartiteness {
    Bipartite {
        part_a: Code,
        part_b: Code,
    },
    /// Closed walk of odd length in the conflict graph.
    OddCycle {
        cycle: Vec<Word>,
    },
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

/// Two-colors the conflict graph (pairs at distance <= 2, or exactly 2 in
/// the extended case).
pub fn is_bipartite_unitrade(t: &Code, extended: bool) -> Result<Bipartiteness> {
    require_unitrade(t, extended)?;
    let space = t.space();
    let bits = packed(t)?;
    let set: HashSet<u64> = bits.iter().copied().collect();
    let mut color: HashMap<u64, (u8, Option<u64>)> = HashMap::new();
    for &root in &bits {
        if color.contains_key(&root) {
            continue;
        }
        color.insert(root, (0, None));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[&u].0;
            for v in conflict_neighbors(space.n(), u, &set, extended) {
                match color.get(&v) {
                    None => {
                        color.insert(v, (1 - cu, Some(u)));
                        queue.push_back(v);
                    }
                    Some(&(cv, _)) if cv == cu => {
                        let cycle = odd_cycle(&color, u, v);
                        return Ok(Bipartiteness::OddCycle {
                            cycle: cycle
                                .into_iter()
                                .map(|b| Word::from_bits_unchecked(space, b))
                                .collect(),
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    let (a, b): (Vec<u64>, Vec<u64>) = bits.iter().partition(|w| color[w].0 == 0);
    Ok(Bipartiteness::Bipartite {
        part_a: Code::from_bits_unchecked(space, a),
        part_b: Code::from_bits_unchecked(space, b),
    })
}

fn odd_cycle(color: &HashMap<u64, (u8, Option<u64>)>, u: u64, v: u64) -> Vec<u64> {
    let path = |mut x: u64| {
        let mut p = vec![x];
        while let Some(parent) = color[&x].1 {
            p.push(parent);
            x = parent;
        }
        p
    };
    let pu = path(u);
    let pv = path(v);
    let in_v: HashSet<u64> = pv.iter().copied().collect();
    let meet = *pu.iter().find(|x| in_v.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<u64> = pu.iter().copied().take_while(|&x| x != meet).collect();
    cycle.push(meet);
    let back: Vec<u64> = pv.iter().copied().take_while(|&x| x != meet).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// Closed under complementation of all coordinates.
pub fn is_antipodal(t: &Code) -> Result<bool> {
    let bits = packed(t)?;
    let mask = t.space().mask();
    let set: HashSet<u64> = bits.iter().copied().collect();
    Ok(bits.iter().all(|b| set.contains(&(!b & mask))))
}

/// Minimal sub-unitrades: connected components of the graph joining words
/// that share a radius-1 ball.
pub fn primary_components(t: &Code, extended: bool) -> Result<Vec<Code>> {
    require_unitrade(t, extended)?;
    let space = t.space();
    let bits = packed(t)?;
    let set: HashSet<u64> = bits.iter().copied().collect();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut comps = Vec::new();
    for &root in &bits {
        if !seen.insert(root) {
            continue;
        }
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in conflict_neighbors(space.n(), u, &set, extended) {
                if seen.insert(v) {
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comps.push(Code::from_bits_unchecked(space, comp));
    }
    comps.sort_by(|a, b| a.words().cmp(b.words()));
    Ok(comps)
}

/// Outcome of [`reducibility_certificate`].
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Reducibility {
    /// The coordinate graph is connected, so no concatenation exists.
    Irreducible,
    /// The set equals the product of its projections on the two coordinate
    /// groups, and both projections are extended unitrades.
    Factorization {
        left_coords: Vec<usize>,
        left: Code,
        right_coords: Vec<usize>,
        right: Code,
    },
    /// Disconnected coordinate graph without a product decomposition.
    Unknown { components: Vec<Vec<usize>> },
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

fn project(bits: &[u64], coords: &[usize]) -> Vec<u64> {
    let mut out: Vec<u64> = bits
        .iter()
        .map(|&b| {
            coords
                .iter()
                .enumerate()
                .fold(0u64, |acc, (k, &c)| acc | (((b >> c) & 1) << k))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Decides irreducibility via the coordinate graph, or finds a concatenation.
pub fn reducibility_certificate(t: &Code) -> Result<Reducibility> {
    let n = t.n();
    let mut bits = packed(t)?;
    bits.sort_unstable();
    bits.dedup();
    let set: HashSet<u64> = bits.iter().copied().collect();
    let mut parent: Vec<usize> = (0..n).collect();
    for &u in &bits {
        for v in distance2_neighbors(n, u, &set) {
            let d = u ^ v;
            let i = d.trailing_zeros() as usize;
            let j = 63 - d.leading_zeros() as usize;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..n {
        let r = find(&mut parent, c);
        groups.entry(r).or_default().push(c);
    }
    let components: Vec<Vec<usize>> = groups.into_values().collect();
    if components.len() == 1 && !bits.is_empty() {
        return Ok(Reducibility::Irreducible);
    }
    if bits.is_empty() || components.len() > 20 {
        return Ok(Reducibility::Unknown { components });
    }
    let k = components.len();
    // subsets containing component 0, proper
    for mask in 0u32..(1u32 << (k - 1)) - 1 {
        let sel = (mask << 1) | 1;
        let mut left: Vec<usize> = Vec::new();
        let mut right: Vec<usize> = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            if sel >> ci & 1 == 1 {
                left.extend(comp);
            } else {
                right.extend(comp);
            }
        }
        left.sort_unstable();
        right.sort_unstable();
        let pl = project(&bits, &left);
        let pr = project(&bits, &right);
        if pl.len() * pr.len() != bits.len() {
            continue;
        }
        let lc = Code::from_bits_unchecked(Space::binary(left.len())?, pl);
        let rc = Code::from_bits_unchecked(Space::binary(right.len())?, pr);
        if is_extended_unitrade(&lc)?.holds && is_extended_unitrade(&rc)?.holds {
            return Ok(Reducibility::Factorization {
                left_coords: left,
                left: lc,
                right_coords: right,
                right: rc,
            });
        }
    }
    Ok(Reducibility::Unknown { components })
}

/// Each coordinate takes 0 and 1 equally often.
pub fn oa_strength1_check(t: &Code) -> Result<bool> {
    let bits = packed(t)?;
    let half = bits.len();
    if half % 2 == 1 {
        return Ok(false);
    }
    Ok((0..t.n()).all(|i| bits.iter().filter(|b| (*b >> i) & 1 == 1).count() * 2 == half))
}

/// `min_x max_y d(x, y)` over members.
pub fn inner_radius(t: &Code) -> Result<usize> {
    if t.is_empty() {
        return Err(Error::EmptyCode);
    }
    let words = t.words();
    Ok(words
        .iter()
        .map(|x| {
            words
                .iter()
                .map(|y| x.distance_unchecked(y))
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap_or(0))
}

/// Mean distance from `v` to the members, exactly.
pub fn average_distance(t: &Code, v: &Word) -> Result<BigRational> {
    t.space().check_same(&v.space())?;
    if t.is_empty() {
        return Err(Error::EmptyCode);
    }
    let total: usize = t.iter().map(|w| w.distance_unchecked(v)).sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(t.len())))
}

/// Some translate of the set has all words of one weight.
pub fn has_constant_weight_translate(t: &Code) -> Result<Option<Word>> {
    let bits = packed(t)?;
    let n = t.n();
    if n > 24 {
        return Err(Error::Unsupported(
            "constant-weight search needs n <= 24".into(),
        ));
    }
    let Some(&first) = bits.first() else {
        return Ok(Some(Word::zero(t.space())));
    };
    for v in 0u64..(1u64 << n) {
        let w = (first ^ v).count_ones();
        if bits.iter().all(|b| (b ^ v).count_ones() == w) {
            return Ok(Some(Word::from_bits_unchecked(t.space(), v)));
        }
    }
    Ok(None)
}
