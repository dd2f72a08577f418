//! Isomorph-free classification of primary extended 1-perfect unitrades.
//!
//! A partial state is an even set `S` with every odd ball meeting it at most
//! twice. Starting from `{0}`, the search repeatedly picks the ball holding
//! exactly one word with the fewest admissible completions and branches on
//! them; balls with a single completion are closed immediately. A state with
//! no half-filled ball is a unitrade, and every primary unitrade containing
//! `S` is reachable from `S`, so states can be merged up to equivalence.
//! States are processed in order of size, with one deduplication point per
//! size.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{
    has_constant_weight_translate, is_antipodal, is_bipartite_unitrade, reducibility_certificate,
    Reducibility,
};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

use super::canon::{canonical_bits, canonical_form, cert_to_bits};

/// Lengths accepted by the classifier.
pub const SUPPORTED_LENGTHS: std::ops::RangeInclusive<usize> = 4..=12;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub nonbipartite_only: bool,
    pub max_cardinality: Option<usize>,
    /// Worker threads; 0 uses the default pool.
    pub threads: usize,
    pub checkpoint: Option<PathBuf>,
    #[serde(skip)]
    pub sequential: bool,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            nonbipartite_only: false,
            max_cardinality: None,
            threads: 0,
            checkpoint: None,
            sequential: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.n.is_multiple_of(2) || !SUPPORTED_LENGTHS.contains(&self.n) {
            return Err(Error::Unsupported(format!(
                "classification needs an even length in {SUPPORTED_LENGTHS:?}, got {}",
                self.n
            )));
        }
        Ok(())
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassFlags {
    pub bipartite: bool,
    pub antipodal: bool,
    pub constant_weight_translate: bool,
    pub irreducible: bool,
    /// `irreducible`, `reducible` or `unknown`.
    pub reducibility: String,
}

impl ClassFlags {
    /// Flags recomputed from a representative.
    pub fn of(t: &Code) -> Result<Self> {
        let reducibility = match reducibility_certificate(t)? {
            Reducibility::Irreducible => "irreducible",
            Reducibility::Factorization { .. } => "reducible",
            Reducibility::Unknown { .. } => "unknown",
        };
        Ok(ClassFlags {
            bipartite: is_bipartite_unitrade(t, true)?.is_bipartite(),
            antipodal: is_antipodal(t)?,
            constant_weight_translate: has_constant_weight_translate(t)?.is_some(),
            irreducible: reducibility == "irreducible",
            reducibility: reducibility.to_string(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceClass {
    pub representative: Code,
    pub cardinality: usize,
    pub flags: ClassFlags,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: usize,
    /// Classes passing the filters, sorted by cardinality then representative.
    pub classes: Vec<EquivalenceClass>,
    /// All primary classes found, before filtering.
    pub primary_classes: usize,
    pub states_explored: u64,
}

/// Outcome of closing the forced balls of a state.
pub(crate) enum Closure {
    Dead,
    Complete,
    /// The half-filled ball with the fewest completions, and those words.
    Open(Vec<u64>),
}

/// Partial state with ball counts indexed by center.
#[derive(Clone)]
pub(crate) struct State {
    n: usize,
    pub(crate) words: Vec<u64>,
    member: Vec<bool>,
    count: Vec<u8>,
}

impl State {
    pub(crate) fn new(n: usize, words: &[u64]) -> Option<Self> {
        let mut s = State {
            n,
            words: Vec::with_capacity(words.len() + 8),
            member: vec![false; 1 << n],
            count: vec![0; 1 << n],
        };
        for &w in words {
            if !s.can_add(w) {
                return None;
            }
            s.add(w);
        }
        Some(s)
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn can_add(&self, w: u64) -> bool {
        !self.member[w as usize] && (0..self.n).all(|i| self.count[(w ^ 1 << i) as usize] < 2)
    }

    pub(crate) fn add(&mut self, w: u64) {
        self.member[w as usize] = true;
        self.words.push(w);
        for i in 0..self.n {
            self.count[(w ^ 1 << i) as usize] += 1;
        }
    }

    /// Number of balls holding exactly one word.
    pub(crate) fn open_balls(&self) -> usize {
        let mut centers: Vec<u64> = self
            .words
            .iter()
            .flat_map(|&w| (0..self.n).map(move |i| w ^ 1 << i))
            .filter(|&c| self.count[c as usize] == 1)
            .collect();
        centers.sort_unstable();
        centers.dedup();
        centers.len()
    }

    /// Applies forced completions until a branching point.
    pub(crate) fn close(&mut self) -> Closure {
        'restart: loop {
            let mut best: Option<Vec<u64>> = None;
            let mut k = 0;
            while k < self.words.len() {
                let w = self.words[k];
                k += 1;
                for i in 0..self.n {
                    let c = w ^ 1 << i;
                    if self.count[c as usize] != 1 {
                        continue;
                    }
                    let cand: Vec<u64> = (0..self.n)
                        .map(|j| c ^ 1 << j)
                        .filter(|&v| self.can_add(v))
                        .collect();
                    match cand.len() {
                        0 => return Closure::Dead,
                        1 => {
                            self.add(cand[0]);
                            continue 'restart;
                        }
                        _ => {
                            if best.as_ref().is_none_or(|b| cand.len() < b.len()) {
                                best = Some(cand);
                            }
                        }
                    }
                }
            }
            return match best {
                None => Closure::Complete,
                Some(c) => Closure::Open(c),
            };
        }
    }
}

struct Expansion {
    children: Vec<Vec<u64>>,
    leaf: Option<Vec<u64>>,
}

fn canonical(n: usize, words: &[u64]) -> Vec<u64> {
    canonical_bits(n, words).0
}

fn expand(n: usize, words: &[u64], max: Option<usize>) -> Expansion {
    let mut out = Expansion {
        children: Vec::new(),
        leaf: None,
    };
    let Some(mut state) = State::new(n, words) else {
        return out;
    };
    match state.close() {
        Closure::Dead => {}
        Closure::Complete => out.leaf = Some(canonical(n, &state.words)),
        Closure::Open(cands) => {
            for v in cands {
                let mut child = state.clone();
                child.add(v);
                match child.close() {
                    Closure::Dead => {}
                    _ if max.is_some_and(|m| child.words.len() > m) => {}
                    _ => out.children.push(canonical(n, &child.words)),
                }
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    max_cardinality: Option<usize>,
    pending: BTreeMap<usize, Vec<Vec<u64>>>,
    leaves: Vec<Vec<u64>>,
    explored: u64,
}

fn load_checkpoint(path: &Path, cfg: &SearchConfig) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path).map_err(|e| Error::Checkpoint(e.to_string()))?;
    let cp: Checkpoint = serde_json::from_str(&text)
        .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    if cp.n != cfg.n || cp.max_cardinality != cfg.max_cardinality {
        return Err(Error::Checkpoint(format!(
            "{} belongs to a different search (n = {})",
            path.display(),
            cp.n
        )));
    }
    let limit = 1u64 << cfg.n;
    let valid = cp
        .pending
        .values()
        .flatten()
        .chain(&cp.leaves)
        .all(|s| s.iter().all(|&w| w < limit && w.count_ones() % 2 == 0));
    if !valid {
        return Err(Error::Checkpoint(format!(
            "{} holds invalid words",
            path.display()
        )));
    }
    Ok(Some(cp))
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(cp).map_err(|e| Error::Checkpoint(e.to_string()))?;
    fs::write(&tmp, text).map_err(|e| Error::Checkpoint(e.to_string()))?;
    fs::rename(&tmp, path).map_err(|e| Error::Checkpoint(e.to_string()))
}

/// Classifies the primary extended 1-perfect unitrades of length `cfg.n`.
pub fn classify_extended_unitrades(cfg: &SearchConfig) -> Result<Classification> {
    cfg.validate()?;
    par::with_threads(cfg.threads, || run(cfg))
}

fn run(cfg: &SearchConfig) -> Result<Classification> {
    let n = cfg.n;
    let exec = cfg.exec();
    let resumed = match &cfg.checkpoint {
        Some(p) => load_checkpoint(p, cfg)?,
        None => None,
    };
    let (mut pending, mut leaves, mut explored) = match resumed {
        Some(cp) => (
            cp.pending
                .into_iter()
                .map(|(k, v)| (k, v.into_iter().collect::<BTreeSet<_>>()))
                .collect::<BTreeMap<_, _>>(),
            cp.leaves.into_iter().collect::<BTreeSet<_>>(),
            cp.explored,
        ),
        None => (
            BTreeMap::from([(1usize, BTreeSet::from([vec![0u64]]))]),
            BTreeSet::new(),
            0u64,
        ),
    };
    while let Some((_, level)) = pending.pop_first() {
        let level: Vec<Vec<u64>> = level.into_iter().collect();
        explored += level.len() as u64;
        let results = par::map(exec, &level, |s| expand(n, s, cfg.max_cardinality));
        for r in results {
            leaves.extend(r.leaf);
            for c in r.children {
                pending.entry(c.len()).or_default().insert(c);
            }
        }
        if let Some(path) = &cfg.checkpoint {
            save_checkpoint(
                path,
                &Checkpoint {
                    n,
                    max_cardinality: cfg.max_cardinality,
                    pending: pending
                        .iter()
                        .map(|(k, v)| (*k, v.iter().cloned().collect()))
                        .collect(),
                    leaves: leaves.iter().cloned().collect(),
                    explored,
                },
            )?;
        }
    }
    let reps: Vec<Code> = leaves
        .iter()
        .map(|cert| Code::from_bits(n, cert.iter().map(|&x| cert_to_bits(n, x))))
        .collect::<Result<_>>()?;
    let primary_classes = reps.len();
    let flagged = par::map(exec, &reps, |r| ClassFlags::of(r).map(|f| (r.clone(), f)));
    let mut classes = Vec::new();
    for item in flagged {
        let (rep, flags) = item?;
        if cfg.nonbipartite_only && flags.bipartite {
            continue;
        }
        classes.push(EquivalenceClass {
            cardinality: rep.len(),
            representative: canonical_form(&rep)?,
            flags,
        });
    }
    classes.sort_by(|a, b| {
        a.cardinality
            .cmp(&b.cardinality)
            .then_with(|| a.representative.words().cmp(b.representative.words()))
    });
    Ok(Classification {
        n,
        classes,
        primary_classes,
        states_explored: explored,
    })
}
