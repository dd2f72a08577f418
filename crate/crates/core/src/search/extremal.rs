//! Exact extremal searches: smallest extended unitrades and largest
//! multifold packings.

use serde::Serialize;

use crate::analysis::{index_word, word_index};
use crate::bounds;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{ball, Space};

use super::classify::{Closure, State};

/// Smallest nonempty extended 1-perfect unitrade of even length `n <= 8`,
/// by depth-first branch and bound.
pub fn min_extended_unitrade_size(n: usize) -> Result<usize> {
    if !n.is_multiple_of(2) || !(2..=8).contains(&n) {
        return Err(Error::Unsupported(format!(
            "length must be even and at most 8, got {n}"
        )));
    }
    if n == 2 {
        return Ok(2);
    }
    // every nonempty unitrade may be moved to contain 0 and 0 + e_0 + e_1
    let start = State::new(n, &[0, 0b11]).expect("consistent");
    let mut best = usize::MAX;
    dfs_min(start, &mut best);
    Ok(best)
}

fn dfs_min(mut s: State, best: &mut usize) {
    match s.close() {
        Closure::Dead => {}
        Closure::Complete => *best = (*best).min(s.words.len()),
        Closure::Open(cands) => {
            // each new word closes at most n half-filled balls
            let lower = s.words.len() + s.open_balls().div_ceil(s.n());
            if lower >= *best {
                return;
            }
            for v in cands {
                let mut child = s.clone();
                child.add(v);
                if child.words.len() < *best {
                    dfs_min(child, best);
                }
            }
        }
    }
}

/// Options for [`max_packing_size`].
#[derive(Clone, Debug)]
pub struct PackingSearch {
    pub n: usize,
    pub q: usize,
    pub lambda: usize,
    /// Stop as soon as the best closed-form bound is attained.
    pub stop_at_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingSearchResult {
    pub size: usize,
    pub witness: Code,
    pub nodes: u64,
    /// The bound that ended the search early, if any.
    pub bound_reached: Option<String>,
}

struct Packer {
    lambda: usize,
    /// Balls containing each vertex (centers).
    balls_of: Vec<Vec<usize>>,
    /// Cover ball assigned to each vertex.
    cover_of: Vec<usize>,
    cover: Vec<usize>,
    count: Vec<usize>,
    /// Undecided vertices per cover ball.
    undecided: Vec<usize>,
    mult: Vec<usize>,
    best: usize,
    best_mult: Vec<usize>,
    cap: Option<usize>,
    nodes: u64,
}

impl Packer {
    fn bound(&self, current: usize) -> usize {
        current
            + self
                .cover
                .iter()
                .enumerate()
                .map(|(k, &c)| (self.lambda - self.count[c]).min(self.lambda * self.undecided[k]))
                .sum::<usize>()
    }

    fn done(&self) -> bool {
        self.cap.is_some_and(|c| self.best >= c)
    }

    fn go(&mut self, v: usize, current: usize) {
        self.nodes += 1;
        if current > self.best {
            self.best = current;
            self.best_mult = self.mult.clone();
        }
        if v == self.balls_of.len() || self.done() || self.bound(current) <= self.best {
            return;
        }
        let room = self.balls_of[v]
            .iter()
            .map(|&c| self.lambda - self.count[c])
            .min()
            .unwrap_or(0);
        let lowest = usize::from(v == 0);
        let k = self.cover_of[v];
        self.undecided[k] -= 1;
        for m in (lowest..=room).rev() {
            for &c in &self.balls_of[v] {
                self.count[c] += m;
            }
            self.mult[v] = m;
            self.go(v + 1, current + m);
            for &c in &self.balls_of[v] {
                self.count[c] -= m;
            }
            if self.done() {
                break;
            }
        }
        self.mult[v] = 0;
        self.undecided[k] += 1;
    }
}

/// Largest `lambda`-fold 1-packing (as a multiset) in `H(n, q)`.
pub fn max_packing_size(opts: &PackingSearch) -> Result<PackingSearchResult> {
    let space = Space::new(opts.n, opts.q)?;
    if opts.lambda == 0 {
        return Err(Error::Precondition("lambda must be positive".into()));
    }
    let total = match space.num_vertices() {
        Some(v) if v <= 256 => v as usize,
        _ => {
            return Err(Error::Unsupported(
                "exact packing search needs at most 256 vertices".into(),
            ))
        }
    };
    let balls_of: Vec<Vec<usize>> = (0..total)
        .map(|i| {
            ball(&index_word(space, i as u64), 1)
                .expect("radius 1")
                .map(|w| word_index(&w) as usize)
                .collect()
        })
        .collect();
    // greedy cover of the vertices by balls, in lexicographic order
    let mut cover = Vec::new();
    let mut cover_of = vec![usize::MAX; total];
    for c in 0..total {
        if balls_of[c].iter().all(|&v| cover_of[v] != usize::MAX) {
            continue;
        }
        let k = cover.len();
        cover.push(c);
        for &v in &balls_of[c] {
            if cover_of[v] == usize::MAX {
                cover_of[v] = k;
            }
        }
    }
    let mut undecided = vec![0usize; cover.len()];
    for &k in &cover_of {
        undecided[k] += 1;
    }
    let cap_info = if opts.stop_at_bound {
        bounds::best_bound_usize(opts.n, opts.q, opts.lambda, 1)
    } else {
        None
    };
    let mut p = Packer {
        lambda: opts.lambda,
        balls_of,
        cover_of,
        cover,
        count: vec![0; total],
        undecided,
        mult: vec![0; total],
        best: 0,
        best_mult: vec![0; total],
        cap: cap_info,
        nodes: 0,
    };
    p.go(0, 0);
    let mut words = Vec::with_capacity(p.best);
    for (i, &m) in p.best_mult.iter().enumerate() {
        for _ in 0..m {
            words.push(index_word(space, i as u64));
        }
    }
    Ok(PackingSearchResult {
        size: p.best,
        witness: Code::new(space, words)?,
        nodes: p.nodes,
        bound_reached: cap_info
            .filter(|&c| p.best >= c)
            .map(|c| format!("best closed-form bound {c}")),
    })
}

/// Largest binary two-fold 1-packing of length `n <= 7`; stops at the
/// closed-form bound once it is attained.
pub fn max_twofold_packing_size(n: usize) -> Result<usize> {
    if n > 7 {
        return Err(Error::Unsupported(format!(
            "length must be at most 7, got {n}"
        )));
    }
    Ok(max_packing_size(&PackingSearch {
        n,
        q: 2,
        lambda: 2,
        stop_at_bound: true,
    })?
    .size)
}
