//! Equitable partitions of `H(n, q)`, distance partitions and the five-cell
//! partition carried by a size-96 unitrade.

use std::collections::VecDeque;

use serde::Serialize;

use crate::analysis::{index_word, is_extended_unitrade, word_index};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::word::{Space, Word};

/// Largest vertex count handled.
pub const MAX_VERTICES: u64 = 1 << 22;

/// The intersection matrix of the five-cell partition around the length-10
/// completely regular codes, cells ordered `C0..C4`.
pub const C01234: [[usize; 5]; 5] = [
    [0, 10, 0, 0, 0],
    [1, 0, 9, 0, 0],
    [0, 6, 0, 2, 2],
    [0, 0, 10, 0, 0],
    [0, 0, 10, 0, 0],
];

/// `s[i][j]`: neighbors in cell `j` of any vertex in cell `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionMatrix {
    pub s: Vec<Vec<usize>>,
}

impl IntersectionMatrix {
    pub fn from_rows<const M: usize>(rows: &[[usize; M]; M]) -> Self {
        IntersectionMatrix {
            s: rows.iter().map(|r| r.to_vec()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.s.len()
    }

    /// `|C_i| s_ij = |C_j| s_ji` for all cells.
    pub fn is_consistent(&self, sizes: &[usize]) -> bool {
        let m = self.size();
        sizes.len() == m
            && (0..m).all(|i| (0..m).all(|j| sizes[i] * self.s[i][j] == sizes[j] * self.s[j][i]))
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.s.iter().map(|r| r.iter().sum()).collect()
    }

    /// Only diagonal and adjacent entries are nonzero.
    pub fn is_tridiagonal(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| (0..m).all(|j| i.abs_diff(j) <= 1 || self.s[i][j] == 0))
    }

    /// `(b_0, ..., b_{m-1}; c_1, ..., c_m)` for a tridiagonal matrix.
    pub fn intersection_array(&self) -> Option<IntersectionArray> {
        if !self.is_tridiagonal() {
            return None;
        }
        let m = self.size();
        Some(IntersectionArray {
            b: (0..m - 1).map(|i| self.s[i][i + 1]).collect(),
            c: (1..m).map(|i| self.s[i][i - 1]).collect(),
        })
    }

    /// Cell sizes forced by consistency, normalized so they sum to `total`.
    /// Requires the cells to be connected through nonzero entries.
    pub fn implied_sizes(&self, total: usize) -> Option<Vec<usize>> {
        use num_rational::Ratio;
        let m = self.size();
        let mut size: Vec<Option<Ratio<u128>>> = vec![None; m];
        size[0] = Some(Ratio::from_integer(1));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..m {
                if size[j].is_none() && self.s[i][j] > 0 && self.s[j][i] > 0 {
                    let si = size[i].expect("visited");
                    size[j] = Some(si * Ratio::new(self.s[i][j] as u128, self.s[j][i] as u128));
                    queue.push_back(j);
                }
            }
        }
        let size: Vec<Ratio<u128>> = size.into_iter().collect::<Option<_>>()?;
        let sum: Ratio<u128> = size.iter().copied().sum();
        let scale = Ratio::from_integer(total as u128) / sum;
        size.iter()
            .map(|x| {
                let v = x * scale;
                v.is_integer().then(|| v.to_integer() as usize)
            })
            .collect()
    }
}

/// Intersection array of a completely regular code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl std::fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({};{})", join(&self.b), join(&self.c))
    }
}

/// A partition of all vertices of a space into numbered cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    space: Space,
    cell_of: Vec<u32>,
    sizes: Vec<usize>,
}

fn vertex_count(space: Space) -> Result<usize> {
    match space.num_vertices() {
        Some(v) if v <= MAX_VERTICES => Ok(v as usize),
        _ => Err(Error::Unsupported(format!(
            "partitions need at most {MAX_VERTICES} vertices"
        ))),
    }
}

impl Partition {
    /// Builds a partition from cells that must be disjoint and cover the space.
    pub fn from_cells(space: Space, cells: &[Code]) -> Result<Self> {
        let total = vertex_count(space)?;
        let mut cell_of = vec![u32::MAX; total];
        let mut sizes = vec![0usize; cells.len()];
        for (k, cell) in cells.iter().enumerate() {
            space.check_same(&cell.space())?;
            for w in cell.distinct().iter() {
                let idx = word_index(w) as usize;
                if cell_of[idx] != u32::MAX {
                    return Err(Error::Precondition(format!(
                        "vertex {w} lies in cells {} and {k}",
                        cell_of[idx]
                    )));
                }
                cell_of[idx] = k as u32;
                sizes[k] += 1;
            }
        }
        if let Some(idx) = cell_of.iter().position(|&c| c == u32::MAX) {
            return Err(Error::Precondition(format!(
                "vertex {} lies in no cell",
                index_word(space, idx as u64)
            )));
        }
        Ok(Partition {
            space,
            cell_of,
            sizes,
        })
    }

    fn from_labels(space: Space, cell_of: Vec<u32>, cells: usize) -> Self {
        let mut sizes = vec![0usize; cells];
        for &c in &cell_of {
            sizes[c as usize] += 1;
        }
        Partition {
            space,
            cell_of,
            sizes,
        }
    }

    /// The single-cell partition.
    pub fn trivial(space: Space) -> Result<Self> {
        let total = vertex_count(space)?;
        Ok(Partition::from_labels(space, vec![0; total], 1))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn num_cells(&self) -> usize {
        self.sizes.len()
    }

    pub fn cell_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn cell_of(&self, w: &Word) -> usize {
        self.cell_of[word_index(w) as usize] as usize
    }

    pub fn cell(&self, k: usize) -> Code {
        let words = self
            .cell_of
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == k)
            .map(|(i, _)| index_word(self.space, i as u64))
            .collect();
        Code::new(self.space, words).expect("same space")
    }

    pub fn cells(&self) -> Vec<Code> {
        (0..self.num_cells()).map(|k| self.cell(k)).collect()
    }

    /// Merges cell `j` into cell `i` and renumbers the later cells.
    pub fn merge(&self, i: usize, j: usize) -> Result<Partition> {
        let m = self.num_cells();
        if i >= m || j >= m || i == j {
            return Err(Error::Precondition(format!(
                "cannot merge cells {i} and {j} of {m}"
            )));
        }
        let (keep, drop) = (i.min(j) as u32, i.max(j) as u32);
        let labels = self
            .cell_of
            .iter()
            .map(|&c| match c {
                c if c == drop => keep,
                c if c > drop => c - 1,
                c => c,
            })
            .collect();
        Ok(Partition::from_labels(self.space, labels, m - 1))
    }
}

/// Calls `f` with the index of every neighbor of vertex `idx`.
fn for_each_neighbor(space: Space, idx: usize, mut f: impl FnMut(usize)) {
    let (n, q) = (space.n(), space.q());
    let mut weight = 1usize;
    for _ in 0..n {
        let digit = idx / weight % q;
        let base = idx - digit * weight;
        for d in 0..q {
            if d != digit {
                f(base + d * weight);
            }
        }
        weight *= q;
    }
}

/// Counterexample to equitability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquitableWitness {
    pub cell: usize,
    /// First vertex of the cell, whose profile defines the expectation.
    pub reference: Word,
    pub expected: Vec<usize>,
    pub vertex: Word,
    pub found: Vec<usize>,
}

/// Outcome of [`is_equitable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Equitability {
    Equitable(IntersectionMatrix),
    NotEquitable(EquitableWitness),
}

impl Equitability {
    pub fn matrix(&self) -> Option<&IntersectionMatrix> {
        match self {
            Equitability::Equitable(m) => Some(m),
            Equitability::NotEquitable(_) => None,
        }
    }
}

pub fn is_equitable(p: &Partition) -> Equitability {
    is_equitable_with(p, Exec::default())
}

pub fn is_equitable_with(p: &Partition, exec: Exec) -> Equitability {
    let m = p.num_cells();
    let profile = |idx: usize| {
        let mut counts = vec![0usize; m];
        for_each_neighbor(p.space, idx, |j| counts[p.cell_of[j] as usize] += 1);
        counts
    };
    let mut first = vec![usize::MAX; m];
    for (i, &c) in p.cell_of.iter().enumerate() {
        if first[c as usize] == usize::MAX {
            first[c as usize] = i;
        }
    }
    let expected: Vec<Vec<usize>> = first
        .iter()
        .map(|&i| {
            if i == usize::MAX {
                vec![0; m]
            } else {
                profile(i)
            }
        })
        .collect();
    let bad = par::map_reduce(
        exec,
        0..p.cell_of.len(),
        usize::MAX,
        |i| {
            if profile(i) == expected[p.cell_of[i] as usize] {
                usize::MAX
            } else {
                i
            }
        },
        usize::min,
    );
    if bad == usize::MAX {
        return Equitability::Equitable(IntersectionMatrix { s: expected });
    }
    let cell = p.cell_of[bad] as usize;
    Equitability::NotEquitable(EquitableWitness {
        cell,
        reference: index_word(p.space, first[cell] as u64),
        expected: expected[cell].clone(),
        vertex: index_word(p.space, bad as u64),
        found: profile(bad),
    })
}

/// Cells by exact distance to `c`.
pub fn distance_partition(c: &Code) -> Result<Partition> {
    if c.is_empty() {
        return Err(Error::EmptyCode);
    }
    let space = c.space();
    let total = vertex_count(space)?;
    let mut dist = vec![u32::MAX; total];
    let mut queue = VecDeque::new();
    for w in c {
        let idx = word_index(w) as usize;
        if dist[idx] == u32::MAX {
            dist[idx] = 0;
            queue.push_back(idx);
        }
    }
    let mut radius = 0u32;
    while let Some(i) = queue.pop_front() {
        let d = dist[i];
        radius = radius.max(d);
        for_each_neighbor(space, i, |j| {
            if dist[j] == u32::MAX {
                dist[j] = d + 1;
                queue.push_back(j);
            }
        });
    }
    Ok(Partition::from_labels(space, dist, radius as usize + 1))
}

/// The distance partition of `c0` with the distance-3 cell split into
/// `cell3 \ c4` and `c4`.
pub fn split_distance3_cell(c0: &Code, c4: &Code) -> Result<Partition> {
    let dp = distance_partition(c0)?;
    if dp.num_cells() != 4 {
        return Err(Error::Precondition(format!(
            "the code has covering radius {}, expected 3",
            dp.num_cells() - 1
        )));
    }
    let mut labels = dp.cell_of.clone();
    for w in c4.distinct().iter() {
        let idx = word_index(w) as usize;
        if labels[idx] != 3 {
            return Err(Error::Precondition(format!(
                "{w} is at distance {} from the code, not 3",
                labels[idx]
            )));
        }
        labels[idx] = 4;
    }
    let cells = if c4.is_empty() { 4 } else { 5 };
    Ok(Partition::from_labels(dp.space, labels, cells))
}

/// Partition rebuilt from a size-96 unitrade, with the translation applied
/// to make it odd.
#[derive(Clone, Debug)]
pub struct UnitradePartition {
    pub partition: Partition,
    pub translation: Word,
}

/// Rebuilds `(C0, ..., C4)` with `C4 = T`: `C2 = N(T)`, `C0` = the other
/// vertices of that parity, `C1 = N(C0)`, `C3` = the rest. Even `T` is first
/// translated by `e_0`. Returns `None` when the result is not equitable with
/// [`C01234`].
pub fn partition_from_unitrade(t: &Code) -> Result<Option<UnitradePartition>> {
    let space = t.space();
    if space.n() != 10 || !space.is_binary() {
        return Err(Error::Precondition(
            "expected a binary code of length 10".into(),
        ));
    }
    if t.len() != 96 || !t.is_set() {
        return Err(Error::Precondition(format!(
            "expected 96 distinct words, got {}",
            t.len()
        )));
    }
    let check = is_extended_unitrade(t)?;
    if !check.holds {
        return Err(Error::NotUnitrade {
            witness: check.witness.map(|w| w.to_string()).unwrap_or_default(),
            count: check.count,
        });
    }
    let mut translation = Word::zero(space);
    let mut t = t.clone();
    if t.words()[0].parity() == 0 {
        translation = Word::from_bits(10, 1)?;
        t = t.translate(&translation)?;
    }
    let total = vertex_count(space)?;
    const NONE: u32 = u32::MAX;
    let mut labels = vec![NONE; total];
    let parity = |i: usize| index_word(space, i as u64).parity();
    for w in &t {
        labels[word_index(w) as usize] = 4;
    }
    for i in 0..total {
        if labels[i] == 4 {
            for_each_neighbor(space, i, |j| labels[j] = 2);
        }
    }
    for i in 0..total {
        if labels[i] == NONE && parity(i) == 0 {
            labels[i] = 0;
        }
    }
    for i in 0..total {
        if labels[i] == 0 {
            for_each_neighbor(space, i, |j| labels[j] = 1);
        }
    }
    for l in labels.iter_mut() {
        if *l == NONE {
            *l = 3;
        }
    }
    let partition = Partition::from_labels(space, labels, 5);
    let target = IntersectionMatrix::from_rows(&C01234);
    Ok(match is_equitable(&partition) {
        Equitability::Equitable(m) if m == target => Some(UnitradePartition {
            partition,
            translation,
        }),
        _ => None,
    })
}
