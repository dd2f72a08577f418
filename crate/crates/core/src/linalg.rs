//! Exact linear algebra over GF(2) and the mixed Z2/Z4 alphabet, the Gray
//! map, and translation-plus-permutation isometries of the binary cube.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{Space, Word};

/// Rows of a binary matrix, packed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn new(n: usize, rows: Vec<u64>) -> Result<Self> {
        let space = Space::binary(n)?;
        space.require_packed()?;
        if rows.iter().any(|r| r & !space.mask() != 0) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: 64,
            });
        }
        Ok(BinaryMatrix { n, rows })
    }

    /// Rows given as digit strings; all rows must share one length.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        if n == 0 {
            return Err(Error::Precondition(
                "empty matrix needs an explicit length".into(),
            ));
        }
        let space = Space::binary(n)?;
        let rows = rows
            .iter()
            .map(|r| Word::parse(space, r).map(|w| w.bits().unwrap()))
            .collect::<Result<Vec<_>>>()?;
        BinaryMatrix::new(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Sub-matrix of the given rows.
    pub fn select_rows(&self, idx: &[usize]) -> BinaryMatrix {
        BinaryMatrix {
            n: self.n,
            rows: idx.iter().map(|&i| self.rows[i]).collect(),
        }
    }

    /// Column `j` as a bit mask over rows.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    pub fn rank(&self) -> usize {
        reduce_basis(&self.rows).len()
    }
}

/// Row-reduced basis of the span of `rows`.
pub(crate) fn reduce_basis(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// All `2^rank` sums of subsets of the rows.
pub fn gf2_span(gens: &BinaryMatrix) -> Result<Code> {
    let basis = reduce_basis(&gens.rows);
    if basis.len() > 30 {
        return Err(Error::Unsupported(format!(
            "span of dimension {}",
            basis.len()
        )));
    }
    let space = Space::binary(gens.n)?;
    let mut words = Vec::with_capacity(1 << basis.len());
    for mask in 0u64..(1u64 << basis.len()) {
        let mut w = 0u64;
        for (i, b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w ^= b;
            }
        }
        words.push(w);
    }
    Ok(Code::from_bits_unchecked(space, words))
}

/// Dimension of the GF(2) span of the codewords.
pub fn gf2_rank(code: &Code) -> Result<usize> {
    Ok(reduce_basis(&code.bits()?).len())
}

/// Result of [`coset_union`].
#[derive(Clone, Debug)]
pub struct CosetUnion {
    pub code: Code,
    /// Words produced more than once (representatives sharing a coset).
    pub collapsed: usize,
}

/// `union over r in reps of (K + r)`; `K` must be closed under addition.
pub fn coset_union(k: &Code, reps: &[Word]) -> Result<CosetUnion> {
    let space = k.space();
    let distinct = k.distinct();
    let members: HashSet<&Word> = distinct.iter().collect();
    if distinct.is_empty() {
        return Err(Error::NotAGroup);
    }
    for a in distinct.iter() {
        for b in distinct.iter() {
            if !members.contains(&a.add(b)?) {
                return Err(Error::NotAGroup);
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut produced = 0usize;
    for r in reps {
        space.check_same(&r.space())?;
        for w in distinct.iter() {
            out.insert(w.add(r)?);
            produced += 1;
        }
    }
    let collapsed = produced - out.len();
    Ok(CosetUnion {
        code: Code::new(space, out.into_iter().collect())?,
        collapsed,
    })
}

/// A word over Z2^b x Z4^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedWord {
    pub z2: Vec<u8>,
    pub z4: Vec<u8>,
}

impl MixedWord {
    pub fn new(z2: Vec<u8>, z4: Vec<u8>) -> Result<Self> {
        if let Some((position, &s)) = z2.iter().enumerate().find(|(_, &s)| s > 1) {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol: s as usize,
                q: 2,
            });
        }
        if let Some((position, &s)) = z4.iter().enumerate().find(|(_, &s)| s > 3) {
            return Err(Error::SymbolOutOfRange {
                position: z2.len() + position,
                symbol: s as usize,
                q: 4,
            });
        }
        Ok(MixedWord { z2, z4 })
    }

    pub fn zero(binary_cols: usize, quaternary_cols: usize) -> Self {
        MixedWord {
            z2: vec![0; binary_cols],
            z4: vec![0; quaternary_cols],
        }
    }

    /// Parses `bbb|kkkk` (binary digits, bar, quaternary digits).
    pub fn parse(text: &str) -> Result<Self> {
        let (b, k) = text.split_once('|').ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing `|` in mixed word {text:?}"),
        })?;
        let digits = |s: &str| -> Result<Vec<u8>> {
            s.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse {
                        line: 0,
                        msg: format!("non-digit {c:?} in mixed word"),
                    })
                })
                .collect()
        };
        MixedWord::new(digits(b)?, digits(k)?)
    }

    pub fn add(&self, other: &MixedWord) -> MixedWord {
        MixedWord {
            z2: self
                .z2
                .iter()
                .zip(&other.z2)
                .map(|(a, b)| (a + b) % 2)
                .collect(),
            z4: self
                .z4
                .iter()
                .zip(&other.z4)
                .map(|(a, b)| (a + b) % 4)
                .collect(),
        }
    }

    fn shape(&self) -> (usize, usize) {
        (self.z2.len(), self.z4.len())
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.z2 {
            write!(f, "{d}")?;
        }
        f.write_str("|")?;
        for d in &self.z4 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Generator or check matrix over Z2^b x Z4^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMatrix {
    binary_cols: usize,
    quaternary_cols: usize,
    rows: Vec<MixedWord>,
}

impl MixedMatrix {
    pub fn new(binary_cols: usize, quaternary_cols: usize, rows: Vec<MixedWord>) -> Result<Self> {
        for r in &rows {
            if r.shape() != (binary_cols, quaternary_cols) {
                return Err(Error::LengthMismatch {
                    expected: binary_cols + quaternary_cols,
                    found: r.z2.len() + r.z4.len(),
                });
            }
        }
        Ok(MixedMatrix {
            binary_cols,
            quaternary_cols,
            rows,
        })
    }

    pub fn from_strs(binary_cols: usize, quaternary_cols: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| MixedWord::parse(r))
            .collect::<Result<Vec<_>>>()?;
        MixedMatrix::new(binary_cols, quaternary_cols, rows)
    }

    pub fn binary_cols(&self) -> usize {
        self.binary_cols
    }

    pub fn quaternary_cols(&self) -> usize {
        self.quaternary_cols
    }

    pub fn rows(&self) -> &[MixedWord] {
        &self.rows
    }

    pub fn select_rows(&self, idx: &[usize]) -> MixedMatrix {
        MixedMatrix {
            binary_cols: self.binary_cols,
            quaternary_cols: self.quaternary_cols,
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Text form: `z2 <b> z4 <k>` header, then one `bits|quats` row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("z2 {} z4 {}\n", self.binary_cols, self.quaternary_cols);
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `z2 <b> z4 <k>` header".into(),
        })?;
        let f: Vec<&str> = header.split_whitespace().collect();
        let bad = || Error::Parse {
            line: hline,
            msg: format!("expected `z2 <b> z4 <k>`, found {header:?}"),
        };
        if f.len() != 4 || f[0] != "z2" || f[2] != "z4" {
            return Err(bad());
        }
        let b: usize = f[1].parse().map_err(|_| bad())?;
        let k: usize = f[3].parse().map_err(|_| bad())?;
        let mut rows = Vec::new();
        for (line, l) in lines {
            let w = MixedWord::parse(l).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            if w.shape() != (b, k) {
                return Err(Error::Parse {
                    line,
                    msg: format!("row {l:?} does not have {b}+{k} entries"),
                });
            }
            rows.push(w);
        }
        MixedMatrix::new(b, k, rows)
    }
}

/// Gray map: each Z4 symbol becomes two bits (0->00, 1->01, 2->11, 3->10);
/// the quaternary block is emitted first, then the binary block.
pub fn gray_map(w: &MixedWord) -> Result<Word> {
    let n = w.z2.len() + 2 * w.z4.len();
    let space = Space::binary(n)?;
    let mut symbols = Vec::with_capacity(n);
    for &s in &w.z4 {
        let pair = match s {
            0 => [0, 0],
            1 => [0, 1],
            2 => [1, 1],
            3 => [1, 0],
            _ => {
                return Err(Error::SymbolOutOfRange {
                    position: symbols.len() / 2,
                    symbol: s as usize,
                    q: 4,
                })
            }
        };
        symbols.extend_from_slice(&pair);
    }
    for &s in &w.z2 {
        if s > 1 {
            return Err(Error::SymbolOutOfRange {
                position: w.z4.len() + symbols.len(),
                symbol: s as usize,
                q: 2,
            });
        }
        symbols.push(s);
    }
    Word::from_symbols(space, &symbols)
}

/// Additive closure of the rows (Z2 part mod 2, Z4 part mod 4).
pub fn z4_module_span(gens: &MixedMatrix) -> BTreeSet<MixedWord> {
    let zero = MixedWord::zero(gens.binary_cols, gens.quaternary_cols);
    let mut seen = BTreeSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(w) = queue.pop_front() {
        for g in &gens.rows {
            let s = w.add(g);
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    seen
}

/// Gray image of a set of mixed words as a binary code.
pub fn gray_image<'a, I: IntoIterator<Item = &'a MixedWord>>(words: I, n: usize) -> Result<Code> {
    let words = words
        .into_iter()
        .map(gray_map)
        .collect::<Result<Vec<_>>>()?;
    Code::new(Space::binary(n)?, words)
}

/// Moves coordinate `i` to position `perm[i]`.
pub(crate) fn permute_bits(x: u64, perm: &[usize]) -> u64 {
    let mut y = 0u64;
    let mut rest = x;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        y |= 1u64 << perm[i];
    }
    y
}

/// The isometry `x -> translation + pi x` of the binary cube, where
/// `(pi x)_{pi(i)} = x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropelinearMap {
    n: usize,
    translation: u64,
    perm: Vec<usize>,
}

impl PropelinearMap {
    pub fn new(translation: &Word, perm: Vec<usize>) -> Result<Self> {
        let n = translation.len();
        let bits = translation
            .bits()
            .ok_or_else(|| Error::Unsupported("translation must be a packed binary word".into()))?;
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Precondition("permutation is not a bijection".into()));
            }
            seen[p] = true;
        }
        Ok(PropelinearMap {
            n,
            translation: bits,
            perm,
        })
    }

    /// Builds the permutation from disjoint cycles, e.g. `[[0,1],[2,3]]`.
    pub fn from_cycles(translation: &Word, cycles: &[&[usize]]) -> Result<Self> {
        let n = translation.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                if i >= n {
                    return Err(Error::Precondition(format!("cycle entry {i} >= {n}")));
                }
                perm[i] = c[(k + 1) % c.len()];
            }
        }
        PropelinearMap::new(translation, perm)
    }

    pub fn identity(n: usize) -> Result<Self> {
        PropelinearMap::new(&Word::zero(Space::binary(n)?), (0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn translation(&self) -> Word {
        Word::from_bits_unchecked(Space::binary(self.n).unwrap(), self.translation)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub(crate) fn apply_bits(&self, x: u64) -> u64 {
        self.translation ^ permute_bits(x, &self.perm)
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &PropelinearMap) -> Result<PropelinearMap> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(PropelinearMap {
            n: self.n,
            translation: self.translation ^ permute_bits(other.translation, &self.perm),
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        })
    }
}

/// `m(x) = translation + pi x`.
pub fn apply_propelinear(m: &PropelinearMap, x: &Word) -> Result<Word> {
    if x.len() != m.n {
        return Err(Error::LengthMismatch {
            expected: m.n,
            found: x.len(),
        });
    }
    let bits = x.bits().ok_or_else(|| Error::NotBinary(x.space().q()))?;
    Ok(Word::from_bits_unchecked(x.space(), m.apply_bits(bits)))
}

/// Smallest composition-closed set containing the identity and `gens`.
pub fn group_closure(n: usize, gens: &[PropelinearMap]) -> Result<Vec<PropelinearMap>> {
    if let Some(g) = gens.iter().find(|g| g.n != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: g.n,
        });
    }
    let id = PropelinearMap::identity(n)?;
    let mut seen: HashSet<PropelinearMap> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let next = g.compose(&m)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<PropelinearMap> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Orbit of `x` under the group generated by `gens`.
pub fn orbit(gens: &[PropelinearMap], x: &Word) -> Result<Code> {
    let start = x.bits().ok_or_else(|| Error::NotBinary(x.space().q()))?;
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(y) = queue.pop_front() {
        for g in gens {
            if g.n != x.len() {
                return Err(Error::LengthMismatch {
                    expected: x.len(),
                    found: g.n,
                });
            }
            let z = g.apply_bits(y);
            if seen.insert(z) {
                queue.push_back(z);
            }
        }
    }
    Ok(Code::from_bits_unchecked(x.space(), seen))
}
