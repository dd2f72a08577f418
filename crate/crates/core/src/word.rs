//! Words of the Hamming graph `H(n, q)` and elementary metric operations.
//!
//! Binary words with `n <= 64` are packed into a `u64` (bit `i` holds
//! coordinate `i`); all other words are stored as a byte per symbol.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest alphabet accepted by the digit-string format.
pub const MAX_Q: usize = 10;

/// Parameters `(n, q)` of a Hamming space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Space {
    n: usize,
    q: usize,
}

impl Space {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n == 0 || !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidSpace { n, q });
        }
        Ok(Space { n, q })
    }

    pub fn binary(n: usize) -> Result<Self> {
        Space::new(n, 2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    /// Binary words of this space fit in one machine word.
    pub fn is_packed(&self) -> bool {
        self.q == 2 && self.n <= 64
    }

    /// Number of vertices `q^n`, if it fits in a `u64`.
    pub fn num_vertices(&self) -> Option<u64> {
        (self.q as u64).checked_pow(self.n as u32)
    }

    /// `|B_r| = sum_{i<=r} C(n,i) (q-1)^i`, saturating at `u128::MAX`.
    pub fn ball_size(&self, r: usize) -> u128 {
        let mut total: u128 = 0;
        let mut binom: u128 = 1;
        let mut pow: u128 = 1;
        for i in 0..=r.min(self.n) {
            if i > 0 {
                binom = binom.saturating_mul((self.n - i + 1) as u128) / i as u128;
                pow = pow.saturating_mul((self.q - 1) as u128);
            }
            total = total.saturating_add(binom.saturating_mul(pow));
        }
        total
    }

    pub(crate) fn check_same(&self, other: &Space) -> Result<()> {
        if self != other {
            return Err(Error::SpaceMismatch {
                n1: self.n,
                q1: self.q,
                n2: other.n,
                q2: other.q,
            });
        }
        Ok(())
    }

    pub(crate) fn require_binary(&self) -> Result<()> {
        if self.q != 2 {
            return Err(Error::NotBinary(self.q));
        }
        Ok(())
    }

    pub(crate) fn require_packed(&self) -> Result<()> {
        self.require_binary()?;
        if self.n > 64 {
            return Err(Error::Unsupported(format!(
                "binary length {} exceeds 64",
                self.n
            )));
        }
        Ok(())
    }

    /// All-ones mask for packed binary words.
    pub(crate) fn mask(&self) -> u64 {
        if self.n >= 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Data {
    Bits(u64),
    Symbols(Box<[u8]>),
}

/// A vertex of `H(n, q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    space: Space,
    data: Data,
}

impl Word {
    pub fn zero(space: Space) -> Self {
        if space.is_packed() {
            Word {
                space,
                data: Data::Bits(0),
            }
        } else {
            Word {
                space,
                data: Data::Symbols(vec![0u8; space.n].into_boxed_slice()),
            }
        }
    }

    pub fn from_symbols(space: Space, symbols: &[u8]) -> Result<Self> {
        if symbols.len() != space.n {
            return Err(Error::LengthMismatch {
                expected: space.n,
                found: symbols.len(),
            });
        }
        if let Some((position, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s as usize >= space.q)
        {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol: s as usize,
                q: space.q,
            });
        }
        if space.is_packed() {
            let bits = symbols
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &s)| acc | ((s as u64) << i));
            Ok(Word {
                space,
                data: Data::Bits(bits),
            })
        } else {
            Ok(Word {
                space,
                data: Data::Symbols(symbols.into()),
            })
        }
    }

    /// Binary word from a bit mask (bit `i` is coordinate `i`).
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        let space = Space::binary(n)?;
        space.require_packed()?;
        if bits & !space.mask() != 0 {
            return Err(Error::SymbolOutOfRange {
                position: 64 - bits.leading_zeros() as usize - 1,
                symbol: 1,
                q: 2,
            });
        }
        Ok(Word {
            space,
            data: Data::Bits(bits),
        })
    }

    pub(crate) fn from_bits_unchecked(space: Space, bits: u64) -> Self {
        debug_assert!(space.is_packed());
        Word {
            space,
            data: Data::Bits(bits),
        }
    }

    /// Parses an `n`-character digit string.
    pub fn parse(space: Space, text: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(space.n);
        for (position, ch) in text.chars().enumerate() {
            let d = ch.to_digit(10).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("non-digit character {ch:?} at position {position}"),
            })?;
            symbols.push(d as u8);
        }
        Word::from_symbols(space, &symbols)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn len(&self) -> usize {
        self.space.n
    }

    pub fn is_empty(&self) -> bool {
        self.space.n == 0
    }

    pub fn symbol(&self, i: usize) -> u8 {
        match &self.data {
            Data::Bits(b) => ((b >> i) & 1) as u8,
            Data::Symbols(s) => s[i],
        }
    }

    pub fn symbols(&self) -> Vec<u8> {
        (0..self.space.n).map(|i| self.symbol(i)).collect()
    }

    /// Packed representation for binary words with `n <= 64`.
    pub fn bits(&self) -> Option<u64> {
        match self.data {
            Data::Bits(b) => Some(b),
            Data::Symbols(_) => None,
        }
    }

    pub fn weight(&self) -> usize {
        match &self.data {
            Data::Bits(b) => b.count_ones() as usize,
            Data::Symbols(s) => s.iter().filter(|&&x| x != 0).count(),
        }
    }

    /// Sum of symbols mod 2.
    pub fn parity(&self) -> u8 {
        match &self.data {
            Data::Bits(b) => (b.count_ones() & 1) as u8,
            Data::Symbols(s) => (s.iter().map(|&x| x as usize).sum::<usize>() % 2) as u8,
        }
    }

    pub fn distance(&self, other: &Word) -> Result<usize> {
        self.space.check_same(&other.space)?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Word) -> usize {
        match (&self.data, &other.data) {
            (Data::Bits(a), Data::Bits(b)) => (a ^ b).count_ones() as usize,
            (Data::Symbols(a), Data::Symbols(b)) => {
                a.iter().zip(b.iter()).filter(|(x, y)| x != y).count()
            }
            _ => unreachable!("words of one space share a representation"),
        }
    }

    /// Coordinatewise sum modulo `q`.
    pub fn add(&self, other: &Word) -> Result<Word> {
        self.space.check_same(&other.space)?;
        Ok(match (&self.data, &other.data) {
            (Data::Bits(a), Data::Bits(b)) => Word::from_bits_unchecked(self.space, a ^ b),
            (Data::Symbols(a), Data::Symbols(b)) => {
                let q = self.space.q as u8;
                Word {
                    space: self.space,
                    data: Data::Symbols(a.iter().zip(b.iter()).map(|(x, y)| (x + y) % q).collect()),
                }
            }
            _ => unreachable!(),
        })
    }

    /// Coordinatewise difference modulo `q`.
    pub fn sub(&self, other: &Word) -> Result<Word> {
        self.space.check_same(&other.space)?;
        let q = self.space.q as u8;
        let symbols: Vec<u8> = self
            .symbols()
            .iter()
            .zip(other.symbols())
            .map(|(&x, y)| (x + q - y) % q)
            .collect();
        Word::from_symbols(self.space, &symbols)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.space
            .cmp(&other.space)
            .then_with(|| match (&self.data, &other.data) {
                (Data::Bits(a), Data::Bits(b)) => a.reverse_bits().cmp(&b.reverse_bits()),
                (Data::Symbols(a), Data::Symbols(b)) => a.cmp(b),
                _ => unreachable!(),
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.space.n {
            write!(f, "{}", self.symbol(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Number of coordinates in which `x` and `y` differ.
pub fn hamming_distance(x: &Word, y: &Word) -> Result<usize> {
    x.distance(y)
}

/// Number of nonzero coordinates.
pub fn weight(x: &Word) -> usize {
    x.weight()
}

/// `x + 1...1` for binary words.
pub fn antipode(x: &Word) -> Result<Word> {
    x.space.require_binary()?;
    Ok(match &x.data {
        Data::Bits(b) => Word::from_bits_unchecked(x.space, !b & x.space.mask()),
        Data::Symbols(s) => Word {
            space: x.space,
            data: Data::Symbols(s.iter().map(|v| 1 - v).collect()),
        },
    })
}

/// All words within distance `r` of `center`, each exactly once.
pub fn ball(center: &Word, r: usize) -> Result<Ball> {
    if r > center.space.n {
        return Err(Error::RadiusTooLarge {
            r,
            n: center.space.n,
        });
    }
    Ok(Ball {
        center: center.clone(),
        radius: r,
        k: 0,
        positions: Vec::new(),
        offsets: Vec::new(),
        done: false,
    })
}

/// Iterator over a Hamming ball, ordered by distance from the center.
#[derive(Debug, Clone)]
pub struct Ball {
    center: Word,
    radius: usize,
    k: usize,
    positions: Vec<usize>,
    offsets: Vec<u8>,
    done: bool,
}

impl Ball {
    fn current(&self) -> Word {
        let q = self.center.space.q as u8;
        match &self.center.data {
            Data::Bits(b) => {
                let flip = self
                    .positions
                    .iter()
                    .fold(0u64, |acc, &p| acc | (1u64 << p));
                Word::from_bits_unchecked(self.center.space, b ^ flip)
            }
            Data::Symbols(s) => {
                let mut v = s.clone();
                for (&p, &o) in self.positions.iter().zip(&self.offsets) {
                    v[p] = (v[p] + o) % q;
                }
                Word {
                    space: self.center.space,
                    data: Data::Symbols(v),
                }
            }
        }
    }

    /// Advances to the next (positions, offsets) configuration at the
    /// current radius; returns false when exhausted.
    fn advance(&mut self) -> bool {
        let q = self.center.space.q as u8;
        let n = self.center.space.n;
        for j in (0..self.k).rev() {
            if self.offsets[j] + 1 < q {
                self.offsets[j] += 1;
                for o in &mut self.offsets[j + 1..] {
                    *o = 1;
                }
                return true;
            }
        }
        let k = self.k;
        for j in (0..k).rev() {
            if self.positions[j] < n - k + j {
                self.positions[j] += 1;
                for t in j + 1..k {
                    self.positions[t] = self.positions[t - 1] + 1;
                }
                self.offsets.iter_mut().for_each(|o| *o = 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for Ball {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let out = self.current();
        if !self.advance() {
            if self.k < self.radius {
                self.k += 1;
                self.positions = (0..self.k).collect();
                self.offsets = vec![1; self.k];
            } else {
                self.done = true;
            }
        }
        Some(out)
    }
}
