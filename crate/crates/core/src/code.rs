//! Codes: finite multisets of words in one Hamming space.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Space, Word};

/// A multiset of words sharing one space, kept in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Code {
    space: Space,
    words: Vec<Word>,
}

impl serde::Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Code", 3)?;
        st.serialize_field("n", &self.space.n())?;
        st.serialize_field("q", &self.space.q())?;
        st.serialize_field("words", &self.words)?;
        st.end()
    }
}

impl Code {
    pub fn new(space: Space, mut words: Vec<Word>) -> Result<Self> {
        for w in &words {
            space.check_same(&w.space())?;
        }
        words.sort();
        Ok(Code { space, words })
    }

    pub fn empty(space: Space) -> Self {
        Code {
            space,
            words: Vec::new(),
        }
    }

    /// Binary code from packed words.
    pub fn from_bits<I: IntoIterator<Item = u64>>(n: usize, bits: I) -> Result<Self> {
        let words = bits
            .into_iter()
            .map(|b| Word::from_bits(n, b))
            .collect::<Result<Vec<_>>>()?;
        Code::new(Space::binary(n)?, words)
    }

    pub(crate) fn from_bits_unchecked<I: IntoIterator<Item = u64>>(space: Space, bits: I) -> Self {
        let mut words: Vec<Word> = bits
            .into_iter()
            .map(|b| Word::from_bits_unchecked(space, b))
            .collect();
        words.sort();
        Code { space, words }
    }

    /// Code from digit strings.
    pub fn from_strs(space: Space, words: &[&str]) -> Result<Self> {
        let words = words
            .iter()
            .map(|s| Word::parse(space, s))
            .collect::<Result<Vec<_>>>()?;
        Code::new(space, words)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn q(&self) -> usize {
        self.space.q()
    }

    /// Size counted with multiplicity.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    /// Packed words (with multiplicity), for binary codes of length <= 64.
    pub fn bits(&self) -> Result<Vec<u64>> {
        self.space.require_packed()?;
        Ok(self.words.iter().map(|w| w.bits().unwrap()).collect())
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn multiplicity(&self, w: &Word) -> usize {
        let lo = self.words.partition_point(|x| x < w);
        let hi = self.words.partition_point(|x| x <= w);
        hi - lo
    }

    /// Words occurring more than once, with their multiplicities.
    pub fn duplicates(&self) -> Vec<(Word, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.words.len() {
            let mut j = i + 1;
            while j < self.words.len() && self.words[j] == self.words[i] {
                j += 1;
            }
            if j - i > 1 {
                out.push((self.words[i].clone(), j - i));
            }
            i = j;
        }
        out
    }

    pub fn is_set(&self) -> bool {
        self.words.windows(2).all(|p| p[0] != p[1])
    }

    /// Same words with multiplicities dropped.
    pub fn distinct(&self) -> Code {
        let mut words = self.words.clone();
        words.dedup();
        Code {
            space: self.space,
            words,
        }
    }

    /// `C + v`.
    pub fn translate(&self, v: &Word) -> Result<Code> {
        self.space.check_same(&v.space())?;
        let words = self
            .words
            .iter()
            .map(|w| w.add(v))
            .collect::<Result<Vec<_>>>()?;
        Code::new(self.space, words)
    }

    /// Multiset union.
    pub fn union(&self, other: &Code) -> Result<Code> {
        self.space.check_same(&other.space)?;
        let mut words = self.words.clone();
        words.extend(other.words.iter().cloned());
        Code::new(self.space, words)
    }

    /// Parses the text code format: a `q n` header followed by one digit
    /// string per line. Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Code> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `q n` header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                msg: format!("expected `q n` header, found {header:?}"),
            });
        }
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                msg: format!("bad integer {s:?} in header"),
            })
        };
        let (q, n) = (num(fields[0])?, num(fields[1])?);
        let space = Space::new(n, q).map_err(|e| Error::Parse {
            line: hline,
            msg: e.to_string(),
        })?;
        let mut words = Vec::new();
        for (line, l) in lines {
            let w = Word::parse(space, l).map_err(|e| Error::Parse {
                line,
                msg: match e {
                    Error::Parse { msg, .. } => msg,
                    other => other.to_string(),
                },
            })?;
            words.push(w);
        }
        Code::new(space, words)
    }

    /// Text code format in canonical order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.space.q(), self.space.n());
        for w in &self.words {
            s.push_str(&w.to_string());
            s.push('\n');
        }
        s
    }

    /// Counts of words by weight.
    pub fn weight_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for w in &self.words {
            *h.entry(w.weight()).or_insert(0) += 1;
        }
        h
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// Number of codewords (with multiplicity) within distance `r` of `v`.
pub fn coverage_multiplicity(code: &Code, v: &Word, r: usize) -> Result<usize> {
    code.space.check_same(&v.space())?;
    Ok(code
        .words
        .iter()
        .filter(|c| c.distance_unchecked(v) <= r)
        .count())
}
