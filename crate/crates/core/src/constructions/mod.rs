//! Explicit codes and unitrades.

mod data;

pub use data::{
    classified_c4_display, embedded, packing96_linear, packing96_propelinear, packing96_z2z4,
    z2z4_code_from_check2, z2z4_code_from_check3, EmbeddedData, Packing96,
};

use crate::analysis::is_extended_unitrade;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::word::{Space, Word};

/// All words of `H(n, q)` whose digit sum is 0 mod `q`.
pub fn mds_code(n: usize, q: usize) -> Result<Code> {
    let space = Space::new(n, q)?;
    let count = space
        .num_vertices()
        .filter(|&v| v <= 1 << 26)
        .ok_or_else(|| Error::Unsupported("code too large to enumerate".into()))?
        / q as u64;
    let mut words = Vec::with_capacity(count as usize);
    let mut digits = vec![0u8; n];
    for _ in 0..count {
        let s: usize = digits[..n - 1].iter().map(|&d| d as usize).sum();
        digits[n - 1] = ((q - s % q) % q) as u8;
        words.push(Word::from_symbols(space, &digits)?);
        // odometer over the first n - 1 digits, last digit fastest
        for i in (0..n - 1).rev() {
            digits[i] += 1;
            if (digits[i] as usize) < q {
                break;
            }
            digits[i] = 0;
        }
    }
    Code::new(space, words)
}

fn is_prime(q: usize) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Coset of the length-`(q + 1)` Hamming code over GF(q) with syndrome
/// `(s1, s2)`. The check matrix has columns
/// `(0,1), (1,0), (1,1), ..., (1,q-1)`.
pub fn hamming_coset(q: usize, syndrome: (usize, usize)) -> Result<Code> {
    if !is_prime(q) {
        return Err(Error::Unsupported(format!("q = {q} is not prime")));
    }
    let n = q + 1;
    let space = Space::new(n, q)?;
    let (s1, s2) = (syndrome.0 % q, syndrome.1 % q);
    let free = n - 2;
    let count = q.pow(free as u32);
    let mut words = Vec::with_capacity(count);
    let mut x = vec![0u8; n];
    for _ in 0..count {
        let mut r1 = 0usize;
        let mut r2 = 0usize;
        for j in 2..n {
            r1 += x[j] as usize;
            r2 += (j - 1) * x[j] as usize;
        }
        x[1] = ((s1 + q * q - r1 % q) % q) as u8;
        x[0] = ((s2 + q * q - r2 % q) % q) as u8;
        words.push(Word::from_symbols(space, &x)?);
        for i in (2..n).rev() {
            x[i] += 1;
            if (x[i] as usize) < q {
                break;
            }
            x[i] = 0;
        }
    }
    Code::new(space, words)
}

/// The length-`(q + 1)` perfect 1-code over GF(q), `q` prime.
pub fn hamming_code_q(q: usize) -> Result<Code> {
    hamming_coset(q, (0, 0))
}

/// Which cosets [`hamming_coset_union`] takes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetChoice {
    /// The first `lambda` syndromes in lexicographic order.
    First(usize),
    /// Explicit distinct syndromes.
    Syndromes(Vec<(usize, usize)>),
}

/// Union of distinct cosets of [`hamming_code_q`]; a `lambda`-fold 1-packing
/// for `lambda` cosets.
pub fn hamming_coset_union(q: usize, choice: &CosetChoice) -> Result<Code> {
    let syndromes: Vec<(usize, usize)> = match choice {
        CosetChoice::First(lambda) => {
            if *lambda == 0 || *lambda > q * q {
                return Err(Error::Precondition(format!(
                    "lambda = {lambda} must lie in 1..={}",
                    q * q
                )));
            }
            (0..*lambda).map(|i| (i / q, i % q)).collect()
        }
        CosetChoice::Syndromes(s) => {
            let mut reduced: Vec<(usize, usize)> = s.iter().map(|&(a, b)| (a % q, b % q)).collect();
            reduced.sort_unstable();
            reduced.dedup();
            if reduced.len() != s.len() || s.is_empty() {
                return Err(Error::Precondition(
                    "syndromes must be distinct and nonempty".into(),
                ));
            }
            reduced
        }
    };
    let mut out: Option<Code> = None;
    for s in syndromes {
        let c = hamming_coset(q, s)?;
        out = Some(match out {
            None => c,
            Some(acc) => acc.union(&c)?,
        });
    }
    Ok(out.expect("at least one coset"))
}

/// Words whose aligned pairs `(x_2t, x_2t+1)` are all `00` or `11`, with an
/// even number of `11` pairs.
fn l_base(n: usize) -> Vec<u64> {
    let h = n / 2;
    (0..1u64 << h)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| {
            (0..h)
                .filter(|t| m >> t & 1 == 1)
                .map(|t| 3u64 << (2 * t))
                .sum()
        })
        .collect()
}

/// `L` together with the sets `L_i` (`i = 0, 2, ..., n-2`) obtained by
/// writing `0110` on coordinates `i..i+4` (mod `n`).
pub fn l_star(n: usize) -> Result<Code> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::Precondition(format!(
            "length must be even and at least 6, got {n}"
        )));
    }
    Space::binary(n)?.require_packed()?;
    let base = l_base(n);
    let mut out: Vec<u64> = base.clone();
    for i in (0..n).step_by(2) {
        let pos = [i, (i + 1) % n, (i + 2) % n, (i + 3) % n];
        let clear: u64 = pos.iter().map(|p| 1u64 << p).sum();
        let set = (1u64 << pos[1]) | (1u64 << pos[2]);
        out.extend(base.iter().map(|w| (w & !clear) | set));
    }
    out.sort_unstable();
    out.dedup();
    Code::from_bits(n, out)
}

/// `{(x, x)}` for all `x` of length `n / 2`.
pub fn diagonal_unitrade(n: usize) -> Result<Code> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(Error::Precondition(format!(
            "length must be even and positive, got {n}"
        )));
    }
    Space::binary(n)?.require_packed()?;
    let h = n / 2;
    Code::from_bits(n, (0..1u64 << h).map(|x| x | x << h))
}

/// All concatenations `(u | v)`; both inputs must be extended unitrades.
pub fn concatenate(u: &Code, v: &Code) -> Result<Code> {
    let n = u.n() + v.n();
    let space = Space::binary(n)?;
    space.require_packed()?;
    for c in [u, v] {
        c.space().require_binary()?;
        if !c.is_empty() {
            let check = is_extended_unitrade(c)?;
            if !check.holds {
                return Err(Error::NotUnitrade {
                    witness: check.witness.map_or_else(String::new, |w| w.to_string()),
                    count: check.count,
                });
            }
        }
    }
    let ub = u.bits()?;
    let vb = v.bits()?;
    let shift = u.n();
    Code::from_bits(
        n,
        ub.iter()
            .flat_map(|&a| vb.iter().map(move |&b| a | b << shift)),
    )
}

/// Appends a parity bit to every word.
pub fn extend_parity(c: &Code) -> Result<Code> {
    let n = c.n();
    Code::from_bits(
        n + 1,
        c.bits()?
            .into_iter()
            .map(|b| b | ((b.count_ones() as u64 & 1) << n)),
    )
}

/// Deletes the last coordinate.
pub fn puncture_last(c: &Code) -> Result<Code> {
    let n = c.n();
    if n < 2 {
        return Err(Error::Precondition(
            "cannot puncture a code of length 1".into(),
        ));
    }
    let words = c
        .iter()
        .map(|w| Word::from_symbols(Space::new(n - 1, c.q())?, &w.symbols()[..n - 1]))
        .collect::<Result<Vec<_>>>()?;
    Code::new(Space::new(n - 1, c.q())?, words)
}

/// Keeps the words with `symbol` at `coord` and deletes that coordinate.
pub fn shorten(c: &Code, coord: usize, symbol: u8) -> Result<Code> {
    let n = c.n();
    if coord >= n {
        return Err(Error::Precondition(format!(
            "coordinate {coord} out of range for length {n}"
        )));
    }
    if n < 2 {
        return Err(Error::Precondition(
            "cannot shorten a code of length 1".into(),
        ));
    }
    let space = Space::new(n - 1, c.q())?;
    let words = c
        .iter()
        .filter(|w| w.symbol(coord) == symbol)
        .map(|w| {
            let mut s = w.symbols();
            s.remove(coord);
            Word::from_symbols(space, &s)
        })
        .collect::<Result<Vec<_>>>()?;
    Code::new(space, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_bipartite_unitrade, verify_packing};

    #[test]
    fn mds_small() {
        let c = mds_code(3, 3).unwrap();
        assert_eq!(c.len(), 9);
        assert!(verify_packing(&c, 3, 1).unwrap().is_lambda_fold);
        assert_eq!(mds_code(1, 4).unwrap().to_text(), "4 1\n0\n");
        let two = mds_code(2, 2).unwrap();
        assert_eq!(two.bits().unwrap(), vec![0, 3]);
    }

    #[test]
    fn hamming_small() {
        let c = hamming_code_q(2).unwrap();
        assert_eq!(c.bits().unwrap(), vec![0, 7]);
        let c3 = hamming_code_q(3).unwrap();
        assert_eq!(c3.len(), 9);
        let rep = verify_packing(&c3, 1, 1).unwrap();
        assert_eq!(rep.max_coverage, 1);
        let u = hamming_coset_union(3, &CosetChoice::First(4)).unwrap();
        assert_eq!(u.len(), 36);
        assert!(verify_packing(&u, 4, 1).unwrap().is_lambda_fold);
        let all = hamming_coset_union(3, &CosetChoice::First(9)).unwrap();
        assert_eq!(all.len(), 81);
        assert!(all.is_set());
        assert!(hamming_code_q(4).is_err());
        assert!(hamming_coset_union(3, &CosetChoice::First(10)).is_err());
        assert!(hamming_coset_union(3, &CosetChoice::Syndromes(vec![(0, 1), (0, 4)])).is_err());
    }

    #[test]
    fn l_star_sizes() {
        for n in [6usize, 8, 10, 12] {
            let expected = (1usize << (n / 2 - 2)) * (n / 2 + 2);
            assert_eq!(l_star(n).unwrap().len(), expected, "n = {n}");
        }
        assert!(l_star(7).is_err());
        assert!(l_star(4).is_err());
    }

    #[test]
    fn concatenation() {
        let d = diagonal_unitrade(2).unwrap();
        let c = concatenate(&d, &d).unwrap();
        assert_eq!(c.to_text(), "2 4\n0000\n0011\n1100\n1111\n");
        let odd = Code::from_strs(Space::binary(2).unwrap(), &["10", "01"]).unwrap();
        let w = concatenate(&l_star(6).unwrap(), &odd).unwrap();
        assert_eq!(w.len(), 20);
        assert!(is_extended_unitrade(&w).unwrap().holds);
        assert!(!is_bipartite_unitrade(&w, true).unwrap().is_bipartite());
        let empty = Code::empty(Space::binary(3).unwrap());
        assert!(concatenate(&empty, &d).unwrap().is_empty());
        let bad = Code::from_strs(Space::binary(2).unwrap(), &["00"]).unwrap();
        assert!(concatenate(&bad, &d).is_err());
    }

    #[test]
    fn parity_ops() {
        let c = Code::from_strs(Space::binary(3).unwrap(), &["000", "110", "100"]).unwrap();
        let e = extend_parity(&c).unwrap();
        assert_eq!(
            e.to_text().lines().skip(1).collect::<Vec<_>>(),
            vec!["0000", "1001", "1100"]
        );
        assert_eq!(puncture_last(&e).unwrap(), c);
        let s = shorten(&c, 0, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(shorten(&c, 3, 0).is_err());
    }

    #[test]
    fn diagonal() {
        assert_eq!(diagonal_unitrade(2).unwrap().bits().unwrap(), vec![0, 3]);
        let d = diagonal_unitrade(6).unwrap();
        assert_eq!(d.len(), 8);
        assert!(is_extended_unitrade(&d).unwrap().holds);
        assert!(is_bipartite_unitrade(&d, true).unwrap().is_bipartite());
        assert!(diagonal_unitrade(5).is_err());
    }
}
