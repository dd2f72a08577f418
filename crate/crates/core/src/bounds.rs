//! Closed-form bounds, evaluated exactly. Floors are taken once, at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn ser_display<T: std::fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// A bound value together with the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    /// The floored value.
    #[serde(serialize_with = "ser_display")]
    pub value: BigInt,
    /// The value before flooring.
    #[serde(serialize_with = "ser_display")]
    pub exact: BigRational,
    pub formula_id: String,
    pub assumptions: Vec<String>,
    /// The formula gives nothing useful for these parameters.
    pub vacuous: bool,
    /// An unproved statement that would make the bound tight.
    pub conjecture: Option<String>,
}

impl BoundResult {
    fn new(exact: BigRational, formula_id: &str) -> Self {
        let value = if exact.is_negative() {
            BigInt::zero()
        } else {
            exact.floor().to_integer()
        };
        BoundResult {
            value,
            exact,
            formula_id: formula_id.to_string(),
            assumptions: Vec::new(),
            vacuous: false,
            conjecture: None,
        }
    }

    /// Whether the exact value is an integer, i.e. no rounding happened.
    pub fn is_exact(&self) -> bool {
        self.exact.is_integer()
    }
}

/// `floor(lambda q^n / |B_r|)`.
pub fn sphere_packing_bound(n: usize, q: usize, lambda: usize, r: usize) -> Result<BigInt> {
    if r > n {
        return Err(Error::RadiusTooLarge { r, n });
    }
    if q < 2 || n == 0 {
        return Err(Error::InvalidSpace { n, q });
    }
    let volume = BigInt::from(q).pow(n as u32);
    let ball = ball_size(n, q, r);
    Ok(BigInt::from(lambda) * volume / ball)
}

fn ball_size(n: usize, q: usize, r: usize) -> BigInt {
    let mut total = BigInt::zero();
    let mut binom = BigInt::one();
    let mut power = BigInt::one();
    for i in 0..=r {
        total += &binom * &power;
        binom = binom * BigInt::from(n - i) / BigInt::from(i + 1);
        power *= BigInt::from(q - 1);
    }
    total
}

/// Spectral data of a regular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumBoundInput {
    pub degree: BigInt,
    /// Smallest absolute value of an eigenvalue.
    pub alpha: BigRational,
    pub lambda: usize,
    pub num_vertices: BigInt,
}

/// Upper bound `(r lambda - alpha^2) / (r^2 - alpha^2)` on the density of a
/// `lambda`-fold 1-packing. Negative values mean the bound is vacuous.
pub fn regular_graph_bound(input: &SpectrumBoundInput) -> Result<BigRational> {
    let r = BigRational::from_integer(input.degree.clone());
    let a2 = &input.alpha * &input.alpha;
    if input.alpha.is_negative() || input.alpha >= r {
        return Err(Error::Precondition(format!(
            "alpha = {} must lie in [0, {})",
            input.alpha, input.degree
        )));
    }
    Ok((&r * int(input.lambda) - &a2) / (&r * &r - a2))
}

/// The spectral bound specialized to `H(n, q)`, whose eigenvalues are
/// `-n + q i` for `i = 0..=n`.
pub fn hamming_eigenvalue_bound(n: usize, q: usize, lambda: usize) -> Result<BoundResult> {
    check_params(n, q)?;
    let alpha = (0..=n)
        .map(|i| (q as i64 * i as i64 - n as i64).abs())
        .min()
        .expect("n >= 1");
    let degree = BigInt::from(n * (q - 1));
    let volume = BigInt::from(q).pow(n as u32);
    let input = SpectrumBoundInput {
        degree,
        alpha: int(alpha),
        lambda,
        num_vertices: volume.clone(),
    };
    let density = regular_graph_bound(&input)?;
    let mut res = BoundResult::new(density * int(volume), "hamming-eigenvalue");
    res.assumptions.push(format!("alpha = {alpha}"));
    if q >= 2 * n {
        res.assumptions.push("q >= 2n".into());
    } else {
        res.assumptions
            .push("outside the q >= 2n hypothesis: optimality not certified".into());
    }
    res.vacuous = res.exact.is_negative();
    if lambda == n && q >= n {
        res.conjecture = Some(format!(
            "for q >= n the maximum n-fold 1-packing size is q^(n-1) = {}",
            BigInt::from(q).pow(n as u32 - 1)
        ));
    }
    Ok(res)
}

/// `(q^(n-1), n q^n / (n (q - 1) + 1))`: bounds on the maximum `n`-fold
/// 1-packing in `H(n, q)`.
pub fn mds_interval(n: usize, q: usize) -> Result<(BigInt, BigRational)> {
    check_params(n, q)?;
    let lower = BigInt::from(q).pow(n as u32 - 1);
    let upper = rat(
        BigInt::from(n) * BigInt::from(q).pow(n as u32),
        n * (q - 1) + 1,
    );
    Ok((lower, upper))
}

fn check_params(n: usize, q: usize) -> Result<()> {
    if n == 0 || q < 2 {
        return Err(Error::InvalidSpace { n, q });
    }
    Ok(())
}

fn lambda_checked(lambda: usize) -> Result<BigInt> {
    if lambda == 0 {
        return Err(Error::Precondition("lambda must be positive".into()));
    }
    Ok(BigInt::from(lambda))
}

/// Upper bound on binary `lambda`-fold 1-packings of length `n >= 2`.
pub fn lp_bound(n: usize, lambda: usize) -> Result<BoundResult> {
    if n < 2 {
        return Err(Error::Precondition("length must be at least 2".into()));
    }
    let l = lambda_checked(lambda)?;
    let s = BigInt::from(lambda % 2);
    let nn = BigInt::from(n);
    let pow = BigInt::one() << n;
    let (num, den, id) = match n % 4 {
        0 => (
            &pow * (&l * &nn + 3 * &l - 4 + &s),
            &nn * (&nn + 4),
            "lp-binary-n0mod4",
        ),
        1 => (
            &pow * (&l * &nn + &l - 2),
            (&nn - 1) * (&nn + 3),
            "lp-binary-n1mod4",
        ),
        2 => (
            &pow * (&l * &nn + &l - 2 + &s),
            &nn * (&nn + 2),
            "lp-binary-n2mod4",
        ),
        _ => (&pow * &l, &nn + 1, "lp-binary-n3mod4"),
    };
    let mut res = BoundResult::new(rat(num, den), id);
    res.assumptions.push("q = 2, r = 1".into());
    Ok(res)
}

/// Upper bound on even-weight binary `lambda`-fold 1-packings of length
/// `n >= 3`.
pub fn lp_bound_even(n: usize, lambda: usize) -> Result<BoundResult> {
    if n < 3 {
        return Err(Error::Precondition("length must be at least 3".into()));
    }
    let l = lambda_checked(lambda)?;
    let s = BigInt::from(lambda % 2);
    let nn = BigInt::from(n);
    let pow = BigInt::one() << (n - 1);
    let (num, den, id) = match n % 4 {
        1 => (
            &pow * (&l * &nn + 2 * &l - 4 + &s),
            (&nn - 1) * (&nn + 3),
            "lp-even-n1mod4",
        ),
        2 => (
            &pow * (&l * &nn - 2),
            (&nn - 2) * (&nn + 2),
            "lp-even-n2mod4",
        ),
        3 => (
            &pow * (&l * &nn - 2 + &s),
            (&nn - 1) * (&nn + 1),
            "lp-even-n3mod4",
        ),
        _ => (&pow * &l, nn.clone(), "lp-even-n0mod4"),
    };
    let mut res = BoundResult::new(rat(num, den), id);
    res.assumptions
        .push("q = 2, r = 1, all codewords of even weight".into());
    Ok(res)
}

/// Minimum cardinality of a nonempty binary 1-perfect unitrade of length `n`
/// (`extended = false`, odd `n`) or extended unitrade (`extended = true`,
/// even `n`). Both minima are attained by bipartite unitrades, so the
/// `bipartite` flag does not change the value.
pub fn unitrade_min_cardinality(n: usize, extended: bool, bipartite: bool) -> Result<BigInt> {
    let _ = bipartite;
    match (extended, n % 2) {
        (true, 0) if n >= 2 => Ok(BigInt::one() << (n / 2)),
        (false, 1) => Ok(BigInt::one() << n.div_ceil(2)),
        _ => Err(Error::Unsupported(format!(
            "no nonempty {} unitrade of length {n}",
            if extended { "extended" } else { "non-extended" }
        ))),
    }
}

/// Distance distribution entries forced on an even-weight packing that
/// attains [`lp_bound_even`] with equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedProfile {
    pub n: usize,
    pub lambda: usize,
    pub size: String,
    /// `(i, B_i)` pairs.
    pub entries: Vec<(usize, usize)>,
}

impl ForcedProfile {
    pub fn get(&self, i: usize) -> Option<usize> {
        self.entries.iter().find(|e| e.0 == i).map(|e| e.1)
    }
}

pub fn forced_distance_profile(n: usize, lambda: usize) -> Result<ForcedProfile> {
    let b = lp_bound_even(n, lambda)?;
    if n.is_multiple_of(4) {
        return Err(Error::Precondition(format!(
            "no forced profile is known for n = {n} (n divisible by 4)"
        )));
    }
    if !b.is_exact() {
        return Err(Error::Precondition(format!(
            "the even-weight bound {} for (n, lambda) = ({n}, {lambda}) is not an integer, so no code attains it",
            b.exact
        )));
    }
    let mut entries = vec![(0, 1), (2, n * (lambda - 1) / 2)];
    if n % 4 == 1 {
        entries.push((n - 1, lambda));
    }
    Ok(ForcedProfile {
        n,
        lambda,
        size: b.value.to_string(),
        entries,
    })
}

/// All bounds that apply to `(n, q, lambda, r)`, for tables and the CLI.
pub fn applicable_bounds(
    n: usize,
    q: usize,
    lambda: usize,
    r: usize,
    even_weight: bool,
) -> Result<Vec<BoundResult>> {
    let mut out = Vec::new();
    let sp = sphere_packing_bound(n, q, lambda, r)?;
    let mut sphere = BoundResult::new(int(sp), "sphere-packing");
    sphere.exact = rat(
        BigInt::from(lambda) * BigInt::from(q).pow(n as u32),
        ball_size(n, q, r),
    );
    out.push(sphere);
    if r == 1 {
        if let Ok(e) = hamming_eigenvalue_bound(n, q, lambda) {
            out.push(e);
        }
        if lambda == n {
            let (lo, hi) = mds_interval(n, q)?;
            let mut upper = BoundResult::new(hi, "mds-interval-upper");
            upper
                .assumptions
                .push(format!("lower bound q^(n-1) = {lo}"));
            out.push(upper);
        }
        if q == 2 {
            if even_weight {
                if n >= 3 {
                    out.push(lp_bound_even(n, lambda)?);
                }
            } else if n >= 2 {
                out.push(lp_bound(n, lambda)?);
            }
        }
    }
    Ok(out)
}

/// The smallest value among [`applicable_bounds`] that is not vacuous.
pub fn best_bound(
    n: usize,
    q: usize,
    lambda: usize,
    r: usize,
    even_weight: bool,
) -> Result<BigInt> {
    applicable_bounds(n, q, lambda, r, even_weight)?
        .into_iter()
        .filter(|b| !b.vacuous)
        .map(|b| b.value)
        .min()
        .ok_or_else(|| Error::Unsupported("no bound applies".into()))
}

/// [`best_bound`] as a machine integer, for searches.
pub(crate) fn best_bound_usize(n: usize, q: usize, lambda: usize, r: usize) -> Option<usize> {
    best_bound(n, q, lambda, r, false).ok()?.to_usize()
}

/// Integer ceiling used by callers comparing sizes with rational bounds.
pub fn ceil_rational(x: &BigRational) -> BigInt {
    let (d, m) = x.numer().div_mod_floor(x.denom());
    if m.is_zero() {
        d
    } else {
        d + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Space;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sphere_values() {
        assert_eq!(sphere_packing_bound(9, 2, 2, 1).unwrap(), b(102));
        assert_eq!(sphere_packing_bound(2, 3, 2, 1).unwrap(), b(3));
        assert_eq!(sphere_packing_bound(4, 3, 5, 0).unwrap(), b(405));
        assert!(sphere_packing_bound(3, 2, 1, 4).is_err());
    }

    #[test]
    fn ball_size_matches_space() {
        for n in 1..=8 {
            for q in 2..=5 {
                let s = Space::new(n, q).unwrap();
                for r in 0..=n {
                    assert_eq!(ball_size(n, q, r), BigInt::from(s.ball_size(r)));
                }
            }
        }
    }

    #[test]
    fn regular_graph_values() {
        let zero = SpectrumBoundInput {
            degree: b(7),
            alpha: int(0),
            lambda: 3,
            num_vertices: b(128),
        };
        assert_eq!(regular_graph_bound(&zero).unwrap(), rat(3, 7));
        let h36 = SpectrumBoundInput {
            degree: b(15),
            alpha: int(3),
            lambda: 3,
            num_vertices: b(216),
        };
        assert_eq!(regular_graph_bound(&h36).unwrap(), rat(1, 6));
        let bad = SpectrumBoundInput {
            alpha: int(7),
            ..zero
        };
        assert!(regular_graph_bound(&bad).is_err());
    }

    #[test]
    fn eigenvalue_values() {
        assert_eq!(hamming_eigenvalue_bound(3, 6, 3).unwrap().value, b(36));
        assert_eq!(hamming_eigenvalue_bound(2, 4, 2).unwrap().value, b(4));
        for n in 2..=6usize {
            for q in 2 * n..=2 * n + 4 {
                let res = hamming_eigenvalue_bound(n, q, n).unwrap();
                assert_eq!(res.exact, int(BigInt::from(q).pow(n as u32 - 1)));
                assert!(res.conjecture.is_some());
            }
        }
        let outside = hamming_eigenvalue_bound(3, 3, 3).unwrap();
        assert!(outside.assumptions.iter().any(|a| a.starts_with("outside")));
    }

    #[test]
    fn mds_values() {
        assert_eq!(mds_interval(3, 3).unwrap(), (b(9), rat(81, 7)));
        assert_eq!(mds_interval(1, 5).unwrap(), (b(1), int(1)));
        assert_eq!(mds_interval(2, 2).unwrap(), (b(2), rat(8, 3)));
    }

    #[test]
    fn lp_values() {
        assert_eq!(lp_bound(9, 2).unwrap().value, b(96));
        assert_eq!(lp_bound(9, 2).unwrap().formula_id, "lp-binary-n1mod4");
        assert_eq!(lp_bound(8, 2).unwrap().value, b(48));
        assert_eq!(lp_bound(7, 1).unwrap().value, b(16));
        assert_eq!(lp_bound(6, 2).unwrap().value, b(16));
        assert_eq!(lp_bound_even(10, 2).unwrap().value, b(96));
        assert_eq!(lp_bound_even(8, 1).unwrap().value, b(16));
        assert_eq!(lp_bound_even(9, 2).unwrap().value, b(48));
        assert!(lp_bound(1, 1).is_err());
        assert!(lp_bound_even(2, 1).is_err());
        assert!(lp_bound(5, 0).is_err());
    }

    #[test]
    fn lp_agrees_with_even_one_longer() {
        for n in 2..=40 {
            for l in 1..=8 {
                assert_eq!(
                    lp_bound(n, l).unwrap().exact,
                    lp_bound_even(n + 1, l).unwrap().exact,
                    "n={n} lambda={l}"
                );
            }
        }
    }

    #[test]
    fn lp_meets_sphere_for_perfect_lengths() {
        for n in (3..=31).step_by(4) {
            let lp = lp_bound(n, 1).unwrap();
            assert_eq!(lp.value, sphere_packing_bound(n, 2, 1, 1).unwrap());
        }
    }

    #[test]
    fn unitrade_minimum() {
        assert_eq!(unitrade_min_cardinality(6, true, false).unwrap(), b(8));
        assert_eq!(unitrade_min_cardinality(10, true, true).unwrap(), b(32));
        assert_eq!(unitrade_min_cardinality(4, true, false).unwrap(), b(4));
        assert_eq!(unitrade_min_cardinality(9, false, true).unwrap(), b(32));
        assert!(unitrade_min_cardinality(5, true, false).is_err());
        assert!(unitrade_min_cardinality(6, false, false).is_err());
    }

    #[test]
    fn forced_profiles() {
        let p = forced_distance_profile(10, 2).unwrap();
        assert_eq!((p.get(0), p.get(2), p.get(9)), (Some(1), Some(5), None));
        let p = forced_distance_profile(9, 2).unwrap();
        assert_eq!((p.get(2), p.get(8)), (Some(4), Some(2)));
        for n in [5, 6, 7] {
            assert_eq!(forced_distance_profile(n, 1).unwrap().get(2), Some(0));
        }
        assert!(forced_distance_profile(9, 1).is_err());
        assert!(forced_distance_profile(8, 1).is_err());
    }

    #[test]
    fn ceil_values() {
        assert_eq!(ceil_rational(&rat(81, 7)), b(12));
        assert_eq!(ceil_rational(&int(5)), b(5));
        assert_eq!(ceil_rational(&rat(-3, 2)), b(-1));
    }
}
