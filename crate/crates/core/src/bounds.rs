//! Binomial-coefficient bounds on total Betti numbers.
//!
//! For a pure diagram of type `d = (0, d_1, ..., d_N)` with `d_N <= N + r`,
//!
//! ```text
//! C(N, i) N^-r  <=  beta_i(pi_d)  <=  C(N, i) N^r.
//! ```
//!
//! Summing over a Boij-Söderberg decomposition turns this into bounds for
//! modules generated in degree 0 in terms of codimension, projective
//! dimension and regularity, which specialise to Veronese embeddings
//! (`codim = pdim = N`, `reg <= n`) and to embedded varieties.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::diagram::DegreeSequence;
use crate::estimate::digits_upper_estimate;
use crate::rational::Rational;
use crate::{Error, Result};

/// Default cap on the number of decimal digits of an exact bound.
pub const DEFAULT_MAX_EXACT_DIGITS: u64 = 1_000_000;

/// `lower <= upper`, both exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundPair {
    pub lower: Rational,
    pub upper: Rational,
}

impl BoundPair {
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

/// `n`, `d` and the codimension `N = C(n+d, n) - n - 1` of the degree-`d`
/// Veronese embedding of `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseParams {
    pub n: u64,
    pub d: u64,
    pub codim: BigUint,
}

/// Exact `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    match u64::try_from(k) {
        Ok(k) if k <= n => binomial_big(&BigUint::from(n), &BigUint::from(k)),
        _ => BigUint::zero(),
    }
}

/// Exact `C(n, k)` for big arguments; `min(k, n - k)` must fit in a `u64`.
pub fn binomial_big(n: &BigUint, k: &BigUint) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let other = n - k;
    let k = k.min(&other).to_u64().expect("binomial index too large");
    if k == 0 {
        return BigUint::one();
    }
    let start = n - BigUint::from(k) + 1u8;
    range_product(&start, k) / range_product(&BigUint::one(), k)
}

/// `start * (start + 1) * ... * (start + len - 1)` by binary splitting.
fn range_product(start: &BigUint, len: u64) -> BigUint {
    match len {
        0 => BigUint::one(),
        1 => start.clone(),
        2 => start * (start + 1u8),
        _ => {
            let half = len / 2;
            range_product(start, half) * range_product(&(start + half), len - half)
        }
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn upow(base: u64, exp: u64) -> BigInt {
    let exp = usize::try_from(exp).expect("exponent too large");
    num_traits::pow(big(base), exp)
}

fn int(n: BigUint) -> BigInt {
    BigInt::from(n)
}

/// Bounds for `beta_i(pi_d)` over all degree sequences starting at 0 with
/// `N + 1` entries and last entry at most `N + r`.
pub fn pure_bounds(n: u64, r: u64, i: u64) -> Result<BoundPair> {
    if n == 0 {
        return Err(Error::domain("pure_bounds needs N >= 1"));
    }
    algebraic_bounds(n, n, r, &Rational::one(), i)
}

/// The degree sequences that maximise and minimise `beta_i` among those with
/// `d_i = i + a`: `d_max = (0, a+1, ..., N+a)` and
/// `d_min = (0, 1, ..., i-1, i+a, i+r+1, ..., N+r)`. Returned as
/// `(d_min, d_max)`.
pub fn extremal_sequences(
    n: u64,
    r: u64,
    i: u64,
    a: u64,
) -> Result<(DegreeSequence, DegreeSequence)> {
    if n == 0 || i == 0 || i > n || a > r {
        return Err(Error::domain(
            "extremal_sequences needs N >= 1, 1 <= i <= N and 0 <= a <= r",
        ));
    }
    let to_i = |x: u64| i64::try_from(x).map_err(|_| Error::domain("degree out of range"));
    let (n, r, i, a) = (to_i(n)?, to_i(r)?, to_i(i)?, to_i(a)?);
    n.checked_add(r).ok_or_else(|| Error::domain("degree out of range"))?;
    let d_max: Vec<i64> = (0..=n).map(|j| if j == 0 { 0 } else { j + a }).collect();
    let d_min: Vec<i64> = (0..=n)
        .map(|j| match j.cmp(&i) {
            core::cmp::Ordering::Less => j,
            core::cmp::Ordering::Equal => i + a,
            core::cmp::Ordering::Greater => j + r,
        })
        .collect();
    Ok((DegreeSequence::new(d_min)?, DegreeSequence::new(d_max)?))
}

/// Bounds on `beta_i(M)` for a module generated in degree 0:
///
/// ```text
/// beta0 C(codim, i) codim^-reg  <=  beta_i  <=  beta0 C(pdim, i) pdim^reg
/// ```
///
/// With `codim = 0` the lower factor is read as 1 for `i = 0` and 0 otherwise,
/// and `pdim^reg` is read as 1 when `pdim = 0`.
pub fn algebraic_bounds(
    codim: u64,
    pdim: u64,
    reg: u64,
    beta0: &Rational,
    i: u64,
) -> Result<BoundPair> {
    if pdim < codim {
        return Err(Error::domain("pdim must be at least codim"));
    }
    if beta0 <= &Rational::zero() {
        return Err(Error::domain("beta0 must be positive"));
    }
    let i_signed = i64::try_from(i).unwrap_or(i64::MAX);
    let lower = if codim == 0 {
        if i == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    } else {
        Rational::new(int(binomial(codim, i_signed)), upow(codim, reg))
    };
    let upper_power = if pdim == 0 { BigInt::one() } else { upow(pdim, reg) };
    let upper = Rational::from_integer(int(binomial(pdim, i_signed)) * upper_power);
    Ok(BoundPair { lower: lower * beta0, upper: upper * beta0 })
}

/// `N = C(n+d, n) - n - 1`.
pub fn veronese_codim(n: u64, d: u64) -> Result<VeroneseParams> {
    if n == 0 || d == 0 {
        return Err(Error::domain("veronese_codim needs n, d >= 1"));
    }
    let top = BigUint::from(n) + d;
    let codim = binomial_big(&top, &BigUint::from(n)) - n - 1u8;
    Ok(VeroneseParams { n, d, codim })
}

fn guard(top: u64, i: u64, reg: u64, limit: u64) -> Result<()> {
    if i > top {
        return Ok(());
    }
    let digits = digits_upper_estimate(&BigUint::from(top), &BigUint::from(i), &BigUint::from(top), reg);
    if digits > limit {
        return Err(Error::TooLarge { n: BigUint::from(top), digits, limit });
    }
    Ok(())
}

/// `(C(N, i) N^-n, C(N, i) N^n)` for the degree-`d` Veronese embedding of
/// `P^n`, refusing with [`Error::TooLarge`] when the upper bound would have
/// more than `max_digits` digits.
pub fn veronese_bounds(n: u64, d: u64, i: u64, max_digits: u64) -> Result<BoundPair> {
    let params = veronese_codim(n, d)?;
    let Some(codim) = params.codim.to_u64() else {
        return Err(Error::TooLarge { n: params.codim, digits: u64::MAX, limit: max_digits });
    };
    guard(codim, i, n, max_digits)?;
    algebraic_bounds(codim, codim, n, &Rational::one(), i)
}

/// `(C(dimL - dimX, i) dimL^-reg, C(dimL, i) dimL^reg)` for a variety
/// `X` embedded by `|L|`.
pub fn variety_bounds(
    dim_l: u64,
    dim_x: u64,
    reg: u64,
    i: u64,
    max_digits: u64,
) -> Result<BoundPair> {
    if dim_l == 0 || dim_x > dim_l {
        return Err(Error::domain("need dim |L| >= 1 and 0 <= dim X <= dim |L|"));
    }
    guard(dim_l, i, reg, max_digits)?;
    let i = i64::try_from(i).unwrap_or(i64::MAX);
    let power = upow(dim_l, reg);
    Ok(BoundPair {
        lower: Rational::new(int(binomial(dim_l - dim_x, i)), power.clone()),
        upper: Rational::from_integer(int(binomial(dim_l, i)) * power),
    })
}

/// `dim |L| = C(e+m, m) - C(e-delta+m, m) - 1` for `L = O(e)` restricted to a
/// degree-`delta` hypersurface in `P^m`.
pub fn hypersurface_dim_l(m: u64, delta: u64, e: u64) -> Result<BigUint> {
    if m == 0 || delta == 0 || e == 0 {
        return Err(Error::domain("hypersurface_dim_l needs m, delta, e >= 1"));
    }
    let sections = |deg: u64| binomial_big(&(BigUint::from(deg) + m), &BigUint::from(m));
    let ambient = int(sections(e));
    let cut = if e >= delta { int(sections(e - delta)) } else { BigInt::zero() };
    let dim: BigInt = ambient - cut - 1;
    dim.to_biguint()
        .ok_or_else(|| Error::domain("negative dimension: O(e) is not very ample here"))
}

fn rising(from: u64, count: u64) -> BigInt {
    (1..=count).map(|k| big(from + k)).product()
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(big).product()
}

/// `((N+a)...(N+1) / a!) * i/(i+a) <= N^a`, evaluated exactly.
pub fn check_lemma32(n: u64, i: u64, a: u64) -> Result<bool> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::domain("check_lemma32 needs N >= 1 and 1 <= i <= N"));
    }
    let lhs = Rational::new(rising(n, a), factorial(a)) * Rational::new(big(i), big(i + a));
    Ok(lhs <= Rational::from_integer(upow(n, a)))
}

/// `(a+b)...(a+1) / b! <= (a+1)^b`, evaluated exactly.
pub fn check_lemma33(a: u64, b: u64) -> bool {
    let lhs = Rational::new(rising(a, b), factorial(b));
    lhs <= Rational::from_integer(upow(a + 1, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_int, ratio};
    use alloc::string::ToString;
    use alloc::vec;

    fn seq(d: &[i64]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    fn pair(lo: Rational, hi: Rational) -> BoundPair {
        BoundPair { lower: lo, upper: hi }
    }

    fn pascal(n: usize) -> Vec<Vec<BigUint>> {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for r in 1..=n {
            let prev = &rows[r - 1];
            let mut row = vec![BigUint::one(); r + 1];
            for k in 1..r {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_matches_pascal() {
        let rows = pascal(40);
        for (n, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as i64), v, "C({n},{k})");
            }
            assert!(binomial(n as u64, -1).is_zero());
            assert!(binomial(n as u64, n as i64 + 1).is_zero());
        }
        assert_eq!(binomial(18, 7), BigUint::from(31824u32));
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(102, 2), BigUint::from(5151u32));
    }

    #[test]
    fn pure_bounds_examples() {
        assert_eq!(pure_bounds(3, 2, 3).unwrap(), pair(ratio(1, 9), from_int(9)));
        assert_eq!(pure_bounds(18, 2, 7).unwrap(), pair(ratio(884, 9), from_int(10310976)));
        for i in 0..=6 {
            let c = Rational::from_integer(BigInt::from(binomial(6, i as i64)));
            assert_eq!(pure_bounds(6, 0, i).unwrap(), pair(c.clone(), c));
        }
        assert!(pure_bounds(0, 1, 0).is_err());
    }

    #[test]
    fn extremal_examples() {
        let (dmin, dmax) = extremal_sequences(4, 1, 4, 1).unwrap();
        assert_eq!(dmax, seq(&[0, 2, 3, 4, 5]));
        assert_eq!(dmin, seq(&[0, 1, 2, 3, 5]));
        let (dmin, dmax) = extremal_sequences(5, 0, 3, 0).unwrap();
        assert_eq!(dmin, seq(&[0, 1, 2, 3, 4, 5]));
        assert_eq!(dmax, dmin);
        let (dmin, dmax) = extremal_sequences(3, 2, 2, 1).unwrap();
        assert_eq!(dmax, seq(&[0, 2, 3, 4]));
        assert_eq!(dmin, seq(&[0, 1, 3, 5]));
        assert!(extremal_sequences(3, 1, 2, 2).is_err());
        assert!(extremal_sequences(3, 1, 0, 0).is_err());
    }

    #[test]
    fn algebraic_examples() {
        let one = from_int(1);
        assert_eq!(algebraic_bounds(3, 3, 2, &one, 3).unwrap(), pair(ratio(1, 9), from_int(9)));
        assert_eq!(algebraic_bounds(0, 0, 5, &one, 0).unwrap(), pair(one.clone(), one.clone()));
        assert_eq!(
            algebraic_bounds(2, 4, 1, &from_int(3), 2).unwrap(),
            pair(ratio(3, 2), from_int(72))
        );
        assert_eq!(
            algebraic_bounds(0, 2, 1, &one, 1).unwrap(),
            pair(from_int(0), from_int(4))
        );
        assert_eq!(algebraic_bounds(3, 3, 1, &one, 5).unwrap(), pair(from_int(0), from_int(0)));
        assert!(algebraic_bounds(3, 2, 1, &one, 0).is_err());
        assert!(algebraic_bounds(1, 2, 1, &from_int(0), 0).is_err());
    }

    #[test]
    fn algebraic_matches_pure_when_codim_is_pdim() {
        for n in 1..=8 {
            for r in 0..=3 {
                for i in 0..=n {
                    assert_eq!(
                        algebraic_bounds(n, n, r, &from_int(1), i).unwrap(),
                        pure_bounds(n, r, i).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn veronese_codim_examples() {
        assert_eq!(veronese_codim(2, 5).unwrap().codim, BigUint::from(18u8));
        assert_eq!(veronese_codim(2, 100).unwrap().codim, BigUint::from(5148u32));
        assert_eq!(
            veronese_codim(2, 1_000_000).unwrap().codim,
            BigUint::from(500_001_499_998u64)
        );
        assert_eq!(veronese_codim(1, 1).unwrap().codim, BigUint::zero());
        assert!(veronese_codim(0, 3).is_err());
    }

    #[test]
    fn veronese_bounds_examples() {
        let b = veronese_bounds(2, 5, 7, DEFAULT_MAX_EXACT_DIGITS).unwrap();
        assert_eq!(b, pair(ratio(884, 9), from_int(10310976)));
        assert!(b.contains(&from_int(417690)));
        assert_eq!(veronese_bounds(1, 1, 0, DEFAULT_MAX_EXACT_DIGITS).unwrap(), pair(from_int(1), from_int(1)));
        assert_eq!(veronese_bounds(2, 5, 19, DEFAULT_MAX_EXACT_DIGITS).unwrap(), pair(from_int(0), from_int(0)));
        assert!(matches!(veronese_bounds(2, 100, 2000, 1000), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn veronese_bounds_intro_example_is_exact() {
        let b = veronese_bounds(2, 100, 2000, DEFAULT_MAX_EXACT_DIGITS).unwrap();
        let digits = |q: &Rational| q.to_integer().to_string().len();
        // floor(log10) of the bounds is 1484 and 1499.
        assert_eq!(digits(&b.lower), 1485);
        assert_eq!(digits(&b.upper), 1500);
    }

    #[test]
    fn variety_bounds_examples() {
        let max = DEFAULT_MAX_EXACT_DIGITS;
        assert_eq!(variety_bounds(3, 1, 0, 1, max).unwrap(), pair(from_int(2), from_int(3)));
        assert_eq!(variety_bounds(5, 2, 1, 2, max).unwrap(), pair(ratio(3, 5), from_int(50)));
        match variety_bounds(6_441_720, 2, 3, 1_000_000, max) {
            Err(Error::TooLarge { n, digits, .. }) => {
                assert_eq!(n, BigUint::from(6_441_720u32));
                assert!(digits > 1_000_000);
            }
            other => panic!("expected TooLarge, got {other:?}"),
        }
        assert!(variety_bounds(2, 3, 0, 1, max).is_err());
    }

    #[test]
    fn hypersurface_examples() {
        assert_eq!(hypersurface_dim_l(3, 13, 1000).unwrap(), BigUint::from(6_441_720u32));
        assert_eq!(hypersurface_dim_l(3, 1, 1).unwrap(), BigUint::from(2u8));
        assert_eq!(hypersurface_dim_l(2, 3, 4).unwrap(), BigUint::from(11u8));
        assert!(hypersurface_dim_l(0, 1, 1).is_err());
    }

    #[test]
    fn plane_cubic_sections_by_monomial_count() {
        // h0(O_C(4)) for a plane cubic: monomials of degree 4 in 3 variables
        // minus multiples of the cubic (monomials of degree 1).
        let count = |deg: u64| {
            let mut c = 0u64;
            for x in 0..=deg {
                for y in 0..=deg - x {
                    let _z = deg - x - y;
                    c += 1;
                }
            }
            c
        };
        let h0 = count(4) - count(1);
        assert_eq!(hypersurface_dim_l(2, 3, 4).unwrap(), BigUint::from(h0 - 1));
    }

    #[test]
    fn binomial_inequality_checks() {
        assert!(check_lemma32(1, 1, 5).unwrap());
        assert!(check_lemma32(3, 2, 2).unwrap());
        assert!(check_lemma32(10, 10, 3).unwrap());
        assert!(check_lemma32(0, 1, 1).is_err());
        assert!(check_lemma32(3, 4, 1).is_err());
        assert!(check_lemma33(7, 0));
        assert!(check_lemma33(1, 2));
        assert!(check_lemma33(0, 5));
    }
}
