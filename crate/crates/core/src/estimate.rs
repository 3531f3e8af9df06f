//! Rigorous log-space brackets for factorials and binomial coefficients.
//!
//! Sums of logarithms are enclosed between integrals of `ln x`:
//!
//! ```text
//! a ln a - a - b ln b + b  <=  ln(a!/b!)  <=  (a+1) ln(a+1) - (a+1) - (b+1) ln(b+1) + (b+1)
//! c ln c - c + 1           <=  ln(c!)     <=  (c+1) ln(c+1) - c
//! ```
//!
//! and combined into brackets for `ln C(N, i)`. Every logarithm is evaluated
//! in outward-rounded fixed point (see the `fixed` module) and the final
//! endpoints are rounded outward to `prec` decimal places, so a
//! [`LogBracket`] always contains the true value.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bounds::{binomial_big, veronese_codim};
use crate::fixed::{self, pow10, Interval};
use crate::rational::Rational;
use crate::{Error, Result};

/// Working precision used when none is requested.
pub const DEFAULT_PRECISION: u32 = 40;

/// Largest `N` accepted by [`exact_log_binomial`].
pub const EXACT_LOG_BINOMIAL_MAX: u64 = 100_000;

/// Which factorial estimates to combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Constants {
    /// `ln c! >= c ln c - c + 1` and `ln c! <= (c+1) ln(c+1) - c`; always sound.
    #[default]
    Sound,
    /// `c ln c - c <= ln c! <= (c+1) ln(c+1) - (c+1)`. The upper estimate
    /// fails for small `c`, so brackets built from it are for comparison
    /// only: the binomial lower endpoint comes out 1 higher and the upper
    /// endpoint 1 higher than in [`Constants::Sound`].
    Paper,
}

/// A decimal number `mantissa * 10^-scale`.
#[derive(Debug, Clone)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        Decimal { mantissa, scale }
    }

    pub fn zero() -> Self {
        Decimal::new(BigInt::zero(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    /// Nearest `f64`, for display and rough comparisons only.
    pub fn to_f64(&self) -> f64 {
        let r = self.to_rational();
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn aligned(&self, scale: u32) -> BigInt {
        &self.mantissa * pow10(scale - self.scale)
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Decimal {}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.scale.max(other.scale);
        self.aligned(s).cmp(&other.aligned(s))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let (int, frac) = self.mantissa.abs().div_rem(&pow10(self.scale));
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        write!(f, "{sign}{int}.{:0>width$}", frac.to_string(), width = self.scale as usize)
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(alloc::format!("not a decimal number: {s:?}"));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() || !(int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())) {
            return Err(bad());
        }
        if body.contains('.') && frac.is_empty() {
            return Err(bad());
        }
        let mut digits = String::with_capacity(int.len() + frac.len());
        digits.push_str(int);
        digits.push_str(frac);
        let mut mantissa: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(Decimal::new(mantissa, frac.len() as u32))
    }
}

/// Closed interval `[lo, hi]` on the natural-log scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogBracket {
    lo: Decimal,
    hi: Decimal,
}

impl LogBracket {
    pub fn new(lo: Decimal, hi: Decimal) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain("bracket endpoints are reversed"));
        }
        Ok(LogBracket { lo, hi })
    }

    pub fn lo(&self) -> &Decimal {
        &self.lo
    }

    pub fn hi(&self) -> &Decimal {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        self.hi.to_rational() - self.lo.to_rational()
    }

    /// True when `other` lies inside `self`.
    pub fn encloses(&self, other: &LogBracket) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo.to_rational() <= x && x <= &self.hi.to_rational()
    }

    pub fn intersects(&self, other: &LogBracket) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn from_interval(iv: &Interval, prec: u32) -> Self {
        LogBracket {
            lo: Decimal::new(iv.lo_decimal(prec), prec),
            hi: Decimal::new(iv.hi_decimal(prec), prec),
        }
    }
}

impl fmt::Display for LogBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Certifies `10^exp_lo <= lower` and `upper <= 10^exp_hi` for a pair of
/// bounds `lower <= x <= upper`, so `x` has between `exp_lo + 1` and
/// `exp_hi + 1` decimal digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitBracket {
    pub exp_lo: i64,
    pub exp_hi: i64,
    /// Natural-log bracket of the lower bound.
    pub log_lower: LogBracket,
    /// Natural-log bracket of the upper bound.
    pub log_upper: LogBracket,
}

impl DigitBracket {
    /// Inclusive range of possible decimal digit counts.
    pub fn digits(&self) -> (i64, i64) {
        (self.exp_lo + 1, self.exp_hi + 1)
    }
}

/// A bound of the shape `factor * C(top, i) * base^exponent`.
///
/// `base = 0` contributes a factor of 1 whatever the exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialPower {
    pub top: BigUint,
    pub i: BigUint,
    pub base: BigUint,
    pub exponent: i64,
    pub factor: Rational,
}

impl BinomialPower {
    pub fn new(top: BigUint, i: BigUint, base: BigUint, exponent: i64) -> Self {
        BinomialPower { top, i, base, exponent, factor: Rational::one() }
    }

    pub fn with_factor(mut self, factor: Rational) -> Self {
        self.factor = factor;
        self
    }

    fn log_interval(&self, bits: u32, constants: Constants) -> Result<Interval> {
        if self.i > self.top {
            return Err(Error::domain("the bound is zero, so it has no digit count"));
        }
        if self.factor <= Rational::zero() {
            return Err(Error::domain("the bound factor must be positive"));
        }
        let mut iv = binomial_interval(&self.top, &self.i, bits, constants);
        if !self.base.is_zero() && self.exponent != 0 {
            iv = iv.add(&fixed::ln(&self.base, bits).mul_int(&BigInt::from(self.exponent)));
        }
        if !self.factor.is_one() {
            let num = self.factor.numer().magnitude();
            let den = self.factor.denom().magnitude();
            iv = iv.add(&fixed::ln(num, bits)).sub(&fixed::ln(den, bits));
        }
        Ok(iv)
    }

    fn extra_bits(&self) -> u32 {
        let coeff = self.top.bits().max(bit_len(self.exponent.unsigned_abs()));
        let arg = self.top.bits().max(self.base.bits()).max(self.factor_bits());
        (coeff + bit_len(arg) + 16) as u32
    }

    fn factor_bits(&self) -> u64 {
        self.factor.numer().bits().max(self.factor.denom().bits())
    }
}

fn bit_len(x: u64) -> u64 {
    (u64::BITS - x.leading_zeros()) as u64
}

fn check_prec(prec: u32) -> Result<()> {
    if prec == 0 {
        return Err(Error::domain("precision must be at least 1 digit"));
    }
    Ok(())
}

/// Bits needed for an absolute error of 10^-(prec+3) given roughly
/// `2^extra` units of accumulated rounding.
fn base_bits(prec: u32, extra: u32) -> u32 {
    // log2(10) < 3.33
    ((prec + 3) * 333).div_ceil(100) + extra + 8
}

/// Evaluates `f` at increasing fixed-point precision until the enclosure is
/// narrower than `10^-(prec+3)`.
fn refine<F>(prec: u32, extra: u32, f: F) -> Result<Interval>
where
    F: Fn(u32) -> Result<Interval>,
{
    let mut bits = base_bits(prec, extra);
    let target = pow10(prec + 3);
    for _ in 0..6 {
        let iv = f(bits)?;
        let scaled = iv.width() * &target;
        if scaled <= fixed::pow2(bits) {
            return Ok(iv);
        }
        let deficit = scaled.bits().saturating_sub(bits as u64) as u32;
        bits += deficit + 16;
    }
    f(bits)
}

fn int(n: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

/// `n ln n` enclosed.
fn n_ln_n(n: &BigUint, bits: u32) -> Interval {
    if n.is_zero() {
        return Interval::zero(bits);
    }
    fixed::ln(n, bits).mul_int(&int(n))
}

fn factorial_interval(c: &BigUint, bits: u32, constants: Constants) -> Interval {
    if c.is_zero() {
        return Interval::zero(bits);
    }
    let ci = int(c);
    let c1 = c + 1u8;
    match constants {
        Constants::Sound => {
            let lower = n_ln_n(c, bits).add_int(&(BigInt::one() - &ci));
            let upper = n_ln_n(&c1, bits).add_int(&-&ci);
            Interval::hull_ends(&lower, &upper).max_lo(&BigInt::zero())
        }
        Constants::Paper => {
            let lower = n_ln_n(c, bits).add_int(&-&ci);
            let upper = n_ln_n(&c1, bits).add_int(&-int(&c1));
            Interval::hull_ends(&lower, &upper)
        }
    }
}

fn ratio_interval(a: &BigUint, b: &BigUint, bits: u32) -> Interval {
    if a == b {
        return Interval::zero(bits);
    }
    let (ai, bi) = (int(a), int(b));
    let lower = n_ln_n(a, bits).sub(&n_ln_n(b, bits)).add_int(&(&bi - &ai));
    let upper = n_ln_n(&(a + 1u8), bits)
        .sub(&n_ln_n(&(b + 1u8), bits))
        .add_int(&(&bi - &ai));
    Interval::hull_ends(&lower, &upper)
}

fn binomial_interval(n: &BigUint, i: &BigUint, bits: u32, constants: Constants) -> Interval {
    if i.is_zero() || i == n {
        return Interval::zero(bits);
    }
    ratio_interval(n, &(n - i), bits).sub(&factorial_interval(i, bits, constants))
}

/// Bracket of width at most `10^(1-prec) |ln m|` around `ln m`.
pub fn ln_bracket(m: &BigUint, prec: u32) -> Result<LogBracket> {
    check_prec(prec)?;
    if m.is_zero() {
        return Err(Error::domain("ln of zero"));
    }
    let extra = (bit_len(m.bits()) + 10) as u32;
    let iv = refine(prec, extra, |bits| Ok(fixed::ln(m, bits)))?;
    Ok(LogBracket::from_interval(&iv, prec))
}

/// `[c ln c - c + 1, (c+1) ln(c+1) - c]` around `ln c!`, with the lower end
/// clamped at 0.
pub fn log_factorial_bracket(c: &BigUint, prec: u32) -> Result<LogBracket> {
    check_prec(prec)?;
    let extra = (2 * c.bits() + 8) as u32;
    let iv = refine(prec, extra, |bits| Ok(factorial_interval(c, bits, Constants::Sound)))?;
    Ok(LogBracket::from_interval(&iv, prec))
}

/// Bracket around `ln(a!/b!)` from the integral estimates, for `a >= b >= 1`.
pub fn log_factorial_ratio_bracket(a: &BigUint, b: &BigUint, prec: u32) -> Result<LogBracket> {
    check_prec(prec)?;
    if b.is_zero() || a < b {
        return Err(Error::domain("log_factorial_ratio_bracket needs a >= b >= 1"));
    }
    let extra = (2 * a.bits() + 8) as u32;
    let iv = refine(prec, extra, |bits| Ok(ratio_interval(a, b, bits)))?;
    Ok(LogBracket::from_interval(&iv, prec))
}

/// Bracket around `ln C(N, i)`.
///
/// With [`Constants::Sound`] this is
/// `[N ln N - (N-i) ln(N-i) - (i+1) ln(i+1), (N+1) ln(N+1) - (N-i+1) ln(N-i+1) - i ln i - 1]`
/// for `0 < i < N`, and `[0, 0]` for `i` in `{0, N}`.
pub fn log_binomial_bracket(
    n: &BigUint,
    i: &BigUint,
    prec: u32,
    constants: Constants,
) -> Result<LogBracket> {
    check_prec(prec)?;
    if n.is_zero() {
        return Err(Error::domain("log_binomial_bracket needs N >= 1"));
    }
    if i > n {
        return Err(Error::domain("log_binomial_bracket needs 0 <= i <= N"));
    }
    let extra = (2 * n.bits() + 8) as u32;
    let iv = refine(prec, extra, |bits| Ok(binomial_interval(n, i, bits, constants)))?;
    Ok(LogBracket::from_interval(&iv, prec))
}

/// Tight bracket around `ln C(N, i)` from the exact binomial, for
/// `N <= 100000`.
pub fn exact_log_binomial(n: u64, i: u64, prec: u32) -> Result<LogBracket> {
    if n > EXACT_LOG_BINOMIAL_MAX {
        return Err(Error::domain(alloc::format!(
            "exact_log_binomial is limited to N <= {EXACT_LOG_BINOMIAL_MAX}"
        )));
    }
    if i > n {
        return Err(Error::domain("exact_log_binomial needs 0 <= i <= N"));
    }
    ln_bracket(&binomial_big(&BigUint::from(n), &BigUint::from(i)), prec)
}

/// Digit bracket for a pair of bounds `lower <= x <= upper`.
pub fn digit_bracket(
    lower: &BinomialPower,
    upper: &BinomialPower,
    prec: u32,
    constants: Constants,
) -> Result<DigitBracket> {
    check_prec(prec)?;
    let extra = lower.extra_bits().max(upper.extra_bits());
    let lower_iv = refine(prec, extra, |bits| lower.log_interval(bits, constants))?;
    let upper_iv = refine(prec, extra, |bits| upper.log_interval(bits, constants))?;
    let ln10 = |bits| fixed::ln(&BigUint::from(10u8), bits);
    let (exp_lo, _) = lower_iv.div_pos_floor_ceil(&ln10(lower_iv.bits));
    let (_, exp_hi) = upper_iv.div_pos_floor_ceil(&ln10(upper_iv.bits));
    let to_i64 = |e: BigInt| {
        e.to_i64()
            .ok_or_else(|| Error::domain("decimal exponent does not fit in 64 bits"))
    };
    Ok(DigitBracket {
        exp_lo: to_i64(exp_lo)?,
        exp_hi: to_i64(exp_hi)?,
        log_lower: LogBracket::from_interval(&lower_iv, prec),
        log_upper: LogBracket::from_interval(&upper_iv, prec),
    })
}

/// Digit bracket for `C(N,i) N^-n <= beta_i <= C(N,i) N^n` on the degree-`d`
/// Veronese embedding of `P^n`.
pub fn veronese_digit_bracket(
    n: u64,
    d: u64,
    i: &BigUint,
    prec: u32,
    constants: Constants,
) -> Result<DigitBracket> {
    let codim = veronese_codim(n, d)?.codim;
    if codim.is_zero() {
        return Err(Error::domain("codimension 0: there is nothing to estimate"));
    }
    if i > &codim {
        return Err(Error::domain("index exceeds the codimension"));
    }
    let exponent = i64::try_from(n).map_err(|_| Error::domain("n is too large"))?;
    let lower = BinomialPower::new(codim.clone(), i.clone(), codim.clone(), -exponent);
    let upper = BinomialPower::new(codim.clone(), i.clone(), codim, exponent);
    digit_bracket(&lower, &upper, prec, constants)
}

/// Digit bracket for
/// `C(dimL - dimX, i) dimL^-reg <= beta_i <= C(dimL, i) dimL^reg`.
pub fn variety_digit_bracket(
    dim_l: &BigUint,
    dim_x: &BigUint,
    reg: u64,
    i: &BigUint,
    prec: u32,
    constants: Constants,
) -> Result<DigitBracket> {
    if dim_l.is_zero() || dim_x > dim_l {
        return Err(Error::domain("need dim |L| >= 1 and dim X <= dim |L|"));
    }
    let codim = dim_l - dim_x;
    if i > &codim {
        return Err(Error::domain(
            "index exceeds dim |L| - dim X, so the lower bound is zero",
        ));
    }
    let exponent = i64::try_from(reg).map_err(|_| Error::domain("regularity is too large"))?;
    let lower = BinomialPower::new(codim, i.clone(), dim_l.clone(), -exponent);
    let upper = BinomialPower::new(dim_l.clone(), i.clone(), dim_l.clone(), exponent);
    digit_bracket(&lower, &upper, prec, constants)
}

/// Rough upper estimate of the number of decimal digits of
/// `C(top, i) * base^exponent` (`exponent >= 0`), never below the truth.
pub(crate) fn digits_upper_estimate(top: &BigUint, i: &BigUint, base: &BigUint, exponent: u64) -> u64 {
    let Ok(exponent) = i64::try_from(exponent) else {
        return u64::MAX;
    };
    let term = BinomialPower::new(top.clone(), i.clone(), base.clone(), exponent);
    let bits = base_bits(4, term.extra_bits());
    let Ok(iv) = term.log_interval(bits, Constants::Sound) else {
        return 0;
    };
    let (_, hi) = iv.div_pos_floor_ceil(&fixed::ln(&BigUint::from(10u8), bits));
    hi.to_u64().map_or(u64::MAX, |e| e.saturating_add(1))
}
