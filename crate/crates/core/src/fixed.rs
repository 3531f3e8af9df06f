//! Outward-rounded binary fixed-point intervals.
//!
//! An [`Interval`] with `bits = F` stands for the real interval
//! `[lo * 2^-F, hi * 2^-F]`. Every operation rounds the lower endpoint down
//! and the upper endpoint up, so the true value is never lost.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

impl Interval {
    pub fn zero(bits: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), bits }
    }

    pub fn int(n: &BigInt, bits: u32) -> Self {
        let v = n << bits as usize;
        Interval { lo: v.clone(), hi: v, bits }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.bits, other.bits);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, bits: self.bits }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.bits, other.bits);
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, bits: self.bits }
    }

    pub fn add_int(&self, n: &BigInt) -> Interval {
        self.add(&Interval::int(n, self.bits))
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a, bits: self.bits }
        } else {
            Interval { lo: a, hi: b, bits: self.bits }
        }
    }

    /// Interval with the lower endpoint of `self` and the upper endpoint of
    /// `other`.
    pub fn hull_ends(lower: &Interval, upper: &Interval) -> Interval {
        debug_assert_eq!(lower.bits, upper.bits);
        Interval { lo: lower.lo.clone(), hi: upper.hi.clone(), bits: lower.bits }
    }

    pub fn max_lo(mut self, floor: &BigInt) -> Interval {
        let f = floor << self.bits as usize;
        if self.lo < f {
            self.lo = f;
        }
        self
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// `floor(self.lo * 10^scale)`.
    pub fn lo_decimal(&self, scale: u32) -> BigInt {
        (&self.lo * pow10(scale)).div_floor(&pow2(self.bits))
    }

    /// `ceil(self.hi * 10^scale)`.
    pub fn hi_decimal(&self, scale: u32) -> BigInt {
        ceil_div(&(&self.hi * pow10(scale)), &pow2(self.bits))
    }

    /// Lower bound of `self.lo / d` and upper bound of `self.hi / d` for a
    /// strictly positive divisor interval, as integers (floor / ceil).
    pub fn div_pos_floor_ceil(&self, d: &Interval) -> (BigInt, BigInt) {
        debug_assert_eq!(self.bits, d.bits);
        debug_assert!(d.lo.is_positive());
        // The scale factors cancel.
        let lo_den = if self.lo.is_negative() { &d.lo } else { &d.hi };
        let hi_den = if self.hi.is_negative() { &d.hi } else { &d.lo };
        (self.lo.div_floor(lo_den), ceil_div(&self.hi, hi_den))
    }
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

pub(crate) fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), e as usize)
}

pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// `ln 2 = 2 atanh(1/3) = sum_j 2 / (3 (2j+1) 9^j)`.
pub(crate) fn ln2(bits: u32) -> Interval {
    // p_j = floor(2^(F+1) / (3 * 9^j)); each term is floor(p_j / (2j+1)).
    let mut p = (BigInt::one() << (bits as usize + 1)) / BigInt::from(3u8);
    let mut lo = BigInt::zero();
    let mut terms = 0u32;
    let nine = BigInt::from(9u8);
    while !p.is_zero() {
        lo += &p / BigInt::from(2 * terms + 1);
        p /= &nine;
        terms += 1;
    }
    // One unit per floored term plus the tail, which is below 9/8 of a unit.
    let hi = &lo + BigInt::from(terms + 2);
    Interval { lo, hi, bits }
}

/// Sound enclosure of `atanh(y)` for `y` in `[ylo, yhi] * 2^-F`, assuming
/// `0 <= y <= 1/3 + 2^-F`.
fn atanh(ylo: &BigInt, yhi: &BigInt, bits: u32) -> Interval {
    let shift = 2 * bits as usize;
    let mut lo = BigInt::zero();
    if !ylo.is_zero() {
        let sq = ylo * ylo;
        let mut q = ylo.clone();
        let mut k = 1u32;
        while !q.is_zero() {
            lo += &q / BigInt::from(k);
            q = (&q * &sq) >> shift;
            k += 2;
        }
    }
    let mut hi = BigInt::zero();
    if !yhi.is_zero() {
        let sq = yhi * yhi;
        let mask = pow2(2 * bits) - BigInt::one();
        let mut r = yhi.clone();
        let mut k = 1u32;
        while r > BigInt::one() {
            hi += ceil_div(&r, &BigInt::from(k));
            let prod = &r * &sq;
            let carry = if (&prod & &mask).is_zero() { 0 } else { 1 };
            r = (prod >> shift) + carry;
            k += 2;
        }
        // Remaining terms are bounded by r / (1 - y^2) <= 2 units.
        hi += &r * 2u8;
    }
    Interval { lo, hi, bits }
}

/// Sound enclosure of `ln m` for `m >= 1`.
pub(crate) fn ln(m: &BigUint, bits: u32) -> Interval {
    assert!(!m.is_zero(), "ln of zero");
    let k = m.bits() - 1;
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    // f = m / 2^k in [1, 2), enclosed in [flo, fhi] * 2^-F.
    let (flo, fhi) = if k >= bits as u64 {
        let drop = (k - bits as u64) as usize;
        let flo = &m >> drop;
        let exact = (&flo << drop) == m;
        let fhi = if exact { flo.clone() } else { &flo + 1u8 };
        (flo, fhi)
    } else {
        let f = &m << (bits as u64 - k) as usize;
        (f.clone(), f)
    };
    let one = pow2(bits);
    // y = (f - 1) / (f + 1) is increasing in f.
    let ylo = ((&flo - &one) << bits as usize).div_floor(&(&flo + &one));
    let yhi = ceil_div(&((&fhi - &one) << bits as usize), &(&fhi + &one));
    let mut frac = atanh(&ylo, &yhi, bits);
    frac.lo <<= 1;
    frac.hi <<= 1;
    if k == 0 {
        return frac;
    }
    ln2(bits).mul_int(&BigInt::from(k)).add(&frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(iv: &Interval, num: &str, scale: u32) -> bool {
        // num is a decimal string of value * 10^scale, truncated.
        let v: BigInt = num.parse().unwrap();
        iv.lo_decimal(scale) <= v && v < iv.hi_decimal(scale)
    }

    #[test]
    fn ln2_digits() {
        let iv = ln2(200);
        assert!(contains(&iv, "6931471805599453094172321214581765680755", 40));
        assert!(iv.width() < BigInt::from(200));
    }

    #[test]
    fn ln_of_small_integers() {
        let ln10 = ln(&BigUint::from(10u8), 200);
        assert!(contains(&ln10, "23025850929940456840179914546843642076011", 40));
        let ln3 = ln(&BigUint::from(3u8), 200);
        assert!(contains(&ln3, "10986122886681096913952452369225257046474", 40));
        assert_eq!(ln(&BigUint::one(), 64), Interval::zero(64));
    }

    #[test]
    fn ln_of_large_integer_uses_leading_bits() {
        // ln(500001499998) = 26.937876935360102919798601084958793240306...
        let iv = ln(&BigUint::from(500_001_499_998u64), 30);
        let iv_wide = ln(&BigUint::from(500_001_499_998u64), 180);
        assert!(contains(&iv_wide, "269378769353601029197986010849587932403", 37));
        assert!(iv.lo_decimal(6) <= BigInt::from(26_937_876) && BigInt::from(26_937_877) <= iv.hi_decimal(6));
    }

    #[test]
    fn ln_of_power_of_two_is_multiple_of_ln2() {
        let iv = ln(&(BigUint::one() << 70usize), 120);
        let two = ln2(120).mul_int(&BigInt::from(70));
        assert_eq!(iv, two);
    }

    #[test]
    fn decimal_rounding_is_outward() {
        let iv = Interval { lo: BigInt::from(-3), hi: BigInt::from(3), bits: 2 };
        assert_eq!(iv.lo_decimal(1), BigInt::from(-8));
        assert_eq!(iv.hi_decimal(1), BigInt::from(8));
    }
}
