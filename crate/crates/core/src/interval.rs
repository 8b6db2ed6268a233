//! Closed rational intervals with outward-rounded logarithms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().expect("four products");
        let hi = products.iter().max().cloned().expect("four products");
        Self::new(lo, hi)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let (a, b) = (&self.lo * s, &self.hi * s);
        if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        if self.lo.is_positive() || k % 2 == 1 {
            let lo = pow_rat(&self.lo, k);
            let hi = pow_rat(&self.hi, k);
            if self.hi.is_negative() && k.is_multiple_of(2) {
                return Self::new(hi, lo);
            }
            return Self::new(lo, hi);
        }
        if self.hi.is_negative() {
            return Self::new(pow_rat(&self.hi, k), pow_rat(&self.lo, k));
        }
        let m = self.lo.abs().max(self.hi.abs());
        Self::new(BigRational::zero(), pow_rat(&m, k))
    }

    /// Horner evaluation of a rational polynomial (ascending coefficients).
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Self {
        coeffs
            .iter()
            .rev()
            .fold(Self::point(BigRational::zero()), |acc, c| {
                acc.mul(self).add(&Self::point(c.clone()))
            })
    }

    /// Outward-rounded enclosure of `log` over a positive interval.
    pub fn ln(&self, bits: u32) -> Self {
        assert!(self.lo.is_positive(), "log of a non-positive interval");
        Self::new(ln_bounds(&self.lo, bits).0, ln_bounds(&self.hi, bits).1)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rat_string(&self.lo), rat_string(&self.hi))
    }
}

/// Canonical `p/q` string; the denominator is always written.
pub fn rat_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    BigRational::new(x.numer().pow(k), x.denom().pow(k))
}

fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x.numer() * &scale).div_floor(x.denom());
    BigRational::new(n, scale)
}

fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x.numer() * &scale).div_ceil(x.denom());
    BigRational::new(n, scale)
}

/// Encloses `log(1 + z) - log(1 - z) = 2 atanh(z)` for `0 <= z <= 1/3`.
fn atanh2_bounds(z: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let work = bits + 16;
    let z2 = z * z;
    let (mut pow_lo, mut pow_hi) = (z.clone(), z.clone());
    let (mut sum_lo, mut sum_hi) = (BigRational::zero(), BigRational::zero());
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut k: u64 = 0;
    loop {
        let denom = BigRational::from_integer(BigInt::from(2 * k + 1));
        sum_lo += floor_dyadic(&(&pow_lo / &denom), work);
        sum_hi += ceil_dyadic(&(&pow_hi / &denom), work);
        pow_lo = floor_dyadic(&(&pow_lo * &z2), work);
        pow_hi = ceil_dyadic(&(&pow_hi * &z2), work);
        k += 1;
        // Remaining terms are bounded by z^(2k+1) / ((2k+1)(1 - z^2)) <= 9/8 z^(2k+1).
        let tail = &pow_hi * BigRational::new(9.into(), 8.into());
        if tail < eps || pow_hi.is_zero() {
            sum_hi += tail;
            break;
        }
    }
    let two = BigRational::from_integer(2.into());
    (sum_lo * &two, sum_hi * two)
}

fn ln2_bounds(bits: u32) -> (BigRational, BigRational) {
    // log 2 = 2 atanh(1/3)
    atanh2_bounds(&BigRational::new(1.into(), 3.into()), bits)
}

/// Rational lower and upper bounds for `log x`, `x > 0`, each within about `2^-bits`.
pub fn ln_bounds(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "log of a non-positive number");
    if x < &BigRational::one() {
        let (lo, hi) = ln_bounds(&x.recip(), bits);
        return (-hi, -lo);
    }
    if x.is_one() {
        return (BigRational::zero(), BigRational::zero());
    }
    // x = 2^k y with 1 <= y < 2
    let mut k: u32 = (x.numer().bits().saturating_sub(x.denom().bits())) as u32;
    let mut y = x / BigRational::from_integer(BigInt::one() << k);
    while y >= BigRational::from_integer(2.into()) {
        y /= BigRational::from_integer(2.into());
        k += 1;
    }
    while y < BigRational::one() {
        y *= BigRational::from_integer(2.into());
        k -= 1;
    }
    let guard = bits + 8 + (64 - u64::from(k).leading_zeros());
    // y in [1, 2) gives z = (y - 1) / (y + 1) in [0, 1/3).
    let z = (&y - BigRational::one()) / (&y + BigRational::one());
    let (ly_lo, ly_hi) = atanh2_bounds(&z, guard);
    let (l2_lo, l2_hi) = ln2_bounds(guard);
    let kq = BigRational::from_integer(BigInt::from(k));
    (&kq * l2_lo + ly_lo, kq * l2_hi + ly_hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn to_f64(x: &BigRational) -> f64 {
        x.numer().to_string().parse::<f64>().unwrap()
            / x.denom().to_string().parse::<f64>().unwrap()
    }

    #[test]
    fn ln_bounds_bracket_the_float_log() {
        for (n, d) in [(2, 1), (3, 1), (10, 1), (1, 7), (5828, 1000), (123_456, 7)] {
            let x = q(n, d);
            let (lo, hi) = ln_bounds(&x, 60);
            let f = (n as f64 / d as f64).ln();
            assert!(lo <= hi);
            assert!(
                to_f64(&lo) <= f + 1e-12 && to_f64(&hi) >= f - 1e-12,
                "x = {n}/{d}"
            );
            assert!(hi - lo < q(1, 1 << 50));
        }
    }

    #[test]
    fn ln_of_one_is_exactly_zero() {
        assert_eq!(ln_bounds(&q(1, 1), 40), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn ln_is_consistent_with_exp_series() {
        // Oracle: e^lo <= x <= e^hi using a truncated exponential series with explicit remainder.
        fn exp_upper(t: &BigRational) -> BigRational {
            let mut term = BigRational::one();
            let mut sum = BigRational::one();
            for k in 1..60 {
                term = term * t / BigRational::from_integer(k.into());
                sum += &term;
            }
            sum + term * BigRational::from_integer(2.into())
        }
        fn exp_lower(t: &BigRational) -> BigRational {
            let mut term = BigRational::one();
            let mut sum = BigRational::one();
            for k in 1..60 {
                term = term * t / BigRational::from_integer(k.into());
                sum += &term;
            }
            sum
        }
        let x = q(17, 3);
        let (lo, hi) = ln_bounds(&x, 40);
        assert!(exp_lower(&hi) >= x);
        assert!(exp_upper(&lo) <= x);
    }

    #[test]
    fn interval_pow_and_eval() {
        let iv = RatInterval::new(q(-2, 1), q(1, 1));
        assert_eq!(iv.pow(2), RatInterval::new(q(0, 1), q(4, 1)));
        assert_eq!(iv.pow(3), RatInterval::new(q(-8, 1), q(1, 1)));
        let p = [q(1, 1), q(0, 1), q(1, 1)]; // 1 + x^2
        let e = RatInterval::point(q(3, 1)).eval_poly(&p);
        assert_eq!(e, RatInterval::point(q(10, 1)));
    }

    #[test]
    fn rat_string_always_has_denominator() {
        assert_eq!(rat_string(&q(3, 1)), "3/1");
        assert_eq!(rat_string(&q(-6, 4)), "-3/2");
    }
}
