//! Real algebraic numbers as (defining polynomial, isolating interval).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sturm::{clean_endpoints, refine_interval, RootInterval, SturmSequence};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::linalg::RatMatrix;

/// A real root of an integer polynomial, pinned down by an isolating interval.
///
/// The defining polynomial is square-free, primitive and has positive leading
/// coefficient. It need not be irreducible; every comparison goes through
/// gcds and Sturm counts, so equality is decided exactly either way.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    poly: IntPoly,
    interval: RootInterval,
}

impl AlgebraicNumber {
    /// The unique root of `poly` in the closed interval `[lo, hi]`.
    pub fn new(poly: &IntPoly, lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain("interval endpoints out of order".into()));
        }
        let sf = poly.square_free_part()?;
        let sturm = SturmSequence::new(&sf);
        let n = sturm.count_closed(&lo, &hi);
        if n != 1 {
            return Err(Error::Domain(format!(
                "{sf} has {n} roots in [{lo}, {hi}], expected exactly one"
            )));
        }
        let interval = if lo == hi {
            RootInterval { lo, hi }
        } else if sf.is_root(&lo) {
            RootInterval {
                lo: lo.clone(),
                hi: lo,
            }
        } else if sf.is_root(&hi) {
            RootInterval { lo: hi.clone(), hi }
        } else {
            clean_endpoints(&sturm, lo, hi)
        };
        Ok(Self { poly: sf, interval })
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self {
            poly: IntPoly::linear_through(&r),
            interval: RootInterval {
                lo: r.clone(),
                hi: r,
            },
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// All real roots of `p`, ascending.
    pub fn real_roots(p: &IntPoly) -> Result<Vec<Self>> {
        let sf = p.square_free_part()?;
        Ok(super::isolate_real_roots(&sf)?
            .into_iter()
            .map(|interval| Self {
                poly: sf.clone(),
                interval,
            })
            .collect())
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn lo(&self) -> &BigRational {
        &self.interval.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.interval.hi
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.interval.lo.clone(), self.interval.hi.clone())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.interval.lo == self.interval.hi {
            return Some(self.interval.lo.clone());
        }
        // A degree-one carrier pins the value even when the interval is wide.
        if self.poly.degree() == 1 {
            let c = self.poly.coeffs();
            return Some(BigRational::new(-c[0].clone(), c[1].clone()));
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.cmp_rational(&BigRational::one()) == Ordering::Equal
    }

    /// Same root, interval of width at most `width` and contained in the old one.
    pub fn refine(&self, width: &BigRational) -> Self {
        assert!(width.is_positive(), "refinement width must be positive");
        Self {
            poly: self.poly.clone(),
            interval: refine_interval(&self.poly, &self.interval, width),
        }
    }

    fn halve(&self) -> Self {
        let w = self.interval.width() / BigRational::from_integer(2.into());
        if w.is_zero() {
            return self.clone();
        }
        self.refine(&w)
    }

    /// Exact comparison with a rational number.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let mut a = self.clone();
        loop {
            if r < a.lo() {
                return Ordering::Greater;
            }
            if r > a.hi() {
                return Ordering::Less;
            }
            if a.poly.is_root(r) {
                // r lies in the isolating interval and is a root, so it is this root.
                return Ordering::Equal;
            }
            a = a.halve();
        }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        self.cmp_rational(&BigRational::zero())
    }

    /// `1 / self`; fails for zero.
    pub fn recip(&self) -> Result<Self> {
        if self.signum() == Ordering::Equal {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        let mut a = self.clone();
        while a.interval().contains_zero() {
            a = a.halve();
        }
        let (lo, hi) = (a.hi().recip(), a.lo().recip());
        Self::new(&a.poly.reversed(), lo, hi)
    }

    /// `self^k` for `k >= 1`.
    ///
    /// The defining polynomial is the characteristic polynomial of the `k`-th
    /// power of the companion matrix.
    pub fn pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one());
        }
        if k == 1 {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(crate::interval::pow_rat(&r, k)));
        }
        let power_poly = companion_power_char_poly(&self.poly, k).square_free_part()?;
        let sturm = SturmSequence::new(&power_poly);
        let mut a = self.clone();
        loop {
            let enc = a.interval().pow(k);
            if sturm.count_closed(&enc.lo, &enc.hi) == 1 {
                return Self::new(&power_poly, enc.lo, enc.hi);
            }
            a = a.halve();
        }
    }

    /// Interval enclosure of `self^k` without computing its polynomial.
    pub(crate) fn pow_enclosure(&self, k: u32, width: &BigRational) -> RatInterval {
        self.refine(width).interval().pow(k)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({}, {})", self.poly, self.interval())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) if self.interval.lo == self.interval.hi => write!(f, "{r}"),
            _ => write!(f, "root of {} in {}", self.poly, self.interval()),
        }
    }
}

/// Characteristic polynomial of `C^k`, `C` the companion matrix of `p`, scaled to integers.
fn companion_power_char_poly(p: &IntPoly, k: u32) -> IntPoly {
    let n = p.degree();
    let lead = BigRational::from_integer(p.leading());
    let mut c = RatMatrix::zeros(n, n);
    for i in 1..n {
        c.set(i, i - 1, BigRational::one());
    }
    for i in 0..n {
        c.set(
            i,
            n - 1,
            -BigRational::from_integer(p.coeffs()[i].clone()) / &lead,
        );
    }
    let mut acc = RatMatrix::identity(n);
    let mut base = c;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.checked_mul(&base).expect("square");
        }
        e >>= 1;
        if e > 0 {
            base = base.checked_mul(&base).expect("square");
        }
    }
    rational_char_poly(&acc)
}

/// Characteristic polynomial of a rational matrix, scaled to a primitive integer polynomial.
pub(crate) fn rational_char_poly(m: &RatMatrix) -> IntPoly {
    let n = m.rows();
    let mut d = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            d = d.lcm(m.get(i, j).denom());
        }
    }
    let dq = BigRational::from_integer(d.clone());
    let mut scaled = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            scaled.push((m.get(i, j) * &dq).to_integer());
        }
    }
    let b = crate::linalg::IntMatrix::new(n, n, scaled).expect("square shape");
    // det(xI - B/d) = d^-n det(d x I - B); multiply through by d^n.
    let cb = b.char_poly().expect("square");
    let mut dpow = BigInt::one();
    let coeffs: Vec<BigInt> = cb
        .coeffs()
        .iter()
        .map(|c| {
            let out = c * &dpow;
            dpow *= &d;
            out
        })
        .collect();
    IntPoly::new(coeffs).primitive_part()
}

/// Free-function form of [`AlgebraicNumber::refine`].
pub fn refine(a: &AlgebraicNumber, width: &BigRational) -> AlgebraicNumber {
    a.refine(width)
}

/// Exact equality of two real algebraic numbers.
pub fn alg_equal(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    if !a.interval().overlaps(&b.interval()) {
        return false;
    }
    let g = a.poly.gcd(&b.poly);
    if g.is_constant() {
        return false;
    }
    let sturm = SturmSequence::new(&g);
    // g divides each defining polynomial, so a root of g inside a's interval is a itself.
    if sturm.count_closed(a.lo(), a.hi()) == 0 || sturm.count_closed(b.lo(), b.hi()) == 0 {
        return false;
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        if !a.interval().overlaps(&b.interval()) {
            return false;
        }
        let lo = a.lo().min(b.lo()).clone();
        let hi = a.hi().max(b.hi()).clone();
        if sturm.count_closed(&lo, &hi) == 1 {
            return true;
        }
        a = a.halve();
        b = b.halve();
    }
}

/// Exact test of `a^s == b^t` for positive exponents.
pub fn alg_pow_equal(a: &AlgebraicNumber, s: u32, b: &AlgebraicNumber, t: u32) -> bool {
    assert!(s > 0 && t > 0, "exponents must be positive");
    // Cheap certified rejection before building power polynomials.
    let w = BigRational::new(BigInt::one(), BigInt::one() << 64u32);
    if !a.pow_enclosure(s, &w).overlaps(&b.pow_enclosure(t, &w)) {
        return false;
    }
    match (a.pow(s), b.pow(t)) {
        (Ok(x), Ok(y)) => alg_equal(&x, &y),
        _ => false,
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if alg_equal(self, other) {
            return Some(Ordering::Equal);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi() < b.lo() {
                return Some(Ordering::Less);
            }
            if b.hi() < a.lo() {
                return Some(Ordering::Greater);
            }
            a = a.halve();
            b = b.halve();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pell_rho() -> AlgebraicNumber {
        AlgebraicNumber::new(&IntPoly::from_i64(&[1, -6, 1]), q(5, 1), q(6, 1)).unwrap()
    }

    #[test]
    fn refine_pell_root() {
        let r = pell_rho().refine(&q(1, 1000));
        // 3 + 2√2 = 5.828427...
        assert!(r.interval().contains(&q(5_828_427, 1_000_000)));
        assert!(r.interval().width() <= q(1, 1000));
    }

    #[test]
    fn refine_rational_root_is_a_point() {
        let two = AlgebraicNumber::new(&IntPoly::from_i64(&[-2, 1]), q(1, 1), q(3, 1)).unwrap();
        let r = two.refine(&q(1, 1_000_000));
        assert_eq!(r.lo(), &q(2, 1));
        assert_eq!(r.hi(), &q(2, 1));
    }

    #[test]
    fn refine_sqrt2() {
        let s = AlgebraicNumber::new(&IntPoly::from_i64(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        let r = s.refine(&q(1, 1_000_000));
        assert!(r.interval().width() <= q(1, 1_000_000));
        assert!(r.lo() <= &q(14_142_136, 10_000_000) && r.hi() >= &q(14_142_135, 10_000_000));
    }

    #[test]
    fn equality_across_representations() {
        let a = pell_rho();
        let b = AlgebraicNumber::new(
            &IntPoly::from_i64(&[1, -6, 1]).mul(&IntPoly::from_i64(&[-7, 1])),
            q(11, 2),
            q(13, 2),
        )
        .unwrap();
        assert!(alg_equal(&a, &b));
        let silver =
            AlgebraicNumber::new(&IntPoly::from_i64(&[-1, -2, 1]), q(2, 1), q(3, 1)).unwrap();
        assert!(!alg_equal(&a, &silver));
        let other_root =
            AlgebraicNumber::new(&IntPoly::from_i64(&[1, -6, 1]), q(0, 1), q(1, 1)).unwrap();
        assert!(!alg_equal(&a, &other_root));
    }

    #[test]
    fn powers() {
        let a = pell_rho();
        let b = AlgebraicNumber::new(&IntPoly::from_i64(&[1, -34, 1]), q(33, 1), q(34, 1)).unwrap();
        assert!(alg_pow_equal(&a, 2, &b, 1));
        assert!(!alg_pow_equal(&a, 3, &b, 1));
        assert!(alg_pow_equal(&a, 4, &b, 2));
        // (1 + √2)^2 = 3 + 2√2
        let silver =
            AlgebraicNumber::new(&IntPoly::from_i64(&[-1, -2, 1]), q(2, 1), q(3, 1)).unwrap();
        assert!(alg_pow_equal(&silver, 2, &a, 1));
    }

    #[test]
    fn reciprocal_pairs_up_pell_roots() {
        let a = pell_rho();
        let inv = a.recip().unwrap();
        let small =
            AlgebraicNumber::new(&IntPoly::from_i64(&[1, -6, 1]), q(0, 1), q(1, 1)).unwrap();
        assert!(alg_equal(&inv, &small));
    }

    #[test]
    fn rejects_non_isolating_interval() {
        let p = IntPoly::from_i64(&[1, -6, 1]);
        assert!(AlgebraicNumber::new(&p, q(0, 1), q(6, 1)).is_err());
        assert!(AlgebraicNumber::new(&p, q(1, 1), q(2, 1)).is_err());
    }

    #[test]
    fn comparisons() {
        let a = pell_rho();
        assert_eq!(a.cmp_rational(&q(5, 1)), Ordering::Greater);
        assert_eq!(a.cmp_rational(&q(6, 1)), Ordering::Less);
        assert!(AlgebraicNumber::one().is_one());
        let silver =
            AlgebraicNumber::new(&IntPoly::from_i64(&[-1, -2, 1]), q(2, 1), q(3, 1)).unwrap();
        assert!(silver < a);
    }
}
