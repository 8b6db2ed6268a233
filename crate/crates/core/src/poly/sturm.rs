//! Sturm sequences and certified real-root isolation.

use std::cmp::Ordering;

use num_rational::BigRational;

use super::IntPoly;
use crate::error::{Error, Result};

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    /// Builds the sequence for `p`, which must be square-free and nonzero.
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.degree() == 0 {
            return Self { seq };
        }
        seq.push(p.derivative().to_rat_poly().to_scaled_int());
        loop {
            let n = seq.len();
            let r = seq[n - 2].to_rat_poly().rem(&seq[n - 1].to_rat_poly());
            if r.is_zero() {
                break;
            }
            seq.push(r.neg().to_scaled_int());
        }
        Self { seq }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.seq[0]
    }

    fn count_variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::count_variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::count_variations(self.seq.iter().map(|p| p.leading().sign().into_ordering()))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::count_variations(self.seq.iter().map(|p| {
            let s = p.leading().sign().into_ordering();
            if p.degree() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        // V(a) - V(b) counts roots in (a, b].
        let n = self.variations_at(a) - self.variations_at(b);
        n - usize::from(self.poly().is_root(b))
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        if a > b {
            return 0;
        }
        if a == b {
            return usize::from(self.poly().is_root(a));
        }
        self.variations_at(a) - self.variations_at(b) + usize::from(self.poly().is_root(a))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Roots strictly greater than `a`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at_pos_inf()
    }

    /// Roots strictly less than `a`.
    pub fn count_below(&self, a: &BigRational) -> usize {
        let n = self.variations_at_neg_inf() - self.variations_at(a);
        n - usize::from(self.poly().is_root(a))
    }
}

trait IntoOrdering {
    fn into_ordering(self) -> Ordering;
}

impl IntoOrdering for num_bigint::Sign {
    fn into_ordering(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// Closed rational interval `[lo, hi]` isolating one real root.
///
/// Either `lo == hi` (the root is rational) or `lo < hi`, neither endpoint is
/// a root and exactly one root lies strictly between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Shrinks an open interval with exactly one root until no endpoint is a root.
pub(crate) fn clean_endpoints(
    sturm: &SturmSequence,
    mut a: BigRational,
    mut b: BigRational,
) -> RootInterval {
    let p = sturm.poly();
    let two = BigRational::from_integer(2.into());
    while p.is_root(&a) || p.is_root(&b) {
        let m = (&a + &b) / &two;
        if p.is_root(&m) {
            return RootInterval {
                lo: m.clone(),
                hi: m,
            };
        }
        if sturm.count_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    RootInterval { lo: a, hi: b }
}

/// Isolates every distinct real root of `p` by Sturm bisection.
///
/// The result is sorted. Neighbouring intervals can share an endpoint, which
/// is then not a root. Multiplicities are dropped.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::Domain(
            "root isolation of the zero polynomial".into(),
        ));
    }
    let sf = p.square_free_part()?;
    if sf.degree() == 0 {
        return Ok(Vec::new());
    }
    let sturm = SturmSequence::new(&sf);
    let bound = sf.root_bound();
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match sturm.count_open(&a, &b) {
            0 => {}
            1 => out.push(clean_endpoints(&sturm, a, b)),
            _ => {
                let m = (&a + &b) / &two;
                if sf.is_root(&m) {
                    out.push(RootInterval {
                        lo: m.clone(),
                        hi: m.clone(),
                    });
                }
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Distinct real roots of `p` in `[a, b]`.
pub fn count_roots_closed(p: &IntPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    let sf = p.square_free_part()?;
    Ok(SturmSequence::new(&sf).count_closed(a, b))
}

/// Bisects an isolating interval until its width is at most `width`.
pub(crate) fn refine_interval(p: &IntPoly, iv: &RootInterval, width: &BigRational) -> RootInterval {
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    if lo == hi {
        return iv.clone();
    }
    let two = BigRational::from_integer(2.into());
    let lo_sign = p.sign_at(&lo);
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / &two;
        let s = p.sign_at(&m);
        if s == Ordering::Equal {
            return RootInterval {
                lo: m.clone(),
                hi: m,
            };
        }
        if s == lo_sign {
            lo = m;
        } else {
            hi = m;
        }
    }
    RootInterval { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pell_roots_are_isolated() {
        let p = IntPoly::from_i64(&[1, -6, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        // 3 - 2√2 ≈ 0.1716, 3 + 2√2 ≈ 5.8284
        let small = refine_interval(&p, &roots[0], &q(1, 10_000));
        let large = refine_interval(&p, &roots[1], &q(1, 10_000));
        assert!(small.lo <= q(1716, 10_000) + q(1, 10_000) && small.hi >= q(1715, 10_000));
        assert!(large.lo >= q(58_283, 10_000) && large.hi <= q(58_285, 10_000));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&IntPoly::from_i64(&[1, 0, 1]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rational_roots_become_points_or_tight_intervals() {
        let roots = isolate_real_roots(&IntPoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&q(-1, 1)));
        assert!(roots[1].contains(&q(1, 1)));
        assert!(roots[0].hi <= roots[1].lo);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            isolate_real_roots(&IntPoly::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn closed_counts_include_endpoints() {
        let p = IntPoly::from_i64(&[0, -1, 0, 1]); // x^3 - x
        let s = SturmSequence::new(&p);
        assert_eq!(s.count_closed(&q(-1, 1), &q(1, 1)), 3);
        assert_eq!(s.count_open(&q(-1, 1), &q(1, 1)), 1);
        assert_eq!(s.count_closed(&q(0, 1), &q(0, 1)), 1);
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_above(&q(0, 1)), 1);
        assert_eq!(s.count_below(&q(0, 1)), 1);
    }

    #[test]
    fn multiple_roots_collapse() {
        let p = IntPoly::from_i64(&[-1, 1])
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[2, 1]));
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
    }
}
