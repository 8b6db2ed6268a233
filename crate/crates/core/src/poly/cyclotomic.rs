//! Cyclotomic polynomials and the Kronecker-style root-of-unity test.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(n: u64) -> i8 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `x^d - 1`
fn x_pow_minus_one(d: u64) -> IntPoly {
    let mut c = vec![BigInt::zero(); d as usize + 1];
    c[0] = -BigInt::one();
    c[d as usize] = BigInt::one();
    IntPoly::new(c)
}

/// The `n`-th cyclotomic polynomial, via `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(n / d) {
            1 => num = num.mul(&x_pow_minus_one(d)),
            -1 => den = den.mul(&x_pow_minus_one(d)),
            _ => {}
        }
    }
    num.div_rem_monic(&den).0
}

/// All `n` with `φ(n) <= degree`, ascending. Uses `φ(n) >= sqrt(n / 2)`.
fn candidate_indices(degree: usize) -> impl Iterator<Item = u64> {
    let d = degree as u64;
    (1..=2 * d * d + 2).filter(move |&n| euler_phi(n) <= d)
}

/// Strips every cyclotomic factor from a monic polynomial.
///
/// Returns the cofactor and the `(n, multiplicity)` pairs that were removed.
pub fn cyclotomic_free_part(p: &IntPoly) -> (IntPoly, Vec<(u64, usize)>) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    for n in candidate_indices(p.degree()) {
        if rest.degree() < euler_phi(n) as usize {
            continue;
        }
        let phi = cyclotomic(n);
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((n, mult));
        }
        if rest.is_constant() {
            break;
        }
    }
    (rest, found)
}

/// Indices `n` with `Φ_n` dividing `p`, ascending.
pub fn cyclotomic_indices(p: &IntPoly) -> Vec<u64> {
    cyclotomic_free_part(p)
        .1
        .into_iter()
        .map(|(n, _)| n)
        .collect()
}

/// True iff every complex root of the monic polynomial `p` is a root of unity.
pub fn is_quasi_unipotent_poly(p: &IntPoly) -> Result<bool> {
    if !p.is_monic() {
        return Err(Error::Domain(format!(
            "quasi-unipotence test needs a monic polynomial, got {p}"
        )));
    }
    // Kronecker: a monic integer polynomial with |p(0)| != 1 has a root off the unit circle.
    if p.degree() > 0 && !p.constant_term().abs().is_one() {
        return Ok(false);
    }
    let (rest, _) = cyclotomic_free_part(p);
    Ok(rest.is_constant())
}

impl IntPoly {
    /// Division by a monic polynomial, staying in `ℤ[x]`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree();
        let mut rem = self.coeffs().to_vec();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if !c.is_zero() {
                for (j, d) in divisor.coeffs().iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }
}
