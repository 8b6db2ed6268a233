//! Salem and quadratic-unit recognition.
//!
//! A reciprocal polynomial `p` of degree `2m` can be written as
//! `p(x) = x^m T(x + 1/x)`. Roots of `p` on the unit circle correspond to
//! roots of `T` in `[-2, 2]`, and a real pair `ρ, 1/ρ` with `ρ > 1`
//! corresponds to a root of `T` above 2. The Salem root pattern is therefore
//! certified by counting real roots of `T` with a Sturm sequence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::cyclotomic_free_part;
use super::sturm::SturmSequence;
use super::{AlgebraicNumber, IntPoly};
use crate::error::{Error, Result};

/// Shape of the spectral radius of an integral isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralKind {
    /// All roots are roots of unity.
    RhoOne,
    /// `ρ > 1` of degree two.
    QuadraticInteger(AlgebraicNumber),
    /// `ρ > 1` a Salem number of degree at least four.
    Salem(AlgebraicNumber),
}

impl SpectralKind {
    pub fn rho(&self) -> Option<&AlgebraicNumber> {
        match self {
            SpectralKind::RhoOne => None,
            SpectralKind::QuadraticInteger(r) | SpectralKind::Salem(r) => Some(r),
        }
    }
}

/// The polynomial `T` with `p(x) = x^m T(x + 1/x)` for a palindromic `p` of degree `2m`.
pub fn trace_polynomial(p: &IntPoly) -> Result<IntPoly> {
    if !p.is_palindromic() || p.degree() % 2 == 1 {
        return Err(Error::Domain(format!(
            "{p} is not reciprocal of even degree"
        )));
    }
    let m = p.degree() / 2;
    let c = p.coeffs();
    // x^k + x^-k = D_k(t), with D_0 = 2, D_1 = t, D_k = t D_{k-1} - D_{k-2}.
    let t = IntPoly::from_i64(&[0, 1]);
    let mut d_prev = IntPoly::from_i64(&[2]);
    let mut d_cur = t.clone();
    let mut out = IntPoly::new(vec![c[m].clone()]);
    for k in 1..=m {
        if k > 1 {
            let next = sub(&t.mul(&d_cur), &d_prev);
            d_prev = std::mem::replace(&mut d_cur, next);
        }
        out = add(&out, &d_cur.mul(&IntPoly::new(vec![c[m + k].clone()])));
    }
    Ok(out)
}

fn add(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.coeffs().len().max(b.coeffs().len());
    let get = |p: &IntPoly, i: usize| p.coeffs().get(i).cloned().unwrap_or_else(BigInt::zero);
    IntPoly::new((0..n).map(|i| get(a, i) + get(b, i)).collect())
}

fn sub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    add(a, &IntPoly::new(b.coeffs().iter().map(|c| -c).collect()))
}

/// Classifies the root pattern of a monic polynomial with constant term `±1`.
///
/// Cyclotomic factors are stripped first, so a full characteristic
/// polynomial can be passed directly.
pub fn salem_test(p: &IntPoly) -> Result<SpectralKind> {
    if !p.is_monic() {
        return Err(Error::Domain(format!(
            "salem test needs a monic polynomial, got {p}"
        )));
    }
    if !p.constant_term().abs().is_one() {
        return Err(Error::Domain(format!(
            "salem test needs p(0) = ±1, got {p}"
        )));
    }
    let (rest, _) = cyclotomic_free_part(p);
    if rest.is_constant() {
        return Ok(SpectralKind::RhoOne);
    }
    let carrier = rest.square_free_part()?;
    let trace = trace_polynomial(&carrier).map_err(|_| {
        Error::Malformed(format!("non-cyclotomic part {carrier} is not reciprocal"))
    })?;
    let m = trace.degree();
    let sturm = SturmSequence::new(&trace);
    let two = BigRational::from_integer(2.into());
    let real = sturm.count_real();
    let above = sturm.count_above(&two);
    let below = sturm.count_below(&-two.clone());
    // ±1 are not roots of the cyclotomic-free carrier, so T(±2) != 0.
    if real != m || above != 1 || below != 0 {
        return Err(Error::Malformed(format!(
            "{carrier} has neither the quadratic-unit nor the Salem root pattern"
        )));
    }
    let rho = largest_real_root(&carrier)?;
    if m == 1 {
        Ok(SpectralKind::QuadraticInteger(rho))
    } else {
        Ok(SpectralKind::Salem(rho))
    }
}

fn largest_real_root(p: &IntPoly) -> Result<AlgebraicNumber> {
    AlgebraicNumber::real_roots(p)?
        .pop()
        .ok_or_else(|| Error::Malformed(format!("{p} has no real root")))
}
