//! Arithmetic in `ℚ(ρ)` for a real algebraic `ρ`.
//!
//! Elements are rational polynomials in `ρ` reduced modulo a defining
//! polynomial. The modulus need not be irreducible: whenever a zero test or
//! an inversion meets a nontrivial gcd, the modulus is replaced by the factor
//! that still vanishes at `ρ`. Old representatives stay valid because the new
//! modulus divides the old one.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::linalg::{IntMatrix, RatMatrix, RatVector};
use crate::poly::{AlgebraicNumber, RatPoly, SturmSequence};

/// An element of `ℚ(ρ)`, stored as a polynomial in `ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(RatPoly);

impl FieldElement {
    pub fn from_rational(r: BigRational) -> Self {
        Self(RatPoly::constant(r))
    }

    pub fn zero() -> Self {
        Self(RatPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn poly(&self) -> &RatPoly {
        &self.0
    }

    /// Coefficients in ascending powers of `ρ`.
    pub fn coeffs(&self) -> &[BigRational] {
        self.0.coeffs()
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `ℚ(ρ)` together with a certified isolating interval for `ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: RatPoly,
    root: AlgebraicNumber,
}

impl NumberField {
    pub fn new(root: AlgebraicNumber) -> Self {
        let modulus = root.min_poly().to_rat_poly().monic();
        Self { modulus, root }
    }

    pub fn root(&self) -> &AlgebraicNumber {
        &self.root
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    /// The generator `ρ` itself.
    pub fn generator(&self) -> FieldElement {
        self.reduce(&RatPoly::x())
    }

    pub fn reduce(&self, p: &RatPoly) -> FieldElement {
        FieldElement(p.rem(&self.modulus))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(&a.0.add(&b.0))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(&a.0.sub(&b.0))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(&a.0.mul(&b.0))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.reduce(&a.0.neg())
    }

    pub fn scale(&self, a: &FieldElement, s: &BigRational) -> FieldElement {
        self.reduce(&a.0.scale(s))
    }

    fn vanishes_at_root(&self, g: &RatPoly) -> bool {
        let gi = g.to_primitive_int();
        SturmSequence::new(&gi).count_closed(self.root.lo(), self.root.hi()) == 1
    }

    /// Exact test of `a(ρ) = 0`.
    pub fn is_zero(&mut self, a: &FieldElement) -> bool {
        let r = a.0.rem(&self.modulus);
        if r.is_zero() {
            return true;
        }
        let g = r.gcd(&self.modulus);
        if g.degree() == 0 {
            return false;
        }
        if self.vanishes_at_root(&g) {
            self.modulus = g;
            true
        } else {
            self.modulus = self.modulus.div_rem(&g).0.monic();
            false
        }
    }

    pub fn inv(&mut self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = a.0.rem(&self.modulus).ext_gcd(&self.modulus);
        debug_assert_eq!(g.degree(), 0, "is_zero leaves a coprime to the modulus");
        Some(self.reduce(&s))
    }

    /// Interval enclosure of `a(ρ)` at the current precision of `ρ`.
    pub fn enclose(&self, a: &FieldElement) -> RatInterval {
        self.root.interval().eval_poly(a.0.coeffs())
    }

    /// Enclosure of `a(ρ)` with width at most `width`.
    pub fn enclose_within(&mut self, a: &FieldElement, width: &BigRational) -> RatInterval {
        loop {
            let e = self.enclose(a);
            if &e.width() <= width {
                return e;
            }
            self.refine_root();
        }
    }

    fn refine_root(&mut self) {
        let w = self.root.interval().width() / BigRational::from_integer(2.into());
        if !w.is_zero() {
            self.root = self.root.refine(&w);
        }
    }

    /// Exact sign of `a(ρ)`.
    pub fn sign(&mut self, a: &FieldElement) -> Ordering {
        if self.is_zero(a) {
            return Ordering::Equal;
        }
        loop {
            let e = self.enclose(a);
            if e.lo > BigRational::zero() {
                return Ordering::Greater;
            }
            if e.hi < BigRational::zero() {
                return Ordering::Less;
            }
            self.refine_root();
        }
    }

    /// Matrix of multiplication by `a` on the power basis.
    fn multiplication_matrix(&self, a: &FieldElement) -> RatMatrix {
        let n = self.degree();
        let mut m = RatMatrix::zeros(n, n);
        let mut basis = FieldElement::one();
        let x = self.generator();
        for j in 0..n {
            let col = self.mul(a, &basis);
            for i in 0..n {
                m.set(i, j, col.0.coeff(i));
            }
            basis = self.mul(&basis, &x);
        }
        m
    }

    /// `a(ρ)` as a standalone algebraic number.
    pub fn to_algebraic(&mut self, a: &FieldElement) -> Result<AlgebraicNumber> {
        if self.is_zero(a) {
            return Ok(AlgebraicNumber::from_integer(0));
        }
        let a = self.reduce(&a.0);
        if a.0.degree() == 0 {
            return Ok(AlgebraicNumber::from_rational(a.0.coeff(0)));
        }
        let cp =
            crate::poly::rational_char_poly(&self.multiplication_matrix(&a)).square_free_part()?;
        let sturm = SturmSequence::new(&cp);
        loop {
            let e = self.enclose(&a);
            if sturm.count_closed(&e.lo, &e.hi) == 1 {
                return AlgebraicNumber::new(&cp, e.lo, e.hi);
            }
            if e.width().is_zero() {
                return Err(Error::Malformed(
                    "point enclosure failed to isolate a root".into(),
                ));
            }
            self.refine_root();
        }
    }

    /// `m · v` for an integer matrix acting on a field vector.
    pub fn apply(&self, m: &IntMatrix, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..m.rows())
            .map(|i| {
                let acc = m.row(i).iter().zip(v).fold(RatPoly::zero(), |acc, (c, x)| {
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add(&x.0.scale(&BigRational::from_integer(c.clone())))
                    }
                });
                self.reduce(&acc)
            })
            .collect()
    }

    /// `uᵀ G v` for field vectors.
    pub fn bilinear(
        &self,
        gram: &IntMatrix,
        u: &[FieldElement],
        v: &[FieldElement],
    ) -> FieldElement {
        let gv = self.apply(gram, v);
        u.iter().zip(&gv).fold(FieldElement::zero(), |acc, (a, b)| {
            self.add(&acc, &self.mul(a, b))
        })
    }

    /// `uᵀ G r` for a field vector `u` and a rational vector `r`.
    pub fn bilinear_rational(
        &self,
        gram: &IntMatrix,
        u: &[FieldElement],
        r: &[BigRational],
    ) -> FieldElement {
        let gr = gram.mul_rat_vec(r);
        u.iter().zip(&gr).fold(FieldElement::zero(), |acc, (a, b)| {
            self.add(&acc, &self.scale(a, b))
        })
    }

    pub fn embed(&self, v: &RatVector) -> Vec<FieldElement> {
        v.iter().cloned().map(FieldElement::from_rational).collect()
    }

    /// Basis of the kernel of `m - ρ I` over `ℚ(ρ)`, echelon-normalized.
    pub fn eigenspace(&mut self, m: &IntMatrix) -> Vec<Vec<FieldElement>> {
        let n = m.rows();
        let rho = self.generator();
        let mut a: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = FieldElement::from_rational(BigRational::from_integer(
                            m.get(i, j).clone(),
                        ));
                        if i == j {
                            self.sub(&e, &rho)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&i| {
                let e = a[i][col].clone();
                !self.is_zero(&e)
            }) else {
                continue;
            };
            a.swap(p, row);
            let inv = self.inv(&a[row][col]).expect("pivot is nonzero");
            for j in 0..n {
                a[row][j] = self.mul(&a[row][j], &inv);
            }
            for i in 0..n {
                if i == row {
                    continue;
                }
                let f = a[i][col].clone();
                if self.is_zero(&f) {
                    a[i][col] = FieldElement::zero();
                    continue;
                }
                for j in 0..n {
                    let t = self.mul(&f, &a[row][j]);
                    a[i][j] = self.sub(&a[i][j], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(); n];
                v[f] = FieldElement::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = self.neg(&a[r][f]);
                }
                v = v.iter().map(|x| self.reduce(&x.0)).collect();
                self.normalize_leading(v)
            })
            .collect()
    }

    /// Divides by the first coordinate that is nonzero at `ρ`.
    pub fn normalize_leading(&mut self, v: Vec<FieldElement>) -> Vec<FieldElement> {
        let lead = v.iter().find(|x| {
            let x = (*x).clone();
            !self.is_zero(&x)
        });
        let Some(lead) = lead.cloned() else {
            return v;
        };
        let inv = self.inv(&lead).expect("leading entry is nonzero");
        v.iter().map(|x| self.mul(x, &inv)).collect()
    }
}
