//! Hyperbolic lattices and their positive cone.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::linalg::{signature, to_rat_vector, IntMatrix, IntVector, RatVector};

/// Position of a nonzero vector relative to the closed positive cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConePosition {
    Interior,
    Boundary,
    Outside,
}

impl ConePosition {
    pub fn in_closed_cone(self) -> bool {
        matches!(self, ConePosition::Interior | ConePosition::Boundary)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConePosition::Interior => "interior",
            ConePosition::Boundary => "boundary",
            ConePosition::Outside => "outside",
        }
    }

    fn from_signs(square: Ordering, with_ref: Ordering) -> Self {
        match (square, with_ref) {
            (Ordering::Greater, Ordering::Greater) => ConePosition::Interior,
            (Ordering::Equal, Ordering::Greater) => ConePosition::Boundary,
            _ => ConePosition::Outside,
        }
    }
}

/// A torsion-free lattice with a form of signature `(1, r - 1)`.
///
/// `cone_ref` selects which of the two components of `{x : x² > 0}` is the
/// positive cone.
#[derive(Clone)]
pub struct Lattice {
    gram: IntMatrix,
    cone_ref: IntVector,
    name: Option<String>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram && self.cone_ref == other.cone_ref
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("gram", &self.gram)
            .field(
                "cone_ref",
                &self
                    .cone_ref
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Lattice {
    pub fn new(gram: IntMatrix, cone_ref: IntVector) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::Shape("Gram matrix is not symmetric".into()));
        }
        if cone_ref.len() != gram.rows() {
            return Err(Error::Shape(format!(
                "cone reference has length {}, rank is {}",
                cone_ref.len(),
                gram.rows()
            )));
        }
        if gram.det()?.is_zero() {
            return Err(Error::DegenerateForm);
        }
        let (plus, minus, zero) = signature(&gram)?;
        if plus != 1 || zero != 0 {
            return Err(Error::NotHyperbolic { plus, minus, zero });
        }
        let sq: BigInt = cone_ref
            .iter()
            .zip(gram.mul_vec(&cone_ref))
            .map(|(a, b)| a * b)
            .sum();
        if !sq.is_positive() {
            return Err(Error::BadReference(sq.to_string()));
        }
        Ok(Self {
            gram,
            cone_ref,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn cone_ref(&self) -> &IntVector {
        &self.cone_ref
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.rank() {
            return Err(Error::Shape(format!(
                "vector has length {n}, lattice rank is {}",
                self.rank()
            )));
        }
        Ok(())
    }

    /// `uᵀ G v`.
    pub fn pairing(&self, u: &[BigRational], v: &[BigRational]) -> Result<BigRational> {
        self.check_dim(u.len())?;
        self.check_dim(v.len())?;
        let gv = self.gram.mul_rat_vec(v);
        Ok(u.iter()
            .zip(&gv)
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, x| acc + x))
    }

    pub fn pairing_int(&self, u: &[BigInt], v: &[BigInt]) -> Result<BigInt> {
        self.check_dim(u.len())?;
        self.check_dim(v.len())?;
        Ok(u.iter().zip(self.gram.mul_vec(v)).map(|(a, b)| a * b).sum())
    }

    fn cone_ref_rat(&self) -> RatVector {
        to_rat_vector(&self.cone_ref)
    }

    pub fn cone_position(&self, v: &[BigRational]) -> Result<ConePosition> {
        self.check_dim(v.len())?;
        if v.iter().all(Zero::is_zero) {
            return Err(Error::Domain("cone position of the zero vector".into()));
        }
        let sq = self.pairing(v, v)?;
        let with_ref = self.pairing(v, &self.cone_ref_rat())?;
        Ok(ConePosition::from_signs(
            sq.cmp(&BigRational::zero()),
            with_ref.cmp(&BigRational::zero()),
        ))
    }

    /// Cone position of a vector with coordinates in `ℚ(ρ)`, decided exactly.
    pub fn cone_position_field(
        &self,
        field: &mut NumberField,
        v: &[FieldElement],
    ) -> Result<ConePosition> {
        self.check_dim(v.len())?;
        if v.iter().all(|x| field.is_zero(x)) {
            return Err(Error::Domain("cone position of the zero vector".into()));
        }
        let sq = field.bilinear(&self.gram, v, v);
        let with_ref = field.bilinear_rational(&self.gram, v, &self.cone_ref_rat());
        Ok(ConePosition::from_signs(
            field.sign(&sq),
            field.sign(&with_ref),
        ))
    }

    /// Divides out the gcd and orients the vector towards the positive cone.
    ///
    /// When `(v, cone_ref) = 0` the first nonzero entry is made positive instead.
    pub fn primitive(&self, v: &[BigInt]) -> Result<IntVector> {
        self.check_dim(v.len())?;
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::Domain("primitive of the zero vector".into()));
        }
        let mut out: IntVector = v.iter().map(|x| x / &g).collect();
        let with_ref = self.pairing_int(&out, &self.cone_ref)?;
        let flip = if with_ref.is_zero() {
            out.iter()
                .find(|x| !x.is_zero())
                .is_some_and(Signed::is_negative)
        } else {
            with_ref.is_negative()
        };
        if flip {
            out.iter_mut().for_each(|x| *x = -x.clone());
        }
        Ok(out)
    }
}

/// Free-function form of [`Lattice::new`].
pub fn new_lattice(gram: IntMatrix, cone_ref: IntVector) -> Result<Lattice> {
    Lattice::new(gram, cone_ref)
}

/// A vector of `L ⊗ ℚ` or of `L ⊗ ℚ(ρ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayVector {
    Rational(RatVector),
    Algebraic {
        field: NumberField,
        coords: Vec<FieldElement>,
    },
}

impl RayVector {
    pub fn from_ints(v: &[BigInt]) -> Self {
        RayVector::Rational(to_rat_vector(v))
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RayVector::Rational(
            v.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        match self {
            RayVector::Rational(v) => v.len(),
            RayVector::Algebraic { coords, .. } => coords.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cone_position(&self, lat: &Lattice) -> Result<ConePosition> {
        match self {
            RayVector::Rational(v) => lat.cone_position(v),
            RayVector::Algebraic { field, coords } => {
                lat.cone_position_field(&mut field.clone(), coords)
            }
        }
    }

    /// Field view of the vector; rational vectors are embedded into `field`.
    pub(crate) fn in_field(
        &self,
        fallback: Option<&NumberField>,
    ) -> (NumberField, Vec<FieldElement>) {
        match self {
            RayVector::Algebraic { field, coords } => (field.clone(), coords.clone()),
            RayVector::Rational(v) => {
                let field = fallback
                    .cloned()
                    .unwrap_or_else(|| NumberField::new(crate::poly::AlgebraicNumber::one()));
                let coords = field.embed(v);
                (field, coords)
            }
        }
    }

    /// True when both vectors span the same ray (positive multiples).
    pub fn same_ray(&self, other: &Self) -> bool {
        match (self, other) {
            (RayVector::Rational(a), RayVector::Rational(b)) => same_ray_rational(a, b),
            (
                RayVector::Algebraic {
                    field: fa,
                    coords: a,
                },
                RayVector::Algebraic {
                    field: fb,
                    coords: b,
                },
            ) => {
                if crate::poly::alg_equal(fa.root(), fb.root()) {
                    let mut k = fa.clone();
                    same_ray_field(&mut k, a, b)
                } else {
                    same_ray_across(&mut fa.clone(), a, &mut fb.clone(), b)
                }
            }
            (RayVector::Algebraic { field, coords }, RayVector::Rational(r))
            | (RayVector::Rational(r), RayVector::Algebraic { field, coords }) => {
                let mut k = field.clone();
                let rb = k.embed(r);
                same_ray_field(&mut k, coords, &rb)
            }
        }
    }
}

fn same_ray_rational(a: &[BigRational], b: &[BigRational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let t = &b[i] / &a[i];
    t.is_positive() && a.iter().zip(b).all(|(x, y)| &(x * &t) == y)
}

/// Ray comparison for vectors over two different generators.
///
/// The first nonzero coordinates must agree in position and sign, and every
/// coordinate ratio is compared as an exact real algebraic number.
fn same_ray_across(
    ka: &mut NumberField,
    a: &[FieldElement],
    kb: &mut NumberField,
    b: &[FieldElement],
) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = (0..a.len()).find(|&i| !ka.is_zero(&a[i])) else {
        return false;
    };
    if kb.is_zero(&b[i]) || (0..i).any(|j| !kb.is_zero(&b[j])) {
        return false;
    }
    if ka.sign(&a[i]) != kb.sign(&b[i]) {
        return false;
    }
    let (Some(ia), Some(ib)) = (ka.inv(&a[i]), kb.inv(&b[i])) else {
        return false;
    };
    for j in i + 1..a.len() {
        let ra = ka.mul(&a[j], &ia);
        let rb = kb.mul(&b[j], &ib);
        let (Ok(x), Ok(y)) = (ka.to_algebraic(&ra), kb.to_algebraic(&rb)) else {
            return false;
        };
        if !crate::poly::alg_equal(&x, &y) {
            return false;
        }
    }
    true
}

fn same_ray_field(k: &mut NumberField, a: &[FieldElement], b: &[FieldElement]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = (0..a.len()).find(|&i| !k.is_zero(&a[i])) else {
        return false;
    };
    let Some(inv) = k.inv(&a[i]) else {
        return false;
    };
    let t = k.mul(&b[i], &inv);
    if k.sign(&t) != Ordering::Greater {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| {
        let d = k.sub(&k.mul(x, &t), y);
        k.is_zero(&d)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn iv(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rv(v: &[i64]) -> RatVector {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    fn gram_u() -> Lattice {
        Lattice::new(m(&[&[0, 1], &[1, 0]]), iv(&[1, 1])).unwrap()
    }

    fn gram_p() -> Lattice {
        Lattice::new(m(&[&[1, 0], &[0, -2]]), iv(&[1, 0])).unwrap()
    }

    fn u_plus_minus_one() -> Lattice {
        Lattice::new(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]), iv(&[1, 1, 0])).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Lattice::new(m(&[&[1, 0], &[0, 0]]), iv(&[1, 0])),
            Err(Error::DegenerateForm)
        ));
        assert!(matches!(
            Lattice::new(m(&[&[1, 0], &[0, 1]]), iv(&[1, 0])),
            Err(Error::NotHyperbolic {
                plus: 2,
                minus: 0,
                zero: 0
            })
        ));
        assert!(matches!(
            Lattice::new(m(&[&[1, 0], &[0, -2]]), iv(&[0, 1])),
            Err(Error::BadReference(_))
        ));
        assert!(matches!(
            Lattice::new(m(&[&[0, 1], &[2, 0]]), iv(&[1, 1])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(
            gram_u().pairing(&rv(&[1, 1]), &rv(&[1, 1])).unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(gram_p()
            .pairing(&rv(&[1, 0]), &rv(&[0, 1]))
            .unwrap()
            .is_zero());
        assert_eq!(
            gram_p().pairing(&rv(&[2, 1]), &rv(&[2, 1])).unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(matches!(
            gram_p().pairing(&rv(&[1]), &rv(&[1, 0])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn cone_positions() {
        assert_eq!(
            gram_p().cone_position(&rv(&[1, 0])).unwrap(),
            ConePosition::Interior
        );
        assert_eq!(
            gram_u().cone_position(&rv(&[1, 0])).unwrap(),
            ConePosition::Boundary
        );
        assert_eq!(
            gram_p().cone_position(&rv(&[0, 1])).unwrap(),
            ConePosition::Outside
        );
        assert_eq!(
            gram_p().cone_position(&rv(&[-1, 0])).unwrap(),
            ConePosition::Outside
        );
        assert!(matches!(
            gram_p().cone_position(&rv(&[0, 0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(gram_u().primitive(&iv(&[2, 2])).unwrap(), iv(&[1, 1]));
        assert_eq!(
            u_plus_minus_one().primitive(&iv(&[-3, 0, 0])).unwrap(),
            iv(&[1, 0, 0])
        );
        // (4, -6) -> ±(2, -3); pairing of (2, -3) with ref (1, 0) on GRAM_P is 2 > 0.
        assert_eq!(gram_p().primitive(&iv(&[4, -6])).unwrap(), iv(&[2, -3]));
        assert_eq!(gram_p().primitive(&iv(&[-4, 6])).unwrap(), iv(&[2, -3]));
        assert!(matches!(
            gram_p().primitive(&iv(&[0, 0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn same_ray_checks_sign() {
        assert!(RayVector::from_i64(&[1, 2]).same_ray(&RayVector::from_i64(&[3, 6])));
        assert!(!RayVector::from_i64(&[1, 2]).same_ray(&RayVector::from_i64(&[-1, -2])));
        assert!(!RayVector::from_i64(&[1, 2]).same_ray(&RayVector::from_i64(&[1, 3])));
    }
}
