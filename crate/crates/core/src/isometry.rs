//! Isometries in `O(L)′` and their dynamical invariants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::interval::RatInterval;
use crate::lattice::{ConePosition, Lattice, RayVector};
use crate::linalg::IntMatrix;
use crate::poly::{
    alg_equal, cyclotomic_indices, is_quasi_unipotent_poly, salem_test, AlgebraicNumber, IntPoly,
    SpectralKind,
};

/// Elliptic, parabolic or loxodromic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryClass {
    Elliptic { order: u64 },
    Parabolic,
    Loxodromic { rho: AlgebraicNumber },
}

impl IsometryClass {
    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Elliptic { .. } => "elliptic",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Loxodromic { .. } => "loxodromic",
        }
    }

    pub fn is_loxodromic(&self) -> bool {
        matches!(self, IsometryClass::Loxodromic { .. })
    }
}

/// Eigenray of a loxodromic isometry for its spectral radius.
///
/// Coordinates live in `ℚ(ρ)`. The vector is scaled so that its first
/// nonzero coordinate is `±1`, with the sign that puts it in the closed
/// positive cone.
#[derive(Clone, Debug)]
pub struct PerronData {
    pub rho: AlgebraicNumber,
    pub field: NumberField,
    pub v: Vec<FieldElement>,
    pub position: ConePosition,
}

impl PerronData {
    pub fn ray(&self) -> RayVector {
        RayVector::Algebraic {
            field: self.field.clone(),
            coords: self.v.clone(),
        }
    }
}

/// Outcome of testing whether an isometry scales a cone vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polarization {
    Fixed,
    Scaled(AlgebraicNumber),
    NotEigen,
}

/// An integral isometry of a hyperbolic lattice preserving the positive cone.
#[derive(Clone, PartialEq, Eq)]
pub struct Isometry {
    lat: Arc<Lattice>,
    m: IntMatrix,
}

impl std::fmt::Debug for Isometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Isometry({:?})", self.m)
    }
}

impl Isometry {
    pub fn new(lat: Arc<Lattice>, m: IntMatrix) -> Result<Self> {
        let r = lat.rank();
        if m.rows() != r || m.cols() != r {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, lattice rank is {r}",
                m.rows(),
                m.cols()
            )));
        }
        let gram = lat.gram();
        if &(&m.transpose() * gram) * &m != *gram {
            return Err(Error::NotIsometry);
        }
        let det = m.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let image = m.mul_vec(lat.cone_ref());
        if !lat.pairing_int(&image, lat.cone_ref())?.is_positive() {
            return Err(Error::NotInOPrime);
        }
        Ok(Self { lat, m })
    }

    pub(crate) fn new_unchecked(lat: Arc<Lattice>, m: IntMatrix) -> Self {
        Self { lat, m }
    }

    pub fn identity(lat: Arc<Lattice>) -> Self {
        let n = lat.rank();
        Self {
            lat,
            m: IntMatrix::identity(n),
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lat
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn rank(&self) -> usize {
        self.m.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.lat, &other.lat) || self.lat == other.lat {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    /// `self ∘ other`, i.e. the matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        Ok(Self::new_unchecked(self.lat.clone(), &self.m * &other.m))
    }

    /// `G⁻¹ mᵀ G`, which is integral for an isometry.
    pub fn inverse(&self) -> Result<Self> {
        let gram = self.lat.gram().to_rat();
        let gram_inv = gram
            .inverse()
            .ok_or_else(|| Error::Malformed("Gram matrix of a lattice is singular".into()))?;
        let prod = gram_inv
            .checked_mul(&self.m.transpose().to_rat())?
            .checked_mul(&gram)?;
        let m = prod
            .to_int()
            .ok_or_else(|| Error::Malformed("inverse isometry is not integral".into()))?;
        Ok(Self::new_unchecked(self.lat.clone(), m))
    }

    pub fn power(&self, k: i64) -> Result<Self> {
        let m = if k < 0 {
            self.inverse()?.m.pow(-k)?
        } else {
            self.m.pow(k)?
        };
        Ok(Self::new_unchecked(self.lat.clone(), m))
    }

    pub fn char_poly(&self) -> IntPoly {
        self.m.char_poly().expect("isometry matrices are square")
    }

    /// `(m - I)^r = 0`.
    pub fn is_unipotent(&self) -> bool {
        let n = self.rank();
        let shifted = &self.m - &IntMatrix::identity(n);
        shifted.pow(n as i64).map(|p| p.is_zero()).unwrap_or(false)
    }

    fn is_quasi_unipotent(&self) -> bool {
        is_quasi_unipotent_poly(&self.char_poly()).expect("characteristic polynomials are monic")
    }

    /// Spectral radius; exactly 1 iff every eigenvalue is a root of unity.
    pub fn spectral_radius(&self) -> Result<AlgebraicNumber> {
        match salem_test(&self.char_poly())? {
            SpectralKind::RhoOne => Ok(AlgebraicNumber::one()),
            SpectralKind::QuadraticInteger(rho) | SpectralKind::Salem(rho) => Ok(rho),
        }
    }

    /// Quadratic-unit or Salem verdict for a loxodromic isometry.
    pub fn salem_kind(&self) -> Result<SpectralKind> {
        match salem_test(&self.char_poly())? {
            SpectralKind::RhoOne => Err(Error::Domain("isometry is not loxodromic".into())),
            kind => Ok(kind),
        }
    }

    /// Enclosure of `log ρ` of width at most `width`; the point 0 when `ρ = 1`.
    pub fn entropy(&self, width: &BigRational) -> Result<RatInterval> {
        let rho = self.spectral_radius()?;
        if rho.is_one() {
            return Ok(RatInterval::point(BigRational::zero()));
        }
        Ok(log_enclosure(&rho, width))
    }

    pub fn classify(&self) -> Result<IsometryClass> {
        let p = self.char_poly();
        if !self.is_quasi_unipotent() {
            return Ok(IsometryClass::Loxodromic {
                rho: self.spectral_radius()?,
            });
        }
        // Semisimple iff the square-free part of the characteristic polynomial kills m.
        let sf = p.square_free_part()?;
        if !eval_matrix_poly(&sf, &self.m).is_zero() {
            return Ok(IsometryClass::Parabolic);
        }
        let order = cyclotomic_indices(&p)
            .into_iter()
            .fold(1u64, |acc, n| acc.lcm(&n));
        let check = self.m.pow(order as i64)?;
        if !check.is_identity() {
            return Err(Error::Malformed(format!(
                "order {order} does not annihilate the isometry"
            )));
        }
        Ok(IsometryClass::Elliptic { order })
    }

    pub fn perron_ray(&self) -> Result<PerronData> {
        let rho = match self.classify()? {
            IsometryClass::Loxodromic { rho } => rho,
            other => {
                return Err(Error::Domain(format!(
                    "Perron ray requires a loxodromic isometry, got {}",
                    other.name()
                )))
            }
        };
        let mut field = NumberField::new(rho.clone());
        let mut basis = field.eigenspace(&self.m);
        if basis.len() != 1 {
            return Err(Error::Malformed(format!(
                "eigenspace for the spectral radius has dimension {}",
                basis.len()
            )));
        }
        let mut v = basis.pop().expect("one vector");
        let mut position = self.lat.cone_position_field(&mut field, &v)?;
        if position == ConePosition::Outside {
            v = v.iter().map(|x| field.neg(x)).collect();
            position = self.lat.cone_position_field(&mut field, &v)?;
        }
        if !position.in_closed_cone() {
            return Err(Error::Malformed(
                "Perron eigenvector is not in the closed cone".into(),
            ));
        }
        Ok(PerronData {
            rho,
            field,
            v,
            position,
        })
    }

    /// Whether `self` maps `d` to a positive multiple of itself.
    pub fn check_polarized(&self, d: &RayVector) -> Result<Polarization> {
        if d.len() != self.rank() {
            return Err(Error::Shape(format!(
                "vector has length {}, rank is {}",
                d.len(),
                self.rank()
            )));
        }
        let position = d.cone_position(&self.lat)?;
        if !position.in_closed_cone() {
            return Err(Error::Domain(
                "polarizing vector is outside the closed positive cone".into(),
            ));
        }
        let (mut field, coords) = d.in_field(None);
        let image = field.apply(&self.m, &coords);
        let i = (0..coords.len())
            .find(|&i| !field.is_zero(&coords[i]))
            .expect("vector in the cone is nonzero");
        let inv = field.inv(&coords[i]).expect("nonzero entry");
        let lambda = field.mul(&image[i], &inv);
        let proportional = coords.iter().zip(&image).all(|(x, y)| {
            let diff = field.sub(y, &field.mul(&lambda, x));
            field.is_zero(&diff)
        });
        if !proportional {
            return Ok(Polarization::NotEigen);
        }
        let minus_one = field.sub(&lambda, &FieldElement::one());
        if field.is_zero(&minus_one) {
            return Ok(Polarization::Fixed);
        }
        let lambda = field.to_algebraic(&lambda)?;
        let rho = self.spectral_radius()?;
        if rho.is_one() {
            return Err(Error::Malformed(
                "null-entropy isometry scales a cone vector by λ ≠ 1".into(),
            ));
        }
        if lambda.signum() != std::cmp::Ordering::Greater
            || !(alg_equal(&lambda, &rho) || alg_equal(&lambda, &rho.recip()?))
        {
            return Err(Error::Malformed(format!(
                "scaling factor {lambda} is not ρ^±1"
            )));
        }
        Ok(Polarization::Scaled(lambda))
    }
}

/// Horner evaluation of an integer polynomial at a square matrix.
pub(crate) fn eval_matrix_poly(p: &IntPoly, m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let id = IntMatrix::identity(n);
    p.coeffs()
        .iter()
        .rev()
        .fold(IntMatrix::zeros(n, n), |acc, c| {
            &(&acc * m) + &id.scale(c.clone())
        })
}

/// Certified enclosure of `log a` for `a > 0` with width at most `width`.
pub fn log_enclosure(a: &AlgebraicNumber, width: &BigRational) -> RatInterval {
    assert!(width.is_positive(), "width must be positive");
    let mut target = width.clone();
    loop {
        let bits = bits_for(&target) + 4;
        let r = a.refine(&(&target / BigRational::from_integer(4.into())));
        let enc = r.interval().ln(bits);
        if &enc.width() <= width {
            return enc;
        }
        target /= BigRational::from_integer(2.into());
    }
}

fn bits_for(width: &BigRational) -> u32 {
    // smallest b with 2^-b <= width
    let ratio = width.recip().ceil().to_integer();
    let mut b = ratio.bits() as u32;
    if ratio <= BigInt::one() {
        b = 1;
    }
    b
}

pub fn new_isometry(lat: Arc<Lattice>, m: IntMatrix) -> Result<Isometry> {
    Isometry::new(lat, m)
}

pub fn compose(g: &Isometry, h: &Isometry) -> Result<Isometry> {
    g.compose(h)
}

pub fn inverse(g: &Isometry) -> Result<Isometry> {
    g.inverse()
}

pub fn power(g: &Isometry, k: i64) -> Result<Isometry> {
    g.power(k)
}

pub fn spectral_radius(g: &Isometry) -> Result<AlgebraicNumber> {
    g.spectral_radius()
}

pub fn entropy(g: &Isometry, width: &BigRational) -> Result<RatInterval> {
    g.entropy(width)
}

pub fn classify(g: &Isometry) -> Result<IsometryClass> {
    g.classify()
}

pub fn salem_kind(g: &Isometry) -> Result<SpectralKind> {
    g.salem_kind()
}

pub fn perron_ray(g: &Isometry) -> Result<PerronData> {
    g.perron_ray()
}

pub fn check_polarized(g: &Isometry, d: &RayVector) -> Result<Polarization> {
    g.check_polarized(d)
}
