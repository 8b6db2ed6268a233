//! Finitely generated subgroups of `O(L)′`.
//!
//! Words over the generators are encoded as integer sequences: generator `i`
//! is the letter `i` and its inverse is `-(i + 1)`. A word acts as the
//! matrix product of its letters, left to right.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::isometry::{log_enclosure, Isometry, Polarization};
use crate::lattice::{ConePosition, Lattice, RayVector};
use crate::linalg::{primitive_integer_vector, IntMatrix, IntVector, RatMatrix, RatVector};
use crate::poly::{alg_equal, alg_pow_equal, AlgebraicNumber};

pub const DEFAULT_WORD_BOUND: usize = 8;
pub const DEFAULT_EXPONENT_BOUND: u32 = 64;
pub const DEFAULT_PIGEONHOLE_BOUND: usize = 4096;

/// A word over generators and their inverses.
pub type Word = Vec<i64>;

/// Generators of a subgroup `G ≤ O(L)′`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    lat: Arc<Lattice>,
    generators: Vec<Isometry>,
}

impl GroupSpec {
    pub fn new(lat: Arc<Lattice>, generators: Vec<Isometry>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Domain("a group needs at least one generator".into()));
        }
        if generators.iter().any(|g| **g.lattice() != *lat) {
            return Err(Error::LatticeMismatch);
        }
        Ok(Self { lat, generators })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lat
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    /// Evaluates a word; fails on an out-of-range letter.
    pub fn word_element(&self, word: &[i64]) -> Result<Isometry> {
        let mut acc = Isometry::identity(self.lat.clone());
        for &letter in word {
            let (idx, inverse) = if letter >= 0 {
                (letter as usize, false)
            } else {
                ((-letter - 1) as usize, true)
            };
            let g = self
                .generators
                .get(idx)
                .ok_or_else(|| Error::Domain(format!("letter {letter} names no generator")))?;
            let g = if inverse { g.inverse()? } else { g.clone() };
            acc = acc.compose(&g)?;
        }
        Ok(acc)
    }

    fn letters(&self) -> Result<Vec<(i64, IntMatrix)>> {
        let mut out = Vec::with_capacity(2 * self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            out.push((i as i64, g.matrix().clone()));
            out.push((-(i as i64) - 1, g.inverse()?.matrix().clone()));
        }
        Ok(out)
    }
}

/// A ray scaled by every generator, with the scaling factors.
#[derive(Clone, Debug)]
pub struct RayReport {
    pub ray: RayVector,
    pub position: ConePosition,
    pub lambdas: Vec<AlgebraicNumber>,
}

impl RayReport {
    /// The ray as an integer vector, when it is rational.
    pub fn integer_ray(&self) -> Option<IntVector> {
        match &self.ray {
            RayVector::Rational(v) => Some(primitive_integer_vector(v)),
            RayVector::Algebraic { .. } => None,
        }
    }
}

/// The subspace fixed by every generator, with the form restricted to it.
#[derive(Clone, Debug)]
pub struct FixedSubspace {
    pub basis: Vec<RatVector>,
    pub positive: usize,
    pub radical: Vec<RatVector>,
}

impl FixedSubspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dimension(&self) -> usize {
        self.radical.len()
    }
}

/// Exact intersection of the eigenvalue-1 eigenspaces of the generators.
pub fn fixed_subspace(g: &GroupSpec) -> Result<FixedSubspace> {
    let n = g.lat.rank();
    let id = IntMatrix::identity(n);
    let mut rows: Vec<BigRational> = Vec::new();
    for gen in &g.generators {
        let d = gen.matrix() - &id;
        rows.extend(d.entries().iter().cloned().map(BigRational::from_integer));
    }
    let stacked = RatMatrix::new(n * g.generators.len(), n, rows)?;
    let basis = stacked.kernel_basis();
    if basis.is_empty() {
        return Ok(FixedSubspace {
            basis,
            positive: 0,
            radical: Vec::new(),
        });
    }
    let f = RatMatrix::from_columns(&basis)?;
    let restricted = f
        .transpose()
        .checked_mul(&g.lat.gram().to_rat())?
        .checked_mul(&f)?;
    let (diag, _) = restricted.congruence_diagonalize()?;
    let positive = diag.iter().filter(|d| d.is_positive()).count();
    let radical = restricted
        .kernel_basis()
        .iter()
        .map(|k| f.mul_vec(k))
        .collect();
    Ok(FixedSubspace {
        basis,
        positive,
        radical,
    })
}

/// A cone vector fixed by every generator, if one exists.
///
/// Interior vectors are preferred; otherwise an isotropic vector spanning the
/// radical of the restricted form is returned, made primitive and oriented
/// into the closed positive cone.
pub fn common_fixed_ray(g: &GroupSpec) -> Result<Option<RayReport>> {
    let fs = fixed_subspace(g)?;
    if fs.basis.is_empty() {
        return Ok(None);
    }
    let lat = &g.lat;
    let ones = vec![AlgebraicNumber::one(); g.generators.len()];
    if fs.positive > 0 {
        let f = RatMatrix::from_columns(&fs.basis)?;
        let restricted = f
            .transpose()
            .checked_mul(&lat.gram().to_rat())?
            .checked_mul(&f)?;
        let (diag, p) = restricted.congruence_diagonalize()?;
        let i = diag
            .iter()
            .position(|d| d.is_positive())
            .expect("positive entry");
        let v = f.mul_vec(&p.column(i));
        let v = orient(lat, primitive_integer_vector(&v))?;
        let position = lat.cone_position(&to_rat(&v))?;
        debug_assert_eq!(position, ConePosition::Interior);
        return Ok(Some(RayReport {
            ray: RayVector::from_ints(&v),
            position,
            lambdas: ones,
        }));
    }
    let Some(r) = fs.radical.first() else {
        return Ok(None);
    };
    let v = orient(lat, primitive_integer_vector(r))?;
    let position = lat.cone_position(&to_rat(&v))?;
    if position != ConePosition::Boundary {
        return Err(Error::Malformed(
            "radical vector of the fixed space is not isotropic".into(),
        ));
    }
    Ok(Some(RayReport {
        ray: RayVector::from_ints(&v),
        position,
        lambdas: ones,
    }))
}

fn to_rat(v: &[BigInt]) -> RatVector {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

fn orient(lat: &Lattice, v: IntVector) -> Result<IntVector> {
    let s = lat.pairing_int(&v, lat.cone_ref())?;
    if s.is_negative() {
        Ok(v.into_iter().map(|x| -x).collect())
    } else {
        Ok(v)
    }
}

/// Outcome of the null-entropy semi-decision.
#[derive(Clone, Debug)]
pub enum NullVerdict {
    YesFixedRay(RayReport),
    YesFinite(usize),
    No(Word),
    Inconclusive(usize),
}

impl NullVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            NullVerdict::YesFixedRay(_) => "yes_fixed_ray",
            NullVerdict::YesFinite(_) => "yes_finite",
            NullVerdict::No(_) => "no",
            NullVerdict::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Distinct group elements reached by words up to some length.
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Elements in discovery order with a shortest word for each.
    pub elements: Vec<(IntMatrix, Word)>,
    /// True when no new element appeared at the last level, so the group is finite.
    pub closed: bool,
}

/// Breadth-first search over distinct matrices.
///
/// `stop` is called on every newly found element; returning `true` ends the
/// search early.
pub fn enumerate_elements<F>(g: &GroupSpec, word_bound: usize, mut stop: F) -> Result<Enumeration>
where
    F: FnMut(&IntMatrix, &Word) -> bool,
{
    let letters = g.letters()?;
    let id = IntMatrix::identity(g.lat.rank());
    let mut index: HashMap<IntMatrix, usize> = HashMap::new();
    let mut elements = vec![(id.clone(), Word::new())];
    index.insert(id, 0);
    let mut frontier = vec![0usize];
    for _ in 0..word_bound {
        let mut next = Vec::new();
        for &e in &frontier {
            for (letter, m) in &letters {
                let prod = &elements[e].0 * m;
                if index.contains_key(&prod) {
                    continue;
                }
                let mut word = elements[e].1.clone();
                word.push(*letter);
                let done = stop(&prod, &word);
                index.insert(prod.clone(), elements.len());
                next.push(elements.len());
                elements.push((prod, word));
                if done {
                    return Ok(Enumeration {
                        elements,
                        closed: false,
                    });
                }
            }
        }
        if next.is_empty() {
            return Ok(Enumeration {
                elements,
                closed: true,
            });
        }
        frontier = next;
    }
    // One more level decides whether the set is already closed.
    let closed = frontier.iter().all(|&e| {
        letters
            .iter()
            .all(|(_, m)| index.contains_key(&(&elements[e].0 * m)))
    });
    Ok(Enumeration { elements, closed })
}

fn is_loxodromic_matrix(lat: &Arc<Lattice>, m: &IntMatrix) -> bool {
    let g = Isometry::new_unchecked(lat.clone(), m.clone());
    g.classify().map(|c| c.is_loxodromic()).unwrap_or(false)
}

/// Null-entropy semi-decision with branch order: loxodromic generator,
/// common fixed ray, finite closure, word search.
pub fn null_entropy_decide(g: &GroupSpec, word_bound: usize) -> Result<NullVerdict> {
    if word_bound == 0 {
        return Err(Error::Domain("word bound must be at least 1".into()));
    }
    for (i, gen) in g.generators.iter().enumerate() {
        if gen.classify()?.is_loxodromic() {
            return Ok(NullVerdict::No(vec![i as i64]));
        }
    }
    if let Some(report) = common_fixed_ray(g)? {
        return Ok(NullVerdict::YesFixedRay(report));
    }
    let mut witness = None;
    let en = enumerate_elements(g, word_bound, |m, w| {
        if is_loxodromic_matrix(&g.lat, m) {
            witness = Some(w.clone());
            true
        } else {
            false
        }
    })?;
    if let Some(w) = witness {
        return Ok(NullVerdict::No(w));
    }
    if en.closed {
        return Ok(NullVerdict::YesFinite(en.elements.len()));
    }
    Ok(NullVerdict::Inconclusive(word_bound))
}

/// `(m - I)^r = 0`.
pub fn unipotent_test(g: &Isometry) -> bool {
    g.is_unipotent()
}

/// Non-loxodromic elements among words of length at most `word_bound`.
pub fn null_subset_enumerate(g: &GroupSpec, word_bound: usize) -> Result<Vec<(Isometry, Word)>> {
    if word_bound == 0 {
        return Err(Error::Domain("word bound must be at least 1".into()));
    }
    let en = enumerate_elements(g, word_bound, |_, _| false)?;
    Ok(en
        .elements
        .into_iter()
        .filter(|(m, _)| !is_loxodromic_matrix(&g.lat, m))
        .map(|(m, w)| (Isometry::new_unchecked(g.lat.clone(), m), w))
        .collect())
}

/// Image of the eigenvalue homomorphism on the generators.
#[derive(Clone, Debug)]
pub enum PhiImage {
    /// Every generator fixes the ray.
    One,
    /// Every `λ_i` is `λ₀^{k_i}` for the recorded exponents.
    Cyclic {
        lambda0: AlgebraicNumber,
        exponents: Vec<i64>,
    },
    /// No multiplicative relation found with exponents up to the bound.
    Undecided { exponent_bound: u32 },
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub lambdas: Vec<AlgebraicNumber>,
    pub image: PhiImage,
}

impl PhiReport {
    pub fn is_discrete_cyclic(&self) -> bool {
        matches!(self.image, PhiImage::Cyclic { .. })
    }
}

/// Scaling factors of the generators on `ray` and a generator of their group.
pub fn phi_map(g: &GroupSpec, ray: &RayVector, exponent_bound: u32) -> Result<PhiReport> {
    let mut lambdas = Vec::with_capacity(g.generators.len());
    for (i, gen) in g.generators.iter().enumerate() {
        match gen.check_polarized(ray)? {
            Polarization::Fixed => lambdas.push(AlgebraicNumber::one()),
            Polarization::Scaled(l) => lambdas.push(l),
            Polarization::NotEigen => return Err(Error::NotPolarized(i)),
        }
    }
    let Some(reference) = lambdas.iter().find(|l| !l.is_one()) else {
        return Ok(PhiReport {
            lambdas,
            image: PhiImage::One,
        });
    };
    let mu = above_one(reference)?;
    // Each λ_i = μ^{q_i} with q_i rational.
    let mut ratios: Vec<BigRational> = Vec::with_capacity(lambdas.len());
    for l in &lambdas {
        if l.is_one() {
            ratios.push(BigRational::zero());
            continue;
        }
        let sign = if is_above_one(l) { 1 } else { -1 };
        let nu = above_one(l)?;
        match find_power_relation(&nu, &mu, exponent_bound) {
            Some((a, b)) => ratios.push(BigRational::new(
                BigInt::from(sign * b as i64),
                BigInt::from(a),
            )),
            None => {
                return Ok(PhiReport {
                    lambdas,
                    image: PhiImage::Undecided { exponent_bound },
                })
            }
        }
    }
    let c = rational_gcd(&ratios);
    let exponents: Vec<i64> = ratios
        .iter()
        .map(|q| {
            let k = q / &c;
            debug_assert!(k.is_integer());
            i64::try_from(k.to_integer()).expect("exponent fits in i64")
        })
        .collect();
    // λ₀ is realized by the word ∏ g_i^{u_i} with Σ u_i k_i = 1.
    let bezout = bezout_coefficients(&exponents);
    let mut w = Isometry::identity(g.lat.clone());
    for (gen, &u) in g.generators.iter().zip(&bezout) {
        if u != 0 {
            w = w.compose(&gen.power(u)?)?;
        }
    }
    let lambda0 = match w.check_polarized(ray)? {
        Polarization::Scaled(l) => l,
        _ => {
            return Err(Error::Malformed(
                "Bezout word does not scale the ray".into(),
            ))
        }
    };
    if !is_above_one(&lambda0) {
        return Err(Error::Malformed("image generator is not above 1".into()));
    }
    for (l, &k) in lambdas.iter().zip(&exponents) {
        if !power_matches(&lambda0, k, l)? {
            return Err(Error::Malformed(format!("λ = {l} is not λ₀^{k}")));
        }
    }
    Ok(PhiReport {
        lambdas,
        image: PhiImage::Cyclic { lambda0, exponents },
    })
}

fn is_above_one(x: &AlgebraicNumber) -> bool {
    x.cmp_rational(&BigRational::one()) == std::cmp::Ordering::Greater
}

fn above_one(x: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    if is_above_one(x) {
        Ok(x.clone())
    } else {
        x.recip()
    }
}

/// `base^k == x` exactly, for any integer `k`.
pub fn power_matches(base: &AlgebraicNumber, k: i64, x: &AlgebraicNumber) -> Result<bool> {
    if k == 0 {
        return Ok(x.is_one());
    }
    let target = if k < 0 { x.recip()? } else { x.clone() };
    Ok(alg_pow_equal(base, k.unsigned_abs() as u32, &target, 1))
}

/// Smallest `(a, b)` with `1 ≤ a, b ≤ bound` and `x^a = y^b`, for `x, y > 1`.
pub fn find_power_relation(
    x: &AlgebraicNumber,
    y: &AlgebraicNumber,
    bound: u32,
) -> Option<(u32, u32)> {
    let w = BigRational::new(BigInt::one(), BigInt::one() << 48u32);
    let lx = log_enclosure(x, &w);
    let ly = log_enclosure(y, &w);
    // b / a lies in [lx.lo / ly.hi, lx.hi / ly.lo].
    let lo = &lx.lo / &ly.hi;
    let hi = &lx.hi / &ly.lo;
    for a in 1..=bound {
        let fa = BigRational::from_integer(a.into());
        let b_lo = (&lo * &fa).ceil().to_integer().max(BigInt::one());
        let b_hi = (&hi * &fa).floor().to_integer().min(BigInt::from(bound));
        let mut b = b_lo;
        while b <= b_hi {
            let bu = u32::try_from(&b).expect("bounded by u32");
            if alg_pow_equal(x, a, y, bu) {
                return Some((a, bu));
            }
            b += 1;
        }
    }
    None
}

fn rational_gcd(qs: &[BigRational]) -> BigRational {
    let num = qs.iter().fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()));
    let den = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    BigRational::new(num, den)
}

/// Integers `u_i` with `Σ u_i k_i = gcd(k)`.
fn bezout_coefficients(ks: &[i64]) -> Vec<i64> {
    let mut coeffs = vec![0i64; ks.len()];
    let mut g = 0i64;
    for (i, &k) in ks.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if g == 0 {
            g = k.abs();
            coeffs[i] = k.signum();
            continue;
        }
        let e = g.extended_gcd(&k);
        for c in coeffs.iter_mut().take(i) {
            *c *= e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    coeffs
}

/// Outcome of the equal-up-to-powers search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualPowers {
    Found {
        t1: i64,
        t2: i64,
    },
    NotFoundWithin {
        exponent_bound: u32,
        pigeonhole_bound: usize,
    },
    NotCompatible(String),
}

/// Searches for nonzero `t1, t2` with `g1^t1 = g2^t2`.
pub fn equal_up_to_powers(
    g1: &Isometry,
    g2: &Isometry,
    exponent_bound: u32,
    pigeonhole_bound: usize,
) -> Result<EqualPowers> {
    if **g1.lattice() != **g2.lattice() {
        return Err(Error::LatticeMismatch);
    }
    for g in [g1, g2] {
        if !g.classify()?.is_loxodromic() {
            return Err(Error::Domain(
                "equal_up_to_powers needs loxodromic isometries".into(),
            ));
        }
    }
    let pd = g1.perron_ray()?;
    let (h2, sign) = match g2.check_polarized(&pd.ray())? {
        Polarization::Scaled(l) if is_above_one(&l) => (g2.clone(), 1i64),
        Polarization::Scaled(_) => (g2.inverse()?, -1),
        Polarization::Fixed | Polarization::NotEigen => {
            return Ok(EqualPowers::NotCompatible(
                "no common polarizing ray".into(),
            ))
        }
    };
    let rho1 = pd.rho.clone();
    let rho2 = h2.spectral_radius()?;
    for (a, b) in power_relations(&rho1, &rho2, exponent_bound) {
        if let Some(t) = pigeonhole(g1, &h2, a, b, pigeonhole_bound)? {
            let t1 = a as i64 * t;
            let t2 = sign * b as i64 * t;
            if g1.power(t1)?.matrix() != g2.power(t2)?.matrix() {
                return Err(Error::Malformed(
                    "pigeonhole repeat did not give equal powers".into(),
                ));
            }
            return Ok(EqualPowers::Found { t1, t2 });
        }
    }
    Ok(EqualPowers::NotFoundWithin {
        exponent_bound,
        pigeonhole_bound,
    })
}

/// All `(a, b)` in the box with `x^a = y^b`, ordered by `a` then `b`.
fn power_relations(x: &AlgebraicNumber, y: &AlgebraicNumber, bound: u32) -> Vec<(u32, u32)> {
    let Some((a0, b0)) = find_power_relation(x, y, bound) else {
        return Vec::new();
    };
    // Every relation is a multiple of the primitive one.
    let g = a0.gcd(&b0);
    let (a0, b0) = (a0 / g, b0 / g);
    (1..)
        .map(|k| (a0 * k, b0 * k))
        .take_while(|&(a, b)| a <= bound && b <= bound)
        .collect()
}

/// Iterates `d_k = g1^{ak} g2^{-bk}` and returns `n - m` for the first repeat `d_m = d_n`.
fn pigeonhole(g1: &Isometry, g2: &Isometry, a: u32, b: u32, bound: usize) -> Result<Option<i64>> {
    let step1 = g1.power(a as i64)?.matrix().clone();
    let step2 = g2.power(-(b as i64))?.matrix().clone();
    let n = g1.rank();
    let mut p1 = IntMatrix::identity(n);
    let mut p2 = IntMatrix::identity(n);
    let mut seen: HashMap<IntMatrix, usize> = HashMap::new();
    for k in 1..=bound {
        p1 = &p1 * &step1;
        p2 = &p2 * &step2;
        let d = &p1 * &p2;
        if let Some(&m) = seen.get(&d) {
            return Ok(Some((k - m) as i64));
        }
        seen.insert(d, k);
    }
    Ok(None)
}

/// Lattice-side fibration class of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibrationClass {
    /// Primitive isotropic integral vector fixed by every generator.
    Class(IntVector),
    /// Only an interior vector is fixed; the action on `L` is finite.
    FiniteOnLattice(IntVector),
    None,
}

pub fn invariant_fibration_class(g: &GroupSpec) -> Result<FibrationClass> {
    match common_fixed_ray(g)? {
        None => Ok(FibrationClass::None),
        Some(r) => {
            let v = r.integer_ray().expect("fixed rays are rational");
            Ok(match r.position {
                ConePosition::Boundary => FibrationClass::Class(v),
                _ => FibrationClass::FiniteOnLattice(v),
            })
        }
    }
}

/// Whether `λ` is `1` up to exact comparison.
pub fn lambda_is_one(l: &AlgebraicNumber) -> bool {
    alg_equal(l, &AlgebraicNumber::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::RayVector;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn iv(v: &[i64]) -> IntVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn gram_p() -> Arc<Lattice> {
        Arc::new(Lattice::new(m(&[&[1, 0], &[0, -2]]), iv(&[1, 0])).unwrap())
    }

    fn gram_u() -> Arc<Lattice> {
        Arc::new(Lattice::new(m(&[&[0, 1], &[1, 0]]), iv(&[1, 1])).unwrap())
    }

    fn u_minus_one() -> Arc<Lattice> {
        Arc::new(Lattice::new(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]), iv(&[1, 1, 0])).unwrap())
    }

    fn l3() -> Arc<Lattice> {
        Arc::new(Lattice::new(m(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, -1]]), iv(&[1, 0, 0])).unwrap())
    }

    fn pell() -> Isometry {
        Isometry::new(gram_p(), m(&[&[3, 4], &[2, 3]])).unwrap()
    }

    fn swap() -> Isometry {
        Isometry::new(gram_u(), m(&[&[0, 1], &[1, 0]])).unwrap()
    }

    fn para() -> Isometry {
        Isometry::new(u_minus_one(), m(&[&[1, 2, 2], &[0, 1, 0], &[0, 2, 1]])).unwrap()
    }

    fn group(gens: Vec<Isometry>) -> GroupSpec {
        GroupSpec::new(gens[0].lattice().clone(), gens).unwrap()
    }

    #[test]
    fn fixed_rays() {
        let r = common_fixed_ray(&group(vec![para()])).unwrap().unwrap();
        assert_eq!(r.integer_ray().unwrap(), iv(&[1, 0, 0]));
        assert_eq!(r.position, ConePosition::Boundary);
        assert_eq!(
            fixed_subspace(&group(vec![para()]))
                .unwrap()
                .radical_dimension(),
            1
        );

        let r = common_fixed_ray(&group(vec![swap()])).unwrap().unwrap();
        assert_eq!(r.integer_ray().unwrap(), iv(&[1, 1]));
        assert_eq!(r.position, ConePosition::Interior);

        assert!(common_fixed_ray(&group(vec![pell()])).unwrap().is_none());
    }

    #[test]
    fn null_entropy_verdicts() {
        match null_entropy_decide(&group(vec![para()]), 5).unwrap() {
            NullVerdict::YesFixedRay(r) => assert_eq!(r.integer_ray().unwrap(), iv(&[1, 0, 0])),
            v => panic!("unexpected {v:?}"),
        }
        assert!(
            matches!(null_entropy_decide(&group(vec![pell()]), 5).unwrap(), NullVerdict::No(w) if w == vec![0])
        );
        assert!(matches!(
            null_entropy_decide(&group(vec![swap()]), 5).unwrap(),
            NullVerdict::YesFixedRay(_)
        ));
    }

    #[test]
    fn word_search_finds_loxodromic_products() {
        // Two reflections of GRAM_U-type lattices whose product is loxodromic.
        let lat = gram_p();
        let r1 = Isometry::new(lat.clone(), m(&[&[1, 0], &[0, -1]])).unwrap();
        let r2 = Isometry::new(lat.clone(), m(&[&[3, -4], &[2, -3]])).unwrap();
        let v = null_entropy_decide(&group(vec![r1, r2]), 4).unwrap();
        match v {
            NullVerdict::No(w) => {
                let g = group(vec![
                    Isometry::new(lat.clone(), m(&[&[1, 0], &[0, -1]])).unwrap(),
                    Isometry::new(lat, m(&[&[3, -4], &[2, -3]])).unwrap(),
                ]);
                assert!(g
                    .word_element(&w)
                    .unwrap()
                    .classify()
                    .unwrap()
                    .is_loxodromic());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_groups_close() {
        // Swap together with the reflection (x, y) -> (-y, -x) is not in O′, so use
        // the flip diag(1, 1, -1) on the rank-3 lattice instead.
        let flip = Isometry::new(l3(), m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap();
        let r = Isometry::new(l3(), m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]])).unwrap();
        let g = group(vec![flip, r]);
        let en = enumerate_elements(&g, 4, |_, _| false).unwrap();
        assert!(en.closed);
        assert_eq!(en.elements.len(), 4);
    }

    #[test]
    fn null_subsets() {
        let n = null_subset_enumerate(&group(vec![pell()]), 6).unwrap();
        assert_eq!(n.len(), 1);
        assert!(n[0].0.is_identity());
        let n = null_subset_enumerate(&group(vec![swap()]), 6).unwrap();
        assert_eq!(n.len(), 2);
        let n = null_subset_enumerate(&group(vec![para()]), 3).unwrap();
        assert_eq!(n.len(), 7);
        assert!(n.iter().all(|(g, _)| g.is_unipotent()));
    }

    #[test]
    fn phi_on_pell_powers() {
        let g = pell();
        let pd = g.perron_ray().unwrap();
        let grp = group(vec![g.clone(), g.power(2).unwrap(), g.inverse().unwrap()]);
        let rep = phi_map(&grp, &pd.ray(), DEFAULT_EXPONENT_BOUND).unwrap();
        match rep.image {
            PhiImage::Cyclic { lambda0, exponents } => {
                assert!(alg_equal(&lambda0, &pd.rho));
                assert_eq!(exponents, vec![1, 2, -1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn phi_with_square_only_generators() {
        let g = pell();
        let pd = g.perron_ray().unwrap();
        let grp = group(vec![g.power(2).unwrap(), g.power(3).unwrap()]);
        let rep = phi_map(&grp, &pd.ray(), DEFAULT_EXPONENT_BOUND).unwrap();
        match rep.image {
            PhiImage::Cyclic { lambda0, exponents } => {
                assert!(alg_equal(&lambda0, &pd.rho));
                assert_eq!(exponents, vec![2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn phi_trivial_and_unpolarized() {
        let rep = phi_map(&group(vec![para()]), &RayVector::from_i64(&[1, 0, 0]), 8).unwrap();
        assert!(matches!(rep.image, PhiImage::One));
        assert!(matches!(
            phi_map(&group(vec![pell()]), &RayVector::from_i64(&[1, 0]), 8),
            Err(Error::NotPolarized(0))
        ));
    }

    #[test]
    fn bezout_identity() {
        for ks in [
            vec![1, 2, -1],
            vec![2, 3],
            vec![0, 4, 6],
            vec![-3, 5],
            vec![6, 10, 15],
        ] {
            let u = bezout_coefficients(&ks);
            let s: i64 = ks.iter().zip(&u).map(|(k, u)| k * u).sum();
            let g = ks.iter().fold(0i64, |a, &b| a.gcd(&b));
            assert_eq!(s, g, "{ks:?}");
        }
    }

    #[test]
    fn equal_powers_family() {
        let g = pell();
        for k in 2..=5 {
            let r = equal_up_to_powers(&g, &g.power(k).unwrap(), 64, 4096).unwrap();
            assert_eq!(r, EqualPowers::Found { t1: k, t2: 1 });
        }
        let r = equal_up_to_powers(&g, &g.inverse().unwrap(), 64, 4096).unwrap();
        assert_eq!(r, EqualPowers::Found { t1: 1, t2: -1 });
        assert!(matches!(
            equal_up_to_powers(&g, &g, 64, 4096),
            Ok(EqualPowers::Found { t1: 1, t2: 1 })
        ));
    }

    #[test]
    fn equal_powers_incompatible() {
        let g = Isometry::new(l3(), m(&[&[3, 4, 0], &[2, 3, 0], &[0, 0, 1]])).unwrap();
        let h = Isometry::new(l3(), m(&[&[5, 4, 4], &[-2, -1, -2], &[4, 4, 3]])).unwrap();
        assert_eq!(
            equal_up_to_powers(&g, &h, 64, 4096).unwrap(),
            EqualPowers::NotCompatible("no common polarizing ray".into())
        );
        assert!(matches!(
            equal_up_to_powers(&g, &Isometry::identity(l3()), 8, 8),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fibration_classes() {
        assert_eq!(
            invariant_fibration_class(&group(vec![para()])).unwrap(),
            FibrationClass::Class(iv(&[1, 0, 0]))
        );
        assert_eq!(
            invariant_fibration_class(&group(vec![pell()])).unwrap(),
            FibrationClass::None
        );
        assert_eq!(
            invariant_fibration_class(&group(vec![swap()])).unwrap(),
            FibrationClass::FiniteOnLattice(iv(&[1, 1]))
        );
    }

    #[test]
    fn involution_fixing_perron_ray_keeps_null_subset_finite() {
        let g = Isometry::new(l3(), m(&[&[3, 4, 0], &[2, 3, 0], &[0, 0, 1]])).unwrap();
        let iota = Isometry::new(l3(), m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap();
        let grp = group(vec![g, iota]);
        let n6 = null_subset_enumerate(&grp, 6).unwrap();
        let n8 = null_subset_enumerate(&grp, 8).unwrap();
        assert_eq!(n6.len(), 2);
        assert_eq!(n8.len(), 2);
    }
}
