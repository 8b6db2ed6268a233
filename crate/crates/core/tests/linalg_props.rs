use hyperlat::linalg::{mat_pow, signature, IntMatrix, RatMatrix};
use hyperlat::{BigInt, BigRational};
use num_traits::Zero;
use proptest::prelude::*;

fn int_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(lo..=hi, n * n)
        .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
}

/// Unimodular matrices as products of elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(n);
            e.set(i, j, BigInt::from(c));
            m = &m * &e;
        }
        m
    })
}

fn leibniz_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, m: &IntMatrix, total: &mut BigInt) {
    if k == p.len() {
        let inversions = (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = BigInt::from(if inversions % 2 == 0 { 1 } else { -1 });
        for (i, &j) in p.iter().enumerate() {
            term *= m.get(i, j);
        }
        *total += term;
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, m, total);
        p.swap(k, i);
    }
}

proptest! {
    #[test]
    fn power_is_additive(m in int_matrix(3, -2, 2), a in 0i64..5, b in 0i64..5) {
        let lhs = mat_pow(&m, a + b).unwrap();
        let rhs = &mat_pow(&m, a).unwrap() * &mat_pow(&m, b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn negative_powers_of_unimodular(u in unimodular(3), k in 1i64..4) {
        let p = mat_pow(&u, k).unwrap();
        let q = mat_pow(&u, -k).unwrap();
        prop_assert!((&p * &q).is_identity());
    }

    #[test]
    fn bareiss_matches_leibniz(m in int_matrix(4, -5, 5)) {
        prop_assert_eq!(m.det().unwrap(), leibniz_det(&m));
    }

    #[test]
    fn determinant_is_multiplicative(a in int_matrix(3, -3, 3), b in int_matrix(3, -3, 3)) {
        prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn char_poly_is_similarity_invariant(m in int_matrix(3, -3, 3), u in unimodular(3)) {
        let conj = &(&u * &m) * &u.inverse_unimodular().unwrap();
        prop_assert_eq!(m.char_poly().unwrap(), conj.char_poly().unwrap());
    }

    #[test]
    fn char_poly_constant_term_is_signed_det(m in int_matrix(4, -3, 3)) {
        let p = m.char_poly().unwrap();
        let c = p.coeffs().first().cloned().unwrap_or_else(BigInt::zero);
        prop_assert_eq!(c, m.det().unwrap());
    }

    #[test]
    fn cayley_hamilton(m in int_matrix(3, -3, 3)) {
        let p = m.char_poly().unwrap();
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &m) + &IntMatrix::identity(n).scale(c.clone());
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn kernel_vectors_are_annihilated(v in proptest::collection::vec(-3i64..=3, 12)) {
        let m = RatMatrix::new(3, 4, v.into_iter().map(|x| BigRational::from_integer(x.into())).collect()).unwrap();
        let k = m.kernel_basis();
        prop_assert_eq!(k.len() + m.rank(), 4);
        for b in &k {
            prop_assert!(m.mul_vec(b).iter().all(|x| x.is_zero()));
            prop_assert!(b.iter().any(|x| !x.is_zero()));
        }
    }

    #[test]
    fn signature_is_congruence_invariant(d in proptest::collection::vec(-3i64..=3, 3), u in unimodular(3)) {
        let mut g = IntMatrix::zeros(3, 3);
        for (i, x) in d.iter().enumerate() {
            g.set(i, i, BigInt::from(*x));
        }
        let h = &(&u.transpose() * &g) * &u;
        let plus = d.iter().filter(|&&x| x > 0).count();
        let minus = d.iter().filter(|&&x| x < 0).count();
        prop_assert_eq!(signature(&h).unwrap(), (plus, minus, 3 - plus - minus));
    }
}

#[test]
fn congruence_diagonalization_reconstructs() {
    let g = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]])
        .unwrap()
        .to_rat();
    let (diag, p) = g.congruence_diagonalize().unwrap();
    let d = p
        .transpose()
        .checked_mul(&g)
        .unwrap()
        .checked_mul(&p)
        .unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j {
                diag[i].clone()
            } else {
                BigRational::zero()
            };
            assert_eq!(d.get(i, j), &want);
        }
    }
}
