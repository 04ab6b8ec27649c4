use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use symdesign_core::{hnf, kernel_lattice, rank_exact, IntMatrix};

fn to_rat(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    a.rows().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Plain Gaussian elimination over the rationals; returns (rank, det for square input).
fn gauss(mut m: Vec<Vec<BigRational>>, cols: usize) -> (usize, BigRational) {
    let mut rank = 0;
    let mut det = BigRational::one();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let piv = m[rank][c].clone();
        det *= &piv;
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r][c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= y * &f;
                }
            }
        }
        rank += 1;
    }
    (rank, det)
}

fn matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        // sparse-ish rows so that rank deficiency actually occurs
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -max_entry..=max_entry], c), r)
            .prop_map(move |rows| {
                let rows: Vec<Vec<BigInt>> =
                    rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
                IntMatrix::from_rows(rows, c)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_matches_rational_elimination(a in matrix(8, 100)) {
        prop_assert_eq!(rank_exact(&a), gauss(to_rat(&a), a.ncols()).0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hnf_round_trip(a in matrix(6, 20)) {
        let (h, u) = hnf(&a);
        prop_assert_eq!(u.mul(&a), h.clone());
        let (_, det) = gauss(to_rat(&u), u.ncols());
        prop_assert!(det.abs().is_one());
        // echelon shape with positive pivots
        let mut last: Option<usize> = None;
        for row in h.rows() {
            match row.iter().position(|x| !x.is_zero()) {
                Some(p) => {
                    prop_assert!(last.is_none_or(|l| p > l));
                    prop_assert!(row[p].is_positive());
                    last = Some(p);
                }
                None => last = Some(usize::MAX - 1),
            }
        }
    }

    #[test]
    fn kernel_basis_is_complete(a in matrix(6, 20)) {
        let k = kernel_lattice(&a);
        for v in &k.vectors {
            prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(k.len() + rank_exact(&a), a.ncols());
        let reduced = k.lll_reduced(None);
        prop_assert!(reduced.same_lattice(&k));
    }

    #[test]
    fn kernel_is_saturated(a in matrix(5, 9), coeffs in prop::collection::vec(-4i64..=4, 5)) {
        // primitive part of any combination is an integer kernel vector, so it must be in the lattice
        let k = kernel_lattice(&a);
        prop_assume!(!k.is_empty());
        let mut x = vec![BigInt::zero(); a.ncols()];
        for (b, c) in k.vectors.iter().zip(&coeffs) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * c;
            }
        }
        let g = x.iter().fold(BigInt::zero(), |g, v| num_integer::Integer::gcd(&g, v));
        prop_assume!(!g.is_zero());
        let v: Vec<BigInt> = x.iter().map(|xi| xi / &g).collect();
        prop_assert!(a.mul_vec(&v).iter().all(|e| e.is_zero()));
        prop_assert!(k.contains(&v));
    }
}

#[test]
fn weighted_reduction_keeps_lattice() {
    let a = IntMatrix::from_i64(&[&[1, 1, 1, 1], &[3, 1, -1, -3]]);
    let k = kernel_lattice(&a);
    let w: Vec<BigInt> = [1, 3, 3, 1].into_iter().map(BigInt::from).collect();
    assert!(k.lll_reduced(Some(&w)).same_lattice(&k));
}
