//! Dense cross-checks on explicit qubit operators, independent of the closed
//! forms. Floating point is confined to this module.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::closed_forms::{su2_c_eigenvalue, u1_f};
use crate::error::{Error, Result};
use crate::symmetry::su2_mult;

pub type DenseMatrix = DMatrix<Complex64>;

/// Tolerance for single operators.
pub const TOL_SINGLE: f64 = 1e-10;
/// Tolerance for products of operators.
pub const TOL_PRODUCT: f64 = 1e-8;

/// A Z-diagonal operator as its `2^n` diagonal entries (computational basis,
/// bit `a` of the index is qubit `a`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseDiag {
    pub n: u32,
    pub entries: Vec<BigInt>,
}

impl DenseDiag {
    /// `Tr(self * other)`.
    pub fn trace_product(&self, other: &DenseDiag) -> BigInt {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum()
    }
}

fn check_size(n: u32, max: u32) -> Result<()> {
    if n > max {
        return Err(Error::OutOfRange(format!("dense check limited to n <= {max}, got {n}")));
    }
    Ok(())
}

/// `C_l`: sum of all Z strings of weight `l`, by direct summation.
pub fn u1_dense_c(n: u32, l: u32) -> Result<DenseDiag> {
    check_size(n, 14)?;
    if l > n {
        return Err(Error::OutOfRange(format!("l = {l} exceeds n = {n}")));
    }
    let dim = 1usize << n;
    let masks: Vec<usize> = (0..dim).filter(|s| s.count_ones() == l).collect();
    let entries = (0..dim)
        .map(|b| {
            let v: i64 = masks.iter().map(|s| if (s & b).count_ones() % 2 == 0 { 1 } else { -1 }).sum();
            BigInt::from(v)
        })
        .collect();
    Ok(DenseDiag { n, entries })
}

/// `F_k` written out over all bitstrings.
pub fn u1_dense_f(n: u32, k: u32) -> Result<DenseDiag> {
    check_size(n, 14)?;
    let f = u1_f(n, k)?;
    let entries = (0..1usize << n).map(|b| f.qvec[b.count_ones() as usize].clone()).collect();
    Ok(DenseDiag { n, entries })
}

/// Walsh–Hadamard transform: entry `s` becomes `sum_b v_b (-1)^{popcount(s & b)}`,
/// i.e. `Tr(V Z^s)` for every Z string `s` at once.
fn walsh_hadamard(v: &mut [i128]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

fn f_z_traces(n: u32, k: u32) -> Result<Vec<i128>> {
    check_size(n, 14)?;
    let f = u1_dense_f(n, k)?;
    let mut v: Vec<i128> = f
        .entries
        .iter()
        .map(|x| i128::try_from(x).map_err(|_| Error::OutOfRange("entry exceeds i128".into())))
        .collect::<Result<_>>()?;
    walsh_hadamard(&mut v);
    Ok(v)
}

/// Whether `Tr(F_k Z^s) = 0` for every Z string `s` of weight below `k`.
/// Strings containing X or Y pair to zero with any diagonal operator.
pub fn u1_orthogonality_check(n: u32, k: u32) -> Result<bool> {
    check_size(n, 12)?;
    let t = f_z_traces(n, k)?;
    Ok(t.iter().enumerate().all(|(s, &v)| (s as u32).count_ones() >= k || v == 0))
}

/// Whether some weight-`k` Z string has nonzero overlap with `F_k`.
pub fn u1_detects_k_body(n: u32, k: u32) -> Result<bool> {
    let t = f_z_traces(n, k)?;
    Ok(t.iter().enumerate().any(|(s, &v)| (s as u32).count_ones() == k && v != 0))
}

/// `Tr(F_k C_l)` summed over all `2^n` basis states.
pub fn dense_tr_f_c(n: u32, k: u32, l: u32) -> Result<BigInt> {
    Ok(u1_dense_f(n, k)?.trace_product(&u1_dense_c(n, l)?))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Total spin components `J_a = (1/2) sum_i sigma_a^(i)`.
fn spin_components(n: u32) -> [DenseMatrix; 3] {
    let dim = 1usize << n;
    let mut jx = DenseMatrix::zeros(dim, dim);
    let mut jy = DenseMatrix::zeros(dim, dim);
    let mut jz = DenseMatrix::zeros(dim, dim);
    for b in 0..dim {
        for a in 0..n {
            let bit = (b >> a) & 1;
            let f = b ^ (1 << a);
            // X|b> = |f>, Y|0> = i|1>, Y|1> = -i|0>, Z|b> = (-1)^b |b>
            jx[(f, b)] += c(0.5, 0.0);
            jy[(f, b)] += if bit == 0 { c(0.0, 0.5) } else { c(0.0, -0.5) };
            jz[(b, b)] += c(if bit == 0 { 0.5 } else { -0.5 }, 0.0);
        }
    }
    [jx, jy, jz]
}

/// Dense `J^2`.
pub fn total_spin_squared(n: u32) -> Result<DenseMatrix> {
    check_size(n, 10)?;
    let [jx, jy, jz] = spin_components(n);
    Ok(&jx * &jx + &jy * &jy + &jz * &jz)
}

/// `C_2 = sum_{i<j} (X_i X_j + Y_i Y_j + Z_i Z_j)` from its action on basis states.
pub fn su2_dense_c2(n: u32) -> Result<DenseMatrix> {
    check_size(n, 10)?;
    let dim = 1usize << n;
    let mut m = DenseMatrix::zeros(dim, dim);
    for b in 0..dim {
        for i in 0..n {
            for j in i + 1..n {
                let (bi, bj) = ((b >> i) & 1, (b >> j) & 1);
                if bi == bj {
                    m[(b, b)] += c(1.0, 0.0);
                } else {
                    // XX + YY swaps 01 <-> 10 with weight 2, ZZ gives -1
                    m[(b, b)] -= c(1.0, 0.0);
                    m[(b ^ (1 << i) ^ (1 << j), b)] += c(2.0, 0.0);
                }
            }
        }
    }
    Ok(m)
}

/// Projector onto total spin `j` (twice-spin `j2`), by Lagrange interpolation
/// in `J^2` over the distinct eigenvalues `j'(j'+1)`.
pub fn su2_projector(n: u32, j2: u32) -> Result<DenseMatrix> {
    check_size(n, 10)?;
    if j2 > n || !(n - j2).is_multiple_of(2) {
        return Err(Error::Parity(format!("no spin sector 2j = {j2} for n = {n}")));
    }
    let jsq = total_spin_squared(n)?;
    projector_from(&jsq, n, j2)
}

fn casimir(j2: u32) -> f64 {
    let j = j2 as f64 / 2.0;
    j * (j + 1.0)
}

fn projector_from(jsq: &DenseMatrix, n: u32, j2: u32) -> Result<DenseMatrix> {
    let dim = jsq.nrows();
    let mut p = DenseMatrix::identity(dim, dim);
    for other in (n % 2..=n).step_by(2).filter(|&o| o != j2) {
        let shift = DenseMatrix::identity(dim, dim) * c(casimir(other), 0.0);
        let factor = (jsq - shift) * c(1.0 / (casimir(j2) - casimir(other)), 0.0);
        p = &p * &factor;
    }
    Ok(p)
}

fn max_abs(m: &DenseMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Checks `C_2 = 2 J^2 - (3/2) n` densely and that `C_2` acts on each spin
/// sector as the tabulated eigenvalue.
pub fn su2_c2_check(n: u32) -> Result<bool> {
    check_size(n, 10)?;
    let dim = 1usize << n;
    let c2 = su2_dense_c2(n)?;
    let jsq = total_spin_squared(n)?;
    let target = &jsq * c(2.0, 0.0) - DenseMatrix::identity(dim, dim) * c(1.5 * n as f64, 0.0);
    if max_abs(&(&c2 - target)) > TOL_SINGLE {
        return Ok(false);
    }
    if n < 2 {
        return Ok(max_abs(&c2) <= TOL_SINGLE);
    }
    for j2 in (n % 2..=n).step_by(2) {
        let p = projector_from(&jsq, n, j2)?;
        let ev = su2_c_eigenvalue(n, 2, j2)?;
        let ev = i64::try_from(&ev).map_err(|_| Error::OutOfRange("eigenvalue too large".into()))? as f64;
        if max_abs(&(&c2 * &p - &p * c(ev, 0.0))) > TOL_PRODUCT {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projector family checks: idempotency, mutual orthogonality, traces equal
/// to `(2j+1) m(n, j)` and resolution of the identity.
pub fn su2_projector_check(n: u32) -> Result<bool> {
    check_size(n, 10)?;
    let dim = 1usize << n;
    let jsq = total_spin_squared(n)?;
    let spins: Vec<u32> = (n % 2..=n).step_by(2).collect();
    let ps: Vec<DenseMatrix> = spins.iter().map(|&j2| projector_from(&jsq, n, j2)).collect::<Result<_>>()?;
    let mut sum = DenseMatrix::zeros(dim, dim);
    for (a, pa) in ps.iter().enumerate() {
        let tr = pa.trace().re;
        let expected = (spins[a] as f64 + 1.0) * su2_mult(n, spins[a]).to_string().parse::<f64>().unwrap_or(f64::NAN);
        if (tr - expected).abs() > TOL_PRODUCT || tr.round() != expected {
            return Ok(false);
        }
        for (b, pb) in ps.iter().enumerate() {
            let prod = pa * pb;
            let err = if a == b { max_abs(&(prod - pa)) } else { max_abs(&prod) };
            if err > TOL_PRODUCT {
                return Ok(false);
            }
        }
        sum += pa;
    }
    Ok(max_abs(&(sum - DenseMatrix::identity(dim, dim))) <= TOL_SINGLE)
}

fn haar_su2(rng: &mut ChaCha8Rng) -> [[Complex64; 2]; 2] {
    let mut q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.iter_mut().for_each(|x| *x /= norm);
    [[c(q[0], q[1]), c(q[2], q[3])], [c(-q[2], q[3]), c(q[0], -q[1])]]
}

/// The two-qubit Z_2 example: `|s0><s1|` on two copies is fixed by `W (x) W`
/// for block unitaries `W = v0 (+) v1` with `v_i` in SU(2), while the relative
/// phase `exp(i theta Z(x)Z)` multiplies it by `exp(4 i theta)`.
pub fn z2_witness_check(samples: usize, seed: u64) -> bool {
    // two-qubit basis 00, 01, 10, 11; copies combine as 4a + b
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut s0 = DenseMatrix::zeros(16, 1);
    s0[(3, 0)] = c(s, 0.0);
    s0[(12, 0)] = c(-s, 0.0);
    let mut s1 = DenseMatrix::zeros(16, 1);
    s1[(6, 0)] = c(s, 0.0);
    s1[(9, 0)] = c(-s, 0.0);
    let witness = &s0 * s1.adjoint();
    let conj = |w: &DenseMatrix| {
        let ww = w.kronecker(w);
        &ww * &witness * ww.adjoint()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (v0, v1) = (haar_su2(&mut rng), haar_su2(&mut rng));
        let mut w = DenseMatrix::zeros(4, 4);
        for (r, &ir) in [0usize, 3].iter().enumerate() {
            for (cc, &ic) in [0usize, 3].iter().enumerate() {
                w[(ir, ic)] = v0[r][cc];
            }
        }
        for (r, &ir) in [1usize, 2].iter().enumerate() {
            for (cc, &ic) in [1usize, 2].iter().enumerate() {
                w[(ir, ic)] = v1[r][cc];
            }
        }
        if max_abs(&(conj(&w) - &witness)) > 1e-9 {
            return false;
        }
    }
    let mut thetas: Vec<f64> = (0..100).map(|i| i as f64 * std::f64::consts::TAU / 100.0).collect();
    thetas.extend([0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2]);
    thetas.iter().all(|&theta| {
        let (e, ec) = (Complex64::from_polar(1.0, theta), Complex64::from_polar(1.0, -theta));
        let v = DenseMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![e, ec, ec, e]));
        let phase = Complex64::from_polar(1.0, 4.0 * theta);
        max_abs(&(conj(&v) - &witness * phase)) <= TOL_SINGLE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(d: &DenseDiag) -> Vec<i64> {
        d.entries.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn c1_on_three_qubits() {
        // diagonal of Z1+Z2+Z3 indexed by the basis integer
        assert_eq!(ints(&u1_dense_c(3, 1).unwrap()), vec![3, 1, 1, -1, 1, -1, -1, -3]);
        assert!(ints(&u1_dense_c(4, 0).unwrap()).iter().all(|&x| x == 1));
        let c4 = ints(&u1_dense_c(4, 4).unwrap());
        for (b, v) in c4.iter().enumerate() {
            assert_eq!(*v, if b.count_ones() % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn orthogonality_small() {
        assert!(u1_orthogonality_check(8, 4).unwrap());
        assert!(u1_orthogonality_check(5, 0).unwrap());
        assert!(u1_detects_k_body(8, 4).unwrap());
    }

    #[test]
    fn two_qubit_c2() {
        let c2 = su2_dense_c2(2).unwrap();
        assert!((c2[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(su2_c2_check(2).unwrap());
        assert!(su2_c2_check(1).unwrap());
    }

    #[test]
    fn projector_traces() {
        let p = su2_projector(2, 0).unwrap();
        assert!((p.trace().re - 1.0).abs() < 1e-10);
        let p = su2_projector(4, 4).unwrap();
        assert!((p.trace().re - 5.0).abs() < 1e-10);
        assert!(su2_projector_check(4).unwrap());
    }

    #[test]
    fn witness_small_run() {
        assert!(z2_witness_check(20, 7));
    }
}
