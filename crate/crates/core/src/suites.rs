//! Named verification suites: each runs a family of exact identities (or the
//! dense and brute-force oracles) and counts failures.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::charge_matrix::{CharacterCache, CycleType};
use crate::closed_forms::{
    su2_a, su2_a_norm, su2_c_eigenvalue, su2_ctilde_eigenvalue, su2_i_max, tr_a_c_u1, tr_a_ctilde, tr_ctilde_sq,
    tr_f_c, u1_a, u1_a_norm, u1_c_eigenvalue, u1_f, u1_f_norm,
};
use crate::combinat::{binom, double_factorial, factorial, pow2, sign};
use crate::error::{Error, Result};
use crate::oracle;
use crate::solver::{brute_force_tmax, tmax_exact, SolveOptions};
use crate::symmetry::{su2_mult, GroupSpec, Partition};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                let msg = what();
                self.check(false, || format!("{msg}: {e}"))
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {} ({} checks, {} failures)", self.name, status, self.checks, self.failures.len())
    }
}

/// Suite names accepted by [`run_suite`].
pub const SUITE_NAMES: [&str; 5] = ["identities-u1", "identities-su2", "characters", "oracle", "solver-brute"];

/// Runs a suite by name. `n_max` caps the identity suites; `seed` drives the
/// random witness samples.
pub fn run_suite(name: &str, n_max: u32, seed: u64) -> Result<SuiteReport> {
    match name {
        "identities-u1" => Ok(identities_u1(n_max)),
        "identities-su2" => Ok(identities_su2(n_max)),
        "characters" => Ok(characters()),
        "oracle" => Ok(dense_oracle(n_max.min(12), seed, 500)),
        "solver-brute" => Ok(solver_brute(8, 3)),
        other => {
            Err(Error::InvalidGroup(format!("unknown suite '{other}' (expected one of {})", SUITE_NAMES.join(", "))))
        }
    }
}

fn int(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// U(1) identities. Pairings against the explicit sums run to `min(n_max, 16)`,
/// the coefficient-matrix identities to `min(n_max, 18)` and the norms to
/// `min(n_max, 30)`.
pub fn identities_u1(n_max: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("identities-u1");
    for n in 1..=n_max.min(18) {
        let ni = n as i64;
        let c: Vec<Vec<BigInt>> =
            (0..=n).map(|l| (0..=n).map(|w| u1_c_eigenvalue(n, l, w).unwrap()).collect()).collect();
        let bw: Vec<BigInt> = (0..=ni).map(|w| binom(ni, w)).collect();
        // Tr(C_l C_l') = delta 2^n binom(n, l)
        for l in 0..=n as usize {
            for lp in 0..=n as usize {
                let s: BigInt = (0..=n as usize).map(|w| &c[l][w] * &c[lp][w] * &bw[w]).sum();
                let want = if l == lp { pow2(n) * &bw[l] } else { BigInt::zero() };
                rep.check(s == want, || format!("C orthogonality n={n} l={l} l'={lp}"));
            }
        }
        // symmetry and mirror of binom(n, w) c_l(w)
        for l in 0..=n as usize {
            for w in 0..=n as usize {
                let t = &bw[w] * &c[l][w];
                rep.check(t == &bw[l] * &c[w][l], || format!("Tr(C_l Pi_w) symmetry n={n} l={l} w={w}"));
                let refl = &bw[n as usize - w] * &c[l][n as usize - w] * sign(l as i64);
                rep.check(t == refl, || format!("mirror in w n={n} l={l} w={w}"));
                let dual = &bw[w] * &c[n as usize - l][w] * sign(w as i64);
                rep.check(t == dual, || format!("mirror in l n={n} l={l} w={w}"));
            }
        }
        // a_{k,w} = (-1)^w binom(n-w, k-w) squares to the identity
        let a = |k: i64, w: i64| binom(ni - w, k - w) * sign(w);
        for k in 0..=ni {
            for w in 0..=ni {
                let s: BigInt = (0..=ni).map(|v| a(k, v) * a(v, w)).sum();
                let want = BigInt::from((k == w) as i64);
                rep.check(s == want, || format!("self-inverse n={n} k={k} w={w}"));
            }
        }
        if n <= n_max.min(16) {
            for k in 0..=n {
                let f = u1_f(n, k).unwrap();
                let am = u1_a(n, k).unwrap();
                for l in 0..=n {
                    let sum_f: BigInt = (0..=n as usize).map(|w| &f.qvec[w] * &bw[w] * &c[l as usize][w]).sum();
                    rep.check(tr_f_c(n, k, l).ok() == Some(sum_f), || format!("Tr(F_k C_l) n={n} k={k} l={l}"));
                    let sum_a: BigInt = (0..=n as usize).map(|w| &am.qvec[w] * &bw[w] * &c[l as usize][w]).sum();
                    rep.check(tr_a_c_u1(n, k, l).ok() == Some(sum_a), || format!("Tr(A_k C_l) n={n} k={k} l={l}"));
                }
            }
        }
    }
    for n in 1..=n_max.min(30) {
        for k in 0..=n {
            let f = u1_f(n, k).unwrap();
            let direct = int(&f.trace_norm());
            rep.check(direct.is_some() && u1_f_norm(n, k).ok() == direct, || format!("||F_k||_1 n={n} k={k}"));
            let lo = k / 2 + 1;
            let hi = n as i64 - (k as i64 + 1) / 2;
            let zeros_ok = f.qvec.iter().enumerate().all(|(w, q)| {
                let inside = w as i64 >= lo as i64 && w as i64 <= hi;
                inside == q.is_zero()
            });
            rep.check(zeros_ok, || format!("F_k kernel n={n} k={k}"));
            let a = u1_a(n, k).unwrap();
            let direct = int(&a.trace_norm());
            rep.check(direct.is_some() && u1_a_norm(n, k).ok() == direct, || format!("||A_k||_1 n={n} k={k}"));
        }
    }
    rep
}

/// Table of `i_max` for `n = 3..=20`.
pub const SU2_I_MAX: [u32; 18] = [0, 0, 1, 1, 2, 1, 2, 2, 3, 2, 4, 3, 4, 4, 5, 4, 6, 5];

/// SU(2) identities: orthogonality of `C_{2m}` and the `A_{2s}` pairings to
/// `min(n_max, 14)`, `A_k` norms to `min(n_max, 30)`, plus the `i_max` table.
pub fn identities_su2(n_max: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("identities-su2");
    for n in 1..=n_max.min(14) {
        let spins: Vec<u32> = (n % 2..=n).step_by(2).collect();
        let trp: Vec<BigInt> = spins.iter().map(|&j2| su2_mult(n, j2) * (j2 + 1)).collect();
        let total: BigInt = trp.iter().sum();
        rep.check(total == pow2(n), || format!("sum of Tr(Pi_j) n={n}"));
        let ls: Vec<u32> = (0..=n).step_by(2).collect();
        let c: Vec<Vec<BigInt>> =
            ls.iter().map(|&l| spins.iter().map(|&j2| su2_c_eigenvalue(n, l, j2).unwrap()).collect()).collect();
        for (a, &l) in ls.iter().enumerate() {
            for (b, &lp) in ls.iter().enumerate() {
                let s: BigInt = (0..spins.len()).map(|j| &c[a][j] * &c[b][j] * &trp[j]).sum();
                let want = if l == lp {
                    double_factorial(l as i64 + 1)
                        * double_factorial(l as i64 - 1)
                        * pow2(n)
                        * binom(n as i64, l as i64)
                } else {
                    BigInt::zero()
                };
                rep.check(s == want, || format!("C_2m orthogonality n={n} l={l} l'={lp}"));
            }
            // C_2 = 2 J^2 - 3n/2 on spin j
            if l == 2 {
                for (j, &j2) in spins.iter().enumerate() {
                    let want = BigInt::from(j2 as i64 * (j2 as i64 + 2) / 2) - BigInt::from(3 * n as i64) / 2;
                    let twice = BigInt::from(j2 as i64 * (j2 as i64 + 2)) - BigInt::from(3 * n as i64);
                    rep.check(&c[a][j] * 2 == twice && (n % 2 == 1 || c[a][j] == want), || {
                        format!("C_2 eigenvalue n={n} 2j={j2}")
                    });
                }
            }
            let ct: Vec<BigRational> = spins.iter().map(|&j2| su2_ctilde_eigenvalue(n, l, j2).unwrap()).collect();
            let sq: BigRational = ct.iter().zip(&trp).map(|(x, t)| x * x * BigRational::from_integer(t.clone())).sum();
            rep.check(tr_ctilde_sq(n, l).ok() == Some(sq), || format!("Tr(C~^2) n={n} l={l}"));
            let m = (l / 2) as i64;
            for s in 0..=(n / 2) as i64 {
                let explicit: BigInt = (0..=(n / 2) as i64)
                    .map(|i| {
                        let inner: BigInt = (0..=i)
                            .map(|r| {
                                BigInt::from(-4).pow(r as u32)
                                    * binom(m, r)
                                    * (binom(n as i64 - 2 * r, i - r) - binom(n as i64 - 2 * r, i - r - 1))
                            })
                            .sum();
                        binom(n as i64 - s - i, s - i) * sign(i) * inner
                    })
                    .sum();
                let closed = tr_a_ctilde(n, 2 * s as u32, l);
                rep.check(closed.as_ref().ok() == Some(&explicit), || format!("Tr(A_2s C~_2m) sum n={n} s={s} m={m}"));
                let op = su2_a(n, 2 * s as u32).unwrap();
                let pair: BigRational = op
                    .values
                    .iter()
                    .zip(&ct)
                    .zip(&trp)
                    .map(|((x, y), t)| x * y * BigRational::from_integer(t.clone()))
                    .sum();
                let want = BigInt::from(4).pow(s as u32) * binom(m, s);
                rep.check(pair == BigRational::from_integer(want), || {
                    format!("Tr(A_2s C~_2m) pairing n={n} s={s} m={m}")
                });
            }
        }
    }
    for n in 1..=n_max.min(30) {
        for k in (0..=n).step_by(2) {
            let direct = int(&su2_a(n, k).unwrap().trace_norm());
            rep.check(direct.is_some() && su2_a_norm(n, k).ok() == direct, || format!("SU2 ||A_k||_1 n={n} k={k}"));
        }
    }
    for (i, &want) in SU2_I_MAX.iter().enumerate() {
        let n = i as u32 + 3;
        if n <= n_max.max(20) {
            rep.check(su2_i_max(n) == Some(want), || format!("i_max n={n}"));
        }
    }
    rep
}

/// Tabulated characters of the seven smallest nontrivial irreps of S_n on the
/// classes (1), (12), (123), (12)(34), (1234), as `(shape below the first row,
/// [value(n); 5])`.
type CharRow = (&'static [u32], [fn(i64) -> i64; 5]);

fn character_table() -> Vec<CharRow> {
    vec![
        (&[], [|_| 1, |_| 1, |_| 1, |_| 1, |_| 1]),
        (&[1], [|n| n - 1, |n| n - 3, |n| n - 4, |n| n - 5, |n| n - 5]),
        (
            &[2],
            [
                |n| n * (n - 3) / 2,
                |n| (n - 3) * (n - 4) / 2,
                |n| (n - 3) * (n - 6) / 2,
                |n| (n * n - 11 * n + 32) / 2,
                |n| (n - 4) * (n - 7) / 2,
            ],
        ),
        (
            &[1, 1],
            [
                |n| (n - 1) * (n - 2) / 2,
                |n| (n - 2) * (n - 5) / 2,
                |n| (n - 4) * (n - 5) / 2,
                |n| (n * n - 11 * n + 26) / 2,
                |n| (n - 5) * (n - 6) / 2,
            ],
        ),
        (
            &[3],
            [
                |n| n * (n - 1) * (n - 5) / 6,
                |n| (n - 3) * (n - 4) * (n - 5) / 6,
                |n| (n - 5) * (n * n - 10 * n + 18) / 6,
                |n| (n - 5) * (n * n - 13 * n + 48) / 6,
                |n| (n - 4) * (n - 5) * (n - 9) / 6,
            ],
        ),
        (
            &[1, 1, 1],
            [
                |n| (n - 1) * (n - 2) * (n - 3) / 6,
                |n| (n - 2) * (n - 3) * (n - 7) / 6,
                |n| (n - 3) * (n * n - 12 * n + 38) / 6,
                |n| (n - 3) * (n - 5) * (n - 10) / 6,
                |n| (n - 5) * (n - 6) * (n - 7) / 6,
            ],
        ),
        (
            &[2, 1],
            [
                |n| n * (n - 2) * (n - 4) / 3,
                |n| (n - 2) * (n - 4) * (n - 6) / 3,
                |n| (n - 4) * (n * n - 11 * n + 27) / 3,
                |n| (n - 4) * (n - 6) * (n - 8) / 3,
                |n| (n - 4) * (n - 6) * (n - 8) / 3,
            ],
        ),
    ]
}

fn class_size(n: u32, sigma: &CycleType) -> BigInt {
    let mut counts = std::collections::BTreeMap::new();
    *counts.entry(1u32).or_insert(0u32) += n - sigma.support();
    for &c in sigma.cycles() {
        *counts.entry(c).or_insert(0) += 1;
    }
    let z: BigInt = counts.iter().map(|(&len, &mult)| BigInt::from(len).pow(mult) * factorial(mult as u64)).product();
    factorial(n as u64) / z
}

/// S_n characters: the tabulated values for `15 <= n <= 20`, the class
/// orthogonality relations for `n <= 8` and `chi(1) = hook dimension`.
pub fn characters() -> SuiteReport {
    let mut rep = SuiteReport::new("characters");
    let mut cache = CharacterCache::new();
    let classes = CycleType::classes_of(4);
    for n in 15..=20u32 {
        for (rest, vals) in character_table() {
            let below: u32 = rest.iter().sum();
            let mut parts = vec![n - below];
            parts.extend_from_slice(rest);
            let lam = Partition::new(parts).unwrap();
            for (sigma, f) in classes.iter().zip(vals) {
                let got = cache.character(&lam, sigma).ok();
                rep.check(got == Some(BigInt::from(f(n as i64))), || format!("chi_{lam}({sigma}) at n={n}"));
            }
        }
    }
    for n in 1..=8u32 {
        let all = CycleType::classes_of(n);
        let lams = Partition::enumerate(n, n);
        let table: Vec<Vec<BigInt>> =
            lams.iter().map(|l| all.iter().map(|s| cache.character(l, s).unwrap()).collect()).collect();
        let sizes: Vec<BigInt> = all.iter().map(|s| class_size(n, s)).collect();
        let nf = factorial(n as u64);
        for (a, la) in lams.iter().enumerate() {
            rep.check(table[a][0] == la.hook_dim(), || format!("chi_{la}(1) = hook dimension"));
            for (b, lb) in lams.iter().enumerate() {
                let s: BigInt = (0..all.len()).map(|c| &sizes[c] * &table[a][c] * &table[b][c]).sum();
                let want = if a == b { nf.clone() } else { BigInt::zero() };
                rep.check(s == want, || format!("row orthogonality {la} {lb}"));
            }
        }
    }
    rep
}

/// Dense operator checks: `F_k` orthogonality up to `n_max_u1` qubits, dense
/// `Tr(F_k C_l)` at `n = 10`, `C_2` and projector checks for `n <= 8`, and the
/// two-qubit witness.
pub fn dense_oracle(n_max_u1: u32, seed: u64, samples: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("oracle");
    for n in 1..=n_max_u1.min(12) {
        for k in 0..=n {
            rep.check_result(oracle::u1_orthogonality_check(n, k), || format!("F_k orthogonality n={n} k={k}"));
            if k >= 1 {
                rep.check_result(oracle::u1_detects_k_body(n, k), || format!("F_k detects k-body n={n} k={k}"));
            }
        }
    }
    let n = 10;
    for l in 0..=n {
        let c = oracle::u1_dense_c(n, l);
        rep.check_result(
            c.map(|c| {
                c.entries
                    .iter()
                    .enumerate()
                    .all(|(b, v)| Some(v) == u1_c_eigenvalue(n, l, b.count_ones()).ok().as_ref())
            }),
            || format!("dense C_l n={n} l={l}"),
        );
        for k in 0..=n {
            let dense = oracle::dense_tr_f_c(n, k, l);
            rep.check_result(dense.map(|d| Some(d) == tr_f_c(n, k, l).ok()), || {
                format!("dense Tr(F_k C_l) n={n} k={k} l={l}")
            });
        }
    }
    for n in 1..=8 {
        rep.check_result(oracle::su2_c2_check(n), || format!("C_2 dense n={n}"));
        rep.check_result(oracle::su2_projector_check(n), || format!("spin projectors n={n}"));
    }
    rep.check(oracle::z2_witness_check(samples, seed), || format!("Z2 witness, {samples} samples"));
    rep
}

/// One brute-force comparison.
#[derive(Debug, Clone)]
pub struct BruteInstance {
    pub group: GroupSpec,
    pub n: u32,
    pub k: u32,
    pub kernel_dim: usize,
}

/// Built-in problems with `n <= n_max` whose kernel has dimension at most
/// `max_kernel`.
pub fn brute_instances(n_max: u32, max_kernel: usize) -> Vec<BruteInstance> {
    let mut groups = vec![GroupSpec::U1, GroupSpec::SU2];
    groups.extend((2..=7).map(|p| GroupSpec::Zp { p }));
    groups.extend((3..=4).map(|d| GroupSpec::SUd { d }));
    let mut out = Vec::new();
    for g in &groups {
        for n in 1..=n_max {
            for k in 1..=n {
                if let Ok((a, table)) = crate::problem(g, n, k) {
                    let kernel_dim = table.len() - a.rank();
                    if kernel_dim <= max_kernel {
                        out.push(BruteInstance { group: *g, n, k, kernel_dim });
                    }
                }
            }
        }
    }
    out
}

/// Compares `tmax_exact` with the exhaustive oracle on every instance from
/// [`brute_instances`].
pub fn solver_brute(n_max: u32, max_kernel: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("solver-brute");
    let opts = SolveOptions { assume_semiuniversal: true, ..Default::default() };
    for inst in brute_instances(n_max, max_kernel) {
        let label = format!("{} n={} k={}", inst.group, inst.n, inst.k);
        let (a, table) = crate::problem(&inst.group, inst.n, inst.k).unwrap();
        let exact = tmax_exact(&a, &table, &opts);
        let brute = brute_force_tmax(&a, &table, 6);
        let ok = match (exact, brute) {
            (Ok(e), Ok(None)) => e.tmax.is_infinite(),
            (Ok(e), Ok(Some((norm, cert)))) => {
                let t: BigInt = &norm / 2 - 1;
                e.tmax.as_finite() == Some(&t)
                    && e.certificate.map(|c| c.weighted_norm) == Some(norm)
                    && !cert.q.iter().all(|x| x.is_zero())
            }
            _ => false,
        };
        rep.check(ok, || label);
    }
    rep
}

/// Runs every suite with the limits used by the acceptance run.
pub fn all(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("all");
    rep.merge(identities_u1(30));
    rep.merge(identities_su2(30));
    rep.merge(characters());
    rep.merge(dense_oracle(12, seed, 500));
    rep.merge(solver_brute(8, 3));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for r in [identities_u1(8), identities_su2(8)] {
            assert!(r.passed(), "{r}: {:?}", &r.failures[..r.failures.len().min(5)]);
        }
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(4, &CycleType::new(vec![2, 2])), BigInt::from(3));
        assert_eq!(class_size(5, &CycleType::new(vec![3])), BigInt::from(20));
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 4, 0).is_err());
    }
}
