//! Lower bound from prefix ranks, exact `t_max` by weighted-L1 minimisation over
//! kernel lattices of growing sector prefixes, and a brute-force oracle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::charge_matrix::{ChargeMatrix, CycleType, MatrixKind};
use crate::combinat::gcd_all;
use crate::error::{Error, Result};
use crate::exact_linalg::{dot, gram_schmidt_weighted, kernel_lattice, rank_exact, round_rational, LatticeBasis};
use crate::symmetry::{GroupSpec, IrrepId, SectorTable};

/// A design order: finite, or unbounded when nothing obstructs any moment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TmaxValue {
    Finite(BigInt),
    Infinite,
}

impl TmaxValue {
    pub fn finite(v: impl Into<BigInt>) -> Self {
        TmaxValue::Finite(v.into())
    }

    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            TmaxValue::Finite(v) => Some(v),
            TmaxValue::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TmaxValue::Infinite)
    }
}

impl fmt::Display for TmaxValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TmaxValue::Finite(v) => write!(f, "{v}"),
            TmaxValue::Infinite => write!(f, "infinity"),
        }
    }
}

/// A primitive integer vector over sectors and its weighted L1 norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub q: Vec<BigInt>,
    pub weighted_norm: BigInt,
    pub support: Vec<usize>,
}

impl Certificate {
    pub fn new(q: Vec<BigInt>, weights: &[BigInt]) -> Self {
        let weighted_norm = weighted_l1(&q, weights);
        let support = q.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect();
        Certificate { q, weighted_norm, support }
    }

    /// Nonzero entries paired with the sector labels of `table`.
    pub fn entries(&self, table: &SectorTable) -> Vec<(IrrepId, BigInt)> {
        self.support.iter().map(|&i| (table.sectors[i].id.clone(), self.q[i].clone())).collect()
    }

    /// `weighted_norm / 2 - 1`.
    pub fn tmax(&self) -> BigInt {
        &self.weighted_norm / 2 - 1
    }
}

fn weighted_l1(q: &[BigInt], w: &[BigInt]) -> BigInt {
    q.iter().zip(w).map(|(x, m)| x.abs() * m).sum()
}

fn sign_normalize(q: &mut [BigInt]) {
    if q.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in q.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
}

/// Result of an exact computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmaxResult {
    pub tmax: TmaxValue,
    pub lower_bound: TmaxValue,
    pub certificate: Option<Certificate>,
    pub proven_exact: bool,
    pub semiuniversal_assumed: bool,
}

/// First sector prefix whose restricted charge matrix is rank deficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundResult {
    /// 1-based prefix length, `None` if every prefix has full column rank.
    pub ell: Option<usize>,
    pub bound: TmaxValue,
    pub delta: Vec<IrrepId>,
}

/// Knobs for [`tmax_exact`].
#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Solve even when the gate set is not known to be semi-universal.
    pub assume_semiuniversal: bool,
    /// Stop after this many sectors; the answer is then only an upper bound
    /// unless the support cutoff fires first.
    pub max_sectors: Option<usize>,
}

fn check_aligned(a: &ChargeMatrix, table: &SectorTable) -> Result<()> {
    if a.cols.len() != table.len() || a.cols.iter().zip(&table.sectors).any(|(c, s)| c != &s.id) {
        return Err(Error::DimensionMismatch("matrix columns are not aligned with the sector table".into()));
    }
    if !table.is_canonical() {
        return Err(Error::NotCanonical("multiplicities must be weakly increasing".into()));
    }
    Ok(())
}

/// Returns whether semi-universality had to be assumed, or an error when it
/// fails and no override was given.
fn semiuniversality(a: &ChargeMatrix, opts: &SolveOptions) -> Result<bool> {
    let k = a.k.unwrap_or(0);
    let shortfall: Option<(String, String)> = match (&a.group, &a.kind) {
        (GroupSpec::Custom, _) | (_, MatrixKind::Custom) => {
            Some(("a user-supplied charge matrix".into(), "an explicit assertion".into()))
        }
        // single-site U1 gates are read as the XX+YY, Z gate family, which is
        // semi-universal; flagged as assumed.
        (GroupSpec::U1, _) if k == 1 => return Ok(true),
        (GroupSpec::U1 | GroupSpec::SU2, _) if k < 2 => Some((format!("{} with k = {k}", a.group), "k >= 2".into())),
        (GroupSpec::Zp { p }, _) if k < *p => Some((format!("{} with k = {k}", a.group), format!("k >= {p}"))),
        (GroupSpec::SUd { .. }, MatrixKind::Character { classes }) => {
            let s3 = CycleType::classes_of(3);
            (!s3.iter().all(|c| classes.contains(c))).then(|| {
                let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
                (
                    format!("{} with classes {}", a.group, names.join(",")),
                    "all 3-site gates, i.e. classes (1),(12),(123)".into(),
                )
            })
        }
        _ => None,
    };
    match shortfall {
        None => Ok(false),
        Some(_) if opts.assume_semiuniversal => Ok(true),
        Some((what, needed)) => Err(Error::NotSemiUniversal { what, needed }),
    }
}

/// Scans sector prefixes in canonical order and returns the first one whose
/// column-restricted matrix has rank one less than its length; every circuit
/// reaches at least design order `m - 1` for that prefix's last sector.
pub fn lower_bound(a: &ChargeMatrix, table: &SectorTable) -> Result<LowerBoundResult> {
    check_aligned(a, table)?;
    for ell in 1..=table.len() {
        let cols: Vec<usize> = (0..ell).collect();
        if rank_exact(&a.entries.select_columns(&cols)) < ell {
            let last = &table.sectors[ell - 1];
            return Ok(LowerBoundResult {
                ell: Some(ell),
                bound: TmaxValue::Finite(&last.m - 1),
                delta: table.sectors[..ell].iter().map(|s| s.id.clone()).collect(),
            });
        }
    }
    Ok(LowerBoundResult { ell: None, bound: TmaxValue::Infinite, delta: table.ids() })
}

/// Exact `t_max`: minimises `sum m |q|` over the kernel lattice of the charge
/// matrix, growing the allowed support prefix by prefix until the best norm
/// is at most twice the next multiplicity (a vector touching later sectors has
/// norm at least that).
pub fn tmax_exact(a: &ChargeMatrix, table: &SectorTable, opts: &SolveOptions) -> Result<TmaxResult> {
    check_aligned(a, table)?;
    let assumed = semiuniversality(a, opts)?;
    let lb = lower_bound(a, table)?;
    let c = table.len();
    if rank_exact(&a.entries) == c {
        return Ok(TmaxResult {
            tmax: TmaxValue::Infinite,
            lower_bound: lb.bound,
            certificate: None,
            proven_exact: true,
            semiuniversal_assumed: assumed,
        });
    }
    let ms = table.ms();
    let start = lb.ell.expect("rank deficient matrix has a deficient prefix");
    let stop = opts.max_sectors.unwrap_or(c).clamp(start, c);
    let mut best: Option<Certificate> = None;
    let mut proven = false;
    for ell in start..=stop {
        let cols: Vec<usize> = (0..ell).collect();
        let basis = kernel_lattice(&a.entries.select_columns(&cols));
        if !basis.is_empty() {
            let upper = best.as_ref().map(|b| b.weighted_norm.clone());
            if let Some(found) = min_weighted_l1(&basis, &ms[..ell], upper.as_ref())? {
                best = Some(found);
            }
        }
        if ell == c {
            proven = true;
            break;
        }
        if best.as_ref().is_some_and(|b| b.weighted_norm <= &ms[ell] * 2) {
            proven = true;
            break;
        }
    }
    let best = best.expect("first deficient prefix has a nonzero kernel");
    let mut q = best.q;
    q.resize(c, BigInt::zero());
    let cert = Certificate::new(q, &ms);
    if !verify_certificate(&cert, a, table) {
        return Err(Error::Verification("optimal certificate failed re-verification".into()));
    }
    Ok(TmaxResult {
        tmax: TmaxValue::Finite(cert.tmax()),
        lower_bound: lb.bound,
        certificate: Some(cert),
        proven_exact: proven,
        semiuniversal_assumed: assumed,
    })
}

/// Nonzero lattice vector minimising `sum weights |q|`, sign-normalised (first
/// nonzero entry positive) and lexicographically smallest among optima. With
/// `upper`, only vectors of norm strictly below it are returned.
///
/// The weighted L1 norm dominates the Euclidean norm of `weights * q`, so a
/// Fincke–Pohst enumeration of the rescaled lattice within the current best
/// L1 value as radius cannot miss an optimum. All arithmetic is exact.
pub fn min_weighted_l1(
    basis: &LatticeBasis,
    weights: &[BigInt],
    upper: Option<&BigInt>,
) -> Result<Option<Certificate>> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    if weights.len() != basis.dim {
        return Err(Error::DimensionMismatch(format!("{} weights for vectors of length {}", weights.len(), basis.dim)));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::OutOfRange("weights must be positive".into()));
    }
    let reduced = basis.lll_reduced(Some(weights));
    let w2: Vec<BigInt> = weights.iter().map(|w| w * w).collect();
    let (mu, bn) = gram_schmidt_weighted(&reduced.vectors, &w2);
    let mut search = Search {
        b: &reduced.vectors,
        w: weights,
        mu,
        bn,
        limit: upper.map(|u| u - 1),
        best: None,
        x: vec![BigInt::zero(); reduced.len()],
    };
    for v in &reduced.vectors {
        search.consider(v.clone());
    }
    if search.limit.as_ref().is_some_and(|l| !l.is_positive()) {
        return Ok(None);
    }
    let top = reduced.len() - 1;
    search.enumerate(top, BigRational::zero(), true);
    Ok(search.best.map(|(_, q)| Certificate::new(q, weights)))
}

struct Search<'a> {
    b: &'a [Vec<BigInt>],
    w: &'a [BigInt],
    mu: Vec<Vec<BigRational>>,
    bn: Vec<BigRational>,
    /// Largest admissible norm (inclusive).
    limit: Option<BigInt>,
    best: Option<(BigInt, Vec<BigInt>)>,
    x: Vec<BigInt>,
}

impl Search<'_> {
    fn consider(&mut self, mut q: Vec<BigInt>) {
        if q.iter().all(Zero::is_zero) {
            return;
        }
        sign_normalize(&mut q);
        let norm = weighted_l1(&q, self.w);
        if self.limit.as_ref().is_some_and(|l| &norm > l) {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((bn, bq)) => norm < *bn || (norm == *bn && q < *bq),
        };
        if better {
            self.limit = Some(norm.clone());
            self.best = Some((norm, q));
        }
    }

    fn radius2(&self) -> BigRational {
        let l = self.limit.as_ref().expect("seeded before enumeration");
        BigRational::from_integer(l * l)
    }

    fn enumerate(&mut self, i: usize, partial: BigRational, top_zero: bool) {
        let mut center = BigRational::zero();
        for j in i + 1..self.x.len() {
            center -= &self.mu[j][i] * BigRational::from_integer(self.x[j].clone());
        }
        let x0 = round_rational(&center);
        // walk upward from the rounded center, then downward
        for dir in [1i32, -1] {
            if dir < 0 && top_zero {
                break;
            }
            let mut x = if dir > 0 { x0.clone() } else { &x0 - 1 };
            loop {
                let d = BigRational::from_integer(x.clone()) - &center;
                let p = &partial + &d * &d * &self.bn[i];
                if p > self.radius2() {
                    break;
                }
                self.x[i] = x.clone();
                let zero_here = x.is_zero();
                if i == 0 {
                    if !(top_zero && zero_here) {
                        let q = self.combine();
                        self.consider(q);
                    }
                } else {
                    self.enumerate(i - 1, p, top_zero && zero_here);
                }
                x += dir;
            }
        }
        self.x[i] = BigInt::zero();
    }

    fn combine(&self) -> Vec<BigInt> {
        let dim = self.w.len();
        let mut q = vec![BigInt::zero(); dim];
        for (xi, bi) in self.x.iter().zip(self.b) {
            if xi.is_zero() {
                continue;
            }
            for (qj, bj) in q.iter_mut().zip(bi) {
                *qj += xi * bj;
            }
        }
        q
    }
}

/// Checks that `cert` is a nonzero primitive kernel vector orthogonal to the
/// multiplicities, with a correctly recorded norm.
pub fn verify_certificate(cert: &Certificate, a: &ChargeMatrix, table: &SectorTable) -> bool {
    let c = table.len();
    if cert.q.len() != c || a.entries.ncols() != c {
        return false;
    }
    if cert.q.iter().all(Zero::is_zero) {
        return false;
    }
    if a.entries.mul_vec(&cert.q).iter().any(|x| !x.is_zero()) {
        return false;
    }
    let ms = table.ms();
    dot(&ms, &cert.q).is_zero() && gcd_all(&cert.q).is_one() && weighted_l1(&cert.q, &ms) == cert.weighted_norm
}

/// Independent oracle: exhausts all combinations of a kernel basis with
/// coefficients in `[-coeff_bound, coeff_bound]` and returns the smallest
/// weighted norm found with its certificate.
pub fn brute_force_tmax(
    a: &ChargeMatrix,
    table: &SectorTable,
    coeff_bound: u32,
) -> Result<Option<(BigInt, Certificate)>> {
    if a.cols.len() != table.len() {
        return Err(Error::DimensionMismatch("matrix and table sizes differ".into()));
    }
    let basis = kernel_lattice(&a.entries).lll_reduced(None);
    if basis.is_empty() {
        return Ok(None);
    }
    let ms = table.ms();
    let r = basis.len();
    let b = coeff_bound as i64;
    let mut coeffs = vec![-b; r];
    let mut best: Option<(BigInt, Vec<BigInt>)> = None;
    loop {
        if coeffs.iter().any(|&x| x != 0) {
            let mut q = vec![BigInt::zero(); basis.dim];
            for (cf, v) in coeffs.iter().zip(&basis.vectors) {
                for (qj, vj) in q.iter_mut().zip(v) {
                    *qj += vj * *cf;
                }
            }
            sign_normalize(&mut q);
            let norm = weighted_l1(&q, &ms);
            let better = match &best {
                None => true,
                Some((bn, bq)) => norm < *bn || (norm == *bn && q < *bq),
            };
            if better {
                best = Some((norm, q));
            }
        }
        // odometer step
        let mut pos = 0;
        while pos < r && coeffs[pos] == b {
            coeffs[pos] = -b;
            pos += 1;
        }
        if pos == r {
            break;
        }
        coeffs[pos] += 1;
    }
    Ok(best.map(|(norm, q)| (norm, Certificate::new(q, &ms))))
}
