//! Closed-form operators and values: the U(1) bases `C_l`, `A_k`, `F_k`, the
//! SU(2) bases `C_{2m}` and `A_k`, their norms and pairings, and the tabulated
//! `t_max` formulas with their validity thresholds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::combinat::{as_integer, binom, double_factorial, gbinom_half, gbinom_int, pow2, sign};
use crate::error::{Error, Result};
use crate::solver::TmaxValue;
use crate::symmetry::{sectors, su2_mult, GroupSpec, IrrepId, SectorTable};

/// An operator diagonal in the sector projectors: `value` is its eigenvalue on
/// each sector and `qvec` the integer vector with `value = q / dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagOperator {
    pub table: SectorTable,
    pub values: Vec<BigRational>,
    pub qvec: Vec<BigInt>,
}

impl DiagOperator {
    fn from_q(table: SectorTable, qvec: Vec<BigInt>) -> Self {
        let values = qvec.iter().zip(&table.sectors).map(|(q, s)| BigRational::new(q.clone(), s.dim.clone())).collect();
        DiagOperator { table, values, qvec }
    }

    /// Trace norm `sum |value| Tr(Pi)` with `Tr(Pi) = m * dim`.
    pub fn trace_norm(&self) -> BigRational {
        self.values
            .iter()
            .zip(&self.table.sectors)
            .map(|(v, s)| v.abs() * BigRational::from_integer(&s.m * &s.dim))
            .sum()
    }

    /// `Tr(self * other)` for operators on the same table.
    pub fn pair(&self, other: &DiagOperator) -> BigRational {
        self.values
            .iter()
            .zip(&other.values)
            .zip(&self.table.sectors)
            .map(|((a, b), s)| a * b * BigRational::from_integer(&s.m * &s.dim))
            .sum()
    }

    /// U(1) reflection `(-1)^k X^n O X^n`: the eigenvalue on weight `w` moves to
    /// `n - w`, times `(-1)^k`. Norms and kernels are unchanged.
    pub fn u1_reflected(&self, k: u32) -> Result<DiagOperator> {
        if self.table.group != GroupSpec::U1 {
            return Err(Error::InvalidGroup("reflection is defined for U1 operators".into()));
        }
        let s = BigInt::from(sign(k as i64));
        let qvec: Vec<BigInt> = self.qvec.iter().rev().map(|q| q * &s).collect();
        Ok(DiagOperator::from_q(self.table.clone(), qvec))
    }
}

fn check_u1(n: u32, idx: &[(&str, u32)]) -> Result<()> {
    for (name, v) in idx {
        if *v > n {
            return Err(Error::OutOfRange(format!("{name} = {v} exceeds n = {n}")));
        }
    }
    Ok(())
}

/// Eigenvalue of `C_l` (sum of all weight-`l` Z strings) on Hamming weight `w`.
pub fn u1_c_eigenvalue(n: u32, l: u32, w: u32) -> Result<BigInt> {
    check_u1(n, &[("l", l), ("w", w)])?;
    let (n, l, w) = (n as i64, l as i64, w as i64);
    Ok((0..=l).map(|r| binom(n - w, l - r) * binom(w, r) * sign(r)).sum())
}

/// `F_k` with eigenvalue `(-1)^w binom(n - floor((k+1)/2) - w, n - k)` on weight `w`.
pub fn u1_f(n: u32, k: u32) -> Result<DiagOperator> {
    check_u1(n, &[("k", k)])?;
    let (ni, ki) = (n as i64, k as i64);
    let q = (0..=ni).map(|w| gbinom_int(ni - (ki + 1) / 2 - w, ni - ki) * sign(w)).collect();
    Ok(DiagOperator::from_q(sectors(&GroupSpec::U1, n)?, q))
}

/// `A_k` with eigenvalue `(-1)^w binom(n - w, k - w)` for `w <= k`, else zero.
pub fn u1_a(n: u32, k: u32) -> Result<DiagOperator> {
    check_u1(n, &[("k", k)])?;
    let (ni, ki) = (n as i64, k as i64);
    let q = (0..=ni).map(|w| if w <= ki { binom(ni - w, ki - w) * sign(w) } else { BigInt::zero() }).collect();
    Ok(DiagOperator::from_q(sectors(&GroupSpec::U1, n)?, q))
}

fn integral(r: BigRational, what: &str) -> Result<BigInt> {
    as_integer(&r).ok_or_else(|| Error::Verification(format!("{what} = {r} is not an integer")))
}

/// `||F_k||_1`: `2^k binom(n/2, k/2)` for even `k`, `2^k binom((n-1)/2, (k-1)/2)` for odd `k`.
pub fn u1_f_norm(n: u32, k: u32) -> Result<BigInt> {
    check_u1(n, &[("k", k)])?;
    let (ni, ki) = (n as i64, k as i64);
    let b = if k.is_multiple_of(2) { gbinom_half(ni, ki / 2) } else { gbinom_half(ni - 1, (ki - 1) / 2) };
    integral(b * BigRational::from_integer(pow2(k)), "||F_k||_1")
}

/// `||A_k||_1 = 2^k binom(n, k)`.
pub fn u1_a_norm(n: u32, k: u32) -> Result<BigInt> {
    check_u1(n, &[("k", k)])?;
    Ok(pow2(k) * binom(n as i64, k as i64))
}

/// `Tr(F_k C_l)`; vanishes for `l < k`.
pub fn tr_f_c(n: u32, k: u32, l: u32) -> Result<BigInt> {
    check_u1(n, &[("k", k), ("l", l)])?;
    let (ni, ki, li) = (n as i64, k as i64, l as i64);
    let base = pow2(k) * binom(ni, li);
    Ok(if k.is_multiple_of(2) {
        base * binom(li / 2, ki / 2)
    } else if l % 2 == 1 {
        base * binom((li - 1) / 2, (ki - 1) / 2)
    } else {
        BigInt::zero()
    })
}

/// `Tr(A_k C_l) = 2^k binom(n, l) binom(l, k)`.
pub fn tr_a_c_u1(n: u32, k: u32, l: u32) -> Result<BigInt> {
    check_u1(n, &[("k", k), ("l", l)])?;
    Ok(pow2(k) * binom(n as i64, l as i64) * binom(l as i64, k as i64))
}

fn check_spin(n: u32, j2: u32) -> Result<()> {
    if j2 > n {
        return Err(Error::OutOfRange(format!("2j = {j2} exceeds n = {n}")));
    }
    if !(n - j2).is_multiple_of(2) {
        return Err(Error::Parity(format!("n - 2j must be even (n = {n}, 2j = {j2})")));
    }
    Ok(())
}

fn check_even(name: &str, v: u32) -> Result<()> {
    if !v.is_multiple_of(2) {
        return Err(Error::Parity(format!("{name} = {v} must be even")));
    }
    Ok(())
}

/// Multiplicity `m(n, j) = binom(n, n/2 - j) - binom(n, n/2 - j - 1)`.
pub fn su2_multiplicity(n: u32, j2: u32) -> Result<BigInt> {
    check_spin(n, j2)?;
    Ok(su2_mult(n, j2))
}

/// Numerator of the `C~_{2m}` eigenvalue on `i = n/2 - j`; the eigenvalue is
/// this divided by `m_i`.
fn ctilde_numerator(n: i64, m: i64, i: i64) -> BigInt {
    (0..=m.min(i))
        .map(|r| {
            let c = binom(n - 2 * r, i - r) - binom(n - 2 * r, i - r - 1);
            BigInt::from(-4).pow(r as u32) * binom(m, r) * c
        })
        .sum()
}

/// Eigenvalue of the normalised `C~_{2m} = C_{2m} / ((2m-1)!! binom(n, 2m))` on spin `j`.
pub fn su2_ctilde_eigenvalue(n: u32, l: u32, j2: u32) -> Result<BigRational> {
    check_spin(n, j2)?;
    check_even("l", l)?;
    if l > n {
        return Err(Error::OutOfRange(format!("l = {l} exceeds n = {n}")));
    }
    let i = ((n - j2) / 2) as i64;
    Ok(BigRational::new(ctilde_numerator(n as i64, (l / 2) as i64, i), su2_mult(n, j2)))
}

/// Integer eigenvalue of `C_l` (`l = 2m`) on spin `j`. For `l = 2` this is
/// `2j(j+1) - 3n/2`.
pub fn su2_c_eigenvalue(n: u32, l: u32, j2: u32) -> Result<BigInt> {
    let t = su2_ctilde_eigenvalue(n, l, j2)?;
    let scale = double_factorial(l as i64 - 1) * binom(n as i64, l as i64);
    integral(t * BigRational::from_integer(scale), "C_l eigenvalue")
}

/// SU(2) `A_k` for even `k`: `q_j = (-1)^{n/2-j} binom((n-k)/2 + j, n-k)`.
pub fn su2_a(n: u32, k: u32) -> Result<DiagOperator> {
    check_even("k", k)?;
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let table = sectors(&GroupSpec::SU2, n)?;
    let nk = (n - k) as i64;
    let q = table
        .ids()
        .iter()
        .map(|id| {
            let IrrepId::TwiceSpin(j2) = id else { unreachable!() };
            let j2 = *j2 as i64;
            binom((nk + j2) / 2, nk) * sign((n as i64 - j2) / 2)
        })
        .collect();
    Ok(DiagOperator::from_q(table, q))
}

/// `||A_k||_1 = 2^k binom((n-1)/2, k/2)` for even `k`.
pub fn su2_a_norm(n: u32, k: u32) -> Result<BigInt> {
    check_even("k", k)?;
    let b = gbinom_half(n as i64 - 1, (k / 2) as i64);
    integral(b * BigRational::from_integer(pow2(k)), "||A_k||_1")
}

/// `Tr(A_{2s} C~_{2m}) = 4^s binom(m, s)`; arguments are `k = 2s`, `l = 2m`.
pub fn tr_a_ctilde(n: u32, k: u32, l: u32) -> Result<BigInt> {
    check_even("k", k)?;
    check_even("l", l)?;
    let (s, m) = ((k / 2) as i64, (l / 2) as i64);
    let _ = n;
    Ok(pow2(k) * binom(m, s))
}

/// `Tr(C~_{2m}^2) = (2m+1) 2^n / binom(n, 2m)`.
pub fn tr_ctilde_sq(n: u32, l: u32) -> Result<BigRational> {
    check_even("l", l)?;
    if l > n {
        return Err(Error::OutOfRange(format!("l = {l} exceeds n = {n}")));
    }
    Ok(BigRational::new(BigInt::from(l + 1) * pow2(n), binom(n as i64, l as i64)))
}

/// Largest `i < floor(n/2)` with `m_i <= m_r` for every `r > i`, where
/// `m_i = m(n, n/2 - i)`.
pub fn su2_i_max(n: u32) -> Option<u32> {
    let half = n / 2;
    let m: Vec<BigInt> = (0..=half).map(|i| su2_mult(n, n - 2 * i)).collect();
    (0..half).rev().find(|&i| m[i as usize + 1..].iter().all(|x| &m[i as usize] <= x))
}

/// A tabulated `t_max` formula evaluated at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormTmax {
    pub value: TmaxValue,
    /// The formula is proven exact for `n >= valid_from_n`.
    pub valid_from_n: u32,
    pub formula_id: &'static str,
}

impl ClosedFormTmax {
    pub fn applies(&self, n: u32) -> bool {
        n >= self.valid_from_n
    }
}

/// SU(d) rows of the table of results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SudCase {
    K3,
    K4,
    /// All 3-site gates plus the `(12)(34)` class.
    TGroup,
    /// 2-site gates amended with the relative-phase-free unitaries.
    K2Sv,
    /// 0- or 1-site gates amended with the relative-phase-free unitaries.
    K01Sv,
}

impl SudCase {
    pub const ALL: [SudCase; 5] = [SudCase::K3, SudCase::K4, SudCase::TGroup, SudCase::K2Sv, SudCase::K01Sv];

    /// Conjugacy classes whose characters form the charge rows.
    pub fn classes(self) -> &'static [&'static str] {
        match self {
            SudCase::K3 => &["(1)", "(12)", "(123)"],
            SudCase::K4 => &["(1)", "(12)", "(123)", "(12)(34)", "(1234)"],
            SudCase::TGroup => &["(1)", "(12)", "(123)", "(12)(34)"],
            SudCase::K2Sv => &["(1)", "(12)"],
            SudCase::K01Sv => &["(1)"],
        }
    }

    /// Locality of the largest gate.
    pub fn locality(self) -> u32 {
        match self {
            SudCase::K3 => 3,
            SudCase::K4 | SudCase::TGroup => 4,
            SudCase::K2Sv => 2,
            SudCase::K01Sv => 1,
        }
    }

    /// Whether the gate set is only semi-universal after the amendment, so the
    /// solver must be told to assume it.
    pub fn amended(self) -> bool {
        matches!(self, SudCase::K2Sv | SudCase::K01Sv)
    }

    /// Smallest `d` for which the case is distinct.
    pub fn min_d(self) -> u32 {
        if self == SudCase::TGroup {
            4
        } else {
            3
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SudCase::K3 => "k=3",
            SudCase::K4 => "k=4",
            SudCase::TGroup => "T",
            SudCase::K2Sv => "k=2+SV",
            SudCase::K01Sv => "k=0,1+SV",
        }
    }
}

fn finite_minus_one(v: BigRational, id: &'static str, valid_from_n: u32) -> Result<ClosedFormTmax> {
    let v = integral(v, id)?;
    Ok(ClosedFormTmax { value: TmaxValue::Finite(v - 1), valid_from_n, formula_id: id })
}

/// Closed form for U1, SU2, Z_p and SU(d) with `k = 3, 4`.
pub fn closed_tmax(group: &GroupSpec, n: u32, k: u32) -> Result<ClosedFormTmax> {
    group.validate()?;
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let infinite = |id, valid_from_n| ClosedFormTmax { value: TmaxValue::Infinite, valid_from_n, formula_id: id };
    match *group {
        GroupSpec::U1 => {
            if k == n {
                return Ok(infinite("full-locality", 1));
            }
            let valid = if k == 1 { 3 } else { (1u32 << (k / 2)) * ((k + 3) / 2) };
            let half = BigRational::new(u1_f_norm(n, k + 1)?, 2.into());
            finite_minus_one(half, "u1", valid)
        }
        GroupSpec::SU2 => {
            if k < 2 {
                return Err(Error::NotSemiUniversal { what: format!("su2 with k = {k}"), needed: "k >= 2".into() });
            }
            let s = k / 2;
            if s >= n / 2 {
                return Ok(infinite("full-locality", 1));
            }
            let valid = if s == 1 { 13 } else { (1u32 << s) * (s + 2) };
            let v = gbinom_half(n as i64 - 1, s as i64 + 1) * BigRational::from_integer(pow2(2 * s + 1));
            finite_minus_one(v, "su2", valid)
        }
        GroupSpec::Zp { p } => {
            if k < p {
                return Err(Error::NotSemiUniversal {
                    what: format!("{group} with k = {k}"),
                    needed: format!("k >= {p}"),
                });
            }
            if k == n {
                return Ok(infinite("full-locality", 1));
            }
            if p % 2 == 1 {
                return Ok(infinite("zp-odd", k + 1));
            }
            Ok(ClosedFormTmax { value: TmaxValue::Finite(pow2(n - 1) - 1), valid_from_n: k + 1, formula_id: "zp-even" })
        }
        GroupSpec::SUd { d } => match k {
            3 => closed_tmax_sud(d, n, SudCase::K3),
            4 => closed_tmax_sud(d, n, SudCase::K4),
            1 | 2 => Err(Error::NotSemiUniversal { what: format!("{group} with k = {k}"), needed: "k >= 3".into() }),
            _ => Err(Error::NoClosedForm(format!("{group} with k = {k}"))),
        },
        GroupSpec::Custom => Err(Error::NoClosedForm("custom groups".into())),
    }
}

/// Closed form for the SU(d) cases, including the amended low-locality ones.
pub fn closed_tmax_sud(d: u32, n: u32, case: SudCase) -> Result<ClosedFormTmax> {
    GroupSpec::sud(d)?;
    let ni = BigInt::from(n);
    let r = |num: BigInt, den: i64| BigRational::new(num, den.into());
    let c = |x: i64| &ni - x;
    match case {
        SudCase::K3 => finite_minus_one(r(c(1) * c(3), 1), "sud-k3", 15.max(d + 3)),
        SudCase::K4 => finite_minus_one(r(c(1) * c(3) * c(5) * 2, 3), "sud-k4", 22.max(d + 4)),
        SudCase::TGroup => {
            let quad = &ni * &ni * 2 - &ni * 3 + 4;
            finite_minus_one(r(c(3) * quad, 6), "sud-t", 22.max(d + 4))
        }
        SudCase::K2Sv => finite_minus_one(r(c(-1) * c(2), 2), "sud-k2-sv", 15.max(d + 3)),
        SudCase::K01Sv => finite_minus_one(r(c(1), 1), "sud-k01-sv", 5.max(d + 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn c_eigenvalue_special_cases() {
        for n in 1..8 {
            for w in 0..=n {
                assert_eq!(u1_c_eigenvalue(n, 1, w).unwrap(), BigInt::from(n as i64 - 2 * w as i64));
                assert_eq!(u1_c_eigenvalue(n, 0, w).unwrap(), 1.into());
                assert_eq!(u1_c_eigenvalue(n, n, w).unwrap(), sign(w as i64).into());
            }
        }
        assert!(u1_c_eigenvalue(3, 4, 0).is_err());
    }

    #[test]
    fn f_operators() {
        assert_eq!(ints(&u1_f(7, 3).unwrap().qvec), vec![5, -1, 0, 0, 0, 0, 1, -5]);
        assert_eq!(ints(&u1_f(3, 2).unwrap().qvec), vec![2, -1, 0, 1]);
        assert_eq!(ints(&u1_f(5, 0).unwrap().qvec), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(ints(&u1_f(4, 4).unwrap().qvec), vec![1, -1, 1, -1, 1]);
    }

    #[test]
    fn norms() {
        assert_eq!(u1_a_norm(5, 3).unwrap(), 80.into());
        assert_eq!(u1_f_norm(4, 3).unwrap(), 12.into());
        assert_eq!(u1_f_norm(9, 0).unwrap(), 1.into());
        assert_eq!(su2_a_norm(13, 4).unwrap(), 240.into());
    }

    #[test]
    fn pairings() {
        assert_eq!(tr_f_c(10, 4, 6).unwrap(), 10080.into());
        assert_eq!(tr_f_c(10, 5, 3).unwrap(), 0.into());
        assert_eq!(tr_a_c_u1(6, 0, 0).unwrap(), 1.into());
        assert_eq!(tr_a_ctilde(9, 4, 2).unwrap(), 0.into());
        assert_eq!(tr_a_ctilde(9, 0, 6).unwrap(), 1.into());
        assert_eq!(tr_ctilde_sq(10, 4).unwrap(), BigRational::new(512.into(), 21.into()));
    }

    #[test]
    fn su2_c2_eigenvalue() {
        assert_eq!(su2_c_eigenvalue(2, 2, 2).unwrap(), 1.into());
        assert_eq!(su2_c_eigenvalue(2, 2, 0).unwrap(), (-3).into());
        assert!(su2_c_eigenvalue(3, 2, 2).is_err());
    }

    #[test]
    fn su2_a_zero() {
        let a = su2_a(6, 0).unwrap();
        assert_eq!(ints(&a.qvec), vec![0, 0, 0, 1]);
        assert!(su2_a(6, 3).is_err());
    }

    #[test]
    fn closed_values() {
        let c = closed_tmax(&GroupSpec::U1, 10, 3).unwrap();
        assert_eq!((c.value, c.valid_from_n), (TmaxValue::finite(79), 6));
        let c = closed_tmax(&GroupSpec::SUd { d: 3 }, 15, 3).unwrap();
        assert_eq!((c.value, c.valid_from_n), (TmaxValue::finite(167), 15));
        let c = closed_tmax(&GroupSpec::Zp { p: 6 }, 9, 7).unwrap();
        assert_eq!(c.value, TmaxValue::finite(255));
        let c = closed_tmax(&GroupSpec::Zp { p: 3 }, 9, 4).unwrap();
        assert_eq!(c.value, TmaxValue::Infinite);
        assert!(closed_tmax(&GroupSpec::SU2, 9, 1).is_err());
        assert!(closed_tmax(&GroupSpec::Zp { p: 5 }, 9, 4).is_err());
    }

    #[test]
    fn reflection_keeps_norm() {
        let f = u1_f(8, 3).unwrap();
        let g = f.u1_reflected(3).unwrap();
        assert_eq!(f.trace_norm(), g.trace_norm());
        assert_eq!(ints(&g.qvec), vec![6, -1, 0, 0, 0, 0, 0, 1, -6]);
    }
}
