//! Integer charge matrices whose kernel lattice holds the center directions
//! unreachable by k-local symmetric gates.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combinat::binom;
use crate::error::{Error, Result};
use crate::exact_linalg::{rank_exact, scale_to_integers, IntMatrix};
use crate::symmetry::{sectors, GroupSpec, IrrepId, Partition, SectorTable};

/// A conjugacy class of a symmetric group, given by its cycles of length at
/// least two; fixed points are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<u32>);

impl CycleType {
    pub fn identity() -> Self {
        CycleType(Vec::new())
    }

    /// Cycle lengths; lengths below two are dropped.
    pub fn new(mut cycles: Vec<u32>) -> Self {
        cycles.retain(|&c| c >= 2);
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(cycles)
    }

    pub fn cycles(&self) -> &[u32] {
        &self.0
    }

    /// Number of points moved.
    pub fn support(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All classes of `S_k`, ordered by support and then by cycle lengths.
    pub fn classes_of(k: u32) -> Vec<CycleType> {
        let mut out: Vec<CycleType> =
            Partition::enumerate(k, k).into_iter().map(|p| CycleType::new(p.parts().to_vec())).collect();
        out.sort_by(|a, b| a.support().cmp(&b.support()).then_with(|| a.0.iter().rev().cmp(b.0.iter().rev())));
        out.dedup();
        out
    }

    /// Parses cycle notation such as `(1)`, `(12)(34)` or `(1,2,3)`; a bare
    /// list of lengths like `2+2` is also accepted.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::OutOfRange(format!("cannot parse conjugacy class {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        if !s.starts_with('(') {
            let lens: std::result::Result<Vec<u32>, _> = s.split('+').map(|t| t.trim().parse()).collect();
            return lens.map(CycleType::new).map_err(|_| bad());
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let inner = &rest[1..inner_end];
            let len = if inner.contains(',') || inner.contains(' ') {
                inner.split([',', ' ']).filter(|t| !t.is_empty()).count()
            } else {
                inner.chars().count()
            };
            if len == 0 || !inner.chars().all(|c| c.is_ascii_digit() || c == ',' || c == ' ') {
                return Err(bad());
            }
            cycles.push(len as u32);
            rest = rest[inner_end + 1..].trim_start();
        }
        Ok(CycleType::new(cycles))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(1)");
        }
        let wide = self.support() > 9;
        let mut next = 1;
        // shorter cycles first reads naturally: (12)(345)
        for &c in self.0.iter().rev() {
            let pts: Vec<String> = (next..next + c).map(|p| p.to_string()).collect();
            write!(f, "({})", pts.join(if wide { "," } else { "" }))?;
            next += c;
        }
        Ok(())
    }
}

/// Where a charge matrix came from; decides how semi-universality is judged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixKind {
    /// Multiplicity matrix `S` of k-site irreps inside n-site irreps.
    Multiplicity,
    /// Symmetric-group characters on the listed classes.
    Character { classes: Vec<CycleType> },
    /// User-supplied rows.
    Custom,
}

/// Integer matrix with labelled rows and sector-labelled columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeMatrix {
    pub group: GroupSpec,
    pub n: u32,
    pub k: Option<u32>,
    pub kind: MatrixKind,
    pub row_labels: Vec<String>,
    pub cols: Vec<IrrepId>,
    pub entries: IntMatrix,
}

impl ChargeMatrix {
    pub fn rank(&self) -> usize {
        rank_exact(&self.entries)
    }

    /// Reorders columns to follow the sector order of `table`.
    pub fn align_to(&self, table: &SectorTable) -> Result<ChargeMatrix> {
        if table.len() != self.cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, table has {} sectors",
                self.cols.len(),
                table.len()
            )));
        }
        let perm: Option<Vec<usize>> =
            table.sectors.iter().map(|s| self.cols.iter().position(|c| c == &s.id)).collect();
        let perm = perm.ok_or_else(|| {
            Error::DimensionMismatch("matrix columns and table sectors carry different labels".into())
        })?;
        Ok(ChargeMatrix { cols: table.ids(), entries: self.entries.select_columns(&perm), ..self.clone() })
    }

    /// Rebinds the columns of a custom matrix to the sectors of `table`. The
    /// matrix must have been built from `table.ms()` in the same order.
    pub fn relabel(&self, table: &SectorTable) -> Result<ChargeMatrix> {
        if table.len() != self.cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, table has {} sectors",
                self.cols.len(),
                table.len()
            )));
        }
        Ok(ChargeMatrix { group: table.group, n: table.n, cols: table.ids(), ..self.clone() })
    }

    /// Whether `m` lies in the rational row span.
    pub fn spans(&self, m: &[BigInt]) -> bool {
        let mut rows = self.entries.rows().to_vec();
        let r0 = rank_exact(&self.entries);
        rows.push(m.to_vec());
        rank_exact(&IntMatrix::from_rows(rows, self.cols.len())) == r0
    }
}

/// Multiplicity matrix for U1, SU2 and Z_p (and the character matrix with all
/// classes of `S_k` for SU(d)). Columns follow the natural order of
/// [`sectors`].
pub fn build_s(group: &GroupSpec, n: u32, k: u32) -> Result<ChargeMatrix> {
    group.validate()?;
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if let GroupSpec::SUd { d } = *group {
        return build_chi(d, n, k, None);
    }
    let table = sectors(group, n)?;
    let (ni, ki) = (n as i64, k as i64);
    let nk = ni - ki;
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    match *group {
        GroupSpec::U1 => {
            for v in 0..=ki {
                labels.push(format!("v={v}"));
                rows.push((0..=ni).map(|w| binom(nk, w - v)).collect());
            }
        }
        GroupSpec::SU2 => {
            for jp in (ki % 2..=ki).step_by(2) {
                labels.push(format!("2j'={jp}"));
                rows.push(
                    table
                        .ids()
                        .iter()
                        .map(|id| {
                            let IrrepId::TwiceSpin(j) = id else { unreachable!() };
                            let j = *j as i64;
                            binom(nk, (nk + j - jp) / 2) - binom(nk, (nk + j + jp + 2) / 2)
                        })
                        .collect(),
                );
            }
        }
        GroupSpec::Zp { p } => {
            let p = p as i64;
            for alpha in 0..p {
                // residue absent on k sites
                if alpha > ki {
                    continue;
                }
                labels.push(format!("alpha={alpha}"));
                rows.push(
                    table
                        .ids()
                        .iter()
                        .map(|id| {
                            let IrrepId::Residue(b) = id else { unreachable!() };
                            let c = (*b as i64 - alpha).rem_euclid(p);
                            (0..).map(|l| c + p * l).take_while(|&x| x <= nk).map(|x| binom(nk, x)).sum()
                        })
                        .collect(),
                );
            }
        }
        GroupSpec::SUd { .. } | GroupSpec::Custom => unreachable!(),
    }
    let cols = table.ids();
    Ok(ChargeMatrix {
        group: *group,
        n,
        k: Some(k),
        kind: MatrixKind::Multiplicity,
        row_labels: labels,
        entries: IntMatrix::from_rows(rows, cols.len()),
        cols,
    })
}

/// Memo table for Murnaghan–Nakayama evaluations, keyed on the partition and
/// the cycles still to be removed.
#[derive(Debug, Default)]
pub struct CharacterCache {
    memo: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `chi_lambda(sigma)` for `sigma` of the given cycle type padded with
    /// fixed points up to `|lambda|`.
    pub fn character(&mut self, lam: &Partition, sigma: &CycleType) -> Result<BigInt> {
        if sigma.support() > lam.size() {
            return Err(Error::OutOfRange(format!("class {sigma} moves more than the {} points of {lam}", lam.size())));
        }
        Ok(self.mn(lam.parts(), sigma.cycles()))
    }

    fn mn(&mut self, lam: &[u32], cycles: &[u32]) -> BigInt {
        if cycles.is_empty() {
            return Partition::from_parts_unchecked(lam.to_vec()).hook_dim();
        }
        let key = (lam.to_vec(), cycles.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let r = cycles[0];
        let rest = &cycles[1..];
        let mut total = BigInt::zero();
        for (sub, height) in remove_rim_hooks(lam, r) {
            let v = self.mn(&sub, rest);
            if height % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// All partitions obtained by removing a border strip of length `r`, with the
/// strip height (rows spanned minus one).
fn remove_rim_hooks(lam: &[u32], r: u32) -> Vec<(Vec<u32>, u32)> {
    let len = lam.len() as i64;
    let beta: Vec<i64> = lam.iter().enumerate().map(|(i, &p)| p as i64 + len - 1 - i as i64).collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        let nb = b - r as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > nb && x < b).count() as u32;
        let mut nbeta = beta.clone();
        nbeta[idx] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> =
            nbeta.iter().enumerate().map(|(i, &x)| (x - (len - 1 - i as i64)) as u32).filter(|&p| p > 0).collect();
        out.push((parts, height));
    }
    out
}

/// Character of the symmetric-group irrep `lam` on the class `sigma`.
pub fn sn_character(lam: &Partition, sigma: &CycleType) -> Result<BigInt> {
    CharacterCache::new().character(lam, sigma)
}

/// Character matrix for SU(d) qudits: rows are classes of `S_k` (all of them,
/// or the requested subset), columns the partitions of `n` with at most `d`
/// rows in natural order.
pub fn build_chi(d: u32, n: u32, k: u32, classes: Option<&[CycleType]>) -> Result<ChargeMatrix> {
    let group = GroupSpec::sud(d)?;
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let classes: Vec<CycleType> = match classes {
        Some(c) => {
            if let Some(bad) = c.iter().find(|c| c.support() > k) {
                return Err(Error::ClassSupport { class: bad.to_string(), k });
            }
            c.to_vec()
        }
        None => CycleType::classes_of(k),
    };
    let table = sectors(&group, n)?;
    let mut cache = CharacterCache::new();
    let mut rows = Vec::with_capacity(classes.len());
    for sigma in &classes {
        let mut row = Vec::with_capacity(table.len());
        for id in table.ids() {
            let IrrepId::Partition(lam) = id else { unreachable!() };
            row.push(cache.character(&lam, sigma)?);
        }
        rows.push(row);
    }
    let cols = table.ids();
    Ok(ChargeMatrix {
        group,
        n,
        k: Some(k),
        row_labels: classes.iter().map(|c| c.to_string()).collect(),
        kind: MatrixKind::Character { classes },
        entries: IntMatrix::from_rows(rows, cols.len()),
        cols,
    })
}

/// Matrix from user charge rows. Rational rows are scaled to integers (the
/// kernel is unchanged); the multiplicity vector itself is prepended as the
/// identity row unless it already lies in the row span.
pub fn custom_matrix(m: &[BigInt], rows: &[Vec<BigRational>], row_labels: Option<Vec<String>>) -> Result<ChargeMatrix> {
    if let Some(bad) = rows.iter().position(|r| r.len() != m.len()) {
        return Err(Error::DimensionMismatch(format!(
            "row {bad} has length {}, expected {}",
            rows[bad].len(),
            m.len()
        )));
    }
    let mut labels = row_labels.unwrap_or_else(|| (0..rows.len()).map(|i| format!("H{i}")).collect());
    if labels.len() != rows.len() {
        return Err(Error::DimensionMismatch(format!("{} labels for {} rows", labels.len(), rows.len())));
    }
    let mut int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| scale_to_integers(r)).collect();
    let base = IntMatrix::from_rows(int_rows.clone(), m.len());
    let r0 = rank_exact(&base);
    let mut with_m = int_rows.clone();
    with_m.push(m.to_vec());
    if rank_exact(&IntMatrix::from_rows(with_m, m.len())) > r0 {
        int_rows.insert(0, m.to_vec());
        labels.insert(0, "identity".into());
    }
    let table = SectorTable::custom(m.to_vec(), None)?;
    Ok(ChargeMatrix {
        group: GroupSpec::Custom,
        n: 0,
        k: None,
        kind: MatrixKind::Custom,
        row_labels: labels,
        entries: IntMatrix::from_rows(int_rows, m.len()),
        cols: table.ids(),
    })
}

/// Rational rows helper: `p/q` strings or integers.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ints(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
    }

    #[test]
    fn u1_three_sites_one_local() {
        let s = build_s(&GroupSpec::U1, 3, 1).unwrap();
        assert_eq!(ints(&s.entries), vec![vec![1, 2, 1, 0], vec![0, 1, 2, 1]]);
    }

    #[test]
    fn u1_full_locality_is_identity() {
        let s = build_s(&GroupSpec::U1, 5, 5).unwrap();
        assert_eq!(s.entries, IntMatrix::identity(6));
    }

    #[test]
    fn z2_entries_constant() {
        let s = build_s(&GroupSpec::Zp { p: 2 }, 5, 2).unwrap();
        assert_eq!(ints(&s.entries), vec![vec![4, 4], vec![4, 4]]);
    }

    #[test]
    fn rejects_bad_locality() {
        assert!(build_s(&GroupSpec::U1, 3, 4).is_err());
        assert!(build_s(&GroupSpec::U1, 3, 0).is_err());
    }

    #[test]
    fn sud_two_local_column() {
        let chi = build_chi(3, 15, 2, None).unwrap();
        let col = chi.cols.iter().position(|c| c.to_string() == "[14,1]").unwrap();
        assert_eq!(chi.row_labels, vec!["(1)", "(12)"]);
        assert_eq!(chi.entries.get(0, col), &BigInt::from(14));
        assert_eq!(chi.entries.get(1, col), &BigInt::from(12));
    }

    #[test]
    fn characters_from_small_table() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        let c = |v: Vec<u32>| CycleType::new(v);
        assert_eq!(sn_character(&p(vec![13, 2]), &c(vec![2, 2])).unwrap(), 46.into());
        assert_eq!(sn_character(&p(vec![12, 2, 1]), &c(vec![4])).unwrap(), 231.into());
        assert_eq!(sn_character(&p(vec![1, 1, 1]), &c(vec![2])).unwrap(), (-1).into());
        assert_eq!(sn_character(&p(vec![2, 1]), &c(vec![3])).unwrap(), (-1).into());
        assert_eq!(sn_character(&p(vec![2, 2]), &c(vec![2])).unwrap(), 0.into());
    }

    #[test]
    fn class_parsing_and_display() {
        for s in ["(1)", "(12)", "(123)", "(12)(34)", "(1234)"] {
            assert_eq!(CycleType::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(CycleType::parse("2+2").unwrap(), CycleType::new(vec![2, 2]));
        assert_eq!(CycleType::parse("(1,2,3)").unwrap(), CycleType::new(vec![3]));
        assert!(CycleType::parse("(12").is_err());
        let names: Vec<String> = CycleType::classes_of(4).iter().map(|c| c.to_string()).collect();
        assert_eq!(names, ["(1)", "(12)", "(123)", "(12)(34)", "(1234)"]);
    }

    #[test]
    fn class_support_checked() {
        let err = build_chi(3, 10, 3, Some(&[CycleType::new(vec![4])])).unwrap_err();
        assert!(matches!(err, Error::ClassSupport { .. }));
    }

    #[test]
    fn custom_prepends_identity() {
        let m = vec![BigInt::one(), BigInt::one()];
        let a = custom_matrix(&m, &[], None).unwrap();
        assert_eq!(ints(&a.entries), vec![vec![1, 1]]);
        let rows = vec![vec![BigRational::from_integer(2.into()), BigRational::from_integer(2.into())]];
        let b = custom_matrix(&m, &rows, None).unwrap();
        assert_eq!(b.entries.nrows(), 1);
        assert!(custom_matrix(&m, &[vec![BigRational::one()]], None).is_err());
    }

    #[test]
    fn custom_scales_fractions() {
        let m = vec![BigInt::from(3), BigInt::from(2)];
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let a = custom_matrix(&m, &[vec![half, third]], None).unwrap();
        assert_eq!(ints(&a.entries), vec![vec![3, 2]]);
        assert_eq!(parse_rational(" -3/4 "), Some(BigRational::new((-3).into(), 4.into())));
        assert_eq!(parse_rational("1/0"), None);
    }
}
