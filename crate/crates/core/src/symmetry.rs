//! Irrep sectors of the on-site representation: labels, multiplicities,
//! dimensions and the canonical multiplicity ordering.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{binom, factorial};
use crate::error::{Error, Result};

/// The symmetry group together with its on-site representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Qubits, phase rotations `e^{i theta Z}` on every site.
    U1,
    /// Qubits, spin-1/2 rotations on every site.
    SU2,
    /// Qubits, cyclic group generated by a `2 pi / p` phase rotation.
    Zp { p: u32 },
    /// Qudits of dimension `d >= 3`, defining representation on every site.
    SUd { d: u32 },
    /// User-supplied multiplicities and charge rows.
    Custom,
}

impl GroupSpec {
    pub fn zp(p: u32) -> Result<Self> {
        let g = GroupSpec::Zp { p };
        g.validate()?;
        Ok(g)
    }

    pub fn sud(d: u32) -> Result<Self> {
        let g = GroupSpec::SUd { d };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Zp { p } if p < 2 => Err(Error::InvalidGroup(format!("Z_p needs p >= 2, got p = {p}"))),
            GroupSpec::SUd { d } if d < 3 => {
                Err(Error::InvalidGroup(format!("SU(d) needs d >= 3 (use SU2 for d = 2), got d = {d}")))
            }
            _ => Ok(()),
        }
    }

    /// Local Hilbert-space dimension; `None` for custom groups.
    pub fn local_dim(&self) -> Option<u32> {
        match *self {
            GroupSpec::U1 | GroupSpec::SU2 | GroupSpec::Zp { .. } => Some(2),
            GroupSpec::SUd { d } => Some(d),
            GroupSpec::Custom => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::U1 => write!(f, "u1"),
            GroupSpec::SU2 => write!(f, "su2"),
            GroupSpec::Zp { p } => write!(f, "zp(p={p})"),
            GroupSpec::SUd { d } => write!(f, "sud(d={d})"),
            GroupSpec::Custom => write!(f, "custom"),
        }
    }
}

/// A Young diagram: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::MalformedPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|c| self.0.iter().filter(|&&r| r >= c).count() as u32).collect())
    }

    /// Dimension of the symmetric-group irrep, by the hook-length formula.
    pub fn hook_dim(&self) -> BigInt {
        let t = self.transpose();
        let mut hooks = BigInt::one();
        for (i, &r) in self.0.iter().enumerate() {
            for j in 0..r as usize {
                let arm = r as usize - j - 1;
                let leg = t.0[j] as usize - i - 1;
                hooks *= arm + leg + 1;
            }
        }
        factorial(self.size() as u64) / hooks
    }

    /// Dimension of the SU(d) irrep with this highest weight (Weyl formula).
    pub fn weyl_dim(&self, d: u32) -> BigInt {
        let d = d as usize;
        if self.rows() > d {
            return BigInt::zero();
        }
        let l = |i: usize| self.0.get(i).copied().unwrap_or(0) as i64;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..d {
            for j in i + 1..d {
                num *= l(i) - l(j) + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
        num / den
    }

    /// All partitions of `n` with at most `max_rows` rows, largest first
    /// part first (reverse lexicographic).
    pub fn enumerate(n: u32, max_rows: u32) -> Vec<Partition> {
        fn rec(rest: u32, cap: u32, rows_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows_left == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, max_rows, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Label of an irrep sector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IrrepId {
    HammingWeight(u32),
    /// Twice the total spin, `2j`.
    TwiceSpin(u32),
    Residue(u32),
    Partition(Partition),
    Custom(String),
}

impl fmt::Display for IrrepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepId::HammingWeight(w) => write!(f, "w={w}"),
            IrrepId::TwiceSpin(j2) => write!(f, "2j={j2}"),
            IrrepId::Residue(b) => write!(f, "beta={b}"),
            IrrepId::Partition(p) => write!(f, "{p}"),
            IrrepId::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// One sector: label, multiplicity `m` and irrep dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub id: IrrepId,
    pub m: BigInt,
    pub dim: BigInt,
}

/// Ordered list of sectors for `n` sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorTable {
    pub group: GroupSpec,
    pub n: u32,
    pub sectors: Vec<Sector>,
}

impl SectorTable {
    /// Table for a user-supplied multiplicity vector; labels default to `s0, s1, ...`.
    pub fn custom(ms: Vec<BigInt>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != ms.len() {
                return Err(Error::DimensionMismatch(format!("{} labels for {} sectors", l.len(), ms.len())));
            }
        }
        if ms.iter().any(|m| m <= &BigInt::zero()) {
            return Err(Error::OutOfRange("multiplicities must be positive".into()));
        }
        let sectors = ms
            .into_iter()
            .enumerate()
            .map(|(i, m)| Sector {
                id: IrrepId::Custom(labels.as_ref().map_or_else(|| format!("s{i}"), |l| l[i].clone())),
                m,
                dim: BigInt::one(),
            })
            .collect();
        Ok(SectorTable { group: GroupSpec::Custom, n: 0, sectors })
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn ms(&self) -> Vec<BigInt> {
        self.sectors.iter().map(|s| s.m.clone()).collect()
    }

    pub fn ids(&self) -> Vec<IrrepId> {
        self.sectors.iter().map(|s| s.id.clone()).collect()
    }

    pub fn position(&self, id: &IrrepId) -> Option<usize> {
        self.sectors.iter().position(|s| &s.id == id)
    }

    /// `sum m * dim`, which equals `(local dim)^n` for built-in groups.
    pub fn total_dimension(&self) -> BigInt {
        self.sectors.iter().map(|s| &s.m * &s.dim).sum()
    }

    pub fn is_canonical(&self) -> bool {
        self.sectors.windows(2).all(|w| w[0].m <= w[1].m)
    }
}

/// Sector table of `n` sites in natural label order.
pub fn sectors(group: &GroupSpec, n: u32) -> Result<SectorTable> {
    group.validate()?;
    if n == 0 {
        return Err(Error::OutOfRange("need n >= 1".into()));
    }
    let ni = n as i64;
    let sectors = match *group {
        GroupSpec::U1 => (0..=n)
            .map(|w| Sector { id: IrrepId::HammingWeight(w), m: binom(ni, w as i64), dim: BigInt::one() })
            .collect(),
        GroupSpec::SU2 => (n % 2..=n)
            .step_by(2)
            .map(|j2| Sector { id: IrrepId::TwiceSpin(j2), m: su2_mult(n, j2), dim: BigInt::from(j2 + 1) })
            .collect(),
        GroupSpec::Zp { p } => (0..p)
            .map(|b| {
                let m = (b..=n).step_by(p as usize).map(|w| binom(ni, w as i64)).sum::<BigInt>();
                Sector { id: IrrepId::Residue(b), m, dim: BigInt::one() }
            })
            .filter(|s| !s.m.is_zero())
            .collect(),
        GroupSpec::SUd { d } => Partition::enumerate(n, d)
            .into_iter()
            .map(|lam| Sector { m: lam.hook_dim(), dim: lam.weyl_dim(d), id: IrrepId::Partition(lam) })
            .collect(),
        GroupSpec::Custom => return Err(Error::InvalidGroup("custom groups carry their own sector table".into())),
    };
    Ok(SectorTable { group: *group, n, sectors })
}

pub(crate) fn su2_mult(n: u32, j2: u32) -> BigInt {
    let i = ((n - j2) / 2) as i64;
    binom(n as i64, i) - binom(n as i64, i - 1)
}

fn tie_break(group: &GroupSpec, n: u32, a: &IrrepId, b: &IrrepId) -> Ordering {
    match (a, b) {
        (IrrepId::HammingWeight(x), IrrepId::HammingWeight(y)) => {
            let key = |w: u32| if 2 * w <= n { 2 * w } else { 2 * (n - w) + 1 };
            key(*x).cmp(&key(*y))
        }
        (IrrepId::TwiceSpin(x), IrrepId::TwiceSpin(y)) => y.cmp(x),
        (IrrepId::Residue(x), IrrepId::Residue(y)) => x.cmp(y),
        (IrrepId::Partition(x), IrrepId::Partition(y)) => x.cmp(y),
        _ => {
            let _ = group;
            Ordering::Equal
        }
    }
}

/// Sorts sectors by ascending multiplicity with a fixed per-group tie-break:
/// U1 interleaves `0, n, 1, n-1, ...`, SU2 puts larger spin first, SU(d)
/// puts the lexicographically smaller partition first, Z_p keeps residue order
/// and custom tables keep their input order.
pub fn canonical_order(table: &SectorTable) -> SectorTable {
    let mut sectors = table.sectors.clone();
    sectors.sort_by(|a, b| a.m.cmp(&b.m).then_with(|| tie_break(&table.group, table.n, &a.id, &b.id)));
    SectorTable { group: table.group, n: table.n, sectors }
}

/// Smallest locality at which k-local symmetric gates are semi-universal.
pub fn semiuniversal_min_locality(group: &GroupSpec) -> Result<u32> {
    group.validate()?;
    match *group {
        GroupSpec::U1 | GroupSpec::SU2 => Ok(2),
        GroupSpec::Zp { p } => Ok(p),
        GroupSpec::SUd { .. } => Ok(3),
        GroupSpec::Custom => {
            Err(Error::InvalidGroup("semi-universality of a custom gate set is unknown; assert it explicitly".into()))
        }
    }
}
