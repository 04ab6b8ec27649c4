//! Exact computation of the maximal design order `t_max` reached by the uniform
//! distribution over circuits of k-local symmetry-respecting gates.
//!
//! The pipeline is: enumerate irrep sectors ([`symmetry`]), build the integer
//! charge matrix whose kernel lattice holds the unreachable center directions
//! ([`charge_matrix`]), then minimise the multiplicity-weighted L1 norm over that
//! lattice ([`solver`]). Closed-form evaluators live in [`closed_forms`] and
//! dense floating-point cross-checks in [`oracle`].

pub mod charge_matrix;
pub mod closed_forms;
pub mod combinat;
mod error;
pub mod exact_linalg;
pub mod oracle;
pub mod solver;
pub mod suites;
pub mod symmetry;

pub use charge_matrix::{
    build_chi, build_s, custom_matrix, parse_rational, sn_character, ChargeMatrix, CycleType, MatrixKind,
};
pub use closed_forms::{closed_tmax, closed_tmax_sud, ClosedFormTmax, DiagOperator, SudCase};
pub use error::{Error, Result};
pub use exact_linalg::{hnf, kernel_lattice, rank_exact, IntMatrix, LatticeBasis};
pub use solver::{
    brute_force_tmax, lower_bound, min_weighted_l1, tmax_exact, verify_certificate, Certificate, LowerBoundResult,
    SolveOptions, TmaxResult, TmaxValue,
};
pub use symmetry::{
    canonical_order, sectors, semiuniversal_min_locality, GroupSpec, IrrepId, Partition, Sector, SectorTable,
};

/// Builds the canonically ordered sector table and the matching charge matrix
/// for a built-in group: the usual entry point for a `t_max` computation.
pub fn problem(group: &GroupSpec, n: u32, k: u32) -> Result<(ChargeMatrix, SectorTable)> {
    let table = canonical_order(&sectors(group, n)?);
    let a = match group {
        GroupSpec::SUd { d } => build_chi(*d, n, k, None)?,
        _ => build_s(group, n, k)?,
    };
    let a = a.align_to(&table)?;
    Ok((a, table))
}

/// Problem for one SU(d) case of the table of results. The amended cases use
/// the character rows as custom charges bound to the SU(d) sectors, so the
/// solver needs `assume_semiuniversal` for them (see [`SudCase::amended`]).
pub fn sud_problem(d: u32, n: u32, case: SudCase) -> Result<(ChargeMatrix, SectorTable)> {
    let table = canonical_order(&sectors(&GroupSpec::sud(d)?, n)?);
    let classes = case.classes().iter().map(|c| CycleType::parse(c)).collect::<Result<Vec<_>>>()?;
    let k = case.locality().max(classes.iter().map(|c| c.support()).max().unwrap_or(1));
    let chi = build_chi(d, n, k.min(n), Some(&classes))?.align_to(&table)?;
    if !case.amended() {
        return Ok((chi, table));
    }
    let rows: Vec<Vec<num_rational::BigRational>> = chi
        .entries
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| num_rational::BigRational::from_integer(x.clone())).collect())
        .collect();
    let a = custom_matrix(&table.ms(), &rows, Some(chi.row_labels.clone()))?.relabel(&table)?;
    Ok((a, table))
}
