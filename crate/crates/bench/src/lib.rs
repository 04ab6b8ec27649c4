//! Benchmark fixtures shared by the criterion targets.

use symdesign_core::{problem, sud_problem, ChargeMatrix, GroupSpec, SectorTable, SudCase};

/// A prepared problem: charge matrix aligned to its canonical table.
pub struct Fixture {
    pub name: String,
    pub a: ChargeMatrix,
    pub table: SectorTable,
}

pub fn builtin(group: GroupSpec, n: u32, k: u32) -> Fixture {
    let (a, table) = problem(&group, n, k).expect("fixture");
    Fixture { name: format!("{group}/n={n}/k={k}"), a, table }
}

pub fn sud(d: u32, n: u32, case: SudCase) -> Fixture {
    let (a, table) = sud_problem(d, n, case).expect("fixture");
    Fixture { name: format!("sud{d}/{}/n={n}", case.label()), a, table }
}

/// Solver workloads of increasing size.
pub fn solver_fixtures() -> Vec<Fixture> {
    vec![
        builtin(GroupSpec::U1, 20, 2),
        builtin(GroupSpec::U1, 40, 4),
        builtin(GroupSpec::SU2, 40, 4),
        builtin(GroupSpec::zp(5).unwrap(), 30, 4),
        sud(3, 22, SudCase::K3),
        sud(3, 26, SudCase::K4),
    ]
}
