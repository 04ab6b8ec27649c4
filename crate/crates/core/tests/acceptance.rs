//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use symdesign_core::closed_forms::{u1_f_norm, SudCase};
use symdesign_core::suites::{self, SuiteReport};
use symdesign_core::{
    build_chi, canonical_order, closed_tmax, closed_tmax_sud, custom_matrix, lower_bound, problem, sectors, tmax_exact,
    verify_certificate, ChargeMatrix, CycleType, GroupSpec, SectorTable, SolveOptions, TmaxValue,
};

/// Accumulates failures for one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn suite(&mut self, r: SuiteReport) {
        self.checks += r.checks;
        self.failures.extend(r.failures.into_iter().map(|f| format!("{}: {f}", r.name)));
    }
}

/// Lower bound vs solver pairs gathered while running criteria 1 to 4.
type Bounds = Vec<(String, TmaxValue, TmaxValue)>;

fn solve(
    tally: &mut Tally,
    bounds: &mut Bounds,
    label: &str,
    a: &ChargeMatrix,
    table: &SectorTable,
    opts: &SolveOptions,
) -> Option<TmaxValue> {
    match tmax_exact(a, table, opts) {
        Ok(r) => {
            let cert_ok = match (&r.tmax, &r.certificate) {
                (TmaxValue::Infinite, None) => true,
                (TmaxValue::Finite(_), Some(c)) => verify_certificate(c, a, table),
                _ => false,
            };
            tally.check(cert_ok && r.proven_exact, || format!("{label}: bad certificate"));
            let lb = lower_bound(a, table).map(|l| l.bound).unwrap_or(TmaxValue::Infinite);
            bounds.push((label.to_string(), lb, r.tmax.clone()));
            Some(r.tmax)
        }
        Err(e) => {
            tally.check(false, || format!("{label}: {e}"));
            None
        }
    }
}

fn expect(tally: &mut Tally, label: &str, got: Option<TmaxValue>, want: &TmaxValue) {
    if let Some(got) = got {
        tally.check(&got == want, || format!("{label}: got {got}, want {want}"));
    }
}

fn fin(v: i64) -> TmaxValue {
    TmaxValue::finite(v)
}

fn builtin(tally: &mut Tally, bounds: &mut Bounds, g: &GroupSpec, n: u32, k: u32) -> Option<TmaxValue> {
    let label = format!("{g} n={n} k={k}");
    match problem(g, n, k) {
        Ok((a, table)) => solve(tally, bounds, &label, &a, &table, &SolveOptions::default()),
        Err(e) => {
            tally.check(false, || format!("{label}: {e}"));
            None
        }
    }
}

fn closed(g: &GroupSpec, n: u32, k: u32) -> (TmaxValue, u32) {
    let c = closed_tmax(g, n, k).expect("closed form");
    (c.value, c.valid_from_n)
}

fn c1(b: &mut Bounds) -> Tally {
    let mut t = Tally::default();
    for k in 1..=6u32 {
        let from = closed(&GroupSpec::U1, 34, k).1;
        for n in from..=34 {
            let (want, _) = closed(&GroupSpec::U1, n, k);
            let ni = n as i64;
            let table_poly = match k {
                2 => Some(fin(2 * (ni - 1) - 1)),
                3 => Some(fin(ni * (ni - 2) - 1)),
                4 => Some(fin(2 * (ni - 1) * (ni - 3) - 1)),
                _ => None,
            };
            if let Some(p) = table_poly {
                t.check(p == want, || format!("U1 closed form n={n} k={k}"));
            }
            let got = builtin(&mut t, b, &GroupSpec::U1, n, k);
            expect(&mut t, &format!("U1 n={n} k={k}"), got, &want);
        }
    }
    t
}

fn c2(b: &mut Bounds) -> Tally {
    let mut t = Tally::default();
    for k in 2..=7u32 {
        let from = closed(&GroupSpec::SU2, 41, k).1.max(13);
        for n in from..=41 {
            let s = k / 2;
            let half = symdesign_core::combinat::gbinom_half(n as i64 - 1, s as i64 + 1);
            let want = half * BigRational::from_integer(BigInt::from(2).pow(2 * s + 1));
            let want = TmaxValue::Finite(want.to_integer() - 1);
            t.check(closed(&GroupSpec::SU2, n, k).0 == want, || format!("SU2 closed form n={n} k={k}"));
            let got = builtin(&mut t, b, &GroupSpec::SU2, n, k);
            expect(&mut t, &format!("SU2 n={n} k={k}"), got, &want);
        }
    }
    t
}

fn c3(b: &mut Bounds) -> Tally {
    let mut t = Tally::default();
    for p in 2..=7u32 {
        let g = GroupSpec::Zp { p };
        for n in p + 1..=13 {
            for k in p..n {
                let want =
                    if p % 2 == 0 { TmaxValue::Finite(BigInt::from(2).pow(n - 1) - 1) } else { TmaxValue::Infinite };
                let got = builtin(&mut t, b, &g, n, k);
                expect(&mut t, &format!("Z{p} n={n} k={k}"), got, &want);
            }
        }
    }
    t
}

fn sud_problem(d: u32, n: u32, k: u32, classes: &[&str]) -> (ChargeMatrix, SectorTable) {
    let table = canonical_order(&sectors(&GroupSpec::SUd { d }, n).unwrap());
    let cls: Vec<CycleType> = classes.iter().map(|c| CycleType::parse(c).unwrap()).collect();
    let a = build_chi(d, n, k, Some(&cls)).unwrap().align_to(&table).unwrap();
    (a, table)
}

fn sv_problem(d: u32, n: u32, classes: &[&str]) -> (ChargeMatrix, SectorTable) {
    let (chi, table) = sud_problem(d, n, 2, classes);
    let rows: Vec<Vec<BigRational>> =
        chi.entries.rows().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let a = custom_matrix(&table.ms(), &rows, Some(chi.row_labels.clone())).unwrap().relabel(&table).unwrap();
    (a, table)
}

fn c4(b: &mut Bounds) -> Tally {
    let mut t = Tally::default();
    let override_opts = SolveOptions { assume_semiuniversal: true, ..Default::default() };
    let all4 = ["(1)", "(12)", "(123)", "(12)(34)", "(1234)"];
    let tgroup = ["(1)", "(12)", "(123)", "(12)(34)"];
    for d in 3..=5u32 {
        for n in 15..=25u32 {
            let ni = n as i64;
            let want = fin((ni - 1) * (ni - 3) - 1);
            let c = closed_tmax_sud(d, n, SudCase::K3).unwrap();
            t.check(c.value == want, || format!("SU{d} k=3 closed form n={n}"));
            let (a, table) = sud_problem(d, n, 3, &all4[..3]);
            let got = solve(&mut t, b, &format!("SU{d} n={n} k=3"), &a, &table, &SolveOptions::default());
            expect(&mut t, &format!("SU{d} n={n} k=3"), got, &want);

            let want = fin((ni + 1) * (ni - 2) / 2 - 1);
            let c = closed_tmax_sud(d, n, SudCase::K2Sv).unwrap();
            t.check(c.value == want, || format!("SU{d} k=2+SV closed form n={n}"));
            let (a, table) = sv_problem(d, n, &all4[..2]);
            let got = solve(&mut t, b, &format!("SU{d} n={n} k=2+SV"), &a, &table, &override_opts);
            expect(&mut t, &format!("SU{d} n={n} k=2+SV"), got, &want);
        }
        for n in 22..=26u32 {
            let ni = n as i64;
            let want = fin(2 * (ni - 1) * (ni - 3) * (ni - 5) / 3 - 1);
            t.check(closed_tmax_sud(d, n, SudCase::K4).unwrap().value == want, || format!("SU{d} k=4 closed n={n}"));
            let (a, table) = sud_problem(d, n, 4, &all4);
            let got = solve(&mut t, b, &format!("SU{d} n={n} k=4"), &a, &table, &SolveOptions::default());
            expect(&mut t, &format!("SU{d} n={n} k=4"), got, &want);
            if d >= 4 {
                let want = fin((ni - 3) * (2 * ni * ni - 3 * ni + 4) / 6 - 1);
                t.check(closed_tmax_sud(d, n, SudCase::TGroup).unwrap().value == want, || {
                    format!("SU{d} T closed n={n}")
                });
                let (a, table) = sud_problem(d, n, 4, &tgroup);
                let got = solve(&mut t, b, &format!("SU{d} n={n} T"), &a, &table, &SolveOptions::default());
                expect(&mut t, &format!("SU{d} n={n} T"), got, &want);
            }
        }
    }
    t
}

fn c5(b: &Bounds) -> Tally {
    let mut t = Tally::default();
    for (label, lb, tmax) in b {
        t.check(lb <= tmax, || format!("{label}: lower bound {lb} > tmax {tmax}"));
    }
    let opts = SolveOptions { assume_semiuniversal: true, ..Default::default() };
    for n in 5..=41u32 {
        let table = canonical_order(&sectors(&GroupSpec::SU2, n).unwrap());
        let a = custom_matrix(&table.ms(), &[], None).unwrap().relabel(&table).unwrap();
        let want = fin(n as i64 - 2);
        let lb = lower_bound(&a, &table).map(|l| l.bound);
        t.check(lb.as_ref() == Ok(&want), || format!("SU2 identity row n={n}: lower bound {lb:?}"));
        let exact = tmax_exact(&a, &table, &opts).map(|r| r.tmax);
        t.check(exact.as_ref() == Ok(&want), || format!("SU2 identity row n={n}: tmax {exact:?}"));
    }
    t
}

fn c6() -> Tally {
    let mut t = Tally::default();
    t.suite(suites::identities_u1(30));
    t.suite(suites::identities_su2(30));
    t.suite(suites::characters());
    t
}

fn c7() -> Tally {
    let mut t = Tally::default();
    let count = suites::brute_instances(8, 3).len();
    t.check(count >= 50, || format!("only {count} brute-force instances"));
    t.suite(suites::solver_brute(8, 3));
    t
}

fn c8() -> Tally {
    let mut t = Tally::default();
    t.suite(suites::dense_oracle(12, 2024, 500));
    t
}

fn c9() -> Tally {
    let mut t = Tally::default();
    let mut scratch = Vec::new();
    let want = TmaxValue::Finite(u1_f_norm(6, 4).unwrap() / 2 - 1);
    let got = builtin(&mut t, &mut scratch, &GroupSpec::U1, 6, 3);
    expect(&mut t, "U1 n=6 k=3", got, &want);
    for n in [16u32, 17] {
        for k in [4u32, 5] {
            let got = builtin(&mut t, &mut scratch, &GroupSpec::SU2, n, k);
            expect(&mut t, &format!("SU2 n={n} k={k}"), got, &closed(&GroupSpec::SU2, n, k).0);
        }
    }
    t
}

fn report(id: u32, desc: &str, limit: Duration, run: impl FnOnce() -> Tally) -> bool {
    let start = Instant::now();
    let t = run();
    let elapsed = start.elapsed();
    let ok = t.failures.is_empty() && elapsed <= limit;
    let status = if ok { "PASS" } else { "FAIL" };
    println!(
        "{status} criterion {id}: {desc} ({} checks, {} failures, {:.2?} of {:?})",
        t.checks,
        t.failures.len(),
        elapsed,
        limit
    );
    for f in t.failures.iter().take(10) {
        println!("    {f}");
    }
    ok
}

fn main() -> ExitCode {
    let mut bounds = Bounds::new();
    let secs = Duration::from_secs;
    let results = [
        report(1, "U(1) t_max for k=1..6 up to n=34", secs(60), || c1(&mut bounds)),
        report(2, "SU(2) t_max for k=2..7 up to n=41", secs(60), || c2(&mut bounds)),
        report(3, "Z_p t_max for p=2..7 up to n=13", secs(10), || c3(&mut bounds)),
        report(4, "SU(d) t_max for d=3,4,5 (k=3, k=4, T, k=2+SV)", secs(300), || c4(&mut bounds)),
        report(5, "lower bound soundness and the SU(2) identity row", secs(60), || c5(&bounds)),
        report(6, "exact identity suites", secs(60), c6),
        report(7, "brute-force oracle agreement", secs(60), c7),
        report(8, "dense operator checks", secs(180), c8),
        report(9, "small-case confirmations", secs(60), c9),
    ];
    if results.iter().all(|&r| r) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
