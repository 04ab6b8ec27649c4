//! Reproduction of the tables of results: the solver against the closed forms.

use rayon::prelude::*;
use serde_json::{json, Value};
use symdesign_core::{
    closed_tmax, closed_tmax_sud, problem, sud_problem, tmax_exact, ClosedFormTmax, GroupSpec, Result, SolveOptions,
    SudCase, TmaxValue,
};

use crate::report::{aligned, tmax_value};
use crate::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    #[value(name = "table1")]
    Table1,
    #[value(name = "table2")]
    Table2,
    #[value(name = "tableSUd", alias = "tablesud")]
    TableSud,
}

#[derive(Debug, Clone)]
enum RowSpec {
    Builtin(GroupSpec, u32),
    Sud(u32, SudCase),
}

impl RowSpec {
    fn group(&self) -> String {
        match self {
            RowSpec::Builtin(g, _) => g.to_string(),
            RowSpec::Sud(d, _) => format!("sud(d={d})"),
        }
    }

    fn case(&self) -> String {
        match self {
            RowSpec::Builtin(_, k) => format!("k={k}"),
            RowSpec::Sud(_, c) => c.label().to_string(),
        }
    }

    fn locality(&self) -> u32 {
        match self {
            RowSpec::Builtin(_, k) => *k,
            RowSpec::Sud(_, c) => c.locality(),
        }
    }

    fn closed(&self, n: u32) -> Result<ClosedFormTmax> {
        match self {
            RowSpec::Builtin(g, k) => closed_tmax(g, n, *k),
            RowSpec::Sud(d, c) => closed_tmax_sud(*d, n, *c),
        }
    }

    fn solve(&self, n: u32) -> Result<TmaxValue> {
        let (a, t, opts) = match self {
            RowSpec::Builtin(g, k) => {
                let (a, t) = problem(g, n, *k)?;
                (a, t, SolveOptions::default())
            }
            RowSpec::Sud(d, c) => {
                let (a, t) = sud_problem(*d, n, *c)?;
                (a, t, SolveOptions { assume_semiuniversal: c.amended(), ..Default::default() })
            }
        };
        Ok(tmax_exact(&a, &t, &opts)?.tmax)
    }
}

fn specs(which: Which, ds: &[u32]) -> Vec<RowSpec> {
    let u1 = (2..=6).map(|k| RowSpec::Builtin(GroupSpec::U1, k));
    let su2 = (2..=7).map(|k| RowSpec::Builtin(GroupSpec::SU2, k));
    match which {
        Which::Table1 => (2..=7).map(|p| RowSpec::Builtin(GroupSpec::Zp { p }, p)).chain(u1).chain(su2).collect(),
        Which::Table2 => u1
            .chain(su2)
            .chain(ds.iter().flat_map(|&d| [SudCase::K3, SudCase::K4].map(|c| RowSpec::Sud(d, c))))
            .collect(),
        Which::TableSud => ds
            .iter()
            .flat_map(|&d| SudCase::ALL.into_iter().filter(move |c| d >= c.min_d()).map(move |c| RowSpec::Sud(d, c)))
            .collect(),
    }
}

/// One row of a reproduced table.
#[derive(Debug, Clone)]
pub struct Row {
    pub group: String,
    pub case: String,
    pub n: u32,
    pub tmax: Option<TmaxValue>,
    pub closed_form: Option<TmaxValue>,
    pub valid_from_n: Option<u32>,
    pub agrees: bool,
    pub error: Option<String>,
}

impl Row {
    fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "case": self.case,
            "n": self.n,
            "tmax": self.tmax.as_ref().map_or(Value::Null, tmax_value),
            "closed_form": self.closed_form.as_ref().map_or(Value::Null, tmax_value),
            "valid_from_n": self.valid_from_n,
            "agrees": self.agrees,
            "error": self.error,
        })
    }
}

pub fn build(which: Which, ns: std::ops::RangeInclusive<u32>, ds: &[u32], include_below: bool) -> Vec<Row> {
    let mut jobs = Vec::new();
    for spec in specs(which, ds) {
        for n in ns.clone() {
            // Z_p needs k < n; elsewhere k = n is the full group
            if n <= spec.locality() {
                continue;
            }
            let closed = spec.closed(n).ok();
            let applies = closed.as_ref().is_some_and(|c| c.applies(n));
            if applies || include_below {
                jobs.push((spec.clone(), n, closed));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(spec, n, closed)| {
            let solved = spec.solve(n);
            let closed_form = closed.as_ref().map(|c| c.value.clone());
            let (tmax, error) = match solved {
                Ok(t) => (Some(t), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let agrees = tmax.is_some() && tmax == closed_form;
            Row {
                group: spec.group(),
                case: spec.case(),
                n,
                tmax,
                closed_form,
                valid_from_n: closed.map(|c| c.valid_from_n),
                agrees,
                error,
            }
        })
        .collect()
}

pub fn render(rows: &[Row], format: Format) -> String {
    let header = ["group", "case", "n", "tmax", "closed_form", "valid_from_n", "agrees"];
    let fields = |r: &Row| {
        vec![
            r.group.clone(),
            r.case.clone(),
            r.n.to_string(),
            r.tmax.as_ref().map_or_else(|| r.error.clone().unwrap_or_default(), |t| t.to_string()),
            r.closed_form.as_ref().map(|t| t.to_string()).unwrap_or_default(),
            r.valid_from_n.map(|v| v.to_string()).unwrap_or_default(),
            r.agrees.to_string(),
        ]
    };
    match format {
        Format::Json => {
            let arr: Vec<Value> = rows.iter().map(Row::to_json).collect();
            format!("{}\n", serde_json::to_string_pretty(&arr).expect("json"))
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
            w.write_record(header).expect("in-memory write");
            for r in rows {
                w.write_record(fields(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
        Format::Text => {
            let mut grid = vec![header.iter().map(|h| h.to_string()).collect::<Vec<_>>()];
            grid.extend(rows.iter().map(fields));
            aligned(&grid)
        }
    }
}
