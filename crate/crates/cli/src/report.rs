//! Output records and their JSON, CSV and text renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Number, Value};
use symdesign_core::suites::SuiteReport;
use symdesign_core::{ChargeMatrix, IrrepId, LowerBoundResult, SectorTable, TmaxResult, TmaxValue};

use crate::Format;

pub fn big(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

pub fn tmax_value(v: &TmaxValue) -> Value {
    match v {
        TmaxValue::Finite(x) => big(x),
        TmaxValue::Infinite => Value::String("infinity".into()),
    }
}

fn opt_u32(v: Option<u32>) -> Value {
    v.map_or(Value::Null, Value::from)
}

fn signed(v: &BigInt) -> String {
    if v.sign() == num_bigint::Sign::Minus {
        v.to_string()
    } else {
        format!("+{v}")
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(fields).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Result of one `t_max` computation.
#[derive(Debug, Clone)]
pub struct TmaxReport {
    pub group: String,
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub result: TmaxResult,
    pub certificate: Vec<String>,
    pub closed_form: Option<TmaxValue>,
    pub ms: Vec<BigInt>,
}

impl TmaxReport {
    /// `table` is the solver's (canonical) table; `display` fixes the order in
    /// which certificate entries and multiplicities are listed.
    pub fn new(
        group: String,
        n: Option<u32>,
        k: Option<u32>,
        result: TmaxResult,
        table: &SectorTable,
        display: &SectorTable,
        closed_form: Option<TmaxValue>,
    ) -> Self {
        let pos = |id: &IrrepId| display.position(id).unwrap_or(usize::MAX);
        let mut entries = result.certificate.as_ref().map(|c| c.entries(table)).unwrap_or_default();
        entries.sort_by_key(|(id, _)| pos(id));
        let certificate = entries.iter().map(|(id, q)| format!("{id}: {}", signed(q))).collect();
        TmaxReport { group, n, k, result, certificate, closed_form, ms: display.ms() }
    }

    pub fn agrees(&self) -> Option<bool> {
        self.closed_form.as_ref().map(|c| c == &self.result.tmax)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "n": opt_u32(self.n),
            "k": opt_u32(self.k),
            "tmax": tmax_value(&self.result.tmax),
            "lower_bound": tmax_value(&self.result.lower_bound),
            "certificate": self.certificate,
            "proven_exact": self.result.proven_exact,
            "closed_form": self.closed_form.as_ref().map_or(Value::Null, tmax_value),
            "agrees": self.agrees(),
            "ms": self.ms.iter().map(big).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.to_json()).expect("json")),
            Format::Csv => {
                let j = self.to_json();
                let keys = ["group", "n", "k", "tmax", "lower_bound", "proven_exact", "closed_form", "agrees"];
                let mut fields: Vec<String> = keys.iter().map(|k| cell(&j[*k])).collect();
                fields.push(self.certificate.join("; "));
                fields.push(self.ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";"));
                let mut header: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
                header.extend(["certificate".into(), "ms".into()]);
                csv_line(&header) + &csv_line(&fields)
            }
            Format::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "group         {}", self.group);
                if let (Some(n), Some(k)) = (self.n, self.k) {
                    let _ = writeln!(s, "n, k          {n}, {k}");
                }
                let _ = writeln!(s, "tmax          {}", self.result.tmax);
                let _ = writeln!(s, "lower bound   {}", self.result.lower_bound);
                let _ = writeln!(s, "proven exact  {}", self.result.proven_exact);
                if let Some(c) = &self.closed_form {
                    let verdict = if self.agrees() == Some(true) { "agrees" } else { "MISMATCH" };
                    let _ = writeln!(s, "closed form   {c} ({verdict})");
                }
                if self.result.semiuniversal_assumed {
                    let _ = writeln!(s, "note          semi-universality assumed, not checked");
                }
                if !self.certificate.is_empty() {
                    let _ = writeln!(s, "certificate");
                    for line in &self.certificate {
                        let _ = writeln!(s, "  {line}");
                    }
                }
                s
            }
        }
    }
}

pub fn render_lower_bound(group: &str, n: u32, k: u32, lb: &LowerBoundResult, format: Format) -> String {
    let delta: Vec<String> = lb.delta.iter().map(|d| d.to_string()).collect();
    let ell = lb.ell.map_or(Value::Null, Value::from);
    match format {
        Format::Json => {
            let j =
                json!({ "group": group, "n": n, "k": k, "ell": ell, "bound": tmax_value(&lb.bound), "delta": delta });
            format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
        }
        Format::Csv => {
            let header = ["group", "n", "k", "ell", "bound", "delta"].map(String::from);
            let row =
                [group.to_string(), n.to_string(), k.to_string(), cell(&ell), lb.bound.to_string(), delta.join(";")];
            csv_line(&header) + &csv_line(&row)
        }
        Format::Text => {
            let mut s = format!("lower bound   {}\n", lb.bound);
            match lb.ell {
                Some(l) => {
                    let _ = writeln!(s, "ell           {l}");
                    let _ = writeln!(s, "sectors       {}", delta.join(" "));
                }
                None => s.push_str("ell           none (every prefix has full rank)\n"),
            }
            s
        }
    }
}

pub fn render_matrix(group: &str, a: &ChargeMatrix, format: Format) -> String {
    let cols: Vec<String> = a.cols.iter().map(|c| c.to_string()).collect();
    let rows = a.entries.rows();
    match format {
        Format::Json => {
            let entries: Vec<Vec<Value>> = rows.iter().map(|r| r.iter().map(big).collect()).collect();
            let j = json!({
                "group": group,
                "n": a.n,
                "k": a.k,
                "rows": a.row_labels,
                "cols": cols,
                "entries": entries,
            });
            format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
        }
        Format::Csv => {
            let mut header = vec!["row".to_string()];
            header.extend(cols);
            let mut out = csv_line(&header);
            for (label, r) in a.row_labels.iter().zip(rows) {
                let mut f = vec![label.clone()];
                f.extend(r.iter().map(|x| x.to_string()));
                out += &csv_line(&f);
            }
            out
        }
        Format::Text => {
            let mut grid = vec![std::iter::once(String::new()).chain(cols).collect::<Vec<_>>()];
            for (label, r) in a.row_labels.iter().zip(rows) {
                grid.push(std::iter::once(label.clone()).chain(r.iter().map(|x| x.to_string())).collect());
            }
            aligned(&grid)
        }
    }
}

/// Right-aligned columns, first column left-aligned.
pub fn aligned(grid: &[Vec<String>]) -> String {
    let width = grid.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| grid.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in grid {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, s)| if i == 0 { format!("{s:<w$}", w = widths[i]) } else { format!("{s:>w$}", w = widths[i]) })
            .collect();
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}

pub fn render_suite(r: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let j = json!({ "suite": r.name, "checks": r.checks, "failures": r.failures, "passed": r.passed() });
            format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
        }
        Format::Csv => {
            let header = ["suite", "checks", "failures", "passed"].map(String::from);
            let row = [r.name.clone(), r.checks.to_string(), r.failures.len().to_string(), r.passed().to_string()];
            csv_line(&header) + &csv_line(&row)
        }
        Format::Text => {
            let mut s = format!("{r}\n");
            for f in r.failures.iter().take(20) {
                let _ = writeln!(s, "  {f}");
            }
            if r.failures.len() > 20 {
                let _ = writeln!(s, "  ... {} more", r.failures.len() - 20);
            }
            s
        }
    }
}
