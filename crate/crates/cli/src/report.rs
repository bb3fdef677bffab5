//! Report rows and their JSON Lines / CSV renderings.

use ceresa_core::{ClassifyRecord, CycloInt, ScanRecord};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Number;

use crate::args::Format;
use crate::error::CliError;

/// A report row: one JSON object per line, or one or more CSV lines.
pub trait Row: Serialize {
    fn csv_header() -> &'static [&'static str];
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn render<R: Row>(rows: &[R], format: Format) -> Result<String, CliError> {
    let fail = |e: &dyn std::fmt::Display| CliError::Invariant(format!("rendering failed: {e}"));
    match format {
        Format::Jsonl => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&serde_json::to_string(r).map_err(|e| fail(&e))?);
                out.push('\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(R::csv_header()).map_err(|e| fail(&e))?;
            for r in rows {
                for line in r.csv_rows() {
                    w.write_record(&line).map_err(|e| fail(&e))?;
                }
            }
            let bytes = w.into_inner().map_err(|e| fail(&e))?;
            String::from_utf8(bytes).map_err(|e| fail(&e))
        }
    }
}

pub fn number(n: &BigInt) -> Number {
    n.to_string().parse().expect("decimal integers are JSON numbers")
}

pub fn cyclo_numbers(v: &CycloInt) -> Vec<Number> {
    v.coeffs().iter().map(number).collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

impl Row for ScanRecord {
    fn csv_header() -> &'static [&'static str] {
        &["m", "a", "b", "genus", "hyperelliptic", "witness_i", "witness_j", "smooth_fixed_point"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.m.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.genus.to_string(),
            self.hyperelliptic.to_string(),
            opt(&self.witness.map(|w| w.0)),
            opt(&self.witness.map(|w| w.1)),
            self.smooth_fixed_point.to_string(),
        ]]
    }
}

impl Row for ClassifyRecord {
    fn csv_header() -> &'static [&'static str] {
        &[
            "m",
            "a",
            "b",
            "genus",
            "hyperelliptic",
            "cm_type",
            "stabilizer_order",
            "simple",
            "isogenous_to_hyperelliptic",
            "minimal",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.m.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.genus.to_string(),
            self.hyperelliptic.to_string(),
            join(&self.cm_type),
            self.stabilizer_order.to_string(),
            self.simple.to_string(),
            self.isogenous_to_hyperelliptic.to_string(),
            opt(&self.minimal),
        ]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalRow {
    pub m: u32,
    pub a: u32,
    pub b: u32,
    pub genus: u32,
    pub minimal: bool,
    /// Divisor `d` and label of the first obstructing subcover.
    pub obstruction_divisor: Option<u32>,
    pub obstruction: Option<[u32; 3]>,
}

impl Row for MinimalRow {
    fn csv_header() -> &'static [&'static str] {
        &["m", "a", "b", "genus", "minimal", "obstruction_divisor", "obstruction"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.m.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.genus.to_string(),
            self.minimal.to_string(),
            opt(&self.obstruction_divisor),
            self.obstruction.map_or_else(String::new, |o| join(&o)),
        ]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeStatus {
    Ok,
    Ramified,
    NormCap,
}

impl PrimeStatus {
    fn as_str(self) -> &'static str {
        match self {
            PrimeStatus::Ok => "ok",
            PrimeStatus::Ramified => "ramified",
            PrimeStatus::NormCap => "norm-cap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecValue {
    pub index: usize,
    /// Defining polynomial of the prime, ascending coefficients.
    pub g: Vec<u64>,
    /// Power-basis coordinates.
    pub tau: Vec<Number>,
    pub weil: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiRow {
    pub m: u32,
    pub a: u32,
    pub b: u32,
    pub p: u64,
    pub status: PrimeStatus,
    pub f: Option<u32>,
    pub specs: Vec<SpecValue>,
    pub local_factor: Option<Vec<Number>>,
}

impl Row for JacobiRow {
    fn csv_header() -> &'static [&'static str] {
        &["m", "a", "b", "p", "status", "f", "index", "g", "tau", "weil", "local_factor"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let head = vec![
            self.m.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            self.p.to_string(),
            self.status.as_str().to_string(),
            opt(&self.f),
        ];
        let lf = self.local_factor.as_deref().map_or_else(String::new, join);
        if self.specs.is_empty() {
            let mut row = head;
            row.extend([String::new(), String::new(), String::new(), String::new(), lf]);
            return vec![row];
        }
        self.specs
            .iter()
            .map(|s| {
                let mut row = head.clone();
                row.extend([
                    s.index.to_string(),
                    join(&s.g),
                    join(&s.tau),
                    s.weil.to_string(),
                    lf.clone(),
                ]);
                row
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalFactorRow {
    pub m: u32,
    pub chars: Vec<[u32; 2]>,
    pub p: u64,
    pub status: PrimeStatus,
    pub f: Option<u32>,
    /// The character product at each prime above `p`, power-basis coordinates.
    pub values: Vec<Vec<Number>>,
    pub coeffs: Option<Vec<Number>>,
}

impl Row for LocalFactorRow {
    fn csv_header() -> &'static [&'static str] {
        &["m", "chars", "p", "status", "f", "values", "coeffs"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let chars: Vec<String> = self.chars.iter().map(|[a, b]| format!("{a},{b}")).collect();
        let values: Vec<String> = self.values.iter().map(|v| join(v)).collect();
        vec![vec![
            self.m.to_string(),
            chars.join(";"),
            self.p.to_string(),
            self.status.as_str().to_string(),
            opt(&self.f),
            values.join("|"),
            self.coeffs.as_deref().map_or_else(String::new, join),
        ]]
    }
}
