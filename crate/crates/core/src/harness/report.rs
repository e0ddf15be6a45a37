//! Verification reports: stable JSON and a plain-text summary.

use std::fmt::Write as _;

use serde::Serialize;

use crate::scalars::{Scalar, Tier};

/// Where a reported value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    EngineComputed,
    /// A closed-form expression taken from the reference derivation.
    ReferenceFormula,
    CalibrationConstant,
}

/// What a check compares against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// An exact constant stated by the reference derivation.
    ReferenceConstant,
    /// An independent hand or library oracle.
    DerivedOracle,
    /// Agreement of two engine paths.
    CrossPath,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Value {
    pub text: String,
    /// `[re, im]`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<[f64; 2]>,
}

impl Value {
    pub fn of<S: Scalar>(s: &S) -> Self {
        let c = s.to_complex();
        Value { text: s.to_string(), approx: Some([c.re, c.im]) }
    }

    pub fn text(t: impl Into<String>) -> Self {
        Value { text: t.into(), approx: None }
    }

    pub fn real(x: f64) -> Self {
        Value { text: format!("{x:e}"), approx: Some([x, 0.0]) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub expected: Value,
    pub basis: Basis,
    /// Hard checks decide the exit status; soft ones are informational.
    pub hard: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub provenance: Provenance,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Entry {
    pub fn engine(name: impl Into<String>, value: Value) -> Self {
        Entry { name: name.into(), provenance: Provenance::EngineComputed, value, check: None, note: None }
    }

    pub fn reference(name: impl Into<String>, value: Value) -> Self {
        Entry { name: name.into(), provenance: Provenance::ReferenceFormula, value, check: None, note: None }
    }

    pub fn calibration(name: impl Into<String>, value: Value) -> Self {
        Entry { name: name.into(), provenance: Provenance::CalibrationConstant, value, check: None, note: None }
    }

    pub fn hard(mut self, expected: Value, basis: Basis, pass: bool) -> Self {
        self.check = Some(Check { expected, basis, hard: true, pass });
        self
    }

    pub fn soft(mut self, expected: Value, basis: Basis, pass: bool) -> Self {
        self.check = Some(Check { expected, basis, hard: false, pass });
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn hard_failed(&self) -> bool {
        self.check.as_ref().is_some_and(|c| c.hard && !c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub entries: Vec<Entry>,
    /// Known disagreements between engine values and reference formulas.
    pub discrepancies: Vec<String>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), entries: Vec::new(), discrepancies: Vec::new() }
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn discrepancy(&mut self, d: impl Into<String>) {
        self.discrepancies.push(d.into());
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub chart: String,
    pub dim: usize,
    pub tier: Tier,
    pub order: i32,
    pub sections: Vec<Section>,
}

impl VerificationReport {
    pub fn empty() -> Self {
        VerificationReport { case_id: String::new(), chart: String::new(), dim: 0, tier: Tier::Exact, order: 0, sections: vec![] }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn hard_failures(&self) -> Vec<String> {
        self.sections
            .iter()
            .flat_map(|s| s.entries.iter().filter(|e| e.hard_failed()).map(move |e| format!("{}/{}", s.name, e.name)))
            .collect()
    }

    pub fn all_hard_pass(&self) -> bool {
        self.hard_failures().is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => emit_json(report),
        Format::Text => emit_text(report),
    }
}

pub fn emit_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn emit_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case {} (chart {}, n = {}, tier {}, order {})", report.case_id, report.chart, report.dim, report.tier, report.order);
    for s in &report.sections {
        let _ = writeln!(out, "\n[{}]", s.name);
        for e in &s.entries {
            let status = match &e.check {
                Some(c) if c.pass => "ok  ",
                Some(c) if c.hard => "FAIL",
                Some(_) => "diff",
                None => "    ",
            };
            let _ = write!(out, "  {status} {:<36} = {}", e.name, e.value.text);
            if let Some(c) = &e.check {
                let _ = write!(out, "   (expected {})", c.expected.text);
            }
            let _ = writeln!(out);
            if let Some(n) = &e.note {
                let _ = writeln!(out, "       {n}");
            }
        }
        for d in &s.discrepancies {
            let _ = writeln!(out, "  note: {d}");
        }
    }
    let failures = report.hard_failures();
    if failures.is_empty() {
        let _ = writeln!(out, "\nall hard checks passed");
    } else {
        let _ = writeln!(out, "\n{} hard check(s) failed: {}", failures.len(), failures.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{sphere_volume, ExactScalar};

    #[test]
    fn empty_report_is_valid_json() {
        let s = emit_json(&VerificationReport::empty());
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["sections"], serde_json::json!([]));
    }

    #[test]
    fn exact_values_print_with_pi_powers() {
        assert_eq!(Value::of(&sphere_volume(4)).text, "8/3·π^2");
        assert_eq!(Value::of(&ExactScalar::rational(-1, 2)).text, "-1/2");
    }

    #[test]
    fn failures_are_listed() {
        let mut r = VerificationReport::empty();
        let mut s = Section::new("x");
        s.push(Entry::engine("a", Value::real(1.0)).hard(Value::real(2.0), Basis::DerivedOracle, false));
        s.push(Entry::engine("b", Value::real(1.0)).soft(Value::real(2.0), Basis::CrossPath, false));
        r.sections.push(s);
        assert_eq!(r.hard_failures(), vec!["x/a".to_string()]);
        assert!(emit_text(&r).contains("FAIL"));
    }
}
