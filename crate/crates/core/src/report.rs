//! Structured verification results and their serialization.
//!
//! JSON output is key-sorted, locale-independent and writes every float with
//! 17 significant digits, so two runs with identical inputs are byte-identical.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::linalg::Cluster;

pub const SCHEMA_VERSION: &str = "1";

/// Labels an expected value may cite. Every [`Check::tag`] is one of these.
pub const KNOWN_TAGS: &[&str] = &[
    "quaternion-relations",
    "JJnu-properties",
    "max-sectional-curvature",
    "eq-G2-curvature",
    "eq-JX",
    "almost-contact",
    "eq-induced-hyp",
    "phi-nu-phi-commutation",
    "eq-Gauss-real-hyp",
    "eq-normal-Jacobi-operator",
    "eq-semi-parallel",
    "eq-xi-representation",
    "eq-phi-k-xi-representation",
    "eq-RN-xi",
    "eq-RN-xi-k",
    "eq-RN-phi-k-xi",
    "eq-RN(R(xi,xi-kappa)xi)",
    "eq-A-invariant",
    "eq-R(xi,xi-kappa)xi",
    "eq-D7",
    "eq-D9",
    "eq-D10",
    "lem-1",
    "lem-2",
    "eq-f4",
    "eq-f5",
    "eq-f6",
    "eq-f7",
    "prop-A",
    "prop-B",
    "eq-B1",
    "eq-B2",
    "eq-B3",
    "eq-B4",
    "eq-B5",
    "eq-B6",
    "th-main",
];

pub fn is_known_tag(tag: &str) -> bool {
    KNOWN_TAGS.contains(&tag)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Paper,
    DerivedOracle,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    /// `deviation = |measured - expected|`
    Absolute,
    /// `deviation = |measured - expected| / |expected|`
    Relative,
    /// `deviation = measured - expected`; passes when strictly positive.
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub tag: String,
    pub description: String,
    pub measured: f64,
    pub expected: f64,
    pub provenance: Provenance,
    pub mode: CheckMode,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Expected values with magnitude below this are compared absolutely even in
/// relative checks.
const RELATIVE_SCALE_FLOOR: f64 = 1e-9;

impl Check {
    pub fn absolute(
        tag: &str,
        description: impl Into<String>,
        measured: f64,
        expected: f64,
        provenance: Provenance,
        tolerance: f64,
    ) -> Self {
        let deviation = (measured - expected).abs();
        Check {
            tag: tag.to_owned(),
            description: description.into(),
            measured,
            expected,
            provenance,
            mode: CheckMode::Absolute,
            deviation,
            tolerance,
            pass: deviation < tolerance,
        }
    }

    /// A residual norm that must vanish.
    pub fn vanishes(
        tag: &str,
        description: impl Into<String>,
        residual: f64,
        provenance: Provenance,
        tolerance: f64,
    ) -> Self {
        Self::absolute(tag, description, residual, 0.0, provenance, tolerance)
    }

    /// Relative comparison; falls back to an absolute comparison against
    /// `abs_floor` when the expected value is (numerically) zero.
    pub fn relative(
        tag: &str,
        description: impl Into<String>,
        measured: f64,
        expected: f64,
        provenance: Provenance,
        rel_tol: f64,
        abs_floor: f64,
    ) -> Self {
        if expected.abs() < RELATIVE_SCALE_FLOOR {
            return Self::absolute(tag, description, measured, expected, provenance, abs_floor);
        }
        let deviation = (measured - expected).abs() / expected.abs();
        Check {
            tag: tag.to_owned(),
            description: description.into(),
            measured,
            expected,
            provenance,
            mode: CheckMode::Relative,
            deviation,
            tolerance: rel_tol,
            pass: deviation < rel_tol,
        }
    }

    /// Passes when `measured > bound`.
    pub fn exceeds(
        tag: &str,
        description: impl Into<String>,
        measured: f64,
        bound: f64,
        provenance: Provenance,
    ) -> Self {
        let deviation = measured - bound;
        Check {
            tag: tag.to_owned(),
            description: description.into(),
            measured,
            expected: bound,
            provenance,
            mode: CheckMode::LowerBound,
            deviation,
            tolerance: 0.0,
            pass: deviation > 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Largest deviation among absolute and relative checks.
    pub fn max_deviation(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.mode != CheckMode::LowerBound)
            .fold(0.0_f64, |acc, c| acc.max(c.deviation))
    }

    pub fn find(&self, description_prefix: &str) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| c.description.starts_with(description_prefix))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithPaper,
    DeviationFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstruction {
    pub name: String,
    pub value: f64,
    pub closed_form: String,
    pub closed_form_value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_type_b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance_override: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub scenario: String,
    pub parameter: String,
    pub grid: Vec<f64>,
    pub obstructions: Vec<f64>,
    pub closed_forms: Vec<f64>,
    pub closed_form: String,
    pub min_abs_obstruction: f64,
    pub max_closed_form_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub label: String,
    pub clusters: Vec<Cluster>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub scenario: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub obstructions: Vec<Obstruction>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: Verdict,
    pub seed: u64,
    pub runtime_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spectra: Vec<SpectrumReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweeps: Vec<SweepReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<Report>,
}

impl Report {
    pub fn new(scenario: impl Into<String>, params: Params, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.to_owned(),
            scenario: scenario.into(),
            params,
            checks: Vec::new(),
            obstructions: Vec::new(),
            notes: Vec::new(),
            verdict: Verdict::ConsistentWithPaper,
            seed,
            runtime_ms: None,
            spectra: Vec::new(),
            sweeps: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn obstruction(&mut self, name: &str, value: f64, closed_form: &str, closed_form_value: f64) {
        self.obstructions.push(Obstruction {
            name: name.to_owned(),
            value,
            closed_form: closed_form.to_owned(),
            closed_form_value,
        });
    }

    /// All checks of this report and its sections, depth first.
    pub fn all_checks(&self) -> Vec<&Check> {
        let mut out: Vec<&Check> = self.checks.iter().collect();
        for s in &self.sections {
            out.extend(s.all_checks());
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        self.all_checks().iter().all(|c| c.pass)
    }

    /// Recomputes the verdict of this report and every section.
    pub fn finalize(mut self) -> Self {
        self.sections = self.sections.into_iter().map(Report::finalize).collect();
        self.verdict = if self.all_passed() {
            Verdict::ConsistentWithPaper
        } else {
            Verdict::DeviationFound
        };
        self
    }

    pub fn find_check(&self, description_prefix: &str) -> Option<&Check> {
        self.all_checks()
            .into_iter()
            .find(|c| c.description.starts_with(description_prefix))
    }

    pub fn find_section(&self, scenario: &str) -> Option<&Report> {
        self.sections.iter().find(|s| s.scenario == scenario)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

pub fn emit_report(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => Ok(to_json(report)?.into_bytes()),
        Format::Markdown => Ok(to_markdown(report).into_bytes()),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<Report> {
    Ok(serde_json::from_slice(bytes)?)
}

pub fn to_json(report: &Report) -> Result<String> {
    let value = serde_json::to_value(report)?;
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    Ok(out)
}

/// 17 significant digits, exponent form, independent of locale.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    format!("{x:.16e}")
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, indent + 1);
                write_value(out, item, indent + 1);
            }
            newline(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            // serde_json::Map is a BTreeMap without `preserve_order`; sort anyway.
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, indent + 1);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[key.as_str()], indent + 1);
            }
            newline(out, indent);
            out.push('}');
        }
    }
}

fn newline(out: &mut String, indent: usize) {
    out.push('\n');
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

fn fmt_sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn to_markdown(report: &Report) -> String {
    let mut out = String::new();
    write_markdown(&mut out, report, 1);
    out
}

fn write_markdown(out: &mut String, report: &Report, level: usize) {
    let hashes = "#".repeat(level.min(6));
    let _ = writeln!(out, "{hashes} {}\n", report.scenario);
    let verdict = match report.verdict {
        Verdict::ConsistentWithPaper => "consistent-with-paper",
        Verdict::DeviationFound => "deviation-found",
    };
    let _ = writeln!(out, "verdict: **{verdict}**, seed {}, schema {}\n", report.seed, report.schema_version);

    if let Ok(Value::Object(params)) = serde_json::to_value(&report.params) {
        if !params.is_empty() {
            out.push_str("| parameter | value |\n|---|---|\n");
            for (k, v) in &params {
                let shown = match v.as_f64() {
                    Some(x) if !v.is_u64() => fmt6(x),
                    _ => v.to_string(),
                };
                let _ = writeln!(out, "| {k} | {shown} |");
            }
            out.push('\n');
        }
    }

    if !report.obstructions.is_empty() {
        out.push_str("| obstruction | value | closed form | closed-form value |\n|---|---|---|---|\n");
        for o in &report.obstructions {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                o.name,
                fmt6(o.value),
                o.closed_form,
                fmt6(o.closed_form_value)
            );
        }
        out.push('\n');
    }

    if !report.checks.is_empty() {
        out.push_str("| tag | description | measured | expected | provenance | mode | deviation | tolerance | pass |\n");
        out.push_str("|---|---|---|---|---|---|---|---|---|\n");
        for c in &report.checks {
            let prov = match c.provenance {
                Provenance::Paper => "paper",
                Provenance::DerivedOracle => "derived-oracle",
                Provenance::Trivial => "trivial",
            };
            let mode = match c.mode {
                CheckMode::Absolute => "abs",
                CheckMode::Relative => "rel",
                CheckMode::LowerBound => "lower-bound",
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                c.tag,
                c.description.replace('|', "\\|"),
                fmt6(c.measured),
                fmt6(c.expected),
                prov,
                mode,
                fmt_sci(c.deviation),
                fmt_sci(c.tolerance),
                if c.pass { "yes" } else { "**NO**" }
            );
        }
        out.push('\n');
    }

    for s in &report.spectra {
        let _ = writeln!(out, "spectrum `{}`:\n", s.label);
        out.push_str("| eigenvalue | multiplicity |\n|---|---|\n");
        for c in &s.clusters {
            let _ = writeln!(out, "| {} | {} |", fmt6(c.value), c.multiplicity);
        }
        out.push('\n');
    }

    for s in &report.sweeps {
        let _ = writeln!(
            out,
            "sweep `{}` over {} ({} points): min |obstruction| {}, max closed-form deviation {}\n",
            s.scenario,
            s.parameter,
            s.grid.len(),
            fmt6(s.min_abs_obstruction),
            fmt_sci(s.max_closed_form_deviation)
        );
        let _ = writeln!(out, "| {} | obstruction | {} |\n|---|---|---|", s.parameter, s.closed_form);
        for ((x, o), c) in s.grid.iter().zip(&s.obstructions).zip(&s.closed_forms) {
            let _ = writeln!(out, "| {} | {} | {} |", fmt6(*x), fmt6(*o), fmt6(*c));
        }
        out.push('\n');
    }

    for n in &report.notes {
        let _ = writeln!(out, "- note: {n}");
    }
    if !report.notes.is_empty() {
        out.push('\n');
    }

    for s in &report.sections {
        write_markdown(out, s, level + 1);
    }
}
