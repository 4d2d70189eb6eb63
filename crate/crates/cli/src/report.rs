//! Report records and their two renderings.
//!
//! Every report is a serde record. The structured rendering is JSON; the text
//! rendering flattens the same JSON into `path = value` lines, so both always
//! carry the same data. Field order follows declaration order.

use std::collections::BTreeMap;

use contractio::batch::GroupChecks;
use contractio::series::{FactorClass, SeriesChain, SeriesEngine};
use contractio::theorems::{ClassificationLabel, StructureReport};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub module: String,
}

impl From<&FactorClass> for FactorReport {
    fn from(c: &FactorClass) -> Self {
        let module = c.module().to_string();
        match c {
            FactorClass::TorsionSimple(l) | FactorClass::TorsionChief(l) => FactorReport {
                kind: if matches!(c, FactorClass::TorsionSimple(_)) {
                    "torsion-simple"
                } else {
                    "torsion-chief"
                },
                label: Some(l.to_string()),
                p: None,
                f: None,
                precision: None,
                certification: None,
                witness: None,
                module,
            },
            FactorClass::PadicSimple {
                p,
                f,
                precision,
                certification,
                witness,
            } => FactorReport {
                kind: "padic-simple",
                label: None,
                p: Some(*p),
                f: Some(f.to_string()),
                precision: *precision,
                certification: Some(certification.to_string()),
                witness: witness.map(|w| w.to_string()),
                module,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<usize>,
    pub module: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<FactorReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub mode: String,
    pub tie_break: String,
    pub certified: bool,
    pub length: usize,
    /// Chain terms from trivial to whole, one sub-object per block.
    pub terms: Vec<String>,
    pub steps: Vec<StepReport>,
}

pub fn factored_string(m: &BTreeMap<u64, u32>) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

impl SeriesReport {
    pub fn new(engine: &SeriesEngine<'_>, chain: &SeriesChain, tie_break: &str, certified: bool) -> Self {
        SeriesReport {
            mode: chain.mode.to_string(),
            tie_break: tie_break.to_string(),
            certified,
            length: chain.len(),
            terms: chain.terms.iter().map(|t| engine.describe(t)).collect(),
            steps: chain
                .steps
                .iter()
                .map(|s| StepReport {
                    block: s.block,
                    module: factored_string(&s.module),
                    factor: s.factor.as_ref().map(FactorReport::from),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    /// `None` when irreducibility could not be certified.
    pub simple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<FactorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClassificationReport {
    pub fn from_label(l: &ClassificationLabel) -> Self {
        ClassificationReport {
            simple: Some(true),
            label: Some(FactorReport::from(&l.class)),
            companion: l.companion.as_ref().map(|m| m.to_string()),
            note: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibleReport {
    pub p: u64,
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureSummary {
    pub torsion_blocks: Vec<usize>,
    pub divisible: Vec<DivisibleReport>,
    pub t_alpha: String,
    pub exponent: u64,
    pub samples: usize,
    pub max_root: u64,
    pub exponent_divides_t_alpha: bool,
    pub torsion_killed: bool,
    pub roots_exist: bool,
    pub roots_unique: bool,
    pub dichotomy: bool,
    pub recombination: bool,
}

impl From<&StructureReport> for StructureSummary {
    fn from(r: &StructureReport) -> Self {
        StructureSummary {
            torsion_blocks: r.torsion_blocks.clone(),
            divisible: r
                .divisible
                .iter()
                .map(|(p, b)| DivisibleReport { p: *p, blocks: b.clone() })
                .collect(),
            t_alpha: r.t_alpha.to_string(),
            exponent: r.exponent,
            samples: r.samples,
            max_root: r.max_root,
            exponent_divides_t_alpha: r.exponent_divides_t_alpha,
            torsion_killed: r.torsion_killed,
            roots_exist: r.roots_exist,
            roots_unique: r.roots_unique,
            dichotomy: r.dichotomy,
            recombination: r.recombination,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChecksReport {
    pub jordan_holder: bool,
    pub factor_modules: bool,
    pub multiplicativity: bool,
    pub length_bound: bool,
    pub canonical: bool,
    pub mode_weakening: bool,
    pub structure: bool,
    pub uncertified: bool,
}

impl From<&GroupChecks> for ChecksReport {
    fn from(c: &GroupChecks) -> Self {
        ChecksReport {
            jordan_holder: c.jordan_holder,
            factor_modules: c.factor_modules,
            multiplicativity: c.multiplicativity,
            length_bound: c.length_bound,
            canonical: c.canonical,
            mode_weakening: c.mode_weakening,
            structure: c.structure,
            uncertified: c.uncertified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub blocks: Vec<String>,
    pub delta: String,
    pub delta_factored: String,
    pub series: Vec<SeriesReport>,
    pub factor_multiset: Vec<String>,
    pub canonical: SeriesReport,
    pub classification: ClassificationReport,
    pub structure: StructureSummary,
    pub checks: ChecksReport,
}

/// One group's section of a report.
#[derive(Clone, Debug, Serialize)]
pub struct GroupSection<T: Serialize> {
    pub group: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<T>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub command: String,
    pub precision: u32,
    pub seed: u64,
    pub groups: Vec<GroupSection<T>>,
    pub exit_code: i32,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "undecided".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push(format!("{prefix} = [{}]", items.join("; ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push(format!("{prefix} = {}", scalar(v))),
    }
}

/// Renders an envelope. Text output puts each group in its own paragraph.
pub fn render<T: Serialize>(env: &Envelope<T>, format: Format) -> String {
    let value = serde_json::to_value(env).expect("reports serialize");
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&value).expect("json");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = Vec::new();
            let obj = value.as_object().expect("envelope is an object");
            for (k, v) in obj {
                if k == "groups" {
                    continue;
                }
                flatten(k, v, &mut out);
            }
            let mut text = out.join("\n");
            text.push('\n');
            for g in obj["groups"].as_array().expect("groups array") {
                let mut lines = Vec::new();
                flatten("", g, &mut lines);
                text.push('\n');
                text.push_str(&lines.join("\n"));
                text.push('\n');
            }
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening() {
        let v = json!({"a": {"b": [1, 2], "c": [{"d": true}, {"d": null}]}, "e": "x"});
        let mut out = Vec::new();
        flatten("", &v, &mut out);
        assert_eq!(
            out,
            ["a.b = [1; 2]", "a.c[0].d = true", "a.c[1].d = undecided", "e = x"]
        );
    }

    #[test]
    fn factored() {
        assert_eq!(factored_string(&BTreeMap::new()), "1");
        assert_eq!(factored_string(&BTreeMap::from([(2, 1), (3, 4)])), "2 * 3^4");
    }
}
