//! Report types. Every report is an [`Envelope`] around a command result;
//! all of them deserialize back from the JSON they serialize to.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use zptower::tower::{Basis, Condition, GenusReport, Outcome, StabilityReport, Verdict};

use crate::schema::{AtJson, ElemJson, FieldJson, LocalFormFile, ZpJson};

/// An exact integer: a JSON number when it fits in `i64`, else a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Num {
    fn from(x: &BigInt) -> Self {
        i64::try_from(x).map_or_else(|_| Num::Big(x.to_string()), Num::Small)
    }
}

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Num::Small(v) => write!(f, "{v}"),
            Num::Big(s) => f.write_str(s),
        }
    }
}

pub fn rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub input: Option<String>,
    pub form: Option<String>,
    pub unit: Option<String>,
    pub n: Option<u32>,
    pub n_max: Option<u32>,
    pub r_max: Option<u64>,
    pub precision: Option<u32>,
    pub series_precision: Option<i64>,
    pub format: String,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub schema: String,
    pub command: String,
    pub config: Config,
    pub result: CommandResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorEnvelope {
    pub schema: String,
    pub command: String,
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    /// `malformed_input` or the name of the domain error.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CommandResult {
    Reduce(ReduceResult),
    Symbol(SymbolResult),
    Conductor(ConductorResult),
    Breaks(BreaksResult),
    Genus(GenusResult),
    Stability(StabilityJson),
    Ldegree(LDegreeResult),
    Frobenius(FrobeniusResult),
    Oracle(OracleResult),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalFormJson {
    pub field: FieldJson,
    pub precision: usize,
    pub alpha: ElemJson,
    pub c: ZpJson,
    pub places: Vec<GlobalPlaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalPlaceJson {
    pub at: AtJson,
    pub coeffs: std::collections::BTreeMap<String, Vec<ElemJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReduceResult {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalFormFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<GlobalFormJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolResult {
    pub n: u32,
    pub modulus: u64,
    pub value: u64,
    pub residue_formula: u64,
    pub double_sum: u64,
    pub agreement: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConductorLevel {
    pub n: u32,
    pub u: u64,
    pub u_symbol: u64,
    pub uniformizer_symbol: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConductorResult {
    pub levels: Vec<ConductorLevel>,
    pub agreement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreakJson {
    pub r: u64,
    pub raw: i64,
    pub clamped: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreaksResult {
    pub breaks: Vec<BreakJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowJson {
    pub n: u32,
    pub u: Vec<u64>,
    pub conductor_degree: Num,
    pub g: Num,
    pub bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionJson {
    pub outcome: String,
    pub basis: String,
}

impl From<&Condition> for ConditionJson {
    fn from(c: &Condition) -> Self {
        let outcome = match c.outcome {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Unknown => "unknown",
        };
        let basis = match c.basis {
            Basis::Exact => "exact".to_string(),
            Basis::Declared => "declared".to_string(),
            Basis::Horizon(h) => format!("horizon:{h}"),
        };
        ConditionJson {
            outcome: outcome.into(),
            basis,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceStabilityJson {
    pub label: String,
    pub a_p: Option<String>,
    pub maximiser: Option<(u64, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityJson {
    pub verdict: String,
    pub a: Option<String>,
    pub b: Option<String>,
    pub c: Option<String>,
    pub m: Option<u32>,
    pub horizon: Option<u32>,
    pub witness: Option<String>,
    pub quadratic_fit: ConditionJson,
    pub max_attained: ConditionJson,
    pub conductor_form: ConditionJson,
    pub disagreement: bool,
    pub places: Vec<PlaceStabilityJson>,
}

impl From<&StabilityReport> for StabilityJson {
    fn from(s: &StabilityReport) -> Self {
        let mut out = StabilityJson {
            verdict: String::new(),
            a: None,
            b: None,
            c: None,
            m: None,
            horizon: None,
            witness: None,
            quadratic_fit: (&s.quadratic_fit).into(),
            max_attained: (&s.max_attained).into(),
            conductor_form: (&s.conductor_form).into(),
            disagreement: s.disagreement,
            places: s
                .places
                .iter()
                .map(|pl| PlaceStabilityJson {
                    label: pl.label.clone(),
                    a_p: pl.a_p.as_ref().map(rat),
                    maximiser: pl.maximiser,
                })
                .collect(),
        };
        match &s.verdict {
            Verdict::Stable { a, b, c, m } => {
                out.verdict = "stable".into();
                out.a = Some(rat(a));
                out.b = Some(rat(b));
                out.c = Some(rat(c));
                out.m = Some(*m);
            }
            Verdict::Unstable { witness } => {
                out.verdict = "unstable".into();
                out.witness = Some(witness.clone());
            }
            Verdict::Unknown { horizon } => {
                out.verdict = "unknown".into();
                out.horizon = Some(*horizon);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusResult {
    pub p: u64,
    pub g0: u64,
    pub n_c: u32,
    pub n_u: u32,
    pub places: Vec<String>,
    pub warning: Option<String>,
    pub rows: Vec<RowJson>,
    pub stability: Option<StabilityJson>,
}

impl GenusResult {
    pub fn new(r: &GenusReport, warning: Option<String>) -> Self {
        GenusResult {
            p: r.p,
            g0: r.g0,
            n_c: r.n_c,
            n_u: r.n_u,
            places: r.labels.clone(),
            warning,
            rows: r
                .rows
                .iter()
                .map(|row| RowJson {
                    n: row.n,
                    u: row.conductors.clone(),
                    conductor_degree: (&row.conductor_degree).into(),
                    g: (&row.genus).into(),
                    bound: row.bound.as_ref().map(rat),
                })
                .collect(),
            stability: r.stability.as_ref().map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LDegreeResult {
    pub m_chi: u32,
    pub degree: Num,
    pub linear_form: Option<Num>,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusResult {
    pub n: u32,
    pub modulus: u64,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u32,
    pub passed: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleResult {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub all_passed: bool,
}

/// Rows of a flat table: a header and string cells.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn kv(pairs: Vec<(&str, String)>) -> Self {
        Table {
            header: vec!["key".into(), "value".into()],
            rows: pairs.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
        }
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for line in std::iter::once(&self.header).chain(&self.rows) {
            w.write_record(line).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("cells are UTF-8")
    }

    pub fn text(&self) -> String {
        let cols = self.header.len();
        let width: Vec<usize> = (0..cols)
            .map(|c| {
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| r.get(c).map_or(0, |s| s.chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = line.iter().zip(&width).map(|(s, w)| format!("{s:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, |v| v.to_string())
}

impl CommandResult {
    /// Flat view for CSV and table output.
    pub fn table(&self) -> Table {
        match self {
            CommandResult::Genus(g) => {
                let mut header = vec!["n".to_string()];
                header.extend(g.places.iter().map(|l| format!("u_{l}")));
                header.extend(
                    ["conductor_degree", "g", "bound", "verdict", "a", "b", "c", "m"]
                        .iter()
                        .map(|s| s.to_string()),
                );
                let st = g.stability.as_ref();
                let rows = g
                    .rows
                    .iter()
                    .map(|r| {
                        let mut line = vec![r.n.to_string()];
                        line.extend(r.u.iter().map(|u| u.to_string()));
                        line.push(r.conductor_degree.to_string());
                        line.push(r.g.to_string());
                        line.push(opt(&r.bound));
                        line.push(st.map_or_else(String::new, |s| s.verdict.clone()));
                        line.push(st.map_or_else(String::new, |s| opt(&s.a)));
                        line.push(st.map_or_else(String::new, |s| opt(&s.b)));
                        line.push(st.map_or_else(String::new, |s| opt(&s.c)));
                        line.push(st.map_or_else(String::new, |s| opt(&s.m)));
                        line
                    })
                    .collect();
                Table { header, rows }
            }
            CommandResult::Conductor(c) => Table {
                header: ["n", "u", "u_symbol", "uniformizer_symbol"].iter().map(|s| s.to_string()).collect(),
                rows: c
                    .levels
                    .iter()
                    .map(|l| vec![l.n.to_string(), l.u.to_string(), l.u_symbol.to_string(), l.uniformizer_symbol.to_string()])
                    .collect(),
            },
            CommandResult::Breaks(b) => Table {
                header: ["r", "raw", "clamped"].iter().map(|s| s.to_string()).collect(),
                rows: b
                    .breaks
                    .iter()
                    .map(|x| vec![x.r.to_string(), x.raw.to_string(), x.clamped.to_string()])
                    .collect(),
            },
            CommandResult::Oracle(o) => Table {
                header: ["suite", "cases", "passed", "failure"].iter().map(|s| s.to_string()).collect(),
                rows: o
                    .suites
                    .iter()
                    .map(|s| vec![s.name.clone(), s.cases.to_string(), s.passed.to_string(), opt(&s.failure)])
                    .collect(),
            },
            CommandResult::Symbol(s) => Table::kv(vec![
                ("n", s.n.to_string()),
                ("modulus", s.modulus.to_string()),
                ("value", s.value.to_string()),
                ("residue_formula", s.residue_formula.to_string()),
                ("double_sum", s.double_sum.to_string()),
                ("agreement", s.agreement.to_string()),
                ("classical", opt(&s.classical)),
            ]),
            CommandResult::Stability(s) => Table::kv(vec![
                ("verdict", s.verdict.clone()),
                ("a", opt(&s.a)),
                ("b", opt(&s.b)),
                ("c", opt(&s.c)),
                ("m", opt(&s.m)),
                ("horizon", opt(&s.horizon)),
                ("quadratic_fit", format!("{} ({})", s.quadratic_fit.outcome, s.quadratic_fit.basis)),
                ("max_attained", format!("{} ({})", s.max_attained.outcome, s.max_attained.basis)),
                ("conductor_form", format!("{} ({})", s.conductor_form.outcome, s.conductor_form.basis)),
                ("disagreement", s.disagreement.to_string()),
            ]),
            CommandResult::Ldegree(l) => Table::kv(vec![
                ("m_chi", l.m_chi.to_string()),
                ("degree", l.degree.to_string()),
                ("linear_form", opt(&l.linear_form)),
                ("degenerate", l.degenerate.to_string()),
            ]),
            CommandResult::Frobenius(f) => Table::kv(vec![
                ("n", f.n.to_string()),
                ("modulus", f.modulus.to_string()),
                ("value", f.value.to_string()),
            ]),
            CommandResult::Reduce(r) => {
                let json = serde_json::to_string(r).expect("reduce result serializes");
                Table::kv(vec![("form", json)])
            }
        }
    }
}
