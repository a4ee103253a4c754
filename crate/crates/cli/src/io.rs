//! Input and output documents: the system description users write and the
//! analysis report the tool emits. Both are JSON with complex numbers as
//! [re, im] pairs and 1-based level indices, so documents stay language
//! neutral and diff friendly.

use std::io::Read;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use larc_core::{
    derive_brackets, effective_diagonal_roots, evaluate, ControlSystem, CoreError, DiagonalSource,
    Tolerances, Verdict,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Optional per-document tolerance overrides.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_eq: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, mut base: Tolerances) -> Tolerances {
        if let Some(v) = self.root_eq {
            base.root_eq = v;
        }
        if let Some(v) = self.edge {
            base.edge = v;
        }
        if let Some(v) = self.rank {
            base.rank = v;
        }
        base
    }
}

/// The input document: energy levels plus a Hermitian coupling matrix.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SystemDescription {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub energies: Vec<f64>,
    /// Row-major N x N matrix of [re, im] pairs.
    pub coupling: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

impl SystemDescription {
    pub fn coupling_matrix(&self) -> Result<Array2<Complex64>, CoreError> {
        let n = self.energies.len();
        if self.coupling.len() != n || self.coupling.iter().any(|row| row.len() != n) {
            return Err(CoreError::DimensionMismatch {
                left: n,
                right: self.coupling.len(),
            });
        }
        let mut mat = Array2::zeros((n, n));
        for (i, row) in self.coupling.iter().enumerate() {
            for (j, pair) in row.iter().enumerate() {
                mat[(i, j)] = Complex64::new(pair[0], pair[1]);
            }
        }
        Ok(mat)
    }

    /// Builds the normalized control system. Precedence for tolerances:
    /// CLI overrides, then document values, then defaults.
    pub fn to_system(&self, cli_overrides: ToleranceOverrides) -> Result<ControlSystem, CoreError> {
        let mut tol = Tolerances::default();
        if let Some(doc) = &self.tolerances {
            tol = doc.apply(tol);
        }
        tol = cli_overrides.apply(tol);
        ControlSystem::new(
            self.energies.clone(),
            self.coupling_matrix()?,
            tol,
            self.label.clone(),
        )
    }

    /// Echo of a normalized system (sorted levels, zero-mean energies,
    /// traceless coupling), suitable for embedding in reports.
    pub fn from_system(sys: &ControlSystem) -> Self {
        let n = sys.n();
        let coupling = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = sys.coupling()[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self {
            label: sys.label().map(|s| s.to_string()),
            energies: sys.spectrum().energies().to_vec(),
            coupling,
            tolerances: Some(ToleranceOverrides {
                root_eq: Some(sys.tolerances().root_eq),
                edge: Some(sys.tolerances().edge),
                rank: Some(sys.tolerances().rank),
            }),
        }
    }
}

/// Accepts either a bare system description or a previously emitted report
/// (whose embedded system is re-analyzed).
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum InputDocument {
    Report { system: SystemDescription },
    System(SystemDescription),
}

/// Parses an input document from a reader. Errors carry the JSON location.
pub fn read_description(reader: &mut dyn Read) -> Result<SystemDescription, serde_json::Error> {
    let doc: InputDocument = serde_json::from_reader(reader)?;
    Ok(match doc {
        InputDocument::Report { system } => system,
        InputDocument::System(system) => system,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionRow {
    pub id: String,
    pub outcome: String,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionRow {
    /// 1-based level indices.
    pub i: usize,
    pub j: usize,
    pub drift_value: f64,
    pub value_at_control_diagonal: f64,
    pub touched: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootTableOut {
    pub transitions: Vec<TransitionRow>,
    /// 1-based level pairs of each index set.
    pub touched: Vec<[usize; 2]>,
    pub drift_regular: Vec<[usize; 2]>,
    pub drift_degenerate: Vec<[usize; 2]>,
    pub diag_regular: Vec<[usize; 2]>,
    /// Values of every transition at the diagonal of the level-two bracket.
    pub values_at_bracket_diagonal: Vec<f64>,
    pub drift_tolerance: f64,
    pub diag_tolerance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphOut {
    pub connected: bool,
    /// 1-based node lists.
    pub components: Vec<Vec<usize>>,
    /// 1-based edge list.
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleOut {
    pub dimension: usize,
    pub full_dimension: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceOut {
    pub root_eq: f64,
    pub edge: f64,
    pub rank: f64,
}

/// The output document. Field order is fixed; identical inputs produce
/// byte-identical reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: usize,
    pub decision: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_note: Option<String>,
    pub criteria: Vec<CriterionRow>,
    pub root_table: RootTableOut,
    pub graph: GraphOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleOut>,
    pub tolerances: ToleranceOut,
    pub system: SystemDescription,
}

fn pairs_1based(pairs: &[(usize, usize)]) -> Vec<[usize; 2]> {
    pairs.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
}

/// Runs the full pipeline on one system and assembles the report.
pub fn analyze_system(sys: &ControlSystem, with_oracle: bool) -> Result<Report, CoreError> {
    let verdict = evaluate(sys, with_oracle)?;
    Ok(build_report(sys, &verdict))
}

fn build_report(sys: &ControlSystem, verdict: &Verdict) -> Report {
    let table = sys.root_table();
    let touched_pairs = table.pairs(table.touched());
    let bracket_values = derive_brackets(sys)
        .map(|der| effective_diagonal_roots(&der, DiagonalSource::D0, table))
        .unwrap_or_default();
    let transitions = table
        .roots()
        .iter()
        .enumerate()
        .map(|(k, r)| TransitionRow {
            i: r.i + 1,
            j: r.j + 1,
            drift_value: r.value_at_drift,
            value_at_control_diagonal: table.values_at_diag()[k],
            touched: table.touched().contains(&k),
        })
        .collect();
    let graph = sys.graph();
    Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        label: sys.label().map(|s| s.to_string()),
        n: sys.n(),
        decision: verdict.decision.as_str().to_string(),
        oracle_note: verdict.oracle_note.clone(),
        criteria: verdict
            .criteria
            .iter()
            .map(|r| CriterionRow {
                id: r.id.as_str().to_string(),
                outcome: r.outcome.as_str().to_string(),
                witness: r.witness.clone(),
            })
            .collect(),
        root_table: RootTableOut {
            transitions,
            touched: pairs_1based(&touched_pairs),
            drift_regular: pairs_1based(&table.pairs(table.regular_touched())),
            drift_degenerate: pairs_1based(&table.pairs(table.degenerate_touched())),
            diag_regular: pairs_1based(&table.pairs(table.regular_touched_at_diag())),
            values_at_bracket_diagonal: bracket_values,
            drift_tolerance: table.drift_tol(),
            diag_tolerance: table.diag_tol(),
        },
        graph: GraphOut {
            connected: graph.is_connected(),
            components: graph
                .components()
                .iter()
                .map(|comp| comp.iter().map(|k| k + 1).collect())
                .collect(),
            edges: graph.edges().map(|(i, j)| [i + 1, j + 1]).collect(),
        },
        oracle: verdict.oracle.map(|o| OracleOut {
            dimension: o.dimension,
            full_dimension: o.full_dimension,
            depth: o.depth,
        }),
        tolerances: ToleranceOut {
            root_eq: sys.tolerances().root_eq,
            edge: sys.tolerances().edge,
            rank: sys.tolerances().rank,
        },
        system: SystemDescription::from_system(sys),
    }
}

/// Plain-text rendering of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let label = report.label.as_deref().unwrap_or("(unlabeled)");
    out.push_str(&format!("system: {} (N={})\n", label, report.n));
    out.push_str(&format!("decision: {}\n", report.decision));
    if let Some(note) = &report.oracle_note {
        out.push_str(&format!("note: {note}\n"));
    }
    out.push_str("criteria:\n");
    for row in &report.criteria {
        out.push_str(&format!(
            "  {:<18} {:<14} {}\n",
            row.id, row.outcome, row.witness
        ));
    }
    out.push_str("transitions (value at drift / at control diagonal):\n");
    for t in &report.root_table.transitions {
        out.push_str(&format!(
            "  a({},{}) = {:>12.6} / {:>12.6}{}\n",
            t.i,
            t.j,
            t.drift_value,
            t.value_at_control_diagonal,
            if t.touched { "  touched" } else { "" }
        ));
    }
    out.push_str(&format!(
        "graph: {} ({} edges)\n",
        if report.graph.connected {
            "connected".to_string()
        } else {
            format!("{} components", report.graph.components.len())
        },
        report.graph.edges.len()
    ));
    if let Some(o) = &report.oracle {
        out.push_str(&format!(
            "closure: dimension {} of {} (depth {})\n",
            o.dimension, o.full_dimension, o.depth
        ));
    }
    out
}
