//! The controllability criteria, evaluated in a fixed order and collected
//! into a verdict. Each criterion is a cheap structural test on the roots
//! and the transition graph; a fired sufficient criterion certifies
//! controllability, the connectivity check is the necessary side, and the
//! closure oracle is the ground truth both are checked against.

use crate::brackets::{derive_brackets, effective_diagonal_roots, DiagonalSource};
use crate::error::CoreError;
use crate::graph::{fundamental_coverage, TransitionGraph};
use crate::linalg::real_rank;
use crate::oracle::{default_max_generations, lie_closure};
use crate::system::ControlSystem;

/// Identifier of one criterion in reports. The names are part of the
/// report schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionId {
    NecConnected,
    Thm1Regular,
    Thm2BRegular,
    Thm3BrConnected,
    Cor2FundRegular,
    Thm4B0,
    Thm5Union,
    Thm6D0,
}

impl CriterionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionId::NecConnected => "NEC_CONNECTED",
            CriterionId::Thm1Regular => "THM1_REGULAR",
            CriterionId::Thm2BRegular => "THM2_BREGULAR",
            CriterionId::Thm3BrConnected => "THM3_BR_CONNECTED",
            CriterionId::Cor2FundRegular => "COR2_FUND_REGULAR",
            CriterionId::Thm4B0 => "THM4_B0",
            CriterionId::Thm5Union => "THM5_UNION",
            CriterionId::Thm6D0 => "THM6_D0",
        }
    }

    /// Whether a firing of this criterion certifies controllability.
    /// (`NEC_CONNECTED` fires to certify the opposite.)
    pub fn is_sufficient(&self) -> bool {
        !matches!(self, CriterionId::NecConnected)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Fires,
    DoesNotFire,
    /// A stated hypothesis (nondegenerate spectrum, connected graph) fails,
    /// so the criterion does not apply at all.
    Inapplicable,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Fires => "fires",
            Outcome::DoesNotFire => "does_not_fire",
            Outcome::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: CriterionId,
    pub outcome: Outcome,
    /// Human-readable evidence: the colliding transition pair, the graph
    /// components, the regular edge set, and so on.
    pub witness: String,
}

impl CriterionResult {
    fn new(id: CriterionId, outcome: Outcome, witness: String) -> Self {
        Self {
            id,
            outcome,
            witness,
        }
    }

    pub fn fires(&self) -> bool {
        self.outcome == Outcome::Fires
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Controllable,
    Uncontrollable,
    Inconclusive,
}

impl Decision {
    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::Controllable => "CONTROLLABLE",
            Decision::Uncontrollable => "UNCONTROLLABLE",
            Decision::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleSummary {
    pub dimension: usize,
    pub depth: usize,
    /// Dimension of su(N), for comparison.
    pub full_dimension: usize,
}

/// Consolidated outcome for one system.
///
/// `CONTROLLABLE` from the criteria alone requires a fired sufficient
/// criterion and `UNCONTROLLABLE` a fired necessity check; when the oracle
/// is attached, an `INCONCLUSIVE` result is upgraded by the rank condition
/// and the upgrade is labeled in `oracle_note`.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub decision: Decision,
    pub criteria: Vec<CriterionResult>,
    pub oracle: Option<OracleSummary>,
    pub oracle_note: Option<String>,
}

impl Verdict {
    pub fn result(&self, id: CriterionId) -> &CriterionResult {
        self.criteria
            .iter()
            .find(|r| r.id == id)
            .expect("all criteria evaluated")
    }
}

fn format_pairs(pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        return "none".into();
    }
    pairs
        .iter()
        .map(|&(i, j)| format!("({},{})", i + 1, j + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn format_components(g: &TransitionGraph) -> String {
    g.components()
        .iter()
        .map(|comp| {
            let inner = comp
                .iter()
                .map(|k| (k + 1).to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!("{{{inner}}}")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Why a value list fails regularity: first zero or first colliding pair,
/// with 1-based transition labels taken from `pairs`.
fn regularity_failure(
    values: &[f64],
    pairs: &[(usize, usize)],
    tol: f64,
) -> Option<String> {
    for (k, v) in values.iter().enumerate() {
        if v.abs() <= tol {
            let (i, j) = pairs[k];
            return Some(format!(
                "transition ({},{}) has value {:.4e}, zero within tolerance {:.1e}",
                i + 1,
                j + 1,
                v,
                tol
            ));
        }
    }
    for (k, v) in values.iter().enumerate() {
        for (l, w) in values.iter().enumerate().skip(k + 1) {
            if (v - w).abs() <= tol {
                let (i1, j1) = pairs[k];
                let (i2, j2) = pairs[l];
                return Some(format!(
                    "transitions ({},{}) and ({},{}) collide: {:.4e} vs {:.4e} within tolerance {:.1e}",
                    i1 + 1,
                    j1 + 1,
                    i2 + 1,
                    j2 + 1,
                    v,
                    w,
                    tol
                ));
            }
        }
    }
    None
}

/// Connectivity of the control graph is necessary for controllability:
/// fires (uncontrollability established) when the graph is disconnected.
pub fn check_necessary(sys: &ControlSystem) -> CriterionResult {
    let g = sys.graph();
    if g.is_connected() {
        CriterionResult::new(
            CriterionId::NecConnected,
            Outcome::DoesNotFire,
            "transition graph connected".into(),
        )
    } else {
        CriterionResult::new(
            CriterionId::NecConnected,
            Outcome::Fires,
            format!(
                "transition graph disconnected; components {}",
                format_components(g)
            ),
        )
    }
}

/// Connected graph plus a regular drift (all transition values nonzero and
/// pairwise distinct) is sufficient.
pub fn thm_regular(sys: &ControlSystem) -> CriterionResult {
    let id = CriterionId::Thm1Regular;
    if !sys.graph().is_connected() {
        return CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            "transition graph disconnected; hypothesis fails".into(),
        );
    }
    let table = sys.root_table();
    let values = table.drift_values();
    let pairs: Vec<(usize, usize)> = table.roots().iter().map(|r| r.pair()).collect();
    match regularity_failure(&values, &pairs, table.drift_tol()) {
        None => CriterionResult::new(
            id,
            Outcome::Fires,
            format!(
                "drift regular: all {} transition values nonzero and distinct",
                values.len()
            ),
        ),
        Some(reason) => CriterionResult::new(id, Outcome::DoesNotFire, reason),
    }
}

/// Regularity restricted to the touched transitions is already sufficient.
pub fn thm_b_regular(sys: &ControlSystem) -> CriterionResult {
    let id = CriterionId::Thm2BRegular;
    if !sys.graph().is_connected() {
        return CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            "transition graph disconnected; hypothesis fails".into(),
        );
    }
    let table = sys.root_table();
    if table.touched().is_empty() {
        return CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            "no touched transitions".into(),
        );
    }
    let pairs = table.pairs(table.touched());
    let values: Vec<f64> = table
        .touched()
        .iter()
        .map(|&k| table.roots()[k].value_at_drift)
        .collect();
    match regularity_failure(&values, &pairs, table.drift_tol()) {
        None => CriterionResult::new(
            id,
            Outcome::Fires,
            format!(
                "drift regular along the touched transitions {}",
                format_pairs(&pairs)
            ),
        ),
        Some(reason) => CriterionResult::new(id, Outcome::DoesNotFire, reason),
    }
}

/// The regular part of the control matrix alone may already connect all
/// levels; its graph being connected is sufficient.
pub fn thm_br_connected(sys: &ControlSystem) -> CriterionResult {
    let id = CriterionId::Thm3BrConnected;
    if !sys.graph().is_connected() {
        return CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            "transition graph disconnected; hypothesis fails".into(),
        );
    }
    let table = sys.root_table();
    let regular_pairs = table.pairs(table.regular_touched());
    let g = TransitionGraph::from_edges(sys.n(), regular_pairs.iter().copied());
    let coverage = fundamental_coverage(sys.n(), &regular_pairs);
    let coverage_note = if coverage {
        "; nearest-neighbor chain fully regular"
    } else {
        ""
    };
    if g.is_connected() {
        CriterionResult::new(
            id,
            Outcome::Fires,
            format!(
                "graph of regular touched transitions {} is connected{}",
                format_pairs(&regular_pairs),
                coverage_note
            ),
        )
    } else {
        CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            format!(
                "graph of regular touched transitions {} splits into {}",
                format_pairs(&regular_pairs),
                format_components(&g)
            ),
        )
    }
}

/// Weaker but cheap special case: every nearest-neighbor transition touched
/// and regular. Subsumed by the connectivity test above, reported for
/// coverage studies.
pub fn cor2_fundamental(sys: &ControlSystem) -> CriterionResult {
    let id = CriterionId::Cor2FundRegular;
    let table = sys.root_table();
    let regular_pairs = table.pairs(table.regular_touched());
    if fundamental_coverage(sys.n(), &regular_pairs) {
        CriterionResult::new(
            id,
            Outcome::Fires,
            "all nearest-neighbor transitions touched and regular".into(),
        )
    } else {
        let missing: Vec<(usize, usize)> = (0..sys.n() - 1)
            .map(|i| (i, i + 1))
            .filter(|p| !regular_pairs.contains(p))
            .collect();
        CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            format!(
                "nearest-neighbor transitions not all regular and touched; missing {}",
                format_pairs(&missing)
            ),
        )
    }
}

/// Hypotheses shared by the singular-case criteria: nondegenerate spectrum
/// and connected graph. Returns the inapplicability witness when violated.
fn singular_hypotheses(sys: &ControlSystem) -> Option<String> {
    if sys.is_degenerate() {
        return Some("spectrum degenerate: two levels coincide".into());
    }
    if !sys.graph().is_connected() {
        return Some("transition graph disconnected; hypothesis fails".into());
    }
    None
}

/// Singular case via the control diagonal: fires when the diagonal part of
/// the control matrix is regular (over all transitions) or regular along
/// the transitions its level-one bracket touches. Skipped with a witness
/// when that diagonal is linearly dependent on the drift, where it cannot
/// supply new directions.
pub fn thm_singular_b0(sys: &ControlSystem) -> Result<CriterionResult, CoreError> {
    let id = CriterionId::Thm4B0;
    if let Some(reason) = singular_hypotheses(sys) {
        return Ok(CriterionResult::new(id, Outcome::Inapplicable, reason));
    }
    let der = derive_brackets(sys)?;
    let table = sys.root_table();

    // Drift and control-diagonal coefficient vectors must be independent.
    let t_a = sys.drift().diagonal_imag();
    let t_b = der.b0.diagonal_imag();
    let mut stacked = ndarray::Array2::zeros((2, sys.n()));
    for k in 0..sys.n() {
        stacked[(0, k)] = t_a[k];
        stacked[(1, k)] = t_b[k];
    }
    if real_rank(&stacked, 1e-12) < 2 {
        return Ok(CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            "control diagonal linearly dependent on the drift (or zero)".into(),
        ));
    }

    let values = effective_diagonal_roots(&der, DiagonalSource::B0, table);
    let tol = table.diag_tol();
    let all_pairs: Vec<(usize, usize)> = table.roots().iter().map(|r| r.pair()).collect();
    if regularity_failure(&values, &all_pairs, tol).is_none() {
        return Ok(CriterionResult::new(
            id,
            Outcome::Fires,
            "control diagonal regular over all transitions".into(),
        ));
    }
    // Regularity along the transitions touched by the level-one bracket:
    // touched transitions with nonzero drift value. Under the nondegeneracy
    // hypothesis that is every touched transition; kept explicit anyway.
    let bracket_touched: Vec<usize> = table
        .touched()
        .iter()
        .copied()
        .filter(|&k| table.roots()[k].value_at_drift.abs() > table.drift_tol())
        .collect();
    if !bracket_touched.is_empty() {
        let sub_pairs = table.pairs(&bracket_touched);
        let sub_values: Vec<f64> = bracket_touched.iter().map(|&k| values[k]).collect();
        if regularity_failure(&sub_values, &sub_pairs, tol).is_none() {
            return Ok(CriterionResult::new(
                id,
                Outcome::Fires,
                format!(
                    "control diagonal regular along the bracket-touched transitions {}",
                    format_pairs(&sub_pairs)
                ),
            ));
        }
    }
    let reason = regularity_failure(&values, &all_pairs, tol)
        .unwrap_or_else(|| "control diagonal values degenerate".into());
    Ok(CriterionResult::new(
        id,
        Outcome::DoesNotFire,
        format!("control diagonal not regular: {reason}"),
    ))
}

/// Internal form of the union criterion on explicit edge sets.
fn union_connected(
    n: usize,
    drift_regular_edges: &[(usize, usize)],
    diag_regular_edges: &[(usize, usize)],
) -> bool {
    let a = TransitionGraph::from_edges(n, drift_regular_edges.iter().copied());
    let b = TransitionGraph::from_edges(n, diag_regular_edges.iter().copied());
    a.union(&b).expect("same node count").is_connected()
}

/// Singular case combining regular pieces from both generators: the union
/// of the transitions regular at the drift and those regular at the
/// control diagonal must connect all levels.
pub fn thm_singular_union(sys: &ControlSystem) -> CriterionResult {
    let id = CriterionId::Thm5Union;
    if let Some(reason) = singular_hypotheses(sys) {
        return CriterionResult::new(id, Outcome::Inapplicable, reason);
    }
    let table = sys.root_table();
    let drift_edges = table.pairs(table.regular_touched());
    let diag_edges = table.pairs(table.regular_touched_at_diag());
    if union_connected(sys.n(), &drift_edges, &diag_edges) {
        CriterionResult::new(
            id,
            Outcome::Fires,
            format!(
                "union of drift-regular {} and diagonal-regular {} transitions is connected",
                format_pairs(&drift_edges),
                format_pairs(&diag_edges)
            ),
        )
    } else {
        CriterionResult::new(
            id,
            Outcome::DoesNotFire,
            format!(
                "union of drift-regular {} and diagonal-regular {} transitions is disconnected",
                format_pairs(&drift_edges),
                format_pairs(&diag_edges)
            ),
        )
    }
}

/// Singular case via the diagonal of the level-two bracket D = [[A,B],B]:
/// fires when those diagonal coefficients are regular over all transitions,
/// over the touched ones, or over the bracket-touched ones. Distinctness
/// for the restricted readings is taken within the restricted set.
pub fn thm_singular_d0(sys: &ControlSystem) -> Result<CriterionResult, CoreError> {
    let id = CriterionId::Thm6D0;
    if let Some(reason) = singular_hypotheses(sys) {
        return Ok(CriterionResult::new(id, Outcome::Inapplicable, reason));
    }
    let der = derive_brackets(sys)?;
    let table = sys.root_table();
    let values = effective_diagonal_roots(&der, DiagonalSource::D0, table);
    let spread = der.dk.iter().fold(f64::NEG_INFINITY, |a, &v| a.max(v))
        - der.dk.iter().fold(f64::INFINITY, |a, &v| a.min(v));
    let tol = sys.tolerances().root_eq * spread.max(1.0);

    let all_pairs: Vec<(usize, usize)> = table.roots().iter().map(|r| r.pair()).collect();
    if regularity_failure(&values, &all_pairs, tol).is_none() {
        return Ok(CriterionResult::new(
            id,
            Outcome::Fires,
            "bracket diagonal regular over all transitions".into(),
        ));
    }

    let restricted = |indices: &[usize]| -> Option<String> {
        if indices.is_empty() {
            return Some("empty transition set".into());
        }
        let pairs = table.pairs(indices);
        let vals: Vec<f64> = indices.iter().map(|&k| values[k]).collect();
        regularity_failure(&vals, &pairs, tol)
    };

    if restricted(table.touched()).is_none() {
        return Ok(CriterionResult::new(
            id,
            Outcome::Fires,
            format!(
                "bracket diagonal regular along the touched transitions {} (distinctness read within the touched set)",
                format_pairs(&table.pairs(table.touched()))
            ),
        ));
    }
    let bracket_touched: Vec<usize> = table
        .touched()
        .iter()
        .copied()
        .filter(|&k| table.roots()[k].value_at_drift.abs() > table.drift_tol())
        .collect();
    if restricted(&bracket_touched).is_none() {
        return Ok(CriterionResult::new(
            id,
            Outcome::Fires,
            format!(
                "bracket diagonal regular along the bracket-touched transitions {} (distinctness read within that set)",
                format_pairs(&table.pairs(&bracket_touched))
            ),
        ));
    }
    let reason = restricted(table.touched()).unwrap_or_else(|| "degenerate".into());
    Ok(CriterionResult::new(
        id,
        Outcome::DoesNotFire,
        format!("bracket diagonal not regular: {reason}"),
    ))
}

/// Runs every criterion in the fixed order (necessity first, then the
/// generic-case tests, then the singular-case tests), always evaluating all
/// of them for reporting completeness, and consolidates the decision.
///
/// With `with_oracle` the closure dimension is attached; a fired sufficient
/// criterion with a deficient closure (or a fired necessity check with a
/// full closure) is a fatal internal error, and an inconclusive decision is
/// upgraded by the rank condition with an explicit label.
pub fn evaluate(sys: &ControlSystem, with_oracle: bool) -> Result<Verdict, CoreError> {
    let criteria = vec![
        check_necessary(sys),
        thm_regular(sys),
        thm_b_regular(sys),
        thm_br_connected(sys),
        cor2_fundamental(sys),
        thm_singular_b0(sys)?,
        thm_singular_union(sys),
        thm_singular_d0(sys)?,
    ];

    let necessity_fired = criteria[0].fires();
    let sufficient_fired = criteria
        .iter()
        .any(|r| r.id.is_sufficient() && r.id != CriterionId::Cor2FundRegular && r.fires());

    let mut decision = if necessity_fired {
        Decision::Uncontrollable
    } else if sufficient_fired {
        Decision::Controllable
    } else {
        Decision::Inconclusive
    };

    let mut oracle = None;
    let mut oracle_note = None;
    if with_oracle {
        let closure = lie_closure(
            sys,
            sys.tolerances().rank,
            default_max_generations(sys.n()),
        )?;
        let full = sys.full_dimension();
        let summary = OracleSummary {
            dimension: closure.dimension(),
            depth: closure.depth(),
            full_dimension: full,
        };
        let any_sufficient_fired = criteria
            .iter()
            .any(|r| r.id.is_sufficient() && r.fires());
        if any_sufficient_fired && summary.dimension < full {
            return Err(CoreError::OracleContradiction(format!(
                "a sufficient criterion fired but the closure dimension is {} < {}",
                summary.dimension, full
            )));
        }
        if necessity_fired && summary.dimension == full {
            return Err(CoreError::OracleContradiction(format!(
                "the necessity check fired but the closure reached full dimension {full}"
            )));
        }
        if decision == Decision::Inconclusive {
            decision = if summary.dimension == full {
                Decision::Controllable
            } else {
                Decision::Uncontrollable
            };
            oracle_note = Some(
                "decided by the closure rank condition; no structural criterion fired".into(),
            );
        }
        oracle = Some(summary);
    }

    Ok(Verdict {
        decision,
        criteria,
        oracle,
        oracle_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Tolerances;
    use ndarray::Array2;
    use num_complex::Complex64;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coupling(n: usize, offdiag: &[(usize, usize, f64)], diag: &[f64]) -> Array2<Complex64> {
        let mut h = Array2::zeros((n, n));
        for &(i, j, v) in offdiag {
            h[(i, j)] = c64(v, 0.0);
            h[(j, i)] = c64(v, 0.0);
        }
        for (k, v) in diag.iter().enumerate() {
            h[(k, k)] = c64(*v, 0.0);
        }
        h
    }

    fn system(energies: &[f64], h: Array2<Complex64>) -> ControlSystem {
        ControlSystem::new(energies.to_vec(), h, Tolerances::default(), None).unwrap()
    }

    fn full_offdiag(n: usize, v: f64) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, v));
            }
        }
        out
    }

    #[test]
    fn necessity_fires_on_block_coupling() {
        let sys = system(
            &[0.0, 1.0, 2.0, 3.5],
            coupling(4, &[(0, 1, 1.0), (2, 3, 1.0)], &[]),
        );
        let r = check_necessary(&sys);
        assert_eq!(r.outcome, Outcome::Fires);
        assert!(r.witness.contains("{1,2} | {3,4}"), "witness: {}", r.witness);
    }

    #[test]
    fn necessity_quiet_on_connected_coupling() {
        let sys = system(&[0.0, 1.0, 3.0], coupling(3, &full_offdiag(3, 1.0), &[]));
        assert_eq!(check_necessary(&sys).outcome, Outcome::DoesNotFire);
    }

    #[test]
    fn necessity_fires_on_decoupled_qubit() {
        let sys = system(&[0.0, 1.0], coupling(2, &[], &[1.0, -1.0]));
        assert_eq!(check_necessary(&sys).outcome, Outcome::Fires);
    }

    #[test]
    fn regular_drift_fires() {
        let sys = system(
            &[-4.0 / 3.0, -1.0 / 3.0, 5.0 / 3.0],
            coupling(3, &full_offdiag(3, 1.0), &[]),
        );
        assert_eq!(thm_regular(&sys).outcome, Outcome::Fires);
    }

    #[test]
    fn symmetric_spectrum_is_not_regular() {
        let sys = system(&[-1.0, 0.0, 1.0], coupling(3, &full_offdiag(3, 1.0), &[]));
        let r = thm_regular(&sys);
        assert_eq!(r.outcome, Outcome::DoesNotFire);
        assert!(r.witness.contains("collide"), "witness: {}", r.witness);
    }

    #[test]
    fn regular_drift_blocked_by_disconnected_graph() {
        let sys = system(
            &[0.0, 1.0, 3.0, 7.0],
            coupling(4, &[(0, 1, 1.0), (2, 3, 1.0)], &[]),
        );
        assert_eq!(thm_regular(&sys).outcome, Outcome::DoesNotFire);
        assert_eq!(thm_b_regular(&sys).outcome, Outcome::DoesNotFire);
    }

    #[test]
    fn touched_regularity_depends_on_the_pattern() {
        // symmetric three-level spectrum: only the (1,2)+(1,3) pattern sees
        // distinct values
        let fires = system(
            &[-1.0, 0.0, 1.0],
            coupling(3, &[(0, 1, 1.0), (0, 2, 1.0)], &[]),
        );
        assert_eq!(thm_b_regular(&fires).outcome, Outcome::Fires);
        let collides = system(
            &[-1.0, 0.0, 1.0],
            coupling(3, &[(0, 1, 1.0), (1, 2, 1.0)], &[]),
        );
        assert_eq!(thm_b_regular(&collides).outcome, Outcome::DoesNotFire);
    }

    #[test]
    fn regular_part_connectivity() {
        // regular drift, chain coupling: the regular part is the whole
        // graph and the fundamental chain is covered
        let sys = system(
            &[0.0, 1.0, 3.0, 7.0],
            coupling(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)], &[]),
        );
        let r = thm_br_connected(&sys);
        assert_eq!(r.outcome, Outcome::Fires);
        assert!(r.witness.contains("chain"), "witness: {}", r.witness);
        assert_eq!(cor2_fundamental(&sys).outcome, Outcome::Fires);
    }

    #[test]
    fn isolated_node_in_regular_part() {
        // symmetric three-level spectrum, full coupling: only (1,3) is
        // regular, so levels 2 is isolated in the regular graph
        let sys = system(&[-1.0, 0.0, 1.0], coupling(3, &full_offdiag(3, 1.0), &[]));
        let r = thm_br_connected(&sys);
        assert_eq!(r.outcome, Outcome::DoesNotFire);
        assert_eq!(cor2_fundamental(&sys).outcome, Outcome::DoesNotFire);
    }

    #[test]
    fn zero_diagonal_cannot_rescue_singular_drift() {
        let sys = system(&[0.0, 1.0, 2.0], coupling(3, &[(0, 1, 1.0), (1, 2, 1.0)], &[]));
        let r = thm_singular_b0(&sys).unwrap();
        assert_eq!(r.outcome, Outcome::DoesNotFire);
        assert!(r.witness.contains("dependent"), "witness: {}", r.witness);
    }

    #[test]
    fn control_diagonal_rescues_equispaced_chain() {
        // Equispaced ladder, chain coupling, control diagonal i*(1,0,-2,1):
        // transition values 1, 2, -3 along the chain are distinct and
        // nonzero, so the criterion fires through the bracket-touched
        // reading (the full set of transitions sees a zero at (1,4)).
        let sys = system(
            &[0.0, 1.0, 2.0, 3.0],
            coupling(
                4,
                &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)],
                &[-1.0, 0.0, 2.0, -1.0],
            ),
        );
        let r = thm_singular_b0(&sys).unwrap();
        assert_eq!(r.outcome, Outcome::Fires, "witness: {}", r.witness);
        assert!(
            r.witness.contains("bracket-touched"),
            "witness: {}",
            r.witness
        );
    }

    #[test]
    fn degenerate_spectrum_is_inapplicable() {
        let sys = system(
            &[0.0, 0.0, 1.0],
            coupling(3, &full_offdiag(3, 1.0), &[1.0, -2.0, 1.0]),
        );
        assert_eq!(
            thm_singular_b0(&sys).unwrap().outcome,
            Outcome::Inapplicable
        );
        assert_eq!(thm_singular_union(&sys).outcome, Outcome::Inapplicable);
        assert_eq!(
            thm_singular_d0(&sys).unwrap().outcome,
            Outcome::Inapplicable
        );
    }

    #[test]
    fn union_edge_logic() {
        assert!(union_connected(3, &[(0, 1)], &[(1, 2)]));
        assert!(!union_connected(3, &[], &[]));
        assert!(!union_connected(4, &[(0, 1)], &[(2, 3)]));
    }

    #[test]
    fn union_criterion_fires_where_neither_part_suffices() {
        // Equispaced four-level ladder with full coupling: only (1,4) is
        // drift-regular, which leaves the middle levels isolated. A control
        // diagonal with t = (1.05, 0.05, -2.15, 1.05) has a zero value at
        // (1,4) (killing the diagonal-regularity reading) but all other
        // transitions diagonal-regular, and the union connects everything.
        let sys = system(
            &[0.0, 1.0, 2.0, 3.0],
            coupling(
                4,
                &full_offdiag(4, 1.0),
                &[-1.05, -0.05, 2.15, -1.05],
            ),
        );
        assert_eq!(
            thm_singular_b0(&sys).unwrap().outcome,
            Outcome::DoesNotFire
        );
        assert_eq!(thm_br_connected(&sys).outcome, Outcome::DoesNotFire);
        let r = thm_singular_union(&sys);
        assert_eq!(r.outcome, Outcome::Fires, "witness: {}", r.witness);
        // soundness probe: the oracle must agree
        let verdict = evaluate(&sys, true).unwrap();
        assert_eq!(verdict.decision, Decision::Controllable);
        assert_eq!(verdict.oracle.unwrap().dimension, 15);
    }

    #[test]
    fn bracket_diagonal_fires_on_uneven_dipole_chain() {
        // equispaced + nearest-neighbor couplings 1 and 2: the bracket
        // diagonal coefficients are (-2mu, -6mu, 8mu), regular everywhere
        let sys = system(&[0.0, 0.9, 1.8], coupling(3, &[(0, 1, 1.0), (1, 2, 2.0)], &[]));
        let r = thm_singular_d0(&sys).unwrap();
        assert_eq!(r.outcome, Outcome::Fires, "witness: {}", r.witness);
    }

    #[test]
    fn bracket_diagonal_quiet_on_even_dipole_chain() {
        // equal couplings: the new diagonal directions collapse
        let sys = system(&[0.0, 0.9, 1.8], coupling(3, &[(0, 1, 1.0), (1, 2, 1.0)], &[]));
        let r = thm_singular_d0(&sys).unwrap();
        assert_eq!(r.outcome, Outcome::DoesNotFire, "witness: {}", r.witness);
    }

    #[test]
    fn bracket_diagonal_not_fired_by_diagonal_control() {
        // diagonal control: D = 0 and the graph is disconnected, so the
        // hypotheses already fail
        let sys = system(&[0.0, 1.0, 3.0], coupling(3, &[], &[1.0, -2.0, 1.0]));
        let r = thm_singular_d0(&sys).unwrap();
        assert_ne!(r.outcome, Outcome::Fires);
    }

    #[test]
    fn evaluate_controllable_generic_system() {
        let sys = system(
            &[0.0, 1.0, 3.5],
            coupling(3, &full_offdiag(3, 1.0), &[]),
        );
        let verdict = evaluate(&sys, true).unwrap();
        assert_eq!(verdict.decision, Decision::Controllable);
        assert!(verdict.result(CriterionId::Thm1Regular).fires());
        let oracle = verdict.oracle.unwrap();
        assert_eq!(oracle.dimension, 8);
        assert!(verdict.oracle_note.is_none());
    }

    #[test]
    fn evaluate_uncontrollable_block_system() {
        let sys = system(
            &[0.0, 1.0, 2.0, 3.5],
            coupling(4, &[(0, 1, 1.0), (2, 3, 1.0)], &[]),
        );
        let verdict = evaluate(&sys, true).unwrap();
        assert_eq!(verdict.decision, Decision::Uncontrollable);
        assert!(verdict.result(CriterionId::NecConnected).fires());
        assert!(verdict.oracle.unwrap().dimension < 15);
    }

    #[test]
    fn evaluate_inconclusive_spin_like_chain() {
        // Equispaced three-level ladder with equal nearest-neighbor
        // couplings: the pair generates only a three-dimensional
        // subalgebra (the spin-1 embedding), so no criterion can fire and
        // the rank condition decides uncontrollable.
        let sys = system(&[0.0, 1.0, 2.0], coupling(3, &[(0, 1, 1.0), (1, 2, 1.0)], &[]));
        let plain = evaluate(&sys, false).unwrap();
        assert_eq!(plain.decision, Decision::Inconclusive);
        assert!(plain.oracle.is_none());
        let with_oracle = evaluate(&sys, true).unwrap();
        assert_eq!(with_oracle.oracle.unwrap().dimension, 3);
        assert_eq!(with_oracle.decision, Decision::Uncontrollable);
        assert!(with_oracle
            .oracle_note
            .as_deref()
            .unwrap()
            .contains("rank condition"));
    }

    #[test]
    fn touched_regularity_does_not_imply_regular_part_connectivity() {
        // Stored counterexample: spectrum (0,1,2,4) with pattern
        // {(1,3),(2,4),(1,4)} is regular along the touched transitions, but
        // (1,3) collides with the untouched (3,4) and drops out of the
        // regular part, isolating level 3 there. The system is still
        // controllable (the touched-regularity criterion is sound).
        let sys = system(
            &[0.0, 1.0, 2.0, 4.0],
            coupling(4, &[(0, 2, 1.0), (1, 3, 1.0), (0, 3, 1.0)], &[]),
        );
        let verdict = evaluate(&sys, true).unwrap();
        assert!(verdict.result(CriterionId::Thm2BRegular).fires());
        assert!(!verdict.result(CriterionId::Thm3BrConnected).fires());
        assert_eq!(verdict.decision, Decision::Controllable);
        assert_eq!(verdict.oracle.unwrap().dimension, 15);
    }

    #[test]
    fn full_regularity_implies_the_weaker_criteria() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        for _ in 0..200 {
            let n = rng.gen_range(3..=5);
            let mut energies: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..4.0)).collect();
            energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut off = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.7) {
                        off.push((i, j, rng.gen_range(0.2..2.0)));
                    }
                }
            }
            let sys = system(&energies, coupling(n, &off, &[]));
            let t1 = thm_regular(&sys);
            if t1.outcome == Outcome::Fires {
                checked += 1;
                assert_eq!(thm_b_regular(&sys).outcome, Outcome::Fires);
                assert_eq!(thm_br_connected(&sys).outcome, Outcome::Fires);
            }
        }
        assert!(checked > 20, "only {checked} regular systems sampled");
    }

    #[test]
    fn verdicts_are_deterministic() {
        let sys = system(
            &[0.0, 1.0, 2.0, 3.0],
            coupling(4, &full_offdiag(4, 1.0), &[-1.05, -0.05, 2.15, -1.05]),
        );
        let a = evaluate(&sys, false).unwrap();
        let b = evaluate(&sys, false).unwrap();
        assert_eq!(a.decision, b.decision);
        for (x, y) in a.criteria.iter().zip(b.criteria.iter()) {
            assert_eq!(x.outcome, y.outcome);
            assert_eq!(x.witness, y.witness);
        }
    }
}
