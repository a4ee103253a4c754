//! Batch agreement study: run the structural criteria and the closure
//! oracle over seeded random systems and tabulate who fired where. Any
//! disagreement with the oracle on a certified case is a violation; there
//! must be none.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use larc_core::{
    default_max_generations, evaluate, lie_closure, CriterionId, Decision, Outcome,
};

use crate::gen::{generate, GenSpec};
use crate::io::{SystemDescription, ToleranceOverrides, SCHEMA_VERSION};

pub const CRITERION_IDS: [CriterionId; 8] = [
    CriterionId::NecConnected,
    CriterionId::Thm1Regular,
    CriterionId::Thm2BRegular,
    CriterionId::Thm3BrConnected,
    CriterionId::Cor2FundRegular,
    CriterionId::Thm4B0,
    CriterionId::Thm5Union,
    CriterionId::Thm6D0,
];

#[derive(Debug, Clone, Copy)]
pub struct BatchOptions {
    pub spec: GenSpec,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub tolerances: ToleranceOverrides,
}

/// Cross counts for one criterion against the oracle verdict.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CriterionAgreement {
    pub id: String,
    pub fired_oracle_full: usize,
    pub fired_oracle_deficient: usize,
    pub quiet_oracle_full: usize,
    pub quiet_oracle_deficient: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchSummary {
    pub schema_version: u32,
    pub tool_version: String,
    pub generator: String,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub oracle_full: usize,
    pub oracle_deficient: usize,
    /// Decisions from the criteria alone (no oracle upgrade).
    pub controllable: usize,
    pub uncontrollable: usize,
    pub inconclusive: usize,
    /// Ground truth behind the inconclusive cases.
    pub inconclusive_oracle_full: usize,
    pub inconclusive_oracle_deficient: usize,
    pub criteria: Vec<CriterionAgreement>,
    /// Certified cases contradicted by the oracle; must be zero.
    pub violations: usize,
    pub elapsed_ms: u128,
}

/// One line of the optional per-system JSON stream.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemRecord {
    pub index: usize,
    pub decision: String,
    pub fired: Vec<String>,
    pub oracle_dimension: usize,
    pub full_dimension: usize,
    pub violation: bool,
    pub system: SystemDescription,
}

/// Runs the study. Deterministic given the seed: each system draws its own
/// substream keyed off the master stream, so records are reproducible and
/// independent of evaluation order.
pub fn run_batch(
    opts: &BatchOptions,
    mut jsonl: Option<&mut dyn Write>,
) -> anyhow::Result<BatchSummary> {
    opts.spec
        .validate(opts.n)
        .map_err(|e| anyhow::anyhow!("invalid generator: {e}"))?;
    if opts.count == 0 {
        anyhow::bail!("count must be at least 1");
    }
    let start = Instant::now();
    let mut master = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut agreements: Vec<CriterionAgreement> = CRITERION_IDS
        .iter()
        .map(|id| CriterionAgreement {
            id: id.as_str().to_string(),
            ..Default::default()
        })
        .collect();
    let mut summary = BatchSummary {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        generator: opts.spec.to_string(),
        n: opts.n,
        count: opts.count,
        seed: opts.seed,
        oracle_full: 0,
        oracle_deficient: 0,
        controllable: 0,
        uncontrollable: 0,
        inconclusive: 0,
        inconclusive_oracle_full: 0,
        inconclusive_oracle_deficient: 0,
        criteria: Vec::new(),
        violations: 0,
        elapsed_ms: 0,
    };

    for index in 0..opts.count {
        let mut rng = ChaCha8Rng::seed_from_u64(master.gen());
        let desc = generate(opts.spec, opts.n, index, &mut rng);
        let sys = desc.to_system(opts.tolerances)?;
        // Criteria and oracle are run separately here so a contradiction is
        // recorded as a violation instead of aborting the study.
        let verdict = evaluate(&sys, false)?;
        let closure = lie_closure(
            &sys,
            sys.tolerances().rank,
            default_max_generations(sys.n()),
        )?;
        let full = sys.full_dimension();
        let oracle_full = closure.dimension() == full;
        if oracle_full {
            summary.oracle_full += 1;
        } else {
            summary.oracle_deficient += 1;
        }

        let mut violation = false;
        let mut fired = Vec::new();
        for (slot, id) in CRITERION_IDS.iter().enumerate() {
            let result = verdict.result(*id);
            let fires = result.outcome == Outcome::Fires;
            if fires {
                fired.push(id.as_str().to_string());
            }
            let a = &mut agreements[slot];
            match (fires, oracle_full) {
                (true, true) => a.fired_oracle_full += 1,
                (true, false) => a.fired_oracle_deficient += 1,
                (false, true) => a.quiet_oracle_full += 1,
                (false, false) => a.quiet_oracle_deficient += 1,
            }
            if fires && id.is_sufficient() && !oracle_full {
                violation = true;
            }
            if fires && !id.is_sufficient() && oracle_full {
                violation = true;
            }
        }
        if violation {
            summary.violations += 1;
        }
        match verdict.decision {
            Decision::Controllable => summary.controllable += 1,
            Decision::Uncontrollable => summary.uncontrollable += 1,
            Decision::Inconclusive => {
                summary.inconclusive += 1;
                if oracle_full {
                    summary.inconclusive_oracle_full += 1;
                } else {
                    summary.inconclusive_oracle_deficient += 1;
                }
            }
        }
        if let Some(sink) = jsonl.as_deref_mut() {
            let record = SystemRecord {
                index,
                decision: verdict.decision.as_str().to_string(),
                fired,
                oracle_dimension: closure.dimension(),
                full_dimension: full,
                violation,
                system: desc,
            };
            serde_json::to_writer(&mut *sink, &record)?;
            sink.write_all(b"\n")?;
        }
    }

    summary.criteria = agreements;
    summary.elapsed_ms = start.elapsed().as_millis();
    Ok(summary)
}

/// Fixed-width text table of a batch summary.
pub fn render_summary(s: &BatchSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "batch: gen={} n={} count={} seed={} elapsed={}ms\n",
        s.generator, s.n, s.count, s.seed, s.elapsed_ms
    ));
    out.push_str(&format!(
        "oracle: full={} deficient={}\n",
        s.oracle_full, s.oracle_deficient
    ));
    out.push_str(&format!(
        "criteria decisions: controllable={} uncontrollable={} inconclusive={}\n",
        s.controllable, s.uncontrollable, s.inconclusive
    ));
    if s.inconclusive > 0 {
        out.push_str(&format!(
            "inconclusive ground truth: full={} deficient={}\n",
            s.inconclusive_oracle_full, s.inconclusive_oracle_deficient
        ));
    }
    out.push_str(&format!(
        "{:<20} {:>10} {:>10} {:>10} {:>10}\n",
        "criterion", "fire/full", "fire/def", "quiet/full", "quiet/def"
    ));
    for c in &s.criteria {
        out.push_str(&format!(
            "{:<20} {:>10} {:>10} {:>10} {:>10}\n",
            c.id,
            c.fired_oracle_full,
            c.fired_oracle_deficient,
            c.quiet_oracle_full,
            c.quiet_oracle_deficient
        ));
    }
    out.push_str(&format!("violations: {}\n", s.violations));
    out
}
