//! One function per subcommand. Each takes parsed files and returns the file
//! to print plus any warnings for standard error.

use probdyn::confirm::{first_order_confirmation, pdct_confirmation, ConfirmationMode};
use probdyn::dutchbook::evaluate_bets;
use probdyn::exact::exact_sum;
use probdyn::merge::{normalize, opd_merge, spd_merge};
use probdyn::repair::{
    column_conditional, constrained_evidence, impose_constraint, impose_constraints, repaired_conditional,
    ImplicationConstraint,
};
use probdyn::updating::{conditionalize, jeffrey_update, pd_sequential_update};
use probdyn::{AlphaEvidence, BinaryEvidence, Credence, Partition, PdError};

use crate::error::{CliError, Result};
use crate::evidence_file::{
    ConditionalReport, ConfirmationRecord, Contingency, EvidenceFile, Payload, RepairMethod, RepairReport, UpdateReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MergeMode {
    Spd,
    Opd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMethod {
    Jeffrey,
    Pd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub file: EvidenceFile,
    pub warnings: Vec<String>,
}

impl Output {
    fn quiet(file: EvidenceFile) -> Self {
        Output {
            file,
            warnings: Vec::new(),
        }
    }
}

fn wrong_kind(expected: &str, got: &Payload) -> CliError {
    CliError::Schema(format!("expected a {expected} file, got {}", got.kind()))
}

fn evidences(f: &EvidenceFile) -> Result<&[AlphaEvidence]> {
    match &f.payload {
        Payload::Evidences(es) => Ok(es),
        other => Err(wrong_kind("evidences", other)),
    }
}

fn joint(f: &EvidenceFile) -> Result<&probdyn::JointPrior> {
    match &f.payload {
        Payload::Joint(j) => Ok(j),
        other => Err(wrong_kind("joint", other)),
    }
}

/// Merged distribution of all evidences in a file (the only one, if single).
fn merged_evidence(f: &EvidenceFile) -> Result<AlphaEvidence> {
    match evidences(f)? {
        [one] => Ok(one.clone()),
        many => Ok(spd_merge(many)?),
    }
}

pub fn cmd_merge(files: &[EvidenceFile], mode: MergeMode) -> Result<Output> {
    let first = files
        .first()
        .ok_or_else(|| CliError::Schema("no evidence files given".into()))?;
    let mut all = Vec::new();
    for f in files {
        all.extend_from_slice(evidences(f)?);
    }
    let partition = first.partition.clone();
    match mode {
        MergeMode::Spd => {
            let merged = spd_merge(&all)?;
            Ok(Output::quiet(EvidenceFile {
                partition,
                payload: Payload::Evidences(vec![merged]),
            }))
        }
        MergeMode::Opd => {
            for e in &all {
                if e.partition() != &partition {
                    return Err(PdError::PartitionMismatch {
                        left: partition.labels().to_vec(),
                        right: e.partition().labels().to_vec(),
                    }
                    .into());
                }
            }
            if partition.len() != 2 {
                return Err(CliError::Schema(format!(
                    "offsetting mergers need two-cell evidences, got {} cells",
                    partition.len()
                )));
            }
            let binaries = all
                .iter()
                .map(BinaryEvidence::from_alpha)
                .collect::<probdyn::Result<Vec<_>>>()?;
            let m = opd_merge(&binaries)?;
            let mut warnings = Vec::new();
            if m.accord.was_clamped() {
                warnings.push(format!("accord clamped into [0, 1] by {:e}", m.accord.clamped_by));
            }
            if m.merged.credence.get() == 0.0 {
                warnings.push("offsetting merger has zero credence: the evidences cancel".into());
            }
            Ok(Output {
                file: EvidenceFile {
                    payload: Payload::Evidences(vec![m.merged.to_alpha(partition.clone())?]),
                    partition,
                },
                warnings,
            })
        }
    }
}

pub fn cmd_normalize(file: &EvidenceFile) -> Result<Output> {
    let Payload::WeightedSet(ws) = &file.payload else {
        return Err(wrong_kind("weighted_set", &file.payload));
    };
    Ok(Output::quiet(EvidenceFile {
        partition: file.partition.clone(),
        payload: Payload::Evidences(vec![normalize(ws)?]),
    }))
}

pub fn cmd_update(prior: &EvidenceFile, evidence: &EvidenceFile, method: UpdateMethod) -> Result<Output> {
    let j = joint(prior)?;
    let report = match method {
        UpdateMethod::Jeffrey => {
            let e = merged_evidence(evidence)?;
            UpdateReport::Jeffrey {
                b_partition: j.b_partition().clone(),
                p: jeffrey_update(j, &e.dist)?,
            }
        }
        UpdateMethod::Pd => {
            let r = pd_sequential_update(j, evidences(evidence)?)?;
            UpdateReport::Pd {
                b_partition: j.b_partition().clone(),
                credence: r.updated.credence.get(),
                p: r.updated.p(),
                per_cell_credences: r.per_cell_credences,
                normalized_weights: r.normalized_weights.probs().to_vec(),
            }
        }
    };
    let mut warnings = Vec::new();
    if let UpdateReport::Pd { credence, .. } = &report {
        if *credence == 0.0 {
            warnings.push("update carries zero credence".into());
        }
    }
    Ok(Output {
        file: EvidenceFile {
            partition: prior.partition.clone(),
            payload: Payload::Update(report),
        },
        warnings,
    })
}

/// Parses `COLUMN:CREDENCE[:PROBABILITY]`, where `COLUMN` is a cell label of
/// `columns` or a 1-based index. Never panics.
pub fn parse_constraint(arg: &str, columns: &Partition) -> Result<ImplicationConstraint> {
    let bad = |why: &str| CliError::Schema(format!("bad constraint {arg:?}: {why}"));
    let mut parts = arg.rsplitn(3, ':').collect::<Vec<_>>();
    parts.reverse();
    // A label may itself contain ':'; prefer the longest label match.
    let (column, credence, probability) = match parts.as_slice() {
        [c, k] => (*c, *k, None),
        [c, k, p] => {
            if columns.index_of(&format!("{c}:{k}")).is_some() && p.parse::<f64>().is_ok() {
                (&arg[..c.len() + 1 + k.len()], *p, None)
            } else {
                (*c, *k, Some(*p))
            }
        }
        _ => return Err(bad("expected COLUMN:CREDENCE[:PROBABILITY]")),
    };
    let index = match columns.index_of(column) {
        Some(i) => i,
        None => match column.trim().parse::<usize>() {
            Ok(i) if (1..=columns.len()).contains(&i) => i - 1,
            _ => return Err(bad("unknown column")),
        },
    };
    let credence: f64 = credence.trim().parse().map_err(|_| bad("credence is not a number"))?;
    let probability: f64 = match probability {
        Some(p) => p.trim().parse().map_err(|_| bad("probability is not a number"))?,
        None => 1.0,
    };
    Ok(ImplicationConstraint::with_probability(
        Credence::non_negative(credence)?,
        index,
        probability,
    )?)
}

pub fn cmd_repair(beta: &EvidenceFile, constraints: &[String]) -> Result<Output> {
    let Payload::Contingency(Contingency { b_partition, evidence }) = &beta.payload else {
        return Err(wrong_kind("contingency", &beta.payload));
    };
    if constraints.is_empty() {
        return Err(CliError::Schema("no constraints given".into()));
    }
    let cs = constraints
        .iter()
        .map(|s| parse_constraint(s, b_partition))
        .collect::<Result<Vec<_>>>()?;
    let columns: Vec<usize> = cs.iter().map(|c| c.target_column).collect();

    let report = if let [c] = cs.as_slice() {
        let revised = impose_constraint(evidence, c)?;
        let t = evidence.table();
        let i = c.target_column;
        let a = t.top()[i];
        let others: Vec<f64> = (0..t.width()).filter(|&j| j != i).map(|j| t.top()[j]).collect();
        let conditional = repaired_conditional(
            a,
            exact_sum(&others),
            t.bottom()[i],
            c.effective_credence() / evidence.credence().get(),
        )?;
        RepairReport {
            method: RepairMethod::Single,
            b_partition: b_partition.clone(),
            revised,
            columns,
            conditionals: vec![conditional],
            harmonic_credence: Some(constrained_evidence(evidence, c)?.credence.get()),
        }
    } else {
        let revised = impose_constraints(evidence, &cs)?;
        let conditionals = columns
            .iter()
            .map(|&i| {
                column_conditional(revised.table(), i).ok_or(PdError::Degenerate("constrained column carries no mass"))
            })
            .collect::<probdyn::Result<Vec<_>>>()?;
        RepairReport {
            method: RepairMethod::Multiple,
            b_partition: b_partition.clone(),
            revised,
            columns,
            conditionals,
            harmonic_credence: None,
        }
    };
    Ok(Output::quiet(EvidenceFile {
        partition: beta.partition.clone(),
        payload: Payload::Repair(report),
    }))
}

pub fn cmd_confirm(prior: &EvidenceFile, evidence: &EvidenceFile, mode: ConfirmationMode) -> Result<Output> {
    let j = joint(prior)?;
    let e = merged_evidence(evidence)?;
    if e.partition() != j.b_partition() {
        return Err(PdError::PartitionMismatch {
            left: j.b_partition().labels().to_vec(),
            right: e.partition().labels().to_vec(),
        }
        .into());
    }
    let report = pdct_confirmation(j, &BinaryEvidence::from_alpha(&e)?, mode)?;
    let mut warnings = Vec::new();
    if report.accord_clamped_by > 0.0 {
        warnings.push(format!("accord clamped into [0, 1] by {:e}", report.accord_clamped_by));
    }
    Ok(Output {
        file: EvidenceFile {
            partition: prior.partition.clone(),
            payload: Payload::Confirmation(ConfirmationRecord { mode, report }),
        },
        warnings,
    })
}

pub fn cmd_conditionalize(file: &EvidenceFile) -> Result<Output> {
    let Payload::FirstOrder(prior) = &file.payload else {
        return Err(wrong_kind("first_order", &file.payload));
    };
    let report = ConditionalReport {
        p: conditionalize(prior)?,
        confirmation: first_order_confirmation(prior)?,
    };
    Ok(Output::quiet(EvidenceFile {
        partition: file.partition.clone(),
        payload: Payload::Conditional(report),
    }))
}

pub fn cmd_dutchbook(bet: &EvidenceFile) -> Result<Output> {
    let Payload::Bet(s) = &bet.payload else {
        return Err(wrong_kind("bet", &bet.payload));
    };
    let outcome = evaluate_bets(s);
    let mut warnings = Vec::new();
    if s.p_b == 0.0 && outcome.delta != 0.0 {
        warnings.push("P(B) = 0: the incoherence delta is invisible in the losses".into());
    }
    Ok(Output {
        file: EvidenceFile {
            partition: bet.partition.clone(),
            payload: Payload::BetOutcome(outcome),
        },
        warnings,
    })
}
