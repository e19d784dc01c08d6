//! Conditionalization, Jeffrey's rule, and credence-aware indirect updating
//! of a joint prior by fallible evidence about `B`.

use crate::association::{correlation, unilateral_cross_credence};
use crate::error::{PdError, Result};
use crate::exact::ExactSum;
use crate::merge::{normalize, spd_merge};
use crate::tolerance::TOL_SUM;
use crate::types::{
    AlphaEvidence, BinaryEvidence, Credence, Distribution, FirstOrderPrior, JointPrior, WeightedBinarySet,
};

/// `P₁(A) = P₀(AB) / P₀(B)` after accepting `B`.
pub fn conditionalize(prior: &FirstOrderPrior) -> Result<f64> {
    let pb = prior.p_b();
    if pb <= TOL_SUM {
        return Err(PdError::ConditionOnNull {
            what: "B".into(),
            p: pb,
        });
    }
    Ok((prior.p_ab() / pb).clamp(0.0, 1.0))
}

fn conditional_or_null(prior: &JointPrior, j: usize) -> Result<f64> {
    prior.conditional(j).ok_or_else(|| PdError::ConditionOnNull {
        what: prior.b_partition().labels()[j].clone(),
        p: prior.table().column_sum(j),
    })
}

/// `Σ_j w_j · P₀(A | B_j)`, skipping cells of zero weight.
fn mix_conditionals(prior: &JointPrior, weights: &[f64]) -> Result<f64> {
    let mut acc = ExactSum::new();
    for (j, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc.add(w * conditional_or_null(prior, j)?);
        }
    }
    Ok(acc.value().clamp(0.0, 1.0))
}

/// Jeffrey's rule: `P₁₀(A) = Σ_j P̃₁(B_j) P₀(A | B_j)`.
pub fn jeffrey_update(prior: &JointPrior, new_b: &Distribution) -> Result<f64> {
    prior.b_partition().require_same(new_b.partition())?;
    mix_conditionals(prior, new_b.probs())
}

/// Outcome of updating a prior on `A` through evidence about `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndirectUpdateResult {
    /// `[κ₁₀; P₁₀(A)]`.
    pub updated: BinaryEvidence,
    /// Credence each cell `B_j` would transfer to `A` on its own.
    pub per_cell_credences: Vec<f64>,
    /// Normalized evidence weights `P̂₁(B_j)` actually used in the mixture.
    pub normalized_weights: Distribution,
}

/// Updates `P₀(A)` by fallible evidence `[κ̃₁; P̃₁(B_1..B_m)]`.
///
/// Each cell transfers credence `|ρ₀(A,B_j)|κ̃₁κ₀ / (|ρ₀(A,B_j)|κ̃₁ + κ₀)`.
/// Unequal per-cell credences are reconciled by [`normalize`]; on a
/// two-cell partition they always coincide and the evidence distribution is
/// used as is. Zero evidence credence yields a zero-credence update whose
/// weights follow the small-credence limit, proportional to `|ρ₀|·P̃₁`.
pub fn pd_indirect_update(prior: &JointPrior, evidence: &AlphaEvidence) -> Result<IndirectUpdateResult> {
    prior.b_partition().require_same(evidence.partition())?;
    let k0 = prior.credence.get();
    if k0 <= 0.0 {
        return Err(PdError::Invalid(format!("prior credence must be positive, got {k0}")));
    }
    let k1 = evidence.credence.get();
    if k1 < 0.0 {
        return Err(PdError::NegativeCredence { value: k1 });
    }
    let m = prior.b_partition().len();
    let rhos = (0..m)
        .map(|j| prior.first_order(j).map(|fo| correlation(&fo).abs()))
        .collect::<Result<Vec<_>>>()?;
    let new_b = evidence.dist.probs();

    let (credence, per_cell, weights) = if m == 2 {
        // Both cells share |ρ₀|; no normalization is needed.
        let kappa = unilateral_cross_credence(rhos[0], evidence.credence, prior.credence)?.get();
        if k1 > 0.0 && kappa <= TOL_SUM {
            return Err(PdError::Degenerate(
                "evidence is uncorrelated with A and carries no credence",
            ));
        }
        (kappa, vec![kappa; 2], evidence.dist.clone())
    } else if k1 > 0.0 {
        let per_cell = rhos
            .iter()
            .map(|&r| unilateral_cross_credence(r, evidence.credence, prior.credence).map(Credence::get))
            .collect::<Result<Vec<_>>>()?;
        let set = WeightedBinarySet::new(
            prior.b_partition().clone(),
            per_cell
                .iter()
                .zip(new_b)
                .map(|(&k, &q)| Ok((Credence::non_negative(k)?, q)))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let hat = normalize(&set)
            .map_err(|_| PdError::Degenerate("evidence is uncorrelated with A and carries no credence"))?;
        (hat.credence.get(), per_cell, hat.dist)
    } else {
        let set = WeightedBinarySet::new(
            prior.b_partition().clone(),
            rhos.iter()
                .zip(new_b)
                .map(|(&r, &q)| Ok((Credence::non_negative(r)?, q)))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let hat = normalize(&set)
            .map_err(|_| PdError::Degenerate("evidence is uncorrelated with A and carries no credence"))?;
        (0.0, vec![0.0; m], hat.dist)
    };

    let p = mix_conditionals(prior, weights.probs())?;
    Ok(IndirectUpdateResult {
        updated: BinaryEvidence::new(Credence::new(credence)?, p)?,
        per_cell_credences: per_cell,
        normalized_weights: weights,
    })
}

/// Straight-merges all evidences first, then updates once. The result does
/// not depend on the order of `evidences`.
pub fn pd_sequential_update(prior: &JointPrior, evidences: &[AlphaEvidence]) -> Result<IndirectUpdateResult> {
    let merged = spd_merge(evidences)?;
    pd_indirect_update(prior, &merged)
}
