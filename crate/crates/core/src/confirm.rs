//! Degrees of confirmation: the first-order difference measure and its
//! credence-aware counterpart.

use crate::error::{PdError, Result};
use crate::merge::clamp_accord;
use crate::types::{BinaryEvidence, FirstOrderPrior, JointPrior};
use crate::updating::{conditionalize, pd_indirect_update};

/// `C₁₀ = P₀(A|B) − P₀(A)`.
pub fn first_order_confirmation(prior: &FirstOrderPrior) -> Result<f64> {
    Ok(conditionalize(prior)? - prior.p_a())
}

/// How the updated evidence is combined with the prior when scoring it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfirmationMode {
    /// Prior and update reinforce: accord is 1.
    Straight,
    /// Prior and update offset each other by their discord.
    Offsetting,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfirmationReport {
    /// `C₁₀`, the first-order confirmation of `A` by `B_1`.
    pub first_order: f64,
    /// `(κ₁₀ − κ₀) / κ₀`.
    pub credence_gain: f64,
    /// `P₁₀(A) − P₀(A)`.
    pub probability_gain: f64,
    /// `K₁₀ = λ (κ₁₀/κ₀) P₁₀(A) − P₀(A)`.
    pub pdct: f64,
    pub accord_used: f64,
    /// Amount by which the accord was clamped back into `[0, 1]`.
    pub accord_clamped_by: f64,
    pub updated_credence: f64,
    pub updated_probability: f64,
}

/// Confirmation of `[κ₀; P₀(A)]` by binary evidence `[κ̃₁; P̃₁(B)]`.
///
/// In offsetting mode the accord is that of the pair `(κ₀, P₀(A))`,
/// `(κ̃₁, P₁₀(A))`: `1 − 2|P₀(A) − P₁₀(A)| sqrt(κ₀κ̃₁) / (κ₀ + κ̃₁)`.
pub fn pdct_confirmation(
    prior: &JointPrior,
    evidence: &BinaryEvidence,
    mode: ConfirmationMode,
) -> Result<ConfirmationReport> {
    if prior.b_partition().len() != 2 {
        return Err(PdError::Invalid(format!(
            "confirmation needs a two-cell B partition, got {} cells",
            prior.b_partition().len()
        )));
    }
    let first = prior.first_order(0)?;
    let p0 = first.p_a();
    let k0 = prior.credence.get();
    let update = pd_indirect_update(prior, &evidence.to_alpha(prior.b_partition().clone())?)?;
    let k10 = update.updated.credence.get();
    let p10 = update.updated.p();

    let (lambda, clamped_by) = match mode {
        ConfirmationMode::Straight => (1.0, 0.0),
        ConfirmationMode::Offsetting => {
            let k1 = evidence.credence.get();
            let spread = if k0 + k1 > 0.0 {
                2.0 * (p0 - p10).abs() * (k0 * k1).sqrt() / (k0 + k1)
            } else {
                0.0
            };
            clamp_accord(1.0 - spread)?
        }
    };

    Ok(ConfirmationReport {
        first_order: first_order_confirmation(&first)?,
        credence_gain: (k10 - k0) / k0,
        probability_gain: p10 - p0,
        pdct: lambda * (k10 / k0) * p10 - p0,
        accord_used: lambda,
        accord_clamped_by: clamped_by,
        updated_credence: k10,
        updated_probability: p10,
    })
}
