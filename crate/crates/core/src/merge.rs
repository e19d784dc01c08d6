//! Straight (SPD) and offsetting (OPD) mergers, truth-probability scaling
//! and normalization of per-cell binary evidences.

use crate::error::{PdError, Result};
use crate::exact::ExactSum;
use crate::tolerance::TOL_SUM;
use crate::types::{
    simplex, unit_interval, AlphaEvidence, BinaryEvidence, Credence, Distribution, Partition, WeightedBinarySet,
};

/// Credence-weighted running total `(Σκ, Σκ·d)` over plain vectors.
///
/// Sums are exact, so absorbing in any order or grouping yields the same
/// bits on read-out.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Accumulator {
    weight: ExactSum,
    mass: Vec<ExactSum>,
}

impl Accumulator {
    pub(crate) fn new(width: usize) -> Self {
        Accumulator {
            weight: ExactSum::new(),
            mass: vec![ExactSum::new(); width],
        }
    }

    pub(crate) fn add(&mut self, credence: f64, values: &[f64]) {
        debug_assert_eq!(values.len(), self.mass.len());
        self.weight.add(credence);
        for (m, &v) in self.mass.iter_mut().zip(values) {
            m.add(credence * v);
        }
    }

    pub(crate) fn absorb(&mut self, other: &Accumulator) {
        self.weight.absorb(&other.weight);
        for (m, o) in self.mass.iter_mut().zip(&other.mass) {
            m.absorb(o);
        }
    }

    pub(crate) fn weight(&self) -> f64 {
        self.weight.value()
    }

    pub(crate) fn mass(&self) -> Vec<f64> {
        self.mass.iter().map(ExactSum::value).collect()
    }

    /// `(Σκ, Σκ·d / Σκ)`, the credence-weighted mean on the simplex.
    pub(crate) fn mean(&self) -> Result<(f64, Vec<f64>)> {
        let w = self.weight();
        if w.abs() <= TOL_SUM {
            return Err(PdError::ZeroTotalCredence);
        }
        let probs = self.mass.iter().map(|m| m.value() / w).collect();
        Ok((w, simplex(probs)?))
    }
}

/// Partial result of a straight merger: total credence and credence mass.
///
/// Zero-credence intermediate states (for instance evidence followed by its
/// exact counter-evidence) are ordinary values here; division happens only
/// in [`MergeState::extract`].
#[derive(Debug, Clone, PartialEq)]
pub struct MergeState {
    partition: Partition,
    acc: Accumulator,
}

impl MergeState {
    pub fn new(partition: Partition) -> Self {
        let acc = Accumulator::new(partition.len());
        MergeState { partition, acc }
    }

    pub fn from_evidence(e: &AlphaEvidence) -> Self {
        let mut s = MergeState::new(e.partition().clone());
        s.acc.add(e.credence.get(), e.dist.probs());
        s
    }

    pub fn absorb(&mut self, e: &AlphaEvidence) -> Result<()> {
        self.partition.require_same(e.partition())?;
        self.acc.add(e.credence.get(), e.dist.probs());
        Ok(())
    }

    /// Straight merger of two partial results.
    pub fn combine(mut self, other: &MergeState) -> Result<MergeState> {
        self.partition.require_same(&other.partition)?;
        self.acc.absorb(&other.acc);
        Ok(self)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// `Σκ_i`.
    pub fn weight(&self) -> f64 {
        self.acc.weight()
    }

    /// `Σκ_i·d_i`, componentwise.
    pub fn mass(&self) -> Vec<f64> {
        self.acc.mass()
    }

    pub fn extract(&self) -> Result<AlphaEvidence> {
        let (w, probs) = self.acc.mean()?;
        Ok(AlphaEvidence::new(
            Credence::new(w)?,
            Distribution::new(self.partition.clone(), probs)?,
        ))
    }
}

/// Straight merger: credences add, distributions average by credence.
///
/// Negative credences (counter-evidence) are allowed; the merger is
/// undefined when the credences cancel to zero.
pub fn spd_merge(evidences: &[AlphaEvidence]) -> Result<AlphaEvidence> {
    let (first, rest) = evidences
        .split_first()
        .ok_or_else(|| PdError::Invalid("nothing to merge".into()))?;
    let mut state = MergeState::from_evidence(first);
    for e in rest {
        state.absorb(e)?;
    }
    state.extract()
}

/// Evidence that is itself true only with probability `p` is worth
/// `p` times its credence; the distribution is untouched.
pub fn scale_by_truth_probability(e: &AlphaEvidence, p: f64) -> Result<AlphaEvidence> {
    let p = unit_interval("truth probability", p)?;
    Ok(AlphaEvidence::new(Credence::new(p * e.credence.get())?, e.dist.clone()))
}

/// Reinterprets per-cell binary evidences `[κ_j; q_j]` as one evidence with
/// credence `κ̂ = Σκ_j q_j` and distribution `p̂_j = κ_j q_j / κ̂`.
///
/// When all credences are equal they factor out, so an equi-credible proper
/// distribution comes back unchanged.
pub fn normalize(beta: &WeightedBinarySet) -> Result<AlphaEvidence> {
    let entries = beta.entries();
    let first = entries[0].0.get();
    let equi_credible = entries.iter().all(|(k, _)| k.get().to_bits() == first.to_bits());

    let (credence, masses): (f64, Vec<f64>) = if equi_credible {
        let qs: Vec<f64> = entries.iter().map(|&(_, q)| q).collect();
        let s: ExactSum = qs.iter().copied().collect();
        (first * s.value(), qs)
    } else {
        let masses: Vec<f64> = entries.iter().map(|&(k, q)| k.get() * q).collect();
        let s: ExactSum = masses.iter().copied().collect();
        (s.value(), masses)
    };
    if credence <= TOL_SUM {
        return Err(PdError::Degenerate("no cell carries credence mass"));
    }
    let denom = if equi_credible { credence / first } else { credence };
    let probs = masses.iter().map(|m| m / denom).collect();
    Ok(AlphaEvidence::new(
        Credence::new(credence)?,
        Distribution::new(beta.partition().clone(), probs)?,
    ))
}

/// Credence-weighted mean, dispersion and accord of binary evidences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccordReport {
    pub pbar: f64,
    pub sigma: f64,
    pub lambda: f64,
    /// How far rounding pushed `lambda` outside `[0, 1]` before clamping.
    pub clamped_by: f64,
}

impl AccordReport {
    pub fn was_clamped(&self) -> bool {
        self.clamped_by > 0.0
    }
}

/// Clamps an accord into `[0, 1]`, tolerating only rounding-sized exits.
pub(crate) fn clamp_accord(lambda: f64) -> Result<(f64, f64)> {
    if !lambda.is_finite() {
        return Err(PdError::NonFinite { what: "accord" });
    }
    let clamped = lambda.clamp(0.0, 1.0);
    let exit = (lambda - clamped).abs();
    if exit > TOL_SUM {
        return Err(PdError::AccordOutOfRange { value: lambda });
    }
    Ok((clamped, exit))
}

fn weights(evidences: &[BinaryEvidence]) -> Result<f64> {
    if evidences.is_empty() {
        return Err(PdError::Invalid("nothing to merge".into()));
    }
    for e in evidences {
        e.credence.require_non_negative()?;
    }
    let total: ExactSum = evidences.iter().map(|e| e.credence.get()).collect();
    let total = total.value();
    if total <= TOL_SUM {
        return Err(PdError::ZeroTotalCredence);
    }
    Ok(total)
}

/// Accord `λ = 1 − 2σ` of a multiset of binary evidences, `σ` being the
/// credence-weighted standard deviation of their probabilities.
pub fn accord(evidences: &[BinaryEvidence]) -> Result<AccordReport> {
    let total = weights(evidences)?;
    let mass: ExactSum = evidences.iter().map(|e| e.credence.get() * e.p()).collect();
    let pbar = (mass.value() / total).clamp(0.0, 1.0);
    let spread: ExactSum = evidences
        .iter()
        .map(|e| {
            let d = e.p() - pbar;
            e.credence.get() * d * d
        })
        .collect();
    let sigma = (spread.value() / total).max(0.0).sqrt();
    let (lambda, clamped_by) = clamp_accord(1.0 - 2.0 * sigma)?;
    Ok(AccordReport {
        pbar,
        sigma: sigma.min(0.5),
        lambda,
        clamped_by,
    })
}

/// Result of an offsetting merger, with the accord that discounted it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpdMerger {
    pub merged: BinaryEvidence,
    pub accord: AccordReport,
}

/// Offsetting merger `[λ·Σκ_i; p̄]` of a whole multiset of binary evidences.
///
/// There is deliberately no pairwise form: collapsing two evidences into one
/// loses their dispersion, so only the full multiset determines the result.
pub fn opd_merge(evidences: &[BinaryEvidence]) -> Result<OpdMerger> {
    let report = accord(evidences)?;
    let total = weights(evidences)?;
    let merged = BinaryEvidence::new(Credence::new(report.lambda * total)?, report.pbar)?;
    Ok(OpdMerger { merged, accord: report })
}

/// Straight merger of binary evidences, a convenience over [`spd_merge`].
pub fn spd_merge_binary(evidences: &[BinaryEvidence]) -> Result<BinaryEvidence> {
    let alphas = evidences
        .iter()
        .map(|e| e.to_alpha(Partition::binary()))
        .collect::<Result<Vec<_>>>()?;
    BinaryEvidence::from_alpha(&spd_merge(&alphas)?)
}

/// True when two evidences share a partition and agree within `tol` in
/// credence and every probability.
pub fn approx_eq(a: &AlphaEvidence, b: &AlphaEvidence, tol: f64) -> bool {
    a.partition() == b.partition()
        && (a.credence.get() - b.credence.get()).abs() <= tol
        && a.dist
            .probs()
            .iter()
            .zip(b.dist.probs())
            .all(|(x, y)| (x - y).abs() <= tol)
}
