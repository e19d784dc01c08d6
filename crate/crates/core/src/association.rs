//! Correlation of binary propositions and cross-credence.

use crate::error::{PdError, Result};
use crate::exact::ExactSum;
use crate::types::{Credence, FirstOrderPrior};

/// The first-order triple that fixes a correlation coefficient.
pub type CorrelationInput = FirstOrderPrior;

/// Correlation coefficient of two binary propositions,
/// `[P(AB) − P(A)P(B)] / sqrt(P(A)P(¬A)P(B)P(¬B))`.
///
/// Zero whenever either proposition is certain or impossible, which is the
/// limit of the formula along every path to those marginals.
pub fn correlation(e: &CorrelationInput) -> f64 {
    let (pa, pb) = (e.p_a(), e.p_b());
    if pa <= 0.0 || pa >= 1.0 || pb <= 0.0 || pb >= 1.0 {
        return 0.0;
    }
    // P(AB)P(¬B) − P(A¬B)P(B) equals P(AB) − P(A)P(B) and flips sign
    // exactly when B is replaced by its complement.
    let pab = e.p_ab();
    let cov = pab * (1.0 - pb) - (pa - pab) * pb;
    let var = (pa * (1.0 - pa)) * (pb * (1.0 - pb));
    let rho = cov / var.sqrt();
    if rho.is_finite() {
        rho.clamp(-1.0, 1.0)
    } else {
        0.0
    }
}

fn non_negative(k: Credence) -> Result<f64> {
    let v = k.get();
    if v < 0.0 {
        Err(PdError::NegativeCredence { value: v })
    } else {
        Ok(v)
    }
}

/// `κ₁κ₂ / (κ₁ + κ₂)`; zero when both vanish.
///
/// Evaluated as `lo · (hi / (lo + hi))` with the arguments ordered, so the
/// result is symmetric bit-for-bit and `f(x, x) = x/2` exactly.
pub fn cross_credence(k1: Credence, k2: Credence) -> Result<Credence> {
    let (a, b) = (non_negative(k1)?, non_negative(k2)?);
    Credence::new(harmonic_pair(a, b))
}

fn harmonic_pair(a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if lo == 0.0 {
        return 0.0;
    }
    lo * (hi / (lo + hi))
}

/// Harmonic sum `1/κ = Σ 1/κ_i`; zero if any credence is zero.
pub fn cross_credence_chain(ks: &[Credence]) -> Result<Credence> {
    let vals = ks.iter().map(|&k| non_negative(k)).collect::<Result<Vec<_>>>()?;
    match vals.as_slice() {
        [] => Err(PdError::Invalid("empty cross-credence chain".into())),
        [only] => Credence::new(*only),
        _ if vals.contains(&0.0) => Ok(Credence::ZERO),
        _ => {
            let inv: ExactSum = vals.iter().map(|v| 1.0 / v).collect();
            Credence::new(1.0 / inv.value())
        }
    }
}

/// Cross-credence from `A` to `B`: `|ρ|κ₁κ₂ / (|ρ|κ₁ + κ₂)`.
///
/// Only the first credence is discounted by the correlation.
pub fn unilateral_cross_credence(rho: f64, k1: Credence, k2: Credence) -> Result<Credence> {
    let (a, b) = (non_negative(k1)?, non_negative(k2)?);
    let r = correlation_magnitude(rho)?;
    Credence::new(harmonic_pair(r * a, b))
}

/// Symmetric variant `|ρ| κ₁κ₂ / (κ₁ + κ₂)`.
pub fn bilateral_cross_credence(rho: f64, k1: Credence, k2: Credence) -> Result<Credence> {
    let (a, b) = (non_negative(k1)?, non_negative(k2)?);
    let r = correlation_magnitude(rho)?;
    Credence::new(r * harmonic_pair(a, b))
}

fn correlation_magnitude(rho: f64) -> Result<f64> {
    if !rho.is_finite() {
        return Err(PdError::NonFinite { what: "correlation" });
    }
    if !(-1.0..=1.0).contains(&rho) {
        return Err(PdError::Range {
            what: "correlation",
            value: rho,
            lo: -1.0,
            hi: 1.0,
        });
    }
    Ok(rho.abs())
}
