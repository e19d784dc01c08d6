//! Payoffs of the three-bet reflection scheme.
//!
//! A punter buys, at `t0`, (a) 1 on `not-A and B`, (b) `b` on `not-B`,
//! (c) `δ` on `B`, and the bookie buys (a) back at `1 − r` if `B` happens.
//! Whatever the outcome the punter loses `P(B)·δ`.

use crate::error::{PdError, Result};
use crate::types::unit_interval;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetScenario {
    /// `P₀(B)`.
    pub p_b: f64,
    /// `P₀(not-A | B)`.
    pub b: f64,
    /// The announced later probability `P₁(A)`, strictly inside `(0, 1)`.
    pub r: f64,
}

impl BetScenario {
    pub fn new(p_b: f64, b: f64, r: f64) -> Result<Self> {
        let p_b = unit_interval("P(B)", p_b)?;
        let b = unit_interval("b", b)?;
        if !r.is_finite() {
            return Err(PdError::NonFinite { what: "r" });
        }
        if !(r > 0.0 && r < 1.0) {
            return Err(PdError::Range {
                what: "r",
                value: r,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(BetScenario { p_b, b, r })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetOutcome {
    pub price_a: f64,
    pub price_b: f64,
    pub price_c: f64,
    pub total_price: f64,
    pub loss_if_not_b: f64,
    pub loss_if_b: f64,
    /// `b − (1 − r)`; zero exactly when the scheme is coherent.
    pub delta: f64,
}

pub fn evaluate_bets(s: &BetScenario) -> BetOutcome {
    let delta = s.b - (1.0 - s.r);
    let total_price = s.b + s.p_b * delta;
    BetOutcome {
        price_a: s.p_b * s.b,
        price_b: (1.0 - s.p_b) * s.b,
        price_c: s.p_b * delta,
        total_price,
        loss_if_not_b: total_price - s.b,
        loss_if_b: total_price - (1.0 - s.r) - delta,
        delta,
    }
}
