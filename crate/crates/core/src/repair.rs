//! Revising a fallible contingency evidence once it is learned that `A`
//! implies one of the `B_i`.
//!
//! The implication is conditional: it moves `A`-mass into the implied column
//! and is neutral about `not-A`. The original evidence is never discarded,
//! the constraint is straight-merged into it.

use crate::association::cross_credence;
use crate::error::{PdError, Result};
use crate::exact::ExactSum;
use crate::merge::Accumulator;
use crate::tolerance::TOL_SUM;
use crate::types::{unit_interval, Credence, Table2};

/// `[κ; α]` on `{A, not-A} x {B_1..B_n}` with `κ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyEvidence {
    credence: Credence,
    table: Table2,
}

impl ContingencyEvidence {
    pub fn new(credence: Credence, table: Table2) -> Result<Self> {
        if credence.get() <= 0.0 {
            return Err(PdError::Invalid(format!(
                "contingency credence must be positive, got {credence}"
            )));
        }
        Ok(ContingencyEvidence { credence, table })
    }

    pub fn credence(&self) -> Credence {
        self.credence
    }

    pub fn table(&self) -> &Table2 {
        &self.table
    }
}

/// `[κ̃; P(A → B_i) = p]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicationConstraint {
    pub credence: Credence,
    pub target_column: usize,
    truth_probability: f64,
}

impl ImplicationConstraint {
    pub fn new(credence: Credence, target_column: usize) -> Result<Self> {
        ImplicationConstraint::with_probability(credence, target_column, 1.0)
    }

    pub fn with_probability(credence: Credence, target_column: usize, truth_probability: f64) -> Result<Self> {
        credence.require_non_negative()?;
        Ok(ImplicationConstraint {
            credence,
            target_column,
            truth_probability: unit_interval("truth probability", truth_probability)?,
        })
    }

    pub fn truth_probability(&self) -> f64 {
        self.truth_probability
    }

    /// `p·κ̃`: a constraint true with probability `p` weighs that much less.
    pub fn effective_credence(&self) -> f64 {
        self.truth_probability * self.credence.get()
    }

    fn check_column(&self, table: &Table2) -> Result<()> {
        if self.target_column >= table.width() {
            return Err(PdError::Invalid(format!(
                "constraint column {} outside a {}-column table",
                self.target_column + 1,
                table.width()
            )));
        }
        Ok(())
    }
}

/// Moves the whole `A` row into column `i`; the `not-A` row is untouched.
pub fn constrained_table(table: &Table2, target_column: usize) -> Result<Table2> {
    if target_column >= table.width() {
        return Err(PdError::Invalid(format!(
            "column {} outside a {}-column table",
            target_column + 1,
            table.width()
        )));
    }
    let mut top = vec![0.0; table.width()];
    top[target_column] = table.top_sum();
    Table2::new(top, table.bottom().to_vec())
}

/// The constraint viewed as evidence in its own right: the constrained table
/// with the harmonic credence `κ̃κ / (κ̃ + κ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedEvidence {
    pub credence: Credence,
    pub table: Table2,
}

pub fn constrained_evidence(beta: &ContingencyEvidence, c: &ImplicationConstraint) -> Result<ConstrainedEvidence> {
    c.check_column(&beta.table)?;
    Ok(ConstrainedEvidence {
        credence: cross_credence(Credence::new(c.effective_credence())?, beta.credence)?,
        table: constrained_table(&beta.table, c.target_column)?,
    })
}

fn merge_tables(parts: &[(f64, &Table2)]) -> Result<ContingencyEvidence> {
    let n = parts[0].1.width();
    let mut acc = Accumulator::new(2 * n);
    for (k, t) in parts {
        acc.add(*k, &t.cells());
    }
    let (credence, cells) = acc.mean().map_err(|e| match e {
        PdError::ZeroTotalCredence => PdError::Degenerate("revision has zero total credence"),
        other => other,
    })?;
    if credence <= TOL_SUM {
        return Err(PdError::Degenerate("revision has zero total credence"));
    }
    ContingencyEvidence::new(Credence::new(credence)?, Table2::from_cells(n, cells)?)
}

/// Straight merger `[κ + p·κ̃; (κα + p·κ̃·α̌) / (κ + p·κ̃)]` of the evidence
/// with one constraint.
pub fn impose_constraint(beta: &ContingencyEvidence, c: &ImplicationConstraint) -> Result<ContingencyEvidence> {
    c.check_column(&beta.table)?;
    let k = c.effective_credence();
    if k == 0.0 {
        return Ok(beta.clone());
    }
    let constrained = constrained_table(&beta.table, c.target_column)?;
    merge_tables(&[(beta.credence.get(), &beta.table), (k, &constrained)])
}

/// `P₁(A|B) = (a + w·b) / (a + w·b + c)` with `w = r / (1 + r)` and `r`
/// the ratio of constraint credence to evidence credence.
///
/// `a`, `c` are the `A` and `not-A` cells of the implied column and `b` is
/// the `A`-mass outside it.
pub fn repaired_conditional(a: f64, b: f64, c: f64, ratio: f64) -> Result<f64> {
    for (what, v) in [("a", a), ("b", b), ("c", c), ("credence ratio", ratio)] {
        if !v.is_finite() {
            return Err(PdError::NonFinite { what });
        }
        if v < 0.0 {
            return Err(PdError::Range {
                what,
                value: v,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
    }
    let w = ratio / (1.0 + ratio);
    let num = a + w * b;
    let den = num + c;
    if den <= TOL_SUM {
        return Err(PdError::Degenerate("conditioning column carries no mass"));
    }
    Ok((num / den).clamp(0.0, 1.0))
}

/// Imposes several constraints at once.
///
/// Each constraint contributes its constrained table with harmonic credence
/// `κ̌_i = p_i κ̃_i κ / (p_i κ̃_i + κ)`; those are straight-merged and the
/// result merged into `beta`. The outcome is independent of constraint order.
///
/// With a single constraint this weighs the constraint by `κ̌` rather than
/// `κ̃`, so it does not coincide with [`impose_constraint`].
pub fn impose_constraints(beta: &ContingencyEvidence, cs: &[ImplicationConstraint]) -> Result<ContingencyEvidence> {
    let parts = cs
        .iter()
        .map(|c| {
            let ce = constrained_evidence(beta, c)?;
            Ok((ce.credence.get(), ce.table))
        })
        .collect::<Result<Vec<_>>>()?;
    let total: ExactSum = parts.iter().map(|(k, _)| *k).collect();
    if total.value() == 0.0 {
        return Ok(beta.clone());
    }
    let mut all = vec![(beta.credence.get(), &beta.table)];
    all.extend(parts.iter().map(|(k, t)| (*k, t)));
    merge_tables(&all)
}

/// `P(A | B_i)` read off a table, `None` when the column is empty.
pub fn column_conditional(table: &Table2, i: usize) -> Option<f64> {
    let pb = table.column_sum(i);
    (pb > TOL_SUM).then(|| (table.top()[i] / pb).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::TOL_EQ;
    use proptest::prelude::*;

    fn k(x: f64) -> Credence {
        Credence::new(x).unwrap()
    }

    fn table(top: &[f64], bottom: &[f64]) -> Table2 {
        Table2::new(top.to_vec(), bottom.to_vec()).unwrap()
    }

    fn worked() -> ContingencyEvidence {
        ContingencyEvidence::new(k(1.0), table(&[0.3, 0.2], &[0.1, 0.4])).unwrap()
    }

    fn close(a: &Table2, b: &Table2, tol: f64) -> bool {
        a.cells().iter().zip(b.cells()).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn constrained_table_collapses_top_row() {
        let t = constrained_table(worked().table(), 0).unwrap();
        assert!(close(&t, &table(&[0.5, 0.0], &[0.1, 0.4]), TOL_EQ));
        let empty = table(&[0.0, 0.0], &[0.3, 0.7]);
        assert_eq!(constrained_table(&empty, 0).unwrap(), empty);
        let done = table(&[0.35, 0.0], &[0.25, 0.4]);
        assert_eq!(constrained_table(&done, 0).unwrap(), done);
        assert!(constrained_table(&done, 2).is_err());
    }

    #[test]
    fn single_constraint_averages_tables() {
        let c = ImplicationConstraint::new(k(1.0), 0).unwrap();
        let b1 = impose_constraint(&worked(), &c).unwrap();
        assert_eq!(b1.credence().get(), 2.0);
        assert!(close(b1.table(), &table(&[0.4, 0.1], &[0.1, 0.4]), TOL_EQ));
    }

    #[test]
    fn zero_credence_constraint_changes_nothing() {
        let c = ImplicationConstraint::new(k(0.0), 0).unwrap();
        assert_eq!(impose_constraint(&worked(), &c).unwrap(), worked());
        let c = ImplicationConstraint::with_probability(k(5.0), 0, 0.0).unwrap();
        assert_eq!(impose_constraint(&worked(), &c).unwrap(), worked());
        assert_eq!(impose_constraints(&worked(), &[c, c]).unwrap(), worked());
        assert_eq!(impose_constraints(&worked(), &[]).unwrap(), worked());
    }

    #[test]
    fn vacuous_constraint_keeps_conditional() {
        let beta = ContingencyEvidence::new(k(1.5), table(&[0.35, 0.0], &[0.25, 0.4])).unwrap();
        let c = ImplicationConstraint::new(k(3.0), 0).unwrap();
        let b1 = impose_constraint(&beta, &c).unwrap();
        let before = column_conditional(beta.table(), 0).unwrap();
        let after = column_conditional(b1.table(), 0).unwrap();
        assert!((before - after).abs() <= TOL_EQ);
    }

    #[test]
    fn repaired_conditional_endpoints() {
        let (a, b, c) = (0.3, 0.2, 0.1);
        assert_eq!(repaired_conditional(a, b, c, 0.0).unwrap(), a / (a + c));
        let far = repaired_conditional(a, b, c, 1e9).unwrap();
        let limit = (a + b) / (a + b + c);
        assert!(((far - limit) / limit).abs() <= 1e-8);
        assert!((repaired_conditional(a, b, c, 1.0).unwrap() - 0.8).abs() <= TOL_EQ);
        assert!(matches!(
            repaired_conditional(0.0, 0.0, 0.0, 1.0),
            Err(PdError::Degenerate(_))
        ));
        assert!(repaired_conditional(0.1, 0.1, 0.1, -1.0).is_err());
    }

    #[test]
    fn truth_probability_scales_constraint_credence() {
        let half = ImplicationConstraint::with_probability(k(4.0), 0, 0.5).unwrap();
        let two = ImplicationConstraint::new(k(2.0), 0).unwrap();
        assert_eq!(
            impose_constraint(&worked(), &half).unwrap(),
            impose_constraint(&worked(), &two).unwrap()
        );
    }

    #[test]
    fn harmonic_credence_of_constraint() {
        let c = ImplicationConstraint::new(k(3.0), 1).unwrap();
        let beta = ContingencyEvidence::new(k(6.0), table(&[0.3, 0.2], &[0.1, 0.4])).unwrap();
        let ce = constrained_evidence(&beta, &c).unwrap();
        assert!((ce.credence.get() - 2.0).abs() <= TOL_EQ);
        assert!(close(&ce.table, &table(&[0.0, 0.5], &[0.1, 0.4]), TOL_EQ));
    }

    #[test]
    fn single_element_generalization_uses_harmonic_weight() {
        let c = ImplicationConstraint::new(k(1.0), 0).unwrap();
        let via_multi = impose_constraints(&worked(), &[c]).unwrap();
        // weight κ̌ = 1·1/(1+1) = 0.5: top = (1·(0.3,0.2) + 0.5·(0.5,0)) / 1.5
        assert!((via_multi.credence().get() - 1.5).abs() <= TOL_EQ);
        assert!((via_multi.table().top()[0] - 0.55 / 1.5).abs() <= TOL_EQ);
        let via_single = impose_constraint(&worked(), &c).unwrap();
        assert!((via_single.table().top()[0] - via_multi.table().top()[0]).abs() > 1e-3);
    }

    #[test]
    fn contingency_needs_positive_credence() {
        assert!(ContingencyEvidence::new(k(0.0), worked().table().clone()).is_err());
    }

    fn cells(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..1.0, 2 * n).prop_filter_map("mass", |w| {
            let s: f64 = w.iter().sum();
            (s > 1e-3).then(|| w.iter().map(|x| x / s).collect())
        })
    }

    proptest! {
        #[test]
        fn merger_matches_closed_form(c in cells(2), kappa in 0.1f64..10.0, kt in 0.0f64..10.0) {
            let beta = ContingencyEvidence::new(k(kappa), Table2::from_cells(2, c.clone()).unwrap()).unwrap();
            let b1 = impose_constraint(&beta, &ImplicationConstraint::new(k(kt), 0).unwrap()).unwrap();
            let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
            let k1 = kappa + kt;
            let closed = [((kappa + kt) * a + kt * b) / k1, kappa * b / k1, (kappa + kt) * cc / k1, (kappa + kt) * d / k1];
            for (x, y) in b1.table().cells().iter().zip(closed) {
                prop_assert!((x - y).abs() <= TOL_EQ);
            }
            // retention: κ₁α₁ − κ̃α̌ recovers κα
            let check = constrained_table(beta.table(), 0).unwrap();
            for ((x1, xc), x0) in b1.table().cells().iter().zip(check.cells()).zip(beta.table().cells()) {
                prop_assert!((b1.credence().get() * x1 - kt * xc - kappa * x0).abs() <= 1e-11);
            }
            if let (Some(p1), Ok(rc)) = (
                column_conditional(b1.table(), 0),
                repaired_conditional(a, b, cc, kt / kappa),
            ) {
                prop_assert!((p1 - rc).abs() <= 1e-11);
            }
        }

        #[test]
        fn repaired_conditional_is_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.01f64..1.0, r1 in 0.0f64..100.0, dr in 0.0f64..100.0) {
            let lo = repaired_conditional(a, b, c, r1).unwrap();
            let hi = repaired_conditional(a, b, c, r1 + dr).unwrap();
            prop_assert!(hi >= lo - 1e-15);
        }

        #[test]
        fn multiple_constraints_commute(c in cells(3), kappa in 0.1f64..5.0, ks in prop::collection::vec((0.0f64..5.0, 0usize..3, 0.0f64..=1.0), 1..5)) {
            let beta = ContingencyEvidence::new(k(kappa), Table2::from_cells(3, c).unwrap()).unwrap();
            let cs: Vec<_> = ks.iter().map(|&(kt, col, p)| ImplicationConstraint::with_probability(k(kt), col, p).unwrap()).collect();
            let fwd = impose_constraints(&beta, &cs).unwrap();
            let mut rev = cs.clone();
            rev.reverse();
            prop_assert_eq!(&fwd, &impose_constraints(&beta, &rev).unwrap());
            prop_assert!((fwd.table().cells().iter().sum::<f64>() - 1.0).abs() <= TOL_SUM);
        }
    }
}
