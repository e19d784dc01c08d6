use probdyn::confirm::{pdct_confirmation, ConfirmationMode};
use probdyn::merge::{opd_merge, spd_merge, MergeState};
use probdyn::repair::{impose_constraint, ContingencyEvidence, ImplicationConstraint};
use probdyn::updating::{jeffrey_update, pd_sequential_update};
use probdyn::{AlphaEvidence, BinaryEvidence, Credence, Distribution, JointPrior, Partition, Table2};

fn k(v: f64) -> Credence {
    Credence::new(v).unwrap()
}

fn b_cells() -> Partition {
    Partition::new(["B", "not-B"]).unwrap()
}

fn prior() -> JointPrior {
    JointPrior::new(k(1.0), b_cells(), Table2::new(vec![0.3, 0.2], vec![0.1, 0.4]).unwrap()).unwrap()
}

fn on_b(kappa: f64, p: f64) -> AlphaEvidence {
    AlphaEvidence::new(k(kappa), Distribution::new(b_cells(), vec![p, 1.0 - p]).unwrap())
}

#[test]
fn sequential_evidence_is_merged_before_updating() {
    let reports = [on_b(0.5, 0.8), on_b(0.5, 0.4)];
    let sequential = pd_sequential_update(&prior(), &reports).unwrap();
    let merged = spd_merge(&reports).unwrap();
    assert_eq!(merged.credence.get(), 1.0);
    let jeffrey = jeffrey_update(&prior(), &merged.dist).unwrap();
    assert!((sequential.updated.p() - jeffrey).abs() < 1e-15);
    assert!((sequential.updated.p() - 0.5833333333333333).abs() < 1e-12);
}

#[test]
fn merge_state_can_be_built_incrementally() {
    let mut state = MergeState::new(b_cells());
    for e in [on_b(1.0, 0.2), on_b(2.0, 0.5), on_b(-1.0, 0.2)] {
        state.absorb(&e).unwrap();
    }
    let e = state.extract().unwrap();
    assert_eq!(e.credence.get(), 2.0);
    assert_eq!(e.dist.probs(), &[0.5, 0.5]);
}

#[test]
fn conflicting_witnesses_confirm_less_than_agreeing_ones() {
    let agree = opd_merge(&[
        BinaryEvidence::new(k(1.0), 0.9).unwrap(),
        BinaryEvidence::new(k(1.0), 0.9).unwrap(),
    ])
    .unwrap()
    .merged;
    let conflict = opd_merge(&[
        BinaryEvidence::new(k(1.0), 0.9).unwrap(),
        BinaryEvidence::new(k(1.0), 0.1).unwrap(),
    ])
    .unwrap()
    .merged;
    let strong = pdct_confirmation(&prior(), &agree, ConfirmationMode::Straight).unwrap();
    let weak = pdct_confirmation(&prior(), &conflict, ConfirmationMode::Straight).unwrap();
    assert!(strong.pdct > weak.pdct);
    assert!(weak.updated_credence < strong.updated_credence);
}

#[test]
fn repaired_table_feeds_a_new_prior() {
    let beta = ContingencyEvidence::new(k(1.0), Table2::new(vec![0.3, 0.2], vec![0.1, 0.4]).unwrap()).unwrap();
    let repaired = impose_constraint(&beta, &ImplicationConstraint::new(k(1.0), 0).unwrap()).unwrap();
    let next = JointPrior::new(repaired.credence(), b_cells(), repaired.table().clone()).unwrap();
    assert_eq!(next.conditional(0), Some(0.8));
    let point = Distribution::new(b_cells(), vec![1.0, 0.0]).unwrap();
    assert_eq!(jeffrey_update(&next, &point).unwrap(), 0.8);
}
