//! Domain values shared by every operation: credences, partitions,
//! distributions and the evidences built from them.
//!
//! Every constructor validates; a value that exists satisfies its
//! invariants.

use std::fmt;
use std::sync::Arc;

use crate::error::{PdError, Result};
use crate::exact::exact_sum;
use crate::tolerance::{TOL_EQ, TOL_SUM};

/// A relative, unbounded second-order degree of belief.
///
/// Credence has no fixed unit; only ratios between credences in one
/// discourse are meaningful. Negative values denote counter-evidence and are
/// accepted only by straight merging.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Credence(f64);

impl Credence {
    pub const ZERO: Credence = Credence(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(PdError::NonFinite { what: "credence" });
        }
        Ok(Credence(value))
    }

    /// A credence that must not be negative.
    pub fn non_negative(value: f64) -> Result<Self> {
        let c = Credence::new(value)?;
        c.require_non_negative()?;
        Ok(c)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub(crate) fn require_non_negative(self) -> Result<Self> {
        if self.0 < 0.0 {
            Err(PdError::NegativeCredence { value: self.0 })
        } else {
            Ok(self)
        }
    }
}

impl fmt::Display for Credence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An ordered list of at least two distinct cell names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Arc<[String]>,
}

impl Partition {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(PdError::Invalid(format!(
                "a partition needs at least two cells, got {}",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(PdError::Invalid(format!("cell {i} has an empty label")));
            }
            if labels[..i].contains(l) {
                return Err(PdError::Invalid(format!("duplicate cell label {l:?}")));
            }
        }
        Ok(Partition { labels: labels.into() })
    }

    /// The two-cell partition `{A, not-A}`.
    pub fn binary() -> Self {
        Partition {
            labels: vec!["A".to_string(), "not-A".to_string()].into(),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub(crate) fn require_same(&self, other: &Partition) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(PdError::PartitionMismatch {
                left: self.labels.to_vec(),
                right: other.labels.to_vec(),
            })
        }
    }
}

/// Checks a probability vector against the simplex and repairs rounding.
///
/// Values below `-TOL_SUM` or a sum off by more than `TOL_SUM` are errors.
/// Survivors are clamped into `[0, 1]`; if the clamped sum is still off by
/// more than `TOL_EQ` the vector is divided by its sum. Already-normalized
/// vectors pass through bit-for-bit, so validation is idempotent.
pub(crate) fn simplex(mut probs: Vec<f64>) -> Result<Vec<f64>> {
    for (index, &value) in probs.iter().enumerate() {
        if !value.is_finite() {
            return Err(PdError::NonFinite { what: "probability" });
        }
        if value < -TOL_SUM {
            return Err(PdError::NegativeProb { index, value });
        }
    }
    let sum = exact_sum(&probs);
    if (sum - 1.0).abs() > TOL_SUM {
        return Err(PdError::SumViolation { sum });
    }
    for p in probs.iter_mut() {
        *p = p.clamp(0.0, 1.0);
    }
    let sum = exact_sum(&probs);
    if (sum - 1.0).abs() > TOL_EQ {
        for p in probs.iter_mut() {
            *p /= sum;
        }
    }
    Ok(probs)
}

pub(crate) fn unit_interval(what: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(PdError::NonFinite { what });
    }
    if !(0.0..=1.0).contains(&value) {
        return Err(PdError::Range {
            what,
            value,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(value)
}

/// A probability distribution on a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    partition: Partition,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(partition: Partition, probs: Vec<f64>) -> Result<Self> {
        validate_distribution(probs, partition)
    }

    /// `(p, 1 - p)` on the two-cell partition.
    pub fn binary(p: f64) -> Result<Self> {
        let p = unit_interval("p", p)?;
        Distribution::new(Partition::binary(), vec![p, 1.0 - p])
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Validates `probs` as a distribution on `partition`.
pub fn validate_distribution(probs: Vec<f64>, partition: Partition) -> Result<Distribution> {
    if probs.len() != partition.len() {
        return Err(PdError::Invalid(format!(
            "{} probabilities for a {}-cell partition",
            probs.len(),
            partition.len()
        )));
    }
    let probs = simplex(probs)?;
    Ok(Distribution { partition, probs })
}

/// A distribution tagged with the credence it is held with.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaEvidence {
    pub credence: Credence,
    pub dist: Distribution,
}

impl AlphaEvidence {
    pub fn new(credence: Credence, dist: Distribution) -> Self {
        AlphaEvidence { credence, dist }
    }

    pub fn partition(&self) -> &Partition {
        self.dist.partition()
    }
}

/// `[credence; p]`, evidence for a single proposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryEvidence {
    pub credence: Credence,
    p: f64,
}

impl BinaryEvidence {
    pub fn new(credence: Credence, p: f64) -> Result<Self> {
        Ok(BinaryEvidence {
            credence,
            p: unit_interval("p", p)?,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn to_alpha(&self, partition: Partition) -> Result<AlphaEvidence> {
        if partition.len() != 2 {
            return Err(PdError::Invalid(format!(
                "binary evidence needs a two-cell partition, got {}",
                partition.len()
            )));
        }
        Ok(AlphaEvidence::new(
            self.credence,
            Distribution::new(partition, vec![self.p, 1.0 - self.p])?,
        ))
    }

    pub fn from_alpha(e: &AlphaEvidence) -> Result<Self> {
        if e.dist.len() != 2 {
            return Err(PdError::Invalid(format!(
                "expected a two-cell evidence, got {} cells",
                e.dist.len()
            )));
        }
        BinaryEvidence::new(e.credence, e.dist.probs()[0])
    }
}

/// One `[credence; q]` pair per cell; the `q` need not sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedBinarySet {
    partition: Partition,
    entries: Vec<(Credence, f64)>,
}

impl WeightedBinarySet {
    pub fn new(partition: Partition, entries: Vec<(Credence, f64)>) -> Result<Self> {
        if entries.len() != partition.len() {
            return Err(PdError::Invalid(format!(
                "{} entries for a {}-cell partition",
                entries.len(),
                partition.len()
            )));
        }
        for &(k, q) in &entries {
            k.require_non_negative()?;
            unit_interval("q", q)?;
        }
        Ok(WeightedBinarySet { partition, entries })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn entries(&self) -> &[(Credence, f64)] {
        &self.entries
    }
}

/// A 2 x n probability table: row 0 is `A`, row 1 is `not-A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2 {
    top: Vec<f64>,
    bottom: Vec<f64>,
}

impl Table2 {
    pub fn new(top: Vec<f64>, bottom: Vec<f64>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(PdError::Invalid(format!(
                "table rows differ in length: {} vs {}",
                top.len(),
                bottom.len()
            )));
        }
        if top.is_empty() {
            return Err(PdError::Invalid("table has no columns".into()));
        }
        let n = top.len();
        let mut flat = top;
        flat.extend(bottom);
        let mut flat = simplex(flat)?;
        let bottom = flat.split_off(n);
        Ok(Table2 { top: flat, bottom })
    }

    pub fn top(&self) -> &[f64] {
        &self.top
    }

    pub fn bottom(&self) -> &[f64] {
        &self.bottom
    }

    pub fn width(&self) -> usize {
        self.top.len()
    }

    /// `P(A)`.
    pub fn top_sum(&self) -> f64 {
        exact_sum(&self.top)
    }

    /// `P(B_j)`.
    pub fn column_sum(&self, j: usize) -> f64 {
        self.top[j] + self.bottom[j]
    }

    /// Row-major cells, top row first.
    pub fn cells(&self) -> Vec<f64> {
        self.top.iter().chain(&self.bottom).copied().collect()
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<f64>) -> Result<Self> {
        let mut top = cells;
        let bottom = top.split_off(n);
        Table2::new(top, bottom)
    }
}

/// Prior evidence on `{A, not-A} x {B_1..B_m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPrior {
    pub credence: Credence,
    b_partition: Partition,
    table: Table2,
}

impl JointPrior {
    pub fn new(credence: Credence, b_partition: Partition, table: Table2) -> Result<Self> {
        credence.require_non_negative()?;
        if table.width() != b_partition.len() {
            return Err(PdError::Invalid(format!(
                "joint table has {} columns for a {}-cell B partition",
                table.width(),
                b_partition.len()
            )));
        }
        Ok(JointPrior {
            credence,
            b_partition,
            table,
        })
    }

    pub fn b_partition(&self) -> &Partition {
        &self.b_partition
    }

    pub fn table(&self) -> &Table2 {
        &self.table
    }

    /// The first-order triple `{P(A), P(A B_j), P(B_j)}` for column `j`.
    pub fn first_order(&self, j: usize) -> Result<FirstOrderPrior> {
        FirstOrderPrior::new(
            self.table.top_sum().min(1.0),
            self.table.top[j],
            self.table.column_sum(j).min(1.0),
        )
    }

    /// `P(A | B_j)`, or `None` when `P(B_j)` is zero within `TOL_SUM`.
    pub fn conditional(&self, j: usize) -> Option<f64> {
        let pb = self.table.column_sum(j);
        (pb > TOL_SUM).then(|| (self.table.top[j] / pb).clamp(0.0, 1.0))
    }
}

/// `P(A)`, `P(AB)` and `P(B)`: everything first-order theory knows about
/// two propositions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderPrior {
    p_a: f64,
    p_ab: f64,
    p_b: f64,
}

impl FirstOrderPrior {
    pub fn new(p_a: f64, p_ab: f64, p_b: f64) -> Result<Self> {
        let p_a = unit_interval("P(A)", p_a)?;
        let p_ab = unit_interval("P(AB)", p_ab)?;
        let p_b = unit_interval("P(B)", p_b)?;
        if p_ab > p_a.min(p_b) + TOL_SUM {
            return Err(PdError::Invalid(format!(
                "P(AB) = {p_ab} exceeds min(P(A), P(B)) = {}",
                p_a.min(p_b)
            )));
        }
        if p_a + p_b - p_ab > 1.0 + TOL_SUM {
            return Err(PdError::Invalid(format!(
                "P(A) + P(B) - P(AB) = {} exceeds 1",
                p_a + p_b - p_ab
            )));
        }
        Ok(FirstOrderPrior { p_a, p_ab, p_b })
    }

    pub fn p_a(&self) -> f64 {
        self.p_a
    }

    pub fn p_ab(&self) -> f64 {
        self.p_ab
    }

    pub fn p_b(&self) -> f64 {
        self.p_b
    }
}

/// Row and column marginals of a joint prior: `P(A)` and `P(B_j)`.
pub fn joint_marginals(prior: &JointPrior) -> (f64, Vec<f64>) {
    let t = prior.table();
    let p_a = t.top_sum();
    let p_b = (0..t.width()).map(|j| t.column_sum(j)).collect();
    (p_a, p_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two() -> Partition {
        Partition::new(["B", "not-B"]).unwrap()
    }

    #[test]
    fn proper_distribution_is_accepted() {
        let d = validate_distribution(vec![0.3, 0.7], two()).unwrap();
        assert_eq!(d.probs(), &[0.3, 0.7]);
    }

    #[test]
    fn oversummed_distribution_is_rejected() {
        let err = validate_distribution(vec![0.5, 0.6], two()).unwrap_err();
        assert!(matches!(err, PdError::SumViolation { .. }));
    }

    #[test]
    fn point_mass_is_accepted() {
        let p = Partition::new(["x", "y", "z"]).unwrap();
        let d = validate_distribution(vec![1.0, 0.0, 0.0], p).unwrap();
        assert_eq!(d.probs(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn negative_probability_is_rejected() {
        let err = validate_distribution(vec![1.1, -0.1], two()).unwrap_err();
        assert!(matches!(err, PdError::NegativeProb { index: 1, .. }));
    }

    #[test]
    fn rounding_noise_is_clamped_and_renormalized() {
        let d = validate_distribution(vec![1.0 + 4e-10, -4e-10], two()).unwrap();
        assert_eq!(d.probs(), &[1.0, 0.0]);
        let d = validate_distribution(vec![0.5 + 3e-10, 0.5], two()).unwrap();
        assert!((exact_sum(d.probs()) - 1.0).abs() <= TOL_EQ);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(
            validate_distribution(vec![1.0], two()),
            Err(PdError::Invalid(_))
        ));
    }

    #[test]
    fn partitions_need_two_distinct_cells() {
        assert!(Partition::new(["only"]).is_err());
        assert!(Partition::new(["a", "a"]).is_err());
        assert!(Partition::new(["a", ""]).is_err());
        assert_eq!(Partition::new(["a", "b"]).unwrap().index_of("b"), Some(1));
    }

    #[test]
    fn credence_rejects_infinity() {
        assert!(Credence::new(f64::INFINITY).is_err());
        assert!(Credence::new(f64::NAN).is_err());
        assert!(Credence::new(-3.0).is_ok());
        assert!(Credence::non_negative(-3.0).is_err());
    }

    fn prior(top: [f64; 2], bottom: [f64; 2]) -> JointPrior {
        JointPrior::new(
            Credence::new(1.0).unwrap(),
            two(),
            Table2::new(top.to_vec(), bottom.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn marginals_of_worked_table() {
        let (pa, pb) = joint_marginals(&prior([0.3, 0.2], [0.1, 0.4]));
        assert!((pa - 0.5).abs() <= TOL_EQ);
        assert!((pb[0] - 0.4).abs() <= TOL_EQ);
        assert!((pb[1] - 0.6).abs() <= TOL_EQ);
    }

    #[test]
    fn marginals_with_empty_top_row() {
        let (pa, pb) = joint_marginals(&prior([0.0, 0.0], [0.5, 0.5]));
        assert_eq!(pa, 0.0);
        assert_eq!(pb, vec![0.5, 0.5]);
    }

    #[test]
    fn marginals_of_uniform_table() {
        let (pa, pb) = joint_marginals(&prior([0.25, 0.25], [0.25, 0.25]));
        assert_eq!(pa, 0.5);
        assert_eq!(pb, vec![0.5, 0.5]);
    }

    #[test]
    fn frechet_bounds_are_enforced() {
        assert!(FirstOrderPrior::new(0.5, 0.3, 0.4).is_ok());
        assert!(FirstOrderPrior::new(0.5, 0.45, 0.4).is_err());
        assert!(FirstOrderPrior::new(0.8, 0.1, 0.7).is_err());
        assert!(FirstOrderPrior::new(1.2, 0.1, 0.7).is_err());
    }

    fn raw_simplex(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..1.0, n).prop_filter_map("non-zero mass", |w| {
            let s: f64 = w.iter().sum();
            (s > 1e-6).then(|| w.iter().map(|x| x / s).collect())
        })
    }

    proptest! {
        #[test]
        fn constructed_distributions_lie_on_the_simplex(probs in raw_simplex(5)) {
            let p = Partition::new(["a", "b", "c", "d", "e"]).unwrap();
            let d = validate_distribution(probs, p).unwrap();
            prop_assert!(d.probs().iter().all(|&x| (0.0..=1.0).contains(&x)));
            prop_assert!((exact_sum(d.probs()) - 1.0).abs() <= TOL_SUM);
        }

        #[test]
        fn validation_is_idempotent(probs in raw_simplex(4)) {
            let p = Partition::new(["a", "b", "c", "d"]).unwrap();
            let once = validate_distribution(probs, p.clone()).unwrap();
            let twice = validate_distribution(once.probs().to_vec(), p).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn joint_marginals_are_probabilities(cells in raw_simplex(6)) {
            let t = Table2::from_cells(3, cells).unwrap();
            let jp = JointPrior::new(
                Credence::new(1.0).unwrap(),
                Partition::new(["x", "y", "z"]).unwrap(),
                t,
            ).unwrap();
            let (pa, pb) = joint_marginals(&jp);
            prop_assert!((0.0..=1.0 + TOL_SUM).contains(&pa));
            prop_assert!(pb.iter().all(|&x| (0.0..=1.0 + TOL_SUM).contains(&x)));
            prop_assert!((exact_sum(&pb) - 1.0).abs() <= TOL_SUM);
            for j in 0..3 {
                let fo = jp.first_order(j).unwrap();
                prop_assert!(fo.p_ab() <= fo.p_a().min(fo.p_b()) + TOL_SUM);
                prop_assert!(fo.p_a() + fo.p_b() - fo.p_ab() <= 1.0 + TOL_SUM);
            }
        }
    }
}
