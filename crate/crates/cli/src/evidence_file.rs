//! The evidence file: a small TOML document naming a partition and carrying
//! exactly one payload.
//!
//! Input payloads are `evidences`, `weighted_set`, `joint`, `first_order`,
//! `contingency` and `bet`. Commands answer with the same format, using either
//! an input payload (mergers, normalization) or one of the report payloads
//! `update`, `repair`, `confirmation`, `bet_outcome` and `conditional`. Every file the tool
//! writes parses back to the identical value.
//!
//! Floats are written in shortest round-trip form, so files are lossless and
//! byte-stable.

use std::fmt::Write as _;

use probdyn::confirm::{ConfirmationMode, ConfirmationReport};
use probdyn::dutchbook::{BetOutcome, BetScenario};
use probdyn::repair::ContingencyEvidence;
use probdyn::{
    AlphaEvidence, Credence, Distribution, FirstOrderPrior, JointPrior, Partition, Table2, WeightedBinarySet,
};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceFile {
    /// Cell names. For evidences and weighted sets these are the cells of the
    /// distribution; for tables they label the two rows (`A`, `not-A`); for
    /// first-order triples and bets they name the propositions `A` and `B`.
    pub partition: Partition,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Evidences(Vec<AlphaEvidence>),
    WeightedSet(WeightedBinarySet),
    Joint(JointPrior),
    FirstOrder(FirstOrderPrior),
    Contingency(Contingency),
    Bet(BetScenario),
    Update(UpdateReport),
    Repair(RepairReport),
    Confirmation(ConfirmationRecord),
    BetOutcome(BetOutcome),
    Conditional(ConditionalReport),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Evidences(_) => "evidences",
            Payload::WeightedSet(_) => "weighted_set",
            Payload::Joint(_) => "joint",
            Payload::FirstOrder(_) => "first_order",
            Payload::Contingency(_) => "contingency",
            Payload::Bet(_) => "bet",
            Payload::Update(_) => "update",
            Payload::Repair(_) => "repair",
            Payload::Confirmation(_) => "confirmation",
            Payload::BetOutcome(_) => "bet_outcome",
            Payload::Conditional(_) => "conditional",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contingency {
    pub b_partition: Partition,
    pub evidence: ContingencyEvidence,
}

#[derive(Debug, Clone, PartialEq)]
pub enum UpdateReport {
    Jeffrey {
        b_partition: Partition,
        p: f64,
    },
    Pd {
        b_partition: Partition,
        credence: f64,
        p: f64,
        per_cell_credences: Vec<f64>,
        normalized_weights: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairMethod {
    /// One constraint merged with its own credence.
    Single,
    /// Several constraints merged with harmonic credences.
    Multiple,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepairReport {
    pub method: RepairMethod,
    pub b_partition: Partition,
    pub revised: ContingencyEvidence,
    /// Zero-based constrained columns, in constraint order.
    pub columns: Vec<usize>,
    /// `P₁(A | B_i)` for each constrained column.
    pub conditionals: Vec<f64>,
    /// Harmonic credence of the constrained evidence (single constraint only).
    pub harmonic_credence: Option<f64>,
}

/// First-order update of `P(A)` on accepting `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalReport {
    /// `P₀(A|B)`.
    pub p: f64,
    /// `P₀(A|B) − P₀(A)`.
    pub confirmation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfirmationRecord {
    pub mode: ConfirmationMode,
    pub report: ConfirmationReport,
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    partition: Vec<String>,
    evidences: Option<Vec<RawEvidence>>,
    weighted_set: Option<Vec<RawWeighted>>,
    joint: Option<RawTable>,
    first_order: Option<RawFirstOrder>,
    contingency: Option<RawTable>,
    bet: Option<RawBet>,
    update: Option<RawUpdate>,
    repair: Option<RawRepair>,
    confirmation: Option<RawConfirmation>,
    bet_outcome: Option<RawBetOutcome>,
    conditional: Option<RawConditional>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConditional {
    p: f64,
    confirmation: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvidence {
    credence: f64,
    dist: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeighted {
    credence: f64,
    q: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    credence: f64,
    b_partition: Vec<String>,
    cells: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFirstOrder {
    #[serde(rename = "pA")]
    p_a: f64,
    #[serde(rename = "pAB")]
    p_ab: f64,
    #[serde(rename = "pB")]
    p_b: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBet {
    #[serde(rename = "pB")]
    p_b: f64,
    b: f64,
    r: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUpdate {
    method: String,
    b_partition: Vec<String>,
    p: f64,
    credence: Option<f64>,
    per_cell_credences: Option<Vec<f64>>,
    normalized_weights: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRepair {
    method: String,
    credence: f64,
    b_partition: Vec<String>,
    cells: Vec<Vec<f64>>,
    columns: Vec<usize>,
    conditionals: Vec<f64>,
    harmonic_credence: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfirmation {
    mode: String,
    first_order: f64,
    credence_gain: f64,
    probability_gain: f64,
    pdct: f64,
    accord: f64,
    accord_clamped_by: f64,
    updated_credence: f64,
    updated_probability: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBetOutcome {
    price_a: f64,
    price_b: f64,
    price_c: f64,
    total_price: f64,
    loss_if_not_b: f64,
    loss_if_b: f64,
    delta: f64,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn finite(what: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(schema(format!("{what} must be a finite number, got {x}")))
    }
}

fn finite_all(what: &str, xs: &[f64]) -> Result<()> {
    xs.iter().try_for_each(|&x| finite(what, x).map(|_| ()))
}

fn two_rows(partition: &Partition, kind: &str) -> Result<()> {
    if partition.len() == 2 {
        Ok(())
    } else {
        Err(schema(format!(
            "a {kind} file needs a two-cell partition, got {} cells",
            partition.len()
        )))
    }
}

fn table(cells: Vec<Vec<f64>>) -> Result<Table2> {
    let [top, bottom]: [Vec<f64>; 2] = cells
        .try_into()
        .map_err(|c: Vec<Vec<f64>>| schema(format!("cells must have 2 rows, got {}", c.len())))?;
    Ok(Table2::new(top, bottom)?)
}

fn column_count(b_partition: &Partition, t: &Table2) -> Result<()> {
    if t.width() == b_partition.len() {
        Ok(())
    } else {
        Err(schema(format!(
            "table has {} columns for a {}-cell b_partition",
            t.width(),
            b_partition.len()
        )))
    }
}

fn mode_from(s: &str) -> Result<ConfirmationMode> {
    match s {
        "straight" => Ok(ConfirmationMode::Straight),
        "offsetting" => Ok(ConfirmationMode::Offsetting),
        other => Err(schema(format!("unknown confirmation mode {other:?}"))),
    }
}

pub fn mode_name(m: ConfirmationMode) -> &'static str {
    match m {
        ConfirmationMode::Straight => "straight",
        ConfirmationMode::Offsetting => "offsetting",
    }
}

impl EvidenceFile {
    /// Parses and validates a document. Never panics, whatever the input.
    pub fn parse(text: &str) -> Result<EvidenceFile> {
        let raw: RawFile = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let partition = Partition::new(raw.partition)?;

        let present = [
            raw.evidences.is_some(),
            raw.weighted_set.is_some(),
            raw.joint.is_some(),
            raw.first_order.is_some(),
            raw.contingency.is_some(),
            raw.bet.is_some(),
            raw.update.is_some(),
            raw.repair.is_some(),
            raw.confirmation.is_some(),
            raw.bet_outcome.is_some(),
            raw.conditional.is_some(),
        ]
        .iter()
        .filter(|&&p| p)
        .count();
        if present != 1 {
            return Err(schema(format!("expected exactly one payload section, found {present}")));
        }

        let payload = if let Some(es) = raw.evidences {
            if es.is_empty() {
                return Err(schema("evidences is empty"));
            }
            let es = es
                .into_iter()
                .map(|e| {
                    Ok(AlphaEvidence::new(
                        Credence::new(e.credence)?,
                        Distribution::new(partition.clone(), e.dist)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Payload::Evidences(es)
        } else if let Some(ws) = raw.weighted_set {
            let entries = ws
                .into_iter()
                .map(|w| Ok((Credence::new(w.credence)?, w.q)))
                .collect::<Result<Vec<_>>>()?;
            Payload::WeightedSet(WeightedBinarySet::new(partition.clone(), entries)?)
        } else if let Some(j) = raw.joint {
            two_rows(&partition, "joint")?;
            let b = Partition::new(j.b_partition)?;
            let t = table(j.cells)?;
            column_count(&b, &t)?;
            Payload::Joint(JointPrior::new(Credence::new(j.credence)?, b, t)?)
        } else if let Some(f) = raw.first_order {
            two_rows(&partition, "first_order")?;
            Payload::FirstOrder(FirstOrderPrior::new(f.p_a, f.p_ab, f.p_b)?)
        } else if let Some(c) = raw.contingency {
            two_rows(&partition, "contingency")?;
            let b = Partition::new(c.b_partition)?;
            let t = table(c.cells)?;
            column_count(&b, &t)?;
            Payload::Contingency(Contingency {
                b_partition: b,
                evidence: ContingencyEvidence::new(Credence::new(c.credence)?, t)?,
            })
        } else if let Some(b) = raw.bet {
            two_rows(&partition, "bet")?;
            Payload::Bet(BetScenario::new(b.p_b, b.b, b.r)?)
        } else if let Some(u) = raw.update {
            two_rows(&partition, "update")?;
            Payload::Update(parse_update(u)?)
        } else if let Some(r) = raw.repair {
            two_rows(&partition, "repair")?;
            Payload::Repair(parse_repair(r)?)
        } else if let Some(c) = raw.confirmation {
            two_rows(&partition, "confirmation")?;
            Payload::Confirmation(parse_confirmation(c)?)
        } else if let Some(o) = raw.bet_outcome {
            two_rows(&partition, "bet_outcome")?;
            Payload::BetOutcome(parse_bet_outcome(o)?)
        } else if let Some(c) = raw.conditional {
            two_rows(&partition, "conditional")?;
            Payload::Conditional(ConditionalReport {
                p: finite("p", c.p)?,
                confirmation: finite("confirmation", c.confirmation)?,
            })
        } else {
            unreachable!("exactly one payload is present")
        };
        Ok(EvidenceFile { partition, payload })
    }

    /// [`EvidenceFile::parse`] on raw bytes, which must be UTF-8.
    pub fn parse_bytes(bytes: &[u8]) -> Result<EvidenceFile> {
        let text = std::str::from_utf8(bytes).map_err(|e| CliError::Parse(format!("not UTF-8: {e}")))?;
        EvidenceFile::parse(text)
    }
}

fn parse_update(u: RawUpdate) -> Result<UpdateReport> {
    let b_partition = Partition::new(u.b_partition)?;
    let p = finite("p", u.p)?;
    match u.method.as_str() {
        "jeffrey" => {
            if u.credence.is_some() || u.per_cell_credences.is_some() || u.normalized_weights.is_some() {
                return Err(schema("a jeffrey update carries only a probability"));
            }
            Ok(UpdateReport::Jeffrey { b_partition, p })
        }
        "pd" => {
            let (Some(credence), Some(per_cell), Some(weights)) =
                (u.credence, u.per_cell_credences, u.normalized_weights)
            else {
                return Err(schema(
                    "a pd update needs credence, per_cell_credences and normalized_weights",
                ));
            };
            if per_cell.len() != b_partition.len() || weights.len() != b_partition.len() {
                return Err(schema("per-cell vectors must match b_partition"));
            }
            finite("credence", credence)?;
            finite_all("per_cell_credences", &per_cell)?;
            finite_all("normalized_weights", &weights)?;
            Ok(UpdateReport::Pd {
                b_partition,
                credence,
                p,
                per_cell_credences: per_cell,
                normalized_weights: weights,
            })
        }
        other => Err(schema(format!("unknown update method {other:?}"))),
    }
}

fn parse_repair(r: RawRepair) -> Result<RepairReport> {
    let method = match r.method.as_str() {
        "single" => RepairMethod::Single,
        "multiple" => RepairMethod::Multiple,
        other => return Err(schema(format!("unknown repair method {other:?}"))),
    };
    let b_partition = Partition::new(r.b_partition)?;
    let t = table(r.cells)?;
    column_count(&b_partition, &t)?;
    if r.columns.len() != r.conditionals.len() || r.columns.is_empty() {
        return Err(schema("columns and conditionals must be non-empty and of equal length"));
    }
    if method == RepairMethod::Single && r.columns.len() != 1 {
        return Err(schema("a single repair names exactly one column"));
    }
    let columns = r
        .columns
        .iter()
        .map(|&c| {
            if (1..=b_partition.len()).contains(&c) {
                Ok(c - 1)
            } else {
                Err(schema(format!("column {c} outside 1..={}", b_partition.len())))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    finite_all("conditionals", &r.conditionals)?;
    if let Some(h) = r.harmonic_credence {
        finite("harmonic_credence", h)?;
    }
    Ok(RepairReport {
        method,
        b_partition,
        revised: ContingencyEvidence::new(Credence::new(r.credence)?, t)?,
        columns,
        conditionals: r.conditionals,
        harmonic_credence: r.harmonic_credence,
    })
}

fn parse_confirmation(c: RawConfirmation) -> Result<ConfirmationRecord> {
    let report = ConfirmationReport {
        first_order: finite("first_order", c.first_order)?,
        credence_gain: finite("credence_gain", c.credence_gain)?,
        probability_gain: finite("probability_gain", c.probability_gain)?,
        pdct: finite("pdct", c.pdct)?,
        accord_used: finite("accord", c.accord)?,
        accord_clamped_by: finite("accord_clamped_by", c.accord_clamped_by)?,
        updated_credence: finite("updated_credence", c.updated_credence)?,
        updated_probability: finite("updated_probability", c.updated_probability)?,
    };
    Ok(ConfirmationRecord {
        mode: mode_from(&c.mode)?,
        report,
    })
}

fn parse_bet_outcome(o: RawBetOutcome) -> Result<BetOutcome> {
    Ok(BetOutcome {
        price_a: finite("price_a", o.price_a)?,
        price_b: finite("price_b", o.price_b)?,
        price_c: finite("price_c", o.price_c)?,
        total_price: finite("total_price", o.total_price)?,
        loss_if_not_b: finite("loss_if_not_b", o.loss_if_not_b)?,
        loss_if_b: finite("loss_if_b", o.loss_if_b)?,
        delta: finite("delta", o.delta)?,
    })
}

// ---------------------------------------------------------------------------
// emission

/// Shortest decimal that reads back to the same bits; valid TOML.
pub fn format_number(x: f64) -> String {
    format!("{x:?}")
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

struct Writer(String);

impl Writer {
    fn header(&mut self, h: &str) {
        let _ = write!(self.0, "\n{h}\n");
    }

    fn num(&mut self, key: &str, x: f64) {
        let _ = writeln!(self.0, "{key} = {}", format_number(x));
    }

    fn text(&mut self, key: &str, s: &str) {
        let _ = writeln!(self.0, "{key} = {}", quote(s));
    }

    fn nums(&mut self, key: &str, xs: &[f64]) {
        let items: Vec<String> = xs.iter().map(|&x| format_number(x)).collect();
        let _ = writeln!(self.0, "{key} = [{}]", items.join(", "));
    }

    fn ints(&mut self, key: &str, xs: &[usize]) {
        let items: Vec<String> = xs.iter().map(usize::to_string).collect();
        let _ = writeln!(self.0, "{key} = [{}]", items.join(", "));
    }

    fn labels(&mut self, key: &str, p: &Partition) {
        let items: Vec<String> = p.labels().iter().map(|l| quote(l)).collect();
        let _ = writeln!(self.0, "{key} = [{}]", items.join(", "));
    }

    fn cells(&mut self, t: &Table2) {
        let row = |r: &[f64]| r.iter().map(|&x| format_number(x)).collect::<Vec<_>>().join(", ");
        let _ = writeln!(self.0, "cells = [[{}], [{}]]", row(t.top()), row(t.bottom()));
    }
}

impl EvidenceFile {
    pub fn to_toml(&self) -> String {
        let mut w = Writer(String::new());
        w.labels("partition", &self.partition);
        match &self.payload {
            Payload::Evidences(es) => {
                for e in es {
                    w.header("[[evidences]]");
                    w.num("credence", e.credence.get());
                    w.nums("dist", e.dist.probs());
                }
            }
            Payload::WeightedSet(ws) => {
                for (k, q) in ws.entries() {
                    w.header("[[weighted_set]]");
                    w.num("credence", k.get());
                    w.num("q", *q);
                }
            }
            Payload::Joint(j) => {
                w.header("[joint]");
                w.num("credence", j.credence.get());
                w.labels("b_partition", j.b_partition());
                w.cells(j.table());
            }
            Payload::FirstOrder(f) => {
                w.header("[first_order]");
                w.num("pA", f.p_a());
                w.num("pAB", f.p_ab());
                w.num("pB", f.p_b());
            }
            Payload::Contingency(c) => {
                w.header("[contingency]");
                w.num("credence", c.evidence.credence().get());
                w.labels("b_partition", &c.b_partition);
                w.cells(c.evidence.table());
            }
            Payload::Bet(b) => {
                w.header("[bet]");
                w.num("pB", b.p_b);
                w.num("b", b.b);
                w.num("r", b.r);
            }
            Payload::Update(UpdateReport::Jeffrey { b_partition, p }) => {
                w.header("[update]");
                w.text("method", "jeffrey");
                w.labels("b_partition", b_partition);
                w.num("p", *p);
            }
            Payload::Update(UpdateReport::Pd {
                b_partition,
                credence,
                p,
                per_cell_credences,
                normalized_weights,
            }) => {
                w.header("[update]");
                w.text("method", "pd");
                w.labels("b_partition", b_partition);
                w.num("credence", *credence);
                w.num("p", *p);
                w.nums("per_cell_credences", per_cell_credences);
                w.nums("normalized_weights", normalized_weights);
            }
            Payload::Repair(r) => {
                w.header("[repair]");
                w.text(
                    "method",
                    match r.method {
                        RepairMethod::Single => "single",
                        RepairMethod::Multiple => "multiple",
                    },
                );
                w.num("credence", r.revised.credence().get());
                w.labels("b_partition", &r.b_partition);
                w.cells(r.revised.table());
                let one_based: Vec<usize> = r.columns.iter().map(|c| c + 1).collect();
                w.ints("columns", &one_based);
                w.nums("conditionals", &r.conditionals);
                if let Some(h) = r.harmonic_credence {
                    w.num("harmonic_credence", h);
                }
            }
            Payload::Confirmation(c) => {
                let r = &c.report;
                w.header("[confirmation]");
                w.text("mode", mode_name(c.mode));
                w.num("first_order", r.first_order);
                w.num("credence_gain", r.credence_gain);
                w.num("probability_gain", r.probability_gain);
                w.num("pdct", r.pdct);
                w.num("accord", r.accord_used);
                w.num("accord_clamped_by", r.accord_clamped_by);
                w.num("updated_credence", r.updated_credence);
                w.num("updated_probability", r.updated_probability);
            }
            Payload::BetOutcome(o) => {
                w.header("[bet_outcome]");
                w.num("price_a", o.price_a);
                w.num("price_b", o.price_b);
                w.num("price_c", o.price_c);
                w.num("total_price", o.total_price);
                w.num("loss_if_not_b", o.loss_if_not_b);
                w.num("loss_if_b", o.loss_if_b);
                w.num("delta", o.delta);
            }
            Payload::Conditional(c) => {
                w.header("[conditional]");
                w.num("p", c.p);
                w.num("confirmation", c.confirmation);
            }
        }
        w.0
    }
}
