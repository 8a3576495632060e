//! Per-axiom pass/fail reports with re-checkable witnesses.

use alloc::string::String;
use alloc::vec::Vec;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The comparison an observation must satisfy.
///
/// Non-strict relations are scaled by `max(1, |lhs|, |rhs|)` times the
/// tolerance, except [`Relation::RelEqual`], which is purely relative.
/// Strict relations ignore the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "lhs == rhs")]
    Equal,
    #[serde(rename = "lhs == rhs (relative)")]
    RelEqual,
    #[serde(rename = "lhs <= rhs")]
    AtMost,
    #[serde(rename = "lhs >= rhs")]
    AtLeast,
    #[serde(rename = "lhs < rhs")]
    Below,
    #[serde(rename = "lhs > rhs")]
    Above,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64, tolerance: f64) -> bool {
        // A zero tolerance stays zero even against infinite operands.
        let slack = |scale: f64| if tolerance == 0.0 { 0.0 } else { tolerance * scale };
        let scale = 1f64.max(libm::fabs(lhs)).max(libm::fabs(rhs));
        match self {
            Relation::Equal => lhs == rhs || libm::fabs(lhs - rhs) <= slack(scale),
            Relation::RelEqual => {
                lhs == rhs || libm::fabs(lhs - rhs) <= slack(libm::fabs(lhs).max(libm::fabs(rhs)))
            }
            Relation::AtMost => lhs <= rhs + slack(scale),
            Relation::AtLeast => lhs >= rhs - slack(scale),
            Relation::Below => lhs < rhs,
            Relation::Above => lhs > rhs,
        }
    }

    fn deviation(self, lhs: f64, rhs: f64) -> Option<f64> {
        match self {
            Relation::Equal => {
                Some(libm::fabs(lhs - rhs) / 1f64.max(libm::fabs(lhs)).max(libm::fabs(rhs)))
            }
            Relation::RelEqual => {
                let s = libm::fabs(lhs).max(libm::fabs(rhs));
                Some(if s == 0.0 { 0.0 } else { libm::fabs(lhs - rhs) / s })
            }
            _ => None,
        }
    }
}

/// The point at which an axiom was observed. Only the coordinates relevant
/// to the axiom are populated.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Scalar arguments for connective axioms, e.g. (a, b, c, d).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalars: Option<Vec<f64>>,
}

impl Witness {
    pub fn scalars(v: &[f64]) -> Self {
        Witness {
            scalars: Some(v.to_vec()),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub relation: Option<Relation>,
    pub tolerance: f64,
    /// Sample index of the reported witness (the lowest failing index).
    pub sample_index: Option<usize>,
    pub checked: usize,
    pub violations: usize,
    /// Largest normalized deviation seen by equality observations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub subject: String,
    pub entries: Vec<AxiomEntry>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AxiomReport {
            subject: subject.into(),
            entries: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }
}

/// Accumulates observations for one axiom, keeping the lowest-index
/// violation as the witness.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    axiom: String,
    tolerance: f64,
    checked: usize,
    violations: usize,
    first: Option<(usize, f64, f64, Relation, Witness)>,
    certificate: Option<(usize, f64, f64, Relation, Witness)>,
    max_deviation: Option<f64>,
    note: Option<String>,
}

impl Tally {
    pub(crate) fn new(axiom: &str, tolerance: f64) -> Self {
        Tally {
            axiom: axiom.into(),
            tolerance,
            checked: 0,
            violations: 0,
            first: None,
            certificate: None,
            max_deviation: None,
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one observation; returns whether it held.
    pub(crate) fn observe(
        &mut self,
        index: usize,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        witness: impl FnOnce() -> Witness,
    ) -> bool {
        self.observe_with_tolerance(index, lhs, relation, rhs, self.tolerance, witness)
    }

    pub(crate) fn observe_with_tolerance(
        &mut self,
        index: usize,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tolerance: f64,
        witness: impl FnOnce() -> Witness,
    ) -> bool {
        self.checked += 1;
        if let Some(d) = relation.deviation(lhs, rhs) {
            let d = if d.is_nan() { f64::INFINITY } else { d };
            self.max_deviation = Some(self.max_deviation.map_or(d, |m| m.max(d)));
        }
        let ok = relation.holds(lhs, rhs, tolerance);
        if !ok {
            self.violations += 1;
            let earlier = self.first.as_ref().is_none_or(|f| index < f.0);
            if earlier {
                self.first = Some((index, lhs, rhs, relation, witness()));
            }
        }
        ok
    }

    /// Attaches a passing example (used by existence-type conditions).
    pub(crate) fn certify(
        &mut self,
        index: usize,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        witness: Witness,
    ) {
        if self.certificate.as_ref().is_none_or(|c| index < c.0) {
            self.certificate = Some((index, lhs, rhs, relation, witness));
        }
    }

    pub(crate) fn finish(self) -> AxiomEntry {
        let status = if self.checked == 0 {
            Status::Skipped
        } else if self.violations > 0 {
            Status::Fail
        } else {
            Status::Pass
        };
        let shown = if self.first.is_some() {
            self.first
        } else {
            self.certificate
        };
        let (sample_index, lhs, rhs, relation, witness) = match shown {
            Some((i, l, r, rel, w)) => (Some(i), Some(l), Some(r), Some(rel), Some(w)),
            None => (None, None, None, None, None),
        };
        AxiomEntry {
            axiom: self.axiom,
            status,
            witness,
            lhs,
            rhs,
            relation,
            tolerance: self.tolerance,
            sample_index,
            checked: self.checked,
            violations: self.violations,
            max_deviation: self.max_deviation,
            note: self.note,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Relation::Equal.holds(1.0, 1.0 + 1e-12, 1e-9));
        assert!(!Relation::Equal.holds(1.0, 1.1, 1e-9));
        assert!(Relation::AtMost.holds(0.5, 0.5, 0.0));
        assert!(!Relation::Below.holds(1.0, 1.0, 1e-3));
        assert!(Relation::RelEqual.holds(1e-6, 1e-6 * (1.0 + 1e-12), 1e-9));
        assert!(!Relation::RelEqual.holds(1e-6, 1.1e-6, 1e-9));
        assert!(!Relation::AtMost.holds(f64::NAN, 1.0, 1e-9));
    }

    #[test]
    fn tally_keeps_lowest_index() {
        let mut t = Tally::new("x", 1e-9);
        t.observe(5, 2.0, Relation::AtMost, 1.0, || Witness::scalars(&[5.0]));
        t.observe(2, 3.0, Relation::AtMost, 1.0, || Witness::scalars(&[2.0]));
        t.observe(1, 0.0, Relation::AtMost, 1.0, || Witness::scalars(&[1.0]));
        let e = t.finish();
        assert_eq!(e.status, Status::Fail);
        assert_eq!(e.sample_index, Some(2));
        assert_eq!(e.violations, 2);
        assert_eq!(e.checked, 3);
    }
}
