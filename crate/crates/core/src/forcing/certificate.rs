//! Forcing-chain certificates and their checker.
//!
//! A certificate branches on the color of the left endpoint `gamma`. Each
//! branch replays a list of forcing steps: a solution whose entries other
//! than one point already carry the solution's color forces that point to
//! the other color. A branch closes with a solution that is monochromatic in
//! the accumulated state, or splits on the color of a further point.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equations::{check_witness, Color, ProblemSpec, SolutionWitness};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assumption {
    pub point: Rational,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForcingStep {
    pub point: Rational,
    pub forced: Color,
    pub witness: SolutionWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Contradiction(SolutionWitness),
    Children(Box<[BranchNode; 2]>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchNode {
    pub assumption: Assumption,
    pub steps: Vec<ForcingStep>,
    pub outcome: Outcome,
}

impl BranchNode {
    /// Number of leaves below this node.
    pub fn leaves(&self) -> usize {
        match &self.outcome {
            Outcome::Contradiction(_) => 1,
            Outcome::Children(ch) => ch.iter().map(BranchNode::leaves).sum(),
        }
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
            + match &self.outcome {
                Outcome::Contradiction(_) => 0,
                Outcome::Children(ch) => ch.iter().map(BranchNode::step_count).sum(),
            }
    }

    fn witnesses(&self) -> Vec<&SolutionWitness> {
        let mut out: Vec<&SolutionWitness> = self.steps.iter().map(|s| &s.witness).collect();
        match &self.outcome {
            Outcome::Contradiction(w) => out.push(w),
            Outcome::Children(ch) => ch.iter().for_each(|c| out.extend(c.witnesses())),
        }
        out
    }

    fn collect_points(&self, into: &mut Vec<Rational>) {
        into.push(self.assumption.point.clone());
        for s in &self.steps {
            into.extend(s.witness.points());
        }
        match &self.outcome {
            Outcome::Contradiction(w) => into.extend(w.points()),
            Outcome::Children(ch) => ch.iter().for_each(|c| c.collect_points(into)),
        }
    }
}

/// Upper-bound proof: every coloring of the closed interval
/// `[gamma, domain_end]` contains a monochromatic solution.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForcingCertificate {
    pub spec: ProblemSpec,
    pub domain_end: Rational,
    pub root: [BranchNode; 2],
}

impl ForcingCertificate {
    /// Every value mentioned anywhere in the certificate, sorted, no repeats.
    pub fn points_used(&self) -> Vec<Rational> {
        let mut pts = Vec::new();
        for b in &self.root {
            b.collect_points(&mut pts);
        }
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn leaves(&self) -> usize {
        self.root.iter().map(BranchNode::leaves).sum()
    }

    pub fn step_count(&self) -> usize {
        self.root.iter().map(BranchNode::step_count).sum()
    }

    /// The branch assuming `gamma` has `color`.
    pub fn branch(&self, color: Color) -> &BranchNode {
        self.root
            .iter()
            .find(|b| b.assumption.color == color)
            .unwrap_or(&self.root[0])
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    /// Canonical JSON text: sorted keys, no whitespace.
    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Structural check independent of the proof logic: every witness has
    /// positive multiplicities and the arity its color demands.
    pub fn check_shape(&self) -> Result<(), ShapeError> {
        for b in &self.root {
            for w in b.witnesses() {
                if w.left.iter().any(|(_, m)| *m == 0) {
                    return Err(ShapeError::ZeroMultiplicity(w.to_string()));
                }
                let want = self.spec.arity(w.color) as u64;
                if w.total_multiplicity() != want {
                    return Err(ShapeError::Arity {
                        witness: w.to_string(),
                        want,
                        got: w.total_multiplicity(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("witness {witness} has {got} left-hand terms, spec demands {want}")]
    Arity { witness: String, want: u64, got: u64 },
    #[error("witness {0} has a zero multiplicity")]
    ZeroMultiplicity(String),
}

/// Why a certificate failed to check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReason {
    DomainEnd { expected: Rational, found: Rational },
    RootSplit,
    ChildrenSplit,
    AssumptionAlreadyColored { point: Rational },
    OutOfDomain { point: Rational },
    BadArithmetic { witness: String },
    WitnessColor { witness: String },
    PointNotInWitness { point: Rational },
    NotPrecolored { point: Rational },
    Recolor { point: Rational },
    NotMonochromatic { point: Rational },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::DomainEnd { expected, found } => {
                write!(f, "domain end {found} should be {expected}")
            }
            FailureReason::RootSplit => f.write_str("root branches must assume both colors of gamma"),
            FailureReason::ChildrenSplit => f.write_str("children must assume both colors of one point"),
            FailureReason::AssumptionAlreadyColored { point } => {
                write!(f, "branch point {point} is already colored")
            }
            FailureReason::OutOfDomain { point } => write!(f, "{point} lies outside the domain"),
            FailureReason::BadArithmetic { witness } => write!(f, "{witness} is not a solution"),
            FailureReason::WitnessColor { witness } => {
                write!(f, "{witness} must have the color opposite to the forced one")
            }
            FailureReason::PointNotInWitness { point } => write!(f, "{point} does not occur in its witness"),
            FailureReason::NotPrecolored { point } => {
                write!(f, "{point} is not yet colored like the witness")
            }
            FailureReason::Recolor { point } => write!(f, "{point} already has the other color"),
            FailureReason::NotMonochromatic { point } => {
                write!(f, "contradiction witness is not monochromatic at {point}")
            }
        }
    }
}

/// Location and cause of a verification failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{path}{}: {reason}", step.map(|s| format!(" step {s}")).unwrap_or_default())]
pub struct VerifyFailure {
    /// Branch path such as `root[0]/children[1]`.
    pub path: String,
    pub step: Option<usize>,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub leaves: usize,
    pub steps: usize,
}

struct Checker<'a> {
    spec: &'a ProblemSpec,
    domain_end: &'a Rational,
    state: BTreeMap<Rational, Color>,
}

impl Checker<'_> {
    fn fail(path: &str, step: Option<usize>, reason: FailureReason) -> VerifyFailure {
        VerifyFailure {
            path: path.to_string(),
            step,
            reason,
        }
    }

    fn in_domain(&self, p: &Rational) -> bool {
        *p >= self.spec.gamma && p <= self.domain_end
    }

    fn check_witness_domain(&self, w: &SolutionWitness) -> Result<(), FailureReason> {
        if !check_witness(self.spec, w) {
            return Err(FailureReason::BadArithmetic { witness: w.to_string() });
        }
        match w.points().into_iter().find(|p| !self.in_domain(p)) {
            Some(point) => Err(FailureReason::OutOfDomain { point }),
            None => Ok(()),
        }
    }

    fn check_step(&self, s: &ForcingStep) -> Result<(), FailureReason> {
        self.check_witness_domain(&s.witness)?;
        if s.witness.color != s.forced.opposite() {
            return Err(FailureReason::WitnessColor {
                witness: s.witness.to_string(),
            });
        }
        if !s.witness.contains(&s.point) {
            return Err(FailureReason::PointNotInWitness { point: s.point.clone() });
        }
        for p in s.witness.points() {
            if p != s.point && self.state.get(&p) != Some(&s.witness.color) {
                return Err(FailureReason::NotPrecolored { point: p });
            }
        }
        if self.state.get(&s.point) == Some(&s.witness.color) {
            return Err(FailureReason::Recolor { point: s.point.clone() });
        }
        Ok(())
    }

    fn walk(&mut self, node: &BranchNode, path: &str) -> Result<VerifySummary, VerifyFailure> {
        let a = &node.assumption;
        if !self.in_domain(&a.point) {
            return Err(Self::fail(path, None, FailureReason::OutOfDomain { point: a.point.clone() }));
        }
        if self.state.contains_key(&a.point) {
            return Err(Self::fail(
                path,
                None,
                FailureReason::AssumptionAlreadyColored { point: a.point.clone() },
            ));
        }
        let saved = self.state.clone();
        self.state.insert(a.point.clone(), a.color);

        for (i, s) in node.steps.iter().enumerate() {
            self.check_step(s).map_err(|r| Self::fail(path, Some(i), r))?;
            self.state.insert(s.point.clone(), s.forced);
        }

        let summary = match &node.outcome {
            Outcome::Contradiction(w) => {
                let at = Some(node.steps.len());
                self.check_witness_domain(w).map_err(|r| Self::fail(path, at, r))?;
                if let Some(p) = w.points().into_iter().find(|p| self.state.get(p) != Some(&w.color)) {
                    return Err(Self::fail(path, at, FailureReason::NotMonochromatic { point: p }));
                }
                VerifySummary {
                    leaves: 1,
                    steps: node.steps.len(),
                }
            }
            Outcome::Children(ch) => {
                let [a0, a1] = [&ch[0].assumption, &ch[1].assumption];
                if a0.point != a1.point || a0.color == a1.color {
                    return Err(Self::fail(path, None, FailureReason::ChildrenSplit));
                }
                let mut total = VerifySummary {
                    leaves: 0,
                    steps: node.steps.len(),
                };
                for (i, c) in ch.iter().enumerate() {
                    let sub = self.walk(c, &format!("{path}/children[{i}]"))?;
                    total.leaves += sub.leaves;
                    total.steps += sub.steps;
                }
                total
            }
        };
        self.state = saved;
        Ok(summary)
    }
}

/// Checks a single branch under previously colored `context` points.
pub fn verify_branch(
    spec: &ProblemSpec,
    domain_end: &Rational,
    context: &[(Rational, Color)],
    node: &BranchNode,
) -> Result<VerifySummary, VerifyFailure> {
    let mut checker = Checker {
        spec,
        domain_end,
        state: context.iter().cloned().collect(),
    };
    checker.walk(node, "branch")
}

/// Replays every branch from scratch in exact arithmetic.
pub fn verify_certificate(cert: &ForcingCertificate) -> Result<VerifySummary, VerifyFailure> {
    let expected = cert.spec.gamma.mul_int(cert.spec.unit_bound());
    if cert.domain_end != expected {
        return Err(Checker::fail(
            "root",
            None,
            FailureReason::DomainEnd {
                expected,
                found: cert.domain_end.clone(),
            },
        ));
    }
    let [r0, r1] = [&cert.root[0].assumption, &cert.root[1].assumption];
    if r0.point != cert.spec.gamma || r1.point != cert.spec.gamma || r0.color == r1.color {
        return Err(Checker::fail("root", None, FailureReason::RootSplit));
    }
    let mut total = VerifySummary { leaves: 0, steps: 0 };
    for (i, b) in cert.root.iter().enumerate() {
        let mut checker = Checker {
            spec: &cert.spec,
            domain_end: &cert.domain_end,
            state: BTreeMap::new(),
        };
        let sub = checker.walk(b, &format!("root[{i}]"))?;
        total.leaves += sub.leaves;
        total.steps += sub.steps;
    }
    Ok(total)
}
