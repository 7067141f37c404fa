//! Two-colorings of a real interval given as finite unions of intervals,
//! their verification by sumset algebra, and the JSON coloring file format.

use serde::{Deserialize, Serialize};

use crate::equations::{check_witness, Color, ProblemSpec, SolutionWitness};
use crate::interval::{Interval, IntervalError, IntervalSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("red and blue overlap on {0}")]
    Overlap(IntervalSet),
    #[error("red and blue do not cover the domain {domain}: union is {union}")]
    NotCovering { domain: Interval, union: IntervalSet },
    #[error("domain starts at {start}, below gamma = {gamma}")]
    BelowGamma { start: Rational, gamma: Rational },
    #[error("domain must be closed at its left end")]
    OpenStart,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("malformed coloring file: {0}")]
    Json(String),
}

/// A partition of `domain` into a red and a blue interval set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousColoring {
    domain: Interval,
    red: IntervalSet,
    blue: IntervalSet,
}

impl ContinuousColoring {
    /// Checks the partition invariant: disjoint classes whose union is
    /// exactly the domain.
    pub fn new(domain: Interval, red: IntervalSet, blue: IntervalSet) -> Result<Self, ColoringError> {
        let overlap = red.intersect(&blue);
        if !overlap.is_empty() {
            return Err(ColoringError::Overlap(overlap));
        }
        let union = red.union(&blue);
        if union != IntervalSet::from_interval(domain.clone()) {
            return Err(ColoringError::NotCovering { domain, union });
        }
        Ok(ContinuousColoring { domain, red, blue })
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn red(&self) -> &IntervalSet {
        &self.red
    }

    pub fn blue(&self) -> &IntervalSet {
        &self.blue
    }

    pub fn class(&self, color: Color) -> &IntervalSet {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    pub fn color_of(&self, x: &Rational) -> Option<Color> {
        if self.red.contains(x) {
            Some(Color::Red)
        } else if self.blue.contains(x) {
            Some(Color::Blue)
        } else {
            None
        }
    }

    /// Closes the right end of the domain by giving the endpoint `color`.
    /// Returns `None` if the domain is already closed on the right.
    pub fn extend_to_endpoint(&self, color: Color) -> Option<ContinuousColoring> {
        if self.domain.hi_closed() {
            return None;
        }
        let end = self.domain.hi().clone();
        let domain = Interval::closed(self.domain.lo().clone(), end.clone()).ok()?;
        let point = IntervalSet::from_interval(Interval::point(end));
        let (red, blue) = match color {
            Color::Red => (self.red.union(&point), self.blue.clone()),
            Color::Blue => (self.red.clone(), self.blue.union(&point)),
        };
        ContinuousColoring::new(domain, red, blue).ok()
    }
}

/// Outcome of checking a coloring: either no monochromatic solution exists,
/// or here is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    WitnessFound { witness: SolutionWitness },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn witness(&self) -> Option<&SolutionWitness> {
        match self {
            Verdict::Valid => None,
            Verdict::WitnessFound { witness } => Some(witness),
        }
    }
}

/// Decides whether `c` avoids a red solution of the `k`-equation and a blue
/// solution of the `l`-equation, by intersecting each class with its own
/// `m`-fold sumset.
pub fn verify_coloring(c: &ContinuousColoring, spec: &ProblemSpec) -> Result<Verdict, ColoringError> {
    if c.domain.lo() < &spec.gamma {
        return Err(ColoringError::BelowGamma {
            start: c.domain.lo().clone(),
            gamma: spec.gamma.clone(),
        });
    }
    for color in [Color::Red, Color::Blue] {
        let class = c.class(color);
        if class.is_empty() {
            continue;
        }
        let m = spec.arity(color);
        let hits = class.m_fold_sumset(m)?.intersect(class);
        if let Some(first) = hits.intervals().first() {
            let t = first.representative();
            let values = class.decompose_sum(m, &t)?;
            let witness = SolutionWitness::from_values(color, values, t);
            debug_assert!(check_witness(spec, &witness));
            return Ok(Verdict::WitnessFound { witness });
        }
    }
    Ok(Verdict::Valid)
}

/// The extremal lower-bound coloring of `[g, gS)` with `S = kl + k - 1`:
/// red on `[g, gk)` and `[gkl, gS)`, blue on `[gk, gkl)`.
pub fn lemma1_coloring(spec: &ProblemSpec) -> ContinuousColoring {
    let g = &spec.gamma;
    let k = spec.k as i64;
    let l = spec.l as i64;
    let at = |n: i64| g.mul_int(n);
    let iv = |a: i64, b: i64| Interval::closed_open(at(a), at(b)).expect("k >= 2 keeps pieces nonempty");
    let s = spec.unit_bound();
    let red = IntervalSet::normalize([iv(1, k), iv(k * l, s)]);
    let blue = IntervalSet::from_interval(iv(k, k * l));
    ContinuousColoring::new(iv(1, s), red, blue).expect("pieces partition the domain")
}

/// Multiplies every endpoint by `gamma`, keeping closures.
pub fn scale_coloring(c: &ContinuousColoring, gamma: &Rational) -> Result<ContinuousColoring, ColoringError> {
    if !gamma.is_positive() {
        return Err(ColoringError::NonPositiveScale(gamma.clone()));
    }
    Ok(ContinuousColoring {
        domain: c.domain.scale(gamma),
        red: c.red.scale(gamma),
        blue: c.blue.scale(gamma),
    })
}

/// The two solutions showing the extremal coloring cannot absorb its right
/// endpoint `S`: `(k-1)*1 + kl = S` if `S` is red, and
/// `(l-1)*k + (2k-1) = S` if `S` is blue.
pub fn extension_check(spec: &ProblemSpec) -> (SolutionWitness, SolutionWitness) {
    let g = &spec.gamma;
    let k = spec.k as i64;
    let l = spec.l as i64;
    let s = g.mul_int(spec.unit_bound());
    let red = SolutionWitness::from_pairs(
        Color::Red,
        &[(g.clone(), spec.k - 1), (g.mul_int(k * l), 1)],
        s.clone(),
    );
    let blue = SolutionWitness::from_pairs(
        Color::Blue,
        &[(g.mul_int(k), spec.l - 1), (g.mul_int(2 * k - 1), 1)],
        s,
    );
    (red, blue)
}

/// True when every value of `w`, `x0` included, has `w.color` under `c`.
pub fn is_monochromatic(c: &ContinuousColoring, w: &SolutionWitness) -> bool {
    w.points().iter().all(|p| c.color_of(p) == Some(w.color))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringFile {
    gamma: Rational,
    end: Rational,
    end_inclusive: bool,
    red: Vec<(Rational, Rational, String)>,
    blue: Vec<(Rational, Rational, String)>,
}

fn to_triples(set: &IntervalSet) -> Vec<(Rational, Rational, String)> {
    set.intervals()
        .iter()
        .map(|iv| (iv.lo().clone(), iv.hi().clone(), iv.closure_code().to_string()))
        .collect()
}

fn from_triples(triples: Vec<(Rational, Rational, String)>) -> Result<IntervalSet, ColoringError> {
    let ivs = triples
        .into_iter()
        .map(|(lo, hi, code)| Interval::from_code(lo, hi, &code))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntervalSet::normalize(ivs))
}

impl ContinuousColoring {
    pub fn to_json_value(&self) -> serde_json::Value {
        let file = ColoringFile {
            gamma: self.domain.lo().clone(),
            end: self.domain.hi().clone(),
            end_inclusive: self.domain.hi_closed(),
            red: to_triples(&self.red),
            blue: to_triples(&self.blue),
        };
        serde_json::to_value(file).expect("coloring serializes")
    }

    /// Canonical JSON text: sorted keys, no whitespace.
    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Self, ColoringError> {
        let file: ColoringFile = serde_json::from_str(text).map_err(|e| ColoringError::Json(e.to_string()))?;
        let domain = Interval::new(file.gamma, file.end, true, file.end_inclusive)?;
        ContinuousColoring::new(domain, from_triples(file.red)?, from_triples(file.blue)?)
    }
}
