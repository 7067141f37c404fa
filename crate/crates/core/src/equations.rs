//! Problem definition: the red `k`-variable and blue `l`-variable equations,
//! solution witnesses, and the closed-form Rado number formulas.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("need 2 <= k <= l, got k={k}, l={l}")]
    BadArity { k: u32, l: u32 },
    #[error("need l >= 1, got {0}")]
    BadDegenerateArity(u32),
    #[error("gamma must be positive, got {0}")]
    NonPositiveGamma(Rational),
}

/// One of the two colors. Red guards the `k`-variable equation, blue the
/// `l`-variable one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// Arity pair plus the left endpoint of the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct ProblemSpec {
    pub k: u32,
    pub l: u32,
    pub gamma: Rational,
}

#[derive(Deserialize)]
struct RawSpec {
    k: u32,
    l: u32,
    gamma: Rational,
}

impl TryFrom<RawSpec> for ProblemSpec {
    type Error = SpecError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        ProblemSpec::with_gamma(raw.k, raw.l, raw.gamma)
    }
}

impl ProblemSpec {
    /// Spec over the default domain starting at 1.
    pub fn new(k: u32, l: u32) -> Result<Self, SpecError> {
        Self::with_gamma(k, l, Rational::one())
    }

    pub fn with_gamma(k: u32, l: u32, gamma: Rational) -> Result<Self, SpecError> {
        if k < 2 || k > l {
            return Err(SpecError::BadArity { k, l });
        }
        if !gamma.is_positive() {
            return Err(SpecError::NonPositiveGamma(gamma));
        }
        Ok(ProblemSpec { k, l, gamma })
    }

    /// Number of left-hand variables in the equation guarded by `color`.
    pub fn arity(&self, color: Color) -> u32 {
        match color {
            Color::Red => self.k,
            Color::Blue => self.l,
        }
    }

    /// Relabels the problem by exchanging the arities together with the
    /// colors. The result has `k >= l` and is only meaningful to code that
    /// reads arities through [`ProblemSpec::arity`]; it is not the same
    /// problem, since color exchange is not a symmetry of off-diagonal
    /// instances.
    pub fn with_colors_swapped(&self) -> ProblemSpec {
        ProblemSpec {
            k: self.l,
            l: self.k,
            gamma: self.gamma.clone(),
        }
    }

    /// Same arities with the domain starting at `gamma`.
    pub fn rescaled(&self, gamma: Rational) -> Result<ProblemSpec, SpecError> {
        ProblemSpec::with_gamma(self.k, self.l, gamma)
    }

    /// `kl + k - 1`, the right endpoint for the domain starting at 1.
    pub fn unit_bound(&self) -> i64 {
        let (k, l) = (self.k as i64, self.l as i64);
        k * l + k - 1
    }
}

/// A claimed solution `x1 + ... + xm = x0` colored `color`, with the left
/// side stored as a multiset of `(value, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolutionWitness {
    pub color: Color,
    pub left: Vec<(Rational, u32)>,
    pub x0: Rational,
}

impl SolutionWitness {
    /// Builds a witness from an unsorted list of left-hand values, merging
    /// repeats into multiplicities.
    pub fn from_values(color: Color, values: impl IntoIterator<Item = Rational>, x0: Rational) -> Self {
        let mut values: Vec<Rational> = values.into_iter().collect();
        values.sort();
        let mut left: Vec<(Rational, u32)> = Vec::new();
        for v in values {
            match left.last_mut() {
                Some((last, m)) if *last == v => *m += 1,
                _ => left.push((v, 1)),
            }
        }
        SolutionWitness { color, left, x0 }
    }

    pub fn from_pairs(color: Color, pairs: &[(Rational, u32)], x0: Rational) -> Self {
        let values = pairs
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m as usize));
        SolutionWitness::from_values(color, values, x0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.left.iter().map(|(_, m)| *m as u64).sum()
    }

    pub fn left_sum(&self) -> Rational {
        self.left.iter().map(|(v, m)| v.mul_int(*m as i64)).sum()
    }

    /// Every value occurring in the witness, `x0` included, without repeats.
    pub fn points(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self.left.iter().map(|(v, _)| v.clone()).collect();
        pts.push(self.x0.clone());
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn contains(&self, point: &Rational) -> bool {
        self.x0 == *point || self.left.iter().any(|(v, _)| v == point)
    }
}

impl fmt::Display for SolutionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, m) in &self.left {
            for _ in 0..*m {
                if !first {
                    f.write_str(" + ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
        }
        write!(f, " = {} ({})", self.x0, self.color)
    }
}

/// Arithmetic validity of a witness for `spec`: positive multiplicities,
/// arity matching the color, exact sum, and every value at least `gamma`.
pub fn check_witness(spec: &ProblemSpec, w: &SolutionWitness) -> bool {
    if w.left.iter().any(|(_, m)| *m == 0) {
        return false;
    }
    if w.total_multiplicity() != spec.arity(w.color) as u64 {
        return false;
    }
    if w.left.iter().any(|(v, _)| *v < spec.gamma) || w.x0 < spec.gamma {
        return false;
    }
    w.left_sum() == w.x0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadoKind {
    DiscreteFormula,
    ContinuousFormula,
    SearchExact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadoValue {
    pub value: Rational,
    pub kind: RadoKind,
}

fn check_order(k: u32, l: u32) -> Result<(), SpecError> {
    if k < 2 || k > l {
        Err(SpecError::BadArity { k, l })
    } else {
        Ok(())
    }
}

/// Discrete off-diagonal value `S(k, l)` over the integers.
pub fn formula_discrete(k: u32, l: u32) -> Result<RadoValue, SpecError> {
    check_order(k, l)?;
    let (k, l) = (k as i64, l as i64);
    let value = match k {
        2 if l % 2 == 0 => 3 * l - 1,
        2 => 3 * l - 2,
        _ => k * l + k - 1,
    };
    Ok(RadoValue {
        value: Rational::from_integer(value),
        kind: RadoKind::DiscreteFormula,
    })
}

/// Continuous value over `[gamma, S]`: `gamma * (kl + k - 1)`.
pub fn formula_continuous(k: u32, l: u32, gamma: &Rational) -> Result<RadoValue, SpecError> {
    let spec = ProblemSpec::with_gamma(k, l, gamma.clone())?;
    Ok(RadoValue {
        value: gamma * Rational::from_integer(spec.unit_bound()),
        kind: RadoKind::ContinuousFormula,
    })
}

/// The `k = 1` case: `x1 = x0` can only be avoided by coloring everything
/// blue, so the answer is `l`.
pub fn formula_degenerate_k1(l: u32) -> Result<RadoValue, SpecError> {
    if l < 1 {
        return Err(SpecError::BadDegenerateArity(l));
    }
    Ok(RadoValue {
        value: Rational::from_integer(l as i64),
        kind: RadoKind::ContinuousFormula,
    })
}
