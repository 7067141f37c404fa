//! Automatic search for forcing certificates on the grid
//! `{gamma + i/d} ∩ [gamma, gamma(kl + k - 1)]`.
//!
//! Unit forcing runs to fixpoint; when it stalls the smallest uncolored grid
//! point is split, red first. Every closed subtree is returned as a
//! [`BranchNode`] whose steps are the recorded forcings, so the result can be
//! replayed by the certificate checker without trusting the search.

use crate::discrete::engine::{ClauseDb, Solver};
use crate::equations::{Color, ProblemSpec, SolutionWitness};
use crate::rational::Rational;

use super::certificate::{verify_branch, Assumption, BranchNode, ForcingStep, Outcome};
use super::ForcingError;

/// Points `gamma + i/d` for `i = 0..len`.
#[derive(Debug, Clone)]
pub struct Grid {
    gamma: Rational,
    denominator: u32,
    len: usize,
}

impl Grid {
    pub fn new(spec: &ProblemSpec, denominator: u32) -> Result<Self, ForcingError> {
        if denominator == 0 {
            return Err(ForcingError::Precondition("grid denominator must be positive".into()));
        }
        let end = spec.gamma.mul_int(spec.unit_bound());
        let span = ((&end - &spec.gamma).mul_int(denominator as i64)).floor();
        let last = span
            .to_i64()
            .filter(|&n| n < 1 << 20)
            .ok_or_else(|| ForcingError::Precondition("grid too large".into()))?;
        Ok(Grid {
            gamma: spec.gamma.clone(),
            denominator,
            len: last as usize + 1,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self, i: u32) -> Rational {
        &self.gamma + Rational::new(i as i64, self.denominator as i64)
    }

    pub fn index_of(&self, x: &Rational) -> Option<u32> {
        let scaled = (x - &self.gamma).mul_int(self.denominator as i64);
        let i = scaled.to_i64()?;
        (0..self.len as i64).contains(&i).then_some(i as u32)
    }

    /// Index offset of `x0` for an `m`-term sum: the sum of `m` grid points
    /// is on the grid only when `(m - 1) * gamma * d` is an integer.
    fn offset(&self, m: u32) -> Option<u64> {
        let c = self.gamma.mul_int((m as i64 - 1) * self.denominator as i64);
        c.to_i64().and_then(|c| u64::try_from(c).ok())
    }

    fn clauses(&self, spec: &ProblemSpec) -> ClauseDb {
        let red = self.offset(spec.k).map(|c| (spec.k, c));
        let blue = self.offset(spec.l).map(|c| (spec.l, c));
        ClauseDb::build(self.len, red, blue)
    }
}

struct Prover<'a> {
    grid: &'a Grid,
    db: &'a ClauseDb,
    solver: Solver<'a>,
}

impl Prover<'_> {
    fn witness(&self, id: u32) -> SolutionWitness {
        let c = self.db.clause(id);
        SolutionWitness::from_values(
            c.color,
            c.left.iter().map(|&i| self.grid.value(i)),
            self.grid.value(c.x0),
        )
    }

    /// Colors `point` (already uncolored), propagates, and tries to close
    /// the subtree within `depth` further splits.
    fn expand(&mut self, point: u32, color: Color, depth: u32) -> Option<BranchNode> {
        let mark = self.solver.trail().len();
        self.solver.assign(point, color, None);
        let result = self.solver.propagate();
        let steps: Vec<ForcingStep> = self.solver.trail()[mark..]
            .iter()
            .filter_map(|&v| {
                let reason = self.solver.reason(v)?;
                Some(ForcingStep {
                    point: self.grid.value(v),
                    forced: self.solver.value(v).expect("on trail"),
                    witness: self.witness(reason),
                })
            })
            .collect();
        let outcome = match result {
            Err(id) => Some(Outcome::Contradiction(self.witness(id))),
            Ok(()) if depth == 0 => None,
            Ok(()) => self.solver.first_unassigned().and_then(|p| {
                let red = self.expand(p, Color::Red, depth - 1)?;
                let blue = self.expand(p, Color::Blue, depth - 1)?;
                Some(Outcome::Children(Box::new([red, blue])))
            }),
        };
        self.solver.backtrack(mark);
        Some(BranchNode {
            assumption: Assumption {
                point: self.grid.value(point),
                color,
            },
            steps,
            outcome: outcome?,
        })
    }
}

/// Searches for a closed branch under `assumptions`. The last assumption
/// becomes the returned node's own assumption; the earlier ones are context
/// the node is verified against. Returns `Ok(None)` when the grid admits a
/// valid coloring extending the assumptions or the depth cap is hit.
pub fn auto_prove(
    spec: &ProblemSpec,
    grid_denominator: u32,
    assumptions: &[(Rational, Color)],
    max_branch_depth: u32,
) -> Result<Option<BranchNode>, ForcingError> {
    let Some(((point, color), context)) = assumptions.split_last() else {
        return Err(ForcingError::Precondition("at least one assumption is required".into()));
    };
    let grid = Grid::new(spec, grid_denominator)?;
    let db = grid.clauses(spec);
    let mut prover = Prover {
        grid: &grid,
        db: &db,
        solver: Solver::new(&db, true),
    };
    let off_grid = |p: &Rational| ForcingError::Precondition(format!("{p} is not a grid point"));
    for (p, c) in context {
        let i = grid.index_of(p).ok_or_else(|| off_grid(p))?;
        if !prover.solver.assign(i, *c, None) {
            return Err(ForcingError::Precondition(format!("{p} assumed both colors")));
        }
    }
    let i = grid.index_of(point).ok_or_else(|| off_grid(point))?;
    if prover.solver.value(i).is_some() {
        return Err(ForcingError::Precondition(format!("{point} assumed twice")));
    }
    let node = prover.expand(i, *color, max_branch_depth);
    if let Some(node) = &node {
        let end = spec.gamma.mul_int(spec.unit_bound());
        verify_branch(spec, &end, context, node)?;
    }
    Ok(node)
}
