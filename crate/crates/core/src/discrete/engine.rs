//! Clause database and unit-forcing propagator over a finite set of points.
//!
//! Points are indices `0..num_vars`. Each clause is one solution of the red
//! or blue equation; it is violated when all of its distinct points carry the
//! clause color, and it forces its last uncolored point to the opposite color
//! once every other distinct point carries the clause color. Repeated values
//! count once, so a solution such as `(2, 3/2, 3/2, 5)` forces `3/2` as soon
//! as `2` and `5` are colored.

use crate::equations::Color;

use super::solutions::IndexSolutions;

#[derive(Debug, Clone)]
pub(crate) struct Clause {
    pub color: Color,
    pub left: Vec<u32>,
    pub x0: u32,
    pub vars: Vec<u32>,
}

#[derive(Debug, Clone)]
pub(crate) struct ClauseDb {
    num_vars: usize,
    clauses: Vec<Clause>,
    // occurrences split by clause color: [red, blue]
    occurs: Vec<[Vec<u32>; 2]>,
}

fn slot(color: Color) -> usize {
    match color {
        Color::Red => 0,
        Color::Blue => 1,
    }
}

impl ClauseDb {
    /// Builds every solution clause over `0..num_vars`. `red`/`blue` give
    /// `(arity, index offset)`; `None` means the equation has no solutions
    /// on this point set.
    pub fn build(num_vars: usize, red: Option<(u32, u64)>, blue: Option<(u32, u64)>) -> Self {
        let mut clauses = Vec::new();
        let max_index = num_vars as u64;
        if num_vars > 0 {
            for (color, spec) in [(Color::Red, red), (Color::Blue, blue)] {
                let Some((m, offset)) = spec else { continue };
                for (left, x0) in IndexSolutions::new(m as usize, offset, max_index - 1) {
                    let mut vars = left.clone();
                    vars.push(x0);
                    vars.sort_unstable();
                    vars.dedup();
                    clauses.push(Clause { color, left, x0, vars });
                }
            }
        }
        let mut occurs = vec![[Vec::new(), Vec::new()]; num_vars];
        for (ci, c) in clauses.iter().enumerate() {
            for &v in &c.vars {
                occurs[v as usize][slot(c.color)].push(ci as u32);
            }
        }
        ClauseDb {
            num_vars,
            clauses,
            occurs,
        }
    }

    /// Integer solutions over `{1..n}` (index `i` is the value `i + 1`).
    pub fn integers(n: u32, k: u32, l: u32) -> Self {
        ClauseDb::build(n as usize, Some((k, (k - 1) as u64)), Some((l, (l - 1) as u64)))
    }

    pub fn clause(&self, id: u32) -> &Clause {
        &self.clauses[id as usize]
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.clauses.len()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct EngineStats {
    pub nodes: u64,
    pub propagations: u64,
}

pub(crate) struct Solver<'a> {
    db: &'a ClauseDb,
    assign: Vec<Option<Color>>,
    reason: Vec<Option<u32>>,
    // distinct points of each clause currently colored [red, blue]
    counts: Vec<[u32; 2]>,
    trail: Vec<u32>,
    qhead: usize,
    unit_forcing: bool,
    pub stats: EngineStats,
}

impl<'a> Solver<'a> {
    pub fn new(db: &'a ClauseDb, unit_forcing: bool) -> Self {
        Solver {
            db,
            assign: vec![None; db.num_vars],
            reason: vec![None; db.num_vars],
            counts: vec![[0, 0]; db.clauses.len()],
            trail: Vec::new(),
            qhead: 0,
            unit_forcing,
            stats: EngineStats::default(),
        }
    }

    pub fn value(&self, v: u32) -> Option<Color> {
        self.assign[v as usize]
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.assign
    }

    pub fn trail(&self) -> &[u32] {
        &self.trail
    }

    pub fn reason(&self, v: u32) -> Option<u32> {
        self.reason[v as usize]
    }

    pub fn first_unassigned(&self) -> Option<u32> {
        self.assign.iter().position(Option::is_none).map(|i| i as u32)
    }

    /// Colors an uncolored point. Returns `false` if it already has the
    /// other color.
    pub fn assign(&mut self, v: u32, color: Color, reason: Option<u32>) -> bool {
        match self.assign[v as usize] {
            Some(c) => c == color,
            None => {
                self.assign[v as usize] = Some(color);
                self.reason[v as usize] = reason;
                self.trail.push(v);
                let s = slot(color);
                let db = self.db;
                for side in &db.occurs[v as usize] {
                    for &ci in side {
                        self.counts[ci as usize][s] += 1;
                    }
                }
                true
            }
        }
    }

    /// Processes queued assignments until fixpoint. On conflict returns the
    /// id of a clause whose points all carry its color.
    pub fn propagate(&mut self) -> Result<(), u32> {
        let db = self.db;
        while self.qhead < self.trail.len() {
            let v = self.trail[self.qhead];
            self.qhead += 1;
            let color = self.assign[v as usize].expect("trail entries are assigned");
            let s = slot(color);
            // only clauses of v's own color can become violated or unit
            for &ci in &db.occurs[v as usize][s] {
                let clause = &db.clauses[ci as usize];
                let [same, other] = match color {
                    Color::Red => self.counts[ci as usize],
                    Color::Blue => {
                        let [r, b] = self.counts[ci as usize];
                        [b, r]
                    }
                };
                if other > 0 {
                    continue;
                }
                let size = clause.vars.len() as u32;
                if same == size {
                    return Err(ci);
                }
                if self.unit_forcing && same + 1 == size {
                    let free = clause
                        .vars
                        .iter()
                        .copied()
                        .find(|&u| self.assign[u as usize].is_none())
                        .expect("count says one point is free");
                    self.assign(free, color.opposite(), Some(ci));
                    self.stats.propagations += 1;
                }
            }
        }
        Ok(())
    }

    pub fn backtrack(&mut self, trail_len: usize) {
        while self.trail.len() > trail_len {
            let v = self.trail.pop().expect("nonempty");
            let s = slot(self.assign[v as usize].take().expect("assigned"));
            self.reason[v as usize] = None;
            let db = self.db;
            for side in &db.occurs[v as usize] {
                for &ci in side {
                    self.counts[ci as usize][s] -= 1;
                }
            }
        }
        self.qhead = self.qhead.min(trail_len);
    }

    /// Depth-first search for a total valid assignment, branching on the
    /// lowest uncolored point, red first.
    pub fn solve(&mut self) -> bool {
        self.stats.nodes += 1;
        let Some(v) = self.first_unassigned() else {
            return true;
        };
        for color in [Color::Red, Color::Blue] {
            let mark = self.trail.len();
            self.assign(v, color, None);
            if self.propagate().is_ok() && self.solve() {
                return true;
            }
            self.backtrack(mark);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_clauses() {
        // x + y = z over {1..4}
        let db = ClauseDb::integers(4, 2, 2);
        assert_eq!(db.len(), 8);
        let c = db.clause(0);
        assert_eq!((c.color, c.left.clone(), c.x0, c.vars.clone()), (Color::Red, vec![0, 0], 1, vec![0, 1]));
    }

    #[test]
    fn forcing_treats_repeats_as_one_point() {
        let db = ClauseDb::integers(6, 2, 3);
        let mut s = Solver::new(&db, true);
        s.assign(0, Color::Red, None);
        s.propagate().unwrap();
        assert_eq!(s.value(1), Some(Color::Blue));
        let why = db.clause(s.reason(1).unwrap());
        assert_eq!((why.left.clone(), why.x0), (vec![0, 0], 1));
    }

    #[test]
    fn backtrack_restores_counts() {
        let db = ClauseDb::integers(6, 2, 3);
        let mut s = Solver::new(&db, true);
        let mark = s.trail().len();
        let snapshot = s.counts.clone();
        s.assign(3, Color::Red, None);
        let _ = s.propagate();
        s.backtrack(mark);
        assert_eq!(s.counts, snapshot);
        assert_eq!(s.trail().len(), mark);
    }

    #[test]
    fn solve_schur() {
        let db = ClauseDb::integers(4, 2, 2);
        assert!(Solver::new(&db, true).solve());
        let db = ClauseDb::integers(5, 2, 2);
        assert!(!Solver::new(&db, true).solve());
        assert!(!Solver::new(&db, false).solve());
    }
}
