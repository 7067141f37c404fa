use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::Verdict;
use crate::equations::{formula_discrete, Color, ProblemSpec, SolutionWitness};

use super::engine::{ClauseDb, Solver};
use super::solutions::{enumerate_solutions, IntegerSolution};

/// A possibly partial coloring of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscreteColoring {
    assignment: Vec<Option<Color>>,
}

impl DiscreteColoring {
    pub fn unset(n: u32) -> Self {
        DiscreteColoring {
            assignment: vec![None; n as usize],
        }
    }

    /// Total coloring with `red` red and everything else in `{1..n}` blue.
    pub fn from_red(n: u32, red: &[u32]) -> Self {
        let mut c = DiscreteColoring {
            assignment: vec![Some(Color::Blue); n as usize],
        };
        for &r in red {
            c.set(r, Color::Red);
        }
        c
    }

    pub fn from_assignment(assignment: Vec<Option<Color>>) -> Self {
        DiscreteColoring { assignment }
    }

    pub fn n(&self) -> u32 {
        self.assignment.len() as u32
    }

    /// Color of the integer `x` (1-based).
    pub fn get(&self, x: u32) -> Option<Color> {
        x.checked_sub(1)
            .and_then(|i| self.assignment.get(i as usize).copied().flatten())
    }

    pub fn set(&mut self, x: u32, color: Color) {
        self.assignment[(x - 1) as usize] = Some(color);
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn class(&self, color: Color) -> Vec<u32> {
        (1..=self.n()).filter(|&x| self.get(x) == Some(color)).collect()
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.assignment
    }

    fn is_monochromatic(&self, s: &IntegerSolution, color: Color) -> bool {
        s.points().into_iter().all(|x| self.get(x) == Some(color))
    }
}

/// Checks a total coloring against every solution of both equations. Red
/// solutions are scanned first; the first monochromatic one is returned.
pub fn is_valid_discrete(c: &DiscreteColoring, spec: &ProblemSpec) -> Verdict {
    for color in [Color::Red, Color::Blue] {
        if let Some(s) = enumerate_solutions(spec.arity(color), c.n()).find(|s| c.is_monochromatic(s, color)) {
            return Verdict::WitnessFound {
                witness: s.to_witness(color),
            };
        }
    }
    Verdict::Valid
}

/// Unit forcing reached a monochromatic solution.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("conflict: {witness}")]
pub struct Conflict {
    pub witness: SolutionWitness,
}

fn clause_witness(db: &ClauseDb, id: u32) -> SolutionWitness {
    let c = db.clause(id);
    IntegerSolution {
        left: c.left.iter().map(|i| i + 1).collect(),
        x0: c.x0 + 1,
    }
    .to_witness(c.color)
}

/// Closes a partial coloring under unit forcing.
pub fn propagate(c: &DiscreteColoring, spec: &ProblemSpec) -> Result<DiscreteColoring, Conflict> {
    let db = ClauseDb::integers(c.n(), spec.k, spec.l);
    let mut solver = Solver::new(&db, true);
    for (i, color) in c.assignment.iter().enumerate() {
        if let Some(color) = color {
            solver.assign(i as u32, *color, None);
        }
    }
    match solver.propagate() {
        Ok(()) => Ok(DiscreteColoring::from_assignment(solver.assignment().to_vec())),
        Err(id) => Err(Conflict {
            witness: clause_witness(&db, id),
        }),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub propagations: u64,
    #[serde(rename = "elapsed_ms", with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes_explored += other.nodes_explored;
        self.propagations += other.propagations;
        self.elapsed += other.elapsed;
    }
}

/// Searches for a valid total coloring of `{1..n}`: depth-first on the
/// lowest uncolored integer, red first. With `unit_forcing` off the search
/// only prunes on monochromatic solutions.
pub fn search_valid(n: u32, spec: &ProblemSpec, unit_forcing: bool) -> (Option<DiscreteColoring>, SearchStats) {
    let start = Instant::now();
    let db = ClauseDb::integers(n, spec.k, spec.l);
    let mut solver = Solver::new(&db, unit_forcing);
    let found = solver.solve();
    let stats = SearchStats {
        nodes_explored: solver.stats.nodes,
        propagations: solver.stats.propagations,
        elapsed: start.elapsed(),
    };
    let coloring = found.then(|| DiscreteColoring::from_assignment(solver.assignment().to_vec()));
    (coloring, stats)
}

/// Exhaustive check over all `2^n` colorings as bitmasks. Independent of the
/// propagating search; usable up to roughly `n = 22`.
pub fn exhaustive_valid(n: u32, spec: &ProblemSpec) -> Option<DiscreteColoring> {
    assert!(n < 63, "exhaustive search is limited to n < 63");
    let masks = |m: u32| -> Vec<u64> {
        enumerate_solutions(m, n)
            .map(|s| s.points().iter().fold(0u64, |acc, &x| acc | (1 << (x - 1))))
            .collect()
    };
    let red_masks = masks(spec.k);
    let blue_masks = masks(spec.l);
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    (0..=full)
        .find(|&red| {
            let blue = full & !red;
            red_masks.iter().all(|&m| m & red != m) && blue_masks.iter().all(|&m| m & blue != m)
        })
        .map(|red| {
            let reds: Vec<u32> = (1..=n).filter(|&x| red >> (x - 1) & 1 == 1).collect();
            DiscreteColoring::from_red(n, &reds)
        })
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Largest `n` tried; defaults to the formula value plus 5.
    pub max_n: Option<u32>,
    pub unit_forcing: bool,
    /// Keep scanning to the cap after the first uncolorable `n`.
    pub scan: bool,
    /// 1 = single-threaded and deterministic; 0 = rayon default.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_n: None,
            unit_forcing: true,
            scan: false,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub n: u32,
    pub colorable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub spec: ProblemSpec,
    pub value: u32,
    pub formula: u32,
    pub extremal: DiscreteColoring,
    pub stats: SearchStats,
    pub scan: Vec<ScanEntry>,
}

impl SearchReport {
    pub fn formula_mismatch(&self) -> bool {
        self.value != self.formula
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "spec": self.spec,
            "value": self.value,
            "formula": self.formula,
            "formula_mismatch": self.formula_mismatch(),
            "red": self.extremal.class(Color::Red),
            "blue": self.extremal.class(Color::Blue),
            "stats": self.stats,
        });
        if !self.scan.is_empty() {
            v["scan"] = serde_json::to_value(&self.scan).expect("scan serializes");
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("every n up to the cap {cap} is colorable")]
    CapExhausted { cap: u32, stats: SearchStats },
    #[error("{0} is uncolorable already, so no extremal coloring exists")]
    NothingColorable(u32),
}

/// The least `n` for which `{1..n}` has no valid coloring, with the coloring
/// of `{1..n-1}` that witnesses the lower bound. Both directions are
/// established by search; the formula value is only compared against.
pub fn compute_rado(spec: &ProblemSpec, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let formula = formula_discrete(spec.k, spec.l)
        .expect("ProblemSpec guarantees 2 <= k <= l")
        .value
        .to_i64()
        .expect("integer") as u32;
    let cap = opts.max_n.unwrap_or(formula + 5);

    let run = |n: u32| search_valid(n, spec, opts.unit_forcing);
    let batch = if opts.threads == 1 {
        1
    } else if opts.threads == 0 {
        rayon::current_num_threads().max(1)
    } else {
        opts.threads
    };
    let pool = (batch > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(batch)
            .build()
            .expect("thread pool")
    });

    let mut stats = SearchStats::default();
    let mut scan = Vec::new();
    let mut last_coloring: Option<DiscreteColoring> = None;
    let mut answer: Option<(u32, DiscreteColoring)> = None;

    let mut n = 1;
    'outer: while n <= cap {
        let hi = (n + batch as u32 - 1).min(cap);
        let results: Vec<(u32, (Option<DiscreteColoring>, SearchStats))> = match &pool {
            Some(pool) => pool.install(|| (n..=hi).into_par_iter().map(|m| (m, run(m))).collect()),
            None => (n..=hi).map(|m| (m, run(m))).collect(),
        };
        for (m, (coloring, st)) in results {
            stats.absorb(&st);
            scan.push(ScanEntry {
                n: m,
                colorable: coloring.is_some(),
            });
            match coloring {
                Some(c) => last_coloring = Some(c),
                None if answer.is_none() => {
                    let extremal = last_coloring.take().ok_or(SearchError::NothingColorable(m))?;
                    answer = Some((m, extremal));
                    if !opts.scan {
                        break 'outer;
                    }
                }
                None => {}
            }
        }
        n = hi + 1;
    }
    stats.elapsed = start.elapsed();
    let (value, extremal) = answer.ok_or(SearchError::CapExhausted { cap, stats })?;
    if !opts.scan {
        scan.clear();
    }
    Ok(SearchReport {
        spec: spec.clone(),
        value,
        formula,
        extremal,
        stats,
        scan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: u32, l: u32) -> ProblemSpec {
        ProblemSpec::new(k, l).unwrap()
    }

    #[test]
    fn valid_examples() {
        assert_eq!(is_valid_discrete(&DiscreteColoring::from_red(4, &[1, 4]), &spec(2, 2)), Verdict::Valid);
        assert_eq!(is_valid_discrete(&DiscreteColoring::from_red(6, &[1, 6]), &spec(2, 3)), Verdict::Valid);
        let all_red = DiscreteColoring::from_red(5, &[1, 2, 3, 4, 5]);
        let v = is_valid_discrete(&all_red, &spec(2, 2));
        let w = v.witness().unwrap();
        assert_eq!(w.to_string(), "1 + 1 = 2 (red)");
    }

    #[test]
    fn blue_k_solutions_do_not_count() {
        // 2 + 2 = 4 is all blue but blue guards the 3-variable equation
        let c = DiscreteColoring::from_red(5, &[1, 3, 5]);
        assert!(enumerate_solutions(2, 5).any(|s| s.points().iter().all(|&x| c.get(x) == Some(Color::Blue))));
        assert_eq!(is_valid_discrete(&c, &spec(2, 3)), Verdict::Valid);
    }

    #[test]
    fn propagate_examples() {
        let s = spec(2, 3);
        let mut c = DiscreteColoring::unset(6);
        c.set(1, Color::Red);
        let out = propagate(&c, &s).unwrap();
        assert_eq!(out.get(2), Some(Color::Blue));

        // on {1..7} forcing from 1 = red runs on into 2 + 2 + 3 = 7 all blue
        let mut c = DiscreteColoring::unset(7);
        c.set(1, Color::Red);
        let err = propagate(&c, &s).unwrap_err();
        assert_eq!(err.witness.to_string(), "2 + 2 + 3 = 7 (blue)");

        let mut c = DiscreteColoring::unset(5);
        c.set(1, Color::Blue);
        let out = propagate(&c, &s).unwrap();
        assert_eq!(out.get(3), Some(Color::Red));

        let empty = DiscreteColoring::unset(7);
        assert_eq!(propagate(&empty, &s).unwrap(), empty);
    }

    #[test]
    fn propagate_reports_conflicts() {
        let mut c = DiscreteColoring::unset(4);
        c.set(1, Color::Red);
        c.set(2, Color::Red);
        let err = propagate(&c, &spec(2, 2)).unwrap_err();
        assert_eq!(err.witness.to_string(), "1 + 1 = 2 (red)");
    }

    #[test]
    fn search_examples() {
        let (c, _) = search_valid(4, &spec(2, 2), true);
        let c = c.unwrap();
        assert!(c.is_total());
        assert!(is_valid_discrete(&c, &spec(2, 2)).is_valid());
        assert!(search_valid(5, &spec(2, 2), true).0.is_none());
        assert!(search_valid(13, &spec(3, 4), true).0.is_some());
        assert!(search_valid(14, &spec(3, 4), true).0.is_none());
    }

    #[test]
    fn compute_small_values() {
        for (k, l, v) in [(2, 2, 5), (2, 4, 11), (4, 4, 19)] {
            let r = compute_rado(&spec(k, l), &SearchOptions::default()).unwrap();
            assert_eq!(r.value, v);
            assert!(!r.formula_mismatch());
            assert_eq!(r.extremal.n(), v - 1);
            assert!(is_valid_discrete(&r.extremal, &spec(k, l)).is_valid());
        }
    }

    #[test]
    fn cap_exhaustion_is_reported() {
        let opts = SearchOptions {
            max_n: Some(4),
            ..SearchOptions::default()
        };
        assert!(matches!(
            compute_rado(&spec(2, 2), &opts),
            Err(SearchError::CapExhausted { cap: 4, .. })
        ));
    }

    #[test]
    fn scan_records_every_n() {
        let opts = SearchOptions {
            scan: true,
            max_n: Some(8),
            ..SearchOptions::default()
        };
        let r = compute_rado(&spec(2, 2), &opts).unwrap();
        assert_eq!(r.value, 5);
        let flags: Vec<bool> = r.scan.iter().map(|e| e.colorable).collect();
        assert_eq!(flags, vec![true, true, true, true, false, false, false, false]);
    }

    #[test]
    fn threads_agree_on_value() {
        let opts = SearchOptions {
            threads: 4,
            ..SearchOptions::default()
        };
        let r = compute_rado(&spec(3, 3), &opts).unwrap();
        assert_eq!(r.value, 11);
        assert!(is_valid_discrete(&r.extremal, &spec(3, 3)).is_valid());
    }

    #[test]
    fn exhaustive_agrees_on_schur() {
        assert!(exhaustive_valid(4, &spec(2, 2)).is_some());
        assert!(exhaustive_valid(5, &spec(2, 2)).is_none());
    }
}
