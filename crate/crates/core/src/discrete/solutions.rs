//! Enumeration of solutions of `x1 + ... + xm = x0` as multisets.

use crate::equations::{Color, SolutionWitness};
use crate::rational::Rational;

/// One integer solution: sorted left side plus `x0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerSolution {
    pub left: Vec<u32>,
    pub x0: u32,
}

impl IntegerSolution {
    pub fn to_witness(&self, color: Color) -> SolutionWitness {
        SolutionWitness::from_values(
            color,
            self.left.iter().map(|&v| Rational::from_integer(v as i64)),
            Rational::from_integer(self.x0 as i64),
        )
    }

    /// Distinct values occurring in the solution, `x0` included.
    pub fn points(&self) -> Vec<u32> {
        let mut pts = self.left.clone();
        pts.push(self.x0);
        pts.sort_unstable();
        pts.dedup();
        pts
    }
}

/// Nondecreasing index tuples `i1 <= ... <= im` over `0..=max_index` with
/// `offset + sum <= max_index`, in lexicographic order.
///
/// This is the shape shared by integer solutions (index `i` is the value
/// `i + 1`, offset `m - 1`) and by solutions on a rational grid
/// `gamma + i/d` (offset `(m - 1) * gamma * d`).
#[derive(Debug, Clone)]
pub struct IndexSolutions {
    current: Vec<u32>,
    sum: u64,
    offset: u64,
    max_index: u64,
    started: bool,
    done: bool,
}

impl IndexSolutions {
    pub fn new(m: usize, offset: u64, max_index: u64) -> Self {
        IndexSolutions {
            current: vec![0; m],
            sum: 0,
            offset,
            max_index,
            started: false,
            done: m == 0 || offset > max_index,
        }
    }

    fn advance(&mut self) -> bool {
        let m = self.current.len();
        for p in (0..m).rev() {
            let v = self.current[p] as u64 + 1;
            let prefix: u64 = self.current[..p].iter().map(|&x| x as u64).sum();
            let sum = prefix + v * (m - p) as u64;
            if self.offset + sum <= self.max_index {
                for slot in &mut self.current[p..] {
                    *slot = v as u32;
                }
                self.sum = sum;
                return true;
            }
        }
        false
    }
}

impl Iterator for IndexSolutions {
    /// `(left indices, x0 index)`
    type Item = (Vec<u32>, u32);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some((self.current.clone(), (self.offset + self.sum) as u32))
    }
}

/// Every multiset `{x1 <= ... <= xm}` of `{1..n}` with `x0 = sum <= n`,
/// exactly once, in lexicographic multiset order.
pub fn enumerate_solutions(m: u32, n: u32) -> impl Iterator<Item = IntegerSolution> {
    let offset = m.saturating_sub(1) as u64;
    IndexSolutions::new(m as usize, offset, n.saturating_sub(1) as u64).map(|(left, x0)| IntegerSolution {
        left: left.into_iter().map(|i| i + 1).collect(),
        x0: x0 + 1,
    })
}
