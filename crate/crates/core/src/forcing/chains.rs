//! Hand-derived forcing chains: both branches for `k = 2`, and the branch
//! where `gamma` is blue for `3 <= k < l`.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::equations::{Color, ProblemSpec, SolutionWitness};
use crate::rational::Rational;

use super::certificate::{verify_certificate, Assumption, BranchNode, ForcingCertificate, ForcingStep, Outcome};
use super::ForcingError;

/// Residue parameters of the 1-blue chain for `l = k + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma4Parameters {
    pub k: i64,
    pub l: i64,
    pub r: i64,
    /// Least nonnegative residue of `1 - k` modulo `r`.
    pub b: i64,
    /// Number of copies of `l` in the solution forcing `x0_prime`.
    pub y: i64,
    /// `k^2 + (r - 1)(k - 1) - b`
    pub x0_prime: i64,
}

impl Lemma4Parameters {
    pub fn new(k: u32, l: u32) -> Result<Self, ForcingError> {
        if k < 3 || k >= l {
            return Err(ForcingError::Precondition(format!("need 3 <= k < l, got k={k}, l={l}")));
        }
        let (k, l) = (k as i64, l as i64);
        let r = l - k;
        let b = (1 - k).mod_floor(&r);
        let (y_shift, rem) = (1 - k - b).div_rem(&r);
        if rem != 0 {
            return Err(ForcingError::Precondition(format!("1 - k - b not divisible by r for k={k}, l={l}")));
        }
        let y = k - 1 + y_shift;
        let x0_prime = k * k + (r - 1) * (k - 1) - b;
        let p = Lemma4Parameters { k, l, r, b, y, x0_prime };
        if !(0..=k).contains(&y) || (k - y) * k + y * l != x0_prime {
            return Err(ForcingError::Precondition(format!("inconsistent parameters {p:?}")));
        }
        Ok(p)
    }

    /// `k - 2 - (k-1)/r < y <= k - 1 - (k-1)/r`
    pub fn y_within_stated_bounds(&self) -> bool {
        let y = Rational::from_integer(self.y);
        let frac = Rational::new(self.k - 1, self.r);
        let lower = Rational::from_integer(self.k - 2) - &frac;
        let upper = Rational::from_integer(self.k - 1) - &frac;
        lower < y && y <= upper
    }
}

/// Accumulates a chain of forcing steps, closing it early when a forced
/// point already has the other color.
struct Chain {
    gamma: Rational,
    state: BTreeMap<Rational, Color>,
    steps: Vec<ForcingStep>,
    closed: Option<SolutionWitness>,
}

impl Chain {
    fn new(gamma: &Rational, start: Color) -> Self {
        let mut state = BTreeMap::new();
        state.insert(gamma.clone(), start);
        Chain {
            gamma: gamma.clone(),
            state,
            steps: Vec::new(),
            closed: None,
        }
    }

    fn pt(&self, n: i64) -> Rational {
        self.gamma.mul_int(n)
    }

    fn ptq(&self, numer: i64, denom: i64) -> Rational {
        &self.gamma * Rational::new(numer, denom)
    }

    /// `witness` has color `opposite(forced)` and holds `point`.
    fn force(&mut self, point: Rational, forced: Color, witness: SolutionWitness) {
        if self.closed.is_some() {
            return;
        }
        match self.state.get(&point) {
            Some(&c) if c == forced => {}
            Some(_) => self.closed = Some(witness),
            None => {
                self.state.insert(point.clone(), forced);
                self.steps.push(ForcingStep { point, forced, witness });
            }
        }
    }

    fn finish(self, start: Color, contradiction: SolutionWitness) -> BranchNode {
        BranchNode {
            assumption: Assumption {
                point: self.gamma,
                color: start,
            },
            steps: self.steps,
            outcome: Outcome::Contradiction(self.closed.unwrap_or(contradiction)),
        }
    }
}

fn w(color: Color, pairs: &[(Rational, i64)], x0: Rational) -> SolutionWitness {
    let pairs: Vec<(Rational, u32)> = pairs
        .iter()
        .filter(|(_, m)| *m > 0)
        .map(|(v, m)| (v.clone(), *m as u32))
        .collect();
    SolutionWitness::from_pairs(color, &pairs, x0)
}

use Color::{Blue, Red};

fn k2_red_branch(gamma: &Rational, l: i64) -> BranchNode {
    let mut c = Chain::new(gamma, Red);
    let one = c.pt(1);
    let two = c.pt(2);
    c.force(two.clone(), Blue, w(Red, &[(one.clone(), 2)], two.clone()));
    c.force(c.pt(2 * l), Red, w(Blue, &[(two.clone(), l)], c.pt(2 * l)));
    c.force(
        c.pt(2 * l + 1),
        Blue,
        w(Red, &[(one.clone(), 1), (c.pt(2 * l), 1)], c.pt(2 * l + 1)),
    );
    c.force(
        c.pt(2 * l - 1),
        Blue,
        w(Red, &[(one.clone(), 1), (c.pt(2 * l - 1), 1)], c.pt(2 * l)),
    );
    let three_halves = c.ptq(3, 2);
    let five_halves = c.ptq(5, 2);
    c.force(
        three_halves.clone(),
        Red,
        w(Blue, &[(two.clone(), l - 2), (three_halves.clone(), 2)], c.pt(2 * l - 1)),
    );
    c.force(
        five_halves.clone(),
        Red,
        w(Blue, &[(two.clone(), l - 2), (five_halves.clone(), 2)], c.pt(2 * l + 1)),
    );
    let end = w(Red, &[(one, 1), (three_halves, 1)], five_halves);
    c.finish(Red, end)
}

fn k2_blue_branch(gamma: &Rational, l: i64) -> BranchNode {
    let mut c = Chain::new(gamma, Blue);
    let one = c.pt(1);
    let two = c.pt(2);
    let ll = c.pt(l);
    c.force(ll.clone(), Red, w(Blue, &[(one.clone(), l)], ll.clone()));
    c.force(c.pt(2 * l), Blue, w(Red, &[(ll.clone(), 2)], c.pt(2 * l)));
    c.force(two.clone(), Red, w(Blue, &[(two.clone(), l)], c.pt(2 * l)));
    c.force(c.pt(4), Blue, w(Red, &[(two.clone(), 2)], c.pt(4)));
    c.force(
        c.pt(l + 2),
        Blue,
        w(Red, &[(two.clone(), 1), (ll.clone(), 1)], c.pt(l + 2)),
    );
    c.force(
        c.pt(3),
        Red,
        w(Blue, &[(one.clone(), l - 1), (c.pt(3), 1)], c.pt(l + 2)),
    );
    c.force(
        c.pt(l + 3),
        Red,
        w(Blue, &[(one, l - 1), (c.pt(4), 1)], c.pt(l + 3)),
    );
    let end = w(Red, &[(c.pt(3), 1), (ll, 1)], c.pt(l + 3));
    c.finish(Blue, end)
}

pub(crate) fn k2_certificate(spec: &ProblemSpec) -> Result<ForcingCertificate, ForcingError> {
    if spec.k != 2 {
        return Err(ForcingError::Precondition(format!("k = 2 chain used with k = {}", spec.k)));
    }
    let l = spec.l as i64;
    let cert = ForcingCertificate {
        spec: spec.clone(),
        domain_end: spec.gamma.mul_int(spec.unit_bound()),
        root: [k2_red_branch(&spec.gamma, l), k2_blue_branch(&spec.gamma, l)],
    };
    verify_certificate(&cert)?;
    Ok(cert)
}

/// Both branches for `k = 2` over `[1, 2l + 1]`.
pub fn build_lemma2_certificate(l: u32) -> Result<ForcingCertificate, ForcingError> {
    let spec = ProblemSpec::new(2, l)
        .map_err(|_| ForcingError::Precondition(format!("need l >= 2, got {l}")))?;
    k2_certificate(&spec)
}

/// The branch where `gamma` is blue, for `3 <= k < l`: force `l`, `kl`, `k`,
/// `l + 1`, then the residue point `x0_prime`; either that closes the branch
/// (`b = 0`) or it forces `2` red and then `2k`, `2k + l - 1` blue.
pub fn build_blue1_certificate(spec: &ProblemSpec) -> Result<BranchNode, ForcingError> {
    let p = Lemma4Parameters::new(spec.k, spec.l)?;
    let (k, l) = (p.k, p.l);
    let mut c = Chain::new(&spec.gamma, Blue);
    let one = c.pt(1);
    let kl = c.pt(k * l);
    let ll = c.pt(l);
    let kk = c.pt(k);
    let l1 = c.pt(l + 1);

    c.force(ll.clone(), Red, w(Blue, &[(one.clone(), l)], ll.clone()));
    c.force(kl.clone(), Blue, w(Red, &[(ll.clone(), k)], kl.clone()));
    c.force(kk.clone(), Red, w(Blue, &[(kk.clone(), l)], kl.clone()));
    c.force(
        l1.clone(),
        Red,
        w(Blue, &[(one.clone(), l - k + 1), (l1.clone(), k - 1)], kl.clone()),
    );
    let x0p = c.pt(p.x0_prime);
    c.force(
        x0p.clone(),
        Blue,
        w(Red, &[(kk.clone(), k - p.y), (ll.clone(), p.y)], x0p.clone()),
    );

    if p.b == 0 {
        let end = w(Blue, &[(one, l - 1), (x0p, 1)], kl);
        return Ok(c.finish(Blue, end));
    }
    let two = c.pt(2);
    c.force(
        two.clone(),
        Red,
        w(Blue, &[(one.clone(), l - p.b - 1), (two.clone(), p.b), (x0p, 1)], kl),
    );
    let twok = c.pt(2 * k);
    let top = c.pt(2 * k + l - 1);
    c.force(twok.clone(), Blue, w(Red, &[(two.clone(), k)], twok.clone()));
    c.force(top.clone(), Blue, w(Red, &[(two, k - 1), (l1, 1)], top.clone()));
    let end = w(Blue, &[(one, l - 1), (twok, 1)], top);
    Ok(c.finish(Blue, end))
}
