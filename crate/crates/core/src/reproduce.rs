//! One-shot reproduction of every headline result, used by the
//! `reproduce-paper` command.

use std::time::Instant;

use serde::Serialize;

use crate::coloring::{extension_check, is_monochromatic, lemma1_coloring, scale_coloring, verify_coloring};
use crate::discrete::{compute_rado, exhaustive_valid, search_valid, SearchOptions};
use crate::equations::{check_witness, formula_continuous, Color, ProblemSpec};
use crate::forcing::{auto_prove, certify_upper, CertifyOptions, ForcingCertificate, Lemma4Parameters};
use crate::rational::{q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

fn timed(name: &str, f: impl FnOnce() -> Result<String, String>) -> Check {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        name: name.to_string(),
        pass,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn spec(k: u32, l: u32) -> ProblemSpec {
    ProblemSpec::new(k, l).expect("valid arities")
}

/// `(k, l, S(k, l))` for `2 <= k <= l <= 5`.
pub const DISCRETE_TABLE: [(u32, u32, u32); 10] = [
    (2, 2, 5),
    (2, 3, 7),
    (2, 4, 11),
    (2, 5, 13),
    (3, 3, 11),
    (3, 4, 14),
    (3, 5, 17),
    (4, 4, 19),
    (4, 5, 23),
    (5, 5, 29),
];

pub fn discrete_table(threads: usize) -> Result<String, String> {
    let opts = SearchOptions {
        threads,
        ..SearchOptions::default()
    };
    for (k, l, want) in DISCRETE_TABLE {
        let r = compute_rado(&spec(k, l), &opts).map_err(|e| format!("({k},{l}): {e}"))?;
        if r.value != want || r.formula_mismatch() {
            return Err(format!("({k},{l}): search {} formula {} expected {want}", r.value, r.formula));
        }
    }
    Ok("10 values match".into())
}

pub fn lower_bound_colorings() -> Result<String, String> {
    let mut count = 0;
    for l in 2..=10 {
        for k in 2..=l {
            let s = spec(k, l);
            let c = lemma1_coloring(&s);
            let v = verify_coloring(&c, &s).map_err(|e| e.to_string())?;
            if !v.is_valid() {
                return Err(format!("({k},{l}) coloring has {v:?}"));
            }
            let (red, blue) = extension_check(&s);
            let red_ext = c.extend_to_endpoint(Color::Red).ok_or("cannot extend")?;
            let blue_ext = c.extend_to_endpoint(Color::Blue).ok_or("cannot extend")?;
            let ok = check_witness(&s, &red)
                && check_witness(&s, &blue)
                && is_monochromatic(&red_ext, &red)
                && is_monochromatic(&blue_ext, &blue);
            if !ok {
                return Err(format!("({k},{l}) boundary witnesses fail"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} colorings valid and extremal"))
}

fn red_branch_has_half_points(cert: &ForcingCertificate) -> bool {
    let branch = cert.branch(Color::Red);
    let forced: Vec<&Rational> = branch.steps.iter().map(|s| &s.point).collect();
    forced.contains(&&q(3, 2)) && forced.contains(&&q(5, 2))
}

pub fn upper_bound_certificates() -> Result<String, String> {
    let mut specs: Vec<(u32, u32)> = (2..=10).map(|l| (2, l)).collect();
    for l in 3..=5 {
        for k in 3..=l {
            specs.push((k, l));
        }
    }
    for &(k, l) in &specs {
        let cert = certify_upper(&spec(k, l), &CertifyOptions::default()).map_err(|e| format!("({k},{l}): {e}"))?;
        if k == 2 && l >= 3 && !red_branch_has_half_points(&cert) {
            return Err(format!("(2,{l}) red branch lacks 3/2 and 5/2"));
        }
    }
    Ok(format!("{} certificates verified", specs.len()))
}

pub fn non_integer_necessity() -> Result<String, String> {
    let mut failures = Vec::new();
    for l in 3..=5 {
        let s = spec(2, l);
        let one = [(Rational::one(), Color::Red)];
        let integer = auto_prove(&s, 1, &one, 64).map_err(|e| e.to_string())?;
        let half = auto_prove(&s, 2, &one, 64).map_err(|e| e.to_string())?;
        if integer.is_some() {
            failures.push(format!("l={l}: closes on the integer grid"));
        }
        if half.is_none() {
            failures.push(format!("l={l}: does not close on the half grid"));
        }
    }
    if failures.is_empty() {
        Ok("denominator 1 fails, 2 succeeds for l = 3, 4, 5".into())
    } else {
        Err(failures.join("; "))
    }
}

pub fn residue_arithmetic() -> Result<String, String> {
    let mut count = 0;
    for l in 4..=30 {
        for k in 3..l {
            Lemma4Parameters::new(k, l).map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    Ok(format!("{count} parameter sets consistent"))
}

pub fn scaling() -> Result<String, String> {
    for gamma in [q(1, 2), q(2, 1), q(3, 7)] {
        for (k, l) in [(2, 3), (3, 4)] {
            let base = spec(k, l);
            let scaled_spec = base.rescaled(gamma.clone()).map_err(|e| e.to_string())?;
            let c = scale_coloring(&lemma1_coloring(&base), &gamma).map_err(|e| e.to_string())?;
            if c != lemma1_coloring(&scaled_spec) {
                return Err(format!("gamma={gamma} ({k},{l}): scaled coloring differs"));
            }
            if !verify_coloring(&c, &scaled_spec).map_err(|e| e.to_string())?.is_valid() {
                return Err(format!("gamma={gamma} ({k},{l}): not valid"));
            }
            let kk = k as i64;
            let ll = l as i64;
            let expect = gamma.mul_int(kk * ll) + gamma.mul_int(kk) - gamma.clone();
            let got = formula_continuous(k, l, &gamma).map_err(|e| e.to_string())?.value;
            if got != expect {
                return Err(format!("gamma={gamma} ({k},{l}): formula {got} != {expect}"));
            }
        }
    }
    Ok("6 scaled colorings valid".into())
}

pub fn search_vs_exhaustive() -> Result<String, String> {
    for (k, l) in [(2, 2), (2, 3), (3, 3)] {
        let s = spec(k, l);
        for n in 1..=18 {
            let fast = search_valid(n, &s, true).0.is_some();
            let slow = exhaustive_valid(n, &s).is_some();
            if fast != slow {
                return Err(format!("({k},{l}) n={n}: search {fast}, exhaustive {slow}"));
            }
        }
    }
    Ok("agree for n <= 18".into())
}

pub fn run_all(threads: usize) -> Vec<Check> {
    vec![
        timed("discrete formula table", || discrete_table(threads)),
        timed("lower-bound colorings", lower_bound_colorings),
        timed("upper-bound certificates", upper_bound_certificates),
        timed("non-integer points needed (k = 2)", non_integer_necessity),
        timed("residue parameter arithmetic", residue_arithmetic),
        timed("scaling by gamma", scaling),
        timed("search vs exhaustive enumeration", search_vs_exhaustive),
    ]
}
