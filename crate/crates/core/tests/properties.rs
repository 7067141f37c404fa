use proptest::prelude::*;

use rado::coloring::{lemma1_coloring, scale_coloring, verify_coloring};
use rado::discrete::{compute_rado, is_valid_discrete, propagate, search_valid, DiscreteColoring, SearchOptions};
use rado::forcing::{auto_prove, build_lemma2_certificate, verify_certificate, ForcingCertificate, Outcome};
use rado::rational::q;
use rado::{Color, Interval, IntervalSet, ProblemSpec, Rational};

fn interval(d: i64) -> impl Strategy<Value = Interval> {
    (0i64..24, 0i64..12, 0u8..4).prop_map(move |(a, len, code)| {
        let lo = Rational::new(a, d);
        let hi = Rational::new(a + len, d);
        if len == 0 {
            Interval::point(lo)
        } else {
            Interval::new(lo, hi, code & 1 == 0, code & 2 == 0).unwrap()
        }
    })
}

fn set_over(d: i64) -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec(interval(d), 1..=4).prop_map(IntervalSet::normalize)
}

fn interval_set() -> impl Strategy<Value = (i64, IntervalSet)> {
    (1i64..=8).prop_flat_map(|d| (Just(d), set_over(d)))
}

/// Two sets sharing one denominator.
fn set_pair() -> impl Strategy<Value = (i64, IntervalSet, IntervalSet)> {
    (1i64..=8).prop_flat_map(|d| (Just(d), set_over(d), set_over(d)))
}

/// Multiples of `1/(step * d)` covering `[0, 72/d]`, the span of any sum.
fn probes(d: i64, step: i64) -> impl Iterator<Item = Rational> {
    (-1..=72 * step + 1).map(move |i| Rational::new(i, step * d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_idempotent_and_membership_preserving(
        raw in prop::collection::vec(interval(8), 0..6),
        xs in prop::collection::vec((0i64..400, 1i64..=64), 1000),
    ) {
        let set = IntervalSet::normalize(raw.clone());
        prop_assert_eq!(IntervalSet::normalize(set.intervals().to_vec()), set.clone());
        for w in set.intervals().windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
        }
        for (n, d) in xs {
            let x = Rational::new(n, d);
            prop_assert_eq!(set.contains(&x), raw.iter().any(|iv| iv.contains(&x)));
        }
    }

    #[test]
    fn minkowski_sum_matches_grid_brute_force((d, a, b) in set_pair()) {
        // every nonempty {x in a : t - x in b} with t on the 1/(2d) grid has
        // endpoints on that grid, so it meets the 1/(4d) grid
        let sum = a.minkowski_sum(&b);
        let xs: Vec<Rational> = probes(d, 4).filter(|x| a.contains(x)).collect();
        for t in probes(d, 2) {
            let brute = xs.iter().any(|x| b.contains(&(&t - x)));
            prop_assert_eq!(sum.contains(&t), brute, "t = {}", t);
        }
    }

    #[test]
    fn decompose_round_trip((_, a) in interval_set(), m in 1u32..=4) {
        let sum = a.m_fold_sumset(m).unwrap();
        for iv in sum.intervals() {
            for t in [iv.midpoint(), iv.representative()] {
                let parts = a.decompose_sum(m, &t).unwrap();
                prop_assert_eq!(parts.len(), m as usize);
                prop_assert!(parts.iter().all(|p| a.contains(p)));
                prop_assert_eq!(parts.iter().cloned().sum::<Rational>(), t);
            }
        }
    }

    #[test]
    fn propagate_is_monotone_and_idempotent(k in 2u32..=3, extra in 0u32..=2, n in 4u32..=14, seed in prop::collection::vec(any::<Option<bool>>(), 14)) {
        let spec = ProblemSpec::new(k, k + extra).unwrap();
        let mut c = DiscreteColoring::unset(n);
        for (x, s) in (1..=n).zip(&seed) {
            if let Some(red) = s {
                c.set(x, if *red { Color::Red } else { Color::Blue });
            }
        }
        if let Ok(p) = propagate(&c, &spec) {
            for x in 1..=n {
                if let Some(col) = c.get(x) {
                    prop_assert_eq!(p.get(x), Some(col));
                }
            }
            prop_assert_eq!(propagate(&p, &spec).ok(), Some(p.clone()));
        }
    }
}

#[test]
fn scaling_equivariance() {
    for gamma in [q(1, 2), q(2, 1), q(3, 7)] {
        for l in 2..=5 {
            for k in 2..=l {
                let base = ProblemSpec::new(k, l).unwrap();
                let scaled = base.rescaled(gamma.clone()).unwrap();
                let c = scale_coloring(&lemma1_coloring(&base), &gamma).unwrap();
                assert_eq!(c, lemma1_coloring(&scaled));
                assert!(verify_coloring(&c, &scaled).unwrap().is_valid());
            }
        }
    }
}

#[test]
fn extremal_coloring_on_integers_is_valid() {
    for l in 2..=6u32 {
        for k in 2..=l {
            let spec = ProblemSpec::new(k, l).unwrap();
            let c = lemma1_coloring(&spec);
            let n = spec.unit_bound() as u32 - 1;
            let red: Vec<u32> = (1..=n).filter(|&x| c.color_of(&Rational::from_integer(x as i64)) == Some(Color::Red)).collect();
            let d = DiscreteColoring::from_red(n, &red);
            assert!(is_valid_discrete(&d, &spec).is_valid(), "({k},{l})");
        }
    }
}

#[test]
fn search_without_forcing_agrees() {
    for (k, l) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
        let spec = ProblemSpec::new(k, l).unwrap();
        for n in 1..=14 {
            assert_eq!(search_valid(n, &spec, true).0.is_some(), search_valid(n, &spec, false).0.is_some());
        }
    }
}

#[test]
fn auto_prove_agrees_with_search() {
    for l in 3..=5u32 {
        for k in 3..=l {
            let spec = ProblemSpec::new(k, l).unwrap();
            let closed = [Color::Red, Color::Blue]
                .into_iter()
                .all(|c| auto_prove(&spec, 1, &[(Rational::one(), c)], 64).unwrap().is_some());
            let n = spec.unit_bound() as u32;
            let uncolorable = search_valid(n, &spec, true).0.is_none();
            assert_eq!(closed, uncolorable, "({k},{l})");
            assert!(closed);
        }
    }
}

#[test]
fn parallel_scan_matches_sequential() {
    let spec = ProblemSpec::new(3, 4).unwrap();
    let seq = compute_rado(&spec, &SearchOptions::default()).unwrap();
    let par = compute_rado(&spec, &SearchOptions { threads: 0, ..SearchOptions::default() }).unwrap();
    assert_eq!(seq.value, par.value);
}

type Edit<'a> = Box<dyn Fn(&mut rado::forcing::ForcingStep) + 'a>;

// Every single-field mutation of every step must break the certificate.
#[test]
fn tamper_resistance() {
    let cert = build_lemma2_certificate(3).unwrap();
    verify_certificate(&cert).unwrap();

    fn steps_mut(cert: &mut ForcingCertificate) -> Vec<&mut rado::forcing::ForcingStep> {
        fn walk<'a>(node: &'a mut rado::forcing::BranchNode, out: &mut Vec<&'a mut rado::forcing::ForcingStep>) {
            out.extend(node.steps.iter_mut());
            if let Outcome::Children(ch) = &mut node.outcome {
                for c in ch.iter_mut() {
                    walk(c, out);
                }
            }
        }
        let mut out = Vec::new();
        for b in cert.root.iter_mut() {
            walk(b, &mut out);
        }
        out
    }

    let total = steps_mut(&mut cert.clone()).len();
    assert!(total > 0);
    let bump = q(1, 2);
    let mut mutants = 0;
    for i in 0..total {
        let mut edits: Vec<Edit> = vec![
            Box::new(|s| s.point = &s.point + &bump),
            Box::new(|s| s.forced = s.forced.opposite()),
            Box::new(|s| s.witness.x0 = &s.witness.x0 + &bump),
        ];
        let width = steps_mut(&mut cert.clone())[i].witness.left.len();
        for j in 0..width {
            let b = bump.clone();
            edits.push(Box::new(move |s| s.witness.left[j].0 = &s.witness.left[j].0 + &b));
        }
        for edit in &edits {
            let mut m = cert.clone();
            edit(steps_mut(&mut m)[i]);
            assert!(verify_certificate(&m).is_err(), "step {i} mutation survived");
            mutants += 1;
        }
    }
    assert!(mutants >= 3 * total);
}
