// Interval arithmetic with exact closure flags.

use rado::rational::q;
use rado::{Interval, IntervalSet};

fn main() {
    let red = IntervalSet::normalize([
        Interval::closed_open(q(1, 1), q(2, 1)).unwrap(),
        Interval::closed_open(q(6, 1), q(7, 1)).unwrap(),
    ]);
    let twice = red.m_fold_sumset(2).unwrap();
    println!("R + R = {:?}", twice.intervals());
    println!("R ∩ (R + R) = {:?}", red.intersect(&twice).intervals());

    // open ends survive the sum: [1,2) + [1,2) = [2,4)
    let t = q(7, 2);
    let parts = red.decompose_sum(2, &t).unwrap();
    println!("{t} = {}", parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" + "));
}
