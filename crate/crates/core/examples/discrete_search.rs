// Exact discrete value by backtracking, with and without unit forcing.

use rado::discrete::{compute_rado, SearchOptions};
use rado::ProblemSpec;

fn main() {
    let spec = ProblemSpec::new(3, 4).unwrap();
    for unit_forcing in [true, false] {
        let opts = SearchOptions {
            unit_forcing,
            scan: true,
            ..SearchOptions::default()
        };
        let r = compute_rado(&spec, &opts).unwrap();
        println!(
            "unit forcing {unit_forcing:<5}: S = {} ({} nodes)",
            r.value, r.stats.nodes_explored
        );
    }
    let r = compute_rado(&spec, &SearchOptions::default()).unwrap();
    let c = &r.extremal;
    println!("extremal coloring of 1..{}: red {:?}", c.n(), c.class(rado::Color::Red));
}
