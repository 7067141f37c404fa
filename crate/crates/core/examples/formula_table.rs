// Closed-form values next to the search result for small arities.

use rado::discrete::{compute_rado, SearchOptions};
use rado::equations::{formula_continuous, formula_discrete};
use rado::rational::q;
use rado::ProblemSpec;

fn main() {
    println!(" k  l  formula  search  continuous(gamma=1/2)");
    for l in 2..=5 {
        for k in 2..=l {
            let spec = ProblemSpec::new(k, l).unwrap();
            let formula = formula_discrete(k, l).unwrap().value.to_string();
            let found = compute_rado(&spec, &SearchOptions::default()).unwrap().value;
            let cont = formula_continuous(k, l, &q(1, 2)).unwrap().value;
            println!("{k:>2} {l:>2} {formula:>8} {found:>7}  {cont}");
        }
    }
}
