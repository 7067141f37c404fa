// The automatic prover needs half-integers for k = 2 once l >= 4.

use rado::forcing::auto_prove;
use rado::{Color, ProblemSpec, Rational};

fn main() {
    let assume = [(Rational::one(), Color::Red)];
    for l in 3..=5 {
        let spec = ProblemSpec::new(2, l).unwrap();
        for d in [1, 2] {
            let node = auto_prove(&spec, d, &assume, 64).unwrap();
            match node {
                Some(n) => println!("(2,{l}) d={d}: closed, {} leaves, {} steps", n.leaves(), n.step_count()),
                None => println!("(2,{l}) d={d}: open"),
            }
        }
    }
}
