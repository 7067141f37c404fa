// The extremal coloring of [1, kl+k-1): checked valid, then shown to break
// once the endpoint is added in either color.

use rado::coloring::{extension_check, is_monochromatic, lemma1_coloring, verify_coloring};
use rado::{Color, ProblemSpec};

fn main() {
    let spec = ProblemSpec::new(3, 4).unwrap();
    let c = lemma1_coloring(&spec);
    println!("{}", c.to_json());
    println!("verdict: {:?}", verify_coloring(&c, &spec).unwrap());

    let (red, blue) = extension_check(&spec);
    for (w, color) in [(red, Color::Red), (blue, Color::Blue)] {
        let ext = c.extend_to_endpoint(color).unwrap();
        println!("endpoint {color:?}: {w}  monochromatic={}", is_monochromatic(&ext, &w));
    }
}
