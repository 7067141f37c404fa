// Build an upper-bound certificate, replay it from JSON, then break it.

use rado::forcing::{certify_upper_default, verify_certificate, ForcingCertificate};

fn main() {
    let cert = certify_upper_default(2, 3).unwrap();
    let text = cert.to_json();
    println!("{} bytes, {} leaves, {} steps", text.len(), cert.leaves(), cert.step_count());

    let replayed = ForcingCertificate::from_json(&text).unwrap();
    println!("replay: {:?}", verify_certificate(&replayed).unwrap());

    for step in &cert.root[0].steps {
        println!("  {} forced {:?} by {}", step.point, step.forced, step.witness);
    }

    let mut bad = replayed;
    bad.root[0].steps[0].forced = bad.root[0].steps[0].forced.opposite();
    println!("tampered: {}", verify_certificate(&bad).unwrap_err());
}
