// Every headline check in one run.

fn main() {
    for c in rado::reproduce::run_all(1) {
        println!("{} {:<36} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}
