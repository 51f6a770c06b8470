// Factor a pants monodromy into two pieces with negative orbifold Euler characteristic.
//
// cargo run -p bofill --example pants_factorization

use bofill::pants_factorization;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for a in [[0, 0, 0], [2, 3, 5], [-6, 1, 0]] {
        let f = pants_factorization(a)?;
        println!("a = {a:?}: N = {}", f.n);
        println!(
            "    F = {}  χ_orb = {} (standard {})",
            f.f, f.f_side.chi, f.f_side.chi_standard
        );
        println!(
            "    G = {}  χ_orb = {} (standard {})",
            f.g, f.g_side.chi, f.g_side.chi_standard
        );
        assert!(f.recomposes);
    }
    Ok(())
}

fn main() {
    run_example().expect("pants_factorization example failed");
}
