// Middle homology of OBD(D*Sⁿ, τᵏ) and the resulting fillability verdicts.
//
// cargo run -p bofill --example brieskorn

use bofill::{bofill_verdict, brieskorn_homology, BrieskornPoint};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>3}  {:<8} verdict", "n", "k", "H_n");
    for n in 1..=4 {
        for k in [0, 1, 2, 3, 4] {
            let p = BrieskornPoint::new(n, k)?;
            let h = brieskorn_homology(p)?;
            println!(
                "{n:>3} {k:>3}  {:<8} {:?}",
                h.to_string(),
                bofill_verdict(p)?.summary
            );
        }
    }
    assert_eq!(
        brieskorn_homology(BrieskornPoint::new(3, 5)?)?.to_string(),
        "Z/5"
    );
    Ok(())
}

fn main() {
    run_example().expect("brieskorn example failed");
}
