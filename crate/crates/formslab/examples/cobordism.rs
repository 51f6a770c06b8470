// Check the collar symplectic form on [0,1] × ∂X × S² at sample points.
//
// cargo run -p formslab --example cobordism

use formslab::{verify_cobordism, CobordismParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for amplitude in [0.0, 0.1, 1.0] {
        let params = CobordismParams {
            amplitude,
            resolution: vec![5, 5, 5, 5, 5, 3],
            ..CobordismParams::default()
        };
        let report = verify_cobordism(&params)?;
        println!(
            "H amplitude {amplitude}: {:?}, {}",
            report.verdict,
            report.summary()
        );
        println!(
            "    minimum at {:?} on {}",
            report.argmin, report.argmin_chart
        );
        assert!(report.min_density > 0.0);
    }
    Ok(())
}

fn main() {
    run_example().expect("cobordism example failed");
}
