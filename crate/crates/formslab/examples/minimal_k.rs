// Smallest K making K dθ + λ contact on the sampled region, by bisection.
//
// cargo run -p formslab --example minimal_k

use formslab::{minimal_k, LargeKModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for amplitude in [0.0, 0.25, 0.5] {
        let model = LargeKModel::with_amplitude(amplitude);
        let res = minimal_k(&model, (0.0, 100.0), Some(&[9, 9, 9]))?;
        println!(
            "amplitude {amplitude}: K_min ≈ {:.4} after {} scans, monotone: {}",
            res.k_min,
            res.tested.len(),
            res.monotone
        );
        assert!(res.monotone);
    }
    match minimal_k(
        &LargeKModel::with_amplitude(50.0),
        (0.0, 1.0),
        Some(&[9, 9, 9]),
    ) {
        Err(e) => println!("amplitude 50 on [0, 1]: {e}"),
        Ok(r) => return Err(format!("unexpected K_min {}", r.k_min).into()),
    }
    Ok(())
}

fn main() {
    run_example().expect("minimal_k example failed");
}
