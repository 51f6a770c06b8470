// Strong-fillability obstructions for Bourgeois contact manifolds BO(Σ, φ).
//
// cargo run -p bofill --example fillability_verdicts

use bofill::{analyze, Status, Summary, Surface, TwistWord};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (Surface::annulus(), ""),
        (Surface::annulus(), "[S{1}:+3]"),
        (Surface::pants(), "[S{1}:+1][S{2}:-1]"),
        (Surface::pants(), "[S{1}:+1][S{2}:+1][S{1}:-1][S{2}:-1]"),
        (Surface::new(1, 1)?, "[v(1,0):+1][v(0,1):+1]"),
    ];
    for (surface, text) in cases {
        let w = TwistWord::parse(&surface, text)?;
        let v = analyze(&w)?;
        println!(
            "{surface} {:<40} {:?}",
            if text.is_empty() { "id" } else { text },
            v.summary
        );
        for c in v.criteria.iter().filter(|c| c.status == Status::Obstructed) {
            println!("    obstructed by {} — {}", c.name, c.citation);
        }
    }

    let stein = analyze(&TwistWord::identity(&Surface::annulus()))?;
    assert_eq!(stein.summary, Summary::SteinFillable);
    let positive = analyze(&TwistWord::parse(
        &Surface::pants(),
        "[S{1,2}:+2][S{1}:+1]",
    )?)?;
    assert_eq!(positive.summary, Summary::NotStronglyFillable);
    assert!(positive.weakly_fillable);
    Ok(())
}

fn main() {
    run_example().expect("fillability_verdicts example failed");
}
