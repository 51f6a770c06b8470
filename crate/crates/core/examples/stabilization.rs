// Positive stabilization: add a handle and twist along a curve through it.
// H₁ of the open book is unchanged; BO of the result is never strongly fillable.
//
// cargo run -p bofill --example stabilization

use bofill::{check_stabilization, Surface, TwistWord};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let disc = TwistWord::identity(&Surface::disc());
    let once = check_stabilization(&disc, 1, 1)?;
    println!(
        "disc, id  ->  {} {}  H1 {} -> {}",
        once.stabilization.surface(),
        once.stabilization.word,
        once.h1_before,
        once.h1_after
    );

    let pants = TwistWord::parse(&Surface::pants(), "[S{1}:+2][S{2}:-1]")?;
    for (i, j) in [(1, 1), (1, 3), (2, 3)] {
        let c = check_stabilization(&pants, i, j)?;
        println!(
            "pants ({i},{j}) ->  {} {}  H1 {} -> {}  summary {:?}",
            c.stabilization.surface(),
            c.stabilization.word,
            c.h1_before,
            c.h1_after,
            c.verdict.summary
        );
        assert!(c.h1_preserved());
        assert!(c.verdict.is_obstructed());
    }
    Ok(())
}

fn main() {
    run_example().expect("stabilization example failed");
}
