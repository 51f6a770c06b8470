// First homology of 3-dimensional open books from Dehn twist words.
//
// cargo run -p bofill --example open_book_homology

use bofill::{h1_open_book, Surface, TwistWord};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Annulus with τᵏ: the lens spaces L(k, 1).
    let annulus = Surface::annulus();
    for k in 1..=5 {
        let w = TwistWord::parse(&annulus, &format!("[S{{1}}:+{k}]"))?;
        println!("annulus {w:<12} H1 = {}", h1_open_book(&w)?);
    }

    // Pants with boundary twists: Seifert fibred, |H1| = |a1a2 + a2a3 + a3a1|.
    let pants = Surface::pants();
    let w = TwistWord::parse(&pants, "[S{1}:+2][S{2}:+3][S{1,2}:+5]")?;
    let h = h1_open_book(&w)?;
    println!("pants   {w} H1 = {h}");
    assert_eq!(h.order(), Some((2 * 3 + 3 * 5 + 5 * 2).into()));

    // One-holed torus: τ_a τ_b is the trefoil open book of S³.
    let torus = Surface::new(1, 1)?;
    let trefoil = TwistWord::parse(&torus, "[v(1,0):+1][v(0,1):+1]")?;
    println!("torus   {trefoil} H1 = {}", h1_open_book(&trefoil)?);
    assert!(h1_open_book(&trefoil)?.is_trivial());

    // Identity monodromy: #(S¹×S²), one summand per page generator.
    let s = Surface::new(2, 3)?;
    println!(
        "{s} identity H1 = {}",
        h1_open_book(&TwistWord::identity(&s))?
    );
    Ok(())
}

fn main() {
    run_example().expect("open_book_homology example failed");
}
