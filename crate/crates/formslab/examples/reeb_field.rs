// Solve β(R) = 1, ι_R dβ = 0 pointwise.
//
// cargo run -p formslab --example reeb_field

use formslab::{reeb_solve, ContactModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spine = ContactModel::paper_spine();
    let r = reeb_solve(&spine.form, &[0.0; 5])?;
    println!(
        "spine at p = 0: R = {:?} (residual {:e})",
        r.vector,
        r.max_residual()
    );
    assert!((r.vector[0] - 1.0).abs() < 1e-12);

    let page = ContactModel::paper_page();
    for theta in [0.0, 1.0, 2.5] {
        let r = reeb_solve(&page.form, &[1.5, 0.0, theta, 0.0, 0.0])?;
        let names = page.chart().names();
        let parts: Vec<String> = names
            .iter()
            .zip(&r.vector)
            .map(|(n, x)| format!("{x:+.4}∂{n}"))
            .collect();
        println!("page at θ = {theta}: R = {}", parts.join(" "));
        assert!(r.max_residual() <= 1e-9);
    }
    Ok(())
}

fn main() {
    run_example().expect("reeb_field example failed");
}
