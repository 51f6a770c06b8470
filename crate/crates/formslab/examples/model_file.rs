// Define a contact form in TOML and scan it.
//
// cargo run -p formslab --example model_file

use formslab::{load_model, reeb_solve, verify_contact};

const OVERTWISTED_DISC_MODEL: &str = r#"
name = "cos-r"
resolution = [9, 16, 9]

[[axis]]
name = "r"
range = [0.1, 3.0]

[[axis]]
name = "phi"
period = 6.283185307179586

[[axis]]
name = "z"
range = [-1, 1]

# α = cos(r) dz + r sin(r) dφ: contact everywhere, but the disc r ≤ π is overtwisted.
[[term]]
index = ["z"]
coeff = "cos(r)"

[[term]]
index = ["phi"]
coeff = "r * sin(r)"
"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let model = load_model(OVERTWISTED_DISC_MODEL)?;
    let report = verify_contact(&model, None)?;
    println!("{}: {}", model.name, report.summary());
    let r = reeb_solve(&model.form, &[1.0, 0.0, 0.0])?;
    println!("Reeb field at r = 1: {:?}", r.vector);
    Ok(())
}

fn main() {
    run_example().expect("model_file example failed");
}
