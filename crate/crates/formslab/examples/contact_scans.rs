// Scan β ∧ (dβ)² for the two built-in 5-dimensional normal forms.
//
// cargo run -p formslab --example contact_scans

use formslab::{verify_contact, ContactDensity, ContactModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for model in [ContactModel::paper_page(), ContactModel::paper_spine()] {
        let density = ContactDensity::new(&model.form)?;
        let names = model.chart().names();
        println!(
            "{}: β ∧ (dβ)² = {}",
            model.name,
            density.symbolic()?.display(&names)
        );
        let report = verify_contact(&model, Some(&[6, 6, 6, 6, 6]))?;
        println!("    {}", report.summary());
        assert!(report.nondegenerate());
        assert!((report.min_density.abs() - 2.0).abs() < 1e-12);
    }
    Ok(())
}

fn main() {
    run_example().expect("contact_scans example failed");
}
