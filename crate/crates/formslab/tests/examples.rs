#[allow(dead_code)]
mod contact_scans {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/contact_scans.rs"
    ));
}

#[test]
fn contact_scans_example_runs() {
    contact_scans::run_example().expect("contact_scans example should run");
}

#[allow(dead_code)]
mod cobordism {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cobordism.rs"
    ));
}

#[test]
fn cobordism_example_runs() {
    cobordism::run_example().expect("cobordism example should run");
}

#[allow(dead_code)]
mod minimal_k {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/minimal_k.rs"
    ));
}

#[test]
fn minimal_k_example_runs() {
    minimal_k::run_example().expect("minimal_k example should run");
}

#[allow(dead_code)]
mod reeb_field {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/reeb_field.rs"
    ));
}

#[test]
fn reeb_field_example_runs() {
    reeb_field::run_example().expect("reeb_field example should run");
}

#[allow(dead_code)]
mod model_file {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/model_file.rs"
    ));
}

#[test]
fn model_file_example_runs() {
    model_file::run_example().expect("model_file example should run");
}
