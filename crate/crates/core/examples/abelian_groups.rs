// Smith normal form and finitely generated abelian groups.
//
// cargo run -p bofill --example abelian_groups

use bofill::{cokernel, rational_rank, smith_normal_form, IntMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A = {a}");
    println!("D = {}", snf.d);
    assert_eq!(snf.u.mul(&a)?.mul(&snf.v)?, snf.d);

    // ℤ³ / rowspan(A)
    let g = cokernel(&a);
    println!("coker A = {g}, order {:?}", g.order());
    assert_eq!(g.to_string(), "Z/2 + Z/6 + Z/12");

    let b = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
    println!("coker {b} = {} (rank {})", cokernel(&b), rational_rank(&b));
    assert_eq!(cokernel(&b).to_string(), "Z^2");
    Ok(())
}

fn main() {
    run_example().expect("abelian_groups example failed");
}
