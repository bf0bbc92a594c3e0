// Compares `Θ` and `Θ₁,₁` of two forms. An equivalent pair agrees in both;
// different forms usually separate in the first few coefficients.

use thetamap::invariants::compare_invariants;
use thetamap::lattice::{transform, GramMatrix};
use thetamap::rational::int;

pub fn run_example() -> thetamap::Result<String> {
    let a = GramMatrix::from_ints(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]])?;
    let t = vec![vec![1, 2, -1], vec![0, 1, 3], vec![0, 0, 1]];
    let b = transform(&a, &t)?;
    let c = GramMatrix::from_ints(&[vec![2, 1, 0], vec![1, 3, 0], vec![0, 0, 4]])?;
    let x = int(10);
    Ok(format!(
        "A vs T^t A T:\n{}A vs C:\n{}",
        compare_invariants(&a, &b, &x)?.render(),
        compare_invariants(&a, &c, &x)?.render()
    ))
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("compare example"));
}
