// Computes `Θ₁,₁` twice: directly from pairs of vectors, and through a
// basis of harmonic directions. Both routes must agree exactly.

use thetamap::invariants::{theta11_direct, theta11_harmonic, HARMONIC_TO_DIRECT};
use thetamap::lattice::GramMatrix;
use thetamap::rational::{int, render};

pub fn run_example() -> thetamap::Result<String> {
    let mut out = String::new();
    let forms = [
        GramMatrix::from_ints(&[vec![1, 0], vec![0, 2]])?,
        GramMatrix::from_strs(&[&["2", "1/3"], &["1/3", "3"]])?,
        GramMatrix::from_ints(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]])?,
    ];
    for a in &forms {
        let x = int(8);
        let d = theta11_direct(a, &x).series;
        let h = theta11_harmonic(a, &x).series.scale(&int(HARMONIC_TO_DIRECT));
        let verdict = match d.first_difference(&h) {
            None => "AGREE".to_string(),
            Some(e) => format!("DIFFER@{}", render(&e)),
        };
        out += &format!("{} terms, {verdict}\n", d.len());
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("dual route example"));
}
