// Derivatives of `Θ_A` along the harmonic tangent directions at `A`.

use thetamap::harmonic::tangent_basis;
use thetamap::invariants::dtheta;
use thetamap::lattice::GramMatrix;
use thetamap::rational::int;

pub fn run_example() -> thetamap::Result<String> {
    let a = GramMatrix::from_ints(&[vec![3, 1], vec![1, 5]])?;
    let basis = tangent_basis(&a);
    let mut out = String::new();
    for (i, b) in basis.vectors.iter().enumerate() {
        out += &format!("direction {i}: {}\n", b.to_json());
        out += &dtheta(&a, b, &int(12))?.render();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("directional derivative example"));
}
