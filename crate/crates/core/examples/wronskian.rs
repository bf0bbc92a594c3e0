// The Wronskian of the derivatives `∂_BΘ`, normalized so that it does not
// depend on the chosen tangent basis, and the closed rank-2 pair sum.

use thetamap::invariants::wronskian;
use thetamap::lattice::GramMatrix;
use thetamap::rank2::det_dtheta_rank2;
use thetamap::rational::{int, render};

pub fn run_example() -> thetamap::Result<String> {
    let a = GramMatrix::from_ints(&[vec![3, 1], vec![1, 5]])?;
    let w = wronskian(&a, &int(20));
    let mut out = format!("gram_det = {}\nnormalized square:\n", render(&w.gram_det));
    out += &w.normalized_square.render();
    let pair = det_dtheta_rank2(&a, &int(12))?;
    out += &format!("pair sum (times sqrt {}):\n", render(&pair.det_a));
    out += &pair.rational_part.render();
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("wronskian example"));
}
