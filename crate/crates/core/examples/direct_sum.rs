// `Θ₁,₁` of an orthogonal sum from the invariants of its summands, checked
// against the direct computation on the block form.

use thetamap::invariants::{direct_sum, theta11_direct, theta11_direct_sum, theta_series};
use thetamap::lattice::GramMatrix;
use thetamap::rational::int;

pub fn run_example() -> thetamap::Result<String> {
    let x = int(12);
    let z = GramMatrix::from_ints(&[vec![1]])?;
    let z2 = GramMatrix::from_ints(&[vec![2]])?;
    let from_parts = theta11_direct_sum(
        &theta_series(&z, &x),
        &theta11_direct(&z, &x).series,
        1,
        &theta_series(&z2, &x),
        &theta11_direct(&z2, &x).series,
        1,
    );
    let block = theta11_direct(&direct_sum(&z, &z2), &x).series;
    Ok(format!(
        "formula:\n{}direct:\n{}equal: {}\n",
        from_parts.render(),
        block.render(),
        from_parts == block
    ))
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("direct sum example"));
}
