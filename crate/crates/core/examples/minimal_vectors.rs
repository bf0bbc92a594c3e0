// The `q²` coefficient of `Θ₁,₁` after scaling to minimal norm 1 depends
// only on the minimal vectors: one pair gives a nonzero value, two
// orthogonal pairs or three pairs at 60° give zero.

use thetamap::lattice::GramMatrix;
use thetamap::rank2::minimal_vector_test;
use thetamap::rational::render;

pub fn run_example() -> thetamap::Result<String> {
    let mut out = String::new();
    for rows in [
        [["1", "0"], ["0", "2"]],
        [["1", "0"], ["0", "1"]],
        [["1", "1/2"], ["1/2", "1"]],
        [["3", "1"], ["1", "3"]],
    ] {
        let a = GramMatrix::from_strs(&[&rows[0], &rows[1]])?;
        let d = minimal_vector_test(&a)?;
        out += &format!(
            "{}: pairs={} c2={} theta11[q^2]={} consistent={}\n",
            a.to_json(),
            d.minimal_pairs,
            render(&d.c2),
            render(&d.theta11_c2),
            d.consistent()
        );
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("minimal vector example"));
}
