// `Θ₁,₁` vanishes identically on lattices with enough symmetry and is
// nonzero on a generic form such as `Z ⊕ 2Z`.

use thetamap::constructions::construct;
use thetamap::invariants::theta11_direct;
use thetamap::lattice::GramMatrix;
use thetamap::rational::int;

pub fn run_example() -> thetamap::Result<String> {
    let mut out = String::new();
    for name in ["A1^2", "A2", "Lp5", "D4"] {
        let l = construct(name)?;
        let t = theta11_direct(&l.gram, &int(8)).series;
        out += &format!("{name}: theta11 zero up to q^8: {}\n", t.is_zero());
    }
    let z2z = GramMatrix::from_ints(&[vec![1, 0], vec![0, 2]])?;
    let t = theta11_direct(&z2z, &int(6)).series;
    out += &format!("Z+2Z:\n{}", t.render());
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("vanishing example"));
}
