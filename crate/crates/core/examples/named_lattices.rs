// Named lattices and their Gram JSON.

use thetamap::constructions::construct;

pub fn run_example() -> thetamap::Result<String> {
    let mut out = String::new();
    for name in ["A1^2", "A2", "A3", "D4", "Lp5", "E8", "A2^2"] {
        let l = construct(name)?;
        out += &format!("{} (rank {}): {}\n", l.name, l.dim(), l.gram.to_json());
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("constructions example"));
}
