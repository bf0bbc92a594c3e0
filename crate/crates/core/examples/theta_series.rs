// Theta series of the three classical forms: `Z[i]`, the Eisenstein
// integers and `E₈`.

use thetamap::constructions::{construct, e8};
use thetamap::invariants::theta_series;
use thetamap::rational::int;

pub fn run_example() -> thetamap::Result<String> {
    let mut out = String::new();
    for (name, bound) in [("A1^2", 17), ("A2", 19)] {
        let l = construct(name)?;
        out += &format!("{name}:\n{}", theta_series(&l.gram, &int(bound)).render());
    }
    out += &format!("E8:\n{}", theta_series(&e8().gram, &int(10)).render());
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("theta series example"));
}
