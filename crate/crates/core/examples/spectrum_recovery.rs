// Reads off the norms of short vectors and reconstructs the reduced binary
// form from them.

use thetamap::lattice::{spectrum, GramMatrix};
use thetamap::rank2::gram_from_spectrum;
use thetamap::rational::{int, render};

pub fn run_example() -> thetamap::Result<String> {
    let a = GramMatrix::from_strs(&[&["2", "1/2"], &["1/2", "3"]])?;
    let sp = spectrum(&a, &int(5));
    let mut out = String::new();
    for (n, m) in &sp {
        out += &format!("{}:{m}\n", render(n));
    }
    out += &format!("recovered: {}\n", gram_from_spectrum(&sp)?.to_json());
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("spectrum example"));
}
