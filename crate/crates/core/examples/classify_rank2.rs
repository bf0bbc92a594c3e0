// The rank-2 trichotomy: every binary form is vanishing, degenerate on one
// of three loci, or nondegenerate.

use thetamap::lattice::GramMatrix;
use thetamap::rank2::classify;

pub fn run_example() -> thetamap::Result<String> {
    let forms: [&[&[&str]]; 7] = [
        &[&["1", "0"], &["0", "1"]],
        &[&["2", "1"], &["1", "2"]],
        &[&["1", "0"], &["0", "2"]],
        &[&["2", "1"], &["1", "3"]],
        &[&["3", "1"], &["1", "3"]],
        &[&["3", "1"], &["1", "5"]],
        &[&["5", "3"], &["3", "2"]],
    ];
    let mut out = String::new();
    for rows in forms {
        out += &classify(&GramMatrix::from_strs(rows)?)?.render();
        out.push('\n');
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("classification example"));
}
