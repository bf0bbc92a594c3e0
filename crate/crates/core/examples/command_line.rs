// Drives the command-line front end in-process.

use thetamap::cli::run;

pub fn run_example() -> thetamap::Result<String> {
    let mut out = String::new();
    for argv in [
        vec!["thetamap", "construct", "A2"],
        vec!["thetamap", "theta11", "A1^2", "--route", "both", "--bound", "10"],
        vec!["thetamap", "classify2", "A1^2"],
        vec!["thetamap", "spectrum", "D4", "--bound", "4"],
    ] {
        let o = run(&argv);
        out += &format!("$ {}\n{}[exit {}]\n", argv[1..].join(" "), o.stdout, o.code);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("command line example"));
}
