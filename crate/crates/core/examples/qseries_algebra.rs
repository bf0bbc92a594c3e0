// Exact truncated q-series: products, the derivation `q·d/dq`, and a
// determinant of series.

use thetamap::qseries::{det_series, QSeries};
use thetamap::rational::{frac, int};

pub fn run_example() -> thetamap::Result<String> {
    let x = int(4);
    let f = QSeries::from_terms([(int(0), int(1)), (frac(1, 2), int(2)), (int(2), frac(-1, 3))], x.clone());
    let g = QSeries::from_terms([(int(0), int(1)), (int(1), int(1))], x.clone());
    let w = det_series(&[vec![f.clone(), g.clone()], vec![f.qderiv(), g.qderiv()]])?;
    Ok(format!(
        "f*g:\n{}D f:\n{}wronskian(f,g):\n{}",
        f.mul(&g).render(),
        f.qderiv().render(),
        w.render()
    ))
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example().expect("qseries example"));
}
