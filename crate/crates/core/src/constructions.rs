//! Named lattices: the Gaussian and Eisenstein forms, root lattices, `E₈`,
//! the cyclotomic family `Λ_p`, and direct powers.

use crate::error::{Error, Result};
use crate::lattice::{self, GramMatrix};
use crate::matrix;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedLattice {
    pub name: String,
    pub gram: GramMatrix,
}

impl NamedLattice {
    fn new(name: impl Into<String>, gram: GramMatrix) -> Self {
        NamedLattice {
            name: name.into(),
            gram,
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }
}

/// `Z[i]`: the identity form of rank 2 (`A1^2`).
pub fn gaussian() -> NamedLattice {
    NamedLattice::new("A1^2", GramMatrix::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap())
}

/// `Z[(1+√−3)/2]`: `½[[2,1],[1,2]]` (`A2`).
pub fn eisenstein() -> NamedLattice {
    NamedLattice::new(
        "A2",
        GramMatrix::from_strs(&[&["1", "1/2"], &["1/2", "1"]]).unwrap(),
    )
}

fn cartan(n: usize, edges: &[(usize, usize)]) -> GramMatrix {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        m[i][j] = -1;
        m[j][i] = -1;
    }
    GramMatrix::from_ints(&m).expect("Cartan matrix of a root system is positive definite")
}

/// Root lattice `A_n`: 2 on the diagonal, −1 next to it.
pub fn root_a(n: usize) -> Result<NamedLattice> {
    if n == 0 {
        return Err(Error::BadParameter("A_n needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(NamedLattice::new(format!("A{n}"), cartan(n, &edges)))
}

/// Root lattice `D_n = {x ∈ Z^n : Σx even}` in the basis
/// `e₁−e₂, …, e_{n−1}−e_n, e_{n−1}+e_n`.
pub fn root_d(n: usize) -> Result<NamedLattice> {
    if n < 2 {
        return Err(Error::BadParameter("D_n needs n >= 2".into()));
    }
    let mut basis: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    let mut last = vec![0; n];
    last[n - 2] = 1;
    last[n - 1] = 1;
    basis.push(last);
    let gram: Vec<Vec<i64>> = basis
        .iter()
        .map(|u| basis.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
        .collect();
    Ok(NamedLattice::new(format!("D{n}"), GramMatrix::from_ints(&gram)?))
}

/// `E₈` from its Cartan matrix; minimal norm 2.
pub fn e8() -> NamedLattice {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    NamedLattice::new("E8", cartan(8, &edges))
}

fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `Λ_p`: the `(p−1)×(p−1)` form with `(p−1)/2` on the diagonal and `−1/2`
/// elsewhere (`Z[ζ_p]` under the Minkowski embedding).
pub fn construct_ap(p: u64) -> Result<NamedLattice> {
    if !is_odd_prime(p) {
        return Err(Error::BadParameter(format!("{p} is not an odd prime")));
    }
    let n = (p - 1) as usize;
    let diag = rational::frac(p as i64 - 1, 2);
    let off = rational::frac(-1, 2);
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { diag.clone() } else { off.clone() }).collect())
        .collect();
    Ok(NamedLattice::new(format!("Lp{p}"), GramMatrix::new(rows)?))
}

/// `L^{⊕k}`.
pub fn power(l: &NamedLattice, k: usize) -> Result<NamedLattice> {
    if k == 0 {
        return Err(Error::BadParameter("power needs k >= 1".into()));
    }
    let mut g = l.gram.clone();
    for _ in 1..k {
        g = lattice::direct_sum(&g, &l.gram);
    }
    let name = if k == 1 { l.name.clone() } else { format!("{}^{k}", l.name) };
    Ok(NamedLattice::new(name, g))
}

/// `c·L` for rational `c > 0`.
pub fn scaled(l: &NamedLattice, c: &Rational) -> Result<NamedLattice> {
    Ok(NamedLattice::new(
        format!("{}*{}", rational::render(c), l.name),
        GramMatrix::new(matrix::scale(l.gram.entries(), c))?,
    ))
}

fn parse_index(s: &str, name: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::UnknownName(name.to_string()))
}

/// Resolves a name: `A1^2`, `A2`, `E8`, `A<n>`, `D<n>`, `Lp<p>`, `<name>^<k>`.
///
/// `A1^2` and `A2` are the Gaussian and Eisenstein forms with minimal norm 1;
/// every other `A<n>`, `D<n>` and `E8` uses roots of norm 2.
pub fn construct(name: &str) -> Result<NamedLattice> {
    let name = name.trim();
    if name == "A1^2" {
        return Ok(gaussian());
    }
    if let Some((base, k)) = name.rsplit_once('^') {
        let k = parse_index(k, name)?;
        return power(&construct(base)?, k);
    }
    if name == "A2" {
        return Ok(eisenstein());
    }
    if name == "E8" {
        return Ok(e8());
    }
    if let Some(p) = name.strip_prefix("Lp") {
        return construct_ap(parse_index(p, name)? as u64);
    }
    if let Some(n) = name.strip_prefix('A') {
        return root_a(parse_index(n, name)?);
    }
    if let Some(n) = name.strip_prefix('D') {
        return root_d(parse_index(n, name)?);
    }
    Err(Error::UnknownName(name.to_string()))
}
