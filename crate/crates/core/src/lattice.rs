//! Gram matrices and lattice-point enumeration.
//!
//! A [`GramMatrix`] is a validated symmetric positive definite rational
//! matrix `A`. Alongside the rational entries it keeps an integer copy
//! `M = d·A` (with `d` the common denominator), which every hot loop in the
//! crate uses: norms and inner products become `i128` integers over `d`.
//!
//! [`enumerate_vectors`] lists `{λ ∈ Z^n : λᵀAλ ≤ X}` exactly. Ranges come from a
//! floating Cholesky factor (widened by one unit per coordinate); each
//! candidate is then accepted or rejected by the exact integer norm.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, RatMatrix};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: RatMatrix,
    scaled: Vec<Vec<i64>>,
    denom: i64,
}

/// A lattice vector in `Z^n` coordinates with its exact norm `λᵀAλ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<i64>,
    pub norm: Rational,
}

/// Enumerated vector in integer form: `key = λᵀMλ = d·λᵀAλ`, `image = Mλ`.
#[derive(Clone, Debug)]
pub(crate) struct ScaledVector {
    pub coords: Vec<i64>,
    pub key: i128,
    pub image: Vec<i128>,
}

pub(crate) fn check_square(rows: &[Vec<Rational>]) -> Result<usize> {
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: i,
                len: r.len(),
            });
        }
    }
    Ok(n)
}

pub(crate) fn check_symmetric(rows: &[Vec<Rational>]) -> Result<()> {
    let n = rows.len();
    for i in 0..n {
        for j in i + 1..n {
            if rows[i][j] != rows[j][i] {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(())
}

impl GramMatrix {
    /// Validates a square symmetric positive definite rational matrix.
    pub fn new(entries: RatMatrix) -> Result<Self> {
        let n = check_square(&entries)?;
        if n == 0 {
            return Err(Error::BadParameter("empty Gram matrix".into()));
        }
        check_symmetric(&entries)?;
        for (k, minor) in matrix::leading_minors(&entries).into_iter().enumerate() {
            if !minor.is_positive() {
                return Err(Error::NotPositiveDefinite {
                    order: k + 1,
                    value: rational::render(&minor),
                });
            }
        }
        let d = rational::common_denominator(entries.iter().flatten());
        let denom = d.to_i64().ok_or(Error::EntriesTooLarge)?;
        let scaled = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| (v * &d).to_integer().to_i64().ok_or(Error::EntriesTooLarge))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GramMatrix {
            entries,
            scaled,
            denom,
        })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(matrix::from_ints(rows))
    }

    /// Parses rows of `"p/q"` strings.
    pub fn from_strs(rows: &[&[&str]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    /// Integer matrix `M` with `A = M / denominator()`.
    pub fn scaled_entries(&self) -> &[Vec<i64>] {
        &self.scaled
    }

    pub fn denominator(&self) -> i64 {
        self.denom
    }

    pub fn det(&self) -> Rational {
        matrix::det(&self.entries)
    }

    pub fn inverse(&self) -> RatMatrix {
        matrix::inverse(&self.entries).expect("positive definite matrix is invertible")
    }

    /// `c·A` for `c > 0`.
    pub fn scaled_by(&self, c: &Rational) -> Result<GramMatrix> {
        GramMatrix::new(matrix::scale(&self.entries, c))
    }

    pub fn norm(&self, v: &[i64]) -> Rational {
        self.inner(v, v)
    }

    /// `uᵀAv`.
    pub fn inner(&self, u: &[i64], v: &[i64]) -> Rational {
        Rational::new(BigInt::from(self.scaled_bilinear(u, v)), BigInt::from(self.denom))
    }

    pub(crate) fn scaled_bilinear(&self, u: &[i64], v: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, row) in self.scaled.iter().enumerate() {
            let mut t = 0i128;
            for (j, m) in row.iter().enumerate() {
                t += *m as i128 * v[j] as i128;
            }
            s += u[i] as i128 * t;
        }
        s
    }

    pub(crate) fn image(&self, v: &[i64]) -> Vec<i128> {
        self.scaled
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| *m as i128 * *x as i128).sum())
            .collect()
    }

    /// Largest integer key `k` with `k / d ≤ x`.
    pub(crate) fn key_limit(&self, x: &Rational) -> i128 {
        (x * BigInt::from(self.denom))
            .floor()
            .to_integer()
            .to_i128()
            .unwrap_or(i128::MAX)
    }

    pub(crate) fn key_to_rational(&self, key: i128) -> Rational {
        Rational::new(BigInt::from(key), BigInt::from(self.denom))
    }

    pub fn to_json(&self) -> String {
        let file = GramFile {
            n: self.dim(),
            gram: self
                .entries
                .iter()
                .map(|r| r.iter().map(rational::render).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("serializing strings cannot fail")
    }

    pub fn from_json(text: &str) -> Result<GramMatrix> {
        GramMatrix::new(read_matrix_json(text)?)
    }
}

/// On-disk form: `{"n": 2, "gram": [["1","1/2"],["1/2","1"]]}`.
#[derive(Serialize, Deserialize)]
struct GramFile {
    n: usize,
    gram: Vec<Vec<String>>,
}

/// Reads the JSON matrix format without any definiteness check.
pub(crate) fn read_matrix_json(text: &str) -> Result<RatMatrix> {
    let file: GramFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.gram.len() != file.n {
        return Err(Error::DimensionMismatch {
            expected: file.n,
            found: file.gram.len(),
        });
    }
    let rows = file
        .gram
        .iter()
        .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    check_square(&rows)?;
    Ok(rows)
}

pub(crate) fn write_matrix_json(rows: &RatMatrix) -> String {
    let file = GramFile {
        n: rows.len(),
        gram: rows
            .iter()
            .map(|r| r.iter().map(rational::render).collect())
            .collect(),
    };
    serde_json::to_string(&file).expect("serializing strings cannot fail")
}

/// Upper-triangular `Q` with positive diagonal and `QᵀQ = A` (floating).
///
/// Only used to bound enumeration ranges.
pub fn cholesky_float(a: &GramMatrix) -> Vec<Vec<f64>> {
    let n = a.dim();
    let af: Vec<Vec<f64>> = a
        .entries()
        .iter()
        .map(|r| r.iter().map(rational::to_f64).collect())
        .collect();
    let mut q = vec![vec![0.0; n]; n];
    for i in 0..n {
        let s: f64 = (0..i).map(|k| q[k][i] * q[k][i]).sum();
        q[i][i] = (af[i][i] - s).max(0.0).sqrt();
        for j in i + 1..n {
            let s: f64 = (0..i).map(|k| q[k][i] * q[k][j]).sum();
            q[i][j] = (af[i][j] - s) / q[i][i];
        }
    }
    q
}

struct Enumerator {
    n: usize,
    diag_sq: Vec<f64>,
    // ratio[i][j] = Q[i][j] / Q[i][i] for j > i
    ratio: Vec<Vec<f64>>,
    limit: f64,
    slack: f64,
}

impl Enumerator {
    fn new(a: &GramMatrix, x: f64) -> Self {
        let q = cholesky_float(a);
        let n = a.dim();
        let diag_sq = (0..n).map(|i| q[i][i] * q[i][i]).collect();
        let ratio = (0..n)
            .map(|i| (0..n).map(|j| if j > i { q[i][j] / q[i][i] } else { 0.0 }).collect())
            .collect();
        Enumerator {
            n,
            diag_sq,
            ratio,
            limit: x,
            slack: 1e-7 * (1.0 + x.abs()),
        }
    }

    fn range(&self, level: usize, coords: &[i64], used: f64) -> (i64, i64) {
        let center: f64 = -(level + 1..self.n)
            .map(|j| self.ratio[level][j] * coords[j] as f64)
            .sum::<f64>();
        let rem = (self.limit - used).max(0.0);
        let r = (rem / self.diag_sq[level]).sqrt();
        ((center - r).floor() as i64 - 1, (center + r).ceil() as i64 + 1)
    }

    fn contribution(&self, level: usize, coords: &[i64]) -> f64 {
        let t: f64 = coords[level] as f64
            + (level + 1..self.n)
                .map(|j| self.ratio[level][j] * coords[j] as f64)
                .sum::<f64>();
        self.diag_sq[level] * t * t
    }

    fn walk(&self, level: usize, coords: &mut Vec<i64>, used: f64, out: &mut Vec<Vec<i64>>) {
        let (lo, hi) = self.range(level, coords, used);
        for v in lo..=hi {
            coords[level] = v;
            let u = used + self.contribution(level, coords);
            if u > self.limit + self.slack {
                continue;
            }
            if level == 0 {
                out.push(coords.clone());
            } else {
                self.walk(level - 1, coords, u, out);
            }
        }
        coords[level] = 0;
    }
}

pub(crate) fn enumerate_scaled(a: &GramMatrix, x: &Rational) -> Vec<ScaledVector> {
    if x.is_negative() {
        return Vec::new();
    }
    let limit = a.key_limit(x);
    let n = a.dim();
    let en = Enumerator::new(a, rational::to_f64(x));
    let top = n - 1;
    let (lo, hi) = en.range(top, &vec![0; n], 0.0);
    let mut found: Vec<ScaledVector> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut coords = vec![0i64; n];
            coords[top] = v;
            let mut raw = Vec::new();
            let u = en.contribution(top, &coords);
            if u <= en.limit + en.slack {
                if top == 0 {
                    raw.push(coords.clone());
                } else {
                    en.walk(top - 1, &mut coords, u, &mut raw);
                }
            }
            raw.into_iter().filter_map(|c| {
                let image = a.image(&c);
                let key: i128 = c.iter().zip(&image).map(|(x, y)| *x as i128 * y).sum();
                (key <= limit).then_some(ScaledVector {
                    coords: c,
                    key,
                    image,
                })
            })
        })
        .collect();
    found.sort_by(|p, q| p.coords.cmp(&q.coords));
    found
}

/// All `λ ∈ Z^n` with `λᵀAλ ≤ x`, zero included, in lexicographic order of
/// coordinates. Empty when `x < 0`.
pub fn enumerate_vectors(a: &GramMatrix, x: &Rational) -> Vec<LatticeVector> {
    enumerate_scaled(a, x)
        .into_iter()
        .map(|v| LatticeVector {
            norm: a.key_to_rational(v.key),
            coords: v.coords,
        })
        .collect()
}

/// Distinct nonzero norms `≤ x` with their multiplicities, ascending.
pub fn spectrum(a: &GramMatrix, x: &Rational) -> Vec<(Rational, usize)> {
    let mut counts = std::collections::BTreeMap::<i128, usize>::new();
    for v in enumerate_scaled(a, x) {
        if v.key > 0 {
            *counts.entry(v.key).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|(k, c)| (a.key_to_rational(k), c))
        .collect()
}

/// `ᵗT·A·T` for an integer matrix `T` with `det T = ±1`.
pub fn transform(a: &GramMatrix, t: &[Vec<i64>]) -> Result<GramMatrix> {
    let n = a.dim();
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.len(),
        });
    }
    let tm = matrix::from_ints(t);
    let det = matrix::det(&tm);
    if det.abs() != Rational::one() {
        return Err(Error::NotUnimodular {
            det: rational::render(&det),
        });
    }
    let prod = matrix::mul(&matrix::mul(&matrix::transpose(&tm), a.entries()), &tm);
    GramMatrix::new(prod)
}

/// Block-diagonal `A1 ⊕ A2`.
pub fn direct_sum(a1: &GramMatrix, a2: &GramMatrix) -> GramMatrix {
    let (n1, n2) = (a1.dim(), a2.dim());
    let mut m = matrix::zeros(n1 + n2, n1 + n2);
    for i in 0..n1 {
        for j in 0..n1 {
            m[i][j] = a1.entry(i, j).clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            m[n1 + i][n1 + j] = a2.entry(i, j).clone();
        }
    }
    GramMatrix::new(m).expect("direct sum of positive definite forms is positive definite")
}

/// Minimal nonzero norm.
pub fn minimum(a: &GramMatrix) -> Rational {
    // A diagonal entry is a norm, so the minimum is at most the smallest one.
    let cap = a.entries().iter().enumerate().map(|(i, r)| r[i].clone()).min().unwrap();
    enumerate_scaled(a, &cap)
        .into_iter()
        .filter(|v| v.key > 0)
        .map(|v| v.key)
        .min()
        .map(|k| a.key_to_rational(k))
        .unwrap_or(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn validate_examples() {
        assert!(GramMatrix::from_ints(&[vec![1, 0], vec![0, 1]]).is_ok());
        let err = GramMatrix::from_ints(&[vec![1, 2], vec![2, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::NotPositiveDefinite {
                order: 2,
                value: "-3".into()
            }
        );
        let a2 = GramMatrix::from_strs(&[&["1", "1/2"], &["1/2", "1"]]).unwrap();
        assert_eq!(a2.denominator(), 2);
        assert_eq!(a2.scaled_entries(), &[vec![2, 1], vec![1, 2]]);
        let err = GramMatrix::from_ints(&[vec![1, 2], vec![3, 9]]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric { row: 0, col: 1 });
        assert!(matches!(
            GramMatrix::from_ints(&[vec![1, 0]]).unwrap_err(),
            Error::NotSquare { .. }
        ));
    }

    #[test]
    fn cholesky_examples() {
        let id = GramMatrix::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(cholesky_float(&id), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let d = GramMatrix::from_ints(&[vec![4, 0], vec![0, 9]]).unwrap();
        assert_eq!(cholesky_float(&d), vec![vec![2.0, 0.0], vec![0.0, 3.0]]);
        let a2 = GramMatrix::from_strs(&[&["1", "1/2"], &["1/2", "1"]]).unwrap();
        let q = cholesky_float(&a2);
        assert!((q[0][0] - 1.0).abs() < 1e-12);
        assert!((q[0][1] - 0.5).abs() < 1e-12);
        assert_eq!(q[1][0], 0.0);
        assert!((q[1][1] - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn enumerate_examples() {
        let id = GramMatrix::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap();
        let v = enumerate_vectors(&id, &int(1));
        let coords: Vec<_> = v.iter().map(|x| x.coords.clone()).collect();
        assert_eq!(
            coords,
            vec![vec![-1, 0], vec![0, -1], vec![0, 0], vec![0, 1], vec![1, 0]]
        );
        let a2 = GramMatrix::from_strs(&[&["1", "1/2"], &["1/2", "1"]]).unwrap();
        let v = enumerate_vectors(&a2, &int(1));
        assert_eq!(v.len(), 7);
        assert_eq!(v.iter().filter(|x| x.norm == int(1)).count(), 6);
        assert!(enumerate_vectors(&a2, &frac(-1, 2)).is_empty());
        assert_eq!(enumerate_vectors(&a2, &int(0)).len(), 1);
    }

    #[test]
    fn transform_examples() {
        let id = GramMatrix::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(transform(&id, &[vec![1, 0], vec![0, 1]]).unwrap(), id);
        let t = transform(&id, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(t, GramMatrix::from_ints(&[vec![1, 1], vec![1, 2]]).unwrap());
        let a2 = GramMatrix::from_strs(&[&["1", "1/2"], &["1/2", "1"]]).unwrap();
        let t = transform(&a2, &[vec![1, 0], vec![0, -1]]).unwrap();
        assert_eq!(t, GramMatrix::from_strs(&[&["1", "-1/2"], &["-1/2", "1"]]).unwrap());
        assert!(matches!(
            transform(&id, &[vec![2, 0], vec![0, 1]]).unwrap_err(),
            Error::NotUnimodular { .. }
        ));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let a2 = GramMatrix::from_strs(&[&["1", "1/2"], &["1/2", "1"]]).unwrap();
        let text = a2.to_json();
        assert_eq!(text, r#"{"n":2,"gram":[["1","1/2"],["1/2","1"]]}"#);
        assert_eq!(GramMatrix::from_json(&text).unwrap(), a2);
        assert!(matches!(
            GramMatrix::from_json(r#"{"n":2,"gram":[["1","2"],["2","1"]]}"#).unwrap_err(),
            Error::NotPositiveDefinite { .. }
        ));
        assert!(matches!(
            GramMatrix::from_json(r#"{"n":2,"gram":[["1","2"],["3","9"]]}"#).unwrap_err(),
            Error::NotSymmetric { .. }
        ));
        assert!(GramMatrix::from_json(r#"{"n":2,"gram":[["1","x"],["0","1"]]}"#).is_err());
        assert!(GramMatrix::from_json("not json").is_err());
    }

    #[test]
    fn minimum_norm() {
        let a = GramMatrix::from_ints(&[vec![3, 1], vec![1, 5]]).unwrap();
        assert_eq!(minimum(&a), int(3));
        let b = GramMatrix::from_ints(&[vec![5, 4], vec![4, 5]]).unwrap();
        assert_eq!(minimum(&b), int(2));
    }

    fn random_form() -> impl Strategy<Value = GramMatrix> {
        (2usize..4, proptest::collection::vec(-2i64..3, 9), proptest::collection::vec(1i64..4, 3))
            .prop_map(|(n, l, den)| {
                // A = LᵀL/den + I/4 is positive definite for any integer L.
                let lm: Vec<Vec<i64>> = (0..n).map(|i| l[i * 3..i * 3 + n].to_vec()).collect();
                let mut rows = vec![vec![rational::int(0); n]; n];
                for i in 0..n {
                    for j in 0..n {
                        let s: i64 = (0..n).map(|k| lm[k][i] * lm[k][j]).sum();
                        rows[i][j] = frac(s, den[0]);
                    }
                    rows[i][i] += frac(1, 4);
                }
                GramMatrix::new(rows).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn enumeration_matches_box_scan(a in random_form(), x in 0i64..6) {
            let x = int(x);
            let got: Vec<Vec<i64>> = enumerate_vectors(&a, &x).into_iter().map(|v| v.coords).collect();
            // Box from floating Cholesky: |λ_i| ≤ sqrt(X·(A⁻¹)_ii), plus a margin.
            let inv = a.inverse();
            let n = a.dim();
            let r: Vec<i64> = (0..n)
                .map(|i| (rational::to_f64(&(&x * &inv[i][i])).sqrt()).ceil() as i64 + 1)
                .collect();
            let mut want = Vec::new();
            let mut c = vec![0i64; n];
            fn rec(i: usize, r: &[i64], c: &mut Vec<i64>, a: &GramMatrix, x: &Rational, out: &mut Vec<Vec<i64>>) {
                if i == r.len() {
                    if a.norm(c) <= *x { out.push(c.clone()); }
                    return;
                }
                for v in -r[i]..=r[i] { c[i] = v; rec(i + 1, r, c, a, x, out); }
            }
            rec(0, &r, &mut c, &a, &x, &mut want);
            want.sort();
            prop_assert_eq!(&got, &want);
            prop_assert_eq!(got.len() % 2, 1);
            for v in &got {
                let neg: Vec<i64> = v.iter().map(|t| -t).collect();
                prop_assert!(got.binary_search(&neg).is_ok());
            }
        }

        #[test]
        fn cached_norm_is_exact(a in random_form()) {
            for v in enumerate_vectors(&a, &int(4)) {
                prop_assert_eq!(a.norm(&v.coords), v.norm);
            }
        }
    }
}
