//! Small dense exact-rational matrix helpers.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type RatMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn from_ints(rows: &[Vec<i64>]) -> RatMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect()
}

pub fn transpose(a: &RatMatrix) -> RatMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Rational::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + &row[k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn scale(a: &RatMatrix, c: &Rational) -> RatMatrix {
    a.iter()
        .map(|row| row.iter().map(|v| v * c).collect())
        .collect()
}

pub fn sub(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn trace(a: &RatMatrix) -> Rational {
    (0..a.len()).fold(Rational::zero(), |acc, i| acc + &a[i][i])
}

/// `tr(a·b)` without forming the product.
pub fn trace_of_product(a: &RatMatrix, b: &RatMatrix) -> Rational {
    let n = a.len();
    let mut t = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            if !a[i][k].is_zero() && !b[k][i].is_zero() {
                t += &a[i][k] * &b[k][i];
            }
        }
    }
    t
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det(a: &RatMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        let pivot = m[col][col].clone();
        d *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    d
}

/// Leading principal minors `det(a[..k][..k])` for `k = 1..=n`, computed in
/// one elimination pass without pivoting. Stops early (returning fewer
/// entries) at the first zero minor, whose value is included.
pub fn leading_minors(a: &RatMatrix) -> Vec<Rational> {
    let n = a.len();
    let mut m = a.clone();
    let mut out = Vec::with_capacity(n);
    let mut d = Rational::one();
    for col in 0..n {
        let pivot = m[col][col].clone();
        d *= &pivot;
        out.push(d.clone());
        if pivot.is_zero() {
            break;
        }
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    out
}

/// Inverse by Gauss–Jordan elimination; `None` if singular.
pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        inv.swap(p, col);
        let pivot = m[col][col].clone();
        for c in 0..n {
            m[col][c] /= &pivot;
            inv[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
                let w = &f * &inv[col][c];
                inv[r][c] -= w;
            }
        }
    }
    Some(inv)
}

/// Rank by row reduction.
pub fn rank(rows: &RatMatrix) -> usize {
    let mut m = rows.clone();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let pivot = m[r][col].clone();
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &pivot;
            for c in col..cols {
                let v = &f * &m[r][c];
                m[i][c] -= v;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn det_and_inverse() {
        let a = from_ints(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(det(&a), int(18));
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(3));
        assert!(inverse(&from_ints(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn minors() {
        let a = vec![vec![int(1), frac(1, 2)], vec![frac(1, 2), int(1)]];
        assert_eq!(leading_minors(&a), vec![int(1), frac(3, 4)]);
        let b = from_ints(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(leading_minors(&b), vec![int(1), int(-3)]);
    }

    #[test]
    fn rank_counts() {
        let a = from_ints(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]);
        assert_eq!(rank(&a), 2);
    }
}
