//! Theta series, directional derivatives, `Θ₁,₁`, and the Wronskian of the
//! harmonic theta series.
//!
//! All sums run over the output of [`enumerate_scaled`] in exact integer
//! arithmetic (norms are kept as `d·λᵀAλ`), and are converted to rational
//! series once per exponent. Inner sums exploit `λ ↦ −λ` symmetry; the
//! results are always the full sums.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmonic::{self, SymMatrix, TangentBasis};
use crate::lattice::{self, enumerate_scaled, GramMatrix, ScaledVector};
use crate::matrix;
use crate::qseries::{det_series, QSeries};
use crate::rational::{self, Rational};

/// `theta11_direct = HARMONIC_TO_DIRECT · theta11_harmonic` on every input.
///
/// Projecting `λλᵀ` onto `T_A⁰` under the Killing form gives
/// `Σ_{jk} G⁻¹_{jk} (λᵀB_jλ)(μᵀB_kμ) = (λᵀAμ)²/2 − N(λ)N(μ)/(2n)`, which
/// is the direct summand term for term; the calibration test on `diag(1,2)`
/// confirms the value.
pub const HARMONIC_TO_DIRECT: i64 = 1;

/// Scalar in front of `F₁(f,g) = k·f·Dg − l·Df·g` in the direct-sum formula,
/// calibrated against [`theta11_direct`] on `Z ⊕ 2Z`.
pub const RANKIN_COHEN_SCALE: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Harmonic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta11Report {
    pub series: QSeries,
    pub route: Route,
    pub bound: Rational,
}

#[derive(Clone, Debug)]
pub struct WronskianResult {
    /// Wronskian in the chosen rational tangent basis.
    pub raw_det: QSeries,
    /// `det` of the Killing Gram matrix of that basis.
    pub gram_det: Rational,
    /// `raw_det² / gram_det`; independent of the basis.
    pub normalized_square: QSeries,
}

fn check_bound(x: &Rational) {
    assert!(!rational::is_negative(x), "negative bound {x}");
}

/// Canonical half of the nonzero vectors: first nonzero coordinate positive.
fn half(vectors: Vec<ScaledVector>) -> Vec<ScaledVector> {
    vectors
        .into_iter()
        .filter(|v| v.coords.iter().find(|c| **c != 0).is_some_and(|c| *c > 0))
        .collect()
}

fn to_series(
    a: &GramMatrix,
    sums: BTreeMap<i128, i128>,
    coeff_den: &BigInt,
    bound: &Rational,
) -> QSeries {
    QSeries::from_terms(
        sums.into_iter()
            .map(|(k, s)| (a.key_to_rational(k), Rational::new(BigInt::from(s), coeff_den.clone()))),
        bound.clone(),
    )
}

fn merge(mut x: BTreeMap<i128, i128>, y: BTreeMap<i128, i128>) -> BTreeMap<i128, i128> {
    for (k, v) in y {
        *x.entry(k).or_default() += v;
    }
    x
}

/// `Θ_A = Σ_{λ ∈ Z^n} q^{λᵀAλ}` up to `x`.
pub fn theta_series(a: &GramMatrix, x: &Rational) -> QSeries {
    check_bound(x);
    let mut counts = BTreeMap::<i128, i128>::new();
    for v in enumerate_scaled(a, x) {
        *counts.entry(v.key).or_default() += 1;
    }
    to_series(a, counts, &BigInt::one(), x)
}

/// Per-exponent sums `Σ λᵀP_jλ` for each integer matrix `P_j`, over the
/// vectors up to `x`; returned as series divided by `den_j`.
fn weighted_series(a: &GramMatrix, dirs: &[(Vec<Vec<i64>>, i64)], x: &Rational) -> Vec<QSeries> {
    let hv = half(enumerate_scaled(a, x));
    let per_dir: Vec<BTreeMap<i128, i128>> = dirs
        .par_iter()
        .map(|(p, _)| {
            let mut sums = BTreeMap::<i128, i128>::new();
            for v in &hv {
                let mut val = 0i128;
                for (i, row) in p.iter().enumerate() {
                    let t: i128 = row.iter().zip(&v.coords).map(|(m, c)| *m as i128 * *c as i128).sum();
                    val += v.coords[i] as i128 * t;
                }
                if val != 0 {
                    // λ and −λ contribute equally.
                    *sums.entry(v.key).or_default() += 2 * val;
                }
            }
            sums
        })
        .collect();
    per_dir
        .into_iter()
        .zip(dirs)
        .map(|(s, (_, den))| to_series(a, s, &BigInt::from(*den), x))
        .collect()
}

/// `∂_BΘ_A = Σ_λ (λᵀBλ) q^{λᵀAλ}` up to `x`.
pub fn dtheta(a: &GramMatrix, b: &SymMatrix, x: &Rational) -> Result<QSeries> {
    check_bound(x);
    if b.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let form = b.integer_form().ok_or(Error::EntriesTooLarge)?;
    Ok(weighted_series(a, &[form], x).pop().unwrap())
}

fn dtheta_basis(basis: &TangentBasis, x: &Rational) -> Result<Vec<QSeries>> {
    let forms = basis
        .vectors
        .iter()
        .map(|b| b.integer_form().ok_or(Error::EntriesTooLarge))
        .collect::<Result<Vec<_>>>()?;
    Ok(weighted_series(&basis.base_form, &forms, x))
}

/// `Θ₁,₁` from its defining pair sum
/// `a_m = Σ_{N(γ)+N(δ)=m} ((γᵀAδ)²/2 − N(γ)N(δ)/(2n))`.
pub fn theta11_direct(a: &GramMatrix, x: &Rational) -> Theta11Report {
    check_bound(x);
    let n = a.dim() as i128;
    let limit = a.key_limit(x);
    let mut hv = half(enumerate_scaled(a, x));
    hv.sort_by_key(|v| v.key);
    let min_key = hv.first().map_or(0, |v| v.key);
    hv.retain(|v| v.key + min_key <= limit);

    // Over H×H with i ≤ j; each class {±γ}×{±δ} has 4 members, and i < j
    // also stands for the swapped pair.
    let sums = (0..hv.len())
        .into_par_iter()
        .fold(BTreeMap::<i128, i128>::new, |mut acc, i| {
            let g = &hv[i];
            for d in &hv[i..] {
                if g.key + d.key > limit {
                    break;
                }
                let ip: i128 = g.coords.iter().zip(&d.image).map(|(c, m)| *c as i128 * m).sum();
                let term = n * ip * ip - g.key * d.key;
                if term != 0 {
                    let w = if std::ptr::eq(g, d) { 4 } else { 8 };
                    *acc.entry(g.key + d.key).or_default() += w * term;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, merge);
    let d = BigInt::from(a.denominator());
    let den = BigInt::from(2 * n) * &d * &d;
    Theta11Report {
        series: to_series(a, sums, &den, x),
        route: Route::Direct,
        bound: x.clone(),
    }
}

/// `Θ₁,₁ = Σ_{j,k} (G⁻¹)_{jk} ∂_{B_j}Θ_A · ∂_{B_k}Θ_A` for the tangent basis
/// `{B_j}` with Killing Gram `G`.
pub fn theta11_harmonic(a: &GramMatrix, x: &Rational) -> Theta11Report {
    theta11_harmonic_with(&harmonic::tangent_basis(a), x)
        .expect("tangent basis entries fit in 64 bits")
}

/// [`theta11_harmonic`] in a caller-supplied basis.
pub fn theta11_harmonic_with(basis: &TangentBasis, x: &Rational) -> Result<Theta11Report> {
    check_bound(x);
    let f = dtheta_basis(basis, x)?;
    let ginv = matrix::inverse(&basis.killing_gram).expect("Killing Gram is positive definite");
    let mut total = QSeries::zero(x.clone());
    for (k, fk) in f.iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let mut w = QSeries::zero(x.clone());
        for (j, fj) in f.iter().enumerate() {
            if !ginv[j][k].is_zero() && !fj.is_zero() {
                w = w.add(&fj.scale(&ginv[j][k]));
            }
        }
        total = total.add(&fk.mul(&w));
    }
    Ok(Theta11Report {
        series: total,
        route: Route::Harmonic,
        bound: x.clone(),
    })
}

/// Wronskian of the harmonic theta series in the default tangent basis.
///
/// Row `k` holds `(q·d/dq)^k ∂_{B_j}Θ_A`, `k = 0..m−1`. The `m×m` series
/// determinant costs about `m·2^m` products, so this is practical up to
/// rank 5 (`m = 14`); `E₈` (`m = 35`) is out of reach.
///
/// `x` must be large enough for the determinant to have a term at or below
/// it, otherwise the result is the (truncated) zero series.
pub fn wronskian(a: &GramMatrix, x: &Rational) -> WronskianResult {
    wronskian_with(&harmonic::tangent_basis(a), x).expect("tangent basis entries fit in 64 bits")
}

pub fn wronskian_with(basis: &TangentBasis, x: &Rational) -> Result<WronskianResult> {
    check_bound(x);
    let f = dtheta_basis(basis, x)?;
    let m = f.len();
    let mut rows = Vec::with_capacity(m);
    let mut cur = f;
    for _ in 0..m {
        let next = cur.iter().map(QSeries::qderiv).collect();
        rows.push(cur);
        cur = next;
    }
    let raw_det = det_series(&rows)?;
    let gram_det = matrix::det(&basis.killing_gram);
    let normalized_square = raw_det.square().scale(&(Rational::one() / &gram_det));
    Ok(WronskianResult {
        raw_det,
        gram_det,
        normalized_square,
    })
}

/// First Rankin–Cohen bracket `F₁(f,g) = k·f·Dg − l·Df·g` for weights `k`, `l`.
pub fn rankin_cohen_f1(f: &QSeries, k: &Rational, g: &QSeries, l: &Rational) -> QSeries {
    f.mul(&g.qderiv())
        .scale(k)
        .sub(&f.qderiv().mul(g).scale(l))
        .scale(&rational::int(RANKIN_COHEN_SCALE))
}

/// `Θ₁,₁` of `Λ₁ ⊕ Λ₂` from the invariants of the summands.
///
/// The bracket formula
/// `n₁/N·Θ̃₁Θ₂² + n₂/N·Θ̃₂Θ₁² + 2/(n₁n₂N²)·F₁(Θ₁,Θ₂)²` (`N = n₁+n₂`, weights
/// `n_i/2`) is stated for `Θ̃ = Θ₁,₁/n`; inputs are converted to that scale
/// and the result converted back.
pub fn theta11_direct_sum(
    theta1: &QSeries,
    theta11_1: &QSeries,
    n1: usize,
    theta2: &QSeries,
    theta11_2: &QSeries,
    n2: usize,
) -> QSeries {
    assert!(n1 > 0 && n2 > 0, "ranks must be positive");
    let (r1, r2) = (rational::int(n1 as i64), rational::int(n2 as i64));
    let total = &r1 + &r2;
    let half = rational::frac(1, 2);
    let t1 = theta11_1.scale(&(Rational::one() / &r1));
    let t2 = theta11_2.scale(&(Rational::one() / &r2));
    let f1 = rankin_cohen_f1(theta1, &(&r1 * &half), theta2, &(&r2 * &half));
    let c_bracket = rational::int(2) / (&r1 * &r2 * &total * &total);
    let reduced = t1
        .mul(&theta2.square())
        .scale(&(&r1 / &total))
        .add(&t2.mul(&theta1.square()).scale(&(&r2 / &total)))
        .add(&f1.square().scale(&c_bracket));
    reduced.scale(&total)
}

pub use lattice::direct_sum;

/// Truncated comparison of `Θ` and `Θ₁,₁`; `None` means equal up to the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub theta_difference: Option<Rational>,
    pub theta11_difference: Option<Rational>,
}

impl Comparison {
    pub fn theta_equal(&self) -> bool {
        self.theta_difference.is_none()
    }

    pub fn theta11_equal(&self) -> bool {
        self.theta11_difference.is_none()
    }

    /// `theta: EQUAL|DIFFER@e` and `theta11: EQUAL|DIFFER@e` lines.
    pub fn render(&self) -> String {
        let line = |name: &str, d: &Option<Rational>| match d {
            None => format!("{name}: EQUAL\n"),
            Some(e) => format!("{name}: DIFFER@{}\n", rational::render(e)),
        };
        line("theta", &self.theta_difference) + &line("theta11", &self.theta11_difference)
    }
}

pub fn compare_invariants(a1: &GramMatrix, a2: &GramMatrix, x: &Rational) -> Result<Comparison> {
    if a1.dim() != a2.dim() {
        return Err(Error::RankMismatch(a1.dim(), a2.dim()));
    }
    let theta_difference = theta_series(a1, x).first_difference(&theta_series(a2, x));
    let theta11_difference =
        theta11_direct(a1, x).series.first_difference(&theta11_direct(a2, x).series);
    Ok(Comparison {
        theta_difference,
        theta11_difference,
    })
}

/// Weight `n/2` of `Θ_A` for integral `A` (metadata only).
pub fn theta_weight(n: usize) -> Rational {
    rational::frac(n as i64, 2)
}

/// Weight `(n+4)/2` of `∂_BΘ_A` for harmonic `B` (metadata only).
pub fn dtheta_weight(n: usize) -> Rational {
    rational::frac(n as i64 + 4, 2)
}

/// Weight `m(w+m−1) = (n+2)²n(n−1)/4` of the Wronskian (metadata only).
pub fn wronskian_weight(n: usize) -> Rational {
    let n = n as i64;
    rational::frac((n + 2) * (n + 2) * n * (n - 1), 4)
}

/// Weight `(n+2)²n(n−1)/2` of the squared Wronskian (metadata only).
pub fn det2_weight(n: usize) -> Rational {
    let n = n as i64;
    rational::frac((n + 2) * (n + 2) * n * (n - 1), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn series(terms: &[(i64, i64)], bound: i64) -> QSeries {
        QSeries::from_terms(terms.iter().map(|&(e, c)| (int(e), int(c))), int(bound))
    }

    fn gaussian() -> GramMatrix {
        GramMatrix::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap()
    }

    fn eisenstein() -> GramMatrix {
        GramMatrix::from_strs(&[&["1", "1/2"], &["1/2", "1"]]).unwrap()
    }

    #[test]
    fn theta_gaussian() {
        let t = theta_series(&gaussian(), &int(17));
        let want = series(
            &[(0, 1), (1, 4), (2, 4), (4, 4), (5, 8), (8, 4), (9, 4), (10, 8), (13, 8), (16, 4), (17, 8)],
            17,
        );
        assert_eq!(t, want);
    }

    #[test]
    fn theta_eisenstein() {
        let t = theta_series(&eisenstein(), &int(19));
        let want = series(
            &[(0, 1), (1, 6), (3, 6), (4, 6), (7, 12), (9, 6), (12, 6), (13, 12), (16, 6), (19, 12)],
            19,
        );
        assert_eq!(t, want);
    }

    #[test]
    fn dtheta_examples() {
        let a = GramMatrix::from_ints(&[vec![3, 1], vec![1, 5]]).unwrap();
        let whole = SymMatrix::new(a.entries().clone()).unwrap();
        let x = int(30);
        assert_eq!(dtheta(&a, &whole, &x).unwrap(), theta_series(&a, &x).qderiv());

        let id = gaussian();
        let xy = SymMatrix::from_ints(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(dtheta(&id, &xy, &int(25)).unwrap().is_zero());
        let diff = SymMatrix::from_ints(&[vec![1, 0], vec![0, -1]]).unwrap();
        assert!(dtheta(&id, &diff, &int(25)).unwrap().is_zero());

        let small = SymMatrix::from_ints(&[vec![1]]).unwrap();
        assert!(dtheta(&id, &small, &int(2)).is_err());
    }

    #[test]
    fn theta11_diag12_coefficient() {
        // Brute force over the four pairs (±e1, ±e1): 4·(1/2 − 1/4) = 1.
        let a = GramMatrix::from_ints(&[vec![1, 0], vec![0, 2]]).unwrap();
        let t = theta11_direct(&a, &int(2)).series;
        assert_eq!(t.coeff(&int(2)), int(1));
        assert_eq!(t.coeff(&int(1)), int(0));
    }

    #[test]
    fn theta11_vanishes_on_gaussian_and_eisenstein() {
        for a in [gaussian(), eisenstein()] {
            assert!(theta11_direct(&a, &int(15)).series.is_zero());
            assert!(theta11_harmonic(&a, &int(15)).series.is_zero());
        }
    }

    #[test]
    fn theta11_rank_one_is_zero() {
        let a = GramMatrix::from_ints(&[vec![3]]).unwrap();
        assert!(theta11_direct(&a, &int(40)).series.is_zero());
        assert!(theta11_harmonic(&a, &int(40)).series.is_zero());
    }

    #[test]
    fn wronskian_gaussian_vanishes() {
        let w = wronskian(&gaussian(), &int(12));
        assert!(w.raw_det.is_zero());
        assert!(w.normalized_square.is_zero());
    }

    #[test]
    fn wronskian_reflection_invariant_vanishes() {
        let w = wronskian(&GramMatrix::from_ints(&[vec![1, 0], vec![0, 3]]).unwrap(), &int(20));
        assert!(w.raw_det.is_zero());
    }

    #[test]
    fn wronskian_nondegenerate_rank2() {
        let a = GramMatrix::from_ints(&[vec![3, 1], vec![1, 5]]).unwrap();
        let w = wronskian(&a, &int(20));
        assert_eq!(w.raw_det.leading().unwrap().0, &int(8));
        assert_eq!(w.normalized_square.truncate(&int(15)), QSeries::zero(int(15)));
        // det(A)·R²/4 with R's leading coefficient ±8 at q^8 (pair-sum oracle).
        assert_eq!(w.normalized_square.coeff(&int(16)), int(14 * 64 / 4));
    }

    #[test]
    fn direct_sum_of_copies_of_z() {
        let z = GramMatrix::from_ints(&[vec![1]]).unwrap();
        let x = int(12);
        let th = theta_series(&z, &x);
        let t11 = theta11_direct(&z, &x).series;
        assert!(theta11_direct_sum(&th, &t11, 1, &th, &t11, 1).is_zero());
    }

    #[test]
    fn compare_examples() {
        let c = compare_invariants(&gaussian(), &GramMatrix::from_ints(&[vec![1, 0], vec![0, 2]]).unwrap(), &int(6))
            .unwrap();
        assert_eq!(c.theta_difference, Some(int(1)));
        let c = compare_invariants(&gaussian(), &eisenstein(), &int(6)).unwrap();
        assert_eq!(c.theta_difference, Some(int(1)));
        assert!(c.render().starts_with("theta: DIFFER@1\n"));
        let z = GramMatrix::from_ints(&[vec![1]]).unwrap();
        assert_eq!(compare_invariants(&z, &gaussian(), &int(3)).unwrap_err(), Error::RankMismatch(1, 2));
    }

    #[test]
    fn weights() {
        assert_eq!(det2_weight(2), int(16));
        assert_eq!(wronskian_weight(2), int(8));
        assert_eq!(theta_weight(3), frac(3, 2));
        assert_eq!(dtheta_weight(2), int(3));
        // m(w + m − 1) with m = (n²+n−2)/2, w = n/2 + 2.
        for n in 1..10usize {
            let m = rational::int(harmonic::harmonic_dim(n) as i64);
            let w = frac(n as i64, 2) + int(2);
            assert_eq!(wronskian_weight(n), &m * (w + &m - int(1)));
        }
    }
}
