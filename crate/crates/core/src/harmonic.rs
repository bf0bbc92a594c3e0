//! Tangent directions at a form `A` and the Killing pairing.
//!
//! Everything stays in `Z^n` coordinates: a direction `B` is harmonic with
//! respect to `A` iff `tr(A⁻¹B) = 0`, and the pairing is
//! `⟨H₁,H₂⟩ = 2·tr(A⁻¹H₁A⁻¹H₂)`. Bases are rational and not orthonormalized;
//! consumers correct with the Killing Gram matrix instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, GramMatrix};
use crate::matrix::{self, RatMatrix};
use crate::rational::{self, Rational};

/// Symmetric rational matrix; a tangent direction at some form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    entries: RatMatrix,
}

impl SymMatrix {
    pub fn new(entries: RatMatrix) -> Result<Self> {
        lattice::check_square(&entries)?;
        lattice::check_symmetric(&entries)?;
        Ok(SymMatrix { entries })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(matrix::from_ints(rows))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(lattice::read_matrix_json(text)?)
    }

    pub fn to_json(&self) -> String {
        lattice::write_matrix_json(&self.entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    pub fn scale(&self, c: &Rational) -> SymMatrix {
        SymMatrix {
            entries: matrix::scale(&self.entries, c),
        }
    }

    /// `(P, e)` with integer `P = e·B`; `None` if entries overflow `i64`.
    pub(crate) fn integer_form(&self) -> Option<(Vec<Vec<i64>>, i64)> {
        let e = rational::common_denominator(self.entries.iter().flatten());
        let p = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| (v * &e).to_integer().to_i64())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some((p, e.to_i64()?))
    }

    /// Rescales to a primitive integer matrix whose first nonzero entry (in
    /// row-major order) is positive. The zero matrix is returned unchanged.
    fn primitive(&self) -> SymMatrix {
        let e = rational::common_denominator(self.entries.iter().flatten());
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .flatten()
            .map(|v| (v * &e).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return self.clone();
        }
        let first_negative = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
        let factor = Rational::new(if first_negative { -e } else { e }, g);
        self.scale(&factor)
    }
}

/// Rational basis of `T_A⁰ = {B : tr(A⁻¹B) = 0}` with its Killing Gram matrix.
#[derive(Clone, Debug)]
pub struct TangentBasis {
    pub base_form: GramMatrix,
    pub vectors: Vec<SymMatrix>,
    pub killing_gram: RatMatrix,
}

impl TangentBasis {
    /// Wraps an explicit basis, checking tracelessness and independence.
    pub fn from_vectors(a: &GramMatrix, vectors: Vec<SymMatrix>) -> Result<TangentBasis> {
        let n = a.dim();
        let m = harmonic_dim(n);
        if vectors.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: vectors.len(),
            });
        }
        let inv = a.inverse();
        for b in &vectors {
            if b.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.dim(),
                });
            }
            if !matrix::trace_of_product(&inv, b.entries()).is_zero() {
                return Err(Error::BadParameter("basis element is not traceless w.r.t. A".into()));
            }
        }
        let flat: RatMatrix = vectors
            .iter()
            .map(|b| b.entries().iter().flatten().cloned().collect())
            .collect();
        if matrix::rank(&flat) != m {
            return Err(Error::BadParameter("basis elements are linearly dependent".into()));
        }
        let killing_gram = gram_matrix(&inv, &vectors);
        Ok(TangentBasis {
            base_form: a.clone(),
            vectors,
            killing_gram,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// New basis `B'_i = Σ_j M[i][j]·B_j` for an invertible rational `M`.
    pub fn recombine(&self, m: &RatMatrix) -> Result<TangentBasis> {
        let n = self.base_form.dim();
        let vectors = m
            .iter()
            .map(|row| {
                let mut acc = matrix::zeros(n, n);
                for (c, b) in row.iter().zip(&self.vectors) {
                    if c.is_zero() {
                        continue;
                    }
                    for i in 0..n {
                        for j in 0..n {
                            acc[i][j] += c * &b.entries()[i][j];
                        }
                    }
                }
                SymMatrix::new(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        TangentBasis::from_vectors(&self.base_form, vectors)
    }
}

fn gram_matrix(inv: &RatMatrix, vectors: &[SymMatrix]) -> RatMatrix {
    // Precompute A⁻¹B_j once; ⟨B_j,B_k⟩ = 2·tr((A⁻¹B_j)(A⁻¹B_k)).
    let prods: Vec<RatMatrix> = vectors.iter().map(|b| matrix::mul(inv, b.entries())).collect();
    let m = vectors.len();
    let two = Rational::from_integer(2.into());
    let mut g = matrix::zeros(m, m);
    for j in 0..m {
        for k in j..m {
            let v = &two * matrix::trace_of_product(&prods[j], &prods[k]);
            g[k][j] = v.clone();
            g[j][k] = v;
        }
    }
    g
}

/// `(n² + n − 2) / 2`, the dimension of `T_A⁰`.
pub fn harmonic_dim(n: usize) -> usize {
    (n * n + n).saturating_sub(2) / 2
}

/// Deterministic rational basis of `T_A⁰`.
///
/// Takes the elementary symmetric matrices `E_ij` (`i ≤ j`, row-major),
/// projects each along `A` to `E − tr(A⁻¹E)/n · A`, scales it to a primitive
/// integer matrix, and keeps it unless it depends on those already kept.
pub fn tangent_basis(a: &GramMatrix) -> TangentBasis {
    let n = a.dim();
    let inv = a.inverse();
    let nn = Rational::from_integer(BigInt::from(n));
    let mut kept: Vec<SymMatrix> = Vec::new();
    let mut flat: RatMatrix = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = matrix::zeros(n, n);
            e[i][j] = Rational::one();
            e[j][i] = Rational::one();
            let t = matrix::trace_of_product(&inv, &e) / &nn;
            let proj = matrix::sub(&e, &matrix::scale(a.entries(), &t));
            let b = SymMatrix { entries: proj }.primitive();
            flat.push(b.entries().iter().flatten().cloned().collect());
            if matrix::rank(&flat) == flat.len() {
                kept.push(b);
            } else {
                flat.pop();
            }
        }
    }
    debug_assert_eq!(kept.len(), harmonic_dim(n));
    let killing_gram = gram_matrix(&inv, &kept);
    TangentBasis {
        base_form: a.clone(),
        vectors: kept,
        killing_gram,
    }
}

/// `2·tr(A⁻¹H₁A⁻¹H₂)`.
pub fn killing_pair(a: &GramMatrix, h1: &SymMatrix, h2: &SymMatrix) -> Result<Rational> {
    let n = a.dim();
    for h in [h1, h2] {
        if h.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.dim(),
            });
        }
    }
    let inv = a.inverse();
    let p1 = matrix::mul(&inv, h1.entries());
    let p2 = matrix::mul(&inv, h2.entries());
    Ok(Rational::from_integer(2.into()) * matrix::trace_of_product(&p1, &p2))
}

/// `tr(A⁻¹B)`; zero exactly for harmonic directions.
pub fn a_trace(a: &GramMatrix, b: &SymMatrix) -> Rational {
    matrix::trace_of_product(&a.inverse(), b.entries())
}
