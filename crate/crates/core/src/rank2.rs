//! Binary forms: Gauss reduction, the vanishing / degenerate / nondegenerate
//! classification, the closed pair-sum formula for the 2×2 Wronskian, and
//! recovery of a form from its first norms.
//!
//! Reduced forms satisfy `0 ≤ 2b ≤ a ≤ c` for `[[a,b],[b,c]]`, so the three
//! degenerate loci read off directly as `b = 0`, `2b = a` and `a = c`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariants::theta11_direct;
use crate::lattice::{self, enumerate_scaled, enumerate_vectors, GramMatrix};
use crate::qseries::QSeries;
use crate::rational::{self, Rational};

/// Proof-normalized `c₂` over the canonical `Θ₁,₁` coefficient in rank 2.
pub const PROOF_C2_FACTOR: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Vanishing,
    /// 1: orthogonal basis, 2: `2⟨λ₁,λ₂⟩ = ‖λ₁‖²`, 3: equal lengths.
    Degenerate(u8),
    Nondegenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Vanishing => f.write_str("VANISHING"),
            Verdict::Degenerate(c) => {
                let roman = ["i", "ii", "iii"][(*c as usize).clamp(1, 3) - 1];
                write!(f, "DEGENERATE({roman})")
            }
            Verdict::Nondegenerate => f.write_str("NONDEGENERATE"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rank2Class {
    pub verdict: Verdict,
    pub reduced: GramMatrix,
    /// `τ = (b + i√(ac−b²))/a` as `(Re, Im)`; display only.
    pub tau: (f64, f64),
}

impl Rank2Class {
    /// `rank2: <VERDICT>; reduced=[[a,b],[b,c]]; tau=Re+Im i`.
    pub fn render(&self) -> String {
        let e = |i, j| rational::render(self.reduced.entry(i, j));
        format!(
            "rank2: {}; reduced=[[{},{}],[{},{}]]; tau={:.6}+{:.6}i",
            self.verdict,
            e(0, 0),
            e(0, 1),
            e(1, 0),
            e(1, 1),
            self.tau.0,
            self.tau.1
        )
    }
}

fn abc(a: &GramMatrix) -> Result<(Rational, Rational, Rational)> {
    if a.dim() != 2 {
        return Err(Error::NotRank2(a.dim()));
    }
    Ok((a.entry(0, 0).clone(), a.entry(0, 1).clone(), a.entry(1, 1).clone()))
}

fn form(a: &Rational, b: &Rational, c: &Rational) -> Result<GramMatrix> {
    GramMatrix::new(vec![vec![a.clone(), b.clone()], vec![b.clone(), c.clone()]])
}

fn mul2(t: [[i64; 2]; 2], s: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut r = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = t[i][0] * s[0][j] + t[i][1] * s[1][j];
        }
    }
    r
}

/// Gauss reduction: returns `(R, T)` with `ᵗT·A·T = R` and `R` reduced.
pub fn reduce(a: &GramMatrix) -> Result<(GramMatrix, [[i64; 2]; 2])> {
    let (mut p, mut q, mut r) = abc(a)?;
    let mut t = [[1i64, 0], [0, 1]];
    let two = rational::int(2);
    loop {
        if (&two * &q).abs() > p {
            let k = (&q / &p + rational::frac(1, 2)).floor();
            let kb = k.to_integer();
            let ki: i64 = (&kb).try_into().map_err(|_| Error::EntriesTooLarge)?;
            r = &r - &two * &k * &q + &k * &k * &p;
            q = &q - &k * &p;
            t = mul2(t, [[1, -ki], [0, 1]]);
        } else if p > r {
            std::mem::swap(&mut p, &mut r);
            t = mul2(t, [[0, 1], [1, 0]]);
        } else {
            break;
        }
    }
    if q.is_negative() {
        q = -q;
        t = mul2(t, [[1, 0], [0, -1]]);
    }
    Ok((form(&p, &q, &r)?, t))
}

/// Classifies a binary form after reduction. Boundary overlaps report the
/// smallest case index.
pub fn classify(a: &GramMatrix) -> Result<Rank2Class> {
    let (reduced, _) = reduce(a)?;
    let (p, q, r) = abc(&reduced)?;
    let two_q = rational::int(2) * &q;
    let verdict = if p == r && (q.is_zero() || two_q == p) {
        Verdict::Vanishing
    } else if q.is_zero() {
        Verdict::Degenerate(1)
    } else if two_q == p {
        Verdict::Degenerate(2)
    } else if p == r {
        Verdict::Degenerate(3)
    } else {
        Verdict::Nondegenerate
    };
    let pf = rational::to_f64(&p);
    let qf = rational::to_f64(&q);
    let rf = rational::to_f64(&r);
    let tau = (qf / pf, (pf * rf - qf * qf).sqrt() / pf);
    Ok(Rank2Class {
        verdict,
        reduced,
        tau,
    })
}

/// The 2×2 Wronskian through the pair sum
/// `½ Σ ⟨λ,μ⟩·det(λ,μ)·(‖μ‖² − ‖λ‖²)·q^{‖λ‖²+‖μ‖²}`.
///
/// `det(λ,μ) = λ₁μ₂ − λ₂μ₁` is taken in `Z²` coordinates; the Euclidean
/// determinant carries an extra `√det A`, kept symbolic in `det_a`. The
/// overall sign depends on orientation, so compare up to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Det {
    /// Rational part; the Euclidean series is `√det_a · rational_part`.
    pub rational_part: QSeries,
    pub det_a: Rational,
}

pub fn det_dtheta_rank2(a: &GramMatrix, x: &Rational) -> Result<Rank2Det> {
    if a.dim() != 2 {
        return Err(Error::NotRank2(a.dim()));
    }
    assert!(!x.is_negative(), "negative bound {x}");
    let limit = a.key_limit(x);
    let mut hv: Vec<_> = enumerate_scaled(a, x)
        .into_iter()
        .filter(|v| v.coords[0] > 0 || (v.coords[0] == 0 && v.coords[1] > 0))
        .collect();
    hv.sort_by_key(|v| v.key);
    let mut sums = std::collections::BTreeMap::<i128, i128>::new();
    // Each term is invariant under λ ↦ −λ, μ ↦ −μ and (λ,μ) ↦ (μ,λ);
    // diagonal pairs vanish (det = 0).
    for (i, l) in hv.iter().enumerate() {
        for m in &hv[i + 1..] {
            if l.key + m.key > limit {
                break;
            }
            let ip: i128 = l.coords.iter().zip(&m.image).map(|(c, v)| *c as i128 * v).sum();
            let det = l.coords[0] as i128 * m.coords[1] as i128 - l.coords[1] as i128 * m.coords[0] as i128;
            let term = ip * det * (m.key - l.key);
            if term != 0 {
                *sums.entry(l.key + m.key).or_default() += 8 * term;
            }
        }
    }
    let d = BigInt::from(a.denominator());
    let den = BigInt::from(2) * &d * &d;
    let series = QSeries::from_terms(
        sums.into_iter()
            .map(|(k, s)| (a.key_to_rational(k), Rational::new(BigInt::from(s), den.clone()))),
        x.clone(),
    );
    Ok(Rank2Det {
        rational_part: series,
        det_a: a.det(),
    })
}

/// Coefficient `c₂` of `q²` in `Θ₁,₁` after scaling to minimal norm 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVectorData {
    /// Number of pairs `±λ` of minimal vectors (1, 2 or 3).
    pub minimal_pairs: usize,
    /// `Σ (2⟨γ,δ⟩² − ‖γ‖²‖δ‖²)` over ordered pairs of minimal vectors.
    pub c2: Rational,
    /// The `q²` coefficient of `theta11_direct` of the scaled form.
    pub theta11_c2: Rational,
    /// Minimal norm of the input; the form was divided by it.
    pub scale: Rational,
}

impl MinimalVectorData {
    /// `c₂ = PROOF_C2_FACTOR · theta11_c2`.
    pub fn consistent(&self) -> bool {
        self.c2 == rational::int(PROOF_C2_FACTOR) * &self.theta11_c2
    }
}

pub fn minimal_vector_test(a: &GramMatrix) -> Result<MinimalVectorData> {
    if a.dim() != 2 {
        return Err(Error::NotRank2(a.dim()));
    }
    let scale = lattice::minimum(a);
    let s = a.scaled_by(&(Rational::one() / &scale))?;
    let one = Rational::one();
    let minimal: Vec<_> = enumerate_vectors(&s, &one)
        .into_iter()
        .filter(|v| v.norm == one)
        .collect();
    let two = rational::int(2);
    let mut c2 = Rational::zero();
    for g in &minimal {
        for d in &minimal {
            let ip = s.inner(&g.coords, &d.coords);
            c2 += &two * &ip * &ip - &g.norm * &d.norm;
        }
    }
    let theta11_c2 = theta11_direct(&s, &two).series.coeff(&two);
    Ok(MinimalVectorData {
        minimal_pairs: minimal.len() / 2,
        c2,
        theta11_c2,
        scale,
    })
}

/// Recovers the reduced binary form from its smallest nonzero norms and their
/// multiplicities.
///
/// Candidates are `a` = first norm, `c` one of the listed norms, and `b` such
/// that `a + c − 2b` (the norm of `e₁ − e₂`) is listed, or `b = 0`. Each
/// candidate's spectrum up to the largest listed norm is enumerated and
/// compared exactly.
pub fn gram_from_spectrum(spectrum: &[(Rational, usize)]) -> Result<GramMatrix> {
    if spectrum.is_empty() {
        return Err(Error::BadParameter("empty spectrum".into()));
    }
    for (i, (norm, mult)) in spectrum.iter().enumerate() {
        if !norm.is_positive() || *mult == 0 || mult % 2 == 1 {
            return Err(Error::BadParameter(format!(
                "entry {i}: norms must be positive and multiplicities even and nonzero"
            )));
        }
        if i > 0 && spectrum[i - 1].0 >= *norm {
            return Err(Error::BadParameter("norms must be strictly ascending".into()));
        }
    }
    let a = spectrum[0].0.clone();
    let max = spectrum.last().unwrap().0.clone();
    let two = rational::int(2);

    // Only multiples k²a, each with a single pair: nothing beyond e1 is visible.
    let only_e1 = spectrum.iter().all(|(n, m)| {
        *m == 2 && {
            let r = n / &a;
            rational::as_integer(&r).is_some_and(|k| {
                let s = k.sqrt();
                &s * &s == k
            })
        }
    });
    if only_e1 {
        return Err(Error::Underdetermined);
    }

    let mut candidates = BTreeSet::new();
    for (c, _) in spectrum.iter().filter(|(c, _)| *c >= a) {
        candidates.insert((c.clone(), Rational::zero()));
        for (t, _) in spectrum.iter().filter(|(t, _)| t >= c && *t <= &a + c) {
            let b = (&a + c - t) / &two;
            if !b.is_negative() && &two * &b <= a {
                candidates.insert((c.clone(), b));
            }
        }
    }
    let mut matches = Vec::new();
    for (c, b) in candidates {
        let g = form(&a, &b, &c)?;
        if lattice::spectrum(&g, &max) == spectrum {
            matches.push((g, b, c));
        }
    }
    match matches.len() {
        0 => Err(Error::NoMatch),
        1 => {
            let (g, b, c) = matches.pop().unwrap();
            if &a + &c - &two * &b > max {
                return Err(Error::Underdetermined);
            }
            Ok(g)
        }
        _ => Err(Error::Ambiguous(
            matches
                .iter()
                .map(|(g, _, _)| g.to_json())
                .collect(),
        )),
    }
}
