//! Sparse truncated q-expansions with rational exponents.
//!
//! A [`QSeries`] stores `f = Σ a_e q^e` for finitely many exponents
//! `0 ≤ e ≤ bound`. It says nothing about exponents above `bound`; every
//! binary operation therefore works at the smaller of the two bounds.
//!
//! Invariants:
//! - every stored exponent satisfies `0 ≤ e ≤ bound`
//! - no stored coefficient is zero
//! - iteration is in ascending exponent order (it is a `BTreeMap`)

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<Rational, Rational>,
    bound: Rational,
}

impl QSeries {
    pub fn zero(bound: Rational) -> Self {
        QSeries {
            terms: BTreeMap::new(),
            bound,
        }
    }

    pub fn constant(c: Rational, bound: Rational) -> Self {
        Self::monomial(c, Rational::zero(), bound)
    }

    pub fn one(bound: Rational) -> Self {
        Self::constant(Rational::one(), bound)
    }

    /// `c·q^e`, or zero if `e` lies above the bound.
    pub fn monomial(c: Rational, e: Rational, bound: Rational) -> Self {
        let mut f = Self::zero(bound);
        f.add_term(e, c);
        f
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated exponents
    /// are summed; zero results and exponents above `bound` are dropped.
    ///
    /// Panics on a negative exponent.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>, bound: Rational) -> Self {
        let mut f = Self::zero(bound);
        for (e, c) in terms {
            f.add_term(e, c);
        }
        f
    }

    pub(crate) fn add_term(&mut self, e: Rational, c: Rational) {
        assert!(!e.is_negative(), "negative exponent {e} in q-series");
        if c.is_zero() || e > self.bound {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Truncated zero test: no nonzero coefficient at exponents `≤ bound`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^e` (zero when absent).
    pub fn coeff(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Rational, &Rational)> {
        self.terms.iter().next()
    }

    pub fn truncate(&self, bound: &Rational) -> QSeries {
        let bound = bound.min(&self.bound).clone();
        let terms = self
            .terms
            .range(..=bound.clone())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        QSeries { terms, bound }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let bound = self.bound.clone().min(other.bound.clone());
        let mut out = self.truncate(&bound);
        for (e, c) in other.terms.range(..=bound.clone()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            bound: self.bound.clone(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.bound.clone());
        }
        QSeries {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
            bound: self.bound.clone(),
        }
    }

    /// Cauchy product at `min(bound)`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let bound = self.bound.clone().min(other.bound.clone());
        let mut out = QSeries::zero(bound.clone());
        for (e1, c1) in self.terms.range(..=bound.clone()) {
            let room = &bound - e1;
            for (e2, c2) in other.terms.range(..=room) {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn square(&self) -> QSeries {
        self.mul(self)
    }

    /// `q·d/dq`: each `a_e q^e` becomes `e·a_e q^e`.
    pub fn qderiv(&self) -> QSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, c)| (e.clone(), e * c))
            .collect();
        QSeries {
            terms,
            bound: self.bound.clone(),
        }
    }

    /// Applies [`qderiv`](Self::qderiv) `k` times.
    pub fn qderiv_n(&self, k: usize) -> QSeries {
        (0..k).fold(self.clone(), |f, _| f.qderiv())
    }

    /// Canonical text form: `# bound=X` then one `EXPONENT<TAB>COEFFICIENT`
    /// line per term in ascending exponent order.
    pub fn render(&self) -> String {
        let mut s = format!("# bound={}\n", rational::render(&self.bound));
        for (e, c) in &self.terms {
            s.push_str(&rational::render(e));
            s.push('\t');
            s.push_str(&rational::render(c));
            s.push('\n');
        }
        s
    }

    /// Inverse of [`render`](Self::render). Exponents must be strictly
    /// ascending, within `[0, bound]`, with nonzero coefficients.
    pub fn parse(text: &str) -> Result<QSeries> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty series text".into()))?;
        let bound = header
            .trim()
            .strip_prefix("# bound=")
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))
            .and_then(rational::parse)?;
        if bound.is_negative() {
            return Err(Error::NegativeBound(rational::render(&bound)));
        }
        let mut f = QSeries::zero(bound);
        let mut last: Option<Rational> = None;
        for line in lines {
            let (e, c) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("bad term line {line:?}")))?;
            let e = rational::parse(e)?;
            let c = rational::parse(c)?;
            if e.is_negative() || e > f.bound {
                return Err(Error::Parse(format!("exponent {e} outside [0, {}]", f.bound)));
            }
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient at exponent {e}")));
            }
            if last.as_ref().is_some_and(|l| *l >= e) {
                return Err(Error::Parse(format!("exponents not ascending at {e}")));
            }
            last = Some(e.clone());
            f.terms.insert(e, c);
        }
        Ok(f)
    }

    /// First exponent `≤ min(bound)` where the two series differ.
    pub fn first_difference(&self, other: &QSeries) -> Option<Rational> {
        self.sub(other).leading().map(|(e, _)| e.clone())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Determinant of a square matrix of series.
///
/// Uses Laplace expansion organised as a dynamic program over the sets of
/// columns already used by the leading rows, so a `k×k` determinant costs
/// about `k·2^k` series products. The result carries the minimum bound of
/// all entries.
pub fn det_series(m: &[Vec<QSeries>]) -> Result<QSeries> {
    let k = m.len();
    for row in m {
        if row.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: row.len(),
            });
        }
    }
    if k > 63 {
        return Err(Error::BadParameter(format!("determinant of size {k} is too large")));
    }
    let bound = m
        .iter()
        .flatten()
        .map(|f| f.bound.clone())
        .min()
        .unwrap_or_else(|| Rational::from_integer(1.into()));
    if k == 0 {
        return Ok(QSeries::one(bound));
    }
    let mut layer: BTreeMap<u64, QSeries> = BTreeMap::new();
    layer.insert(0, QSeries::one(bound.clone()));
    for row in m {
        let mut next: BTreeMap<u64, QSeries> = BTreeMap::new();
        for (mask, minor) in &layer {
            if minor.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let mut prod = minor.mul(entry);
                if (mask >> (c + 1)).count_ones() % 2 == 1 {
                    prod = prod.neg();
                }
                let slot = next
                    .entry(mask | (1 << c))
                    .or_insert_with(|| QSeries::zero(bound.clone()));
                *slot = slot.add(&prod);
            }
        }
        layer = next;
    }
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    Ok(layer.remove(&full).unwrap_or_else(|| QSeries::zero(bound)))
}
