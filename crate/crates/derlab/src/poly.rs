//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly`] is a finite map from exponent vectors to nonzero [`Scalar`]s,
//! tagged with its [`RingSpec`]. In series mode every stored term has total
//! degree strictly below the truncation order and all operations re-truncate,
//! so series values are exact modulo that degree.
//!
//! Terms are kept in a `BTreeMap` under the canonical term order (total
//! degree first, then variable priority `x1 > x2 > ...` within a degree), so
//! iteration and display are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ring::{RingMode, RingSpec};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("evaluation requires polynomial mode")]
    EvalRequiresPolynomialMode,
    #[error("series inverse requires series mode")]
    InverseRequiresSeriesMode,
    #[error("series inverse requires a unit (nonzero constant term)")]
    InverseOfNonUnit,
}

/// Exponent vector of a single monomial; one entry per ring variable.
///
/// The `Ord` impl is the canonical term order: lower total degree first,
/// and within a degree the monomial with the higher power of the earliest
/// variable comes first. The order is graded and compatible with monomial
/// multiplication, so the maximal term of a product is the product of
/// maximal terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `x_j` (1-based index).
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[j - 1] = 1;
        Monomial(exps)
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `x_j` (1-based).
    pub fn exp(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial (or truncated series) over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: RingSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(ring: RingSpec) -> Self {
        Poly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: RingSpec) -> Self {
        Poly::constant(ring, Scalar::one())
    }

    pub fn constant(ring: RingSpec, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(ring.nvars()), c);
        }
        Poly { ring, terms }
    }

    pub fn from_int(ring: RingSpec, n: i64) -> Self {
        Poly::constant(ring, Scalar::from_integer(BigInt::from(n)))
    }

    /// The variable `x_j` (1-based). In series mode with truncation 1 this
    /// is the zero polynomial.
    pub fn var(ring: RingSpec, j: usize) -> Self {
        Poly::monomial(ring, Monomial::var(ring.nvars(), j), Scalar::one())
    }

    /// Single term `c * x^exps`, truncated away in series mode when its
    /// degree reaches the truncation order.
    pub fn monomial(ring: RingSpec, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.exps().len(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() && degree_kept(ring, &m) {
            terms.insert(m, c);
        }
        Poly { ring, terms }
    }

    fn from_terms(ring: RingSpec, terms: BTreeMap<Monomial, Scalar>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(m, c)| !c.is_zero() && degree_kept(ring, m))
            .collect();
        Poly { ring, terms }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximal total degree among stored terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::unit(self.ring.nvars()))
    }

    /// `Some(c)` when the polynomial is the constant `c` (possibly zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Invertibility in the ambient ring: nonzero constants in polynomial
    /// mode, nonzero constant term in series mode.
    pub fn is_unit(&self) -> bool {
        match self.ring.mode() {
            RingMode::Polynomial => self
                .as_constant()
                .map(|c| !c.is_zero())
                .unwrap_or(false),
            RingMode::Series { .. } => !self.constant_term().is_zero(),
        }
    }

    /// Least variable index `j < n` on which the polynomial depends, or
    /// `None` when it lies in `k[x_n]` (the zero polynomial qualifies).
    pub fn non_last_dependence(&self) -> Option<usize> {
        let n = self.ring.nvars();
        self.terms
            .keys()
            .filter_map(|m| (1..n).find(|&j| m.exp(j) > 0))
            .min()
    }

    pub fn depends_only_on_last(&self) -> bool {
        self.non_last_dependence().is_none()
    }

    /// Formal partial derivative with respect to `x_j` (1-based).
    pub fn partial_derivative(&self, j: usize) -> Poly {
        assert!(
            j >= 1 && j <= self.ring.nvars(),
            "variable index out of range"
        );
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(j);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[j - 1] = e - 1;
            terms.insert(
                Monomial::from_exps(exps),
                c * Scalar::from_integer(BigInt::from(e)),
            );
        }
        Poly::from_terms(self.ring, terms)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point. Polynomial mode only.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if self.ring.is_series() {
            return Err(PolyError::EvalRequiresPolynomialMode);
        }
        assert_eq!(point.len(), self.ring.nvars(), "point dimension");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                term *= num_traits::pow::pow(x.clone(), e as usize);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Copy with all terms of total degree `>= order` dropped. The ring
    /// spec is unchanged.
    pub fn truncated(&self, order: u32) -> Poly {
        Poly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() < order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterpret in another ring over the same variables, re-truncating
    /// as that ring requires.
    pub fn with_ring(&self, ring: RingSpec) -> Poly {
        assert_eq!(ring.nvars(), self.ring.nvars(), "variable count");
        Poly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        )
    }

    /// Multiplicative inverse in the truncated series ring.
    pub fn series_inverse(&self) -> Result<Poly, PolyError> {
        let trunc = self
            .ring
            .truncation()
            .ok_or(PolyError::InverseRequiresSeriesMode)?;
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(PolyError::InverseOfNonUnit);
        }
        // f = c0 * (1 - h) with h of positive order, so 1/f = (1/c0) * sum h^k.
        let inv_c0 = Scalar::one() / c0;
        let h = &Poly::one(self.ring) - &self.scalar_mul(&inv_c0);
        let mut acc = Poly::one(self.ring);
        let mut pow = Poly::one(self.ring);
        for _ in 1..trunc {
            pow = &pow * &h;
            if pow.is_zero() {
                break;
            }
            acc = &acc + &pow;
        }
        Ok(acc.scalar_mul(&inv_c0))
    }

    /// `Some(c)` with `self == c * other`, for nonzero `other`.
    pub fn proportional_to(&self, other: &Poly) -> Option<Scalar> {
        assert!(!other.is_zero(), "proportionality against zero");
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<Scalar> = None;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            if ma != mb {
                return None;
            }
            let r = ca / cb;
            match &ratio {
                None => ratio = Some(r),
                Some(r0) if *r0 == r => {}
                _ => return None,
            }
        }
        ratio
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self` in the ambient ring. Because the term order is graded,
    /// series-mode divisibility of the stored representatives coincides with
    /// divisibility in the truncated ring.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.ring, divisor.ring, "ring mismatch");
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lead_m, lead_c) = divisor.terms.last_key_value().unwrap();
        let mut remainder = self.clone();
        let mut quotient = BTreeMap::new();
        while let Some((rm, rc)) = remainder.terms.last_key_value() {
            if !lead_m.divides(rm) {
                return None;
            }
            let qm = lead_m.quotient_into(rm);
            let qc = rc / lead_c;
            let step = Poly::monomial(self.ring, qm.clone(), qc.clone());
            remainder = &remainder - &(&step * divisor);
            quotient.insert(qm, qc);
        }
        Some(Poly::from_terms(self.ring, quotient))
    }

    fn add_impl(&self, other: &Poly, negate_rhs: bool) -> Poly {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate_rhs { -c.clone() } else { c.clone() };
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Poly { ring: self.ring, terms }
    }
}

fn degree_kept(ring: RingSpec, m: &Monomial) -> bool {
    match ring.truncation() {
        None => true,
        Some(trunc) => m.total_degree() < trunc,
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let trunc = self.ring.truncation();
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some(t) = trunc {
                    if ma.total_degree() + mb.total_degree() >= t {
                        continue;
                    }
                }
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Poly { ring: self.ring, terms }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring, self)
    }
}
