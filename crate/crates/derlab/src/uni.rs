//! Univariate utilities in the last variable: extended gcd with Bezout
//! coefficients, order-based series gcd, and formal antiderivatives.
//!
//! These back the simplicity certificates: a unit gcd of the dx_n
//! coefficients comes with polynomials r_i such that `sum r_i * q_i = 1`,
//! and a non-unit gcd is itself a stable-ideal generator.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Poly};
use crate::ring::RingSpec;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UniError {
    #[error("operand depends on x{0}; expected a polynomial in the last variable only")]
    NotUnivariate(usize),
    #[error("extended gcd requires polynomial mode; series mode uses the order-based gcd")]
    GcdRequiresPolynomialMode,
}

/// Extended gcd of a list of polynomials in `k[x_n]`.
///
/// Returns the monic gcd `g` (zero exactly when every input is zero) and
/// Bezout coefficients `rs` with `sum rs[i] * qs[i] = g`. When `g` is a
/// unit the normalization makes it exactly 1, so the coefficients witness
/// simplicity directly.
pub fn uni_extended_gcd(qs: &[Poly]) -> Result<(Poly, Vec<Poly>), UniError> {
    assert!(!qs.is_empty(), "gcd of an empty list");
    let ring = qs[0].ring();
    if ring.is_series() {
        return Err(UniError::GcdRequiresPolynomialMode);
    }
    let dense: Vec<Vec<Scalar>> = qs.iter().map(to_dense).collect::<Result<_, _>>()?;
    let mut g: Vec<Scalar> = Vec::new();
    let mut rs: Vec<Vec<Scalar>> = Vec::new();
    for q in &dense {
        let (g2, s, t) = ext_gcd_pair(&g, q);
        for r in &mut rs {
            *r = mul(r, &s);
        }
        rs.push(t);
        g = g2;
    }
    Ok((
        from_dense(ring, &g),
        rs.iter().map(|r| from_dense(ring, r)).collect(),
    ))
}

/// Order-based gcd in truncated `k[[x_n]]`: the gcd of the inputs is
/// `x_n^m` where `m` is the least order among the nonzero inputs. Returns
/// the generator together with the index of a member realizing the order;
/// all-zero input yields zero and no witness.
pub fn series_gcd_order(qs: &[Poly]) -> (Poly, Option<usize>) {
    assert!(!qs.is_empty(), "gcd of an empty list");
    let ring = qs[0].ring();
    assert!(ring.is_series(), "order-based gcd requires series mode");
    let mut best: Option<(u32, usize)> = None;
    for (i, q) in qs.iter().enumerate() {
        if let Some(j) = q.non_last_dependence() {
            panic!("operand depends on x{j}; expected a polynomial in the last variable only");
        }
        if q.is_zero() {
            continue;
        }
        let order = q
            .terms()
            .map(|(m, _)| m.exp(ring.nvars()))
            .min()
            .expect("nonzero polynomial has terms");
        if best.map(|(m, _)| order < m).unwrap_or(true) {
            best = Some((order, i));
        }
    }
    match best {
        None => (Poly::zero(ring), None),
        Some((m, i)) => {
            let mut exps = vec![0; ring.nvars()];
            exps[ring.nvars() - 1] = m;
            (
                Poly::monomial(ring, Monomial::from_exps(exps), Scalar::one()),
                Some(i),
            )
        }
    }
}

/// Antiderivative in the last variable with zero constant term. In series
/// mode the result is truncated back, so differentiating recovers the
/// input only on terms of degree below `trunc - 1`.
pub fn uni_antiderivative(f: &Poly) -> Result<Poly, UniError> {
    if let Some(j) = f.non_last_dependence() {
        return Err(UniError::NotUnivariate(j));
    }
    let ring = f.ring();
    let n = ring.nvars();
    let mut acc = Poly::zero(ring);
    for (m, c) in f.terms() {
        let e = m.exp(n);
        let mut exps = vec![0; n];
        exps[n - 1] = e + 1;
        let coeff = c / Scalar::from_integer((e + 1).into());
        acc = &acc + &Poly::monomial(ring, Monomial::from_exps(exps), coeff);
    }
    Ok(acc)
}

// ---- dense univariate arithmetic (ascending coefficients, no trailing zeros)

fn to_dense(f: &Poly) -> Result<Vec<Scalar>, UniError> {
    if let Some(j) = f.non_last_dependence() {
        return Err(UniError::NotUnivariate(j));
    }
    let n = f.ring().nvars();
    let mut coeffs = vec![Scalar::zero(); f.total_degree() as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(n) as usize] = c.clone();
    }
    trim(&mut coeffs);
    Ok(coeffs)
}

fn from_dense(ring: RingSpec, coeffs: &[Scalar]) -> Poly {
    let n = ring.nvars();
    let mut acc = Poly::zero(ring);
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0; n];
        exps[n - 1] = e as u32;
        acc = &acc + &Poly::monomial(ring, Monomial::from_exps(exps), c.clone());
    }
    acc
}

fn trim(v: &mut Vec<Scalar>) {
    while v.last().map(Scalar::is_zero).unwrap_or(false) {
        v.pop();
    }
}

fn mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(&mut out);
    out
}

fn sub_scaled(a: &[Scalar], b: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    // a - q*b
    let qb = mul(q, b);
    let mut out = vec![Scalar::zero(); a.len().max(qb.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in qb.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(db)];
    while rem.len() >= b.len() && !rem.is_empty() {
        let dr = rem.len() - 1;
        let factor = &rem[dr] / lead;
        let shift = dr - db;
        let mut step = vec![Scalar::zero(); shift + 1];
        step[shift] = factor.clone();
        quot[shift] = factor;
        rem = sub_scaled(&rem, b, &step);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Extended Euclid on dense univariate polynomials: returns `(g, s, t)`
/// with `s*a + t*b = g` and `g` monic (or zero when both inputs are zero).
fn ext_gcd_pair(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![Scalar::one()];
    let mut s1: Vec<Scalar> = Vec::new();
    let mut t0: Vec<Scalar> = Vec::new();
    let mut t1 = vec![Scalar::one()];
    while !r1.is_empty() {
        let (q, rem) = divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, rem);
        let next_s = sub_scaled(&s0, &s1, &q);
        s0 = std::mem::replace(&mut s1, next_s);
        let next_t = sub_scaled(&t0, &t1, &q);
        t0 = std::mem::replace(&mut t1, next_t);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = Scalar::one() / lead;
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c *= &inv;
        }
    }
    (r0, s0, t0)
}
