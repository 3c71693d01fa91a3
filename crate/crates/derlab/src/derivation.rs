//! Derivations of the ambient ring as coefficient vectors.
//!
//! A derivation d is a k-linear map with d(fg) = d(f)g + f d(g); it is
//! determined by its values on the variables, so we store the coefficient
//! vector (a1..an) of d = a1*dx1 + ... + an*dxn. The Lie bracket of two
//! derivations is the commutator of the operators, itself a derivation with
//! coefficients [d1,d2](xj) = d1(a2j) - d2(a1j).

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::matrix;
use crate::poly::Poly;
use crate::ring::RingSpec;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DerivationError {
    #[error("local nilpotency is only decided in polynomial mode")]
    NilpotencyRequiresPolynomialMode,
    #[error("iteration budget must be at least 1")]
    ZeroBudget,
    #[error("basis check is only defined in polynomial mode")]
    BasisRequiresPolynomialMode,
    #[error("basis check needs exactly {expected} members, family has {actual}")]
    WrongMemberCount { expected: usize, actual: usize },
    #[error("family must be nonempty")]
    EmptyFamily,
    #[error("duplicate derivation name {0:?}")]
    DuplicateMemberName(String),
}

/// A derivation stored as its coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: RingSpec,
    coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(ring: RingSpec, coeffs: Vec<Poly>) -> Self {
        assert_eq!(coeffs.len(), ring.nvars(), "coefficient count");
        assert!(
            coeffs.iter().all(|c| c.ring() == ring),
            "ring mismatch"
        );
        Derivation { ring, coeffs }
    }

    pub fn zero(ring: RingSpec) -> Self {
        Derivation::new(ring, vec![Poly::zero(ring); ring.nvars()])
    }

    /// The coordinate partial `dxj` (1-based).
    pub fn partial(ring: RingSpec, j: usize) -> Self {
        assert!(j >= 1 && j <= ring.nvars(), "variable index out of range");
        let mut coeffs = vec![Poly::zero(ring); ring.nvars()];
        coeffs[j - 1] = Poly::one(ring);
        Derivation::new(ring, coeffs)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Coefficient of `dxj` (1-based).
    pub fn coeff(&self, j: usize) -> &Poly {
        &self.coeffs[j - 1]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// `Some(j)` when this is exactly the coordinate partial `dxj`.
    pub fn as_partial(&self) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || c.as_constant() != Some(Scalar::one()) {
                return None;
            }
            found = Some(i + 1);
        }
        found
    }

    /// Apply to a ring element: d(f) = sum_j aj * df/dxj.
    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(self.ring, f.ring(), "ring mismatch");
        let mut acc = Poly::zero(self.ring);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(c * &f.partial_derivative(j + 1));
        }
        acc
    }

    /// Lie bracket d1 o d2 - d2 o d1 as a derivation.
    pub fn bracket(&self, other: &Derivation) -> Derivation {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let coeffs = (1..=self.ring.nvars())
            .map(|j| &self.apply(other.coeff(j)) - &other.apply(self.coeff(j)))
            .collect();
        Derivation::new(self.ring, coeffs)
    }

    pub fn commutes_with(&self, other: &Derivation) -> bool {
        self.bracket(other).is_zero()
    }

    /// Divergence sum_j d(aj)/dxj; the derivation is called special when
    /// this vanishes.
    pub fn divergence(&self) -> Poly {
        let mut acc = Poly::zero(self.ring);
        for (j, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &c.partial_derivative(j + 1);
        }
        acc
    }

    /// Iterate chain `[f, d(f), ..., d^k(f)]`.
    pub fn iterate(&self, f: &Poly, k: usize) -> Vec<Poly> {
        let mut chain = Vec::with_capacity(k + 1);
        chain.push(f.clone());
        for _ in 0..k {
            let next = self.apply(chain.last().unwrap());
            chain.push(next);
        }
        chain
    }

    /// Largest total degree among the coefficients.
    pub fn max_coeff_degree(&self) -> u32 {
        self.coeffs.iter().map(Poly::total_degree).max().unwrap_or(0)
    }

    /// Default iteration budget for nilpotency checks:
    /// `2 + n * (1 + max coefficient degree)`.
    pub fn default_nilpotency_budget(&self) -> u32 {
        2 + self.ring.nvars() as u32 * (1 + self.max_coeff_degree())
    }

    /// Semi-decision of local nilpotency on the ring generators.
    ///
    /// Nilpotency on every generator extends to the whole ring: by the
    /// Leibniz rule an iterate of d on a product spreads over the factors,
    /// so once high enough iterates kill every variable they kill every
    /// monomial, and k-linearity finishes the argument.
    pub fn local_nilpotency(&self, budget: u32) -> Result<NilpotencyReport, DerivationError> {
        if self.ring.is_series() {
            return Err(DerivationError::NilpotencyRequiresPolynomialMode);
        }
        if budget == 0 {
            return Err(DerivationError::ZeroBudget);
        }
        let verdicts = (1..=self.ring.nvars())
            .map(|j| {
                let chain = self.iterate(&Poly::var(self.ring, j), budget as usize);
                nilpotency_verdict(&chain, budget)
            })
            .collect();
        Ok(NilpotencyReport { verdicts })
    }
}

fn nilpotency_verdict(chain: &[Poly], budget: u32) -> NilpotencyVerdict {
    for (i, iterate) in chain.iter().enumerate().skip(1) {
        if iterate.is_zero() {
            return NilpotencyVerdict::Nilpotent { order: i as u32 };
        }
        // all earlier iterates are nonzero here, so a scalar-multiple
        // repetition pins the chain away from zero forever
        for (m, earlier) in chain[..i].iter().enumerate() {
            if let Some(factor) = iterate.proportional_to(earlier) {
                return NilpotencyVerdict::NotNilpotent {
                    earlier: m as u32,
                    later: i as u32,
                    factor,
                };
            }
        }
    }
    NilpotencyVerdict::Unknown { budget }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rendered = render_term(c, j + 1);
            if first {
                write!(f, "{rendered}")?;
                first = false;
            } else if let Some(rest) = rendered.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {rendered}")?;
            }
        }
        Ok(())
    }
}

fn render_term(c: &Poly, j: usize) -> String {
    if let Some(k) = c.as_constant() {
        if k.is_one() {
            return format!("dx{j}");
        }
        if (-k.clone()).is_one() {
            return format!("-dx{j}");
        }
        return format!("{k}*dx{j}");
    }
    if c.num_terms() == 1 {
        let s = c.to_string();
        // a lone monomial like x3^2 or -1/2*x3 needs no parentheses
        return format!("{s}*dx{j}");
    }
    format!("({c})*dx{j}")
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[{}]({})", self.ring, self)
    }
}

/// Per-generator outcome of the nilpotency semi-decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotencyVerdict {
    /// The `order`-th iterate of the generator is zero, the previous is not.
    Nilpotent { order: u32 },
    /// `d^later(x) = factor * d^earlier(x)` with a nonzero factor and a
    /// nonzero earlier iterate, so the chain never reaches zero.
    NotNilpotent {
        earlier: u32,
        later: u32,
        factor: Scalar,
    },
    /// Budget exhausted without a decision.
    Unknown { budget: u32 },
}

/// Nilpotency verdicts for the generators `x1..xn`, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub verdicts: Vec<NilpotencyVerdict>,
}

impl NilpotencyReport {
    /// Locally nilpotent on all generators (within the budget).
    pub fn all_nilpotent(&self) -> bool {
        self.verdicts
            .iter()
            .all(|v| matches!(v, NilpotencyVerdict::Nilpotent { .. }))
    }

    pub fn max_order(&self) -> Option<u32> {
        self.verdicts
            .iter()
            .map(|v| match v {
                NilpotencyVerdict::Nilpotent { order } => Some(*order),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|orders| orders.into_iter().max().unwrap_or(0))
    }
}

/// Named, ordered family of derivations over one ring.
#[derive(Clone, Debug)]
pub struct DerivationFamily {
    ring: RingSpec,
    members: Vec<(String, Derivation)>,
}

impl DerivationFamily {
    pub fn new(
        ring: RingSpec,
        members: Vec<(String, Derivation)>,
    ) -> Result<Self, DerivationError> {
        if members.is_empty() {
            return Err(DerivationError::EmptyFamily);
        }
        for (i, (name, d)) in members.iter().enumerate() {
            assert_eq!(d.ring(), ring, "ring mismatch");
            if members[..i].iter().any(|(other, _)| other == name) {
                return Err(DerivationError::DuplicateMemberName(name.clone()));
            }
        }
        Ok(DerivationFamily { ring, members })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = (&str, &Derivation)> {
        self.members.iter().map(|(n, d)| (n.as_str(), d))
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn derivations(&self) -> impl Iterator<Item = &Derivation> {
        self.members.iter().map(|(_, d)| d)
    }

    pub fn get(&self, name: &str) -> Option<&Derivation> {
        self.members
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
    }

    /// First pair of members with a nonvanishing bracket, if any.
    pub fn noncommuting_witness(&self) -> Option<(&str, &str, Derivation)> {
        for (i, (na, da)) in self.members.iter().enumerate() {
            for (nb, db) in &self.members[i + 1..] {
                let bracket = da.bracket(db);
                if !bracket.is_zero() {
                    return Some((na, nb, bracket));
                }
            }
        }
        None
    }

    pub fn pairwise_commuting(&self) -> bool {
        self.noncommuting_witness().is_none()
    }

    /// Determinant-based test for being a commutative basis of the module
    /// of all derivations: exactly n members, unit coefficient-matrix
    /// determinant, and pairwise vanishing brackets.
    pub fn basis_check(&self) -> Result<BasisReport, DerivationError> {
        if self.ring.is_series() {
            return Err(DerivationError::BasisRequiresPolynomialMode);
        }
        let n = self.ring.nvars();
        if self.members.len() != n {
            return Err(DerivationError::WrongMemberCount {
                expected: n,
                actual: self.members.len(),
            });
        }
        let rows: Vec<Vec<Poly>> = self
            .members
            .iter()
            .map(|(_, d)| d.coeffs().to_vec())
            .collect();
        let det = matrix::determinant(self.ring, &rows);
        let witness = self
            .noncommuting_witness()
            .map(|(a, b, br)| (a.to_string(), b.to_string(), br));
        Ok(BasisReport {
            is_basis: det.is_unit(),
            pairwise_commuting: witness.is_none(),
            det,
            noncommuting_witness: witness,
        })
    }

    pub fn default_nilpotency_budget(&self) -> u32 {
        let max_degree = self
            .derivations()
            .map(Derivation::max_coeff_degree)
            .max()
            .unwrap_or(0);
        2 + self.ring.nvars() as u32 * (1 + max_degree)
    }
}

/// Result of [`DerivationFamily::basis_check`].
#[derive(Clone, Debug)]
pub struct BasisReport {
    pub det: Poly,
    pub is_basis: bool,
    pub pairwise_commuting: bool,
    pub noncommuting_witness: Option<(String, String, Derivation)>,
}
