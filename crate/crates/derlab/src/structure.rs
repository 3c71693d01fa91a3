//! Decision procedures for differential simplicity.
//!
//! Everything here works over a family of derivations whose coefficients are
//! univariate in the last variable (the commutant form of the coordinate
//! partials `dx1..dx(n-1)`):
//!
//! - [`family_simplicity`] decides simplicity and returns a verifiable
//!   certificate either way: Bezout coefficients against the `dxn`
//!   coefficients, or a generator of a proper stable ideal.
//! - [`classify_family`] splits a pairwise-commuting family containing the
//!   partials into the two possible shapes: every member annihilates the
//!   last variable (case a), or every member is an affine combination
//!   `lambda * v + drift` of one shared coefficient profile `v` (case b).
//! - [`simplicity_upgrade`] extracts from a simple commuting family the
//!   n-member simple subset: the partials plus the pivot member.
//! - [`slice_coordinates`] builds coordinates `f1..fn` with `d(fn) = 1` and
//!   `d(fl) = 0` for a derivation with scalar `dxn` coefficient.
//! - [`verify_nilpotent_basis`] runs the upgrade, checks the result is a
//!   commutative basis, and certifies local nilpotency of every member.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::derivation::{
    BasisReport, Derivation, DerivationError, DerivationFamily, NilpotencyReport,
};
use crate::matrix;
use crate::poly::Poly;
use crate::ring::{RingMode, RingSpec};
use crate::scalar::Scalar;
use crate::uni::{series_gcd_order, uni_antiderivative, uni_extended_gcd, UniError};

#[derive(Debug, Error, PartialEq)]
pub enum StructureError {
    #[error("family must contain the coordinate partial dx{0}")]
    MissingPartial(usize),
    #[error("member {member:?}: coefficient {coeff} depends on x{var}; every coefficient must be a polynomial in the last variable")]
    NotCommutantForm {
        member: String,
        coeff: usize,
        var: usize,
    },
    #[error("family is not pairwise commuting: [{a:?}, {b:?}] does not vanish")]
    NotCommutingFamily { a: String, b: String },
    #[error("every member annihilates the last variable, so the ideal it generates is stable and no simple subset exists")]
    NoUpgradeWithoutLastComponent,
    #[error("family is not simple (stable ideal generated by {generator}); upgrade needs a simple family")]
    NotSimple { generator: Poly },
    #[error("stable-ideal test needs a nonzero generator")]
    ZeroGenerator,
    #[error("slice coordinates need a nonzero scalar dx{last} coefficient, found {found}")]
    SliceLastCoefficientNotScalar { last: usize, found: String },
    #[error("slice coordinates need coefficient {coeff} univariate in the last variable, it depends on x{var}")]
    SliceCoefficientNotUnivariate { coeff: usize, var: usize },
    #[error("series truncation order 1 is degenerate: every variable truncates to zero")]
    DegenerateTruncation,
    #[error("truncated-series family is inconsistent: {0}")]
    SeriesInconsistent(String),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Uni(#[from] UniError),
}

/// Where a derivation fails to be in the commutant form: `coeff` is the
/// 1-based dx-slot, `var` the offending variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantFormWitness {
    pub coeff: usize,
    pub var: usize,
}

/// `None` when every coefficient of `d` is univariate in the last variable;
/// such derivations are exactly the ones commuting with `dx1..dx(n-1)`.
pub fn commutant_form_witness(d: &Derivation) -> Option<CommutantFormWitness> {
    for (idx, c) in d.coeffs().iter().enumerate() {
        if let Some(var) = c.non_last_dependence() {
            return Some(CommutantFormWitness {
                coeff: idx + 1,
                var,
            });
        }
    }
    None
}

pub fn is_commutant_form(d: &Derivation) -> bool {
    commutant_form_witness(d).is_none()
}

/// Outcome of the simplicity decision, always re-verified before it is
/// returned.
#[derive(Clone, Debug, PartialEq)]
pub enum SimplicityCertificate {
    /// `sum bezout[i] * q_i = 1` over the `dxn` coefficients `q_i`.
    Simple { bezout: Vec<Poly> },
    /// A nonzero non-unit generator of an ideal stable under every member.
    NotSimple { stable_generator: Poly },
}

/// Decide simplicity of the ring under the family and certify the verdict.
///
/// Preconditions: every member in commutant form and the partials
/// `dx1..dx(n-1)` present as members (matched exactly). The gcd of the
/// `dxn` coefficients decides: unit gcd means simple with a Bezout
/// certificate, non-unit gcd is itself a stable-ideal generator, and when
/// every `dxn` coefficient vanishes the last variable generates a stable
/// ideal.
pub fn family_simplicity(
    fam: &DerivationFamily,
) -> Result<SimplicityCertificate, StructureError> {
    simplicity_preconditions(fam)?;
    let ring = fam.ring();
    let n = ring.nvars();
    let qs: Vec<Poly> = fam.derivations().map(|d| d.coeff(n).clone()).collect();
    let cert = match ring.mode() {
        RingMode::Polynomial => {
            let (g, rs) = uni_extended_gcd(&qs)?;
            if g.is_zero() {
                SimplicityCertificate::NotSimple {
                    stable_generator: Poly::var(ring, n),
                }
            } else if g.is_unit() {
                SimplicityCertificate::Simple { bezout: rs }
            } else {
                SimplicityCertificate::NotSimple {
                    stable_generator: g,
                }
            }
        }
        RingMode::Series { trunc } => {
            let (g, witness) = series_gcd_order(&qs);
            if g.is_zero() {
                if trunc < 2 {
                    return Err(StructureError::DegenerateTruncation);
                }
                SimplicityCertificate::NotSimple {
                    stable_generator: Poly::var(ring, n),
                }
            } else if g.is_unit() {
                let w = witness.expect("unit gcd has a witness member");
                let inv = qs[w]
                    .series_inverse()
                    .expect("witness has order zero, hence is a unit");
                let mut bezout = vec![Poly::zero(ring); qs.len()];
                bezout[w] = inv;
                SimplicityCertificate::Simple { bezout }
            } else {
                SimplicityCertificate::NotSimple {
                    stable_generator: g,
                }
            }
        }
    };
    verify_certificate(fam, &qs, &cert);
    Ok(cert)
}

fn simplicity_preconditions(fam: &DerivationFamily) -> Result<(), StructureError> {
    for (name, d) in fam.members() {
        if let Some(w) = commutant_form_witness(d) {
            return Err(StructureError::NotCommutantForm {
                member: name.to_string(),
                coeff: w.coeff,
                var: w.var,
            });
        }
    }
    require_partials(fam)
}

fn require_partials(fam: &DerivationFamily) -> Result<(), StructureError> {
    for l in 1..fam.ring().nvars() {
        if !fam.derivations().any(|d| d.as_partial() == Some(l)) {
            return Err(StructureError::MissingPartial(l));
        }
    }
    Ok(())
}

fn verify_certificate(fam: &DerivationFamily, qs: &[Poly], cert: &SimplicityCertificate) {
    match cert {
        SimplicityCertificate::Simple { bezout } => {
            let ring = fam.ring();
            let mut acc = Poly::zero(ring);
            for (r, q) in bezout.iter().zip(qs) {
                acc = &acc + &(r * q);
            }
            assert!(
                acc == Poly::one(ring),
                "internal error: Bezout certificate failed re-verification"
            );
        }
        SimplicityCertificate::NotSimple { stable_generator } => {
            assert!(
                !stable_generator.is_unit() && !stable_generator.is_zero(),
                "internal error: stable generator must be a nonzero non-unit"
            );
            assert!(
                stable_ideal_oracle(fam, stable_generator).expect("generator is nonzero"),
                "internal error: stable-ideal certificate failed re-verification"
            );
        }
    }
}

/// Principal-ideal stability test: does `g` divide `d(g)` for every member?
pub fn stable_ideal_oracle(fam: &DerivationFamily, g: &Poly) -> Result<bool, StructureError> {
    if g.is_zero() {
        return Err(StructureError::ZeroGenerator);
    }
    Ok(fam
        .derivations()
        .all(|d| d.apply(g).div_exact(g).is_some()))
}

/// Affine decomposition of one member in case (b): the member equals
/// `sum_l (lambda * v_l + shifts_l) dx_l + lambda * v_n dx_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseBMember {
    pub lambda: Scalar,
    pub shifts: Vec<Scalar>,
}

/// Structure of a commuting family containing the partials.
#[derive(Clone, Debug)]
pub enum Classification {
    /// Some coefficient depends on a variable other than the last.
    NotCommutantForm {
        member: String,
        witness: CommutantFormWitness,
    },
    /// Two members with a nonvanishing bracket.
    NotCommuting {
        members: (String, String),
        bracket: Derivation,
    },
    /// Case (a): every member has zero `dxn` coefficient; `h_table` holds
    /// the first `n - 1` coefficients of each member, in member order.
    CaseA { h_table: Vec<Vec<Poly>> },
    /// Case (b): every member is `lambda_i * v + drift_i` for one shared
    /// profile `v`, normalized so the pivot member has `lambda = 1` and
    /// zero drift. `pivot` is the index of the first member with nonzero
    /// `dxn` coefficient.
    CaseB {
        v: Vec<Poly>,
        members: Vec<CaseBMember>,
        pivot: usize,
    },
}

/// Rebuild a case-(b) member from the shared profile and its parameters.
pub fn rebuild_case_b_member(ring: RingSpec, v: &[Poly], params: &CaseBMember) -> Derivation {
    let n = ring.nvars();
    let mut coeffs = Vec::with_capacity(n);
    for l in 1..n {
        let shifted = &v[l - 1].scalar_mul(&params.lambda)
            + &Poly::constant(ring, params.shifts[l - 1].clone());
        coeffs.push(shifted);
    }
    coeffs.push(v[n - 1].scalar_mul(&params.lambda));
    Derivation::new(ring, coeffs)
}

/// Rebuild a case-(a) member from its row of the h-table.
pub fn rebuild_case_a_member(ring: RingSpec, h_row: &[Poly]) -> Derivation {
    let mut coeffs = h_row.to_vec();
    coeffs.push(Poly::zero(ring));
    Derivation::new(ring, coeffs)
}

/// Classify a family containing the partials into the two commuting shapes,
/// or report why it commutes with nothing of the sort.
pub fn classify_family(fam: &DerivationFamily) -> Result<Classification, StructureError> {
    require_partials(fam)?;
    let ring = fam.ring();
    let n = ring.nvars();
    for (name, d) in fam.members() {
        if let Some(witness) = commutant_form_witness(d) {
            return Ok(Classification::NotCommutantForm {
                member: name.to_string(),
                witness,
            });
        }
    }
    if let Some((a, b, bracket)) = fam.noncommuting_witness() {
        return Ok(Classification::NotCommuting {
            members: (a.to_string(), b.to_string()),
            bracket,
        });
    }
    let pivot = fam.derivations().position(|d| !d.coeff(n).is_zero());
    let Some(pivot) = pivot else {
        return Ok(Classification::CaseA {
            h_table: fam
                .derivations()
                .map(|d| d.coeffs()[..n - 1].to_vec())
                .collect(),
        });
    };
    let v: Vec<Poly> = fam
        .derivations()
        .nth(pivot)
        .expect("pivot index is in range")
        .coeffs()
        .to_vec();
    let vn = &v[n - 1];
    let mut members = Vec::with_capacity(fam.len());
    for (name, d) in fam.members() {
        let q = d.coeff(n);
        let lambda = if q.is_zero() {
            Scalar::zero()
        } else {
            match q.proportional_to(vn) {
                Some(l) => l,
                None => {
                    return Err(decomposition_failure(
                        ring,
                        name,
                        "dxn coefficient is not a scalar multiple of the pivot's",
                    ))
                }
            }
        };
        let mut shifts = Vec::with_capacity(n - 1);
        for l in 1..n {
            let c = d.coeff(l) - &v[l - 1].scalar_mul(&lambda);
            match c.as_constant() {
                Some(s) => shifts.push(s),
                None => {
                    return Err(decomposition_failure(
                        ring,
                        name,
                        "coefficient differs from the scaled profile by a non-constant",
                    ))
                }
            }
        }
        members.push(CaseBMember { lambda, shifts });
    }
    Ok(Classification::CaseB { v, members, pivot })
}

fn decomposition_failure(ring: RingSpec, member: &str, what: &str) -> StructureError {
    if ring.is_series() {
        // brackets vanish only modulo the truncation, so commuting
        // representatives need not decompose; report it instead of lying
        StructureError::SeriesInconsistent(format!("member {member:?}: {what}"))
    } else {
        // exact commuting families always decompose; this is a bug
        panic!("internal error: member {member:?}: {what} in polynomial mode")
    }
}

/// Shrink a simple commuting family to the n-member simple subset: the
/// partials plus the pivot member.
pub fn simplicity_upgrade(
    fam: &DerivationFamily,
) -> Result<DerivationFamily, StructureError> {
    let ring = fam.ring();
    let n = ring.nvars();
    let pivot = match classify_family(fam)? {
        Classification::CaseA { .. } => {
            return Err(StructureError::NoUpgradeWithoutLastComponent)
        }
        Classification::NotCommutantForm { member, witness } => {
            return Err(StructureError::NotCommutantForm {
                member,
                coeff: witness.coeff,
                var: witness.var,
            })
        }
        Classification::NotCommuting { members, .. } => {
            return Err(StructureError::NotCommutingFamily {
                a: members.0,
                b: members.1,
            })
        }
        Classification::CaseB { v, pivot, .. } => {
            match family_simplicity(fam)? {
                SimplicityCertificate::Simple { .. } => {}
                SimplicityCertificate::NotSimple { stable_generator } => {
                    return Err(StructureError::NotSimple {
                        generator: stable_generator,
                    })
                }
            }
            // simplicity forces an invertible pivot dxn coefficient: a
            // nonzero scalar for polynomials, a unit for truncated series
            let vn = &v[n - 1];
            match ring.mode() {
                RingMode::Polynomial => assert!(
                    vn.as_constant().map(|c| !c.is_zero()).unwrap_or(false),
                    "internal error: simple polynomial family with non-scalar pivot coefficient"
                ),
                RingMode::Series { .. } => assert!(
                    vn.is_unit(),
                    "internal error: simple series family with non-unit pivot coefficient"
                ),
            }
            pivot
        }
    };
    let mut members: Vec<(String, Derivation)> = Vec::with_capacity(n);
    for l in 1..n {
        let (name, d) = fam
            .members()
            .find(|(_, d)| d.as_partial() == Some(l))
            .expect("partials verified by the preconditions");
        members.push((name.to_string(), d.clone()));
    }
    let (pivot_name, pivot_der) = fam
        .members()
        .nth(pivot)
        .expect("pivot index is in range");
    members.push((pivot_name.to_string(), pivot_der.clone()));
    let subset = DerivationFamily::new(ring, members)?;
    match family_simplicity(&subset) {
        Ok(SimplicityCertificate::Simple { .. }) => {}
        other => panic!("internal error: upgraded family must remain simple, got {other:?}"),
    }
    Ok(subset)
}

/// Coordinates `f1..fn` with `d(fn) = 1` and `d(fl) = 0` for `l < n`.
#[derive(Clone, Debug)]
pub struct SliceCoordinates {
    pub coords: Vec<Poly>,
    pub jacobian_det: Poly,
}

/// Build slice coordinates for a derivation of the form
/// `sum_l a_l(x_n) dx_l + beta dx_n` with `beta` a nonzero scalar:
/// `f_n = x_n / beta` and `f_l = x_l - F_l` where `F_l` is the
/// antiderivative of `a_l / beta`. The defining identities and the Jacobian
/// determinant are re-verified before returning (in series mode the
/// identity `d(f_l) = 0` holds modulo degree `trunc - 1`, the exactness
/// boundary of the truncated antiderivative).
pub fn slice_coordinates(d: &Derivation) -> Result<SliceCoordinates, StructureError> {
    let ring = d.ring();
    let n = ring.nvars();
    if let Some(trunc) = ring.truncation() {
        if trunc < 2 {
            return Err(StructureError::DegenerateTruncation);
        }
    }
    let beta = d
        .coeff(n)
        .as_constant()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| StructureError::SliceLastCoefficientNotScalar {
            last: n,
            found: d.coeff(n).to_string(),
        })?;
    for l in 1..n {
        if let Some(var) = d.coeff(l).non_last_dependence() {
            return Err(StructureError::SliceCoefficientNotUnivariate { coeff: l, var });
        }
    }
    let inv_beta = Scalar::one() / beta;
    let mut coords = Vec::with_capacity(n);
    for l in 1..n {
        let anti = uni_antiderivative(&d.coeff(l).scalar_mul(&inv_beta))?;
        coords.push(&Poly::var(ring, l) - &anti);
    }
    coords.push(Poly::var(ring, n).scalar_mul(&inv_beta));

    let zero_check_order = ring.truncation().map(|t| t - 1);
    for (i, f) in coords.iter().enumerate() {
        let image = d.apply(f);
        if i + 1 == n {
            assert!(
                image == Poly::one(ring),
                "internal error: slice coordinate f{n} must map to 1"
            );
        } else {
            let vanishes = match zero_check_order {
                None => image.is_zero(),
                Some(order) => image.truncated(order).is_zero(),
            };
            assert!(
                vanishes,
                "internal error: slice coordinate f{} must map to 0",
                i + 1
            );
        }
    }
    let rows: Vec<Vec<Poly>> = coords
        .iter()
        .map(|f| (1..=n).map(|j| f.partial_derivative(j)).collect())
        .collect();
    let jacobian_det = matrix::determinant(ring, &rows);
    assert_eq!(
        jacobian_det.as_constant(),
        Some(inv_beta),
        "internal error: slice Jacobian determinant must be the inverse of the dxn coefficient"
    );
    Ok(SliceCoordinates {
        coords,
        jacobian_det,
    })
}

/// Combined verdict of [`verify_nilpotent_basis`].
#[derive(Debug)]
pub struct NilpotentBasisReport {
    pub subset: DerivationFamily,
    pub basis: BasisReport,
    pub budget: u32,
    /// Per member of the subset, in order.
    pub nilpotency: Vec<(String, NilpotencyReport)>,
}

impl NilpotentBasisReport {
    pub fn certified(&self) -> bool {
        self.basis.is_basis
            && self.basis.pairwise_commuting
            && self.nilpotency.iter().all(|(_, r)| r.all_nilpotent())
    }
}

/// Upgrade the family, check the result is a commutative basis, and verify
/// local nilpotency of every member within the budget (default
/// `2 + n * (1 + max coefficient degree)` over the upgraded members).
pub fn verify_nilpotent_basis(
    fam: &DerivationFamily,
    budget: Option<u32>,
) -> Result<NilpotentBasisReport, StructureError> {
    if fam.ring().is_series() {
        return Err(DerivationError::NilpotencyRequiresPolynomialMode.into());
    }
    let subset = simplicity_upgrade(fam)?;
    let basis = subset.basis_check()?;
    let budget = budget.unwrap_or_else(|| subset.default_nilpotency_budget());
    let nilpotency = subset
        .members()
        .map(|(name, d)| Ok((name.to_string(), d.local_nilpotency(budget)?)))
        .collect::<Result<Vec<_>, DerivationError>>()?;
    Ok(NilpotentBasisReport {
        subset,
        basis,
        budget,
        nilpotency,
    })
}
