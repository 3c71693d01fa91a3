//! Seeded generators shared by the integration suites.

#![allow(dead_code)]

pub mod golden;

use derlab::{
    rebuild_case_b_member, CaseBMember, Derivation, DerivationFamily, Monomial, Poly, RingSpec,
    Scalar,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_scalar(rng: &mut StdRng) -> Scalar {
    Scalar::new(
        BigInt::from(rng.gen_range(-5i64..=5)),
        BigInt::from(rng.gen_range(1i64..=3)),
    )
}

pub fn rand_nonzero_scalar(rng: &mut StdRng) -> Scalar {
    loop {
        let s = rand_scalar(rng);
        if !num_traits::Zero::is_zero(&s) {
            return s;
        }
    }
}

/// Random polynomial in the last variable only, degree at most `max_deg`.
pub fn rand_uni_poly(rng: &mut StdRng, ring: RingSpec, max_deg: u32) -> Poly {
    let n = ring.nvars();
    let terms = rng.gen_range(0..=3);
    let mut acc = Poly::zero(ring);
    for _ in 0..terms {
        let mut exps = vec![0; n];
        exps[n - 1] = rng.gen_range(0..=max_deg);
        acc = &acc + &Poly::monomial(ring, Monomial::from_exps(exps), rand_scalar(rng));
    }
    acc
}

/// Random polynomial over all variables with per-variable exponent at most
/// `max_exp`.
pub fn rand_poly(rng: &mut StdRng, ring: RingSpec, max_exp: u32, max_terms: usize) -> Poly {
    let n = ring.nvars();
    let terms = rng.gen_range(0..=max_terms);
    let mut acc = Poly::zero(ring);
    for _ in 0..terms {
        let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        acc = &acc + &Poly::monomial(ring, Monomial::from_exps(exps), rand_scalar(rng));
    }
    acc
}

pub fn rand_general_derivation(rng: &mut StdRng, ring: RingSpec) -> Derivation {
    let coeffs = (0..ring.nvars())
        .map(|_| rand_poly(rng, ring, 2, 3))
        .collect();
    Derivation::new(ring, coeffs)
}

pub fn rand_commutant_derivation(rng: &mut StdRng, ring: RingSpec, max_deg: u32) -> Derivation {
    let coeffs = (0..ring.nvars())
        .map(|_| rand_uni_poly(rng, ring, max_deg))
        .collect();
    Derivation::new(ring, coeffs)
}

pub fn partial_members(ring: RingSpec) -> Vec<(String, Derivation)> {
    (1..ring.nvars())
        .map(|l| (format!("p{l}"), Derivation::partial(ring, l)))
        .collect()
}

/// Partials plus commutant-form members; `force_factor` multiplies every
/// extra member's dxn coefficient, which forces non-simplicity when it is
/// not a unit.
pub fn rand_structured_family(
    rng: &mut StdRng,
    ring: RingSpec,
    extras: usize,
    force_factor: Option<&Poly>,
) -> DerivationFamily {
    let n = ring.nvars();
    let mut members = partial_members(ring);
    for i in 0..extras {
        let mut coeffs: Vec<Poly> = (0..n - 1).map(|_| rand_uni_poly(rng, ring, 3)).collect();
        let q = rand_uni_poly(rng, ring, 3);
        let q = match force_factor {
            Some(f) => f * &q,
            None => q,
        };
        coeffs.push(q);
        members.push((format!("m{i}"), Derivation::new(ring, coeffs)));
    }
    DerivationFamily::new(ring, members).expect("generated names are unique")
}

/// Case-(b) data: a shared profile `v` with scalar last entry, plus members
/// `lambda * v + drift`. At least one lambda is nonzero, so the family is
/// simple with the first such member as pivot candidate.
pub struct CaseBData {
    pub family: DerivationFamily,
    pub v: Vec<Poly>,
    pub params: Vec<CaseBMember>,
}

pub fn rand_case_b_family(rng: &mut StdRng, n: usize, max_deg: u32) -> CaseBData {
    let ring = RingSpec::polynomial(n);
    let mut v: Vec<Poly> = (0..n - 1).map(|_| rand_uni_poly(rng, ring, max_deg)).collect();
    v.push(Poly::constant(ring, rand_nonzero_scalar(rng)));
    let mut members = partial_members(ring);
    let mut params = Vec::new();
    let extras = rng.gen_range(1..=3);
    for i in 0..extras {
        let lambda = if i == 0 {
            rand_nonzero_scalar(rng)
        } else {
            rand_scalar(rng)
        };
        let shifts: Vec<Scalar> = (0..n - 1).map(|_| rand_scalar(rng)).collect();
        let p = CaseBMember { lambda, shifts };
        members.push((format!("m{i}"), rebuild_case_b_member(ring, &v, &p)));
        params.push(p);
    }
    CaseBData {
        family: DerivationFamily::new(ring, members).expect("generated names are unique"),
        v,
        params,
    }
}

pub fn rand_case_a_family(rng: &mut StdRng, n: usize) -> DerivationFamily {
    let ring = RingSpec::polynomial(n);
    let mut members = partial_members(ring);
    let extras = rng.gen_range(1..=3);
    for i in 0..extras {
        let mut coeffs: Vec<Poly> = (0..n - 1).map(|_| rand_uni_poly(rng, ring, 3)).collect();
        coeffs.push(Poly::zero(ring));
        members.push((format!("m{i}"), Derivation::new(ring, coeffs)));
    }
    DerivationFamily::new(ring, members).expect("generated names are unique")
}

/// A case-(b) family with two nonzero-lambda members, then a perturbation
/// of the second one by a nonconstant term in a dx_l slot (l < n). The
/// bracket of the two members is exactly `lambda_0 * beta * P' * dx_l`,
/// which is nonzero by construction.
pub fn rand_perturbed_family(rng: &mut StdRng, n: usize) -> DerivationFamily {
    let ring = RingSpec::polynomial(n);
    let mut v: Vec<Poly> = (0..n - 1).map(|_| rand_uni_poly(rng, ring, 3)).collect();
    let beta = rand_nonzero_scalar(rng);
    v.push(Poly::constant(ring, beta));
    let mut members = partial_members(ring);
    for i in 0..2 {
        let p = CaseBMember {
            lambda: rand_nonzero_scalar(rng),
            shifts: (0..n - 1).map(|_| rand_scalar(rng)).collect(),
        };
        members.push((format!("m{i}"), rebuild_case_b_member(ring, &v, &p)));
    }
    // perturb the last member: add c * x_n^k (k >= 1) to one early slot
    let slot = rng.gen_range(1..n);
    let k = rng.gen_range(1..=3u32);
    let mut exps = vec![0; n];
    exps[n - 1] = k;
    let bump = Poly::monomial(ring, Monomial::from_exps(exps), rand_nonzero_scalar(rng));
    let last = members.len() - 1;
    let (name, d) = members[last].clone();
    let mut coeffs = d.coeffs().to_vec();
    coeffs[slot - 1] = &coeffs[slot - 1] + &bump;
    members[last] = (name, Derivation::new(ring, coeffs));
    DerivationFamily::new(ring, members).expect("generated names are unique")
}
