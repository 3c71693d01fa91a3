//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! All checks are exact; there are no tolerances anywhere.

mod common;

use common::*;
use derlab::{
    classify_family, family_simplicity, is_commutant_form, parse_derivation, parse_poly,
    rebuild_case_a_member, rebuild_case_b_member, simplicity_upgrade, slice_coordinates,
    stable_ideal_oracle, verify_nilpotent_basis, Classification, Derivation, DerivationFamily,
    NilpotencyVerdict, Poly, RingSpec, Scalar, SimplicityCertificate, StructureError,
};
use num_traits::One;

fn worked_family() -> DerivationFamily {
    let ring = RingSpec::polynomial(3);
    DerivationFamily::new(
        ring,
        vec![
            ("d1".into(), Derivation::partial(ring, 1)),
            ("d2".into(), Derivation::partial(ring, 2)),
            (
                "d3".into(),
                parse_derivation("(x3^2)*dx1 + x3*dx2 + 2*dx3", ring).unwrap(),
            ),
        ],
    )
    .unwrap()
}

/// The case-(b) corpus shared by criteria 3 through 6.
fn case_b_corpus() -> Vec<CaseBData> {
    let mut r = rng(0xC3_5EED);
    (0..100)
        .map(|i| rand_case_b_family(&mut r, 2 + (i % 2), 4))
        .collect()
}

#[test]
fn criterion_1_commutant_form_equivalence() {
    let mut r = rng(0xA1_5EED);
    for i in 0..200usize {
        let n = 2 + (i % 2);
        let ring = RingSpec::polynomial(n);
        let d = if (i / 2) % 2 == 0 {
            rand_general_derivation(&mut r, ring)
        } else {
            rand_commutant_derivation(&mut r, ring, 3)
        };
        let by_form = is_commutant_form(&d);
        let by_brackets =
            (1..n).all(|j| Derivation::partial(ring, j).bracket(&d).is_zero());
        assert_eq!(by_form, by_brackets, "disagreement on case {i}: {d}");
    }
    println!("criterion 1 (commutant form = vanishing brackets, 200 derivations): PASS");
}

#[test]
fn criterion_2_simplicity_certificates() {
    let mut r = rng(0xB2_5EED);
    let mut simple_seen = 0;
    let mut non_simple_seen = 0;
    for i in 0..100usize {
        let n = 2 + (i % 2);
        let ring = RingSpec::polynomial(n);
        let extras = 2 + (i % 2);
        let fam = match i % 3 {
            0 => rand_structured_family(&mut r, ring, extras, None),
            1 => {
                let factor = &Poly::var(ring, n) + &Poly::one(ring);
                rand_structured_family(&mut r, ring, extras, Some(&factor))
            }
            _ => {
                let factor = Poly::var(ring, n);
                rand_structured_family(&mut r, ring, extras, Some(&factor))
            }
        };
        match family_simplicity(&fam).expect("structured families satisfy the preconditions") {
            SimplicityCertificate::Simple { bezout } => {
                simple_seen += 1;
                let mut acc = Poly::zero(ring);
                for (rc, d) in bezout.iter().zip(fam.derivations()) {
                    acc = &acc + &(rc * d.coeff(n));
                }
                assert_eq!(acc, Poly::one(ring), "Bezout expansion on case {i}");
            }
            SimplicityCertificate::NotSimple { stable_generator } => {
                non_simple_seen += 1;
                assert!(!stable_generator.is_unit() && !stable_generator.is_zero());
                assert!(
                    stable_ideal_oracle(&fam, &stable_generator).unwrap(),
                    "stable-ideal oracle on case {i}"
                );
            }
        }
    }
    assert!(simple_seen > 0 && non_simple_seen > 0, "both verdicts exercised");
    println!(
        "criterion 2 (certified simplicity verdicts, 100 families, {simple_seen} simple / {non_simple_seen} not): PASS"
    );
}

#[test]
fn criterion_3_classification_round_trips() {
    for (i, data) in case_b_corpus().iter().enumerate() {
        let ring = data.family.ring();
        match classify_family(&data.family).unwrap() {
            Classification::CaseB { v, members, .. } => {
                for ((_, d), params) in data.family.members().zip(&members) {
                    assert_eq!(
                        &rebuild_case_b_member(ring, &v, params),
                        d,
                        "case-(b) reconstruction on family {i}"
                    );
                }
            }
            other => panic!("family {i} should classify as case (b), got {other:?}"),
        }
    }
    let mut r = rng(0xC4_5EED);
    for i in 0..50usize {
        let fam = rand_case_a_family(&mut r, 2 + (i % 2));
        let ring = fam.ring();
        match classify_family(&fam).unwrap() {
            Classification::CaseA { h_table } => {
                for ((_, d), row) in fam.members().zip(&h_table) {
                    assert_eq!(
                        &rebuild_case_a_member(ring, row),
                        d,
                        "case-(a) reconstruction on family {i}"
                    );
                }
            }
            other => panic!("family {i} should classify as case (a), got {other:?}"),
        }
    }
    let mut r = rng(0xC5_5EED);
    for i in 0..50usize {
        let fam = rand_perturbed_family(&mut r, 2 + (i % 2));
        match classify_family(&fam).unwrap() {
            Classification::NotCommuting { bracket, .. } => {
                assert!(!bracket.is_zero(), "witness bracket on family {i}");
            }
            other => panic!("perturbed family {i} should fail commutation, got {other:?}"),
        }
    }
    println!("criterion 3 (classification round-trips, 100 + 50 + 50 families): PASS");
}

#[test]
fn criterion_4_slice_coordinates() {
    for (i, data) in case_b_corpus().iter().enumerate() {
        let subset = simplicity_upgrade(&data.family).unwrap();
        let ring = subset.ring();
        let n = ring.nvars();
        let pivot = subset.derivations().last().unwrap();
        let slice = slice_coordinates(pivot).unwrap();
        assert_eq!(
            pivot.apply(&slice.coords[n - 1]),
            Poly::one(ring),
            "d(fn) = 1 on family {i}"
        );
        for (l, f) in slice.coords[..n - 1].iter().enumerate() {
            assert!(
                pivot.apply(f).is_zero(),
                "d(f{}) = 0 on family {i}",
                l + 1
            );
        }
        let beta = pivot.coeff(n).as_constant().expect("scalar last coefficient");
        assert_eq!(
            slice.jacobian_det.as_constant(),
            Some(Scalar::one() / beta),
            "Jacobian determinant on family {i}"
        );
    }
    // the worked example, byte-exact
    let d = parse_derivation("(x3^2)*dx1 + x3*dx2 + 2*dx3", RingSpec::polynomial(3)).unwrap();
    let slice = slice_coordinates(&d).unwrap();
    let rendered: Vec<String> = slice.coords.iter().map(|f| f.to_string()).collect();
    assert_eq!(
        rendered,
        vec!["x1 - 1/6*x3^3", "x2 - 1/4*x3^2", "1/2*x3"]
    );
    println!("criterion 4 (slice identities over 100 upgraded families + worked example): PASS");
}

#[test]
fn criterion_5_commutative_basis_and_divergence() {
    for (i, data) in case_b_corpus().iter().enumerate() {
        let subset = simplicity_upgrade(&data.family).unwrap();
        let basis = subset.basis_check().unwrap();
        assert!(basis.is_basis, "unit determinant on family {i}");
        assert!(basis.pairwise_commuting, "commuting subset on family {i}");
        for d in subset.derivations() {
            assert!(d.divergence().is_zero(), "special member on family {i}");
        }
    }
    println!("criterion 5 (upgraded families are special commutative bases, 100 families): PASS");
}

#[test]
fn criterion_6_nilpotent_bases() {
    for (i, data) in case_b_corpus().iter().enumerate() {
        let report = verify_nilpotent_basis(&data.family, None).unwrap();
        assert_eq!(report.budget, report.subset.default_nilpotency_budget());
        assert!(
            report.certified(),
            "family {i} must certify nilpotent within budget {}",
            report.budget
        );
    }
    let report = verify_nilpotent_basis(&worked_family(), None).unwrap();
    assert!(report.certified());
    let (_, d3_report) = &report.nilpotency[2];
    assert_eq!(
        d3_report.verdicts,
        vec![
            NilpotencyVerdict::Nilpotent { order: 4 },
            NilpotencyVerdict::Nilpotent { order: 3 },
            NilpotencyVerdict::Nilpotent { order: 2 },
        ]
    );
    println!("criterion 6 (nilpotency certified within the default budget, 100 families): PASS");
}

#[test]
fn criterion_7_series_mode_contrast() {
    let texts = [("d1", "dx1"), ("u", "(1 + x2)*dx2")];
    let build = |ring: RingSpec| {
        DerivationFamily::new(
            ring,
            texts
                .iter()
                .map(|(n, t)| (n.to_string(), parse_derivation(t, ring).unwrap()))
                .collect(),
        )
        .unwrap()
    };
    let poly_ring = RingSpec::polynomial(2);
    let poly_fam = build(poly_ring);
    match family_simplicity(&poly_fam).unwrap() {
        SimplicityCertificate::NotSimple { stable_generator } => {
            assert_eq!(stable_generator, parse_poly("1 + x2", poly_ring).unwrap());
            assert!(stable_ideal_oracle(&poly_fam, &stable_generator).unwrap());
        }
        other => panic!("polynomial mode must be non-simple, got {other:?}"),
    }
    let series_ring = RingSpec::series(2, 8);
    let series_fam = build(series_ring);
    match family_simplicity(&series_fam).unwrap() {
        SimplicityCertificate::Simple { bezout } => {
            let mut acc = Poly::zero(series_ring);
            for (rc, d) in bezout.iter().zip(series_fam.derivations()) {
                acc = &acc + &(rc * d.coeff(2));
            }
            assert_eq!(acc, Poly::one(series_ring));
        }
        other => panic!("series mode must be simple, got {other:?}"),
    }
    println!("criterion 7 (polynomial/series contrast for 1 + x2, certified): PASS");
}

#[test]
fn criterion_8_counterexample_regression() {
    let ring = RingSpec::polynomial(2);
    let d = parse_derivation("x2*dx1 + dx2", ring).unwrap();
    let fam = DerivationFamily::new(ring, vec![("d".into(), d)]).unwrap();
    assert_eq!(
        family_simplicity(&fam).unwrap_err(),
        StructureError::MissingPartial(1)
    );
    let g = parse_poly("x1 - x2^2/2", ring).unwrap();
    assert!(stable_ideal_oracle(&fam, &g).unwrap());

    // the CLI maps the precondition violation to exit code 2
    let session = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/counterexample.session");
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_derlab"))
        .arg("simple")
        .arg(&session)
        .args(["--family", "C"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("dx1"));
    println!("criterion 8 (missing-partials counterexample rejected, ideal confirmed stable): PASS");
}

#[test]
fn criterion_9_cli_round_trips_and_golden_corpus() {
    let mut r = rng(0xD9_5EED);
    let rings = [
        RingSpec::polynomial(1),
        RingSpec::polynomial(2),
        RingSpec::polynomial(3),
        RingSpec::series(2, 5),
        RingSpec::series(3, 4),
    ];
    for i in 0..500usize {
        let ring = rings[i % rings.len()];
        let p = rand_poly(&mut r, ring, 3, 5);
        let back = parse_poly(&p.to_string(), ring)
            .unwrap_or_else(|e| panic!("reparse failure on {:?}: {e}", p.to_string()));
        assert_eq!(back, p, "round trip on case {i}");
    }
    for i in 0..200usize {
        let ring = rings[i % rings.len()];
        let d = rand_general_derivation(&mut r, ring);
        let back = parse_derivation(&d.to_string(), ring)
            .unwrap_or_else(|e| panic!("reparse failure on {:?}: {e}", d.to_string()));
        assert_eq!(back, d, "derivation round trip on case {i}");
    }
    let (cases, sessions) = golden::run_all();
    assert!(sessions >= 10, "golden corpus spans at least 10 session files");
    println!(
        "criterion 9 (500 + 200 print/parse round trips; golden corpus {cases} invocations over {sessions} sessions): PASS"
    );
}
