//! Command reports in matching text and JSON forms.
//!
//! Every verdict-bearing command produces a [`Report`] whose text and JSON
//! renderings carry the same verdict; certificates are re-verified by the
//! library before they reach a report. Exit codes follow the verdict:
//! 0 affirmative, 1 negative, 2 for usage or precondition errors.

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{
    Derivation, DerivationError, DerivationFamily, NilpotencyReport, NilpotencyVerdict,
};
use crate::session::Session;
use crate::structure::{
    classify_family, family_simplicity, simplicity_upgrade, slice_coordinates,
    verify_nilpotent_basis, Classification, SimplicityCertificate, StructureError,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Structure(#[from] StructureError),
    #[error("{0}")]
    Derivation(#[from] DerivationError),
}

/// What the CLI was asked to do, after argument resolution.
#[derive(Debug, Clone)]
pub enum CommandSpec {
    Parse,
    Bracket { a: String, b: String },
    Commutes { a: String, b: String },
    Divergence { der: String },
    Classify { family: String },
    Simple { family: String },
    Upgrade { family: String },
    Slice { der: String },
    NilpotentDer { der: String, budget: Option<u32> },
    NilpotentFamily { family: String, budget: Option<u32> },
    Basis { family: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Affirmative,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// One command's result. Serializes to the JSON report directly; the text
/// rendering is the header lines plus the payload lines.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bezout: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_ideal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_table: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence: Option<String>,
    #[serde(skip)]
    pub outcome: Outcome,
    #[serde(skip)]
    header: Vec<String>,
    #[serde(skip)]
    body: Vec<String>,
}

impl Report {
    fn new(command: &str, verdict: &str, outcome: Outcome) -> Self {
        Report {
            command: command.to_string(),
            verdict: verdict.to_string(),
            bezout: None,
            stable_ideal: None,
            case: None,
            v: None,
            lambda: None,
            c: None,
            h_table: None,
            subset: None,
            slice: None,
            nilpotency: None,
            determinant: None,
            bracket: None,
            divergence: None,
            outcome,
            header: Vec::new(),
            body: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Affirmative => 0,
            Outcome::Negative => 1,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string(self).expect("report serialization cannot fail");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut lines = Vec::with_capacity(2 + self.header.len() + self.body.len());
                lines.push(format!("command: {}", self.command));
                lines.extend(self.header.iter().cloned());
                lines.push(format!("verdict: {}", self.verdict));
                lines.extend(self.body.iter().cloned());
                let mut s = lines.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Serialize)]
struct GeneratorVerdict {
    generator: String,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    earlier: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    later: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<u32>,
}

fn generator_verdicts(report: &NilpotencyReport) -> Vec<GeneratorVerdict> {
    report
        .verdicts
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let generator = format!("x{}", i + 1);
            match v {
                NilpotencyVerdict::Nilpotent { order } => GeneratorVerdict {
                    generator,
                    verdict: "nilpotent".into(),
                    order: Some(*order),
                    earlier: None,
                    later: None,
                    factor: None,
                    budget: None,
                },
                NilpotencyVerdict::NotNilpotent {
                    earlier,
                    later,
                    factor,
                } => GeneratorVerdict {
                    generator,
                    verdict: "not_nilpotent".into(),
                    order: None,
                    earlier: Some(*earlier),
                    later: Some(*later),
                    factor: Some(factor.to_string()),
                    budget: None,
                },
                NilpotencyVerdict::Unknown { budget } => GeneratorVerdict {
                    generator,
                    verdict: "unknown".into(),
                    order: None,
                    earlier: None,
                    later: None,
                    factor: None,
                    budget: Some(*budget),
                },
            }
        })
        .collect()
}

fn generator_lines(report: &NilpotencyReport) -> Vec<String> {
    report
        .verdicts
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let g = format!("x{}", i + 1);
            match v {
                NilpotencyVerdict::Nilpotent { order } => {
                    format!("{g}: nilpotent, order {order}")
                }
                NilpotencyVerdict::NotNilpotent {
                    earlier,
                    later,
                    factor,
                } => format!("{g}: not nilpotent, d^{later}({g}) = {factor} * d^{earlier}({g})"),
                NilpotencyVerdict::Unknown { budget } => {
                    format!("{g}: undecided within budget {budget}")
                }
            }
        })
        .collect()
}

fn member_summary(name: &str, report: &NilpotencyReport) -> String {
    if report.all_nilpotent() {
        let orders: Vec<String> = report
            .verdicts
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                NilpotencyVerdict::Nilpotent { order } => format!("x{} order {order}", i + 1),
                _ => unreachable!(),
            })
            .collect();
        format!("{name}: nilpotent ({})", orders.join(", "))
    } else {
        let detail = report
            .verdicts
            .iter()
            .enumerate()
            .find_map(|(i, v)| match v {
                NilpotencyVerdict::Nilpotent { .. } => None,
                NilpotencyVerdict::NotNilpotent { earlier, later, factor } => Some(format!(
                    "not nilpotent on x{} (d^{later} = {factor} * d^{earlier})",
                    i + 1
                )),
                NilpotencyVerdict::Unknown { budget } => {
                    Some(format!("undecided on x{} within budget {budget}", i + 1))
                }
            })
            .expect("a non-nilpotent report has a failing generator");
        format!("{name}: {detail}")
    }
}

fn resolve_der<'a>(session: &'a Session, name: &str) -> Result<&'a Derivation, CliError> {
    session
        .derivation(name)
        .ok_or_else(|| CliError::Usage(format!("unknown derivation name {name:?}")))
}

fn resolve_family<'a>(
    session: &'a Session,
    name: &str,
) -> Result<&'a DerivationFamily, CliError> {
    session
        .family(name)
        .ok_or_else(|| CliError::Usage(format!("unknown family name {name:?}")))
}

/// Run a resolved command against a session and build its report.
pub fn run_command(session: &Session, spec: &CommandSpec) -> Result<Report, CliError> {
    match spec {
        CommandSpec::Parse => Ok(report_parse(session)),
        CommandSpec::Bracket { a, b } => {
            let da = resolve_der(session, a)?;
            let db = resolve_der(session, b)?;
            let bracket = da.bracket(db);
            let mut r = Report::new("bracket", "ok", Outcome::Affirmative);
            r.header.push(format!("derivations: {a}, {b}"));
            r.body.push(format!("bracket = {bracket}"));
            r.bracket = Some(bracket.to_string());
            Ok(r)
        }
        CommandSpec::Commutes { a, b } => {
            let da = resolve_der(session, a)?;
            let db = resolve_der(session, b)?;
            let bracket = da.bracket(db);
            let mut r = if bracket.is_zero() {
                Report::new("commutes", "commuting", Outcome::Affirmative)
            } else {
                let mut r = Report::new("commutes", "not_commuting", Outcome::Negative);
                r.body.push(format!("bracket = {bracket}"));
                r.bracket = Some(bracket.to_string());
                r
            };
            r.header.push(format!("derivations: {a}, {b}"));
            Ok(r)
        }
        CommandSpec::Divergence { der } => {
            let d = resolve_der(session, der)?;
            let div = d.divergence();
            let verdict = if div.is_zero() { "special" } else { "not_special" };
            let outcome = if div.is_zero() {
                Outcome::Affirmative
            } else {
                Outcome::Negative
            };
            let mut r = Report::new("divergence", verdict, outcome);
            r.header.push(format!("derivation: {der}"));
            r.body.push(format!("divergence = {div}"));
            r.divergence = Some(div.to_string());
            Ok(r)
        }
        CommandSpec::Classify { family } => {
            let fam = resolve_family(session, family)?;
            let classification = classify_family(fam)?;
            Ok(report_classification(family, fam, &classification))
        }
        CommandSpec::Simple { family } => {
            let fam = resolve_family(session, family)?;
            let cert = family_simplicity(fam)?;
            Ok(report_simplicity(family, &cert))
        }
        CommandSpec::Upgrade { family } => {
            let fam = resolve_family(session, family)?;
            let subset = simplicity_upgrade(fam)?;
            let mut r = Report::new("upgrade", "upgraded", Outcome::Affirmative);
            r.header.push(format!("family: {family}"));
            let names: Vec<String> = subset.names().iter().map(|s| s.to_string()).collect();
            r.body.push(format!("subset: {}", names.join(", ")));
            for (name, d) in subset.members() {
                r.body.push(format!("{name} = {d}"));
            }
            r.subset = Some(names);
            Ok(r)
        }
        CommandSpec::Slice { der } => {
            let d = resolve_der(session, der)?;
            let slice = slice_coordinates(d)?;
            let mut r = Report::new("slice", "ok", Outcome::Affirmative);
            r.header.push(format!("derivation: {der}"));
            for (i, f) in slice.coords.iter().enumerate() {
                r.body.push(format!("f{} = {f}", i + 1));
            }
            r.slice = Some(slice.coords.iter().map(|f| f.to_string()).collect());
            r.determinant = Some(slice.jacobian_det.to_string());
            Ok(r)
        }
        CommandSpec::NilpotentDer { der, budget } => {
            let d = resolve_der(session, der)?;
            let budget = budget.unwrap_or_else(|| d.default_nilpotency_budget());
            let report = d.local_nilpotency(budget)?;
            let verdict = if report.all_nilpotent() {
                "nilpotent"
            } else if report
                .verdicts
                .iter()
                .any(|v| matches!(v, NilpotencyVerdict::NotNilpotent { .. }))
            {
                "not_nilpotent"
            } else {
                "unknown"
            };
            let outcome = if report.all_nilpotent() {
                Outcome::Affirmative
            } else {
                Outcome::Negative
            };
            let mut r = Report::new("nilpotent", verdict, outcome);
            r.header.push(format!("derivation: {der}"));
            r.header.push(format!("budget: {budget}"));
            r.body.extend(generator_lines(&report));
            r.nilpotency = Some(
                serde_json::to_value(generator_verdicts(&report))
                    .expect("verdict serialization cannot fail"),
            );
            Ok(r)
        }
        CommandSpec::NilpotentFamily { family, budget } => {
            let fam = resolve_family(session, family)?;
            let report = verify_nilpotent_basis(fam, *budget)?;
            let verdict = if report.certified() {
                "certified"
            } else {
                "not_certified"
            };
            let outcome = if report.certified() {
                Outcome::Affirmative
            } else {
                Outcome::Negative
            };
            let mut r = Report::new("nilpotent", verdict, outcome);
            r.header.push(format!("family: {family}"));
            r.header.push(format!("budget: {}", report.budget));
            let names: Vec<String> = report.subset.names().iter().map(|s| s.to_string()).collect();
            r.body.push(format!("subset: {}", names.join(", ")));
            r.body.push(format!("determinant = {}", report.basis.det));
            for (name, nil) in &report.nilpotency {
                r.body.push(member_summary(name, nil));
            }
            #[derive(Serialize)]
            struct MemberVerdicts {
                member: String,
                generators: Vec<GeneratorVerdict>,
            }
            let members: Vec<MemberVerdicts> = report
                .nilpotency
                .iter()
                .map(|(name, nil)| MemberVerdicts {
                    member: name.clone(),
                    generators: generator_verdicts(nil),
                })
                .collect();
            r.subset = Some(names);
            r.determinant = Some(report.basis.det.to_string());
            r.nilpotency = Some(
                serde_json::to_value(members).expect("verdict serialization cannot fail"),
            );
            Ok(r)
        }
        CommandSpec::Basis { family } => {
            let fam = resolve_family(session, family)?;
            let basis = fam.basis_check()?;
            let (verdict, outcome) = if basis.is_basis && basis.pairwise_commuting {
                ("commutative_basis", Outcome::Affirmative)
            } else if !basis.is_basis {
                ("not_basis", Outcome::Negative)
            } else {
                ("basis_not_commuting", Outcome::Negative)
            };
            let mut r = Report::new("basis", verdict, outcome);
            r.header.push(format!("family: {family}"));
            r.body.push(format!("determinant = {}", basis.det));
            r.determinant = Some(basis.det.to_string());
            if let Some((a, b, bracket)) = &basis.noncommuting_witness {
                r.body.push(format!("members: {a}, {b}"));
                r.body.push(format!("bracket = {bracket}"));
                r.bracket = Some(bracket.to_string());
            }
            Ok(r)
        }
    }
}

fn report_parse(session: &Session) -> Report {
    let mut r = Report::new("parse", "ok", Outcome::Affirmative);
    r.body.push(format!("ring {}", session.ring));
    for (name, d) in session.derivations() {
        r.body.push(format!("der {name} = {d}"));
    }
    for (name, fam) in session.families() {
        r.body.push(format!("family {name} : {}", fam.names().join(", ")));
    }
    r
}

fn report_simplicity(family: &str, cert: &SimplicityCertificate) -> Report {
    match cert {
        SimplicityCertificate::Simple { bezout } => {
            let mut r = Report::new("simple", "simple", Outcome::Affirmative);
            r.header.push(format!("family: {family}"));
            for (i, p) in bezout.iter().enumerate() {
                r.body.push(format!("r{} = {p}", i + 1));
            }
            r.bezout = Some(bezout.iter().map(|p| p.to_string()).collect());
            r
        }
        SimplicityCertificate::NotSimple { stable_generator } => {
            let mut r = Report::new("simple", "not_simple", Outcome::Negative);
            r.header.push(format!("family: {family}"));
            r.body
                .push(format!("stable ideal generator: {stable_generator}"));
            r.stable_ideal = Some(stable_generator.to_string());
            r
        }
    }
}

fn report_classification(
    family: &str,
    fam: &DerivationFamily,
    classification: &Classification,
) -> Report {
    let mut r = match classification {
        Classification::NotCommutantForm { member, witness } => {
            let mut r = Report::new("classify", "not_commutant_form", Outcome::Negative);
            r.body.push(format!(
                "member {member}: coefficient {} depends on x{}",
                witness.coeff, witness.var
            ));
            r
        }
        Classification::NotCommuting { members, bracket } => {
            let mut r = Report::new("classify", "not_commuting", Outcome::Negative);
            r.body.push(format!("members: {}, {}", members.0, members.1));
            r.body.push(format!("bracket = {bracket}"));
            r.bracket = Some(bracket.to_string());
            r
        }
        Classification::CaseA { h_table } => {
            let mut r = Report::new("classify", "case_a", Outcome::Affirmative);
            r.case = Some("a".into());
            for ((name, _), row) in fam.members().zip(h_table) {
                let hs: Vec<String> = row.iter().map(|p| p.to_string()).collect();
                r.body.push(format!("{name}: h = ({})", hs.join(", ")));
            }
            r.h_table = Some(
                h_table
                    .iter()
                    .map(|row| row.iter().map(|p| p.to_string()).collect())
                    .collect(),
            );
            r
        }
        Classification::CaseB { v, members, .. } => {
            let mut r = Report::new("classify", "case_b", Outcome::Affirmative);
            r.case = Some("b".into());
            for (i, p) in v.iter().enumerate() {
                r.body.push(format!("v{} = {p}", i + 1));
            }
            for ((name, _), params) in fam.members().zip(members) {
                let shifts: Vec<String> =
                    params.shifts.iter().map(|s| s.to_string()).collect();
                r.body.push(format!(
                    "{name}: lambda = {}, c = ({})",
                    params.lambda,
                    shifts.join(", ")
                ));
            }
            r.v = Some(v.iter().map(|p| p.to_string()).collect());
            r.lambda = Some(members.iter().map(|m| m.lambda.to_string()).collect());
            r.c = Some(
                members
                    .iter()
                    .map(|m| m.shifts.iter().map(|s| s.to_string()).collect())
                    .collect(),
            );
            r
        }
    };
    r.header.push(format!("family: {family}"));
    r
}
