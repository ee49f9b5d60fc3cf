//! Subcommand implementations. Each returns rendered documents and an exit
//! code; nothing here touches stdout or the file system.

use linset_core::blocking::{certify, BlockingCertificate};
use linset_core::linear_sets::{
    build_evaluation_set, build_projection_frame, detect_club, feasible_spectra, predicted_size, predicted_spectrum,
    predicted_spectrum_line, project_subgeometry, ClubStatus, ConstructionSpec,
};
use linset_core::polyring::count_reduced_closed_form;
use linset_core::projective::{cross_ratio, cross_ratio_orbit};
use linset_core::{make_field, Field, FieldElement, FieldSpec, LinearSetReport, PolyRing, ProjectivePoint};
use num_bigint::BigUint;
use serde::Serialize;

use crate::config::{Check, ExperimentConfig, Format};
use crate::output::{self, Document};
use crate::schema::{self, CertificateDoc, CheckResult, ConstructDoc, FieldDescription, LineEntry, SCHEMA_VERSION};
use crate::{CliError, EXIT_CHECK_FAILED, EXIT_PASS};

pub const CONSTRUCT_DEFAULT_CHECKS: [Check; 2] = [Check::Size, Check::Spectrum];
pub const BLOCKING_DEFAULT_CHECKS: [Check; 3] = [Check::Blocking, Check::Redei, Check::Secants];

/// Points taken from the front of the report for the cross-ratio check.
const CROSS_RATIO_SAMPLE: usize = 12;
/// Above this many tuples `count` reports the closed form only.
const ENUMERATION_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub documents: Vec<Document>,
    pub failed_checks: Vec<String>,
}

impl Outcome {
    fn single(doc: Document, checks: &[CheckResult]) -> Outcome {
        let failed_checks: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        let code = if failed_checks.is_empty() { EXIT_PASS } else { EXIT_CHECK_FAILED };
        Outcome { code, documents: vec![doc], failed_checks }
    }
}

pub fn build_field(config: &ExperimentConfig) -> Result<Field, CliError> {
    let field = match &config.modulus {
        Some(m) => Field::from_spec(FieldSpec { p: config.p, e: config.e, h: config.h, modulus: m.clone() })?,
        None => make_field(config.p, config.e, config.h, config.seed)?,
    };
    Ok(field)
}

fn validate_checks(config: &ExperimentConfig) -> Result<(), CliError> {
    let l = config.partition.len();
    for c in &config.checks {
        match c {
            Check::Blocking | Check::Redei | Check::Secants if l != 3 => {
                return Err(CliError::config(format!(
                    "check `{c}` needs a planar set: partition must have exactly three parts, got {l}"
                )));
            }
            Check::CrossRatio if l != 2 => {
                return Err(CliError::config(format!(
                    "check `{c}` needs a set on a line: partition must have exactly two parts, got {l}"
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

fn pass(check: Check, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: check.name().to_string(), passed, detail: detail.into() }
}

fn decimal(v: &[BigUint]) -> Vec<String> {
    v.iter().map(BigUint::to_string).collect()
}

fn listing(v: &[BigUint]) -> String {
    format!("[{}]", decimal(v).join(", "))
}

fn observed_spectrum(report: &LinearSetReport) -> Vec<BigUint> {
    report.spectrum().iter().map(|&x| BigUint::from(x)).collect()
}

struct Context<'a> {
    config: &'a ExperimentConfig,
    field: &'a Field,
    spec: &'a ConstructionSpec<'a>,
    report: &'a LinearSetReport,
    certificate: Option<&'a BlockingCertificate>,
}

impl Context<'_> {
    fn run(&self, check: Check) -> CheckResult {
        match check {
            Check::Size => self.size(),
            Check::Spectrum => self.spectrum(),
            Check::ProjectionAgreement => self.projection_agreement(),
            Check::Blocking => self.blocking(),
            Check::Redei => self.redei(),
            Check::Secants => self.secants(),
            Check::SpectraSolver => self.spectra_solver(),
            Check::CrossRatio => self.cross_ratio(),
        }
    }

    fn certificate(&self) -> &BlockingCertificate {
        self.certificate.expect("planar checks run with a certificate")
    }

    /// The blocking claims are asserted only for a planar set of rank `h + 1`.
    fn asserts_blocking(&self) -> bool {
        self.spec.l() == 2 && self.spec.k() == self.field.h() as usize + 1
    }

    fn size(&self) -> CheckResult {
        let expected = count_reduced_closed_form(self.spec.partition(), self.spec.q());
        let got = BigUint::from(self.report.size());
        pass(Check::Size, got == expected, format!("observed {got}, closed form {expected}"))
    }

    fn spectrum(&self) -> CheckResult {
        let q = self.spec.q();
        let observed = observed_spectrum(self.report);
        let predicted = match predicted_spectrum(q, self.spec.partition()) {
            Ok(p) => p,
            Err(e) => return pass(Check::Spectrum, false, e.to_string()),
        };
        let mut ok = observed == predicted;
        if self.spec.l() == 1 {
            ok &= predicted_spectrum_line(q, self.spec.partition()).is_ok_and(|line| line == predicted);
        }
        let identities = self.report.counting_identities_hold();
        pass(
            Check::Spectrum,
            ok && identities,
            format!(
                "observed {}, predicted {}, counting identities {}",
                listing(&observed),
                listing(&predicted),
                if identities { "hold" } else { "fail" }
            ),
        )
    }

    fn projection_agreement(&self) -> CheckResult {
        let projected = build_projection_frame(self.spec).and_then(|frame| project_subgeometry(&frame));
        match projected {
            Ok(p) => {
                let same = p.same_points_and_weights(self.report);
                pass(
                    Check::ProjectionAgreement,
                    same,
                    format!("projection gives {} points, evaluation gives {}", p.size(), self.report.size()),
                )
            }
            Err(e) => pass(Check::ProjectionAgreement, false, e.to_string()),
        }
    }

    fn blocking(&self) -> CheckResult {
        let c = self.certificate();
        let detail = format!("blocking {}, minimal {}, small {}", c.blocking, c.minimal, c.small);
        if self.asserts_blocking() {
            pass(Check::Blocking, c.blocking && c.minimal && c.small, detail)
        } else {
            pass(Check::Blocking, true, format!("{detail} (not asserted: k = {} is not h + 1)", self.spec.k()))
        }
    }

    fn redei(&self) -> CheckResult {
        let c = self.certificate();
        let has = !c.redei_lines.is_empty();
        let min_part = self.spec.sorted_partition()[0];
        let detail = format!("{} Rédei lines, smallest part {min_part}", c.redei_lines.len());
        if self.asserts_blocking() {
            pass(Check::Redei, has == (min_part == 1), detail)
        } else {
            pass(Check::Redei, true, format!("{detail} (not asserted: k = {} is not h + 1)", self.spec.k()))
        }
    }

    fn secants(&self) -> CheckResult {
        let c = self.certificate();
        pass(
            Check::Secants,
            c.double_count_holds,
            format!("{} distinct secant sizes, double count {}", c.secant_histogram.len(), c.double_count_holds),
        )
    }

    fn spectra_solver(&self) -> CheckResult {
        let k = self.spec.k();
        let max_weight = k.min(self.field.h() as usize);
        let observed = observed_spectrum(self.report);
        let solutions = feasible_spectra(k, &BigUint::from(self.report.size()), self.spec.q(), max_weight);
        let found = solutions.contains(&observed);
        pass(
            Check::SpectraSolver,
            found,
            format!("observed spectrum among {} feasible spectra: {found}", solutions.len()),
        )
    }

    fn cross_ratio(&self) -> CheckResult {
        let points: Vec<&ProjectivePoint> =
            self.report.points().iter().take(CROSS_RATIO_SAMPLE).map(|(p, _)| p).collect();
        let s = self.spec.s();
        let n = points.len();
        let mut tested = 0u64;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let cr = match cross_ratio(self.field, [points[a], points[b], points[c], points[d]]) {
                            Ok(cr) => cr,
                            Err(e) => return pass(Check::CrossRatio, false, e.to_string()),
                        };
                        for v in cross_ratio_orbit(self.field, cr) {
                            match self.field.subfield_membership(v, s) {
                                Ok(true) => {}
                                Ok(false) => {
                                    return pass(
                                        Check::CrossRatio,
                                        false,
                                        format!(
                                            "cross-ratio of points {a},{b},{c},{d} leaves the subfield of degree {s}"
                                        ),
                                    )
                                }
                                Err(e) => return pass(Check::CrossRatio, false, e.to_string()),
                            }
                        }
                        tested += 1;
                    }
                }
            }
        }
        pass(
            Check::CrossRatio,
            true,
            format!("{tested} quadruples from the first {n} points, every orbit value in the subfield of degree {s}"),
        )
    }
}

fn club_name(status: ClubStatus) -> &'static str {
    match status {
        ClubStatus::Club => "club",
        ClubStatus::NotClub => "not-club",
        ClubStatus::Degenerate => "degenerate",
    }
}

pub fn construct(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    validate_checks(config)?;
    let field = build_field(config)?;
    let spec = ConstructionSpec::new(&field, config.s, &config.partition)?;
    let report = build_evaluation_set(&spec)?;
    let needs_certificate = config.checks.iter().any(|c| matches!(c, Check::Blocking | Check::Redei | Check::Secants));
    let certificate = if needs_certificate { Some(certify(&field, &report)?) } else { None };
    let ctx = Context { config, field: &field, spec: &spec, report: &report, certificate: certificate.as_ref() };
    let checks: Vec<CheckResult> = ctx.config.checks.iter().map(|&c| ctx.run(c)).collect();
    let doc = ConstructDoc {
        schema: SCHEMA_VERSION,
        command: "construct".into(),
        config: config.clone(),
        field: FieldDescription::from(field.spec()),
        alpha: field.coeffs(spec.alpha()),
        s: spec.s(),
        k: spec.k(),
        size: report.size().to_string(),
        predicted_size: predicted_size(&spec).to_string(),
        spectrum: report.spectrum().iter().map(u64::to_string).collect(),
        max_weight: report.max_weight(),
        club: club_name(detect_club(&report)).into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        points: config.points.then(|| ConstructDoc::point_entries(&field, &report)),
    };
    let body = match config.format {
        Format::Json => output::json(&doc),
        Format::Csv => output::construct_csv(&doc),
    };
    let rendered = Document { stem: config.file_stem("construct"), format: config.format, body };
    Ok(Outcome::single(rendered, &doc.checks))
}

pub fn verify_blocking(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let l = config.partition.len();
    if l != 3 {
        return Err(CliError::config(format!(
            "verify-blocking needs a planar set: partition must have exactly three parts, got {l}"
        )));
    }
    validate_checks(config)?;
    let field = build_field(config)?;
    let spec = ConstructionSpec::new(&field, config.s, &config.partition)?;
    let report = build_evaluation_set(&spec)?;
    let certificate = certify(&field, &report)?;
    let ctx = Context { config, field: &field, spec: &spec, report: &report, certificate: Some(&certificate) };
    let checks: Vec<CheckResult> = ctx.config.checks.iter().map(|&c| ctx.run(c)).collect();
    let doc = CertificateDoc {
        schema: SCHEMA_VERSION,
        command: "verify-blocking".into(),
        config: config.clone(),
        field: FieldDescription::from(field.spec()),
        alpha: field.coeffs(spec.alpha()),
        size: certificate.size,
        blocking: certificate.blocking,
        minimal: certificate.minimal,
        small: certificate.small,
        redei_lines: certificate.redei_lines.iter().map(|l| LineEntry::new(&field, l)).collect(),
        secant_histogram: certificate.secant_histogram.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    let body = match config.format {
        Format::Json => output::json(&doc),
        Format::Csv => output::certificate_csv(&doc),
    };
    let rendered = Document { stem: config.file_stem("verify-blocking"), format: config.format, body };
    Ok(Outcome::single(rendered, &doc.checks))
}

/// `q = p^e` with `p` prime.
pub fn factor_prime_power(q: u64) -> Result<(u32, u32), CliError> {
    let bad = || CliError::config(format!("q = {q} is not a prime power"));
    if q < 2 {
        return Err(bad());
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(bad)?;
    let (mut rest, mut e) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(bad());
    }
    let p = u32::try_from(p).map_err(|_| bad())?;
    Ok((p, e))
}

#[derive(Debug, Serialize)]
struct CountDoc {
    schema: u32,
    command: &'static str,
    q: u64,
    bounds: Vec<usize>,
    closed_form: String,
    enumerated: Option<String>,
    passed: bool,
}

pub fn count(q: u64, bounds: &[usize]) -> Result<Outcome, CliError> {
    if bounds.is_empty() || bounds.contains(&0) {
        return Err(CliError::config("bounds must be a nonempty list of positive integers"));
    }
    let (p, e) = factor_prime_power(q)?;
    let field = make_field(p, e, 1, None)?;
    let closed = count_reduced_closed_form(bounds, q);
    let k: u32 = bounds.iter().map(|&t| t as u32).sum();
    let universe = q.checked_pow(k);
    let enumerated = match universe {
        Some(n) if n <= ENUMERATION_LIMIT => {
            Some(BigUint::from(PolyRing::new(&field).enumerate_reduced(bounds).count()))
        }
        _ => None,
    };
    let passed = enumerated.as_ref().is_none_or(|n| *n == closed);
    let doc = CountDoc {
        schema: SCHEMA_VERSION,
        command: "count",
        q,
        bounds: bounds.to_vec(),
        closed_form: closed.to_string(),
        enumerated: enumerated.map(|n| n.to_string()),
        passed,
    };
    let bounds_text: Vec<String> = bounds.iter().map(usize::to_string).collect();
    let stem = format!("count-q{q}-b{}", bounds_text.join("_"));
    let check = CheckResult { name: "enumeration".into(), passed, detail: String::new() };
    Ok(Outcome::single(Document { stem, format: Format::Json, body: output::json(&doc) }, &[check]))
}

#[derive(Debug, Serialize)]
struct SpectraDoc {
    schema: u32,
    command: &'static str,
    q: u64,
    k: usize,
    size: String,
    max_weight: usize,
    /// Entry `i` of each spectrum counts points of weight `i + 1`.
    spectra: Vec<Vec<String>>,
}

pub fn spectra(q: u64, k: usize, size: Option<BigUint>, max_weight: Option<usize>) -> Result<Outcome, CliError> {
    factor_prime_power(q)?;
    if k == 0 {
        return Err(CliError::config("k must be positive"));
    }
    let size = size.unwrap_or_else(|| BigUint::from(q).pow(k as u32 - 1) + 1u32);
    let max_weight = max_weight.unwrap_or(k);
    let found = feasible_spectra(k, &size, q, max_weight);
    let doc = SpectraDoc {
        schema: SCHEMA_VERSION,
        command: "spectra",
        q,
        k,
        size: size.to_string(),
        max_weight,
        spectra: found.iter().map(|s| decimal(s)).collect(),
    };
    let stem = format!("spectra-q{q}-k{k}-n{size}-w{max_weight}");
    Ok(Outcome::single(Document { stem, format: Format::Json, body: output::json(&doc) }, &[]))
}

/// Parses one coordinate: a sum of terms `c`, `a`, `a^n`, `c*a` or `c*a^n`
/// where `a` is the chosen element.
pub fn parse_element(field: &Field, alpha: FieldElement, text: &str) -> Result<FieldElement, CliError> {
    let bad = |why: &str| CliError::config(format!("cannot parse coordinate `{text}`: {why}"));
    let mut total = FieldElement::ZERO;
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let (coef, power) = match term.split_once('a') {
            None => (term, None),
            Some((c, rest)) => {
                let c = c.trim().trim_end_matches('*').trim();
                let n = match rest.trim() {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|n| n.trim().parse::<u64>().ok())
                        .ok_or_else(|| bad("expected `^n` after `a`"))?,
                };
                (if c.is_empty() { "1" } else { c }, Some(n))
            }
        };
        let c: i64 = coef.parse().map_err(|_| bad("coefficient is not an integer"))?;
        let mut value = field.from_int(c);
        if let Some(n) = power {
            value = field.mul(value, field.pow(alpha, n));
        }
        total = field.add(total, value);
    }
    Ok(total)
}

pub fn parse_points(field: &Field, alpha: FieldElement, text: &str) -> Result<Vec<ProjectivePoint>, CliError> {
    text.split(';')
        .map(|p| {
            let coords = p.split(',').map(|c| parse_element(field, alpha, c)).collect::<Result<Vec<_>, _>>()?;
            if coords.len() != 2 {
                return Err(CliError::config(format!("point `{p}` must have two coordinates")));
            }
            Ok(ProjectivePoint::new(field, coords)?)
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct OrbitEntry {
    value: Vec<u32>,
    degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_subfield: Option<bool>,
}

#[derive(Debug, Serialize)]
struct CrossRatioDoc {
    schema: u32,
    command: &'static str,
    field: FieldDescription,
    alpha: Vec<u32>,
    alpha_degree: u32,
    points: Vec<Vec<Vec<u32>>>,
    cross_ratio: Vec<u32>,
    equals_alpha: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    subfield: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_subfield: Option<bool>,
    orbit: Vec<OrbitEntry>,
}

pub const DEFAULT_CROSS_RATIO_POINTS: &str = "1,0;0,1;1,1;1,a";

pub struct CrossRatioArgs<'a> {
    pub p: u32,
    pub h: u32,
    pub alpha_degree: u32,
    pub subfield: Option<u32>,
    pub points: &'a str,
    pub seed: Option<u64>,
}

pub fn crossratio(args: &CrossRatioArgs<'_>) -> Result<Outcome, CliError> {
    let field = make_field(args.p, 1, args.h, args.seed)?;
    let alpha = field.select_alpha(args.alpha_degree)?;
    let points = parse_points(&field, alpha, args.points)?;
    let [a, b, c, d] = points.as_slice() else {
        return Err(CliError::config(format!("expected four points, got {}", points.len())));
    };
    let cr = cross_ratio(&field, [a, b, c, d])?;
    let member = |x: FieldElement| -> Result<Option<bool>, CliError> {
        Ok(match args.subfield {
            Some(d) => Some(field.prime_subfield_membership(x, d)?),
            None => None,
        })
    };
    let orbit = cross_ratio_orbit(&field, cr)
        .into_iter()
        .map(|v| Ok(OrbitEntry { value: field.coeffs(v), degree: field.degree_over_prime(v), in_subfield: member(v)? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let doc = CrossRatioDoc {
        schema: SCHEMA_VERSION,
        command: "crossratio",
        field: FieldDescription::from(field.spec()),
        alpha: field.coeffs(alpha),
        alpha_degree: args.alpha_degree,
        points: points.iter().map(|p| schema::point(&field, p)).collect(),
        cross_ratio: field.coeffs(cr),
        equals_alpha: cr == alpha,
        subfield: args.subfield,
        in_subfield: member(cr)?,
        orbit,
    };
    let stem = format!("crossratio-p{}-h{}-d{}", args.p, args.h, args.alpha_degree);
    Ok(Outcome::single(Document { stem, format: Format::Json, body: output::json(&doc) }, &[]))
}
