//! Command-line front end. Every command produces a [`CertificateDocument`]
//! and an exit code: 0 verified, 1 verified-negative or empty, 2 invalid
//! input, 3 numerical failure.

mod certificate;

pub use certificate::{fmt_num, CertificateDocument, Check, SCHEMA_VERSION};

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::algebra::SU2Element;
use crate::census::{character_structure, classify_knot, expected_binary_dihedral_count, trace_free_census, KnotInput};
use crate::construct::witness_montesinos;
use crate::error::Error;
use crate::groups::{montesinos_validate, parse_tangles, Presentation};
use crate::slopes::{classify_splice, TorusKnotParams};
use crate::solver::{solve, SolveProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "su2simple",
    version,
    about = "Trace-free SU(2) witnesses and L-space splice certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a trace-free, non-binary-dihedral witness for a Montesinos knot.
    MontesinosWitness {
        /// Comma-separated tangles q1/p1,q2/p2,...
        #[arg(long, allow_hyphen_values = true)]
        tangles: String,
        /// Angle selector k1,k2,k3 for the triangle group representation.
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate trace-free characters of a two-bridge knot group.
    TwoBridgeCensus {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify that a splice of two torus knot exteriors is an L-space.
    SpliceLspace {
        /// p,q of the first torus knot.
        #[arg(long, allow_hyphen_values = true)]
        k1: String,
        /// p,q of the second torus knot.
        #[arg(long, allow_hyphen_values = true)]
        k2: String,
        #[arg(long, default_value_t = 1000)]
        spot_checks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for SU(2) representations of a presentation file.
    Solve {
        #[arg(long)]
        presentation: PathBuf,
        /// Comma-separated generator names constrained to trace zero.
        #[arg(long)]
        trace_free: Option<String>,
        #[arg(long)]
        projective: bool,
        #[arg(long)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: Option<CertificateDocument>,
    /// Diagnostic for stderr.
    pub message: Option<String>,
    pub out: Option<PathBuf>,
}

impl Outcome {
    fn failed(code: i32, message: impl Into<String>) -> Self {
        Outcome {
            code,
            document: None,
            message: Some(message.into()),
            out: None,
        }
    }

    fn from_error(e: &Error) -> Self {
        let code = match e {
            Error::Numerical(_) | Error::NonUnique(_) | Error::NotConjugate | Error::NoIrreducibleRep(_) => {
                EXIT_NUMERICAL
            }
            _ => EXIT_INVALID,
        };
        let message = match e {
            Error::TwoBridgeRegime => "two-bridge regime: SU(2)-simple".to_string(),
            other => other.to_string(),
        };
        Outcome::failed(code, message)
    }

    fn document(code: i32, doc: CertificateDocument, out: Option<PathBuf>) -> Self {
        Outcome {
            code,
            document: Some(doc),
            message: None,
            out,
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            Outcome::failed(code, e.to_string())
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::MontesinosWitness { tangles, k, out } => montesinos_witness(&tangles, k.as_deref(), out),
        Command::TwoBridgeCensus { p, q, grid, tol, out } => two_bridge_census(p, q, grid, tol, out),
        Command::SpliceLspace {
            k1,
            k2,
            spot_checks,
            seed,
            out,
        } => splice_lspace(&k1, &k2, spot_checks, seed, out),
        Command::Solve {
            presentation,
            trace_free,
            projective,
            restarts,
            seed,
            tol,
            out,
        } => solve_cmd(
            &presentation,
            trace_free.as_deref(),
            projective,
            restarts,
            seed,
            tol,
            out,
        ),
    }
}

fn fmt_quat(g: SU2Element) -> String {
    g.to_array().iter().map(|&c| fmt_num(c)).collect::<Vec<_>>().join(" ")
}

fn parse_pair(s: &str) -> Result<(i64, i64), Error> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|_| Error::input(format!("bad integer {a:?}")))?,
            b.parse().map_err(|_| Error::input(format!("bad integer {b:?}")))?,
        )),
        _ => Err(Error::input(format!("expected p,q but got {s:?}"))),
    }
}

fn parse_selector(s: &str) -> Result<(u32, u32, u32), Error> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::input(format!("bad selector {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [a, b, c] => Ok((*a, *b, *c)),
        _ => Err(Error::input(format!("selector needs three entries, got {s:?}"))),
    }
}

fn montesinos_witness(tangles: &str, k: Option<&str>, out: Option<PathBuf>) -> Outcome {
    let parsed = parse_tangles(tangles).and_then(|t| montesinos_validate(&t));
    let knot = match parsed {
        Ok(knot) => knot,
        Err(e) => return Outcome::from_error(&e),
    };
    let selector = match k.map(parse_selector).transpose() {
        Ok(s) => s,
        Err(e) => return Outcome::from_error(&e),
    };
    let cert = match witness_montesinos(&knot, selector) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    let report = classify_knot(&KnotInput::Montesinos(knot.clone()));

    let mut doc = CertificateDocument::new("montesinos-witness");
    doc.input("tangles", tangles).input("k", k.unwrap_or("auto"));
    doc.result("knot", &knot)
        .result("tangle-count", knot.len())
        .result("determinant", cert.determinant)
        .result("triangle-orders", format!("{},{},{}", cert.p.0, cert.p.1, cert.p.2))
        .result("k", format!("{},{},{}", cert.k.0, cert.k.1, cert.k.2))
        .result("lift-sign", cert.lift_sign)
        .result_num("axis-separation", cert.axis_separation);
    for (name, g) in ["a1", "a2", "a3", "t"].iter().zip(cert.generator_images) {
        doc.result(&format!("image-{name}"), fmt_quat(g));
    }
    doc.result_num("residual", cert.residuals)
        .result_num("meridian-trace", cert.meridian_trace)
        .result("delta-image-cyclic", cert.delta_image_cyclic)
        .result_num("axis-cross", cert.axis_cross)
        .result("conjugator-nullity", cert.conjugator_nullity)
        .result(
            "conjugator-signs",
            cert.conjugator_signs
                .iter()
                .map(i8::to_string)
                .collect::<Vec<_>>()
                .join(","),
        )
        .result_num("character-gap", cert.character_gap);
    if let Ok(r) = report {
        doc.result("verdict", r.verdict.as_str()).result("reason", r.reason);
    }
    for (name, pass, margin) in cert.checks() {
        doc.check(name, pass, margin);
    }
    let code = if doc.all_pass() { EXIT_OK } else { EXIT_NUMERICAL };
    Outcome::document(code, doc, out)
}

fn two_bridge_census(p: u64, q: u64, grid: usize, tol: f64, out: Option<PathBuf>) -> Outcome {
    let census = match trace_free_census(p, q, grid, tol) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    let doubled = match trace_free_census(p, q, 2 * grid, tol) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    let report = match classify_knot(&KnotInput::TwoBridge { p, q }) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let expected = expected_binary_dihedral_count(report.determinant).expect("p is odd");
    let count = census.characters.len();

    let mut doc = CertificateDocument::new("two-bridge-census");
    doc.input("p", p)
        .input("q", q)
        .input("grid", grid)
        .input("tol", fmt_num(tol));
    doc.result("determinant", report.determinant)
        .result("expected-count", expected)
        .result("count", count);
    let mut all_irreducible = true;
    let mut all_dihedral = true;
    let mut all_even_cyclic = true;
    let mut worst_residual: f64 = 0.0;
    for (n, c) in census.characters.iter().enumerate() {
        let s = character_structure(c);
        all_irreducible &= s.irreducible;
        all_dihedral &= s.binary_dihedral;
        all_even_cyclic &= s.even_part_cyclic;
        worst_residual = worst_residual.max(c.residual);
        doc.result(
            &format!("character-{}", n + 1),
            format!(
                "t={} trace_ab={} residual={}",
                fmt_num(c.t),
                fmt_num(c.trace_ab),
                fmt_num(c.residual)
            ),
        );
    }
    for w in &census.warnings {
        doc.result("warning", w);
    }
    doc.result("verdict", report.verdict.as_str())
        .result("reason", &report.reason);
    let gap = (count as i128 - expected as i128).unsigned_abs() as f64;
    doc.check("count-law", gap == 0.0, gap)
        .check("residuals", worst_residual < tol, worst_residual)
        .check("all-irreducible", all_irreducible, 0.0)
        .check("all-binary-dihedral", all_dihedral, 0.0)
        .check("even-part-cyclic", all_even_cyclic, 0.0)
        .check(
            "grid-doubling-stable",
            doubled.characters.len() == count,
            (doubled.characters.len() as f64 - count as f64).abs(),
        );
    let code = if doc.all_pass() { EXIT_OK } else { EXIT_NUMERICAL };
    Outcome::document(code, doc, out)
}

fn splice_lspace(k1: &str, k2: &str, spot_checks: usize, seed: u64, out: Option<PathBuf>) -> Outcome {
    let params = parse_pair(k1)
        .and_then(|(p, q)| TorusKnotParams::new(p, q))
        .and_then(|a| {
            parse_pair(k2)
                .and_then(|(p, q)| TorusKnotParams::new(p, q))
                .map(|b| (a, b))
        });
    let (a, b) = match params {
        Ok(v) => v,
        Err(e) => return Outcome::from_error(&e),
    };
    let report = classify_splice(a, b, spot_checks, seed);
    let cert = &report.certificate;

    let mut doc = CertificateDocument::new("splice-lspace");
    doc.input("k1", k1)
        .input("k2", k2)
        .input("spot-checks", spot_checks)
        .input("seed", seed);
    doc.result("knot-1", a)
        .result("knot-2", b)
        .result("case", cert.case_tag)
        .result("seifert-slope-1", a.seifert_slope())
        .result("seifert-slope-2", b.seifert_slope())
        .result("gluing-matrix", &cert.gluing)
        .result("interval-m1", &cert.interval_m1)
        .result("interval-m2", &cert.interval_m2)
        .result("complement-m2", &cert.complement)
        .result("image", &cert.image)
        .result("containment", cert.containment)
        .result("spot-check-failures", cert.spot_check_failures)
        .result("l-space", report.l_space)
        .result("su2-cyclic", report.su2_cyclic)
        .result("alternating-dbc", report.alternating_dbc)
        .result("conjecture-instance", report.conjecture_instance);
    let det_ok = cert.gluing.determinant() == (-1).into();
    doc.check("determinant-minus-one", det_ok, 0.0)
        .check("image-contained", cert.interval_m1.contains_closed(&cert.image), 0.0)
        .check(
            "spot-checks",
            cert.spot_check_failures == 0,
            cert.spot_check_failures as f64,
        );
    let code = if cert.containment { EXIT_OK } else { EXIT_NEGATIVE };
    Outcome::document(code, doc, out)
}

fn solve_cmd(
    path: &std::path::Path,
    trace_free: Option<&str>,
    projective: bool,
    restarts: usize,
    seed: u64,
    tol: f64,
    out: Option<PathBuf>,
) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::failed(EXIT_INVALID, format!("cannot read {}: {e}", path.display())),
    };
    let presentation = match Presentation::parse(&text) {
        Ok(p) => p,
        Err(e) => return Outcome::from_error(&e),
    };
    let mut constraints = Vec::new();
    for name in trace_free.into_iter().flat_map(|s| s.split(',')).map(str::trim) {
        match presentation.generator_index(name) {
            Some(g) => constraints.push((g, 0.0)),
            None => return Outcome::failed(EXIT_INVALID, format!("unknown generator {name:?}")),
        }
    }
    let problem = SolveProblem {
        presentation: presentation.clone(),
        trace_constraints: constraints,
        projective,
        seed,
        restarts,
        tol,
    };
    let results = match solve(&problem) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };

    let mut doc = CertificateDocument::new("solve");
    doc.input("presentation", path.display())
        .input("generators", presentation.generators().join(" "))
        .input("relators", presentation.relators().len())
        .input("trace-free", trace_free.unwrap_or(""))
        .input("projective", projective)
        .input("restarts", restarts)
        .input("seed", seed)
        .input("tol", fmt_num(tol));
    doc.result("solutions", results.len()).result(
        "irreducible-solutions",
        results.iter().filter(|r| r.is_irreducible()).count(),
    );
    let mut worst: f64 = 0.0;
    for (n, r) in results.iter().enumerate() {
        worst = worst.max(r.residual);
        let key = r
            .character_key
            .iter()
            .map(|&v| format!("{v:.6}"))
            .collect::<Vec<_>>()
            .join(" ");
        doc.result(&format!("solution-{}-key", n + 1), key)
            .result(&format!("solution-{}-irreducible", n + 1), r.is_irreducible())
            .result_num(&format!("solution-{}-residual", n + 1), r.residual);
        for (name, g) in presentation.generators().iter().zip(&r.assignments) {
            doc.result(&format!("solution-{}-{}", n + 1, name), fmt_quat(*g));
        }
    }
    doc.check("residuals-below-tol", worst < tol, worst);
    let code = if results.is_empty() { EXIT_NEGATIVE } else { EXIT_OK };
    Outcome::document(code, doc, out)
}
