//! Subcommands and their reports.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, CommandFactory, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use invcode_core::formations::{invertibility_check, InvertibilityStatus, Witness};
use invcode_core::majorana::{all_strings, is_majorana_code, kappa, majorana_mul, modified_commutator_mismatches, MajoranaString};
use invcode_core::ring::Coefficient;
use invcode_core::torus::DEFAULT_CAP;
use invcode_core::weyl::{build_hamiltonian, multiplicities, verify_lfs, SchrodingerRep, WeylGroup, EIGEN_TOL, MAX_DIM};
use invcode_core::witt::{compare, e_d_table, find_lagrangian, gauss_milgram, witt_invariants, WittComparison};

use crate::builtins::{builtin, BUILTINS};
use crate::document::{parse_document, Body, CodeDocument, Kind, Section};

/// Eigenvalues closer than this are reported as one level.
pub const LEVEL_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "invcode", version, about = "Translation-invariant stabilizer codes as linking formations")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Section to use when the document has several.
    #[arg(long, global = true, value_name = "SECTION")]
    name: Option<String>,
    /// Largest Hilbert space dimension for simulation.
    #[arg(long, global = true, default_value_t = MAX_DIM)]
    max_dim: usize,
    /// Largest compactified group rank or search size.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    max_group: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a document and build every section.
    Validate { input: String },
    /// Print the dual presentation.
    Dual { input: String },
    /// Count the compactified module on the ℓ-torus.
    Count {
        input: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        ell: i64,
    },
    /// Witt invariants of a d = 0 quadratic form.
    Witt {
        input: String,
        #[arg(long)]
        sigma: bool,
        #[arg(long)]
        lagrangian: bool,
        #[arg(long)]
        invariants: bool,
        /// Compare with another quadratic section of the same document.
        #[arg(long, value_name = "SECTION")]
        compare: Option<String>,
    },
    /// Run the invertibility checks on a formation.
    Check {
        input: String,
        #[arg(long, required = true, value_delimiter = ',', value_parser = clap::value_parser!(i64).range(1..))]
        ell: Vec<i64>,
    },
    /// Ground-space degeneracy on ℓ-tori.
    Degeneracy {
        input: String,
        #[arg(long, required = true, value_delimiter = ',', value_parser = clap::value_parser!(i64).range(1..))]
        ell: Vec<i64>,
    },
    /// Build the stabilizer Hamiltonian on the ℓ-torus.
    Simulate {
        input: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        ell: i64,
        #[arg(long)]
        ground_dim: bool,
        #[arg(long)]
        verify_lfs: bool,
        /// Write the eigenvalue multiplicity table here.
        #[arg(long, value_name = "PATH")]
        dump_spectrum: Option<PathBuf>,
    },
    /// Majorana code checks.
    #[command(group(ArgGroup::new("task").required(true).multiple(true).args(["check_code", "verify_kappa"])))]
    Majorana {
        /// Document with a majorana section, or one bit string per line.
        #[arg(long, value_name = "FILE")]
        check_code: Option<String>,
        /// Compare the commutator form with the odd form on n modes.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u8).range(1..=5))]
        verify_kappa: Option<u8>,
    },
    /// Groups of invertible codes by dimension.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<invcode_core::Error> for Failure {
    fn from(e: invcode_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<crate::document::BuildError> for Failure {
    fn from(e: crate::document::BuildError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

struct Report {
    command: &'static str,
    subject: Option<String>,
    status: String,
    result: Value,
    text: String,
    code: u8,
}

impl Report {
    fn new(command: &'static str, subject: Option<String>, status: impl Into<String>, result: Value, text: String) -> Self {
        Report { command, subject, status: status.into(), result, text, code: 0 }
    }

    fn json(&self) -> String {
        let v = json!({
            "command": self.command,
            "subject": self.subject,
            "status": self.status,
            "result": self.result,
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: rendered, stderr: String::new() },
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome { code: 2, stdout: String::new(), stderr: rendered },
                _ => Outcome { code: 2, stdout: String::new(), stderr: format!("{rendered}\n{}", accepted_flags(&args)) },
            };
        }
    };
    let command = command_name(&cli.command);
    match execute(&cli) {
        Ok(report) => Outcome {
            code: report.code,
            stdout: if cli.json { report.json() } else { report.text.clone() },
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Invalid(msg)) => {
            let stdout = if cli.json {
                Report::new(command, None, "error", json!({ "error": msg }), String::new()).json()
            } else {
                String::new()
            };
            Outcome { code: 1, stdout, stderr: format!("error: {msg}\n") }
        }
    }
}

/// Help text of the subcommand named in `args`, or of the top-level command.
fn accepted_flags(args: &[OsString]) -> String {
    let mut cmd = Cli::command();
    let sub = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| cmd.get_subcommands().any(|s| s.get_name() == *a))
        .map(str::to_string);
    match sub {
        Some(name) => cmd.find_subcommand_mut(&name).expect("known subcommand").render_help().to_string(),
        None => cmd.render_help().to_string(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Dual { .. } => "dual",
        Command::Count { .. } => "count",
        Command::Witt { .. } => "witt",
        Command::Check { .. } => "check",
        Command::Degeneracy { .. } => "degeneracy",
        Command::Simulate { .. } => "simulate",
        Command::Majorana { .. } => "majorana",
        Command::Table { .. } => "table",
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let name = cli.name.as_deref();
    match &cli.command {
        Command::Validate { input } => validate(input),
        Command::Dual { input } => dual(input, name),
        Command::Count { input, ell } => count(input, name, *ell, cli.max_group),
        Command::Witt { input, sigma, lagrangian, invariants, compare } => {
            let all = !(*sigma || *lagrangian || *invariants);
            witt(input, name, [all || *sigma, all || *lagrangian, all || *invariants], compare.as_deref(), cli.max_group)
        }
        Command::Check { input, ell } => check(input, name, ell, cli.max_group),
        Command::Degeneracy { input, ell } => degeneracy(input, name, ell, cli.max_group),
        Command::Simulate { input, ell, ground_dim, verify_lfs, dump_spectrum } => {
            let ground = *ground_dim || !(*verify_lfs || dump_spectrum.is_some());
            simulate(input, name, *ell, ground, *verify_lfs, dump_spectrum.as_deref(), cli)
        }
        Command::Majorana { check_code, verify_kappa } => majorana(check_code.as_deref(), *verify_kappa, name),
        Command::Table { d } => Ok(table(*d)),
    }
}

fn load(input: &str) -> Result<CodeDocument, Failure> {
    let path = Path::new(input);
    let text = if path.exists() {
        std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{input}: {e}")))?
    } else if let Some(text) = builtin(input) {
        text.to_string()
    } else {
        let names: Vec<&str> = BUILTINS.iter().map(|(n, _)| *n).collect();
        return Err(Failure::Usage(format!("no such file or built-in example `{input}` (built-ins: {})", names.join(", "))));
    };
    parse_document(&text).map_err(|e| Failure::Invalid(format!("{input}:{e}")))
}

fn select<'a>(doc: &'a CodeDocument, name: Option<&str>, kinds: &[Kind]) -> Result<&'a Section, Failure> {
    doc.select(name, kinds).ok_or_else(|| {
        let wanted: Vec<&str> = kinds.iter().map(|k| k.keyword()).collect();
        match name {
            Some(n) => Failure::Usage(format!("no {} section named `{n}`", wanted.join(" or "))),
            None => Failure::Usage(format!("document has no {} section", wanted.join(" or "))),
        }
    })
}

fn subject(input: &str, section: &str) -> Option<String> {
    Some(format!("{input}#{section}"))
}

fn big_list(v: &[BigInt]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn big_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|b| Value::String(b.to_string())).collect())
}

fn int_list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn validate(input: &str) -> Result<Report, Failure> {
    let doc = load(input)?;
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut all_ok = true;
    for s in &doc.sections {
        let outcome: Result<Option<String>, String> = match s.kind() {
            Kind::Presentation => doc.presentation(&s.name).map(|p| Some(format!("k0 = {}", p.k0()))).map_err(|e| e.error.to_string()),
            Kind::Form => doc.form(&s.name).map(|_| None).map_err(|e| e.error.to_string()),
            Kind::Formation => doc.formation(&s.name).map(|_| None).map_err(|e| e.error.to_string()),
            Kind::Quadratic => doc.quadratic(&s.name).map(|q| Some(format!("order {}", q.order()))).map_err(|e| e.error.to_string()),
            Kind::Majorana => {
                let gens = doc.majorana(&s.name).expect("majorana section");
                is_majorana_code(gens)
                    .map(|r| Some(if r.is_code { "a Majorana code".to_string() } else { "not a Majorana code".to_string() }))
                    .map_err(|e| e.to_string())
            }
        };
        match &outcome {
            Ok(note) => {
                let note = note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default();
                writeln!(text, "{} {}: ok{note}", s.kind(), s.name).unwrap();
            }
            Err(e) => {
                all_ok = false;
                writeln!(text, "{} {}: invalid: {e}", s.kind(), s.name).unwrap();
            }
        }
        entries.push(json!({
            "kind": s.kind().keyword(),
            "name": s.name,
            "valid": outcome.is_ok(),
            "error": outcome.err(),
        }));
    }
    let status = if all_ok { "valid" } else { "invalid" };
    writeln!(text, "{status}").unwrap();
    let mut report = Report::new("validate", Some(input.to_string()), status, json!({ "sections": entries }), text);
    report.code = if all_ok { 0 } else { 1 };
    Ok(report)
}

fn dual(input: &str, name: Option<&str>) -> Result<Report, Failure> {
    let doc = load(input)?;
    let s = select(&doc, name, &[Kind::Presentation, Kind::Form, Kind::Formation])?;
    let p = doc.presentation(&s.name)?;
    let d = p.s_dual();
    let out = CodeDocument {
        metadata: vec![],
        sections: vec![Section {
            name: format!("{}-dual", s.name),
            line: 0,
            body: Body::Presentation { dim: d.dim(), matrix: d.boundary().clone() },
        }],
    };
    let result = json!({
        "dimension": d.dim(),
        "matrix": d.boundary().to_string(),
        "k0": d.k0().to_string(),
    });
    Ok(Report::new("dual", subject(input, &s.name), "computed", result, out.to_string()))
}

fn count(input: &str, name: Option<&str>, ell: i64, cap: usize) -> Result<Report, Failure> {
    let doc = load(input)?;
    let s = select(&doc, name, &[Kind::Presentation, Kind::Form, Kind::Formation])?;
    let p = doc.presentation(&s.name)?;
    let compact = p.compactify(ell, cap)?;
    let factors = compact.group().invariant_factors;
    let order = compact.lattice.index();
    let volume = compact.torus.volume();
    let expected = num_traits::pow(p.k0().clone(), volume);
    let law = match p.count_elements(ell, cap) {
        Ok(_) => true,
        Err(invcode_core::Error::CountMismatch { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    writeln!(text, "{order}").unwrap();
    writeln!(text, "expected k0^(ell^d) = {}^{volume} = {expected}", p.k0()).unwrap();
    writeln!(text, "check: {}", if law { "pass" } else { "fail" }).unwrap();
    writeln!(text, "invariant factors: {}", big_list(&factors)).unwrap();
    let result = json!({
        "ell": ell,
        "order": order.to_string(),
        "expected": expected.to_string(),
        "k0": p.k0().to_string(),
        "check": law,
        "invariant_factors": big_json(&factors),
    });
    let status = if law { "pass" } else { "fail" };
    Ok(Report::new("count", subject(input, &s.name), status, result, text))
}

fn witt(input: &str, name: Option<&str>, parts: [bool; 3], other: Option<&str>, cap: usize) -> Result<Report, Failure> {
    let doc = load(input)?;
    let s = select(&doc, name, &[Kind::Quadratic])?;
    let q = doc.quadratic(&s.name)?;
    let mut text = String::new();
    let mut result = serde_json::Map::new();
    let [sigma, lagrangian, invariants] = parts;
    writeln!(text, "order {}", q.order()).unwrap();
    result.insert("order".into(), json!(q.order()));
    if sigma {
        let sg = gauss_milgram(&q)?;
        writeln!(text, "sigma = {sg} (mod 8)").unwrap();
        result.insert("sigma".into(), json!(sg));
    }
    if lagrangian {
        match find_lagrangian(&q, cap as u64)? {
            Some(gens) => {
                let rows: Vec<String> = gens.iter().map(|g| int_list(g)).collect();
                writeln!(text, "lagrangian: [{}]", rows.join(", ")).unwrap();
                result.insert("lagrangian".into(), json!(gens));
            }
            None => {
                writeln!(text, "lagrangian: none").unwrap();
                result.insert("lagrangian".into(), Value::Null);
            }
        }
    }
    if invariants {
        let inv = witt_invariants(&q)?;
        let mut primes = Vec::new();
        for (p, v) in &inv.per_prime {
            writeln!(text, "p = {p}: |D_p| = {}, order parity {}, sigma_p = {}", v.component_order, v.order_parity, v.sigma).unwrap();
            primes.push(json!({
                "p": p,
                "component_order": v.component_order,
                "order_parity": v.order_parity,
                "sigma": v.sigma,
            }));
        }
        let class: Vec<String> = inv.class().iter().map(|(p, (a, b))| format!("p = {p}: ({a}, {b})")).collect();
        let class_text = if class.is_empty() { "trivial".to_string() } else { class.join("; ") };
        writeln!(text, "witt class: {class_text}").unwrap();
        result.insert("primes".into(), Value::Array(primes));
        result.insert("trivial".into(), json!(inv.is_trivial()));
    }
    if let Some(other_name) = other {
        let o = select(&doc, Some(other_name), &[Kind::Quadratic])?;
        let q2 = doc.quadratic(&o.name)?;
        let (verdict, detail) = match compare(&q, &q2, cap as u64)? {
            WittComparison::Equivalent { hyperbolic_summands, lagrangian } => {
                ("equivalent", format!("lagrangian with {hyperbolic_summands} hyperbolic summands, {} generators", lagrangian.len()))
            }
            WittComparison::Inequivalent { reason } => ("inequivalent", reason),
            WittComparison::Undecided { reason } => ("undecided", reason),
        };
        writeln!(text, "compare {}: {verdict} ({detail})", o.name).unwrap();
        result.insert("compare".into(), json!({ "with": o.name, "verdict": verdict, "detail": detail }));
    }
    Ok(Report::new("witt", subject(input, &s.name), "computed", Value::Object(result), text))
}

fn check(input: &str, name: Option<&str>, ells: &[i64], cap: usize) -> Result<Report, Failure> {
    let doc = load(input)?;
    let s = select(&doc, name, &[Kind::Formation])?;
    let fm = doc.formation(&s.name)?;
    let verdict = invertibility_check(&fm, ells, cap)?;
    let (status, witness) = match &verdict.status {
        InvertibilityStatus::CertifiedInvertible => ("CertifiedInvertible", None),
        InvertibilityStatus::PassedFiniteChecks => ("PassedFiniteChecks", None),
        InvertibilityStatus::Falsified(w) => ("Falsified", Some(w)),
    };
    let mut text = format!("{status}\n");
    let witness_json = witness.map(|w| match w {
        Witness::NotIsotropic { i, j } => {
            writeln!(text, "witness: generators f_{i} and f_{j} do not commute").unwrap();
            json!({ "kind": "not_isotropic", "i": i, "j": j })
        }
        Witness::Annihilator { ell, element, defect_order } => {
            writeln!(text, "witness: ell = {ell}, element {} of F^perp outside F, |F^perp/F| = {defect_order}", int_list(element))
                .unwrap();
            json!({ "kind": "annihilator", "ell": ell, "element": element, "defect_order": defect_order.to_string() })
        }
        Witness::Ext { of, groups } => {
            let parts: Vec<String> = groups.iter().map(|(i, g)| format!("Ext^{i} = {}", big_list(g))).collect();
            writeln!(text, "witness: {of} has {}", parts.join(", ")).unwrap();
            let groups: Vec<Value> = groups.iter().map(|(i, g)| json!({ "degree": i, "factors": big_json(g) })).collect();
            json!({ "kind": "ext", "of": of, "groups": groups })
        }
    });
    writeln!(text, "evidence:").unwrap();
    for e in &verdict.evidence {
        writeln!(text, "  {e}").unwrap();
    }
    let result = json!({ "ells": ells, "witness": witness_json, "evidence": verdict.evidence });
    Ok(Report::new("check", subject(input, &s.name), status, result, text))
}

fn degeneracy(input: &str, name: Option<&str>, ells: &[i64], cap: usize) -> Result<Report, Failure> {
    let doc = load(input)?;
    let s = select(&doc, name, &[Kind::Formation])?;
    let fm = doc.formation(&s.name)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for &ell in ells {
        let defect = fm.defect_order(ell, cap)?;
        let gsd = fm.degeneracy(ell, cap)?;
        writeln!(text, "ell = {ell}: degeneracy {gsd} (|F^perp/F| = {defect})").unwrap();
        rows.push(json!({ "ell": ell, "degeneracy": gsd.to_string(), "defect_order": defect.to_string() }));
    }
    Ok(Report::new("degeneracy", subject(input, &s.name), "computed", json!({ "tori": rows }), text))
}

type Vectors = Vec<Vec<i64>>;

/// Translates of the generators of `M`, each with a unit vector pairing nontrivially with it alone.
fn separators_and_flippers(
    rep: &SchrodingerRep,
    m_gens: &[Vec<invcode_core::ring::IntPoly>],
    volume: usize,
) -> invcode_core::Result<(Vectors, Vectors)> {
    let g = rep.group();
    let mut seps = Vec::new();
    for gen in m_gens {
        for site in 0..volume {
            seps.push(g.translate(gen, site)?);
        }
    }
    let size = g.size();
    let units: Vec<Vec<i64>> = (0..size).map(|k| (0..size).map(|i| i64::from(i == k)).collect()).collect();
    let nontrivial = |a: &[i64], b: &[i64]| !g.pairing(a, b).is_integer();
    let mut flips = Vec::new();
    for (i, z) in seps.iter().enumerate() {
        let found = units.iter().find(|e| nontrivial(z, e) && seps.iter().enumerate().all(|(j, w)| j == i || !nontrivial(w, e)));
        match found {
            Some(e) => flips.push(e.clone()),
            None => break,
        }
    }
    Ok((seps, flips))
}

fn simulate(
    input: &str,
    name: Option<&str>,
    ell: i64,
    ground: bool,
    lfs: bool,
    dump: Option<&Path>,
    cli: &Cli,
) -> Result<Report, Failure> {
    let doc = load(input)?;
    let s = select(&doc, name, &[Kind::Formation])?;
    let fm = doc.formation(&s.name)?;
    let h = build_hamiltonian(&fm, ell, cli.max_group, cli.max_dim)?;
    let mut text = String::new();
    let mut result = serde_json::Map::new();
    writeln!(text, "hilbert space dimension {}", h.dimension()).unwrap();
    writeln!(text, "terms {}", h.terms.len()).unwrap();
    result.insert("ell".into(), json!(ell));
    result.insert("dimension".into(), json!(h.dimension()));
    result.insert("terms".into(), json!(h.terms.len()));
    let mut ok = true;
    let levels = if ground || dump.is_some() { multiplicities(&h.spectrum(), LEVEL_TOL) } else { vec![] };
    if ground {
        let projector = h.ground_space_dim();
        let (lowest, mult) = levels.first().copied().unwrap_or((0.0, 0));
        let ff = (lowest - h.frustration_free_energy()).abs() < EIGEN_TOL * h.dimension() as f64;
        writeln!(text, "ground space dimension {projector} (projectors), {mult} (lowest eigenvalue)").unwrap();
        writeln!(text, "lowest energy {} (frustration free: {ff})", fmt_level(lowest)).unwrap();
        ok &= projector == mult && ff;
        result.insert(
            "ground".into(),
            json!({ "projector_rank": projector, "multiplicity": mult, "energy": fmt_level(lowest), "frustration_free": ff }),
        );
    }
    if lfs {
        let group = WeylGroup::new(fm.form(), fm.m(), ell, cli.max_group)?;
        let rep = SchrodingerRep::new(group, cli.max_dim)?;
        let volume = (ell as usize).pow(fm.dim() as u32);
        let (seps, flips) = separators_and_flippers(&rep, fm.m().generators(), volume)?;
        let r = verify_lfs(&rep, &seps, &flips)?;
        let pass = r.commuting && r.joint_spectrum_distinct && r.flip_relations_ok && r.flippers == r.separators;
        writeln!(
            text,
            "local flippable separator: {} separators, {} flippers, commuting {}, distinct joint spectrum {}, flips {}",
            r.separators, r.flippers, r.commuting, r.joint_spectrum_distinct, r.flip_relations_ok
        )
        .unwrap();
        ok &= pass;
        result.insert(
            "lfs".into(),
            json!({
                "separators": r.separators,
                "flippers": r.flippers,
                "commuting": r.commuting,
                "joint_spectrum_distinct": r.joint_spectrum_distinct,
                "flip_relations_ok": r.flip_relations_ok,
                "pass": pass,
            }),
        );
    }
    if let Some(path) = dump {
        let mut table = String::from("# eigenvalue multiplicity\n");
        for (e, m) in &levels {
            writeln!(table, "{} {m}", fmt_level(*e)).unwrap();
        }
        std::fs::write(path, table).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
        writeln!(text, "spectrum written to {} ({} levels)", path.display(), levels.len()).unwrap();
        result.insert("levels".into(), json!(levels.len()));
    }
    let status = if ok { "pass" } else { "fail" };
    Ok(Report::new("simulate", subject(input, &s.name), status, Value::Object(result), text))
}

fn fmt_level(e: f64) -> String {
    let e = if e.abs() < 5e-11 { 0.0 } else { e };
    format!("{e:.10}")
}

fn bit_lines(text: &str) -> Result<Vec<Vec<u8>>, Failure> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let bits: Vec<char> = line.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        if bits.is_empty() {
            continue;
        }
        let row = bits
            .iter()
            .enumerate()
            .map(|(k, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Failure::Invalid(format!("{}:{}: expected 0 or 1, found `{c}`", i + 1, k + 1))),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        out.push(row);
    }
    if out.is_empty() {
        return Err(Failure::Invalid("1:1: no generators".into()));
    }
    Ok(out)
}

fn majorana(file: Option<&str>, n: Option<u8>, name: Option<&str>) -> Result<Report, Failure> {
    let mut text = String::new();
    let mut result = serde_json::Map::new();
    let mut status = "computed";
    let mut subj = None;
    if let Some(input) = file {
        let raw = if Path::new(input).exists() {
            std::fs::read_to_string(input).map_err(|e| Failure::Invalid(format!("{input}: {e}")))?
        } else if let Some(t) = builtin(input) {
            t.to_string()
        } else {
            return Err(Failure::Usage(format!("no such file or built-in example `{input}`")));
        };
        let gens = if raw.lines().any(|l| l.trim_start().starts_with('[')) {
            let doc = parse_document(&raw).map_err(|e| Failure::Invalid(format!("{input}:{e}")))?;
            let s = select(&doc, name, &[Kind::Majorana])?;
            subj = subject(input, &s.name);
            doc.majorana(&s.name).expect("majorana section").to_vec()
        } else {
            subj = Some(input.to_string());
            bit_lines(&raw).map_err(|f| match f {
                Failure::Invalid(m) => Failure::Invalid(format!("{input}:{m}")),
                other => other,
            })?
        };
        let r = is_majorana_code(&gens)?;
        writeln!(text, "{} generators: {}", gens.len(), if r.is_code { "a Majorana code" } else { "not a Majorana code" }).unwrap();
        if !r.odd_generators.is_empty() {
            writeln!(text, "odd generators: {}", int_list(&r.odd_generators)).unwrap();
        }
        for (i, j) in &r.anticommuting_pairs {
            writeln!(text, "generators {i} and {j} anticommute").unwrap();
        }
        status = if r.is_code { "code" } else { "not_code" };
        result.insert(
            "check_code".into(),
            json!({ "is_code": r.is_code, "odd_generators": r.odd_generators, "anticommuting_pairs": r.anticommuting_pairs }),
        );
    }
    if let Some(n) = n {
        let n = n as usize;
        let strings: Vec<Vec<u8>> = all_strings(n).collect();
        // κ against the sign picked up by reordering the product
        let mut order_mismatch = 0usize;
        for x in &strings {
            let a = MajoranaString::new(x.clone(), 0)?;
            for y in &strings {
                let b = MajoranaString::new(y.clone(), 0)?;
                let swapped = (majorana_mul(&a, &b)?.phase + 8 - majorana_mul(&b, &a)?.phase) % 8 == 4;
                if swapped == kappa(x, y)?.is_zero() {
                    order_mismatch += 1;
                }
            }
        }
        let odd = modified_commutator_mismatches(n);
        let pairs = strings.len() * strings.len();
        writeln!(text, "n = {n}: kappa vs reordering sign: {order_mismatch} of {pairs} pairs differ").unwrap();
        writeln!(text, "n = {n}: b(x, y + c_hat) vs kappa: {} of {pairs} pairs differ", odd.len()).unwrap();
        if let Some((x, y)) = odd.first() {
            writeln!(text, "first difference: x = {}, y = {}", int_list(x), int_list(y)).unwrap();
        }
        if file.is_none() {
            status = if order_mismatch == 0 && odd.is_empty() { "consistent" } else { "mismatch" };
        }
        result.insert(
            "verify_kappa".into(),
            json!({
                "modes": n,
                "pairs": pairs,
                "reordering_mismatches": order_mismatch,
                "odd_form_mismatches": odd.len(),
                "first_difference": odd.first().map(|(x, y)| json!([x, y])),
            }),
        );
    }
    Ok(Report::new("majorana", subj, status, Value::Object(result), text))
}

fn table(d: Option<i64>) -> Report {
    let ds: Vec<i64> = match d {
        Some(d) => vec![d],
        None => (-1..=8).collect(),
    };
    let mut text = String::new();
    let mut entries = Vec::new();
    for d in ds {
        let e = e_d_table(d);
        writeln!(text, "d = {d}: {}", e.label()).unwrap();
        for line in e.expansion() {
            writeln!(text, "  {line}").unwrap();
        }
        entries.push(json!({ "d": d, "group": e.label(), "expansion": e.expansion() }));
    }
    Report::new("table", None, "computed", json!({ "entries": entries }), text)
}
