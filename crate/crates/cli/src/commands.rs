use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use cyclic_gv::autocyclic::{enumerate_auto_cyclic_with_limit, estimate_tail, sample_auto_cyclic_with_budget};
use cyclic_gv::bounds::{code_rate_u64, gv_rate, lemma1_bound, lemma1_size_condition, BoundReport};
use cyclic_gv::packing::{greedy_pack, removal_cap, size_lower_bound, verify_rate_bound};
use cyclic_gv::verify::{
    check_auto_cyclic, check_cyclic_closure, check_maximality, check_min_cyclic_distance, check_not_linear,
    find_nonlinearity_witness_with, Limits, VerificationReport, WitnessSearch,
};
use cyclic_gv::{is_prime, CodeKind, CodeSet, Error, ErrorKind};

use crate::report::Report;
use crate::{BoundsArgs, ConstructArgs, EstimateArgs, PackArgs, VerifyArgs, WitnessArgs};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_CONTRACT: u8 = 4;
pub const EXIT_NOT_FOUND: u8 = 5;
pub const EXIT_IO: u8 = 6;

pub struct Outcome {
    pub report: Report,
    pub passed: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(report: Report, warnings: Vec<String>) -> Self {
        Outcome { report, passed: true, warnings }
    }
}

pub enum Failure {
    Core(Error),
    Io { path: PathBuf, source: io::Error },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io { .. } => EXIT_IO,
            Failure::Core(e) => match e.kind() {
                ErrorKind::Domain | ErrorKind::Parse => EXIT_USAGE,
                ErrorKind::Capacity => EXIT_CAPACITY,
                ErrorKind::Contract => EXIT_CONTRACT,
                ErrorKind::NotFound => EXIT_NOT_FOUND,
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Failure::Core(e @ Error::SamplingExhausted { .. }) => {
                write!(f, "{e}; raise --attempts-per-orbit or lower --orbits")
            }
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read_code(path: &Path) -> Result<CodeSet, Failure> {
    let text = fs::read_to_string(path).map_err(|source| Failure::Io { path: path.into(), source })?;
    Ok(CodeSet::parse_file(&text)?)
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|source| Failure::Io { path: path.into(), source })
}

fn composite_warning(n: usize) -> Vec<String> {
    if is_prime(n) {
        Vec::new()
    } else {
        vec![format!("n = {n} is not prime; the size guarantee for C' assumes a prime length")]
    }
}

fn orbit_count(c: &CodeSet) -> usize {
    c.iter().filter(|w| w.canonical() == *w).count()
}

pub fn construct(a: ConstructArgs) -> Result<Outcome, Failure> {
    let delta = a.delta.for_construction()?;
    let n = a.n;
    if n < 2 {
        return Err(Error::Domain(format!("construct needs n >= 2, got {n}")).into());
    }
    let warnings = composite_warning(n);
    let exhaustive = n <= a.exhaustive_limit;
    let budget = a.attempts_per_orbit.saturating_mul(a.orbits as u64);
    let code = if exhaustive {
        enumerate_auto_cyclic_with_limit(n, delta, a.exhaustive_limit)?
    } else {
        sample_auto_cyclic_with_budget(n, delta, a.orbits, a.seed, budget)?
    };
    write_text(&a.out, &code.to_file_string()?)?;

    let size = code.len() as u64;
    let mut r = Report::new("construct", n, delta, Some(a.seed));
    r.set("mode", if exhaustive { "exhaustive" } else { "sampled" });
    r.set("exhaustive_limit", a.exhaustive_limit);
    r.set("orbits_requested", a.orbits);
    r.set("attempts_per_orbit", a.attempts_per_orbit);
    r.set("out", a.out.display().to_string());
    r.set("size", size);
    r.set("orbits", orbit_count(&code));
    r.set("rate", code_rate_u64(size, n).ok());
    r.set("rate_target", format!("{}/{}", n - 1, n));
    // |C'| >= 2^{n-1} is decidable only when C' was enumerated
    r.set("meets_rate_target", exhaustive.then(|| size as u128 >= 1u128 << (n - 1)));
    r.set("lemma1_bound", lemma1_bound(n, &delta)?);
    r.set("lemma1_size_condition", lemma1_size_condition(n, &delta)?);
    r.set("warnings", &warnings);
    Ok(Outcome::ok(r, warnings))
}

pub fn pack(a: PackArgs) -> Result<Outcome, Failure> {
    let cprime = read_code(&a.code)?;
    let delta = a.delta.or(cprime.delta()).expect("parsed files carry delta").for_construction()?;
    let n = cprime.length();
    let (code, trace) = greedy_pack(&cprime, delta)?;
    write_text(&a.out, &code.to_file_string()?)?;
    if let Some(t) = &a.trace {
        write_text(t, &trace.to_json())?;
    }

    let (cp, c) = (cprime.len() as u64, code.len() as u64);
    let mut r = Report::new("pack", n, delta, None);
    r.set("input", a.code.display().to_string());
    r.set("input_kind", cprime.kind().map(|k| k.to_string()));
    r.set("out", a.out.display().to_string());
    r.set("trace", a.trace.as_ref().map(|t| t.display().to_string()));
    r.set("cprime_size", cp);
    r.set("size", c);
    r.set("orbits", trace.selected.len());
    r.set("rate", code_rate_u64(c, n).ok());
    r.set("gv_rate", gv_rate(&delta)?);
    r.set("removal_cap", removal_cap(n, &delta).to_string());
    r.set("size_lower_bound", size_lower_bound(cp, n, delta));
    let passed = verify_rate_bound(cp, c, n, delta);
    r.set("rate_bound_holds", passed);
    Ok(Outcome { report: r, passed, warnings: Vec::new() })
}

pub fn estimate(a: EstimateArgs) -> Result<Outcome, Failure> {
    let delta = a.delta.for_construction()?;
    let n = a.n;
    if n < 2 {
        return Err(Error::Domain(format!("estimate needs n >= 2, got {n}")).into());
    }
    let warnings = composite_warning(n);
    let est = estimate_tail(n, delta, a.trials, a.seed, a.alpha)?;
    let bound = lemma1_bound(n, &delta)?;
    let consistent = est.lower() <= bound;

    let mut r = Report::new("estimate", n, delta, Some(a.seed));
    r.merge(&est);
    r.set("failure_fraction", format!("{}/{}", est.failures, est.trials));
    r.set("lower", est.lower());
    r.set("upper", est.upper());
    r.set("lemma1_bound", bound);
    r.set("bound_consistent", consistent);
    r.set("warnings", &warnings);
    Ok(Outcome { report: r, passed: consistent, warnings })
}

pub fn bounds(a: BoundsArgs) -> Result<Outcome, Failure> {
    let mut b = BoundReport::evaluate(a.n, a.delta)?;
    if let Some(size) = &a.size {
        b = b.with_code_size(size)?;
    }
    let mut r = Report::new("bounds", a.n, a.delta, None);
    r.set("size", a.size.as_ref().map(|s| s.to_string()));
    r.merge(&b);
    Ok(Outcome::ok(r, Vec::new()))
}

pub fn verify(a: VerifyArgs) -> Result<Outcome, Failure> {
    let code = read_code(&a.code)?;
    let delta = a.delta.or(code.delta()).expect("parsed files carry delta");
    let limits = Limits { max_rep_pairs: a.pair_budget, max_xor_pairs: a.xor_budget, seed: a.seed };
    let mut rep = VerificationReport::new(a.code.display().to_string());
    rep.push(check_cyclic_closure(&code));
    match code.kind() {
        Some(CodeKind::AutoCyclic) => rep.push(check_auto_cyclic(&code, &delta)),
        _ => rep.push(check_min_cyclic_distance(&code, &delta, &limits)),
    }
    if let Some(path) = &a.against {
        let cprime = read_code(path)?;
        rep.push(check_maximality(&code, &cprime, &delta));
    }
    if a.linearity {
        rep.push(check_not_linear(&code, &limits));
    }

    let passed = rep.all_pass();
    let mut r = Report::new("verify", code.length(), delta, Some(a.seed));
    r.set("code", a.code.display().to_string());
    r.set("kind", code.kind().map(|k| k.to_string()));
    r.set("size", code.len());
    r.set("against", a.against.as_ref().map(|p| p.display().to_string()));
    r.set("linearity", a.linearity);
    r.set("pair_budget", a.pair_budget);
    r.set("xor_budget", a.xor_budget);
    r.set("checks", &rep.checks);
    r.set("all_pass", passed);
    r.set("partial", rep.any_partial());
    Ok(Outcome { report: r, passed, warnings: Vec::new() })
}

pub fn witness(a: WitnessArgs) -> Result<Outcome, Failure> {
    let warnings = composite_warning(a.n);
    let search = WitnessSearch { exhaustive_limit: a.exhaustive_limit, budget: a.budget, seed: a.seed };
    let w = find_nonlinearity_witness_with(a.n, a.delta, search)?;
    let checks = w.check_invariants();
    let passed = checks.iter().all(|c| c.pass);

    let mut r = Report::new("witness", a.n, a.delta, Some(a.seed));
    r.set("budget", a.budget);
    r.set("exhaustive_limit", a.exhaustive_limit);
    r.merge(&w);
    r.set("invariants", &checks);
    r.set("counterexample", w.is_counterexample());
    r.set("all_pass", passed);
    r.set("warnings", &warnings);
    Ok(Outcome { report: r, passed, warnings })
}
