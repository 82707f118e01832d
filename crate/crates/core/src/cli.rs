//! Command line front end. `run` returns the process exit code: 0 when
//! every checked identity holds, 1 on a mathematical failure or
//! non-generic parameters, 2 on a usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;

use crate::affine_coinvariants::{verify_dictionary, BoxBasis, FiberWeights};
use crate::affine_weyl::{WeylLetter, WeylWord};
use crate::error::Error;
use crate::finite_weight::{check_standard_iso, Variant};
use crate::report::Report;
use crate::scalars::{format_scalar, parse_scalar, parse_scalar_list, Scalar};
use crate::zhelobenko::{build_intertwiner, verify_braid, verify_intertwining, IntertwinerChain, SCHEMA};
use crate::{cherednik_algebra, hecke_algebra};

#[derive(Parser, Debug)]
#[command(name = "cherednik-lab", version, about = "Cherednik operators and Zhelobenko intertwiners on affine coinvariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Print the intertwiner of a word as JSON.
    Intertwiner {
        #[command(flatten)]
        config: RunConfig,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Relations,
    StandardIso,
    Cherednik,
    Thm36,
    Braid,
    Cor25,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// `P/Q` or an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    /// Comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "nu")]
    pub lambda: Option<String>,
    #[arg(long)]
    pub nu: Option<String>,
    /// Level of the Verma module; must equal `kappa - m`.
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub degree: i64,
    /// Exponent bounds `L..U`.
    #[arg(long = "box", default_value = "0..0", allow_hyphen_values = true)]
    pub bounds: String,
    #[arg(long, default_value = "")]
    pub word: String,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonGeneric { .. }
            | Error::VanishingDenominator(_)
            | Error::BoxOverflow(_)
            | Error::DepthExceeded(_)
            | Error::BasisMismatch(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

impl RunConfig {
    pub fn box_bounds(&self) -> CmdResult<(i64, i64)> {
        let (l, u) = self
            .bounds
            .split_once("..")
            .ok_or_else(|| Failure::usage(format!("--box expects L..U, got '{}'", self.bounds)))?;
        let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| Failure::usage(format!("bad box bound '{s}'")));
        let (l, u) = (parse(l)?, parse(u)?);
        if l > u {
            return Err(Failure::usage(format!("empty box {l}..{u}")));
        }
        Ok((l, u))
    }

    fn kappa(&self) -> CmdResult<Scalar> {
        let k = self.kappa.as_deref().ok_or_else(|| Failure::usage("--kappa is required"))?;
        Ok(parse_scalar(k)?)
    }

    /// Fiber weights from `--kappa`, `--mu` and one of `--lambda`/`--nu`.
    pub fn fiber(&self) -> CmdResult<FiberWeights> {
        let kappa = self.kappa()?;
        let mu = parse_scalar_list(self.mu.as_deref().ok_or_else(|| Failure::usage("--mu is required"))?)?;
        if let Some(m) = self.m {
            if m != mu.len() {
                return Err(Failure::usage(format!("--m {m} but --mu has {} entries", mu.len())));
            }
        }
        let lambda = match (&self.lambda, &self.nu) {
            (Some(l), None) => parse_scalar_list(l)?,
            (None, Some(nu)) => {
                let nu: Vec<usize> = nu
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Failure::usage(format!("bad --nu entry '{t}'"))))
                    .collect::<CmdResult<_>>()?;
                if nu.len() != mu.len() {
                    return Err(Failure::usage("--nu and --mu differ in length"));
                }
                mu.iter().zip(&nu).map(|(x, &k)| x + Scalar::from_integer((k as i64).into())).collect()
            }
            _ => return Err(Failure::usage("exactly one of --lambda and --nu is required")),
        };
        let fw = match &self.level {
            Some(l) => FiberWeights::with_level(kappa, parse_scalar(l)?, mu, lambda)?,
            None => FiberWeights::new(kappa, mu, lambda)?,
        };
        if let Some(n) = self.n {
            if n != fw.n {
                return Err(Failure::usage(format!("--N {n} but the content sums to {}", fw.n)));
            }
        }
        Ok(fw)
    }

    pub fn box_for(&self, fw: &FiberWeights) -> CmdResult<BoxBasis> {
        let (l, u) = self.box_bounds()?;
        Ok(BoxBasis::for_fiber(fw, self.degree, l, u))
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    schema: &'a str,
    suite: String,
    seed: u64,
    passed: bool,
    reports: &'a [Report],
}

fn residual_report(subject: &str, items: Vec<(String, bool, String)>) -> Report {
    let mut r = Report::new(subject, true);
    for (name, zero, residual) in items {
        r.push(name, (!zero).then(|| format!("residual {residual}")));
    }
    r
}

/// Number of random associativity triples per algebra in the relations suite.
pub const ASSOCIATIVITY_TRIPLES: usize = 200;

pub fn relations_reports(n_max: usize, kappa: &Scalar, triples: usize, seed: u64) -> crate::Result<Vec<Report>> {
    let mut reports = Vec::new();
    for n in 1..=n_max {
        let h = hecke_algebra::relation_residuals(n)?.into_iter().map(|(s, r)| (s, r.is_zero(), r.to_string())).collect();
        reports.push(residual_report(&format!("H_{n} relations"), h));
        let c = cherednik_algebra::relation_residuals(n, kappa)?
            .into_iter()
            .map(|(s, r)| (s, r.is_zero(), r.to_string()))
            .collect();
        reports.push(residual_report(&format!("C_{n} relations, kappa = {}", format_scalar(kappa)), c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n_max.clamp(1, 3);
    let mut r = Report::new(format!("H_{n} associativity, {triples} triples, seed {seed}"), true);
    for t in 0..triples {
        let [a, b, c] = [0; 3].map(|_| hecke_algebra::random_element(n, 3, 2, &mut rng));
        let lhs = a.mul(&b)?.mul(&c)?;
        let rhs = a.mul(&b.mul(&c)?)?;
        if lhs != rhs {
            r.push(format!("triple {t}"), Some(format!("({a}) ({b}) ({c})")));
        }
    }
    if r.checks.is_empty() {
        r.push(format!("{triples} triples"), None);
    }
    reports.push(r);
    let mut r = Report::new(format!("C_{n} associativity, {triples} triples, seed {seed}"), true);
    for t in 0..triples {
        let [a, b, c] = [0; 3].map(|_| cherednik_algebra::random_element(n, kappa, 2, 1, 1, &mut rng));
        let lhs = a.mul(&b)?.mul(&c)?;
        let rhs = a.mul(&b.mul(&c)?)?;
        if lhs != rhs {
            r.push(format!("triple {t}"), Some(format!("({a}) ({b}) ({c})")));
        }
    }
    if r.checks.is_empty() {
        r.push(format!("{triples} triples"), None);
    }
    reports.push(r);
    Ok(reports)
}

fn standard_iso_reports(fw: &FiberWeights) -> CmdResult<Vec<Report>> {
    let mut out = Vec::new();
    for variant in [Variant::Gl, Variant::Sl] {
        let iso = check_standard_iso(fw.mu.clone(), fw.lambda.clone(), variant)?;
        let mut r = Report::new(format!("standard module vs coinvariants ({variant:?})"), fw.is_generic());
        r.push(
            format!("dimension {} = {}", iso.dim, iso.expected_dim),
            (iso.dim != iso.expected_dim).then(|| "dimension mismatch".to_string()),
        );
        r.push("cyclic vector invariant under S_nu", (!iso.cyclic_invariant).then(|| "not invariant".to_string()));
        r.push("cyclic vector eigenvalues", (!iso.eigenvector).then(|| format!("{:?} vs {:?}", iso.eigenvalues, iso.expected_eigenvalues)));
        r.push("cyclic vector generates", (!iso.generates).then(|| "rank deficit".to_string()));
        r.push("map intertwines the H_N actions", (!iso.intertwines).then(|| "fails".to_string()));
        out.push(r);
    }
    Ok(out)
}

fn letters(m: usize) -> Vec<WeylLetter> {
    let mut out: Vec<WeylLetter> = (0..m).map(WeylLetter::Tau).collect();
    out.extend([WeylLetter::Pi, WeylLetter::PiInv]);
    out
}

fn verify(suite: Suite, cfg: &RunConfig) -> CmdResult<Vec<Report>> {
    match suite {
        Suite::Relations => {
            let n = cfg.n.ok_or_else(|| Failure::usage("--N is required"))?;
            let kappa = match &cfg.kappa {
                Some(_) => cfg.kappa()?,
                None => crate::scalars::ratio(5, 2),
            };
            Ok(relations_reports(n, &kappa, ASSOCIATIVITY_TRIPLES, cfg.seed)?)
        }
        Suite::StandardIso => standard_iso_reports(&cfg.fiber()?),
        Suite::Cherednik => {
            let fw = cfg.fiber()?;
            let (l, u) = cfg.box_bounds()?;
            let c = cherednik_algebra::relation_residuals(fw.n, &fw.kappa)?
                .into_iter()
                .map(|(s, r)| (s, r.is_zero(), r.to_string()))
                .collect();
            Ok(vec![residual_report(&format!("C_{} relations", fw.n), c), verify_dictionary(&fw, cfg.degree, l, u)?])
        }
        Suite::Thm36 => {
            let fw = cfg.fiber()?;
            let b = cfg.box_for(&fw)?;
            letters(fw.m).into_iter().map(|l| Ok(verify_intertwining(l, &fw, &b)?)).collect()
        }
        Suite::Cor25 => {
            let fw = cfg.fiber()?;
            let b = cfg.box_for(&fw)?;
            [WeylLetter::Pi, WeylLetter::PiInv].into_iter().map(|l| Ok(verify_intertwining(l, &fw, &b)?)).collect()
        }
        Suite::Braid => {
            let fw = cfg.fiber()?;
            fw.require_generic()?;
            let b = cfg.box_for(&fw)?;
            Ok(vec![verify_braid(&fw, &b, 5, cfg.seed)?])
        }
    }
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn non_generic_message(fw: &FiberWeights) -> Option<String> {
    let (a, b, d) = fw.genericity_witness()?;
    let (j, k) = crate::scalars::lattice_decomposition(&d, &fw.kappa)?;
    Some(format!(
        "non-generic parameters: mu_{a} - mu_{b} = {} = {j} + ({k})·kappa lies in Z + kappa Z",
        format_scalar(&d)
    ))
}

pub fn build_chain(cfg: &RunConfig) -> CmdResult<IntertwinerChain> {
    let fw = cfg.fiber()?;
    if let Some(msg) = non_generic_message(&fw) {
        return Err(Failure { code: 1, message: msg });
    }
    let word = WeylWord::parse(fw.m, &cfg.word)?;
    let b = cfg.box_for(&fw)?;
    Ok(build_intertwiner(&word, &fw, &b)?)
}

fn chain_text(ch: &IntertwinerChain) -> String {
    let mut s = format!("word: [{}], degree {}, shift {}\n", ch.word, ch.degree, format_scalar(&ch.shift));
    let w = |v: &[Scalar]| v.iter().map(format_scalar).collect::<Vec<_>>().join(",");
    s += &format!("source: mu = ({}), lambda = ({})\n", w(&ch.source.mu), w(&ch.source.lambda));
    s += &format!("target: mu = ({}), lambda = ({})\n", w(&ch.target.mu), w(&ch.target.lambda));
    let m = &ch.composite;
    for (i, row) in m.entries.iter().enumerate() {
        let mut line = String::new();
        for (c, k) in row.iter().zip(&m.source_basis).filter(|(c, _)| !num::Zero::is_zero(*c)) {
            let (sign, mag) = if num::Signed::is_negative(c) { ("-", -c) } else { ("+", c.clone()) };
            if line.is_empty() {
                line = format!("{}{}·[{k}]", if sign == "-" { "-" } else { "" }, format_scalar(&mag));
            } else {
                line += &format!(" {sign} {}·[{k}]", format_scalar(&mag));
            }
        }
        if !line.is_empty() {
            s += &format!("{} <- {line}\n", m.target_basis[i]);
        }
    }
    s
}

/// Runs the command line and writes to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify { suite, config } => verify(*suite, config).map(|reports| {
            let passed = reports.iter().all(|r| r.passed());
            let text = match config.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let o = VerifyOutput { schema: SCHEMA, suite: suite_name(*suite), seed: config.seed, passed, reports: &reports };
                    serde_json::to_string_pretty(&o).expect("serializable") + "\n"
                }
                Format::Text => {
                    let mut s = format!("suite {} (seed {})\n", suite_name(*suite), config.seed);
                    for r in &reports {
                        s += &format!("{r}\n");
                    }
                    s + if passed { "ALL PASS\n" } else { "FAILED\n" }
                }
            };
            (text, if passed { 0 } else { 1 })
        }),
        Command::Intertwiner { config } => build_chain(config).map(|ch| {
            let text = match config.format.unwrap_or(Format::Json) {
                Format::Json => serde_json::to_string_pretty(&ch).expect("serializable") + "\n",
                Format::Text => chain_text(&ch),
            };
            (text, 0)
        }),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
