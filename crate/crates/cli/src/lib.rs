//! Argument parsing, dispatch and report rendering for the `repring` binary.
//!
//! [`run`] never touches the process state except for optional golden files,
//! which makes it directly testable.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use repring_core::completion::{
    circle_completion_report, completed_sum, i_squared_check, mod_ln_tower, split_report, verify_idempotent,
    CompletionParams,
};
use repring_core::cyclo::RootOfUnity;
use repring_core::heisenberg::{decompose_tensor_bruteforce, oracle_level, tensor_irr, IrrTriple};
use repring_core::homalg::{
    bar_method, bar_tor, bar_tor_unnormalized, circle_colimit, group_algebra_is_semisimple, ideal_power_quotient, tor_cyclic,
    CircleChain, Coefficients, ColimitOptions, CyclicModule, CyclicModuleComplex, FiniteAlgebra,
};
use repring_core::repring::{generator_product, transfer_product, CoeffDomain, GradedElement, Generator};
use repring_core::verify::{roots_up_to, run_suite, Profile, Suite, VerifyOptions};
use repring_core::{Error, VERSION};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "repring", version, about = "Exact representation-ring computations with reproducible reports")]
pub struct Cli {
    /// Output format; `tor`, `table` and `verify` default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Also write the JSON report to <golden-dir>/<subcommand>/<param-hash>.json.
    #[arg(long, global = true)]
    pub golden_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose V(alpha, beta, zeta) (x) V(alpha2, beta2, zeta2).
    Tensor(TensorArgs),
    /// Product of two ring generators such as b:1/2 and c:1/2.
    Product(ProductArgs),
    /// Multiplication table of all generators with root order <= max-order.
    Table(TableArgs),
    /// Tor over Z[C_m] through the periodic resolution.
    Tor(TorArgs),
    /// Tor over F_l[C_m] from the bar complex.
    Bar(BarArgs),
    /// Circle-group colimits and ideal-power quotients.
    Circle(CircleArgs),
    /// The l-adic tower of the l-typical ring with its checks.
    Complete(CompleteArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tensor(_) => "tensor",
            Command::Product(_) => "product",
            Command::Table(_) => "table",
            Command::Tor(_) => "tor",
            Command::Bar(_) => "bar",
            Command::Circle(_) => "circle",
            Command::Complete(_) => "complete",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct TensorArgs {
    /// Central character of the first factor, as a/m.
    #[arg(long)]
    pub zeta: String,
    #[arg(long, default_value = "0/1")]
    pub alpha: String,
    #[arg(long, default_value = "0/1")]
    pub beta: String,
    /// Central character of the second factor, as a/m.
    #[arg(long)]
    pub zeta2: String,
    #[arg(long, default_value = "0/1")]
    pub alpha2: String,
    #[arg(long, default_value = "0/1")]
    pub beta2: String,
    /// Also decompose by brute force over H(Z/N); N is raised to the lcm of
    /// the root orders when they do not divide it.
    #[arg(long)]
    pub oracle_level: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ProductArgs {
    /// Left generator, e.g. a:1/3.
    #[arg(long)]
    pub left: String,
    /// Right generator, e.g. b:1/2.
    #[arg(long)]
    pub right: String,
    /// Coefficients modulo prime^precision instead of Z.
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub precision: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long, default_value_t = 4)]
    pub max_order: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct TorArgs {
    /// Order of the cyclic group.
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value_t = 5)]
    pub maxdeg: usize,
    /// `z` for integer coefficients, or a prime l for F_l.
    #[arg(long, default_value = "z")]
    pub coefficients: String,
    /// `trivial`, `free`, or `mod:<l>` for the two-term complex Z --l--> Z.
    #[arg(long, default_value = "trivial")]
    pub module: String,
}

#[derive(Debug, Args, Serialize)]
pub struct BarArgs {
    #[arg(long)]
    pub prime: u64,
    /// Order m of the cyclic group in F_l[C_m].
    #[arg(long)]
    pub group_order: usize,
    #[arg(long, default_value_t = 4)]
    pub maxdeg: usize,
    /// Cross-check against the unnormalized bar complex.
    #[arg(long)]
    pub unnormalized: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CircleArgs {
    #[command(subcommand)]
    pub mode: CircleMode,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleMode {
    /// Colimit of F_l (x) [Z[C_m] --(t-1)--> Z[C_m]] along a divisibility chain.
    Chain {
        #[arg(long)]
        prime: u64,
        /// Comma-separated chain m_0,m_1,... with each entry dividing the next.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u64>,
    },
    /// Z[C_{p^k}]/I^s with an optional colimit over k.
    Ideal {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        colimit: bool,
        #[arg(long, default_value_t = 4)]
        window: u32,
        #[arg(long, default_value_t = 24)]
        max_levels: u32,
    },
    /// Degree-0 tower Z/p^s for s <= s-max and its limit.
    Complete {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        s_max: u32,
        #[arg(long, default_value_t = 4)]
        window: u32,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct CompleteArgs {
    #[arg(long)]
    pub prime: u64,
    /// Precision n_max of the tower R/l^n.
    #[arg(long, default_value_t = 4)]
    pub precision: u32,
    /// Exponent K: components are the roots of order dividing prime^K.
    #[arg(long, default_value_t = 2)]
    pub order_bound: u32,
    /// Add the idempotent e_zeta for this root (order prime to the prime).
    #[arg(long)]
    pub idempotent: Option<String>,
    /// Add the splitting report for components zeta^M = 1.
    #[arg(long)]
    pub split_bound: Option<u64>,
    /// Add the I^2 divisibility table.
    #[arg(long)]
    pub i_squared: bool,
    /// Add a completed direct sum with these ranks per degree.
    #[arg(long, value_delimiter = ',')]
    pub sum_ranks: Option<Vec<usize>>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    #[arg(long, value_enum, default_value_t = ProfileArg::Desk)]
    pub profile: ProfileArg,
    #[arg(long)]
    pub max_order: Option<u64>,
    #[arg(long)]
    pub oracle_level: Option<u64>,
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub tor_max_m: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteArg {
    Products,
    Oracle,
    Tor,
    Completion,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileArg {
    Quick,
    Desk,
    Full,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// A rendered report before formatting.
struct Report {
    result: Value,
    csv: Option<String>,
    passed: bool,
}

impl Report {
    fn json(result: Value) -> Self {
        Self {
            result,
            csv: None,
            passed: true,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> CmdResult<Value> {
    serde_json::to_value(x).map_err(|e| Failure::Internal(e.to_string()))
}

fn root(s: &str) -> CmdResult<RootOfUnity> {
    Ok(s.parse::<RootOfUnity>()?)
}

fn params_of(cmd: &Command) -> CmdResult<Value> {
    match cmd {
        Command::Tensor(a) => to_value(a),
        Command::Product(a) => to_value(a),
        Command::Table(a) => to_value(a),
        Command::Tor(a) => to_value(a),
        Command::Bar(a) => to_value(a),
        Command::Circle(a) => to_value(a),
        Command::Complete(a) => to_value(a),
        Command::Verify(a) => to_value(a),
    }
}

fn tensor(a: &TensorArgs) -> CmdResult<Report> {
    let x = IrrTriple::new(root(&a.alpha)?, root(&a.beta)?, root(&a.zeta)?);
    let y = IrrTriple::new(root(&a.alpha2)?, root(&a.beta2)?, root(&a.zeta2)?);
    let rule = tensor_irr(&x, &y);
    let mut out = json!({
        "left": x.canonical_form().to_string(),
        "right": y.canonical_form().to_string(),
        "decomposition": to_value(&rule)?,
        "dimension": rule.total_dim(),
    });
    let mut passed = true;
    if let Some(pref) = a.oracle_level {
        let n = oracle_level(&x, &y, pref);
        let brute = decompose_tensor_bruteforce(&x, &y, n)?;
        passed = brute == rule;
        out["oracle"] = json!({ "level": n, "decomposition": to_value(&brute)?, "agrees": passed });
    }
    Ok(Report {
        result: out,
        csv: None,
        passed,
    })
}

fn product(a: &ProductArgs) -> CmdResult<Report> {
    let g: Generator = a.left.parse()?;
    let h: Generator = a.right.parse()?;
    let dom = match a.prime {
        Some(p) => CoeffDomain::modular(p, a.precision)?,
        None => CoeffDomain::Integers,
    };
    let prod = GradedElement::generator(g, dom).mul(&GradedElement::generator(h, dom))?;
    let mut out = json!({ "left": g.to_string(), "right": h.to_string(), "product": to_value(&prod)? });
    let mut passed = true;
    if g.degree() + h.degree() <= 2 {
        let oracle = transfer_product(&g, &h)?.reduce_to(dom)?;
        passed = oracle == prod;
        out["transfer"] = json!({ "product": to_value(&oracle)?, "agrees": passed });
    }
    Ok(Report {
        result: out,
        csv: None,
        passed,
    })
}

fn table(a: &TableArgs) -> CmdResult<Report> {
    if a.max_order == 0 || a.max_order > 24 {
        return Err(Failure::Input("max-order must lie in 1..=24".into()));
    }
    let gens: Vec<Generator> = roots_up_to(a.max_order)
        .into_iter()
        .flat_map(Generator::of_component)
        .collect();
    let mut rows = Vec::new();
    let mut csv = String::from("left,right,coefficient,target\n");
    for g in &gens {
        for h in &gens {
            let (coeff, target) = match generator_product(g, h) {
                Some((k, c)) => (c.to_string(), k.to_string()),
                None => ("0".to_string(), String::new()),
            };
            csv.push_str(&format!("{g},{h},{coeff},{target}\n"));
            rows.push(json!({ "left": g.to_string(), "right": h.to_string(), "coefficient": coeff, "target": target }));
        }
    }
    Ok(Report {
        result: Value::Array(rows),
        csv: Some(csv),
        passed: true,
    })
}

fn tor(a: &TorArgs) -> CmdResult<Report> {
    let coeff = match a.coefficients.as_str() {
        "z" | "Z" => Coefficients::Integers,
        s => Coefficients::Field(
            s.parse()
                .map_err(|_| Failure::Input(format!("coefficients must be z or a prime, got {s:?}")))?,
        ),
    };
    let module = match a.module.as_str() {
        "trivial" => CyclicModuleComplex::concentrated(CyclicModule::trivial(a.m)?),
        "free" => CyclicModuleComplex::concentrated(CyclicModule::free(a.m)?),
        s => match s.strip_prefix("mod:").and_then(|l| l.parse::<u64>().ok()) {
            Some(l) => CyclicModuleComplex::mod_ell(a.m, l)?,
            None => return Err(Failure::Input(format!("unknown module {s:?}"))),
        },
    };
    let g = tor_cyclic(a.m, coeff, &module, a.maxdeg)?;
    Ok(Report {
        result: to_value(&g)?,
        csv: Some(g.to_csv()),
        passed: true,
    })
}

fn bar(a: &BarArgs) -> CmdResult<Report> {
    let alg = FiniteAlgebra::group_algebra(a.prime, a.group_order)?;
    let dims = bar_tor(&alg, a.maxdeg)?;
    let mut out = json!({
        "dimensions": dims,
        "method": to_value(&bar_method(&alg, a.maxdeg))?,
        "semisimple": group_algebra_is_semisimple(a.group_order as u64, a.prime),
    });
    let mut passed = true;
    if a.unnormalized {
        let raw = bar_tor_unnormalized(&alg, a.maxdeg)?;
        passed = raw == dims;
        out["unnormalized"] = json!({ "dimensions": raw, "agrees": passed });
    }
    Ok(Report {
        result: out,
        csv: None,
        passed,
    })
}

fn circle(a: &CircleArgs) -> CmdResult<Report> {
    match &a.mode {
        CircleMode::Chain { prime, levels } => {
            let c = circle_colimit(*prime, &CircleChain::from_levels(levels)?)?;
            Ok(Report::json(to_value(&c)?))
        }
        CircleMode::Ideal {
            p,
            k,
            s,
            colimit,
            window,
            max_levels,
        } => {
            let opts = ColimitOptions {
                window: *window,
                max_levels: *max_levels,
            };
            Ok(Report::json(to_value(&ideal_power_quotient(*p, *k, *s, *colimit, opts)?)?))
        }
        CircleMode::Complete { p, s_max, window } => {
            Ok(Report::json(to_value(&circle_completion_report(*p, *s_max, *window)?)?))
        }
    }
}

fn complete(a: &CompleteArgs) -> CmdResult<Report> {
    let params = CompletionParams::new(a.prime, a.precision, a.order_bound)?;
    let tower = mod_ln_tower(params)?;
    let report = tower.verify()?;
    let mut passed = report.passed();
    let mut out = json!({
        "coefficients": format!("Z/{}", num_pow(a.prime, a.precision)),
        "tower": to_value(&report)?,
    });
    if let Some(z) = &a.idempotent {
        let c = verify_idempotent(&root(z)?, a.prime, a.precision)?;
        passed &= c.idempotent && c.kernel_identity;
        out["idempotent"] = to_value(&c)?;
    }
    if let Some(m) = a.split_bound {
        let s = split_report(a.prime, a.precision, m)?;
        passed &= s.passed();
        out["split"] = to_value(&s)?;
    }
    if a.i_squared {
        let r = i_squared_check(a.prime, a.order_bound)?;
        passed &= r.passed;
        out["i_squared"] = to_value(&r)?;
    }
    if let Some(ranks) = &a.sum_ranks {
        let m = completed_sum(ranks, params);
        let checks = m.check_transitions()?;
        passed &= checks.iter().all(|c| c.passed);
        out["completed_sum"] = json!({ "ranks": m.ranks_by_degree(), "checks": to_value(&checks)? });
    }
    Ok(Report {
        result: out,
        csv: None,
        passed,
    })
}

fn num_pow(p: u64, n: u32) -> String {
    match u128::from(p).checked_pow(n) {
        Some(v) => v.to_string(),
        None => format!("{p}^{n}"),
    }
}

fn verify(a: &VerifyArgs) -> CmdResult<Report> {
    let suite = match a.suite {
        SuiteArg::Products => Suite::Products,
        SuiteArg::Oracle => Suite::Oracle,
        SuiteArg::Tor => Suite::Tor,
        SuiteArg::Completion => Suite::Completion,
        SuiteArg::All => Suite::All,
    };
    let profile = match a.profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Desk => Profile::Desk,
        ProfileArg::Full => Profile::Full,
    };
    let mut opts = VerifyOptions::profile(profile);
    if let Some(m) = a.max_order {
        opts.max_order = m;
    }
    if let Some(n) = a.oracle_level {
        opts.oracle_level = n;
    }
    if let Some(n) = a.precision {
        opts.precision = n;
    }
    if let Some(m) = a.tor_max_m {
        opts.tor_max_m = m;
    }
    if opts.max_order == 0 || opts.max_order > 12 || opts.oracle_level == 0 || opts.precision == 0 {
        return Err(Failure::Input("verify bounds must be positive, with max-order <= 12".into()));
    }
    let summary = run_suite(suite, &opts)?;
    Ok(Report {
        result: to_value(&summary)?,
        csv: Some(summary.to_csv()),
        passed: summary.passed(),
    })
}

fn dispatch(cmd: &Command) -> CmdResult<Report> {
    match cmd {
        Command::Tensor(a) => tensor(a),
        Command::Product(a) => product(a),
        Command::Table(a) => table(a),
        Command::Tor(a) => tor(a),
        Command::Bar(a) => bar(a),
        Command::Circle(a) => circle(a),
        Command::Complete(a) => complete(a),
        Command::Verify(a) => verify(a),
    }
}

/// Hex SHA-256 of the canonical JSON of `{command, params}`.
pub fn param_hash(command: &str, params: &Value) -> String {
    let canonical = json!({ "command": command, "params": params }).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn csv_header(command: &str, params: &Value) -> String {
    format!("# repring {VERSION} {command} {params}\n")
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    let fail = |code: i32, msg: String| Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    };
    let params = match params_of(&cli.command) {
        Ok(p) => p,
        Err(Failure::Input(m)) => return fail(EXIT_INPUT, m),
        Err(Failure::Internal(m)) => return fail(EXIT_INTERNAL, m),
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(Failure::Input(m)) => return fail(EXIT_INPUT, m),
        Err(Failure::Internal(m)) => return fail(EXIT_INTERNAL, m),
    };
    let document = json!({
        "command": name,
        "version": VERSION,
        "params": params,
        "passed": report.passed,
        "result": report.result,
    });
    let json_text = match serde_json::to_string_pretty(&document) {
        Ok(s) => s + "\n",
        Err(e) => return fail(EXIT_INTERNAL, e.to_string()),
    };
    let default_csv = matches!(cli.command, Command::Tor(_) | Command::Table(_) | Command::Verify(_));
    let format = cli.format.unwrap_or(if default_csv { Format::Csv } else { Format::Json });
    let stdout = match (format, &report.csv) {
        (Format::Csv, Some(csv)) => csv_header(name, &params) + csv,
        (Format::Csv, None) => return fail(EXIT_INPUT, format!("{name} has no csv output; use --format json")),
        (Format::Json, _) => json_text.clone(),
    };
    let mut stderr = String::new();
    if let Some(dir) = &cli.golden_dir {
        let path = dir.join(name).join(format!("{}.json", param_hash(name, &params)));
        let written = path
            .parent()
            .map(fs::create_dir_all)
            .transpose()
            .and_then(|_| fs::write(&path, &json_text));
        match written {
            Ok(()) => stderr.push_str(&format!("wrote {}\n", path.display())),
            Err(e) => return fail(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())),
        }
    }
    let code = if report.passed {
        EXIT_OK
    } else {
        stderr.push_str("error: one or more checks failed\n");
        EXIT_CHECK_FAILED
    };
    Outcome { code, stdout, stderr }
}
