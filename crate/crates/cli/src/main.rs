//! `povmkit` — scripted access to every check the library performs.
//!
//! All inputs and outputs are JSON; matrices are row-major nested arrays and
//! angles are radians.  Arguments that expect JSON accept either a file path,
//! `-` for stdin, or an inline literal (anything starting with `{` or `[`).
//!
//! Exit codes are part of the contract:
//!
//! | code | meaning                                  |
//! |------|------------------------------------------|
//! | 0    | success (`compat`: verdict Compatible)   |
//! | 1    | failed check (`compat`: Incompatible)    |
//! | 2    | malformed input (I/O, JSON, CLI usage)   |
//! | 3    | domain error (invalid parameters)        |
//! | 4    | `compat`: verdict Undetermined           |
//! | 5    | node budget exceeded                     |

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use povmkit::circle_quantizer::{
    lower_symbol, mean_and_doubled_fourier, quantize, quantize_trapezoid, upper_symbol,
    QuantizerConfig,
};
use povmkit::polarizer_sim::{measure, MeasurementScenario, ScenarioSpec};
use povmkit::povm_compat::{
    compatibility_decide, necessary_condition, sequential_povm, sequential_probabilities,
    CompatibilityDecision, Effect,
};
use povmkit::son_quantizer::{
    haar_volume, matrix_element_orthonormality_n, resolution_identity_n, EulerAngles, HaarGrid,
    SimplexEta, DEFAULT_NODE_BUDGET,
};
use povmkit::toeplitz_naimark::{
    naimark_arc_check, povm_additivity_check, toeplitz_identity_residual, Arc, SubspaceO,
};
use povmkit::{FourierFunction, Mat2, Mat4, SymMat2};

/// Environment variable overriding the SO(n) quadrature node budget.
const BUDGET_ENV: &str = "POVMKIT_NODE_BUDGET";

#[derive(Parser)]
#[command(name = "povmkit", version, about = "POVM families on the Euclidean plane", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantize a trigonometric series against the family ρ_{r,φ+φ₀}
    Quantize(QuantizeArgs),
    /// Lower or upper symbol of a symmetric 2×2 operator
    Symbol(SymbolArgs),
    /// Toeplitz compression of multiplication by f versus the direct integral
    Toeplitz(ToeplitzArgs),
    /// Naimark dilation checks on arcs of the circle
    Naimark(NaimarkArgs),
    /// Joint-measurability decision for two dichotomic POVMs
    Compat(CompatArgs),
    /// Sequential two-polarizer POVM and its statistics
    Sequential(SequentialArgs),
    /// Pointer–beam polarizer measurement
    Polarizer(PolarizerArgs),
    /// SO(n) Haar quadrature report
    SonCheck(SonCheckArgs),
    /// Run the full acceptance suite
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct QuantizeArgs {
    /// FourierFunction JSON: {"a0": number, "harmonics": [[k, ck, sk], ...]}
    #[arg(long)]
    fourier: String,
    /// Mixing parameter of the quantizer family, in [0, 1]
    #[arg(long)]
    r: f64,
    /// Reference angle of the quantizer family, radians
    #[arg(long, default_value_t = 0.0)]
    phi0: f64,
    /// Use the N-node trapezoid backend instead of the exact path
    #[arg(long, value_name = "N")]
    trapezoid: Option<usize>,
}

#[derive(Copy, Clone, ValueEnum)]
enum SymbolDirection {
    Lower,
    Upper,
}

#[derive(Args)]
struct SymbolArgs {
    /// Which symbol to compute
    #[arg(long, value_enum)]
    direction: SymbolDirection,
    /// Symmetric matrix JSON: {"a": number, "b": number, "d": number}
    #[arg(long)]
    matrix: String,
    /// Mixing parameter of the quantizer family, in [0, 1]
    #[arg(long)]
    r: f64,
    /// Reference angle of the quantizer family, radians
    #[arg(long, default_value_t = 0.0)]
    phi0: f64,
}

#[derive(Args)]
struct ToeplitzArgs {
    /// FourierFunction JSON
    #[arg(long)]
    fourier: String,
    /// Subspace index: 1 for {cos φ, sin φ}, 2 for {−sin φ, cos φ}
    #[arg(long, default_value_t = 1)]
    j: u8,
}

#[derive(Args)]
struct NaimarkArgs {
    /// Arc endpoints [a, b) with 0 ≤ a < b ≤ 2π
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "partition")]
    arc: Option<Vec<f64>>,
    /// Partition of [0, 2π) as JSON [[start, end], ...]
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Args)]
struct CompatArgs {
    /// First effect JSON: {"alpha": number, "phi": number, "r": number}
    #[arg(long)]
    effect1: String,
    /// Second effect JSON
    #[arg(long)]
    effect2: String,
    /// Boundary band of the decision; verdicts inside ±tol are Undetermined
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct SequentialArgs {
    /// Angle of the first polarizer, radians
    #[arg(long)]
    first: f64,
    /// Angle of the second polarizer, radians
    #[arg(long)]
    second: f64,
    /// Optional input density matrix JSON {"a": ..., "b": ..., "d": ...}
    #[arg(long)]
    rho: Option<String>,
}

#[derive(Args)]
struct PolarizerArgs {
    /// Scenario JSON: {"pointer": {"s", "theta"}, "beam": {"r", "phi"},
    /// "device": {"r", "phi"}}
    #[arg(long)]
    scenario: String,
}

#[derive(Args)]
struct SonCheckArgs {
    /// Dimension n ≥ 2
    #[arg(long)]
    n: usize,
    /// η vector JSON, e.g. [0.2, 0.0, -0.2]; defaults to that pattern
    #[arg(long)]
    eta: Option<String>,
    /// Nodes per angle (default: 16 for n ≤ 3, 8 above)
    #[arg(long, conflicts_with = "counts")]
    nodes: Option<usize>,
    /// Per-angle node counts as JSON mirroring the Euler layout,
    /// e.g. [[16], [16, 12]] for n = 3
    #[arg(long)]
    counts: Option<String>,
    /// Residual tolerance for the exit status
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Skip the n⁴-pair orthonormality pass (the most expensive part)
    #[arg(long)]
    skip_orthonormality: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// Emit structured results instead of one line per criterion
    #[arg(long)]
    json: bool,
    /// Seed of the reproducible random sweeps
    #[arg(long, default_value_t = povmkit::acceptance::DEFAULT_SEED)]
    seed: u64,
}

/* Error-to-exit-code plumbing ************************************************/

enum CliError {
    /// Unreadable or unparseable input: exit 2.
    Input(String),
    /// Library-level error: exit 3 or 5 by variant.
    Core(povmkit::Error),
}

impl From<povmkit::Error> for CliError {
    fn from(e: povmkit::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(povmkit::Error::BudgetExceeded { .. }) => 5,
            CliError::Core(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Input(msg) => format!("input error: {msg}"),
            CliError::Core(e) => format!("error: {e}"),
        }
    }
}

/// Reads an argument as inline JSON, stdin (`-`), or a file path.
fn read_payload(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let payload = read_payload(arg)?;
    serde_json::from_str(&payload).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

/// Effects are parsed permissively and validated afterwards, so a
/// well-formed JSON payload violating the effect condition reports a domain
/// error (exit 3) rather than a malformed input (exit 2).
#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct EffectParams {
    alpha: f64,
    phi: f64,
    r: f64,
}

fn parse_effect(arg: &str, what: &str) -> Result<Effect, CliError> {
    let p: EffectParams = parse_json(arg, what)?;
    Ok(Effect::new(p.alpha, p.phi, p.r)?)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn mat2_rows(m: &Mat2) -> [[f64; 2]; 2] {
    m.0
}

fn sym_rows(m: &SymMat2) -> [[f64; 2]; 2] {
    [[m.a, m.b], [m.b, m.d]]
}

fn mat4_rows(m: &Mat4) -> [[f64; 4]; 4] {
    m.0
}

/* Command implementations ****************************************************/

#[derive(Serialize)]
struct QuantizeReport {
    mean: f64,
    cc: f64,
    cs: f64,
    matrix: [[f64; 2]; 2],
}

fn cmd_quantize(args: &QuantizeArgs) -> Result<u8, CliError> {
    let f: FourierFunction = parse_json(&args.fourier, "fourier function")?;
    let q = QuantizerConfig::new(args.r, args.phi0)?;
    let a = match args.trapezoid {
        Some(0) => return Err(CliError::Core(povmkit::Error::Domain("trapezoid needs N ≥ 1".into()))),
        Some(n) => quantize_trapezoid(&f, &q, n),
        None => quantize(&f, &q),
    };
    let (mean, cc, cs) = mean_and_doubled_fourier(&f);
    print_json(&QuantizeReport { mean, cc, cs, matrix: sym_rows(&a) });
    Ok(0)
}

fn cmd_symbol(args: &SymbolArgs) -> Result<u8, CliError> {
    let m: SymMat2 = parse_json(&args.matrix, "symmetric matrix")?;
    let q = QuantizerConfig::new(args.r, args.phi0)?;
    let f = match args.direction {
        SymbolDirection::Lower => lower_symbol(&m, &q),
        SymbolDirection::Upper => upper_symbol(&m, &q)?,
    };
    print_json(&f);
    Ok(0)
}

#[derive(Serialize)]
struct ToeplitzReport {
    compression: [[f64; 2]; 2],
    rank_one: [[f64; 2]; 2],
    residual: f64,
}

fn cmd_toeplitz(args: &ToeplitzArgs) -> Result<u8, CliError> {
    let f: FourierFunction = parse_json(&args.fourier, "fourier function")?;
    let j = SubspaceO::from_index(args.j)?;
    let (compression, direct, residual) = toeplitz_identity_residual(&f, j);
    print_json(&ToeplitzReport {
        compression: mat2_rows(&compression),
        rank_one: sym_rows(&direct),
        residual,
    });
    Ok(0)
}

#[derive(Serialize)]
struct ArcReport {
    povm_path: [[f64; 2]; 2],
    compression_path: [[f64; 2]; 2],
    residual: f64,
}

#[derive(Serialize)]
struct PartitionReport {
    residual: f64,
    min_eigenvalue: f64,
    parts: Vec<[[f64; 2]; 2]>,
}

fn cmd_naimark(args: &NaimarkArgs) -> Result<u8, CliError> {
    match (&args.arc, &args.partition) {
        (Some(endpoints), None) => {
            let check = naimark_arc_check(endpoints[0], endpoints[1])?;
            print_json(&ArcReport {
                povm_path: sym_rows(&check.povm_path),
                compression_path: sym_rows(&check.compression_path),
                residual: check.residual,
            });
            Ok(0)
        }
        (None, Some(partition)) => {
            let pairs: Vec<(f64, f64)> = parse_json(partition, "partition")?;
            let arcs = pairs
                .into_iter()
                .map(|(a, b)| Arc::new(a, b))
                .collect::<povmkit::Result<Vec<_>>>()?;
            let check = povm_additivity_check(&arcs)?;
            print_json(&PartitionReport {
                residual: check.residual,
                min_eigenvalue: check.min_eigenvalue,
                parts: check.parts.iter().map(sym_rows).collect(),
            });
            Ok(0)
        }
        _ => Err(CliError::Input("pass exactly one of --arc A B or --partition".into())),
    }
}

#[derive(Serialize)]
struct CompatReport {
    verdict: &'static str,
    necessary_value: f64,
    necessary_holds: bool,
    max_slack: f64,
    effect1: Effect,
    effect2: Effect,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g11: Option<[[f64; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g10: Option<[[f64; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g01: Option<[[f64; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g00: Option<[[f64; 2]; 2]>,
    /// Sampled (α, slack) pairs certifying emptiness, present when
    /// incompatible.
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_scan: Option<Vec<(f64, f64)>>,
}

fn cmd_compat(args: &CompatArgs) -> Result<u8, CliError> {
    let e1 = parse_effect(&args.effect1, "effect1")?;
    let e2 = parse_effect(&args.effect2, "effect2")?;
    let (holds, value) = necessary_condition(&e1, &e2);
    let decision = compatibility_decide(&e1, &e2, args.tol);
    let mut report = CompatReport {
        verdict: "",
        necessary_value: value,
        necessary_holds: holds,
        max_slack: decision.max_slack(),
        effect1: e1,
        effect2: e2,
        alpha: None,
        v: None,
        g11: None,
        g10: None,
        g01: None,
        g00: None,
        alpha_scan: None,
    };
    let code = match decision {
        CompatibilityDecision::Compatible { alpha, v, joint, .. } => {
            report.verdict = "compatible";
            report.alpha = Some(alpha);
            report.v = Some([v.x, v.y]);
            report.g11 = Some(sym_rows(&joint.g11));
            report.g10 = Some(sym_rows(&joint.g10));
            report.g01 = Some(sym_rows(&joint.g01));
            report.g00 = Some(sym_rows(&joint.g00));
            0
        }
        CompatibilityDecision::Incompatible { scan, .. } => {
            report.verdict = "incompatible";
            // every 16th sample keeps the certificate readable
            report.alpha_scan = Some(
                scan.iter()
                    .step_by(16)
                    .map(|s| (s.alpha, s.slack))
                    .collect(),
            );
            1
        }
        CompatibilityDecision::Undetermined { .. } => {
            report.verdict = "undetermined";
            4
        }
    };
    print_json(&report);
    Ok(code)
}

#[derive(Serialize)]
struct SequentialReport {
    f_plus: [[f64; 2]; 2],
    f_minus: [[f64; 2]; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    p1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p0: Option<f64>,
}

fn cmd_sequential(args: &SequentialArgs) -> Result<u8, CliError> {
    let povm = sequential_povm(args.first, args.second);
    let (p1, p0) = match &args.rho {
        Some(rho_arg) => {
            let rho: SymMat2 = parse_json(rho_arg, "density matrix")?;
            let (p1, p0) = sequential_probabilities(&rho, args.first, args.second)?;
            (Some(p1), Some(p0))
        }
        None => (None, None),
    };
    print_json(&SequentialReport {
        f_plus: sym_rows(&povm.plus()),
        f_minus: sym_rows(&povm.minus()),
        p1,
        p0,
    });
    Ok(0)
}

#[derive(Serialize)]
struct PolarizerReport {
    p_parallel: f64,
    p_perp: f64,
    post_state: [[f64; 4]; 4],
}

fn cmd_polarizer(args: &PolarizerArgs) -> Result<u8, CliError> {
    let spec: ScenarioSpec = parse_json(&args.scenario, "scenario")?;
    let scenario = MeasurementScenario::from_spec(&spec)?;
    let outcome = measure(&scenario);
    print_json(&PolarizerReport {
        p_parallel: outcome.p_parallel,
        p_perp: outcome.p_perp,
        post_state: mat4_rows(&outcome.post_state),
    });
    Ok(0)
}

#[derive(Serialize)]
struct SonReport {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes_per_angle: Option<usize>,
    total_nodes: u128,
    eta: Vec<f64>,
    volume_quadrature: f64,
    volume_product_from_1: f64,
    volume_product_from_2: f64,
    matching_product: Option<u8>,
    identity_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    orthonormality_residual: Option<f64>,
}

fn cmd_son_check(args: &SonCheckArgs) -> Result<u8, CliError> {
    if args.n < 2 {
        return Err(CliError::Core(povmkit::Error::Domain(format!(
            "dimension n = {} below 2",
            args.n
        ))));
    }
    let budget = match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .parse::<u128>()
            .map_err(|_| CliError::Input(format!("{BUDGET_ENV} must be an integer, got {raw:?}")))?,
        Err(_) => DEFAULT_NODE_BUDGET,
    };
    let (grid, nodes_label) = match &args.counts {
        Some(raw) => {
            let counts: Vec<Vec<usize>> = parse_json(raw, "counts")?;
            (HaarGrid::with_counts(args.n, &counts)?, None)
        }
        None => {
            let nodes = args.nodes.unwrap_or(if args.n <= 3 { 16 } else { 8 });
            (HaarGrid::uniform(args.n, nodes)?, Some(nodes))
        }
    };
    let grid = grid.with_budget(budget);
    grid.check_budget()?;

    let eta = match &args.eta {
        Some(raw) => SimplexEta::new(parse_json(raw, "eta")?)?,
        None => {
            // (c, 0, …, −c) with c inside the simplex bound −1/n
            let c = 0.2f64.min(1.0 / (2.0 * args.n as f64));
            let mut v = vec![0.0; args.n];
            v[0] = c;
            v[args.n - 1] = -c;
            SimplexEta::new(v)?
        }
    };

    let volume = haar_volume(args.n, &grid)?;
    let identity_residual = resolution_identity_n(&eta, &EulerAngles::identity(args.n)?, &grid)?;
    let orthonormality_residual = if args.skip_orthonormality {
        None
    } else {
        Some(matrix_element_orthonormality_n(args.n, &grid)?)
    };

    let ok = identity_residual <= args.tol
        && orthonormality_residual.is_none_or(|r| r <= args.tol);
    print_json(&SonReport {
        n: args.n,
        nodes_per_angle: nodes_label,
        total_nodes: grid.total_nodes(),
        eta: eta.components().to_vec(),
        volume_quadrature: volume.quadrature,
        volume_product_from_1: volume.product_from_1,
        volume_product_from_2: volume.product_from_2,
        matching_product: volume.matching_product(),
        identity_residual,
        orthonormality_residual,
    });
    Ok(if ok { 0 } else { 1 })
}

fn cmd_selftest(args: &SelftestArgs) -> Result<u8, CliError> {
    let results = povmkit::acceptance::run_all(args.seed);
    let all_passed = results.iter().all(|r| r.passed);
    if args.json {
        print_json(&results);
    } else {
        for r in &results {
            println!(
                "{} criterion {:>4}: {} — {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.name,
                r.detail
            );
        }
        println!(
            "{}/{} criteria passed",
            results.iter().filter(|r| r.passed).count(),
            results.len()
        );
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn run() -> Result<u8, CliError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Quantize(args) => cmd_quantize(args),
        Command::Symbol(args) => cmd_symbol(args),
        Command::Toeplitz(args) => cmd_toeplitz(args),
        Command::Naimark(args) => cmd_naimark(args),
        Command::Compat(args) => cmd_compat(args),
        Command::Sequential(args) => cmd_sequential(args),
        Command::Polarizer(args) => cmd_polarizer(args),
        Command::SonCheck(args) => cmd_son_check(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
