//! `qhouse` command-line front end. [`run`] is the whole program; `main` only
//! wires it to the process streams.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhouse_core::demo::{spinq_demo, SpinqDemo};
use qhouse_core::discord::{is_zero_discord, is_zero_discord_on_b, DiscordVerdict, DISCORD_TOL};
use qhouse_core::game::{
    catalog_analysis, exact_report, new_session, simulate, Action, Axis, ExactReport, ExtendedScore, Flavor,
    FlavorKind, Observation, Phase, Role, SimulationStats, Strategy,
};
use qhouse_core::golden::{verify_examples, GoldenResult};
use qhouse_core::linalg::{gates, parse_density, DensityMatrix, LocalOperation};
use qhouse_core::qhouse::{
    classify, construct_witness, impossibility_sweep, noisy_metrics, verify_witness, NoiseModel, QhClass, QhWitness,
    Thresholds, WitnessKind,
};
use qhouse_core::states::parse_state_expr;
use qhouse_core::{Error, DEFAULT_TOL};
use serde::{Deserialize, Serialize};

mod render;

pub use render::format_matrix;

#[derive(Parser, Debug)]
#[command(name = "qhouse", version, about = "Density matrices, zero-discord tests, quantum-house witnesses and the guessing game")]
pub struct Cli {
    /// Numerical tolerance (default 1e-9; 1e-8 for discord)
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    /// Named state or `*`-joined product, e.g. `epr`, `eq1`, `plus*basis-0`
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    pub state: Option<String>,
    /// JSON density matrix `{"dims": [..], "re": [[..]], "im": [[..]]}`
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Accept matrices that fail the density checks
    #[arg(long)]
    pub no_validate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PreferArg {
    EigenbasisMeasurement,
    SwapFresh,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a state with its marginals and spectrum
    State(StateArgs),
    /// Zero-discord test (exit 0 zero, 1 non-zero)
    Discord {
        #[command(flatten)]
        input: StateArgs,
        /// Party whose measurement is tested
        #[arg(long, value_enum, default_value_t = Side::A)]
        side: Side,
    },
    /// Classify a state by whether the quantum-house effect is possible
    Classify(StateArgs),
    /// Construct a witness operation
    Witness {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, value_enum)]
        prefer: Option<PreferArg>,
    },
    /// Apply an operation on A and report the joint and marginal changes
    Verify {
        #[command(flatten)]
        input: StateArgs,
        /// x, y, z, h, measure-z, measure-x, measure-y or replace-maxmix
        #[arg(long, required_unless_present = "witness", conflicts_with = "witness")]
        op: Option<String>,
        /// Witness JSON as printed by `witness --format json`
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Pseudo-pure preparation weight; enables the noisy comparison
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        depolarizing: f64,
    },
    /// Random channels on A of a pure-factor product state
    Sweep {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    #[command(subcommand)]
    Demo(DemoCommand),
    #[command(subcommand)]
    Examples(ExamplesCommand),
    #[command(subcommand)]
    Game(GameCommand),
}

#[derive(Subcommand, Debug)]
pub enum DemoCommand {
    /// EPR pair then X on qubit 1, ideal and pseudo-pure
    Spinq {
        #[arg(long, default_value_t = 1e-5)]
        eta: f64,
        #[arg(long, default_value_t = 0.0)]
        depolarizing: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExamplesCommand {
    /// Recompute the nine worked examples
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum GameCommand {
    /// Exact expected score of a strategy
    Exact {
        #[arg(long, default_value = "QUANTUM_EQ2")]
        flavor: FlavorKind,
        #[arg(long, default_value = "join-bob")]
        strategy: Strategy,
    },
    /// Monte-Carlo estimate of a strategy's score
    Simulate {
        #[arg(long, default_value = "QUANTUM_EQ2")]
        flavor: FlavorKind,
        #[arg(long, default_value = "join-bob")]
        strategy: Strategy,
        #[arg(long, default_value_t = 100_000)]
        rounds: u64,
    },
    /// Best play per measurement plan, with and without Bob
    Catalog {
        #[arg(long, default_value = "CLASSICAL_CORR_BITS")]
        flavor: FlavorKind,
    },
    /// Play as Alice at the terminal
    Play {
        #[arg(long, default_value = "QUANTUM_EQ2")]
        flavor: FlavorKind,
        #[arg(long, default_value_t = 1)]
        rounds: u64,
    },
    /// Run the HTTP game server
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        addr: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        allow_origin: Vec<String>,
        #[arg(long)]
        journal: Option<PathBuf>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StateReport {
    pub state: DensityMatrix,
    pub marginal_a: Option<DensityMatrix>,
    pub marginal_b: Option<DensityMatrix>,
    pub spectrum: Vec<f64>,
    pub purity: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub class: QhClass,
    pub effect_possible: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessReport {
    pub class: QhClass,
    pub witness: Option<QhWitness>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ExactOutput {
    pub flavor: FlavorKind,
    pub strategy: Strategy,
    pub report: ExactReport,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SimulateOutput {
    pub flavor: FlavorKind,
    pub strategy: Strategy,
    pub exact: ExtendedScore,
    pub stats: SimulationStats,
}

pub type DiscordOutput = DiscordVerdict;
pub type ExamplesOutput = Vec<GoldenResult>;
pub type DemoOutput = SpinqDemo;

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

/// Runs the program and returns its exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(&cli, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(args: &StateArgs, tol: f64) -> Result<DensityMatrix, CliError> {
    match (&args.state, &args.file) {
        (Some(expr), _) => Ok(parse_state_expr(expr)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            Ok(parse_density(&text, !args.no_validate, tol)?)
        }
        (None, None) => Err(CliError::Usage("give --state or --file".into())),
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn named_operation(name: &str) -> Result<LocalOperation, String> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "x" => LocalOperation::unitary(gates::x()),
        "y" => LocalOperation::unitary(gates::y()),
        "z" => LocalOperation::unitary(gates::z()),
        "h" => LocalOperation::unitary(gates::h()),
        "measure-z" => LocalOperation::computational_measurement(2),
        "measure-x" => LocalOperation::measure(gates::hadamard_basis()),
        "measure-y" => LocalOperation::measure(gates::circular_basis()),
        "replace-maxmix" => LocalOperation::Replace { state: DensityMatrix::maximally_mixed(vec![2]) },
        other => return Err(format!("unknown operation `{other}`")),
    })
}

fn dispatch(cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> CliResult {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::State(args) => {
            let rho = load(args, tol)?;
            let (ma, mb) = if rho.is_bipartite() { (Some(rho.marginal_a()?), Some(rho.marginal_b()?)) } else { (None, None) };
            let report = StateReport {
                spectrum: rho.spectrum().eigenvalues,
                purity: rho.purity(),
                state: rho,
                marginal_a: ma,
                marginal_b: mb,
            };
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "dims {:?}", report.state.dims())?;
                write!(out, "{}", format_matrix(report.state.matrix()))?;
                if let (Some(a), Some(b)) = (&report.marginal_a, &report.marginal_b) {
                    writeln!(out, "rho_A")?;
                    write!(out, "{}", format_matrix(a.matrix()))?;
                    writeln!(out, "rho_B")?;
                    write!(out, "{}", format_matrix(b.matrix()))?;
                }
                writeln!(out, "spectrum {}", render::list(&report.spectrum))?;
                writeln!(out, "purity {:.6}", report.purity)?;
            }
            Ok(0)
        }
        Command::Discord { input: args, side } => {
            let rho = load(args, tol)?;
            let dtol = cli.tol.unwrap_or(DISCORD_TOL);
            let v = match side {
                Side::A => is_zero_discord(&rho, dtol, cli.seed)?,
                Side::B => is_zero_discord_on_b(&rho, dtol, cli.seed)?,
            };
            if json {
                emit_json(out, &v)?;
            } else {
                writeln!(out, "{}", if v.zero_discord { "zero discord" } else { "non-zero discord" })?;
                if let Some(b) = &v.witness_basis {
                    writeln!(out, "measurement basis (columns)")?;
                    write!(out, "{}", format_matrix(b))?;
                }
                if let Some(c) = &v.certificate {
                    writeln!(out, "certificate {}", serde_json::to_string(c).unwrap_or_default())?;
                }
                writeln!(out, "max non-normality {:.3e}, max commutator {:.3e}", v.max_non_normality, v.max_commutator)?;
                if v.near_boundary {
                    writeln!(out, "note: decision is close to the tolerance")?;
                }
            }
            Ok(if v.zero_discord { 0 } else { 1 })
        }
        Command::Classify(args) => {
            let rho = load(args, tol)?;
            let class = classify(&rho, tol)?;
            let r = ClassifyReport { class, effect_possible: class != QhClass::ProductPureFactor };
            if json {
                emit_json(out, &r)?;
            } else {
                writeln!(out, "{}", serde_json::to_value(class).unwrap().as_str().unwrap_or_default())?;
                writeln!(out, "quantum-house effect {}", if r.effect_possible { "possible" } else { "impossible" })?;
            }
            Ok(0)
        }
        Command::Witness { input: args, prefer } => {
            let rho = load(args, tol)?;
            let class = classify(&rho, tol)?;
            let prefer = prefer.map(|p| match p {
                PreferArg::EigenbasisMeasurement => WitnessKind::EigenbasisMeasurement,
                PreferArg::SwapFresh => WitnessKind::SwapFresh,
            });
            let witness = construct_witness(&rho, prefer, tol)?;
            if json {
                emit_json(out, &WitnessReport { class, witness })?;
            } else {
                match &witness {
                    None => writeln!(out, "no witness: a pure factor in a product state admits no effect")?,
                    Some(w) => {
                        writeln!(out, "{}", serde_json::to_value(w.kind).unwrap().as_str().unwrap_or_default())?;
                        writeln!(out, "{}", serde_json::to_string(&w.operation).unwrap_or_default())?;
                        if let Some(s) = &w.side_info {
                            writeln!(out, "side information sigma_A'B'")?;
                            write!(out, "{}", format_matrix(s.matrix()))?;
                        }
                        let check = verify_witness(&rho, w, tol)?;
                        writeln!(out, "delta_AB {:.6}  delta_A {:.3e}", check.delta_ab, check.delta_a)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { input: args, op, witness, eta, depolarizing } => {
            let rho = load(args, tol)?;
            let w = match (op, witness) {
                (Some(name), _) => QhWitness {
                    kind: WitnessKind::ExplicitUnitary,
                    operation: named_operation(name).map_err(CliError::Usage)?,
                    side_info: None,
                },
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)?;
                    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))?;
                    let inner = v.get("witness").cloned().unwrap_or(v);
                    serde_json::from_value(inner).map_err(|e| CliError::Usage(format!("witness file: {e}")))?
                }
                (None, None) => return Err(CliError::Usage("give --op or --witness".into())),
            };
            match eta {
                None => {
                    let check = verify_witness(&rho, &w, tol)?;
                    if json {
                        emit_json(out, &check)?;
                    } else {
                        writeln!(out, "post-state")?;
                        write!(out, "{}", format_matrix(check.post_state.matrix()))?;
                        writeln!(out, "delta_AB {:.6}", check.delta_ab)?;
                        writeln!(out, "delta_A  {:.3e}", check.delta_a)?;
                        writeln!(out, "delta_B  {:.3e}", check.delta_b)?;
                    }
                }
                Some(eta) => {
                    let noise = NoiseModel { eta: *eta, depolarizing: *depolarizing };
                    let r = noisy_metrics(&rho, &w, noise, Thresholds::default(), tol)?;
                    if json {
                        emit_json(out, &r)?;
                    } else {
                        writeln!(out, "delta_AB {:.6e}  delta_A {:.3e}  noisy effect {}", r.delta_ab, r.delta_a, r.verdict)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Sweep { input: args, trials } => {
            let rho = load(args, tol)?;
            let r = impossibility_sweep(&rho, *trials, cli.seed, tol)?;
            if json {
                emit_json(out, &r)?;
            } else {
                writeln!(out, "{} channels, {} kept rho_A, {} changed rho_AB while keeping rho_A", r.trials, r.marginal_preserving, r.violations)?;
                writeln!(out, "largest joint change among marginal-preserving channels {:.3e}", r.max_joint_change_when_preserving)?;
            }
            Ok(if r.violations == 0 { 0 } else { 1 })
        }
        Command::Demo(DemoCommand::Spinq { eta, depolarizing }) => {
            let d = spinq_demo(*eta, *depolarizing, tol)?;
            if json {
                emit_json(out, &d)?;
            } else {
                for s in &d.stages {
                    writeln!(out, "== {} (ideal)", s.label)?;
                    write!(out, "{}", format_matrix(s.ideal.matrix()))?;
                    writeln!(out, "== {} (pseudo-pure, eta = {})", s.label, d.eta)?;
                    write!(out, "{}", format_matrix(s.noisy.matrix()))?;
                    writeln!(out, "rho_A ideal")?;
                    write!(out, "{}", format_matrix(s.ideal_a.matrix()))?;
                    writeln!(out, "rho_A pseudo-pure")?;
                    write!(out, "{}", format_matrix(s.noisy_a.matrix()))?;
                }
                writeln!(out, "delta_AB ideal {:.6}, pseudo-pure {:.6e}, delta_A {:.3e}", d.delta_ab_ideal, d.delta_ab_noisy, d.delta_a_noisy)?;
            }
            Ok(0)
        }
        Command::Examples(ExamplesCommand::Verify) => {
            let results = verify_examples();
            if json {
                emit_json(out, &results)?;
            } else {
                for r in &results {
                    let status = if r.passed { "PASS" } else { "FAIL" };
                    write!(out, "{status} Example {}: {}", r.number, r.title)?;
                    if r.passed {
                        writeln!(out)?;
                    } else {
                        writeln!(out, " ({})", r.detail)?;
                    }
                }
            }
            Ok(if results.iter().all(|r| r.passed) { 0 } else { 1 })
        }
        Command::Game(g) => game(g, cli, input, out),
    }
}

fn game(cmd: &GameCommand, cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> CliResult {
    let json = cli.format == Format::Json;
    match cmd {
        GameCommand::Exact { flavor, strategy } => {
            let report = exact_report(&Flavor::new(*flavor), *strategy);
            if json {
                emit_json(out, &ExactOutput { flavor: *flavor, strategy: *strategy, report })?;
            } else {
                writeln!(out, "{flavor} / {strategy}: expected score {}", report.score)?;
                writeln!(
                    out,
                    "P(caught) = {}, P(win) = {}, P(ask Bob) = {}",
                    report.catch_probability, report.win_probability, report.ask_bob_probability
                )?;
            }
        }
        GameCommand::Simulate { flavor, strategy, rounds } => {
            let f = Flavor::new(*flavor);
            let stats = simulate(&f, *strategy, *rounds, cli.seed);
            let exact = exact_report(&f, *strategy).score;
            if json {
                emit_json(out, &SimulateOutput { flavor: *flavor, strategy: *strategy, exact, stats })?;
            } else {
                writeln!(out, "{flavor} / {strategy}: {} rounds, seed {}", stats.rounds, stats.seed)?;
                writeln!(out, "mean finite score {:.4} +/- {:.4} (exact {exact})", stats.mean_finite_score, stats.std_error)?;
                writeln!(out, "caught {} times ({:.5} +/- {:.5})", stats.caught, stats.catch_frequency, stats.catch_std_error)?;
            }
        }
        GameCommand::Catalog { flavor } => {
            let r = catalog_analysis(&Flavor::new(*flavor));
            if json {
                emit_json(out, &r)?;
            } else {
                writeln!(out, "{} measurement plans", r.plans.len())?;
                writeln!(out, "best without Bob        {}", r.best_bob_free)?;
                writeln!(out, "best with Bob optional  {}", r.best_bob_optional)?;
                writeln!(out, "best always asking Bob  {}", r.best_bob_always)?;
                writeln!(out, "Bob {}", if r.bob_never_helps() { "never helps" } else { "helps" })?;
            }
        }
        GameCommand::Play { flavor, rounds } => play(*flavor, *rounds, cli.seed, json, input, out)?,
        GameCommand::Serve { addr, port, allow_origin, journal } => {
            let config = qhouse_server::ServerConfig {
                addr: addr.clone(),
                port: *port,
                allow_origin: allow_origin.clone(),
                journal: journal.clone(),
            };
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(qhouse_server::serve(config))?;
        }
    }
    Ok(0)
}

fn prompt(out: &mut dyn Write, input: &mut dyn BufRead, text: &str) -> Result<Option<String>, CliError> {
    write!(out, "{text} ")?;
    out.flush()?;
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        return Ok(None);
    }
    Ok(Some(line.trim().to_ascii_lowercase()))
}

fn parse_axis(word: Option<&str>) -> Option<Axis> {
    word.map_or(Some(Axis::Z), |w| w.parse().ok())
}

fn parse_alice(line: &str, phase: Phase) -> Option<Action> {
    let mut words = line.split_whitespace();
    let verb = words.next()?;
    match (verb, phase) {
        ("r" | "ready", Phase::Step2Precheck) => Some(Action::Ready),
        ("m" | "measure", Phase::Step2Precheck | Phase::Step4Examine) => Some(Action::Measure { basis: parse_axis(words.next())? }),
        ("b" | "bob", Phase::Step4Examine | Phase::Step4Decide) => {
            let a = parse_axis(words.next())?;
            let b = parse_axis(words.next())?;
            Some(Action::AskBob { alice_basis: a, bob_basis: b })
        }
        ("g" | "guess", Phase::Step4Examine | Phase::Step4Decide | Phase::Step5) => match words.next()? {
            "yes" | "y" | "performed" => Some(Action::Guess { performed: true }),
            "no" | "n" | "not" => Some(Action::Guess { performed: false }),
            _ => None,
        },
        _ => None,
    }
}

fn play(flavor: FlavorKind, rounds: u64, seed: u64, json: bool, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    let f = Flavor::new(flavor);
    let mut scores = Vec::new();
    writeln!(out, "{}", f.disclosure())?;
    for round in 0..rounds {
        let mut s = new_session(f.clone(), qhouse_core::qhouse::trial_seed(seed, round));
        writeln!(out, "-- round {}", round + 1)?;
        while !s.is_done() {
            let phase = s.phase();
            if phase.acting_role() == Some(Role::Charlie) {
                let action = if phase == Phase::Step2Check { Action::Check } else { Action::Operate };
                match s.advance(Role::Charlie, action).expect("Charlie's move is legal") {
                    Observation::Checked { caught: true } => writeln!(out, "Charlie checks your qubit: you were caught tampering")?,
                    Observation::Checked { caught: false } => writeln!(out, "Charlie checks your qubit: fine")?,
                    _ => writeln!(out, "Charlie may or may not have done something to your qubit")?,
                }
                continue;
            }
            let hint = match phase {
                Phase::Step2Precheck => "[r]eady | [m]easure <z|x|y>",
                Phase::Step4Examine => "[m]easure <z|x|y> | [g]uess <yes|no> | [b]ob [alice basis] [bob basis]",
                Phase::Step4Decide => "[g]uess <yes|no> | [b]ob [alice basis] [bob basis]",
                _ => "[g]uess <yes|no>  (did Charlie perform the operation?)",
            };
            let Some(line) = prompt(out, input, &format!("{hint} >"))? else {
                writeln!(out)?;
                return Err(CliError::Usage("input ended before the round finished".into()));
            };
            let Some(action) = parse_alice(&line, phase) else {
                writeln!(out, "not understood")?;
                continue;
            };
            match s.advance(Role::Alice, action) {
                Ok(Observation::Measured(m)) => writeln!(out, "outcome {} in basis {}", m.outcome, m.basis)?,
                Ok(Observation::Joint(j)) => writeln!(
                    out,
                    "joint outcome: Alice {} ({}), Bob {} ({})",
                    j.alice.outcome, j.alice.basis, j.bob.outcome, j.bob.basis
                )?,
                Ok(_) => {}
                Err(e) => writeln!(out, "{e}")?,
            }
        }
        let t = s.transcript();
        let score = t.score.expect("finished round is scored");
        scores.push(score);
        if json {
            writeln!(out, "{}", t.to_json_line())?;
        } else {
            writeln!(
                out,
                "score {score}; Charlie {} the operation; prepared {} {}",
                if t.charlie_coin == Some(true) { "performed" } else { "did not perform" },
                t.prepared_alice,
                t.prepared_bob
            )?;
        }
    }
    let total = ExtendedScore::expectation(scores.iter().map(|s| (qhouse_core::game::Prob::from_integer(1), s)));
    writeln!(out, "total {total} over {} rounds", scores.len())?;
    Ok(())
}
