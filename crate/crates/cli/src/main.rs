use std::collections::HashSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use edp_core::edp::{
    expected_support_mc, kept_labels, parse_report, screen, write_report, EpisodeContext,
    NullModel, ScreenConfig, ScreenMode,
};
use edp_core::episode::{parse_episode_list, write_episode_list};
use edp_core::eval::compare_methods;
use edp_core::miner::{mine_frequent, top_k_by_support, MinerConfig};
use edp_core::selfcheck::{self, Constants};
use edp_core::synth::{generate_syn, FillerMode, SynConfig};
use edp_core::{EpisodeEntry, EventSequence};

/// Free-rider episode screening: synthesize, mine, screen and evaluate.
#[derive(Parser, Debug)]
#[command(name = "edp", version, about, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the synthetic benchmark sequence and its ground truth.
    Synth(SynthArgs),
    /// Mine frequent serial episodes under minimal-occurrence support.
    Mine(MineArgs),
    /// Screen candidate episodes and write a JSON-lines report.
    Screen(ScreenArgs),
    /// Precision@k of one or more reports against a ground truth.
    Eval(EvalArgs),
    /// Run the built-in oracle suite; exits nonzero on any failure.
    Selfcheck(SelfcheckArgs),
}

#[derive(Args, Debug)]
struct ConfigArg {
    /// Read defaults from a `key=value` file; flags given on the command line win.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct SynthArgs {
    /// Sequence length.
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-timestamp probability of the noise event X.
    #[arg(long, default_value_t = 0.3)]
    p_noise: f64,
    /// Number of planted a->b->c copies.
    #[arg(long, default_value_t = 300)]
    plant_abc: usize,
    /// Number of planted d->e->f->g copies.
    #[arg(long, default_value_t = 300)]
    plant_defg: usize,
    /// Mean of the d->e->f->g gap distribution.
    #[arg(long, default_value_t = 2.0)]
    gap_mean: f64,
    /// Standard deviation of the d->e->f->g gap distribution.
    #[arg(long, default_value_t = 2.0)]
    gap_std: f64,
    #[arg(long, value_enum, default_value_t = Filler::Every)]
    filler: Filler,
    /// Sequence output path.
    #[arg(long)]
    out: PathBuf,
    /// Ground-truth episode list output path.
    #[arg(long)]
    truth_out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Filler {
    /// One filler event at every timestamp.
    Every,
    /// Filler only where no planted event sits.
    Unplanted,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct MineArgs {
    /// Sequence file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 200)]
    min_sup: usize,
    /// Maximal window size; occurrences satisfy end - start < max-window.
    #[arg(long, default_value_t = 12)]
    max_window: usize,
    /// Longest episode to mine.
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// Keep only the k most frequent episodes, written by support descending.
    #[arg(long)]
    top_k: Option<usize>,
    /// Episode list output path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Full,
    EarlyExit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Baseline {
    /// Maximum over every proper dual partition.
    Edp,
    /// Only the all-random partition.
    Ind,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct ScreenArgs {
    /// Sequence file.
    #[arg(long)]
    input: PathBuf,
    /// Candidate episode list; entries without a support are counted with --max-window.
    #[arg(long)]
    episodes: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    min_lift: f64,
    /// Worker threads for screening.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Baseline::Edp)]
    baseline: Baseline,
    /// Evaluate the partitions of each episode concurrently (implies full mode).
    #[arg(long)]
    partition_parallel: bool,
    #[arg(long, default_value_t = 12)]
    max_window: usize,
    /// Cross-check the best-partition expectation of the first N report lines by sampling.
    #[arg(long, default_value_t = 0, value_name = "N")]
    mc_check: usize,
    /// Samples per Monte-Carlo check.
    #[arg(long, default_value_t = 2_000)]
    mc_samples: usize,
    /// Seed for the Monte-Carlo checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report output path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct EvalArgs {
    /// Screening report, optionally named as `NAME=PATH`. Repeatable.
    #[arg(long, required = true, value_name = "[NAME=]PATH")]
    report: Vec<String>,
    /// Ground-truth episode list.
    #[arg(long)]
    truth: PathBuf,
    #[arg(long, default_value_t = 15)]
    k_max: usize,
    /// Metrics JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct SelfcheckArgs {
    /// Shift every frozen constant by this amount (negative control).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    perturb: f64,
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let cli = Cli::parse_from(argv);
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Splices `--config` file entries in right after the subcommand, so that any
/// flag given explicitly later on the command line overrides them.
fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    for (i, arg) in argv.iter().enumerate() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            path = argv.get(i + 1).map(PathBuf::from);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let text = read(&path)?;
    let mut injected = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{}:{}: expected key=value", path.display(), i + 1);
        };
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        if key == "config" {
            continue;
        }
        match value {
            "true" => injected.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => {
                injected.push(OsString::from(format!("--{key}")));
                injected.push(OsString::from(value));
            }
        }
    }
    let mut out = argv;
    // argv[0] is the binary, argv[1] the subcommand
    let at = out.len().min(2);
    out.splice(at..at, injected);
    Ok(out)
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Synth(a) => synth(a),
        Command::Mine(a) => mine(a),
        Command::Screen(a) => screen_cmd(a),
        Command::Eval(a) => eval(a),
        Command::Selfcheck(a) => Ok(selfcheck_cmd(a)),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_sequence(path: &Path) -> Result<EventSequence> {
    EventSequence::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn synth(a: SynthArgs) -> Result<ExitCode> {
    let cfg = SynConfig {
        n: a.n,
        plant_abc: a.plant_abc,
        plant_defg: a.plant_defg,
        gap_mean: a.gap_mean,
        gap_std: a.gap_std,
        p_noise: a.p_noise,
        filler: match a.filler {
            Filler::Every => FillerMode::Every,
            Filler::Unplanted => FillerMode::Unplanted,
        },
        seed: a.seed,
    };
    let data = generate_syn(&cfg)?;
    write(Some(&a.out), &data.sequence.serialize())?;
    if let Some(p) = &a.truth_out {
        write(Some(p), &write_episode_list(&data.truth))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn mine(a: MineArgs) -> Result<ExitCode> {
    let seq = load_sequence(&a.input)?;
    let cfg = MinerConfig {
        min_sup: a.min_sup,
        max_window: a.max_window,
        max_len: a.max_len,
        workers: 1,
    };
    let mut found = mine_frequent(&seq, &cfg)?;
    if let Some(k) = a.top_k {
        found = top_k_by_support(&found, k);
    }
    eprintln!("mined {} episodes", found.len());
    let entries: Vec<EpisodeEntry> = found.iter().map(|f| f.entry()).collect();
    write(a.out.as_deref(), &write_episode_list(&entries))?;
    Ok(ExitCode::SUCCESS)
}

fn screen_cmd(a: ScreenArgs) -> Result<ExitCode> {
    let seq = load_sequence(&a.input)?;
    let candidates = parse_episode_list(&read(&a.episodes)?)
        .with_context(|| format!("parsing {}", a.episodes.display()))?;
    if a.workers == 0 {
        bail!("--workers must be at least 1");
    }
    let cfg = ScreenConfig {
        min_lift: a.min_lift,
        mode: match a.mode {
            Mode::Full => ScreenMode::Full,
            Mode::EarlyExit => ScreenMode::EarlyExit,
        },
        null_model: match a.baseline {
            Baseline::Edp => NullModel::Edp,
            Baseline::Ind => NullModel::Ind,
        },
        partition_parallel: a.partition_parallel,
        workers: a.workers,
        max_window: a.max_window,
    };
    let records = screen(&seq, &candidates, &cfg)?;
    let kept = records.iter().filter(|r| r.kept).count();
    eprintln!("screened {} episodes, kept {kept}", records.len());
    write(a.out.as_deref(), &write_report(&records, seq.alphabet()))?;

    let mut ok = true;
    for r in records.iter().take(a.mc_check) {
        let ctx = EpisodeContext::new(&seq, &r.episode)?;
        let model = ctx.model(r.best_partition.clone())?;
        let est = expected_support_mc(&model, a.mc_samples, a.seed, None);
        let bounded = expected_support_mc(&model, a.mc_samples, a.seed, Some(a.max_window));
        let agrees = est.brackets(r.exp_sup, 3.0);
        ok &= agrees;
        eprintln!(
            "mc {:<20} exact {:.4}  sampled {:.4} +- {:.4}  bounded {:.4}  {}",
            r.arrow(),
            r.exp_sup,
            est.mean,
            est.std_error,
            bounded.mean,
            if agrees { "ok" } else { "MISMATCH" }
        );
    }
    if !ok {
        eprintln!("error: Monte-Carlo check outside 3 standard errors");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn eval(a: EvalArgs) -> Result<ExitCode> {
    let truth_entries = parse_episode_list(&read(&a.truth)?)
        .with_context(|| format!("parsing {}", a.truth.display()))?;
    let truth: HashSet<Vec<String>> = truth_entries.into_iter().map(|e| e.labels).collect();
    let mut rankings = Vec::new();
    for spec in &a.report {
        let (name, path) = match spec.split_once('=') {
            Some((name, path)) => (name.to_string(), PathBuf::from(path)),
            None => {
                let path = PathBuf::from(spec);
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| spec.clone());
                (name, path)
            }
        };
        let lines =
            parse_report(&read(&path)?).with_context(|| format!("parsing {}", path.display()))?;
        rankings.push((name, kept_labels(&lines)));
    }
    let table = compare_methods(&rankings, &truth, a.k_max);
    print!("{}", table.to_text());
    if let Some(p) = &a.out {
        write(Some(p), &(table.to_json() + "\n"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn selfcheck_cmd(a: SelfcheckArgs) -> ExitCode {
    let checks = selfcheck::run(&Constants::perturbed(a.perturb));
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        println!("selfcheck passed ({} checks)", checks.len());
        ExitCode::SUCCESS
    } else {
        println!("selfcheck FAILED ({failed} of {} checks)", checks.len());
        ExitCode::FAILURE
    }
}
