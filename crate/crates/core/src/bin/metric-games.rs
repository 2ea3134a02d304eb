use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use metric_games::config::{ConfigError, ScenarioConfig, TargetSpec};
use metric_games::game::target::Intervals;
use metric_games::game::{outcome, run_game, GameError, GameVariant, LimitRadius, Transcript};
use metric_games::lab::{
    box_counting_estimate, classify_parameters, dimension_exact, dimension_formula, measure_upper_bound,
    truncated_minimax, DiscreteGameSpec,
};
use metric_games::perfect::{build_perfect_tree, verify_tree_with};
use metric_games::scalar::Scalar;
use metric_games::space::FormalBall;
use metric_games::suites::{run_suite, SuiteOptions};

#[derive(Parser)]
#[command(name = "metric-games", version, about = "Ball games on exact metric spaces")]
struct Cli {
    /// Directory for written artifacts.
    #[arg(long, global = true, env = "METRIC_GAMES_OUT", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play one scenario and write its transcript.
    Play(Scenario),
    /// Run an invariant suite: geometry, engine, strategies, tree or lab.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Build and audit a perfect tree for the scenario's Alice strategy.
    Tree {
        #[command(flatten)]
        scenario: Scenario,
        #[arg(long)]
        depth: usize,
    },
    /// Regime labels, measure and dimension of the attractor, grid minimax.
    #[command(subcommand)]
    Lab(Lab),
}

/// Flags override the fields of the config file, if one is given.
#[derive(Args)]
struct Scenario {
    config: Option<PathBuf>,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    initial: Option<String>,
    #[arg(long)]
    alice: Option<String>,
    #[arg(long)]
    bob: Option<String>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Transcript file name, relative to the output directory.
    #[arg(long)]
    transcript: Option<String>,
}

#[derive(Subcommand)]
enum Lab {
    Classify {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        banach: bool,
        #[arg(long)]
        output: Option<String>,
    },
    Measure {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value = "1")]
        rho: String,
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        output: Option<String>,
    },
    Dimension {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long)]
        output: Option<String>,
    },
    Minimax {
        #[arg(long)]
        variant: String,
        #[arg(long, default_value = "0@1")]
        initial: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        step: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    /// Bad input or a failed check: exit 1.
    Input(String),
    /// A strategy produced an illegal move: exit 2.
    Illegal(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        match e {
            GameError::StrategyIllegalMove { .. } => Failure::Illegal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Writes via a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, contents).map_err(|e| input(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_scenario(s: &Scenario) -> Result<ScenarioConfig, Failure> {
    let mut table: toml::Table = match &s.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| input(format!("{}: {e}", p.display())))?;
            text.parse().map_err(|e| input(format!("{}: {e}", p.display())))?
        }
        None => toml::Table::new(),
    };
    let mut set = |k: &str, v: Option<toml::Value>| {
        if let Some(v) = v {
            table.insert(k.to_string(), v);
        }
    };
    set("variant", s.variant.clone().map(toml::Value::String));
    set("space", s.space.clone().map(toml::Value::String));
    set("c", s.c.clone().map(toml::Value::String));
    set("initial", s.initial.clone().map(toml::Value::String));
    set("alice", s.alice.clone().map(toml::Value::String));
    set("bob", s.bob.clone().map(toml::Value::String));
    set("horizon", s.horizon.map(|h| toml::Value::Integer(h as i64)));
    set("target", s.target.clone().map(toml::Value::String));
    set("seed", s.seed.map(|h| toml::Value::Integer(h as i64)));
    if let Some(t) = &s.transcript {
        let out = table
            .entry("output")
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        if let toml::Value::Table(o) = out {
            o.insert("transcript".into(), toml::Value::String(t.clone()));
        }
    }
    Ok(ScenarioConfig::from_toml(&toml::to_string(&table).map_err(input)?)?)
}

fn summary(t: &Transcript, cfg: &ScenarioConfig) -> String {
    let target = cfg.target.build();
    let o = outcome(t, target.as_ref());
    let radii: Vec<&Scalar> = t.bob_balls().map(|b| &b.radius).collect();
    let max_ratio = radii.windows(2).map(|w| w[1] / w[0]).max();
    let limit = match &o.limit_radius {
        LimitRadius::Exact(r) => format!("exact({r})"),
        LimitRadius::Bracket { lower, upper } => format!("[{lower},{upper}]"),
    };
    let mut s = format!(
        "rounds={} final_radius={} limit_radius={limit} shrinking={} winner={:?} relation={:?}",
        t.rounds(),
        o.enclosure.radius,
        o.shrinking,
        o.winner,
        o.relation
    );
    if let Some(r) = max_ratio {
        s.push_str(&format!(" max_bob_ratio={r}"));
    }
    if let Some(a) = &t.abort {
        s.push_str(&format!(" aborted_at={} by={}", a.index, a.strategy));
    }
    s
}

fn play(out: &Path, s: &Scenario) -> Result<(), Failure> {
    let cfg = load_scenario(s)?;
    let game = cfg.game()?;
    let (alice, bob) = cfg.strategies()?;
    let t = run_game(&game, alice.as_ref(), bob.as_ref(), cfg.initial.clone(), cfg.horizon)?;
    let name = cfg.output.transcript.clone().unwrap_or_else(|| "transcript.jsonl".into());
    write_atomic(&out.join(name), &t.to_jsonl())?;
    let line = summary(&t, &cfg);
    if let Some(p) = &cfg.output.summary {
        write_atomic(&out.join(p), &format!("{line}\n"))?;
    }
    println!("{line}");
    Ok(())
}

fn tree(out: &Path, s: &Scenario, depth: usize) -> Result<(), Failure> {
    let cfg = load_scenario(s)?;
    let game = cfg.game()?;
    let (alice, _) = cfg.strategies()?;
    let root = Transcript::new(game, cfg.initial.clone()).map_err(input)?;
    let tree = build_perfect_tree(alice.as_ref(), &root, depth).map_err(input)?;
    let rep = verify_tree_with(&tree, Some(alice.as_ref()));
    write_atomic(&out.join("tree.jsonl"), &tree.to_jsonl())?;
    write_atomic(&out.join("tree_report.csv"), &rep.to_csv())?;
    print!("{}", rep.to_csv());
    let gap = rep.min_leaf_gap.as_ref().map_or("none".into(), Scalar::to_string);
    println!("leaves={} checks={} failures={} min_leaf_gap={gap}", rep.leaves, rep.checks, rep.failures.len());
    for f in &rep.failures {
        println!("  {f}");
    }
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Input("tree audit failed".into()))
    }
}

fn scalar(name: &str, text: &str) -> Result<Scalar, Failure> {
    text.parse().map_err(|e| input(format!("--{name}: {e}")))
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn lab(out: &Path, cmd: &Lab) -> Result<(), Failure> {
    let (text, output) = match cmd {
        Lab::Classify {
            variant,
            alpha,
            beta,
            c,
            banach,
            output,
        } => {
            let beta = scalar("beta", beta)?;
            let need_alpha = || alpha.as_deref().ok_or_else(|| input("--alpha is required")).and_then(|a| scalar("alpha", a));
            let v = match variant.as_str() {
                "schmidt" => GameVariant::schmidt(need_alpha()?, beta),
                "strong" => GameVariant::strong(need_alpha()?, beta),
                "absolute" => GameVariant::absolute(beta),
                other => return Err(input(format!("unknown variant {other}"))),
            };
            let r = classify_parameters(&v, &scalar("c", c)?, *banach).map_err(input)?;
            let alpha = v.alpha().map(Scalar::to_string).unwrap_or_default();
            let row = vec![
                variant.clone(),
                alpha,
                v.beta().to_string(),
                r.c.to_string(),
                banach.to_string(),
                r.label.to_string(),
                r.clause.to_string(),
                r.certificate_text(),
            ];
            let header = ["variant", "alpha", "beta", "c", "banach", "label", "clause", "certificate"];
            (csv_text(&header, &[row]), output)
        }
        Lab::Measure { beta, rho, m, output } => {
            let b = measure_upper_bound(&scalar("beta", beta)?, &scalar("rho", rho)?, *m).map_err(input)?;
            let piece = b.cover.first().map(|(lo, hi)| (hi - lo).to_string()).unwrap_or_default();
            let row = vec![b.beta.to_string(), b.rho.to_string(), m.to_string(), b.bound.to_string(), b.cover.len().to_string(), piece];
            (csv_text(&["beta", "rho", "M", "bound", "pieces", "piece_diameter"], &[row]), output)
        }
        Lab::Dimension { beta, depth, output } => {
            let b = scalar("beta", beta)?;
            let formula = dimension_formula(&b).map_err(input)?;
            let exact = dimension_exact(&b).map(|s| s.to_string()).unwrap_or_default();
            let est = box_counting_estimate(&b, *depth).map_err(input)?;
            let row = vec![b.to_string(), depth.to_string(), exact, format!("{formula:.6}"), format!("{est:.6}")];
            let header = ["beta", "depth", "dimension_exact", "dimension_float", "box_counting_float"];
            (csv_text(&header, &[row]), output)
        }
        Lab::Minimax {
            variant,
            initial,
            target,
            step,
            depth,
            output,
        } => {
            let v: GameVariant = variant.parse().map_err(input)?;
            let initial: FormalBall = initial.parse().map_err(input)?;
            let target = match target.parse::<TargetSpec>()? {
                TargetSpec::Intervals(i) => i,
                TargetSpec::None => Intervals::new(Vec::new()),
                _ => return Err(input("minimax targets are intervals:a..b,... or none")),
            };
            let spec = DiscreteGameSpec {
                variant: v,
                step: scalar("step", step)?,
                initial,
                target,
                depth: *depth,
            };
            let val = truncated_minimax(&spec).map_err(input)?;
            let row = vec![
                spec.variant.to_string(),
                spec.initial.to_string(),
                metric_games::game::TargetSet::name(&spec.target),
                spec.step.to_string(),
                depth.to_string(),
                val.optimistic.to_string(),
                val.pessimistic.to_string(),
                val.verdict().to_string(),
                val.nodes.to_string(),
            ];
            let header = ["variant", "initial", "target", "step", "depth", "optimistic", "pessimistic", "verdict", "nodes"];
            (csv_text(&header, &[row]), output)
        }
    };
    if let Some(name) = output {
        write_atomic(&out.join(name), &text)?;
    }
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.cmd {
        Cmd::Play(s) => play(&cli.out_dir, s),
        Cmd::Verify {
            suite,
            cases,
            seed,
            depth,
        } => {
            let opts = SuiteOptions {
                cases: *cases,
                seed: *seed,
                depth: *depth,
            };
            match run_suite(suite, opts) {
                Ok(rep) => {
                    println!("{rep}");
                    if rep.passed() {
                        Ok(())
                    } else {
                        Err(Failure::Input(format!("suite {suite} failed")))
                    }
                }
                Err(e) => Err(input(e)),
            }
        }
        Cmd::Tree { scenario, depth } => tree(&cli.out_dir, scenario, *depth),
        Cmd::Lab(cmd) => lab(&cli.out_dir, cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Illegal(m)) => {
            eprintln!("illegal move: {m}");
            ExitCode::from(2)
        }
    }
}
