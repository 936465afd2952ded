use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pizzactl::oracle::{oracle_check, oracle_text, OracleParams};
use pizzactl::report::{compare_text, report_json, report_text, run_pipeline};
use pizzactl::scene::{parse_scene, Scene, SceneBody, SceneError};
use pizzactl::svg::render_svg;

#[derive(Parser)]
#[command(name = "pizzactl", about = "Outer Lipschitz invariants of pairs of ruled Holder triangles", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a scene file.
    Validate {
        #[arg(long)]
        scene: PathBuf,
    },
    /// Minimal pizzas of the pair.
    Pizza {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The full στ-invariant.
    Sigtau {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the στ-invariants of two scenes.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the link diagram.
    Render {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check exact orders against numeric log-log slopes.
    Oracle {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, default_value_t = 24)]
        samples: usize,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &PathBuf) -> Result<Scene, SceneError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SceneError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_scene(&text)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), SceneError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| SceneError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run() -> Result<(), SceneError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { scene } => {
            let s = load(&scene)?;
            println!(
                "{}: valid {} scene",
                s.name,
                match s.body {
                    SceneBody::Geometric { .. } => "geometric",
                    SceneBody::Abstract { .. } => "abstract",
                }
            );
            Ok(())
        }
        Command::Pizza { scene, format, out } => {
            let s = load(&scene)?;
            let (st, report) = run_pipeline(&s)?;
            let content = match format {
                Format::Json => report_json(&report),
                _ => report_text(&st, &report),
            };
            emit(&out, &content)
        }
        Command::Sigtau { scene, format, out } => {
            let s = load(&scene)?;
            let (st, report) = run_pipeline(&s)?;
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&report.chart)
                    .expect("chart serialization"),
                _ => report_text(&st, &report),
            };
            emit(&out, &content)
        }
        Command::Compare { a, b, out } => {
            let sa = load(&a)?;
            let sb = load(&b)?;
            let (sta, _) = run_pipeline(&sa)?;
            let (stb, _) = run_pipeline(&sb)?;
            emit(&out, &compare_text(&sta, &stb))
        }
        Command::Render { scene, format, out } => {
            let s = load(&scene)?;
            let (st, _) = run_pipeline(&s)?;
            let _ = format;
            emit(&out, &render_svg(&st))
        }
        Command::Oracle {
            scene,
            samples,
            seed,
            tolerance,
            out,
        } => {
            let s = load(&scene)?;
            let SceneBody::Geometric { t, tp } = &s.body else {
                return Err(SceneError::Validation(
                    "the oracle needs a geometric scene".into(),
                ));
            };
            let params = OracleParams {
                samples,
                seed,
                tolerance,
                ..OracleParams::default()
            };
            let outcome = oracle_check(t, tp, &params);
            emit(&out, &oracle_text(&outcome))?;
            if outcome.mismatches() > 0 {
                return Err(SceneError::Validation(format!(
                    "oracle mismatch on {} sample(s)",
                    outcome.mismatches()
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
