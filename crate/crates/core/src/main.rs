use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dgla_holonomy::algebra::parse_rational;
use dgla_holonomy::bundle::{parse_model, read_nerve, read_sigma, BundleError, ModelBundle};
use dgla_holonomy::catalog::{tensor_model, LieFamily};
use dgla_holonomy::checks::{
    run_campaign, run_campaign_timed, CampaignParams, CheckKind, CheckStatus, Format,
    InstanceReport, VerificationReport,
};
use dgla_holonomy::deligne::nerve_validate;
use dgla_holonomy::hinich::{generate_mc, sigma_defect};
use dgla_holonomy::integration::integrate_simplex_unchecked;
use dgla_holonomy::report::Report;

#[derive(Parser)]
#[command(
    name = "dgla-holonomy",
    version,
    about = "Exact multiplicative integration for nilpotent DGLAs"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    format: OutputFormat,
    /// List the property suites run by `verify` and exit.
    #[arg(long)]
    list_checks: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write the model `L ⊗ C` of a catalog Lie algebra.
    Catalog {
        /// One of abelianN, h3, h5, h3+line, free2step3, filiform4, filiform5.
        family: String,
        /// Differential parameter, `p` or `p/q`.
        #[arg(long, default_value = "1")]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Load a model and optional simplices, running every invariant.
    CheckModel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        sigma: Option<PathBuf>,
        #[arg(long)]
        nerve: Option<PathBuf>,
    },
    /// Maurer-Cartan defect of a simplex of Σ, by bidegree.
    CheckMc {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
    },
    /// Write a random gauge-orbit Maurer-Cartan simplex.
    Generate {
        #[arg(long)]
        model: PathBuf,
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a simplex of Σ to a simplex of the nerve and validate it.
    Integrate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        /// Expected simplex dimension.
        #[arg(short)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the vertex, edge, triangle and cocycle conditions of a nerve simplex.
    ValidateNerve {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        nerve: PathBuf,
    },
    /// Run a seeded randomized property suite.
    Verify {
        /// Suite name, see --list-checks.
        check: CheckKind,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
        /// Bound on the nilpotency class.
        #[arg(long)]
        class: Option<usize>,
        /// Bound on the Lie algebra dimension (at most 6).
        #[arg(long)]
        dim: Option<usize>,
        /// Bound on the polynomial degree (at most 3).
        #[arg(long)]
        degree: Option<u32>,
        /// Record the wall time in the report.
        #[arg(long)]
        timing: bool,
    },
}

/// Exit status for parse errors and invariant failures of inputs.
const INPUT_ERROR: u8 = 3;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

impl From<BundleError> for Failure {
    fn from(e: BundleError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn single(
    command: String,
    seed: u64,
    descriptor: String,
    checks: Vec<CheckStatus>,
) -> VerificationReport {
    VerificationReport {
        command,
        seed,
        instances: vec![InstanceReport {
            index: 0,
            descriptor,
            checks,
            shrunk: None,
        }],
        wall_time_ms: None,
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<Option<VerificationReport>, Failure> {
    match command {
        Command::Catalog { family, p, out } => {
            let family: LieFamily = family.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
            let p = parse_rational(&p).map_err(|e| Failure::Usage(e.to_string()))?;
            let model =
                tensor_model(&family.structure(), &p).map_err(|e| Failure::Input(e.to_string()))?;
            write_out(out.as_deref(), &model.to_json())?;
            Ok(None)
        }
        Command::CheckModel {
            model,
            sigma,
            nerve,
        } => {
            let bundle = ModelBundle::load(&model, sigma.as_deref(), nerve.as_deref())?;
            let m = &bundle.model;
            let descriptor = format!(
                "dim {} (degrees -1..2: {} {} {} {}), class {}{}{}",
                m.len(),
                m.dim(-1),
                m.dim(0),
                m.dim(1),
                m.dim(2),
                m.class(),
                bundle
                    .sigma
                    .as_ref()
                    .map(|s| format!(", sigma n={}", s.n))
                    .unwrap_or_default(),
                bundle
                    .nerve
                    .as_ref()
                    .map(|s| format!(", nerve n={}", s.n))
                    .unwrap_or_default(),
            );
            let checks = vec![CheckStatus::from_report("invariants", Report::default())];
            Ok(Some(single(
                format!("check-model {}", model.display()),
                0,
                descriptor,
                checks,
            )))
        }
        Command::CheckMc { model, sigma } => {
            let m = parse_model(&model)?;
            let s = read_sigma(&m, &sigma)?;
            let defect = sigma_defect(&m, &s);
            let checks = (0..=3)
                .map(|k| {
                    let mut report = Report::default();
                    if let Some(c) = defect.component(k) {
                        report.push("defect", format!("{c:?}"));
                    }
                    CheckStatus::from_report(format!("bidegree ({k},{})", 2 - k as i32), report)
                })
                .collect();
            let descriptor = format!("n={}", s.n);
            Ok(Some(single(
                format!("check-mc {}", sigma.display()),
                0,
                descriptor,
                checks,
            )))
        }
        Command::Generate {
            model,
            n,
            seed,
            degree,
            out,
        } => {
            let m = parse_model(&model)?;
            let mu = generate_mc(&mut ChaCha8Rng::seed_from_u64(seed), &m, n, degree);
            write_out(out.as_deref(), &mu.to_json())?;
            Ok(None)
        }
        Command::Integrate {
            model,
            sigma,
            n,
            out,
        } => {
            let bundle = ModelBundle::load(&model, Some(&sigma), None)?;
            let s = bundle.sigma.expect("loaded");
            if let Some(n) = n {
                if n != s.n {
                    return Err(Failure::Input(format!(
                        "{} holds a {}-simplex, expected n = {n}",
                        sigma.display(),
                        s.n
                    )));
                }
            }
            let nerve = integrate_simplex_unchecked(&bundle.model, &s)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let checks = vec![CheckStatus::from_report(
                "nerve",
                nerve_validate(&bundle.model, &nerve),
            )];
            let json = serde_json::to_string_pretty(&nerve.to_file()).expect("nerve serializes");
            let descriptor = match &out {
                Some(path) => {
                    write_out(Some(path), &json)?;
                    format!("n={} written to {}", s.n, path.display())
                }
                None => json,
            };
            Ok(Some(single(
                format!("integrate {}", sigma.display()),
                0,
                descriptor,
                checks,
            )))
        }
        Command::ValidateNerve { model, nerve } => {
            let m = parse_model(&model)?;
            let s = read_nerve(&m, &nerve)?;
            let checks = vec![CheckStatus::from_report("nerve", nerve_validate(&m, &s))];
            Ok(Some(single(
                format!("validate-nerve {}", nerve.display()),
                0,
                format!("n={}", s.n),
                checks,
            )))
        }
        Command::Verify {
            check,
            seed,
            count,
            class,
            dim,
            degree,
            timing,
        } => {
            let d = check.default_params();
            let params = CampaignParams {
                seed: seed.unwrap_or(d.seed),
                count: count.unwrap_or(d.count),
                class: class.unwrap_or(d.class),
                dim: dim.unwrap_or(d.dim),
                degree: degree.unwrap_or(d.degree),
            };
            if params.dim > 6 || params.degree > 3 || params.class == 0 {
                return Err(Failure::Usage(
                    "bounds: 1 <= class, dim <= 6, degree <= 3".into(),
                ));
            }
            let report = if timing {
                run_campaign_timed(check, &params)
            } else {
                run_campaign(check, &params)
            };
            Ok(Some(report))
        }
    }
}

fn list_checks() -> String {
    CheckKind::all()
        .iter()
        .map(|k| format!("{:<22}{}", k.name(), k.summary()))
        .collect::<Vec<_>>()
        .join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_checks {
        println!("{}", list_checks());
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("no command given; see --help");
        return ExitCode::from(2);
    };
    let format = match cli.format {
        OutputFormat::Human => Format::Human,
        OutputFormat::Json => Format::Structured,
    };
    match run(command) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            print!("{}", report.emit(format));
            if format == Format::Structured {
                println!();
            }
            if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
