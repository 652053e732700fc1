use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use prym5::genus2::elliptic::parse_elliptic_fixture;
use prym5::genus2::{Embedding, Genus2Curve, Polarization};
use prym5::net::recover_free_involution;
use prym5::pipeline::{self, G2Stage, NetSource};
use prym5::quadrics::parse_finite_fixture;
use prym5::quintic::parse_tagged_form;
use prym5::report::{Report, RunConfig};
use prym5::rng::stream;
use prym5::spacecurve::ConePair;
use prym5::{Error, Gf, Result};

#[derive(Parser)]
#[command(name = "prym5", version, about = "Nets of quadrics, genus-2 webs and quadrisecant checks over finite fields")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Opts {
    /// Field as `p` or `p,k`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Input file; relative paths are also looked up under $PRYM5_FIXTURES.
    #[arg(long, global = true)]
    fixture: Option<PathBuf>,
    /// Print the full JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_lines: u64,
    #[arg(long, global = true, default_value_t = 1 << 24, value_parser = clap::value_parser!(u64).range(1..))]
    budget_points: u64,
}

#[derive(Subcommand)]
enum Verb {
    /// Discriminant, involution and fixed points of a net of quadrics.
    Net {
        #[arg(long, conflicts_with = "random")]
        block: bool,
        #[arg(long)]
        random: bool,
    },
    /// Plane quintic analysis.
    Quintic {
        #[arg(value_enum)]
        action: QuinticAction,
    },
    /// Genus-2 curve in P^4 and its web of quadrics.
    G2 {
        #[arg(value_enum)]
        stage: Stage,
        /// Web member as comma-separated coordinates.
        #[arg(long, value_delimiter = ',')]
        quadric: Option<Vec<u64>>,
    },
    /// Curves in P^3.
    P3 {
        #[arg(value_enum)]
        action: P3Action,
    },
    /// Projected canonical curve checks.
    #[command(name = "pipeline-3-16")]
    Pipeline316,
    /// Glued elliptic curves, singular web and cone liaison.
    PipelineLiaison,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuinticAction {
    Analyze,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Web,
    Discriminant,
    Bisecant,
    Tropes,
    Polar,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum P3Action {
    Census,
    Liaison,
    Numerology,
}

fn parse_field(spec: &str) -> Result<Gf> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Input(format!("bad field spec `{spec}`")));
    match parts.as_slice() {
        [p] => Gf::prime(num(p)?),
        [p, k] => Gf::new(num(p)?, num(k)? as u32),
        _ => Err(Error::Input(format!("bad field spec `{spec}`"))),
    }
}

fn resolve(path: &Path) -> PathBuf {
    if path.is_absolute() || path.exists() {
        return path.to_path_buf();
    }
    match std::env::var_os("PRYM5_FIXTURES") {
        Some(dir) => Path::new(&dir).join(path),
        None => path.to_path_buf(),
    }
}

fn read_fixture(opts: &Opts) -> Result<Option<String>> {
    let Some(path) = &opts.fixture else { return Ok(None) };
    let path = resolve(path);
    std::fs::read_to_string(&path).map(Some).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn config(opts: &Opts, default_p: u64) -> Result<RunConfig> {
    let field = match &opts.field {
        Some(s) => parse_field(s)?,
        None => Gf::prime(default_p)?,
    };
    Ok(RunConfig { field, seed: opts.seed, budget_points: opts.budget_points, budget_lines: opts.budget_lines })
}

fn run(cli: &Cli) -> Result<Report> {
    let opts = &cli.opts;
    let fixture = read_fixture(opts)?;
    match &cli.verb {
        Verb::Net { random, .. } => {
            let (cfg, source) = match fixture {
                Some(text) => {
                    let net = parse_finite_fixture(&text, 3)?;
                    let mut cfg = config(opts, 11)?;
                    cfg.field = *net.field();
                    (cfg, NetSource::Fixture(net))
                }
                None if *random => (config(opts, 7)?, NetSource::Random),
                None => (config(opts, 11)?, NetSource::Block),
            };
            pipeline::net_report(&cfg, source)
        }
        Verb::Quintic { action: QuinticAction::Analyze } => {
            let text = fixture.ok_or_else(|| Error::Input("quintic analyze needs --fixture".into()))?;
            let p = parse_tagged_form(text.lines().find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')).unwrap_or(""), 3)?;
            pipeline::quintic_report(&p, opts.budget_points)
        }
        Verb::G2 { stage, quadric } => {
            let emb = match fixture {
                Some(text) => Embedding::parse_fixture(&text)?,
                None => {
                    let cfg = config(opts, 7)?;
                    let minus_one = cfg.field.p() - 1;
                    Embedding::new(Genus2Curve::new(&cfg.field, &[minus_one, 0, 0, 0, 0, 0, 1])?, Polarization::ThreeK)?
                }
            };
            let mut cfg = config(opts, 7)?;
            cfg.field = *emb.field();
            let stage = match stage {
                Stage::Web => G2Stage::Web,
                Stage::Discriminant => G2Stage::Discriminant,
                Stage::Bisecant => G2Stage::Bisecant,
                Stage::Tropes => G2Stage::Tropes,
                Stage::Polar => G2Stage::Polar,
                Stage::All => G2Stage::All,
            };
            pipeline::g2_report(&cfg, &emb, stage, quadric.clone())
        }
        Verb::P3 { action: P3Action::Census } => pipeline::census_report(&config(opts, 11)?),
        Verb::P3 { action: P3Action::Numerology } => Ok(pipeline::numerology_report()),
        Verb::P3 { action: P3Action::Liaison } => {
            let mut cfg = config(opts, 7)?;
            let cones = match fixture {
                Some(text) => {
                    let forms: Vec<_> = text
                        .lines()
                        .map(|l| l.split('#').next().unwrap_or("").trim())
                        .filter(|l| !l.is_empty())
                        .map(|l| parse_tagged_form(l, 4))
                        .collect::<Result<_>>()?;
                    let [a, b] = <[_; 2]>::try_from(forms).map_err(|_| Error::Parse("expected two cone equations".into()))?;
                    ConePair::new(a, b)?
                }
                None => {
                    let a = pipeline::random_marked_cubic(&cfg.field, &mut stream(cfg.seed, 0))?;
                    let b = pipeline::random_marked_cubic(&cfg.field, &mut stream(cfg.seed, 1))?;
                    pipeline::cones_over(&a, &b)?
                }
            };
            cfg.field = *cones.first.field();
            pipeline::liaison_report(&cfg, &cones)
        }
        Verb::Pipeline316 => {
            let mut cfg = config(opts, 11)?;
            match fixture {
                None => pipeline::pipeline_3_16(&cfg),
                Some(text) => {
                    let net = parse_finite_fixture(&text, 3)?;
                    cfg.field = *net.field();
                    let inv = recover_free_involution(&net, 2)?;
                    pipeline::pipeline_3_16_for(&cfg, &net, inv.as_ref().map(|i| &i.sigma))
                }
            }
        }
        Verb::PipelineLiaison => {
            let mut cfg = config(opts, 7)?;
            let (a, b) = match fixture {
                Some(text) => parse_elliptic_fixture(&text)?,
                None => (
                    pipeline::random_marked_cubic(&cfg.field, &mut stream(cfg.seed, 0))?,
                    pipeline::random_marked_cubic(&cfg.field, &mut stream(cfg.seed, 1))?,
                ),
            };
            cfg.field = *a.cubic.field();
            pipeline::pipeline_liaison(&cfg, a, b)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            if cli.opts.json {
                print!("{}", rep.to_json());
            } else {
                print!("{}", rep.to_text());
            }
            if !rep.passed() {
                eprintln!("verdict failure: {}", rep.failed_checks().join(", "));
            }
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            if cli.opts.json {
                let v = serde_json::json!({ "schema": prym5::report::SCHEMA, "error": e.tag(), "message": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            }
            eprintln!("error[{}]: {e}", e.tag());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
