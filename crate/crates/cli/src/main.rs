use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use workbench_core::bar::{check_thm_cycbar_free, verify_cyclic_object, CyclicBar};
use workbench_core::circle::{circle_act, compose_uec, retract_step, wreath_act};
use workbench_core::cyclic::{
    act_on_point, check_lambda_iso, check_lambda_lattice, normalize_word,
};
use workbench_core::operads::{compose_json, verify_instance, INSTANCES};
use workbench_core::suite::element_round_trip;
use workbench_core::{
    run_suite, ArcSystem, CyclicElem, CyclicPoint, CyclicWord, DiskPair, FinCmMonoid, PointedCmSet,
    Rat, Report, RunConfig, Violation, WreathElem, SUITES,
};

#[derive(Parser)]
#[command(
    name = "workbench",
    version,
    about = "Exact verification of operads, arc systems and cyclic bar constructions"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every sampler
    #[arg(long, global = true, env = "WORKBENCH_SEED", default_value_t = 0)]
    seed: u64,
    /// Samples per law
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Order of the rotation group (an upper bound for suites)
    #[arg(long, global = true)]
    m: Option<u32>,
    /// Largest arity
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Largest simplicial degree
    #[arg(long, global = true)]
    qmax: Option<usize>,
    /// Lattice denominator
    #[arg(long, global = true)]
    den: Option<i64>,
    /// Write the JSON result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Operad instances
    #[command(subcommand)]
    Operad(OperadCmd),
    /// Arc systems on the quotient circle
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Words and points of the m-cyclic category
    #[command(subcommand)]
    Cyclic(CyclicCmd),
    /// Bar constructions and the comparison map
    #[command(subcommand)]
    Bar(BarCmd),
    /// Named verification suites
    #[command(subcommand)]
    Suite(SuiteCmd),
    /// Single elements
    #[command(subcommand)]
    Element(ElementCmd),
}

#[derive(Subcommand)]
enum OperadCmd {
    /// Compose JSON operations
    Compose {
        #[arg(long)]
        instance: String,
        /// Outer operation (JSON, @file or -)
        #[arg(long)]
        outer: String,
        /// JSON array of inner operations
        #[arg(long)]
        inners: String,
    },
    /// Run the law harness on one instance or all of them
    Verify {
        #[arg(long, default_value = "all")]
        instance: String,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Substitute little disks into the arcs of a system
    Compose {
        #[arg(long)]
        outer: String,
        /// JSON array of arrays of {"center", "radius"}
        #[arg(long)]
        inners: String,
    },
    /// Act by a wreath product element or rotate by an angle in turns
    Act {
        #[arg(long)]
        element: String,
        /// {"perm": [..], "members": [{"order", "exponent"}, ..]}
        #[arg(long, conflicts_with = "theta")]
        g: Option<String>,
        #[arg(long)]
        theta: Option<String>,
    },
    /// Apply the averaging retraction
    Retract {
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum CyclicCmd {
    /// Normal form of a word such as "d0.t1"
    Normalize {
        #[arg(long)]
        word: String,
        /// Source degree, when the word has no twist
        #[arg(long)]
        q: Option<usize>,
    },
    /// Apply a word to a point {"m", "r", "t"}
    Act {
        #[arg(long, default_value = "id")]
        word: String,
        #[arg(long)]
        point: String,
    },
    /// Check the comparison with configurations of points
    IsoCheck {
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
}

#[derive(Subcommand)]
enum BarCmd {
    /// Check the m-cyclic relations on a cyclic bar construction
    CyclicVerify {
        /// Monoid table (JSON, @file or -)
        #[arg(long, conflicts_with = "builtin")]
        monoid: Option<String>,
        /// trivial, c2, nil, band, f4 or z5
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Compare class counts in the free case
    ThmCycbar {
        /// Letters other than the basepoint
        #[arg(long, default_value_t = 1)]
        letters: usize,
        /// Let the rotation cycle the letters
        #[arg(long)]
        cycled: bool,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Run a suite and print its report
    Run { name: String },
    /// List the suites
    List,
}

#[derive(Subcommand)]
enum ElementCmd {
    /// Validate and re-serialize an element canonically
    Roundtrip {
        /// JSON, @file or -
        json: String,
        /// rat, perm, arc-system, cyclic-point or monoid
        #[arg(long)]
        kind: Option<String>,
    },
}

fn read_json(arg: &str) -> Result<Value> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).context("parsing JSON argument")
}

fn emit(common: &Common, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    match &common.out {
        Some(path) => {
            fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn report(suite: &str, cases: usize, mut failures: Vec<Violation>, start: Instant) -> Report {
    failures.sort();
    Report {
        suite: suite.to_string(),
        cases_run: cases,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn emit_report(common: &Common, r: &Report) -> Result<ExitCode> {
    emit(common, &serde_json::to_value(r)?)?;
    Ok(if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn rng(common: &Common) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(common.seed)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let c = &cli.common;
    let trials = c.trials.unwrap_or(1000);
    match cli.command {
        Command::Operad(OperadCmd::Compose {
            instance,
            outer,
            inners,
        }) => {
            let inners = match read_json(&inners)? {
                Value::Array(xs) => xs,
                _ => bail!("--inners must be a JSON array"),
            };
            emit(c, &compose_json(&instance, &read_json(&outer)?, &inners)?)?;
        }
        Command::Operad(OperadCmd::Verify { instance }) => {
            let start = Instant::now();
            let names: Vec<&str> = if instance == "all" {
                INSTANCES.to_vec()
            } else {
                vec![instance.as_str()]
            };
            let mut r = rng(c);
            let mut failures = Vec::new();
            for name in &names {
                failures.extend(verify_instance(name, &mut r, trials, c.nmax.unwrap_or(3))?);
            }
            return emit_report(
                c,
                &report(
                    &format!("operad:{instance}"),
                    trials * names.len(),
                    failures,
                    start,
                ),
            );
        }
        Command::Embed(EmbedCmd::Compose { outer, inners }) => {
            let x = ArcSystem::from_json(&read_json(&outer)?)?;
            let gs: Vec<Vec<DiskPair>> =
                serde_json::from_value(read_json(&inners)?).context("inner disks")?;
            emit(c, &serde_json::to_value(compose_uec(&x, &gs)?)?)?;
        }
        Command::Embed(EmbedCmd::Act { element, g, theta }) => {
            let x = ArcSystem::from_json(&read_json(&element)?)?;
            let y = match (g, theta) {
                (Some(g), _) => {
                    let g: WreathElem<CyclicElem> =
                        serde_json::from_value(read_json(&g)?).context("wreath element")?;
                    wreath_act(&g, &x)?
                }
                (None, Some(t)) => circle_act(&t.parse::<Rat>()?, &x),
                (None, None) => bail!("give --g or --theta"),
            };
            emit(c, &serde_json::to_value(y)?)?;
        }
        Command::Embed(EmbedCmd::Retract { element, steps }) => {
            let mut x = ArcSystem::from_json(&read_json(&element)?)?;
            for _ in 0..steps {
                x = retract_step(&x)?;
            }
            emit(c, &serde_json::to_value(x)?)?;
        }
        Command::Cyclic(CyclicCmd::Normalize { word, q }) => {
            let w = CyclicWord::parse(&word, c.m.unwrap_or(1), q)?;
            let n = normalize_word(&w)?;
            emit(
                c,
                &serde_json::json!({"word": w.to_string(), "source": w.source, "target": w.target(), "normal_form": n.to_string()}),
            )?;
        }
        Command::Cyclic(CyclicCmd::Act { word, point }) => {
            let p: CyclicPoint = serde_json::from_value(read_json(&point)?).context("point")?;
            let p = CyclicPoint::new(p.m, p.r, p.t)?;
            let w = CyclicWord::parse(&word, p.m, Some(p.degree()))?;
            emit(c, &serde_json::to_value(act_on_point(&w, &p)?)?)?;
        }
        Command::Cyclic(CyclicCmd::IsoCheck { q }) => {
            let start = Instant::now();
            let m = c.m.unwrap_or(1);
            let mut failures = check_lambda_iso(&mut rng(c), trials, m, q);
            let mut cases = trials;
            for den in 1..=c.den.unwrap_or(4) {
                let lat = check_lambda_lattice(m, q, den);
                cases += lat.left_classes;
                if lat.left_classes != lat.right_points {
                    failures.push(Violation::new(
                        "lattice class count",
                        format!("den={den}"),
                        lat.right_points,
                        lat.left_classes,
                    ));
                }
                failures.extend(lat.violations);
            }
            return emit_report(c, &report("cyclic:iso-check", cases, failures, start));
        }
        Command::Bar(BarCmd::CyclicVerify { monoid, builtin }) => {
            let start = Instant::now();
            let m = c.m.unwrap_or(1);
            let monoids: Vec<(String, FinCmMonoid)> = match (monoid, builtin) {
                (Some(j), _) => vec![("input".into(), FinCmMonoid::from_json(&read_json(&j)?)?)],
                (None, Some(name)) => vec![(name.clone(), FinCmMonoid::builtin(&name, m)?)],
                (None, None) => FinCmMonoid::builtins(m)
                    .into_iter()
                    .map(|(n, r)| (n.to_string(), r))
                    .collect(),
            };
            let mut r = rng(c);
            let (mut cases, mut failures) = (0, Vec::new());
            for (_, monoid) in &monoids {
                let (k, v) = verify_cyclic_object(
                    &CyclicBar::new(monoid),
                    c.qmax.unwrap_or(4),
                    trials,
                    &mut r,
                );
                cases += k;
                failures.extend(v);
            }
            return emit_report(c, &report("bar:cyclic-verify", cases, failures, start));
        }
        Command::Bar(BarCmd::ThmCycbar { letters, cycled }) => {
            let m = c.m.unwrap_or(1);
            let x = if cycled {
                PointedCmSet::cycled(letters, m)?
            } else {
                PointedCmSet::fixed(letters, m)
            };
            let rep = check_thm_cycbar_free(&x, c.nmax.unwrap_or(3), c.den.unwrap_or(4))?;
            let ok = rep.violations.is_empty()
                && rep
                    .degrees
                    .iter()
                    .all(|d| d.left_classes == d.right_classes);
            emit(c, &serde_json::to_value(&rep)?)?;
            return Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            });
        }
        Command::Suite(SuiteCmd::List) => {
            emit(c, &serde_json::to_value(SUITES)?)?;
        }
        Command::Suite(SuiteCmd::Run { name }) => {
            let mut cfg = RunConfig::new(&name);
            cfg.seed = c.seed;
            cfg.trials = c.trials.unwrap_or(cfg.trials);
            cfg.n_max = c.nmax.unwrap_or(cfg.n_max);
            cfg.q_max = c.qmax.unwrap_or(cfg.q_max);
            cfg.m_max = c.m.unwrap_or(cfg.m_max);
            cfg.den = c.den.unwrap_or(cfg.den);
            cfg.out = c.out.clone();
            return emit_report(c, &run_suite(&cfg)?);
        }
        Command::Element(ElementCmd::Roundtrip { json, kind }) => {
            emit(c, &element_round_trip(kind.as_deref(), &read_json(&json)?)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
