mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use ckh_core::colored::{colored_kh, colored_kh_via_projector, detect_tail_periodicity, khovanov_complex, Mode};
use ckh_core::diagram::{parse_pd, LinkDiagram};
use ckh_core::homology::{cohomology, graded_euler, groups_from_json, kauffman_bracket, mod_p_cohomology};
use ckh_core::simplify::ScanOptions;
use ckh_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{EulerCheck, Format, Report};

#[derive(Parser)]
#[command(name = "ckh", version, about = "Khovanov and colored Khovanov cohomology of link diagrams")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integral cohomology of a diagram with every component colored 1.
    Kh {
        /// PD file, or `-` for standard input.
        file: PathBuf,
        /// Also report dimensions over the field with this many elements.
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        /// Append the graded Euler polynomial and compare it with the bracket.
        #[arg(long)]
        euler: bool,
    },
    /// Colored cohomology through twisted cables.
    Colored {
        file: PathBuf,
        #[command(flatten)]
        link: LinkArgs,
        #[command(flatten)]
        window: Window,
        /// `auto` picks r by the chosen mode; a number fixes it.
        #[arg(long = "r", default_value = "auto", value_parser = parse_r)]
        r: RChoice,
        #[arg(long, value_enum, default_value = "certified")]
        mode: ModeArg,
        /// Consecutive agreeing values of r required in empirical mode.
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        euler: bool,
    },
    /// Colored cohomology with a truncated projector at each 2-colored component.
    Projector {
        file: PathBuf,
        #[command(flatten)]
        link: LinkArgs,
        #[command(flatten)]
        window: Window,
        /// Number of twists in the truncated projector.
        #[arg(long, default_value_t = 8)]
        truncate: usize,
        /// Compare with the certified twist route.
        #[arg(long)]
        verify: bool,
    },
    /// Periodicity of the tail of a group table written by this tool.
    Tail {
        /// JSON report, or `-` for standard input.
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_period: i32,
        /// Window (defaults to the one recorded in the report).
        #[arg(long, allow_hyphen_values = true)]
        qmin: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        qmax: Option<i32>,
    },
}

#[derive(clap::Args)]
struct LinkArgs {
    /// Comma-separated colors, one per component (defaults to the file's).
    #[arg(long, value_delimiter = ',')]
    colors: Option<Vec<u32>>,
    /// Comma-separated framings, one per component (defaults to the file's).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    framing: Option<Vec<i64>>,
}

#[derive(clap::Args)]
struct Window {
    #[arg(long, allow_hyphen_values = true)]
    qmin: i32,
    #[arg(long, allow_hyphen_values = true)]
    qmax: i32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Certified,
    Empirical,
}

#[derive(Clone, Copy)]
enum RChoice {
    Auto,
    Fixed(usize),
}

fn parse_r(s: &str) -> Result<RChoice, String> {
    if s == "auto" {
        Ok(RChoice::Auto)
    } else {
        s.parse().map(RChoice::Fixed).map_err(|_| format!("expected `auto` or a non-negative integer, got `{s}`"))
    }
}

/// Exit code for each failure class.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidDiagram(_) | Error::UnsupportedColor(_) | Error::NotPrime(_) => 2,
        Error::ResourceCap { .. } | Error::CrossingLimit { .. } => 3,
        Error::NonIntegral { .. } | Error::Invariant(_) | Error::BoundaryMismatch(_) => 4,
        Error::WindowTooNarrow(_) | Error::TruncationInsufficient { .. } => 5,
    }
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    let mut buf = vec![];
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut buf).map(|_| ())
    } else {
        std::fs::read(path).map(|b| buf = b)
    };
    res.map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(buf)
}

fn load_link(bytes: &[u8], args: Option<&LinkArgs>) -> Result<LinkDiagram, Failure> {
    let text = std::str::from_utf8(bytes).map_err(|_| Failure::Usage("input is not UTF-8".into()))?;
    let mut d = parse_pd(text)?;
    let Some(args) = args else { return Ok(d) };
    let n = d.components().len();
    if let Some(c) = &args.colors {
        if c.len() != n {
            return Err(Failure::Usage(format!("{} colors given for {n} components", c.len())));
        }
        d.set_colors(c)?;
    }
    if let Some(f) = &args.framing {
        if f.len() != n {
            return Err(Failure::Usage(format!("{} framings given for {n} components", f.len())));
        }
        for (k, &v) in f.iter().enumerate() {
            d.set_framing(k, v)?;
        }
    }
    Ok(d)
}

fn describe_link(report: &mut Report, d: &LinkDiagram) {
    report.set("crossings", d.crossings().len());
    report.set("colors", d.colors());
    report.set("framings", d.components().iter().map(|c| c.framing).collect::<Vec<_>>());
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let opts = ScanOptions::default();
    let threads = rayon::current_num_threads();
    let with_common = |r: &mut Report| {
        r.set("object_cap", opts.object_cap);
        r.set("threads", threads);
    };
    let report = match &cli.command {
        Command::Kh { file, modulus, euler } => {
            let input = read_input(file)?;
            let d = load_link(&input, None)?;
            let mut report = Report::new("kh", &input);
            with_common(&mut report);
            describe_link(&mut report, &d);
            let (c, stats) = khovanov_complex(&d, &opts)?;
            report.set("max_objects", stats.max_objects());
            report.groups = cohomology(&c)?;
            if let Some(p) = modulus {
                report.set("mod", *p);
                report.mod_p = Some((*p, mod_p_cohomology(&c, *p)?));
            }
            if *euler {
                let bracket = kauffman_bracket(&d).ok();
                report.euler = Some(EulerCheck { euler: graded_euler(&report.groups, None), bracket });
            }
            report
        }
        Command::Colored { file, link, window, r, mode, k, euler } => {
            let input = read_input(file)?;
            let d = load_link(&input, Some(link))?;
            let mode = match (r, mode) {
                (RChoice::Fixed(r), _) => Mode::Fixed(*r),
                (RChoice::Auto, ModeArg::Certified) => Mode::Certified,
                (RChoice::Auto, ModeArg::Empirical) => Mode::Empirical(*k),
            };
            let mut report = Report::new("colored", &input);
            with_common(&mut report);
            describe_link(&mut report, &d);
            report.set("qmin", window.qmin);
            report.set("qmax", window.qmax);
            report.set("mode", format!("{mode:?}").to_lowercase());
            let res = colored_kh(&d, window.qmin, window.qmax, mode, &opts)?;
            report.set("r", res.r);
            report.set("max_objects", res.stats.max_objects());
            report.groups = res.groups;
            if !matches!(mode, Mode::Fixed(_)) {
                report.certificates = res.certificates;
            }
            if *euler {
                let e = graded_euler(&report.groups, Some((window.qmin, window.qmax)));
                report.euler = Some(EulerCheck { euler: e, bracket: None });
            }
            report
        }
        Command::Projector { file, link, window, truncate, verify } => {
            let input = read_input(file)?;
            let d = load_link(&input, Some(link))?;
            let mut report = Report::new("projector", &input);
            with_common(&mut report);
            describe_link(&mut report, &d);
            report.set("qmin", window.qmin);
            report.set("qmax", window.qmax);
            report.set("truncate", *truncate);
            report.groups = colored_kh_via_projector(&d, *truncate, window.qmin, window.qmax, &opts)?;
            if *verify {
                let twist = colored_kh(&d, window.qmin, window.qmax, Mode::Certified, &opts)?;
                let verdict = if twist.groups == report.groups { "ok" } else { "mismatch" };
                report.set("verify", verdict);
                report.notes.push(format!("agreement with certified twist route (r={}): {verdict}", twist.r));
                if verdict != "ok" {
                    eprint!("{}", report.render(cli.format));
                    return Err(Error::Invariant("projector and twist routes disagree".into()).into());
                }
            }
            report
        }
        Command::Tail { file, max_period, qmin, qmax } => {
            let input = read_input(file)?;
            let v: serde_json::Value =
                serde_json::from_slice(&input).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
            let g = groups_from_json(&v)?;
            let recorded = |k: &str| v["metadata"]["settings"][k].as_i64().map(|x| x as i32);
            let support = g.q2_support();
            let lo = qmin.or(recorded("qmin")).or(support.first().map(|q| q.div_euclid(2)));
            let hi = qmax.or(recorded("qmax")).or(support.last().map(|q| q.div_euclid(2)));
            let (Some(lo), Some(hi)) = (lo, hi) else {
                return Err(Failure::Usage("empty group table and no window given".into()));
            };
            if let (Some(rlo), Some(rhi)) = (recorded("qmin"), recorded("qmax")) {
                if lo < rlo || hi > rhi {
                    return Err(Failure::Usage(format!("window {lo}..{hi} exceeds the computed range {rlo}..{rhi}")));
                }
            }
            let periods = detect_tail_periodicity(&g, lo, hi, *max_period)?;
            let mut report = Report::new("tail", &input);
            report.set("qmin", lo);
            report.set("qmax", hi);
            report.set("max_period", *max_period);
            return Ok(match cli.format {
                Format::Json => {
                    let list: Vec<_> =
                        periods.iter().map(|p| json!({ "dq": p.dq, "di": p.di, "onset": p.onset })).collect();
                    serde_json::to_string_pretty(&json!({ "periods": list, "metadata": report.metadata() })).unwrap()
                        + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("dq,di,onset\n");
                    for p in &periods {
                        s.push_str(&format!("{},{},{}\n", p.dq, p.di, p.onset));
                    }
                    s
                }
                Format::Table => {
                    if periods.is_empty() {
                        format!("no period up to {max_period} on {lo}..{hi}\n")
                    } else {
                        periods.iter().map(|p| format!("dq={} di={} from j={}\n", p.dq, p.di, p.onset)).collect()
                    }
                }
            });
        }
    };
    Ok(report.render(cli.format))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
