use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toml::{Table, Value};

use lchca::ff::{Polynomial, Prime};
use lchca::lchca::{enumerate_cycles, find_hybrid_rule, uniformity_report_parallel, CaSpecFile, Configuration, Lchca};
use lchca::pow::{self, PowChallenge, PowParams, PowSolution, Verdict};
use lchca::reductions::{
    solve_ddp, solve_ddp_bruteforce, solve_fdp, solve_sddp_parallel, DdpInstance, DdpInstanceFile, DdpSolution,
    SddpInstance, SddpInstanceFile,
};
use lchca::Error;

/// Linear hybrid cellular automata, discrete-distance problems and an SDDP proof of work.
///
/// Exit status: 0 success, 1 no solution / unreachable / rejected, 2 usage or
/// parse error, 3 capacity exceeded.
#[derive(Parser)]
#[command(name = "lchca", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// CA spec file (TOML).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for scans and sampling.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hybrid CA spec with an irreducible (or primitive) characteristic polynomial.
    Gen {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        primitive: bool,
        /// Write the spec here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print M^tau s.
    Run {
        #[arg(long)]
        s: String,
        #[arg(long)]
        tau: u64,
    },
    /// Classify the CA: uniform or hybrid, and its cycle type.
    Classify,
    /// List the cycles of a hybrid CA.
    Cycles,
    /// Per-cell and pairwise statistics of M^tau s for random tau.
    Stats {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Solve t = M^tau s.
    Ddp {
        #[arg(long, conflicts_with_all = ["s", "t"])]
        instance: Option<PathBuf>,
        #[arg(long, requires = "t")]
        s: Option<String>,
        #[arg(long, requires = "s")]
        t: Option<String>,
        /// Step through the orbit instead of reducing to a discrete log.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Least tau whose configuration holds x at the given coordinates.
    Fdp {
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "")]
        x: String,
        /// Comma-separated cell indices; default the first k.
        #[arg(long, value_delimiter = ',')]
        coords: Option<Vec<usize>>,
    },
    /// Least tau < delta whose configuration holds x at the given coordinates.
    Sddp {
        #[arg(long, conflicts_with_all = ["s", "x", "delta", "coords"])]
        instance: Option<PathBuf>,
        #[arg(long, requires = "delta")]
        s: Option<String>,
        #[arg(long, default_value = "")]
        x: String,
        #[arg(long, value_delimiter = ',')]
        coords: Option<Vec<usize>>,
        #[arg(long)]
        delta: Option<u64>,
    },
    /// Derive a proof-of-work challenge from a message.
    PowChallenge {
        /// Primitive polynomial `p:c0,c1,...`.
        #[arg(long)]
        f: String,
        #[arg(long)]
        k: usize,
        /// Scan bound; default 8·p^k.
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long, conflicts_with = "message_file")]
        message: Option<String>,
        #[arg(long)]
        message_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the least witness for a challenge.
    PowProve {
        #[arg(long)]
        challenge: PathBuf,
    },
    /// Check a witness; exits 1 with the reason on stderr if rejected.
    PowVerify {
        #[arg(long)]
        challenge: PathBuf,
        /// Decimal witness.
        #[arg(long)]
        solution: String,
    },
}

/// What a command produced: human-readable lines, a structured record, and
/// the single value printed last.
struct Report {
    lines: Vec<String>,
    fields: Table,
    value: String,
    status: u8,
}

impl Report {
    fn new(value: impl Display) -> Self {
        Report {
            lines: Vec::new(),
            fields: Table::new(),
            value: value.to_string(),
            status: 0,
        }
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }

    fn field(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.insert(key.into(), v.into());
        self
    }

    fn status(mut self, code: u8) -> Self {
        self.status = code;
        self
    }
}

fn int(v: u64) -> Value {
    i64::try_from(v)
        .map(Value::Integer)
        .unwrap_or_else(|_| Value::String(v.to_string()))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoSolution(_) => 1,
        Error::Capacity(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            match cli.common.format {
                Format::Text => {
                    for l in &report.lines {
                        println!("{l}");
                    }
                    println!("{}", report.value);
                }
                Format::Structured => {
                    let mut t = report.fields.clone();
                    t.insert("result".into(), Value::String(report.value.clone()));
                    print!("{}", toml::to_string(&t).expect("report is plain TOML"));
                }
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load_ca(common: &Common) -> Result<Lchca, Error> {
    let path = common
        .spec
        .as_deref()
        .ok_or_else(|| Error::Parse("this command needs --spec PATH".into()))?;
    CaSpecFile::load(path)?.build()
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<Vec<u8>, Error> {
    std::fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn target_digits(x: &str, ca: &Lchca) -> Result<Vec<u32>, Error> {
    if x.trim().is_empty() {
        Ok(Vec::new())
    } else {
        Ok(Configuration::parse(x, ca.p())?.into_cells())
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    let common = &cli.common;
    match &cli.command {
        Command::Gen { p, n, primitive, out } => {
            let rule = find_hybrid_rule(Prime::new(*p)?, *n, *primitive, common.seed)?;
            let spec = CaSpecFile::from_rule(&rule)?;
            let ca = spec.build()?;
            let text = spec.to_toml();
            let report = Report::new(ca.char_poly())
                .field("char_poly", ca.char_poly().to_string())
                .field("class", ca.class().to_string());
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    Ok(report.line(format!("wrote {} ({})", path.display(), ca.class())))
                }
                None => Ok(Report {
                    value: text.trim_end().to_string(),
                    ..report
                }),
            }
        }
        Command::Run { s, tau } => {
            let ca = load_ca(common)?;
            let t = ca.run(&Configuration::parse(s, ca.p())?, *tau)?;
            Ok(Report::new(&t).field("tau", int(*tau)).field("t", t.to_string()))
        }
        Command::Classify => {
            let ca = load_ca(common)?;
            let mut r = Report::new(ca.class())
                .line(format!("char_poly {}", ca.char_poly()))
                .field("char_poly", ca.char_poly().to_string())
                .field("structure", format!("{:?}", ca.class().structure).to_lowercase());
            if ca.class().is_hybrid() {
                let order = ca.order()?;
                r = r.line(format!("order {order}")).field("order", int(order));
            }
            Ok(r.field("class", ca.class().to_string()))
        }
        Command::Cycles => {
            let ca = load_ca(common)?;
            let cycles = enumerate_cycles(&ca)?;
            let mut r = Report::new(cycles.len());
            let mut reps = Vec::new();
            for c in &cycles {
                r = r.line(format!("{} {}", c.representative, c.length));
                reps.push(Value::Table(Table::from_iter([
                    (
                        "representative".to_string(),
                        Value::String(c.representative.to_string()),
                    ),
                    ("length".to_string(), int(c.length)),
                ])));
            }
            Ok(r.field("count", int(cycles.len() as u64))
                .field("cycles", Value::Array(reps)))
        }
        Command::Stats { samples } => {
            let ca = load_ca(common)?;
            let rep = uniformity_report_parallel(&ca, *samples, common.seed, common.jobs)?;
            let chi = rep.cell_chi_square();
            let mut r = Report::new(format!("{:.6}", rep.max_cell_deviation()))
                .line(format!("samples {} start {}", rep.samples, rep.start));
            let mut freq = Vec::new();
            for (i, c) in chi.iter().enumerate() {
                let f: Vec<String> = (0..rep.p).map(|a| format!("{:.4}", rep.cell_frequency(i, a))).collect();
                r = r.line(format!("cell {i}: {} chi2 {c:.3}", f.join(" ")));
                freq.push(Value::Array(
                    (0..rep.p).map(|a| Value::Float(rep.cell_frequency(i, a))).collect(),
                ));
            }
            let pair_dev = rep.max_pair_deviation();
            r = r
                .line(format!("pairs {} max joint deviation {:.6}", rep.pairs.len(), pair_dev))
                .line(format!("max cell deviation {:.6}", rep.max_cell_deviation()));
            Ok(r.field("samples", int(rep.samples))
                .field("start", rep.start.to_string())
                .field("cell_frequency", Value::Array(freq))
                .field(
                    "cell_chi_square",
                    Value::Array(chi.into_iter().map(Value::Float).collect()),
                )
                .field("max_cell_deviation", rep.max_cell_deviation())
                .field("pair_count", int(rep.pairs.len() as u64))
                .field("max_pair_deviation", pair_dev))
        }
        Command::Ddp {
            instance,
            s,
            t,
            bruteforce,
        } => {
            let inst = match (instance, s, t) {
                (Some(path), _, _) => DdpInstanceFile::load(path)?,
                (None, Some(s), Some(t)) => {
                    let ca = load_ca(common)?;
                    let (s, t) = (Configuration::parse(s, ca.p())?, Configuration::parse(t, ca.p())?);
                    DdpInstance::new(ca, s, t)?
                }
                _ => return Err(Error::Parse("ddp needs --instance or --s and --t".into())),
            };
            let sol = if *bruteforce {
                let bound = inst.ca.order()?.saturating_add(1);
                solve_ddp_bruteforce(&inst, bound).unwrap_or(DdpSolution::Unreachable)
            } else {
                solve_ddp(&inst)?
            };
            let r = Report::new(sol)
                .field("s", inst.s.to_string())
                .field("t", inst.t.to_string());
            Ok(match sol {
                DdpSolution::Distance(tau) => r.field("tau", int(tau)),
                DdpSolution::Unreachable => r.status(1),
            })
        }
        Command::Fdp { s, x, coords } => {
            let ca = load_ca(common)?;
            let s = Configuration::parse(s, ca.p())?;
            let x = target_digits(x, &ca)?;
            let tau = solve_fdp(&ca, &s, &x, coords.as_deref())?;
            Ok(scan_report(tau))
        }
        Command::Sddp {
            instance,
            s,
            x,
            coords,
            delta,
        } => {
            let inst = match (instance, s, delta) {
                (Some(path), _, _) => SddpInstanceFile::load(path)?,
                (None, Some(s), Some(delta)) => {
                    let ca = load_ca(common)?;
                    let s = Configuration::parse(s, ca.p())?;
                    let x = target_digits(x, &ca)?;
                    SddpInstance::new(ca, s, x, coords.clone(), *delta)?
                }
                _ => return Err(Error::Parse("sddp needs --instance or --s, --x and --delta".into())),
            };
            let tau = solve_sddp_parallel(&inst, common.jobs)?;
            Ok(scan_report(tau).field("delta", int(inst.delta)))
        }
        Command::PowChallenge {
            f,
            k,
            delta,
            message,
            message_file,
            out,
        } => {
            let f: Polynomial = f.parse()?;
            let params = match delta {
                Some(d) => PowParams::new(f, *k, *d)?,
                None => PowParams::recommended(f, *k)?,
            };
            let msg = match (message, message_file) {
                (Some(m), None) => m.as_bytes().to_vec(),
                (None, Some(path)) => read_file(path)?,
                _ => return Err(Error::Parse("give --message or --message-file".into())),
            };
            let ch = pow::make_challenge(&msg, &params);
            let text = ch.to_toml();
            let digest = hex::encode(ch.digest);
            let report = Report::new(&digest).field("message-digest", digest.clone());
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    Ok(report.line(format!("wrote {}", path.display())))
                }
                None => Ok(Report {
                    value: text.trim_end().to_string(),
                    ..report
                }),
            }
        }
        Command::PowProve { challenge } => {
            let ch = load_challenge(challenge)?;
            let sol = pow::prove_parallel(&ch, common.jobs)?;
            Ok(scan_report(sol.map(|s| s.tau)))
        }
        Command::PowVerify { challenge, solution } => {
            let ch = load_challenge(challenge)?;
            let sol: PowSolution = solution.parse()?;
            let (verdict, products) = pow::verify_counted(&ch, &sol);
            let r = Report::new(verdict)
                .line(format!("matrix products {products}"))
                .field("tau", int(sol.tau))
                .field("matrix_products", int(products as u64));
            match verdict {
                Verdict::Accept => Ok(r),
                Verdict::Reject(reason) => {
                    eprintln!("rejected: {reason}");
                    Ok(r.field("reason", reason.to_string()).status(1))
                }
            }
        }
    }
}

fn load_challenge(path: &Path) -> Result<PowChallenge, Error> {
    let text = String::from_utf8(read_file(path)?).map_err(|_| Error::Parse("challenge is not UTF-8".into()))?;
    PowChallenge::from_toml(&text)
}

fn scan_report(tau: Option<u64>) -> Report {
    match tau {
        Some(tau) => Report::new(tau).field("tau", int(tau)),
        None => Report::new("none").status(1),
    }
}
