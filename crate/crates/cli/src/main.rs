//! Command-line front end for the `affine-fpf` library.

mod cache;
mod render;
mod request;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use affine_fpf::affine::parse_window_values;
use affine_fpf::fpf::parse_cycles;
use affine_fpf::{AffinePerm, FpfInvolution, Sign};
use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use cache::Cache;
use request::Request;

/// Exit status for usage and internal errors.
const ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "affine-fpf",
    version,
    about = "Affine FPF involution Stanley symmetric functions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON with sorted keys instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached results.
    #[arg(long, global = true, env = "AFFINE_FPF_CACHE_DIR", value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache for this run.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cached entries recomputed and compared on each run.
    #[arg(long, global = true, default_value_t = 1, value_name = "K")]
    audit_samples: usize,
    /// Largest universe or element set built.
    #[arg(long, global = true, default_value_t = 50_000, value_name = "N")]
    max_elements: usize,
    /// Largest height, length or degree accepted.
    #[arg(long, global = true, default_value_t = 10, value_name = "H")]
    max_height: u64,
}

#[derive(Args, Debug)]
struct ClassArgs {
    /// Period (even).
    #[arg(long)]
    n: usize,
    /// Sign class: + or -.
    #[arg(long, allow_hyphen_values = true)]
    sign: String,
    /// Height cap of the universe.
    #[arg(long)]
    lmax: u64,
}

#[derive(Args, Debug)]
struct ElementArg {
    /// Window "[a1,...,an]" or, with --n, a cycle list "t(1,6)t(3,8)".
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    /// Period, required for cycle lists.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monomial expansion of the affine Stanley symmetric function F_w.
    Expand(ElementArg),
    /// Monomial expansion of the FPF-involution Stanley function of z.
    FpfExpand(ElementArg),
    /// Atoms of an FPF involution, with the minimal and maximal atom.
    Atoms(ElementArg),
    /// Affine code and length; FPF code, height and beta for involutions.
    Code(ElementArg),
    /// Shape of the code; also nu for FPF involutions.
    Shape(ElementArg),
    /// All FPF involutions of a sign class up to a height, with covers.
    Universe(ClassArgs),
    /// Check the quasiparabolic axioms on bounded universes.
    QpVerify {
        /// Period (even).
        #[arg(long)]
        n: usize,
        /// Sign class; both when omitted.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        /// Height cap of the universes.
        #[arg(long)]
        lmax: u64,
    },
    /// Compare two elements in the affine or the FPF Bruhat order.
    Bruhat {
        /// Lower element, as a window or cycle list.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Upper element, as a window or cycle list.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Period, required for cycle lists.
        #[arg(long)]
        n: Option<usize>,
        /// Use the quasiparabolic order on FPF involutions.
        #[arg(long)]
        fpf: bool,
    },
    /// Canonical basis of the M or N module on a universe.
    CanonicalBasis {
        #[command(flatten)]
        class: ClassArgs,
        /// M or N.
        #[arg(long)]
        variant: String,
        /// Print only the basis element indexed by this involution.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// W-graph edges, tau-sets, cells and molecules.
    WgraphCells {
        #[command(flatten)]
        class: ClassArgs,
        /// M or N.
        #[arg(long)]
        variant: String,
    },
    /// Check a transition identity.
    #[command(subcommand)]
    Transition(TransitionCommand),
    /// Evidence for the span conjectures up to a degree.
    Conjectures {
        /// Period (even).
        #[arg(long)]
        n: usize,
        /// Largest degree examined.
        #[arg(long)]
        dmax: u32,
        /// Subsets examined by the positive-basis search per degree.
        #[arg(long, default_value_t = 100_000)]
        search_cap: u64,
        /// Skip the comparison with period n + 2.
        #[arg(long)]
        no_compare_next: bool,
    },
}

#[derive(Subcommand, Debug)]
enum TransitionCommand {
    /// Sum over Pi-(y, p) against Pi+(y, y(p)).
    Fpf {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sum over Phi-_r(w) against Phi+_r(w).
    Affine {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn parse_perm(s: &str, n: Option<usize>) -> Result<AffinePerm> {
    let p = if s.trim_start().starts_with("t(") {
        let Some(n) = n else {
            bail!("a cycle list needs --n")
        };
        FpfInvolution::from_cycles(n, &parse_cycles(s)?)?
            .perm()
            .clone()
    } else {
        let values = parse_window_values(s)?;
        AffinePerm::from_window(values.len(), &values)?
    };
    if let Some(n) = n {
        if n != p.n() {
            bail!("--n {n} does not match the window length {}", p.n());
        }
    }
    Ok(p)
}

fn parse_fpf(s: &str, n: Option<usize>) -> Result<FpfInvolution> {
    Ok(FpfInvolution::new(parse_perm(s, n)?)?)
}

fn parse_sign(s: &str) -> Result<String> {
    Ok(s.parse::<Sign>()?.symbol().to_string())
}

fn cap(what: &str, value: u64, g: &Global) -> Result<()> {
    if value > g.max_height {
        bail!("{what} {value} exceeds --max-height {}", g.max_height);
    }
    Ok(())
}

fn check_class(c: &ClassArgs, g: &Global) -> Result<String> {
    cap("lmax", c.lmax, g)?;
    parse_sign(&c.sign)
}

fn build_request(cmd: &Command, g: &Global) -> Result<Request> {
    let me = g.max_elements;
    Ok(match cmd {
        Command::Expand(e) => {
            let a = parse_perm(&e.w, e.n)?;
            cap("length", a.length(), g)?;
            Request::Expand {
                w: a.window().to_vec(),
            }
        }
        Command::FpfExpand(e) | Command::Atoms(e) => {
            let z = parse_fpf(&e.w, e.n)?;
            cap("height", z.height(), g)?;
            let w = z.window().to_vec();
            if matches!(cmd, Command::Atoms(_)) {
                Request::Atoms { w }
            } else {
                Request::FpfExpand { w }
            }
        }
        Command::Code(e) => Request::Code {
            w: parse_perm(&e.w, e.n)?.window().to_vec(),
        },
        Command::Shape(e) => Request::Shape {
            w: parse_perm(&e.w, e.n)?.window().to_vec(),
        },
        Command::Universe(c) => Request::Universe {
            n: c.n,
            sign: check_class(c, g)?,
            lmax: c.lmax,
            max_elements: me,
        },
        Command::QpVerify { n, sign, lmax } => {
            cap("lmax", *lmax, g)?;
            let signs = match sign {
                Some(s) => vec![parse_sign(s)?],
                None => vec!["+".into(), "-".into()],
            };
            Request::QpVerify {
                n: *n,
                signs,
                lmax: *lmax,
                max_elements: me,
            }
        }
        Command::Bruhat { u, v, n, fpf } => {
            let (x, y) = (parse_perm(u, *n)?, parse_perm(v, *n)?);
            if *fpf {
                let (x, y) = (
                    FpfInvolution::new(x.clone())?,
                    FpfInvolution::new(y.clone())?,
                );
                cap("height", x.height().max(y.height()), g)?;
            }
            Request::Bruhat {
                u: x.window().to_vec(),
                v: y.window().to_vec(),
                fpf: *fpf,
                max_elements: me,
            }
        }
        Command::CanonicalBasis { class, variant, z } => Request::CanonicalBasis {
            n: class.n,
            sign: check_class(class, g)?,
            lmax: class.lmax,
            variant: variant
                .parse::<affine_fpf::hecke::Variant>()?
                .symbol()
                .to_string(),
            z: match z {
                Some(s) => Some(parse_fpf(s, Some(class.n))?.window().to_vec()),
                None => None,
            },
            max_elements: me,
        },
        Command::WgraphCells { class, variant } => Request::WgraphCells {
            n: class.n,
            sign: check_class(class, g)?,
            lmax: class.lmax,
            variant: variant
                .parse::<affine_fpf::hecke::Variant>()?
                .symbol()
                .to_string(),
            max_elements: me,
        },
        Command::Transition(TransitionCommand::Fpf { y, p, n }) => {
            let y = parse_fpf(y, *n)?;
            cap("height", y.height() + 1, g)?;
            Request::TransitionFpf {
                y: y.window().to_vec(),
                p: *p,
            }
        }
        Command::Transition(TransitionCommand::Affine { w, r, n }) => {
            let a = parse_perm(w, *n)?;
            cap("length", a.length() + 1, g)?;
            Request::TransitionAffine {
                w: a.window().to_vec(),
                r: *r,
            }
        }
        Command::Conjectures {
            n,
            dmax,
            search_cap,
            no_compare_next,
        } => {
            cap("dmax", *dmax as u64, g)?;
            Request::Conjectures {
                n: *n,
                dmax: *dmax,
                search_cap: *search_cap,
                compare_next: !no_compare_next,
                max_elements: me,
            }
        }
    })
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let request = build_request(&cli.command, g)?;
    let cache = match (&g.cache_dir, g.no_cache) {
        (Some(dir), false) => Some(Cache::open(dir)?),
        _ => None,
    };
    let cached = cache.as_ref().and_then(|c| c.get(&request));
    let outcome = match cached {
        Some(o) => o,
        None => {
            let o = request.run()?;
            if let Some(c) = &cache {
                c.put(&request, &o)?;
            }
            o
        }
    };
    if let Some(c) = &cache {
        c.audit(g.audit_samples)?;
    }
    let body = if g.json {
        format!("{}\n", serde_json::to_string_pretty(&outcome.json)?)
    } else {
        outcome.text
    };
    let mut out = std::io::stdout().lock();
    match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(outcome.status),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
