mod render;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quadperiod::cfrac::{minus_cf, plus_cf, slow_plus, slow_simple};
use quadperiod::modsums::{a_star_sum, a_sum_stream, zagier_lists, Representation, SumRequest, SumScope};
use quadperiod::periods::{
    cocycle_check, even_odd_split, identity_audit, l_value, period_polynomial, PeriodScope,
};
use quadperiod::qforms::{class_decomposition, enumerate_forms, reduce_to_simple, ClassDump, FormKind, Group};
use quadperiod::real::parse_real_with_precision;
use quadperiod::verify::{run_suite, Suite, VerifyConfig};
use quadperiod::{BigInt, Error, FormClass, QForm, Result};

use render::Payload;

#[derive(Parser, Debug)]
#[command(name = "quadperiod", version, about = "Continued fractions, quadratic forms and period sums")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Starting working precision in bits for interval inputs.
    #[arg(long, default_value_t = 128, global = true)]
    prec: u32,
    /// Largest precision tried before giving up.
    #[arg(long, env = "QUADPERIOD_PREC_CAP", default_value_t = 8192, global = true)]
    prec_cap: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Plus,
    Minus,
    SlowPlus,
    SlowSimple,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Simple,
    Reduced,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    Gamma,
    Gamma1,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Group {
        match g {
            GroupArg::Gamma => Group::Gamma,
            GroupArg::Gamma1 => Group::Gamma1,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepArg {
    Direct,
    SimpleGamma,
    ReducedGammaPrime,
    SimpleGammaUnconditioned,
    SimpleGamma1,
    SimpleGamma1Unconditioned,
}

impl From<RepArg> for Representation {
    fn from(r: RepArg) -> Representation {
        match r {
            RepArg::Direct => Representation::Direct,
            RepArg::SimpleGamma => Representation::SimpleGamma,
            RepArg::ReducedGammaPrime => Representation::ReducedGammaPrime,
            RepArg::SimpleGammaUnconditioned => Representation::SimpleGammaUnconditioned,
            RepArg::SimpleGamma1 => Representation::SimpleGamma1,
            RepArg::SimpleGamma1Unconditioned => Representation::SimpleGamma1Unconditioned,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued-fraction steps of x.
    Cf {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = Algo::Plus)]
        algo: Algo,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// Decimal places for real columns.
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// Simple or reduced forms of discriminant D.
    Forms {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, value_enum, default_value_t = Kind::Simple)]
        kind: Kind,
    },
    /// Class decomposition through simple and reduced cycles.
    Classes {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, value_enum, default_value_t = GroupArg::Gamma1)]
        group: GroupArg,
    },
    /// A_{k,D}(x), A_{k,A}(x) or A*_{k,B}(x).
    Sum {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long = "rep", value_enum, default_value_t = RepArg::SimpleGamma)]
        rep: RepArg,
        /// Restrict to the class of this form, e.g. "[1,1,-1]".
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = GroupArg::Gamma)]
        group: GroupArg,
        /// Symmetrized sum over a Gamma_1-class and its negative (needs --class).
        #[arg(long)]
        star: bool,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        /// Include the per-term ledger.
        #[arg(long)]
        ledger: bool,
    },
    /// The lists of forms Q|gamma_i, one per simple form.
    Lists {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        /// Also show pairs failing the conditions.
        #[arg(long)]
        all: bool,
    },
    /// Period polynomial, cocycle residuals and L-value constants.
    Periods {
        #[arg(long = "D")]
        d: i64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = GroupArg::Gamma)]
        group: GroupArg,
        /// P_{k,B} for the Gamma_1-class of --class.
        #[arg(long)]
        symmetrized: bool,
        /// Also audit the P^Gamma functional equations at these points.
        #[arg(long = "audit-x", allow_hyphen_values = true, value_delimiter = ';')]
        audit_x: Vec<String>,
    },
    /// Run self-checking suites.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "Dmax")]
        dmax: Option<i64>,
        #[arg(long, default_value_t = 20240607)]
        seed: u64,
    },
}

fn class_of(form: &str, d: i64, group: Group) -> Result<FormClass> {
    let q: QForm = form.parse()?;
    if q.disc() != BigInt::from(d) {
        return Err(Error::InvalidArgument(format!("{q} has discriminant {}, not {d}", q.disc())));
    }
    let (simple, _) = reduce_to_simple(&q)?;
    class_decomposition(&q.disc(), group)?
        .into_iter()
        .find(|c| c.contains(&simple))
        .ok_or_else(|| Error::AuditFailure(format!("{simple} lies in no class")))
}

fn run(cmd: &Command, prec: u32) -> Result<Payload> {
    let real = |s: &str| parse_real_with_precision(s, prec);
    match cmd {
        Command::Cf { x, algo, steps, digits } => {
            let x = real(x)?;
            match algo {
                Algo::Plus => Ok(render::plus(&plus_cf(&x, *steps)?, *digits)),
                Algo::Minus => Ok(render::minus(&minus_cf(&x, *steps)?, *digits)),
                Algo::SlowPlus => Ok(render::slow(&slow_plus(&x, *steps)?, *digits)),
                Algo::SlowSimple => Ok(render::slow(&slow_simple(&x, *steps)?, *digits)),
            }
        }
        Command::Forms { d, kind } => {
            let kind = match kind {
                Kind::Simple => FormKind::Simple,
                Kind::Reduced => FormKind::Reduced,
            };
            Ok(render::forms(*d, &enumerate_forms(*d, kind)?))
        }
        Command::Classes { d, group } => {
            let group = Group::from(*group);
            let dump = ClassDump {
                d: (*d).into(),
                group,
                classes: class_decomposition(&(*d).into(), group)?,
            };
            Ok(render::classes(&dump))
        }
        Command::Sum {
            d,
            k,
            x,
            rep,
            class,
            group,
            star,
            tol,
            depth,
            ledger,
        } => {
            let xr = real(x)?;
            if *star {
                let form = class.as_deref().ok_or_else(|| Error::InvalidArgument("--star needs --class".into()))?;
                let b = class_of(form, *d, Group::Gamma1)?;
                return Ok(render::star(&a_star_sum(&b, *k, &xr, *tol, *depth)?));
            }
            let scope = match class {
                Some(form) => SumScope::Class(class_of(form, *d, (*group).into())?),
                None => SumScope::Discriminant((*d).into()),
            };
            let mut req = SumRequest::new(scope, *k, xr, (*rep).into()).tol(*tol).depth(*depth);
            req.ledger = *ledger;
            let res = a_sum_stream(&req)?;
            Ok(render::sum(*d, *k, x, (*rep).into(), &res))
        }
        Command::Lists { d, x, depth, all } => {
            let lists = zagier_lists(&(*d).into(), &real(x)?, *depth)?;
            Ok(render::lists(&lists, *all))
        }
        Command::Periods {
            d,
            k,
            class,
            group,
            symmetrized,
            audit_x,
        } => {
            let scope = match (class, symmetrized) {
                (Some(f), true) => PeriodScope::Gamma1Symmetrized(class_of(f, *d, Group::Gamma1)?),
                (Some(f), false) => PeriodScope::Class(class_of(f, *d, (*group).into())?),
                (None, true) => return Err(Error::InvalidArgument("--symmetrized needs --class".into())),
                (None, false) => PeriodScope::Discriminant((*d).into()),
            };
            let p = period_polynomial(&scope, *k)?;
            let cocycle = cocycle_check(&p.poly, p.slash_degree())?;
            let (even, odd) = even_odd_split(&p.poly);
            let constant = match (&scope, k) {
                (PeriodScope::Discriminant(_), 2) => Some(l_value(*d, -1)? * quadperiod::BigRational::from_integer((-5).into())),
                (PeriodScope::Discriminant(_), 4) => Some(l_value(*d, -3)?),
                _ => None,
            };
            let audit = if audit_x.is_empty() {
                None
            } else {
                let xs = audit_x.iter().map(|s| real(s)).collect::<Result<Vec<_>>>()?;
                Some(identity_audit(&p.poly, p.slash_degree(), &xs, 1e-8)?)
            };
            Ok(render::periods(&p, &cocycle, &even, &odd, constant.as_ref(), audit.as_ref()))
        }
        Command::Verify { suite, dmax, seed } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                suite.split(',').map(str::parse).collect::<Result<_>>()?
            };
            let cfg = VerifyConfig {
                dmax: *dmax,
                seed: *seed,
                prec,
            };
            let reports = suites.iter().map(|s| run_suite(*s, &cfg)).collect::<Result<Vec<_>>>()?;
            Ok(render::verify(&reports))
        }
    }
}

/// Reruns `cmd` with doubled precision while it reports a precision error.
fn run_with_retry(cmd: &Command, start: u32, cap: u32) -> (Result<Payload>, u32, u32) {
    let mut prec = start.max(16);
    let mut retries = 0;
    loop {
        match run(cmd, prec) {
            Err(e) if e.is_precision() && prec < cap => {
                eprintln!("{e}; retrying at {} bits", (prec * 2).min(cap));
                prec = (prec * 2).min(cap);
                retries += 1;
            }
            other => return (other, prec, retries),
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Cf { .. } => "cf",
        Command::Forms { .. } => "forms",
        Command::Classes { .. } => "classes",
        Command::Sum { .. } => "sum",
        Command::Lists { .. } => "lists",
        Command::Periods { .. } => "periods",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    if cli.prec > cli.prec_cap {
        eprintln!("error: --prec {} exceeds the cap {}", cli.prec, cli.prec_cap);
        return ExitCode::from(1);
    }
    let start = Instant::now();
    let (res, prec, retries) = run_with_retry(&cli.command, cli.prec, cli.prec_cap);
    let payload = match res {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::AuditFailure(_) => 2,
                e if e.is_precision() => 3,
                _ => 1,
            });
        }
    };
    let text = match cli.format {
        Format::Table => payload.table,
        Format::Csv => payload.csv,
        Format::Json => {
            let record = json!({
                "command": command_name(&cli.command),
                "version": env!("CARGO_PKG_VERSION"),
                "precision": prec,
                "retries": retries,
                "elapsed_ms": start.elapsed().as_millis() as u64,
                "result": payload.json,
            });
            serde_json::to_string_pretty(&record).expect("payloads serialize") + "\n"
        }
    };
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if payload.failed {
        eprintln!("verification failed");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
