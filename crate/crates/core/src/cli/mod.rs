//! Command-line front end.
//!
//! [`run`] takes the full argument vector and returns the exit code together
//! with what would go to standard output and standard error, so the binary is
//! a thin wrapper and the behaviour is testable in-process.

mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::char_classes::{euler_class_hol1, euler_closed_form_g2};
use crate::gysin::{hol1_table, rat1_table, verify_duality, CohomologyTable};
use crate::quotient_ring::PresentedGradedRing;
use crate::spaces::{
    grassmannian, grassmannian_reduced_presentation, partial_flag_ring, projective_space, FlagSpec,
    Hol1Base,
};
use crate::Error;

pub use render::{emit_json, parse_table_json, render_table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Md,
    Latex,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "holcoh",
    version,
    about = "Integral cohomology of Grassmannians, flag manifolds and Hol1/Rat1 mapping spaces"
)]
struct Cli {
    #[command(flatten)]
    options: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct Options {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Truncation degree for rings; for tables, the last degree shown.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Append Poincaré duality checks to Hol1/Rat1 tables.
    #[arg(long, global = true)]
    check_duality: bool,
    /// Present Gr(n,m) on c1..cn only.
    #[arg(long, global = true)]
    reduced: bool,
    /// Write torsion as prime-power cyclic groups.
    #[arg(long, global = true)]
    primary: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Presentation, bases and ranks of a cohomology ring.
    Ring {
        #[command(subcommand)]
        space: RingSpace,
    },
    /// Euler class of the sphere bundle Hol1(Gr(n,m)) -> Fl(1,n-1,m).
    Euler {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Integral cohomology of Hol1(Gr(n,m)).
    Hol1 {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Integral cohomology of Rat1(Gr(n,m)), n <= m.
    Rat1 {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Poincaré polynomial of a ring or a mapping space.
    Poincare {
        #[command(subcommand)]
        space: AnySpace,
    },
}

#[derive(Debug, Subcommand, Clone)]
enum RingSpace {
    /// Grassmannian of n-planes in C^(n+m).
    Gr {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Partial flag manifold with the given block sizes.
    Flag {
        #[arg(required = true, num_args = 1.., value_parser = clap::value_parser!(u32).range(1..))]
        blocks: Vec<u32>,
    },
    /// Complex projective space P^m.
    Proj {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
}

#[derive(Debug, Subcommand, Clone)]
enum AnySpace {
    Gr {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    Flag {
        #[arg(required = true, num_args = 1.., value_parser = clap::value_parser!(u32).range(1..))]
        blocks: Vec<u32>,
    },
    Proj {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    Hol1 {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    Rat1 {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }

    fn internal(err: &Error) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::usage(text),
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        // Bad user input that only shows up once the space is built.
        Err(e @ (Error::InvalidParameters(_) | Error::OddTruncation(_))) => {
            Outcome::usage(format!("error: {e}\n"))
        }
        Err(e) => Outcome::internal(&e),
    }
}

fn dispatch(cli: &Cli) -> crate::Result<Outcome> {
    let opts = &cli.options;
    match &cli.command {
        Command::Ring { space } => {
            let (label, ring) = build_ring(space, opts)?;
            Ok(Outcome::ok(render::render_ring(
                &label,
                &ring,
                opts.format,
            )?))
        }
        Command::Euler { n, m } => euler(*n, *m, opts.format).map(Outcome::ok),
        Command::Hol1 { n, m } => table_outcome(hol1_table(*n, *m)?, opts),
        Command::Rat1 { n, m } => table_outcome(rat1_table(*n, *m)?, opts),
        Command::Poincare { space } => {
            let poly = match space {
                AnySpace::Gr { n, m } => build_ring(&RingSpace::Gr { n: *n, m: *m }, opts)?
                    .1
                    .poincare_polynomial()?,
                AnySpace::Flag { blocks } => build_ring(
                    &RingSpace::Flag {
                        blocks: blocks.clone(),
                    },
                    opts,
                )?
                .1
                .poincare_polynomial()?,
                AnySpace::Proj { m } => build_ring(&RingSpace::Proj { m: *m }, opts)?
                    .1
                    .poincare_polynomial()?,
                AnySpace::Hol1 { n, m } => hol1_table(*n, *m)?.poincare_polynomial(),
                AnySpace::Rat1 { n, m } => rat1_table(*n, *m)?.poincare_polynomial(),
            };
            Ok(Outcome::ok(render::render_poincare(&poly, opts.format)))
        }
    }
}

fn build_ring(space: &RingSpace, opts: &Options) -> crate::Result<(String, PresentedGradedRing)> {
    if opts.reduced && !matches!(space, RingSpace::Gr { .. }) {
        return Err(Error::InvalidParameters(
            "--reduced only applies to `gr n m`".into(),
        ));
    }
    let (label, ring) = match space {
        RingSpace::Gr { n, m } if opts.reduced => (
            format!("Gr({n},{m}) reduced"),
            grassmannian_reduced_presentation(*n, *m)?,
        ),
        RingSpace::Gr { n, m } => (format!("Gr({n},{m})"), grassmannian(*n, *m)?),
        RingSpace::Flag { blocks } => {
            let spec = FlagSpec::new(blocks.clone())?;
            (spec.to_string(), partial_flag_ring(&spec)?)
        }
        RingSpace::Proj { m } => (format!("P^{m}"), projective_space(*m)?),
    };
    let ring = match opts.max_degree {
        Some(d) => ring.with_truncation(d)?,
        None => ring,
    };
    Ok((label, ring))
}

fn euler(n: u32, m: u32, format: Format) -> crate::Result<String> {
    let base = Hol1Base::new(n, m)?;
    let e = euler_class_hol1(&base)?;
    let reduced = base.ring.normal_form(&e)?;
    let closed = if n == 2 {
        let raw = euler_closed_form_g2(&base)?;
        Some((base.render(&raw), base.ring.equal_in_ring(&raw, &e)?))
    } else {
        None
    };
    Ok(render::render_euler(
        &base,
        &base.render(&e),
        &base.render(&reduced),
        closed,
        format,
    ))
}

fn table_outcome(table: CohomologyTable, opts: &Options) -> crate::Result<Outcome> {
    let shown = match opts.max_degree {
        Some(max) => CohomologyTable::new(
            table.space.clone(),
            table.n,
            table.m,
            table.dimension,
            table
                .groups()
                .iter()
                .filter(|(d, _)| **d <= max)
                .map(|(d, g)| (*d, g.clone()))
                .collect(),
        ),
        None => table.clone(),
    };
    let report = if opts.check_duality {
        Some(verify_duality(&table)?)
    } else {
        None
    };
    let body = render::render_table_with(&shown, opts.format, opts.primary, report.as_ref());
    let failed = report.as_ref().is_some_and(|r| !r.passed());
    Ok(Outcome {
        code: if failed { 1 } else { 0 },
        stdout: body,
        stderr: if failed {
            "duality check failed\n".into()
        } else {
            String::new()
        },
    })
}
