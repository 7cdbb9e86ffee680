use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ginvariant::perm_action::DEFAULT_CAP;
use ginvariant::report::{
    self, parse_family_range, ActionKind, GroupSpec, Options, TorusOptions, DEFAULT_SCHUR_TRIALS,
    DEFAULT_SEED, DEFAULT_STRUCTURE_TRIALS,
};
use ginvariant::torus::DEFAULT_DEGREE;
use ginvariant::{linalg::DEFAULT_TOL, Error};

#[derive(Clone, Copy, ValueEnum)]
enum Action {
    Natural,
    Regular,
}

impl From<Action> for ActionKind {
    fn from(a: Action) -> Self {
        match a {
            Action::Natural => ActionKind::Natural,
            Action::Regular => ActionKind::Regular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long = "max-group-order", default_value_t = DEFAULT_CAP)]
    max_group_order: usize,
}

#[derive(Parser)]
#[command(name = "ginv", version, about = "Invariant function spaces of finite group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose one action and verify kernels, Schur and structure checks.
    Decompose {
        /// `family:n`, `regular:family:n`, inline JSON, a JSON file path, or `-` for stdin.
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        action: Option<Action>,
        #[command(flatten)]
        common: Common,
        #[arg(long = "emit-bases")]
        emit_bases: bool,
        #[arg(long = "schur-trials", default_value_t = DEFAULT_SCHUR_TRIALS)]
        schur_trials: usize,
        #[arg(long = "structure-trials", default_value_t = DEFAULT_STRUCTURE_TRIALS)]
        structure_trials: usize,
    },
    /// One verdict row per instance of the given families.
    Survey {
        /// `family:a..b`, repeatable.
        #[arg(long = "family", required = true)]
        families: Vec<String>,
        #[arg(long, value_enum, default_value = "natural")]
        action: Action,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Trigonometric polynomial checks on the torus.
    Torus {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Terms `k1,..,kn:coefficient`, separated by `;` or spaces.
        #[arg(long, allow_hyphen_values = true)]
        monomials: Option<String>,
        #[arg(long)]
        fejer: Option<u32>,
        #[arg(long = "check-polydisc")]
        check_polydisc: bool,
    },
}

fn options(common: &Common) -> Options {
    Options {
        seed: common.seed,
        tol: common.tol,
        cap: common.max_group_order,
        ..Options::default()
    }
}

fn run(command: Command) -> Result<String, Error> {
    match command {
        Command::Decompose {
            group,
            action,
            common,
            emit_bases,
            schur_trials,
            structure_trials,
        } => {
            let spec = if group == "-" {
                let mut text = String::new();
                std::io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
                GroupSpec::from_json(&text)?
            } else {
                GroupSpec::parse(&group, action.map(Into::into))?
            };
            let opts = Options {
                emit_bases,
                schur_trials,
                structure_trials,
                ..options(&common)
            };
            Ok(report::to_json(&report::decompose(&spec, &opts)?))
        }
        Command::Survey {
            families,
            action,
            format,
            common,
        } => {
            let mut specs = Vec::new();
            for f in &families {
                specs.extend(parse_family_range(f, action.into())?);
            }
            let r = report::survey(&specs, &options(&common))?;
            Ok(match format {
                Format::Json => report::to_json(&r),
                Format::Csv => report::survey_csv(&r),
            })
        }
        Command::Torus {
            n,
            degree,
            seed,
            monomials,
            fejer,
            check_polydisc,
        } => {
            let opts = TorusOptions {
                n,
                degree,
                seed,
                monomials,
                fejer,
                check_polydisc,
            };
            Ok(report::to_json(&report::torus(&opts)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let err = Error::Parse(e.to_string().lines().next().unwrap_or_default().to_string());
            print!("{}", report::error_json(&err));
            return ExitCode::from(2);
        }
    };
    let written = run(cli.command).and_then(|out| match &cli.output {
        Some(path) => std::fs::write(path, out)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    });
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            print!("{}", report::error_json(&err));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
