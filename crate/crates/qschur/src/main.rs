use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qschur::commands::{self, Format, Outcome, Scope, VerifyArgs};
use qschur::guard::Guards;

const AFTER_HELP: &str = "\
Matrix literals: E12, E(i,j), D(a,b,...) (diagonal from the window's first index), \
signed sums such as 2E12+D(0,1), or JSON triples [[i,j,a],...].
Windows: m:n, for example -1:1.
Scale guards: QSCHUR_MAX_Q, QSCHUR_MAX_R, QSCHUR_MAX_WINDOW, QSCHUR_MAX_VERIFY_WINDOW, QSCHUR_MAX_WEIGHT_R.
Exit status: 0 success, 1 a verified claim failed, 2 invalid input or guard violation.";

#[derive(Parser)]
#[command(name = "qschur", version, about = "Exact computations in q-Schur algebras and quantum gl", after_help = AFTER_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product [A][B] in K(window, r).
    Multiply {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Structure polynomials f_{A,B,C}(v, v') with their v' = 1 values.
    Fpoly {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Check relations, bases or flag counts at a finite window.
    Verify {
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        r: i64,
        /// Field sizes for the oracle scope.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        q: Vec<u32>,
        /// Negative control: perturb one relation so that it must fail.
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// Weight multiplicities of the Weyl module of a partition.
    Weights {
        #[arg(long)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Evaluate a generator word in K(window, r).
    #[command(after_help = "Tokens, applied as a product left to right: Eh, Eh^(m), Fh, Fh^(m), K[i:j_i,...], KB(h;c;t), KT(h;c;t).")]
    Word {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

fn run(cli: &Cli) -> Result<Outcome, qschur_core::Error> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Multiply { window, r, a, b } => commands::multiply_cmd(window, *r, a, b, fmt),
        Cmd::Fpoly { a, b } => commands::fpoly_cmd(a, b, fmt),
        Cmd::Verify { scope, window, r, q, perturb } => {
            let guards = Guards::from_env()?;
            commands::verify_cmd(&VerifyArgs { scope: *scope, window, r: *r, qs: q, perturb: *perturb, format: fmt }, &guards)
        }
        Cmd::Weights { mu, window } => commands::weights_cmd(mu, window, &Guards::from_env()?, fmt),
        Cmd::Word { window, r, word } => commands::word_cmd(window, *r, word, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("qschur: {e}");
            ExitCode::from(2)
        }
    }
}
