//! `slidecx`: pipe dreams, polynomials and slide complexes from the command line.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Failure, Output};

#[derive(Parser, Debug)]
#[command(name = "slidecx", version, about = "Subword complexes, pipe dreams and slide complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the pipe dreams of a permutation.
    Enumerate {
        /// Permutation in one-line notation, e.g. 1432 or 1,4,3,2.
        perm: String,
        /// Only reduced pipe dreams.
        #[arg(long)]
        reduced: bool,
        /// Only quasi-Yamanouchi pipe dreams.
        #[arg(long)]
        quasi_yamanouchi: bool,
        #[arg(long, value_enum, default_value_t = EnumerateFormat::Json)]
        format: EnumerateFormat,
    },
    /// Compute a Schubert, Grothendieck, slide or glide polynomial.
    ///
    /// Schubert and Grothendieck polynomials take a permutation
    /// (`poly 1432 schubert`); slide and glide polynomials take a
    /// quasi-Yamanouchi pipe dream given by its word (`--word 3,2,3 --n 4`)
    /// or its crosses (`--crosses "1,2;1,3;2,2" --n 4`).
    Poly {
        /// `[PERM] KIND`, where KIND is schubert, grothendieck, slide or glide.
        #[arg(num_args = 1..=2, required = true, value_name = "ARGS")]
        args: Vec<String>,
        #[arg(long, value_enum, default_value_t = Source::Pipedreams)]
        source: Source,
        /// Comma-separated letters of a quasi-Yamanouchi word.
        #[arg(long)]
        word: Option<String>,
        /// Crosses `i,j` separated by `;`.
        #[arg(long)]
        crosses: Option<String>,
        /// Rank for --word and --crosses.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build and analyse a subword complex (--perm) or slide complex (--word).
    Complex {
        /// Comma-separated letters of the ambient word Q.
        word: String,
        /// Target permutation for a subword complex.
        #[arg(long, conflicts_with = "target_word", required_unless_present = "target_word")]
        perm: Option<String>,
        /// Target word for a slide complex.
        #[arg(long = "word", id = "target_word")]
        target_word: Option<String>,
        /// Rank; defaults to the permutation's rank, or one more than the largest letter.
        #[arg(long)]
        n: Option<usize>,
        /// Also list faces.
        #[arg(long, value_enum)]
        faces: Option<FaceSelection>,
        /// Include a vertex-decomposition shelling order.
        #[arg(long)]
        shelling: bool,
        #[arg(long, value_enum, default_value_t = ComplexFormat::Json)]
        format: ComplexFormat,
    },
    /// Run the exhaustive checks up to the given rank.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EnumerateFormat {
    Json,
    Ascii,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ComplexFormat {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Pipedreams,
    Operators,
    Complex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceSelection {
    All,
    Interior,
    Boundary,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteArg {
    All,
    Polynomials,
    Topology,
    Flips,
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate {
            perm,
            reduced,
            quasi_yamanouchi,
            format,
        } => commands::enumerate(&perm, reduced, quasi_yamanouchi, format == EnumerateFormat::Ascii),
        Command::Poly {
            args,
            source,
            word,
            crosses,
            n,
        } => commands::poly(&args, source, word.as_deref(), crosses.as_deref(), n),
        Command::Complex {
            word,
            perm,
            target_word,
            n,
            faces,
            shelling,
            format,
        } => commands::complex(
            &word,
            perm.as_deref(),
            target_word.as_deref(),
            n,
            faces,
            shelling,
            format == ComplexFormat::Dot,
        ),
        Command::Verify { max_rank, suite } => {
            let suite = match suite {
                SuiteArg::All => slide_complexes::verify::Suite::All,
                SuiteArg::Polynomials => slide_complexes::verify::Suite::Polynomials,
                SuiteArg::Topology => slide_complexes::verify::Suite::Topology,
                SuiteArg::Flips => slide_complexes::verify::Suite::Flips,
            };
            commands::verify(max_rank, suite)
        }
    };
    match result {
        Ok(Output::Json(result)) => {
            emit(&format!("{}\n", commands::render(&result)));
            if result.status == commands::Status::Ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Text(text)) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(message)) => {
            emit(&format!("{}\n", commands::render(&commands::CommandResult::usage_error(message))));
            ExitCode::from(2)
        }
    }
}
