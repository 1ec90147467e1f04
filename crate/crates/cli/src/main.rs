//! `wicks`: command-line front end for oriented maximal Wicks forms.

mod cache;
mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Construct,
    Backtrack,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "wicks", version, about = "Validate, transform, enumerate and count oriented maximal Wicks forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Wicks conditions and report genus and maximality.
    Validate {
        /// Word in verbose (`a b a' b'`) or compact (`abAB`) syntax.
        word: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Genus, gluing, vertex signs, automorphisms and canonical form.
    Info {
        word: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List every maximal form of a genus up to isomorphism.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "construct")]
        method: Method,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the census here (plus a `.meta.json` sidecar) instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Permit genus 4.
        #[arg(long)]
        allow_large: bool,
        /// Ignore and do not update the census cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Exact masses and surface counts for one genus.
    Count {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Number of extremal surfaces for genus 1, 2, 4, ..., N.
    Table {
        #[arg(long, default_value_t = 15)]
        max_genus: usize,
        /// Also print genus 3, annotated.
        #[arg(long)]
        include_genus_3: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply an IH-transformation on an edge.
    Transform {
        word: String,
        /// Edge name, optionally primed to pick the inverse orientation.
        #[arg(long)]
        edge: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reduce a maximal form at a negative vertex.
    Reduce {
        word: String,
        /// Vertex id as listed by `info`; defaults to the first negative vertex.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The dual one-vertex triangulation.
    Dual {
        word: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Angle, radii and area of the extremal surfaces of a genus.
    Geometry {
        #[arg(long)]
        genus: usize,
        /// Fractional decimal digits.
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
