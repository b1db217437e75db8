//! The `relcohom` command line: argument parsing, dispatch and exit codes.
//!
//! Exit code 0 is success, 1 means a resource ceiling was reached, 2 means the
//! input was invalid.

mod commands;
pub mod input;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::group_modules::battery::{DEFAULT_BATTERY, DEFAULT_SEED};
use parse::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "relcohom", version, about = "Exact relative group cohomology and equivariant dimensions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Highest cohomological degree computed.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    /// Coefficient battery used by `--module battery`.
    #[arg(long, global = true, default_value = DEFAULT_BATTERY)]
    pub battery: String,
    /// Seed for the random modules of the battery.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Resource ceilings, e.g. `resolution-rank=200,cocycles=5000`.
    #[arg(long, global = true, default_value = "")]
    pub limits: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smith normal form of an integer matrix.
    Snf {
        /// JSON array of rows, e.g. '[[2,4],[6,8]]'.
        #[arg(long)]
        matrix: String,
        /// Also print the unimodular transforms `U`, `V` with `U A V = S`.
        #[arg(long)]
        transforms: bool,
    },
    /// Ordinary, relative (Takasu), Adamson or Bredon cohomology.
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
    /// Equivariant dimensions of a Γ-group.
    Classify {
        /// Builtin Γ-group (see `--list`).
        #[arg(long, conflicts_with = "input")]
        builtin: Option<String>,
        /// JSON document describing the Γ-group.
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Non-abelian H¹ against complement classes.
    H1 {
        /// Name from the builtin suite (see `--list`).
        #[arg(long)]
        action: Option<String>,
        /// `C_m` acting on `C_n` by `x ↦ x^k`: give `--gamma Cm --on Cn --power k`.
        #[arg(long, requires_all = ["on", "power"])]
        gamma: Option<String>,
        #[arg(long)]
        on: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        power: Option<i64>,
        /// Run the whole builtin suite.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
    },
    /// Reproduce a worked example with its derivation traces.
    Reproduce {
        /// Example id, e.g. ex-5.9; `list` prints the ids.
        id: String,
        /// Parameter `n` for ex-4.16 and ex-5.10.
        #[arg(long, short = 'n')]
        param: Option<u32>,
    },
    /// Derive the best bound on a dimension quantity.
    Derive {
        /// Quantity, e.g. 'cd(ZxZ, Z)', 'cd([C4 : proper])' or 'bredon:C6:proper'.
        target: String,
        /// JSON array of cited axioms.
        #[arg(long)]
        axioms: Option<String>,
    },
    /// Search for an invariant spanning tree.
    SpanningTree {
        #[arg(long, conflicts_with = "input")]
        builtin: Option<String>,
        #[arg(long)]
        input: Option<String>,
    },
    /// Ball in the Cayley tree of the free group on a Γ-set.
    CayleyBall {
        #[arg(long, conflicts_with = "input")]
        builtin: Option<String>,
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CohomologyCommand {
    /// `H^*(K; M)`.
    Group {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "trivial")]
        module: String,
    },
    /// `H^*(K, L; M)` of a group pair.
    Takasu {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// `H^*([K : F]; M)` relative to a family.
    Adamson {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "proper")]
        family: String,
        #[arg(long, default_value = "trivial")]
        module: String,
    },
    /// `H^*_F(K; M)` over the orbit category.
    Bredon {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "proper")]
        family: String,
        /// constant, coinduced:<module>, yoneda:<object> or atomic:<object>:<module>[:<modulus>].
        #[arg(long, default_value = "constant")]
        module: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    /// Ext route for finite groups, mapping cone for fixtures.
    Auto,
    Ext,
    Cone,
    /// Both routes, failing if they disagree.
    Both,
}

/// Rendered command output.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
}

/// The settings shared by every command.
pub struct Context {
    pub max_degree: usize,
    pub battery: String,
    pub seed: u64,
    pub limits: Limits,
}

/// Runs one invocation, returning the exit code, standard output and standard error.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    let limits = match Limits::parse(&cli.global.limits) {
        Ok(l) => l,
        Err(e) => return (EXIT_INVALID, String::new(), format!("error: {e}\n")),
    };
    let ctx = Context {
        max_degree: cli.global.max_degree,
        battery: cli.global.battery.clone(),
        seed: cli.global.seed,
        limits,
    };
    match commands::dispatch(&cli.command, &ctx) {
        Ok(out) => {
            let body = match cli.global.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
                Format::Text => out.text,
            };
            (EXIT_OK, body, String::new())
        }
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_bound() {
        EXIT_BOUND
    } else {
        EXIT_INVALID
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let (code, out, err) = run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> (i32, String, String) {
        run(std::iter::once("relcohom").chain(args.split_whitespace()))
    }

    #[test]
    fn documented_invocations() {
        let (code, out, _) = call("cohomology group --group C2 --module trivial --max-degree 4");
        assert_eq!((code, out.as_str()), (EXIT_OK, "[Z, 0, Z/2, 0, Z/2]\n"));
        let (code, out, _) = run(["relcohom", "snf", "--matrix", "[[2,4],[6,8]]"]);
        assert_eq!((code, out.as_str()), (EXIT_OK, "diag(2, 4)\n"));
        let (code, out, _) = call("reproduce ex-5.9 --format json");
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["takasu"], 4);
        assert_eq!(v["adamson"], "inf");
        assert_eq!(v["bredon"], "inf");
        assert!(!v["facts"].as_array().unwrap().is_empty());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call("frobnicate").0, EXIT_INVALID);
        assert_eq!(call("cohomology group --group Q7").0, EXIT_INVALID);
        assert_eq!(call("reproduce ex-9.9").0, EXIT_INVALID);
        assert_eq!(call("cohomology group --group C2 --limits bogus=3").0, EXIT_INVALID);
        let (code, _, err) = call("cayley-ball --builtin c2-free --radius 9");
        assert_eq!(code, EXIT_BOUND);
        assert!(err.starts_with("error:"));
        assert_eq!(call("h1 --action nope").0, EXIT_INVALID);
        assert_eq!(call("--help").0, EXIT_OK);
    }

    #[test]
    fn resource_limits_are_bound_errors() {
        assert_eq!(
            call("cohomology group --group S3 --max-degree 6 --limits resolution-rank=2").0,
            EXIT_BOUND
        );
        assert_eq!(call("h1 --action C2xC3xC3 --limits cocycles=1").0, EXIT_INVALID);
        assert_eq!(call("h1 --all --limits cocycles=1").0, EXIT_BOUND);
    }

    #[test]
    fn output_is_deterministic() {
        for args in [
            "reproduce ex-4.11 --format json",
            "classify --builtin c6-five-point-kernel --format json",
            "cohomology adamson --group C6 --module battery",
            "h1 --all --format json",
            "derive cd([C4:proper])",
        ] {
            let a = call(args);
            assert_eq!(a.0, EXIT_OK, "{args}: {}", a.2);
            assert_eq!(a, call(args), "{args}");
        }
    }

    #[test]
    fn classify_reports_fixed_sets() {
        let (_, out, _) = call("classify --builtin c6-five-point-kernel --format json");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let fixed = v["fixed_sets"].as_object().unwrap();
        let sets: Vec<Vec<String>> = fixed
            .values()
            .map(|x| serde_json::from_value(x.clone()).unwrap())
            .collect();
        assert!(sets.contains(&vec!["a".into(), "b".into(), "c".into()]));
        assert!(sets.contains(&vec!["d".into(), "e".into()]));
        assert!(sets.contains(&vec![]));
        assert_eq!(v["consistent"], true);
    }
}
