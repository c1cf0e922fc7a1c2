//! Command-line front end for the `wellconn` library.
//!
//! [`run`] parses arguments, dispatches one subcommand and returns the
//! process exit status: 0 on success, 1 for bad input, 2 when a computed
//! result contradicts one of the invariants the library guarantees.

pub mod instance;

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use wellconn::{
    build_t0, find_well_connected_subset, is_well_connected, ker_dim_by_elimination,
    ker_dim_formula, prune_to_core, rank_by_elimination, rank_top_boundary, s_k_size,
    tight_bound, verify_dd_zero, verify_exactness, verify_odd_connected, Arities,
    ExtremalConfig, Method, StringSet,
};

pub use instance::{emit_instance, parse_instance, InstanceError, InstanceFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Library(#[from] wellconn::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => EXIT_INVARIANT,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "wellconn", version, about = "Well-connected subsets of product string sets")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct UniverseArgs {
    /// Axis sizes, or a single path to an instance file ("-" for stdin).
    #[arg(value_name = "ARITIES|INSTANCE")]
    inputs: Vec<String>,

    /// Take the arities from this instance file.
    #[arg(long, value_name = "FILE")]
    instance: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the tight bound ∏d_i − ∏(d_i − 1).
    Bound(UniverseArgs),
    /// Compare face counts and kernel dimensions against elimination.
    Dims(UniverseArgs),
    /// Check ∂∂ = 0 and exactness at every level.
    VerifyExact(UniverseArgs),
    /// Emit the extremal family as an instance file.
    Extremal {
        #[command(flatten)]
        universe: UniverseArgs,
        /// One anchor value per axis, comma separated (default all zero).
        #[arg(long, value_delimiter = ',')]
        anchors: Option<Vec<usize>>,
    },
    /// Emit the maximal well-connected subset of an instance.
    Prune {
        /// Instance file ("-" for stdin).
        instance: String,
    },
    /// Find a well-connected (when possible odd-connected) subset.
    FindWitness {
        /// Instance file ("-" for stdin).
        instance: String,
    },
    /// Emit a uniformly random subset of the universe as an instance file.
    Sample {
        #[command(flatten)]
        universe: UniverseArgs,
        /// Number of strings to draw.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_source(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            return Ok(text);
        }
        fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })
    }

    fn load_instance(&mut self, path: &str) -> Result<InstanceFile, CliError> {
        let text = self.read_source(path)?;
        Ok(parse_instance(&text)?)
    }

    fn write(&mut self, text: &str) -> Result<(), CliError> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
    }

    fn resolve_arities(&mut self, args: &UniverseArgs) -> Result<Arities, CliError> {
        let numeric: Option<Vec<usize>> = args.inputs.iter().map(|s| s.parse().ok()).collect();
        let inline = match (numeric, args.inputs.len()) {
            (_, 0) => None,
            (Some(d), _) => Some(Arities::new(d)?),
            (None, 1) => {
                if args.instance.is_some() {
                    return Err(CliError::Usage(
                        "give the instance either positionally or with --instance, not both".into(),
                    ));
                }
                return Ok(self.load_instance(&args.inputs[0])?.arities().clone());
            }
            (None, _) => {
                return Err(CliError::Usage(format!(
                    "expected axis sizes or one instance path, got {:?}",
                    args.inputs
                )))
            }
        };
        match (inline, &args.instance) {
            (Some(_), Some(_)) => Err(CliError::Usage(
                "arities given both inline and via --instance".into(),
            )),
            (Some(a), None) => Ok(a),
            (None, Some(path)) => Ok(self.load_instance(path)?.arities().clone()),
            (None, None) => Err(CliError::Usage(
                "missing arities: pass axis sizes or an instance file".into(),
            )),
        }
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

fn cmd_bound(a: &Arities, format: Format) -> String {
    let product: usize = a.dims().iter().product();
    let avoiding: usize = a.dims().iter().map(|d| d - 1).product();
    let bound = tight_bound(a);
    match format {
        Format::Plain => format!(
            "arities {}\nproduct {product}\navoiding_product {avoiding}\ntight_bound {bound}\n",
            join(a.dims())
        ),
        Format::Json => json_line(json!({
            "arities": a.dims(),
            "product": product,
            "avoiding_product": avoiding,
            "tight_bound": bound,
        })),
    }
}

fn cmd_dims(a: &Arities, format: Format) -> Result<(String, bool), CliError> {
    let mut rows = Vec::new();
    let mut all_ok = true;
    for k in 0..=a.n() {
        let dim_v = s_k_size(a, k)?;
        let formula = ker_dim_formula(a, k)?;
        let ker = ker_dim_by_elimination(a, k)?;
        let rank = rank_by_elimination(a, k)?;
        let ok = formula == ker && rank + ker == dim_v;
        all_ok &= ok;
        rows.push((k, dim_v, formula, ker, rank, ok));
    }
    let top_rank = rank_top_boundary(a);
    let bound = tight_bound(a);
    all_ok &= top_rank == bound;

    let text = match format {
        Format::Plain => {
            let mut s = format!("arities {}\n", join(a.dims()));
            s.push_str("k dim_v ker_formula ker_elimination rank_elimination status\n");
            for (k, dim_v, formula, ker, rank, ok) in &rows {
                s.push_str(&format!("{k} {dim_v} {formula} {ker} {rank} {}\n", pass(*ok)));
            }
            s.push_str(&format!(
                "top_rank {top_rank} tight_bound {bound} {}\n",
                pass(top_rank == bound)
            ));
            s
        }
        Format::Json => json_line(json!({
            "arities": a.dims(),
            "levels": rows.iter().map(|(k, dim_v, formula, ker, rank, ok)| json!({
                "k": k,
                "dim_v": dim_v,
                "ker_formula": formula,
                "ker_elimination": ker,
                "rank_elimination": rank,
                "pass": ok,
            })).collect::<Vec<_>>(),
            "top_rank": top_rank,
            "tight_bound": bound,
            "pass": all_ok,
        })),
    };
    Ok((text, all_ok))
}

fn cmd_verify_exact(a: &Arities, format: Format) -> Result<(String, bool), CliError> {
    let mut rows = Vec::new();
    let mut all_ok = true;
    for k in 1..=a.n() {
        let dd = if k >= 2 { Some(verify_dd_zero(a, k)?) } else { None };
        let exact = verify_exactness(a, k)?;
        all_ok &= exact && dd.unwrap_or(true);
        rows.push((k, dd, exact));
    }
    let text = match format {
        Format::Plain => {
            let mut s = format!("arities {}\nk dd_zero exact\n", join(a.dims()));
            for (k, dd, exact) in &rows {
                let dd = dd.map_or("-", pass);
                s.push_str(&format!("{k} {dd} {}\n", pass(*exact)));
            }
            s
        }
        Format::Json => json_line(json!({
            "arities": a.dims(),
            "levels": rows.iter().map(|(k, dd, exact)| json!({
                "k": k,
                "dd_zero": dd,
                "exact": exact,
            })).collect::<Vec<_>>(),
            "pass": all_ok,
        })),
    };
    Ok((text, all_ok))
}

fn cmd_find_witness(t: &StringSet, format: Format) -> Result<String, CliError> {
    let a = t.arities();
    let report = find_well_connected_subset(a, t)?;
    let w = &report.witness;
    if !w.is_empty() && !is_well_connected(w) {
        return Err(CliError::Invariant("witness is not well-connected".into()));
    }
    if report.odd_certified != verify_odd_connected(w) {
        return Err(CliError::Invariant("odd certificate is inaccurate".into()));
    }
    if report.method == Method::Kernel && !report.odd_certified {
        return Err(CliError::Invariant("kernel witness is not odd-connected".into()));
    }
    if report.method == Method::None && t.len() > tight_bound(a) {
        return Err(CliError::Invariant(format!(
            "no witness in a set of {} strings, above the bound {}",
            t.len(),
            tight_bound(a)
        )));
    }
    Ok(match format {
        Format::Plain => format!(
            "method {}\nodd_certified {}\nsize {}\nwitness {}",
            report.method,
            report.odd_certified,
            w.len(),
            emit_instance(w)
        ),
        Format::Json => {
            let witness: serde_json::Value =
                serde_json::from_str(&instance::emit_instance_inline(w)).expect("own output parses");
            json_line(json!({
                "method": report.method.as_str(),
                "odd_certified": report.odd_certified,
                "witness": witness,
            }))
        }
    })
}

fn cmd_sample(a: &Arities, size: usize, seed: u64) -> Result<String, CliError> {
    let total = a.universe_size();
    if size > total {
        return Err(CliError::Usage(format!(
            "cannot draw {size} strings from a universe of {total}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = StringSet::new(a.clone());
    for i in sample(&mut rng, total, size) {
        set.insert(a.string_unindex(i)?)?;
    }
    Ok(emit_instance(&set))
}

fn dispatch(cli: Cli, io: &mut Io<'_>) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Bound(args) => {
            let a = io.resolve_arities(&args)?;
            io.write(&cmd_bound(&a, format))
        }
        Command::Dims(args) => {
            let a = io.resolve_arities(&args)?;
            let (text, ok) = cmd_dims(&a, format)?;
            io.write(&text)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Invariant("dimension check failed".into()))
            }
        }
        Command::VerifyExact(args) => {
            let a = io.resolve_arities(&args)?;
            let (text, ok) = cmd_verify_exact(&a, format)?;
            io.write(&text)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Invariant("exactness check failed".into()))
            }
        }
        Command::Extremal { universe, anchors } => {
            let a = io.resolve_arities(&universe)?;
            let config = match anchors {
                Some(y) => ExtremalConfig::new(a, y)?,
                None => ExtremalConfig::with_default_anchors(a),
            };
            let t0 = build_t0(&config);
            if t0.len() != tight_bound(config.arities()) {
                return Err(CliError::Invariant("extremal family has the wrong size".into()));
            }
            io.write(&emit_instance(&t0))
        }
        Command::Prune { instance } => {
            let inst = io.load_instance(&instance)?;
            io.write(&emit_instance(&prune_to_core(&inst.strings)))
        }
        Command::FindWitness { instance } => {
            let inst = io.load_instance(&instance)?;
            if inst.strings.is_empty() {
                return Err(CliError::Usage("instance has no strings".into()));
            }
            let text = cmd_find_witness(&inst.strings, format)?;
            io.write(&text)
        }
        Command::Sample {
            universe,
            size,
            seed,
        } => {
            let a = io.resolve_arities(&universe)?;
            let text = cmd_sample(&a, size, seed)?;
            io.write(&text)
        }
    }
}

/// Runs one command line (`args[0]` is the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Io { stdin, out };
    match dispatch(cli, &mut io) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
