//! `polysupport` command-line front end.
//!
//! Results go to stdout as JSON, diagnostics to stderr. Exit status is 0 on
//! success, 1 on bad input (or a witness that fails verification) and 2 when
//! a search gave up.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use polysupport::classifier::classify;
use polysupport::factorizer::factor;
use polysupport::field::{parse_field, Field};
use polysupport::io::{self, schema};
use polysupport::oracle::{self, OracleConfig, Strategy, DEFAULT_CAP};
use polysupport::polytope::{enumerate_decompositions, hull};
use polysupport::witness::{build_characteristic_witness, verify_witness};
use polysupport::{Error, Result};

#[derive(Parser)]
#[command(
    name = "polysupport",
    version,
    about = "Reducibility of polynomials from their support"
)]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Galois,
    Exhaustive,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest extension degree to search (default: total degree).
    #[arg(long)]
    max_ext: Option<u32>,
    /// Search-size cap; exceeding it exits with status 2.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Galois)]
    strategy: StrategyArg,
}

impl SearchArgs {
    fn config(&self) -> OracleConfig {
        let strategy = match self.strategy {
            StrategyArg::Galois => Strategy::Galois,
            StrategyArg::Exhaustive => Strategy::Exhaustive,
        };
        OracleConfig {
            max_ext: self.max_ext,
            cap: self.cap,
            strategy,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether every polynomial with the given support is reducible.
    Classify {
        #[arg(long, required_unless_present = "schema")]
        support: Option<String>,
        /// Print the input schema and exit.
        #[arg(long)]
        schema: bool,
    },
    /// Factor a polynomial whose support is good in its characteristic.
    Factor {
        #[arg(long, required_unless_present = "schema")]
        poly: Option<String>,
        #[arg(long)]
        schema: bool,
    },
    /// Count reducible members of V_I over a finite field.
    Probe {
        #[arg(long, required_unless_present = "schema")]
        support: Option<String>,
        /// Field as `p` or `p^k`.
        #[arg(long, default_value = "2")]
        field: String,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        schema: bool,
    },
    /// Decide absolute reducibility of one polynomial by exhaustive search.
    Irreducible {
        #[arg(long, required_unless_present = "schema")]
        poly: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        schema: bool,
    },
    /// List the integral Minkowski decompositions of the Newton polytope.
    Decompose {
        #[arg(long, required_unless_present = "schema")]
        support: Option<String>,
        /// Drop decompositions with a single-point summand.
        #[arg(long)]
        nontrivial: bool,
        #[arg(long)]
        schema: bool,
    },
    /// Build a support whose reducibility depends on the characteristic.
    Witness {
        /// Comma-separated primes, possibly empty.
        #[arg(long, default_value = "")]
        primes: String,
        #[arg(long, default_value = "a")]
        case: String,
        /// Also verify over `--fields`.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value = "2,3,5")]
        fields: String,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        schema: bool,
    },
    /// Check a witness file against its stated primes and case.
    Verify {
        #[arg(long, required_unless_present = "schema")]
        witness: Option<String>,
        #[arg(long, default_value = "2,3,5")]
        fields: String,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        schema: bool,
    },
    /// Check C(PQ) = C(P) + C(Q) on random pairs.
    OstrowskiFuzz {
        #[arg(long, required_unless_present = "schema")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value = "5")]
        field: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 6)]
        max_terms: usize,
        #[arg(long)]
        schema: bool,
    },
}

enum Outcome {
    Done(Value),
    Failed(Value),
}

fn fields_arg(s: &str) -> Result<Vec<Field>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| parse_field(x.trim()))
        .collect()
}

fn primes_arg(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| Error::input("--primes", format!("{x}: {e}")))
        })
        .collect()
}

fn load(path: &Option<String>) -> Result<Value> {
    io::read_json_file(path.as_deref().expect("clap enforces the flag"))
}

fn run(cmd: Command) -> Result<Outcome> {
    use Outcome::Done;
    match cmd {
        Command::Classify { schema: true, .. }
        | Command::Probe { schema: true, .. }
        | Command::Decompose { schema: true, .. } => Ok(Done(schema::support())),
        Command::Factor { schema: true, .. } | Command::Irreducible { schema: true, .. } => {
            Ok(Done(schema::polynomial()))
        }
        Command::Verify { schema: true, .. } => Ok(Done(schema::witness())),
        Command::Witness { schema: true, .. } | Command::OstrowskiFuzz { schema: true, .. } => {
            Ok(Done(schema::none()))
        }

        Command::Classify { support, .. } => {
            let s = io::parse_support(&load(&support)?)?;
            Ok(Done(io::classification_to_json(&classify(&s))))
        }
        Command::Factor { poly, .. } => {
            let p = io::parse_polynomial(&load(&poly)?)?;
            let c = classify(&p.support()?);
            let fac = match factor(&p) {
                Ok((_, f)) => io::factorization_json(&f),
                Err(Error::NeverGood | Error::CharacteristicNotCovered(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            let mut v =
                json!({"classification": io::classification_to_json(&c), "factorization": fac});
            v["schema_version"] = json!(io::SCHEMA_VERSION);
            Ok(Done(v))
        }
        Command::Probe {
            support,
            field,
            search,
            ..
        } => {
            let s = io::parse_support(&load(&support)?)?;
            let f = parse_field(&field)?;
            let mut v = io::zstatus_json(&oracle::z_status(&s, &f, &search.config())?);
            v["schema_version"] = json!(io::SCHEMA_VERSION);
            Ok(Done(v))
        }
        Command::Irreducible { poly, search, .. } => {
            let p = io::parse_polynomial(&load(&poly)?)?;
            let cert = oracle::is_absolutely_reducible(&p, &search.config())?;
            Ok(Done(json!({
                "schema_version": io::SCHEMA_VERSION,
                "irreducible": cert.is_none(),
                "certificate": cert.as_ref().map(io::factorization_json),
            })))
        }
        Command::Decompose {
            support,
            nontrivial,
            ..
        } => {
            let s = io::parse_support(&load(&support)?)?;
            let c = hull(&s)?;
            let ds = enumerate_decompositions(&c, nontrivial)?;
            Ok(Done(io::decompositions_to_json(&c, &ds)))
        }
        Command::Witness {
            primes,
            case,
            verify,
            fields,
            search,
            ..
        } => {
            let w = build_characteristic_witness(&primes_arg(&primes)?, io::parse_case(&case)?)?;
            let mut v = io::witness_to_json(&w);
            if verify {
                let r = verify_witness(&w, &fields_arg(&fields)?, &search.config())?;
                v["verification"] = io::report_json(&r);
                if r.any_inconclusive() {
                    return Err(Error::Inconclusive(v.to_string()));
                }
                if !r.all_consistent() {
                    return Ok(Outcome::Failed(v));
                }
            }
            Ok(Done(v))
        }
        Command::Verify {
            witness,
            fields,
            search,
            ..
        } => {
            let doc = io::parse_witness(&load(&witness)?)?;
            let w = build_characteristic_witness(&doc.primes, doc.case)?;
            if w.j != doc.j {
                return Err(Error::input(
                    "$.points",
                    "support differs from the construction for these primes",
                ));
            }
            let r = verify_witness(&w, &fields_arg(&fields)?, &search.config())?;
            let v =
                json!({"schema_version": io::SCHEMA_VERSION, "verification": io::report_json(&r)});
            if r.any_inconclusive() {
                return Err(Error::Inconclusive(v.to_string()));
            }
            Ok(if r.all_consistent() {
                Done(v)
            } else {
                Outcome::Failed(v)
            })
        }
        Command::OstrowskiFuzz {
            seed,
            count,
            field,
            dim,
            max_degree,
            max_terms,
            ..
        } => {
            let f = parse_field(&field)?;
            if dim == 0 {
                return Err(Error::input("--dim", "must be positive"));
            }
            let seed = seed.expect("clap enforces the flag");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = Vec::new();
            for k in 0..count {
                let p = oracle::random_polynomial(&mut rng, &f, dim, max_degree, max_terms)?;
                let q = oracle::random_polynomial(&mut rng, &f, dim, max_degree, max_terms)?;
                if !oracle::ostrowski_check(&p, &q)? {
                    failures.push(json!({"index": k, "p": p.to_string(), "q": q.to_string()}));
                }
            }
            let v = json!({
                "schema_version": io::SCHEMA_VERSION,
                "seed": seed,
                "pairs": count,
                "failures": failures.len(),
                "failing_pairs": failures,
            });
            Ok(if failures.is_empty() {
                Done(v)
            } else {
                Outcome::Failed(v)
            })
        }
    }
}

fn print(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
        {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(Outcome::Done(v)) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(v)) => {
            print(&v);
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(e) if e.is_inconclusive() || matches!(e, Error::RootsNotFound { .. }) => {
            eprintln!("inconclusive: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
