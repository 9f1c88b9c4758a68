use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use edlab::cover::build_cover;
use edlab::degree::commutativity_degree;
use edlab::exterior::{closed_form_dihedral, closed_form_quaternion, exterior_degree_of};
use edlab::fp::{pair_product, PairKind};
use edlab::spec::{parse_subgroup, GroupExpr, GroupSpec};
use edlab::sweep::{parse_range, sweep, write_csv, write_json, Family};
use edlab::verify::{describe_subgroup, exit_code, oracle_compare, run_suite, CheckReport, Scope, Verdict, SUITES};
use edlab::{Config, Error, Result};

const GROUPS_HELP: &str = "\
GROUP SPECS:
  C(n)        cyclic group of order n
  D(n)        dihedral group D_2n: the argument is n, the ORDER IS 2n (D(4) has order 8)
  Q(n)        generalized quaternion group <a,b | a^n = b^2 = (ab)^2>, ORDER 4n (Q(2) has order 8)
  S(n)        symmetric group on n points
  A x B       direct product, also written A × B; parentheses group factors
  perm:[(1 2 3), (1 2)(3 4)]   closure of permutations in cycle notation
  fp:<a,b | a^4, b^2, (ab)^2>  regular enumeration of a finite presentation
  table:PATH  Cayley table stored as JSON

SUBGROUP SPECS (--H, --K):
  whole, center, derived, trivial, gen:[i,j,...] (closure of element indices)

Exit status: 0 all pass, 1 usage or runtime error, 2 some check failed, 3 findings only.
The JSON file named by EDLAB_CONFIG, when set, overrides caps, strategy and parallelism.";

#[derive(Parser)]
#[command(name = "edlab", version, about = "Commutativity and exterior degrees of finite groups", after_help = GROUPS_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DegreeMethod {
    /// Evaluate h^m ∧ k in G ∧ G through a stem cover
    Cover,
    /// Evaluate h^m ∧ k in the enumerated H ∧ K
    Fp,
    /// Closed form for D(n), Q(n) and C(n) with H = K = G
    ClosedForm,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Order, classes, center, derived subgroup, exponent, M(G), Z^∧(G) and |G ∧ G|
    Info {
        /// Group spec, e.g. "D(4)" for the dihedral group of order 8
        spec: String,
    },
    /// The m-th relative exterior degree d^∧_m(H,K)
    Degree {
        #[arg(long)]
        m: u64,
        #[arg(long = "H", default_value = "whole")]
        h: String,
        #[arg(long = "K", default_value = "whole")]
        k: String,
        #[arg(long, value_enum, default_value_t = DegreeMethod::All)]
        method: DegreeMethod,
        spec: String,
    },
    /// One row per (group, m) over a family, written as CSV or JSON
    Sweep {
        /// dihedral (D(n), order 2n), quaternion (Q(n), order 4n), cyclic, or all-small (n ranges over orders)
        #[arg(long)]
        family: Family,
        /// Inclusive range A..B
        #[arg(long)]
        n: String,
        /// Inclusive range A..B
        #[arg(long)]
        m: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a verification suite ("all" runs every suite)
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest corpus group order
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Largest m for checks over all m
        #[arg(long, default_value_t = 6)]
        max_m: u64,
        /// Print the available suites and exit
        #[arg(long)]
        list: bool,
    },
    /// Compare the stem-cover pairing with the enumerated G ∧ G
    OracleCompare { spec: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = Config::from_env().and_then(|config| config.with_workers(|| run(cli.command, &config)));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, config: &Config) -> Result<i32> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Info { spec } => info(&mut out, &spec, config),
        Command::Degree { m, h, k, method, spec } => degree(&mut out, &spec, m, &h, &k, method, config),
        Command::Sweep { family, n, m, out: path, format } => {
            let rows = sweep(family, parse_range(&n)?, parse_range(&m)?, config)?;
            let file = BufWriter::new(File::create(&path)?);
            match format {
                Format::Csv => write_csv(&rows, file)?,
                Format::Json => write_json(&rows, file)?,
            }
            writeln!(out, "{} rows written to {}", rows.len(), path.display())?;
            Ok(0)
        }
        Command::Verify { suite, max_order, max_m, list } => {
            if list {
                for (name, what) in SUITES {
                    writeln!(out, "{name:30} {what}")?;
                }
                return Ok(0);
            }
            let reports = run_suite(&suite, &Scope::new(max_order, max_m, config.clone()))?;
            print_reports(&mut out, &reports)?;
            Ok(exit_code(&reports))
        }
        Command::OracleCompare { spec } => {
            let g = spec.parse::<GroupSpec>()?.build(config)?;
            let report = oracle_compare(&g, &spec, config)?;
            print_reports(&mut out, std::slice::from_ref(&report))?;
            Ok(exit_code(&[report]))
        }
    }
}

fn print_reports(out: &mut impl Write, reports: &[CheckReport]) -> Result<()> {
    for r in reports {
        let values: Vec<String> = r.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{} {} [{}] {}", r.verdict, r.check, r.instance, values.join(" "))?;
        for w in &r.witnesses {
            writeln!(out, "    {w}")?;
        }
    }
    let count = |v| reports.iter().filter(|r| r.verdict == v).count();
    writeln!(
        out,
        "summary: {} pass, {} finding, {} fail",
        count(Verdict::Pass),
        count(Verdict::Finding),
        count(Verdict::Fail)
    )?;
    Ok(())
}

fn info(out: &mut impl Write, spec: &str, config: &Config) -> Result<i32> {
    let g = spec.parse::<GroupSpec>()?.build(config)?;
    let cover = build_cover(&g, &config.caps)?;
    let center = g.center();
    let derived = g.derived_subgroup();
    let z = cover.exterior_center()?;
    writeln!(out, "group {spec}")?;
    writeln!(out, "order {}", g.order())?;
    writeln!(out, "classes {}", g.class_count())?;
    writeln!(out, "center order {} {}", center.order(), describe_subgroup(&center))?;
    writeln!(out, "derived order {} {}", derived.order(), describe_subgroup(&derived))?;
    writeln!(out, "exponent {}", g.exponent())?;
    writeln!(out, "d(G) {}", commutativity_degree(&g)?)?;
    writeln!(out, "M(G) {} order {}", cover.kernel(), cover.kernel().order())?;
    writeln!(out, "Z^∧(G) order {} {}", z.order(), describe_subgroup(&z))?;
    writeln!(out, "|G∧G| {}", cover.exterior_square_order())?;
    Ok(0)
}

fn closed_form(spec: &GroupSpec, m: u64) -> Result<Option<String>> {
    Ok(match spec.expr {
        GroupExpr::Dihedral(n) => Some(closed_form_dihedral(n as u64, m)?.to_string()),
        GroupExpr::Quaternion(n) => Some(closed_form_quaternion(n as u64, m)?.to_string()),
        GroupExpr::Cyclic(_) => Some("1/1".to_string()),
        _ => None,
    })
}

fn degree(
    out: &mut impl Write,
    spec_text: &str,
    m: u64,
    h_text: &str,
    k_text: &str,
    method: DegreeMethod,
    config: &Config,
) -> Result<i32> {
    let spec: GroupSpec = spec_text.parse()?;
    let g = spec.build(config)?;
    let h = parse_subgroup(&g, h_text)?;
    let k = parse_subgroup(&g, k_text)?;
    writeln!(out, "group {spec} order {}", g.order())?;
    writeln!(out, "H {} order {}", describe_subgroup(&h), h.order())?;
    writeln!(out, "K {} order {}", describe_subgroup(&k), k.order())?;
    writeln!(out, "m {m}")?;
    let wants = |x| method == x || method == DegreeMethod::All;
    let mut values = Vec::new();
    if wants(DegreeMethod::Cover) {
        let cover = build_cover(&g, &config.caps)?;
        let v = exterior_degree_of(&cover.pairing(&h, &k)?, m)?;
        writeln!(out, "cover {v}")?;
        values.push(v.to_string());
    }
    if wants(DegreeMethod::Fp) {
        let v = pair_product(&g, &h, &k, PairKind::Exterior, config)?.degree(m)?;
        writeln!(out, "fp {v}")?;
        values.push(v.to_string());
    }
    if wants(DegreeMethod::ClosedForm) {
        let whole = h.is_whole() && k.is_whole();
        match closed_form(&spec, m)? {
            Some(v) if whole => {
                writeln!(out, "closed-form {v}")?;
                values.push(v);
            }
            _ if method == DegreeMethod::ClosedForm => {
                return Err(Error::InvalidArgument(
                    "closed form needs C(n), D(n) or Q(n) with H = K = whole".into(),
                ))
            }
            _ => writeln!(out, "closed-form n/a")?,
        }
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if agree {
        writeln!(out, "verdict PASS")?;
        Ok(0)
    } else {
        writeln!(out, "verdict FINDING methods disagree")?;
        Ok(3)
    }
}
