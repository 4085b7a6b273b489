//! Command implementations for the `orbitkit` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use orbitkit::cyclo::RootValue;
use orbitkit::nilgroup::GroupError;
use orbitkit::oracle::OracleTable;
use orbitkit::orbits::OrbitCharacterTable;
use orbitkit::{
    burnside_table, match_tables, verify, Catalog, Class2Group, GroupElement, GroupSpec, OrbitError, OrbitMethod,
    SpecError, Suite,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// Environment variable fixing the oracle seed.
pub const SEED_VAR: &str = "ORBITKIT_SEED";

#[derive(Debug, Parser)]
#[command(name = "orbitkit", version, about = "Character tables of odd-order class-two groups by the orbit method")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in groups with their orders and class counts.
    Catalog {
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Character table from coadjoint orbits.
    Chartable {
        /// Catalog name (e.g. `heisenberg:3`) or path to a JSON group spec.
        spec: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Exact values `n*zeta(e)^k` instead of decimals.
        #[arg(long)]
        exact: bool,
        /// Also compute the class-sum table and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit sizes, dimensions, stabilizer orders and dual pairing.
    Orbits {
        spec: String,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        spec: String,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the group as a JSON spec with an explicit cocycle table.
    Export {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Cocycle,
    Lazard,
    Orbits,
    Groupalg,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Cocycle => Suite::Cocycle,
            SuiteArg::Lazard => Suite::Lazard,
            SuiteArg::Orbits => Suite::Orbits,
            SuiteArg::Groupalg => Suite::Groupalg,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("center is larger than A: {witness} is central")]
    CenterMismatch { witness: GroupElement },
    #[error("group of order {order} is not 2-divisible")]
    NotTwoDivisible { order: u64 },
    #[error("group has nilpotency class greater than two")]
    ClassTooLarge,
    #[error("orbit-method table differs from the oracle: {0}")]
    TableMismatch(String),
    #[error("verification failed")]
    VerifyFailed,
    #[error("{0}")]
    Internal(String),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidSpec(_) | CliError::CenterMismatch { .. } => 2,
            CliError::NotTwoDivisible { .. } => 3,
            CliError::ClassTooLarge => 4,
            CliError::TableMismatch(_) => 5,
            CliError::VerifyFailed | CliError::Internal(_) | CliError::Io { .. } => 1,
        }
    }

    /// Machine-readable description printed on stdout.
    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::InvalidSpec(_) => "InvalidSpec",
            CliError::CenterMismatch { .. } => "CenterMismatch",
            CliError::NotTwoDivisible { .. } => "NotTwoDivisible",
            CliError::ClassTooLarge => "ClassTooLarge",
            CliError::TableMismatch(_) => "TableMismatch",
            CliError::VerifyFailed => "VerifyFailed",
            CliError::Internal(_) => "Internal",
            CliError::Io { .. } => "Io",
        };
        let mut v = json!({ "error": kind, "message": self.to_string() });
        match self {
            CliError::CenterMismatch { witness } => v["witness"] = json!(witness.to_string()),
            CliError::NotTwoDivisible { order } => v["order"] = json!(order),
            _ => {}
        }
        v
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Group(GroupError::CenterMismatch { witness }) => CliError::CenterMismatch { witness },
            other => CliError::InvalidSpec(other.to_string()),
        }
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::EvenOrder(order) => CliError::NotTwoDivisible { order },
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Oracle seed from the environment, `0` when unset.
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::InvalidSpec(format!("{SEED_VAR}={s:?} is not an integer"))),
        Err(_) => Ok(0),
    }
}

/// A spec argument is a JSON file if such a file exists, else a catalog name.
pub fn load_group(spec: &str) -> Result<Class2Group, CliError> {
    let path = Path::new(spec);
    let group_spec = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::InvalidSpec(format!("{spec}: {e}")))?;
        GroupSpec::from_json(&text)?
    } else {
        GroupSpec::catalog(&Catalog::parse(spec).map_err(|e| CliError::InvalidSpec(e.to_string()))?)
    };
    Ok(group_spec.build()?)
}

/// Odd order and class at most two.
pub fn gate(group: &Class2Group) -> Result<(), CliError> {
    if !group.is_odd() {
        return Err(CliError::NotTwoDivisible { order: group.order() });
    }
    if !group.class_at_most_two() {
        return Err(CliError::ClassTooLarge);
    }
    Ok(())
}

/// Runs a command and returns its output text.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Catalog { format } => Ok(catalog(*format)),
        Command::Chartable { spec, format, exact, oracle, out } => {
            let group = load_group(spec)?;
            gate(&group)?;
            let (text, mismatch) = chartable(&group, *format, *exact, *oracle, seed_from_env()?)?;
            emit(out.as_deref(), text, mismatch.map(CliError::TableMismatch))
        }
        Command::Orbits { spec, format, out } => {
            let group = load_group(spec)?;
            gate(&group)?;
            emit(out.as_deref(), orbits(&group, *format)?, None)
        }
        Command::Verify { spec, suite, out } => {
            let group = load_group(spec)?;
            gate(&group)?;
            let report = verify(&group, (*suite).into(), seed_from_env()?);
            let failed = (!report.passed).then_some(CliError::VerifyFailed);
            emit(out.as_deref(), report.to_json() + "\n", failed)
        }
        Command::Export { spec, out } => {
            let group = load_group(spec)?;
            emit(out.as_deref(), GroupSpec::from_group(&group).to_json() + "\n", None)
        }
    }
}

/// Writes to `out` (returning nothing to print) or returns the text; an
/// error after output still reports its exit code.
fn emit(out: Option<&Path>, text: String, error: Option<CliError>) -> Result<String, CliError> {
    let printed = match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
            String::new()
        }
        None => text,
    };
    match error {
        Some(e) => {
            print!("{printed}");
            Err(e)
        }
        None => Ok(printed),
    }
}

pub fn catalog(format: ListFormat) -> String {
    let rows: Vec<(String, u64, usize)> = Catalog::listing()
        .iter()
        .map(|c| {
            let g = c.build().expect("catalog groups are valid");
            (c.to_string(), g.order(), g.conjugacy_classes().len())
        })
        .collect();
    match format {
        ListFormat::Text => {
            let mut s = String::from("name\torder\tclasses\n");
            for (name, order, classes) in rows {
                writeln!(s, "{name}\t{order}\t{classes}").unwrap();
            }
            s
        }
        ListFormat::Json => {
            let v: Vec<Value> =
                rows.into_iter().map(|(name, order, classes)| json!({"name": name, "order": order, "classes": classes})).collect();
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    }
}

/// `a|c` with coordinates joined by `.`.
pub fn element_label(x: &GroupElement) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(".");
    format!("{}|{}", join(x.a.coords()), join(x.c.coords()))
}

/// A real number to 12 significant digits, trailing zeros removed.
fn sig12(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// `re+imi` to 12 significant digits.
pub fn complex_cell(re: f64, im: f64) -> String {
    let im_s = sig12(im);
    match im_s.strip_prefix('-') {
        Some(abs) => format!("{}-{abs}i", sig12(re)),
        None => format!("{}+{im_s}i", sig12(re)),
    }
}

fn exact_cell(v: &RootValue) -> String {
    v.to_string()
}

fn chartable(
    group: &Class2Group,
    format: TableFormat,
    exact: bool,
    with_oracle: bool,
    seed: u64,
) -> Result<(String, Option<String>), CliError> {
    let method = OrbitMethod::new(group)?;
    let table = method.character_table()?;
    let oracle = if with_oracle {
        Some(burnside_table(group, seed).map_err(|e| CliError::Internal(e.to_string()))?)
    } else {
        None
    };
    let comparison = oracle.as_ref().map(|o| match_tables(&table, o));
    let mismatch = match &comparison {
        Some(Err(e)) => Some(e.to_string()),
        _ => None,
    };
    let text = match format {
        TableFormat::Csv => table_csv(&table, exact, oracle.as_ref(), comparison.as_ref()),
        TableFormat::Json => table_json(&table, exact, oracle.as_ref(), comparison.as_ref()),
    };
    Ok((text, mismatch))
}

type Comparison<'a> = Option<&'a Result<orbitkit::oracle::MatchReport, orbitkit::OracleError>>;

fn table_csv(table: &OrbitCharacterTable, exact: bool, oracle: Option<&OracleTable>, cmp: Comparison) -> String {
    let mut s = String::from("orbit,size,degree");
    for x in &table.class_reps {
        write!(s, ",{}", element_label(x)).unwrap();
    }
    s.push('\n');
    for ((orbit, degree), row) in table.orbits.iter().zip(&table.degrees).zip(&table.values) {
        write!(s, "{},{},{}", orbit.representative(), orbit.size(), degree).unwrap();
        for v in row {
            let cell = if exact { exact_cell(v) } else { complex_cell(v.to_complex().re, v.to_complex().im) };
            write!(s, ",{cell}").unwrap();
        }
        s.push('\n');
    }
    if let Some(o) = oracle {
        s.push_str("# oracle\n");
        for (degree, row) in o.degrees.iter().zip(&o.characters) {
            write!(s, "oracle,,{degree}").unwrap();
            for z in row {
                write!(s, ",{}", complex_cell(z.re, z.im)).unwrap();
            }
            s.push('\n');
        }
        match cmp {
            Some(Ok(r)) => writeln!(s, "# diff: matched, max deviation {:.1e}", r.max_deviation).unwrap(),
            Some(Err(e)) => writeln!(s, "# diff: {e}").unwrap(),
            None => {}
        }
    }
    s
}

fn table_json(table: &OrbitCharacterTable, exact: bool, oracle: Option<&OracleTable>, cmp: Comparison) -> String {
    let columns: Vec<Value> = table
        .class_reps
        .iter()
        .zip(&table.class_sizes)
        .map(|(x, size)| json!({"label": element_label(x), "class_size": size}))
        .collect();
    let rows: Vec<Value> = table
        .orbits
        .iter()
        .zip(&table.degrees)
        .zip(&table.values)
        .map(|((orbit, degree), row)| {
            let values: Vec<Value> = row
                .iter()
                .map(|v| {
                    if exact {
                        serde_json::to_value(v).unwrap()
                    } else {
                        json!(complex_cell(v.to_complex().re, v.to_complex().im))
                    }
                })
                .collect();
            json!({"orbit": orbit.representative().to_string(), "size": orbit.size(), "degree": degree, "values": values})
        })
        .collect();
    let mut v = json!({"order": table.order, "root_order": table.root_order, "columns": columns, "rows": rows});
    if let Some(o) = oracle {
        let rows: Vec<Value> = o
            .degrees
            .iter()
            .zip(&o.characters)
            .map(|(d, row)| {
                json!({"degree": d, "values": row.iter().map(|z| complex_cell(z.re, z.im)).collect::<Vec<_>>()})
            })
            .collect();
        v["oracle"] = json!({"rows": rows});
        v["diff"] = match cmp {
            Some(Ok(r)) => json!({"matched": true, "max_deviation": r.max_deviation, "pairs": r.pairs}),
            Some(Err(e)) => json!({"matched": false, "detail": e.to_string()}),
            None => Value::Null,
        };
    }
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

#[derive(Serialize)]
struct OrbitRow {
    representative: String,
    size: usize,
    dimension: u64,
    stabilizer_order: usize,
    dual: String,
}

/// `1×9, 9×2` for nine 1s and two 9s, in ascending order.
fn multiset(values: impl IntoIterator<Item = u64>) -> String {
    let mut counts: Vec<(u64, usize)> = Vec::new();
    let mut v: Vec<u64> = values.into_iter().collect();
    v.sort_unstable();
    for x in v {
        match counts.last_mut() {
            Some((y, n)) if *y == x => *n += 1,
            _ => counts.push((x, 1)),
        }
    }
    counts.iter().map(|(x, n)| format!("{x}×{n}")).collect::<Vec<_>>().join(", ")
}

fn orbits(group: &Class2Group, format: ListFormat) -> Result<String, CliError> {
    let method = OrbitMethod::new(group)?;
    let orbits = method.enumerate_orbits();
    let mut rows = Vec::with_capacity(orbits.len());
    for o in &orbits {
        rows.push(OrbitRow {
            representative: o.representative().to_string(),
            size: o.size(),
            dimension: o.dimension()?,
            stabilizer_order: method.stabilizer(o.representative()).len(),
            dual: method.dual_orbit(o).representative().to_string(),
        });
    }
    let sizes = multiset(rows.iter().map(|r| r.size as u64));
    let dims = multiset(rows.iter().map(|r| r.dimension));
    Ok(match format {
        ListFormat::Text => {
            let mut s = format!("sizes: {sizes}; dims: {dims}\n");
            s.push_str("orbit\tsize\tdim\tstabilizer\tdual\n");
            for r in &rows {
                writeln!(s, "{}\t{}\t{}\t{}\t{}", r.representative, r.size, r.dimension, r.stabilizer_order, r.dual)
                    .unwrap();
            }
            s
        }
        ListFormat::Json => {
            serde_json::to_string_pretty(&json!({"sizes": sizes, "dims": dims, "orbits": rows})).unwrap() + "\n"
        }
    })
}
