use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use incidence::exactfield::FieldSpec;
use incidence::ext::{euler_mobius_check, mitchell_check, rigidity_report, ExtReport};
use incidence::io::{load_module, load_poset, module_from_str};
use incidence::oracle::run_oracle_check;
use incidence::pmodule::PModule;
use incidence::poset::Poset;
use incidence::registry::{ExtRegistry, RecipeRegistry};
use incidence::resolution::{global_dimension, minimal_resolution};
use incidence::suite::reference_suite;
use incidence::Error;
use serde::Serialize;

/// Hom, Ext and minimal projective resolutions of persistence modules over finite posets.
#[derive(Parser, Debug)]
#[command(name = "incidence", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Poset file or `grid:n`.
    #[arg(long, global = true)]
    poset: Option<String>,

    /// Module file or `builtin:<name>[:<arg>]`; repeat for two-module commands.
    #[arg(long = "module", global = true)]
    modules: Vec<String>,

    /// `p:<prime>` or `q`. Defaults to the field of the first module file, else p:32003.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Highest Ext degree; defaults to the global dimension of the poset.
    #[arg(long, global = true)]
    max_degree: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized oracle-check corpus.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random cases for oracle-check.
    #[arg(long, global = true, default_value_t = 100)]
    cases: usize,

    /// Ext algorithm: `resolution` or `deformation` (degrees 0 and 1 only).
    #[arg(long, global = true, default_value = "resolution")]
    method: String,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check commutativity of a module.
    Validate,
    /// Print the minimal projective resolution of a module.
    Resolve,
    /// Ext dimensions between two modules.
    Ext,
    /// Self-Ext with tangent/obstruction classification.
    Report,
    /// Compare Ext of the constant module with nerve cohomology.
    Mitchell,
    /// Compare Euler characteristics of Ext between simples with the Mobius function.
    Euler,
    /// Seeded random cross-checks between independent Ext computations.
    OracleCheck,
    /// Reference computations on the square and small grids.
    Suite,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

/// Exit status plus what goes to standard output.
struct Outcome {
    code: u8,
    stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout }
    }

    fn flagged(violation: bool, stdout: String) -> Self {
        Self {
            code: violation as u8,
            stdout,
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run<T> = Result<T, Failure>;

/// Sorted keys and pretty printing, so re-serializing parsed output is byte-identical.
fn structured<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

struct Inputs {
    field: FieldSpec,
    poset: Option<Arc<Poset>>,
    modules: Vec<PModule>,
}

fn load_inputs(cli: &Cli) -> Run<Inputs> {
    let explicit_field = cli.field.as_deref().map(str::parse::<FieldSpec>).transpose()?;
    let mut poset = cli.poset.as_deref().map(load_poset).transpose()?.map(Arc::new);
    let recipes = RecipeRegistry::default();

    let mut field = explicit_field;
    if field.is_none() {
        if let Some(file) = cli.modules.iter().find(|m| !m.starts_with("builtin:")) {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Malformed(format!("{file}: {e}")))?;
            field = Some(module_from_str(&text, poset.as_ref(), None)?.field());
        }
    }
    let field = field.unwrap_or_default();

    let mut modules = Vec::new();
    for src in &cli.modules {
        let m = load_module(src, poset.as_ref(), Some(field), &recipes)?;
        poset.get_or_insert_with(|| m.poset().clone());
        modules.push(m);
    }
    Ok(Inputs { field, poset, modules })
}

fn need_poset(inputs: &Inputs) -> Run<Arc<Poset>> {
    inputs
        .poset
        .clone()
        .ok_or_else(|| Failure::Usage("this command needs --poset".into()))
}

fn need_modules(cli: &Cli, inputs: &Inputs, n: usize) -> Run<()> {
    if inputs.modules.len() == n {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{:?} takes exactly {n} --module argument(s), got {}",
            cli.command,
            inputs.modules.len()
        )))
    }
}

fn dims_tuple(d: &[usize]) -> String {
    format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

#[derive(Serialize)]
struct ViolationRecord {
    from: String,
    to: String,
    reference_path: Vec<String>,
    other_path: Vec<String>,
    reference: Vec<Vec<String>>,
    other: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ValidateRecord {
    module: String,
    valid: bool,
    violations: Vec<ViolationRecord>,
}

fn validate(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    need_modules(cli, inputs, 1)?;
    let m = &inputs.modules[0];
    let poset = m.poset();
    let violations = m.validate()?;
    let ids = |p: &[usize]| p.iter().map(|&v| poset.id(v).to_string()).collect::<Vec<_>>();
    let out = match cli.format {
        Format::Structured => structured(&ValidateRecord {
            module: cli.modules[0].clone(),
            valid: violations.is_empty(),
            violations: violations
                .iter()
                .map(|v| ViolationRecord {
                    from: poset.id(v.from).into(),
                    to: poset.id(v.to).into(),
                    reference_path: ids(&v.reference_path),
                    other_path: ids(&v.other_path),
                    reference: v.reference.render(),
                    other: v.other.render(),
                })
                .collect(),
        }),
        Format::Text => {
            let mut s = String::new();
            if violations.is_empty() {
                writeln!(s, "valid: all Hasse-path composites commute").unwrap();
            } else {
                writeln!(s, "invalid: {} commutativity violation(s)", violations.len()).unwrap();
                for v in &violations {
                    writeln!(s, "  {}", v.describe(poset)).unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome::flagged(!violations.is_empty(), out))
}

#[derive(Serialize)]
struct ResolutionRecord {
    module: String,
    field: String,
    length: Option<usize>,
    steps: Vec<Vec<String>>,
    differentials: Vec<Vec<Vec<String>>>,
}

fn resolve(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    need_modules(cli, inputs, 1)?;
    let m = &inputs.modules[0];
    let res = minimal_resolution(m, None)?;
    let poset = m.poset();
    let out = match cli.format {
        Format::Text => res.render(),
        Format::Structured => structured(&ResolutionRecord {
            module: cli.modules[0].clone(),
            field: inputs.field.to_string(),
            length: res.length(),
            steps: res
                .steps()
                .iter()
                .map(|s| s.iter().map(|&v| poset.id(v).to_string()).collect())
                .collect(),
            differentials: (1..res.steps().len()).map(|i| res.differential(i).render()).collect(),
        }),
    };
    Ok(Outcome::ok(out))
}

fn max_degree(cli: &Cli, poset: &Arc<Poset>, field: FieldSpec) -> Run<usize> {
    match cli.max_degree {
        Some(d) => Ok(d),
        None => Ok(global_dimension(poset, field)?),
    }
}

fn ext_text(r: &ExtReport) -> String {
    let mut s = String::new();
    writeln!(s, "M = {}", r.source).unwrap();
    writeln!(s, "N = {}", r.target).unwrap();
    writeln!(s, "field {}", r.field).unwrap();
    for (i, d) in r.dims.iter().enumerate() {
        writeln!(s, "dim Ext^{i}(M, N) = {d}").unwrap();
    }
    writeln!(s, "dims {}", dims_tuple(&r.dims)).unwrap();
    if let (Some(c), Some(t), Some(o)) = (r.classification, r.tangent_dim, r.obstruction_dim) {
        writeln!(s, "tangent_dim {t}").unwrap();
        writeln!(s, "obstruction_dim {o}").unwrap();
        writeln!(s, "classification {}", c.as_str()).unwrap();
    }
    s
}

fn emit_report(cli: &Cli, r: &ExtReport) -> String {
    match cli.format {
        Format::Text => ext_text(r),
        Format::Structured => structured(r),
    }
}

fn ext(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    need_modules(cli, inputs, 2)?;
    let (m, n) = (&inputs.modules[0], &inputs.modules[1]);
    let registry = ExtRegistry::default();
    let method = registry.get(&cli.method)?;
    let top = match (cli.max_degree, method.max_supported_degree()) {
        (Some(d), _) => d,
        (None, Some(cap)) => cap,
        (None, None) => max_degree(cli, m.poset(), inputs.field)?,
    };
    let dims = method.ext_dims(m, n, top)?;
    let report = ExtReport::pair(&cli.modules[0], &cli.modules[1], inputs.field, dims);
    Ok(Outcome::ok(emit_report(cli, &report)))
}

fn report(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    need_modules(cli, inputs, 1)?;
    let r = rigidity_report(&inputs.modules[0], &cli.modules[0])?;
    Ok(Outcome::ok(emit_report(cli, &r)))
}

#[derive(Serialize)]
struct MitchellRecord {
    field: String,
    ext: Vec<usize>,
    nerve: Vec<usize>,
    agree: bool,
}

fn mitchell(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    let poset = need_poset(inputs)?;
    let top = max_degree(cli, &poset, inputs.field)?;
    let c = mitchell_check(&poset, inputs.field, top)?;
    let out = match cli.format {
        Format::Structured => structured(&MitchellRecord {
            field: inputs.field.to_string(),
            ext: c.ext.clone(),
            nerve: c.nerve.clone(),
            agree: c.agree,
        }),
        Format::Text => format!(
            "Ext^*(k, k)  = {}\nH^*(|P|, k)  = {}\n{}\n",
            dims_tuple(&c.ext),
            dims_tuple(&c.nerve),
            if c.agree { "agree" } else { "DISAGREE" }
        ),
    };
    Ok(Outcome::flagged(!c.agree, out))
}

fn euler(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    let poset = need_poset(inputs)?;
    let entries = euler_mobius_check(&poset, inputs.field)?;
    let all = entries.iter().all(|e| e.agree);
    let out = match cli.format {
        Format::Structured => structured(&entries),
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                writeln!(
                    s,
                    "{} <= {}: Ext {} euler {:+} mobius {:+} {}",
                    e.p,
                    e.q,
                    dims_tuple(&e.ext),
                    e.euler,
                    e.mobius,
                    if e.agree { "ok" } else { "MISMATCH" }
                )
                .unwrap();
            }
            writeln!(s, "{}/{} pairs agree", entries.iter().filter(|e| e.agree).count(), entries.len()).unwrap();
            s
        }
    };
    Ok(Outcome::flagged(!all, out))
}

fn oracle_check(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    let poset = need_poset(inputs)?;
    let r = run_oracle_check(&poset, inputs.field, cli.seed, cli.cases)?;
    let out = match cli.format {
        Format::Structured => structured(&r),
        Format::Text => {
            let mut s = format!(
                "field {} seed {} cases {} gl.dim {}\n",
                r.field, r.seed, r.cases, r.global_dimension
            );
            for p in &r.properties {
                if p.passed() {
                    writeln!(s, "PASS {}", p.property).unwrap();
                } else {
                    writeln!(s, "FAIL {} (cases {:?})", p.property, p.failures).unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome::flagged(!r.passed(), out))
}

fn suite(cli: &Cli, inputs: &Inputs) -> Run<Outcome> {
    let lines = reference_suite(inputs.field)?;
    let all = lines.iter().all(|l| l.pass);
    let out = match cli.format {
        Format::Structured => structured(&lines),
        Format::Text => {
            let mut s = String::new();
            for l in &lines {
                writeln!(
                    s,
                    "{} {}: expected {}; computed {}",
                    if l.pass { "PASS" } else { "FAIL" },
                    l.claim,
                    l.expected,
                    l.computed
                )
                .unwrap();
            }
            writeln!(s, "{}/{} PASS over {}", lines.iter().filter(|l| l.pass).count(), lines.len(), inputs.field)
                .unwrap();
            s
        }
    };
    Ok(Outcome::flagged(!all, out))
}

fn dispatch(cli: &Cli) -> Run<Outcome> {
    let inputs = load_inputs(cli)?;
    match cli.command {
        Command::Validate => validate(cli, &inputs),
        Command::Resolve => resolve(cli, &inputs),
        Command::Ext => ext(cli, &inputs),
        Command::Report => report(cli, &inputs),
        Command::Mitchell => mitchell(cli, &inputs),
        Command::Euler => euler(cli, &inputs),
        Command::OracleCheck => oracle_check(cli, &inputs),
        Command::Suite => suite(cli, &inputs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            // A module that fails commutativity is an invariant violation, not a usage error.
            let code = if matches!(e, Error::InvalidModule(_)) { 1 } else { 2 };
            ExitCode::from(code)
        }
    }
}
