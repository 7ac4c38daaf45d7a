//! Command-line frontend: ideal files in, fan and resolution reports out.

pub mod input;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use nndtoric::exact::IntVector;
use nndtoric::groebner::{groebner_fan, initial_ideal, krull_dimension, Budget, Ideal};
use nndtoric::poly::{Printer, WeightVector};
use nndtoric::polyhedra::{regular_refinement, validate_fan, Fan};
use nndtoric::toric::{chart_printer, is_newton_nondegenerate, resolve};
use nndtoric::tropical::{in_tropical, tropical_subfan};
use nndtoric::Error;

pub use input::{parse_ideal_file, parse_ideal_text, FileOptions, IdealFile};

/// Version of the structured report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    /// 1 when a hypothesis of the computation is unmet, 2 for input, resource and internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Domain(_)) | CliError::Core(Error::Chart(_)) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Config(_) => "config",
            CliError::Core(e) => match e {
                Error::Shape(_) => "shape",
                Error::Domain(_) => "domain",
                Error::Chart(_) => "chart",
                Error::Resource(_) => "resource",
                Error::Parse { .. } => "parse",
                Error::FanAxiom(_) => "fan_axiom",
                Error::Internal(_) => "internal",
            },
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Core(Error::Parse { line, column, .. }) = self {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Fan,
    Tropical,
    Check,
    Refine,
    Resolve,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Fan => "fan",
            Command::Tropical => "tropical",
            Command::Check => "check",
            Command::Refine => "refine",
            Command::Resolve => "resolve",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub budget_cones: Option<usize>,
    pub budget_steps: Option<u64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// Random weights used for spot checks by `fan` and `tropical`.
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget_cones: None,
            budget_steps: None,
            format: Format::Human,
            out: None,
            seed: 0,
            samples: 8,
        }
    }
}

impl RunConfig {
    /// Command-line values first, then the file's options, then defaults.
    pub fn budget(&self, file: &FileOptions) -> Result<Budget, CliError> {
        let d = Budget::default();
        let budget = Budget {
            max_cones: self
                .budget_cones
                .or(file.budget_cones)
                .unwrap_or(d.max_cones),
            max_steps: self
                .budget_steps
                .or(file.budget_steps)
                .unwrap_or(d.max_steps),
        };
        if budget.max_cones == 0 || budget.max_steps == 0 {
            return Err(CliError::Config("budgets must be positive".into()));
        }
        Ok(budget)
    }

    pub fn output_path(&self, file: &FileOptions) -> Option<PathBuf> {
        self.out.clone().or_else(|| file.out.clone())
    }
}

/// Result of a command: exit code plus the rendered report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: String,
    pub out: Option<PathBuf>,
}

struct Report {
    verdict: bool,
    data: Value,
    human: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> IntVector {
    IntVector::from_i64(
        &(0..n)
            .map(|_| rng.random_range(0..=9))
            .collect::<Vec<i64>>(),
    )
}

fn fan_lines(out: &mut String, fan: &Fan) {
    for c in fan.maximal_cones() {
        let _ = writeln!(out, "  cone {c}");
    }
}

fn cmd_fan(ideal: &Ideal, printer: &Printer, config: &RunConfig) -> Result<Report, CliError> {
    let gf = groebner_fan(ideal)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut agreed = 0;
    for _ in 0..config.samples {
        let w = random_weight(&mut rng, ideal.nvars());
        let wv = WeightVector::new(w)?;
        if let Some(i) = gf.locate(&wv) {
            if initial_ideal(ideal, &wv)?.same_ideal(&gf.cones()[i].initial_ideal)? {
                agreed += 1;
            }
        }
    }
    let verdict = agreed == config.samples;
    let mut human = format!(
        "Groebner fan: {} maximal cones, {} cones in total\n",
        gf.cells().len(),
        gf.cones().len()
    );
    for (i, cell) in gf.cells().iter().enumerate() {
        let _ = writeln!(human, "  cone {cell}");
        for m in gf.cell_basis(i).elements() {
            let _ = writeln!(
                human,
                "    {}  [marked {}]",
                printer.print(&m.polynomial),
                printer.monomial(&m.marked)
            );
        }
    }
    let _ = writeln!(
        human,
        "spot checks: {agreed}/{} sampled weights agree with their cone",
        config.samples
    );
    Ok(Report {
        verdict,
        data: json!({
            "groebner_fan": to_value(&gf.to_data(printer)),
            "spot_checks": { "seed": config.seed, "samples": config.samples, "agreed": agreed },
        }),
        human,
    })
}

fn cmd_tropical(ideal: &Ideal, printer: &Printer, config: &RunConfig) -> Result<Report, CliError> {
    let trop = tropical_subfan(ideal)?;
    let dimension = if ideal.is_unit()? {
        None
    } else {
        Some(krull_dimension(ideal)?)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut agreed = 0;
    for _ in 0..config.samples {
        let w = random_weight(&mut rng, ideal.nvars());
        if in_tropical(ideal, &WeightVector::new(w.clone())?)? == trop.contains(&w) {
            agreed += 1;
        }
    }
    let verdict = agreed == config.samples;
    let mut human = match trop.dim() {
        Some(d) => format!(
            "tropical variety: dimension {d}, {} cones\n",
            trop.members().len()
        ),
        None => "tropical variety: empty\n".to_string(),
    };
    if let Some(d) = dimension {
        let _ = writeln!(human, "dim V(I) = {d}");
    }
    for &i in trop.members() {
        let c = &trop.parent().cones()[i];
        let gens: Vec<String> = c
            .initial_ideal
            .generators()
            .iter()
            .map(|g| printer.print(g))
            .collect();
        let _ = writeln!(
            human,
            "  {}  weight {}  <{}>",
            c.cone,
            c.weight,
            gens.join(", ")
        );
    }
    let _ = writeln!(
        human,
        "spot checks: {agreed}/{} sampled weights agree",
        config.samples
    );
    Ok(Report {
        verdict,
        data: json!({
            "dimension": dimension,
            "tropical": to_value(&trop.to_data(printer)),
            "spot_checks": { "seed": config.seed, "samples": config.samples, "agreed": agreed },
        }),
        human,
    })
}

fn cmd_check(ideal: &Ideal, printer: &Printer) -> Result<Report, CliError> {
    let nnd = is_newton_nondegenerate(ideal)?;
    let mut human = if nnd.nondegenerate {
        "Newton non-degenerate\n".to_string()
    } else {
        "Newton degenerate\n".to_string()
    };
    for c in &nnd.cones {
        let _ = writeln!(
            human,
            "  weight {}  {}",
            c.weight,
            if c.smooth {
                "smooth in the torus"
            } else {
                "singular in the torus"
            }
        );
    }
    if let Some(w) = nnd.witness_weight() {
        let _ = writeln!(human, "witness weight: {w}");
    }
    Ok(Report {
        verdict: nnd.nondegenerate,
        data: json!({ "nondegeneracy": to_value(&nnd.to_data(printer)) }),
        human,
    })
}

fn cmd_refine(ideal: &Ideal) -> Result<Report, CliError> {
    let gf = groebner_fan(ideal)?;
    let refined = regular_refinement(gf.fan())?;
    let maximal: Vec<_> = refined.maximal_cones().into_iter().cloned().collect();
    let valid = validate_fan(ideal.nvars(), &maximal).is_ok();
    let verdict = valid && refined.is_regular();
    let mut human = format!(
        "regular refinement: {} maximal cones (Groebner fan has {})\n",
        maximal.len(),
        gf.cells().len()
    );
    fan_lines(&mut human, &refined);
    Ok(Report {
        verdict,
        data: json!({
            "groebner_fan": to_value(&gf.fan().to_data()),
            "refinement": to_value(&refined.to_data()),
            "regular": refined.is_regular(),
            "valid": valid,
        }),
        human,
    })
}

fn cmd_resolve(ideal: &Ideal, printer: &Printer) -> Result<Report, CliError> {
    let report = resolve(ideal)?;
    let zp = chart_printer(ideal.nvars());
    let mut human = format!("dim V(I) = {}\n", report.dimension);
    let _ = writeln!(
        human,
        "{}",
        if report.nnd.nondegenerate {
            "Newton non-degenerate"
        } else {
            "Newton degenerate"
        }
    );
    if let Some(w) = report.nnd.witness_weight() {
        let _ = writeln!(human, "witness weight: {w}");
    }
    for c in &report.charts {
        let st = &c.strict_transform;
        let _ = writeln!(
            human,
            "chart {}: {}{}",
            st.chart.cone(),
            if c.smooth { "smooth" } else { "SINGULAR" },
            if c.transversal() {
                ""
            } else {
                ", not transversal to some orbit"
            }
        );
        for t in &st.generators {
            let _ = writeln!(
                human,
                "    {} -> z^{} * ({})",
                printer.print(&t.g),
                t.p,
                zp.print(&t.h)
            );
        }
    }
    let _ = writeln!(
        human,
        "orbit incidence agrees with the tropical variety on {}/{} cones",
        report.orbits.iter().filter(|o| o.consistent).count(),
        report.orbits.len()
    );
    let _ = writeln!(human, "resolved: {}", report.resolved());
    Ok(Report {
        verdict: report.resolved(),
        data: json!({ "resolution": to_value(&report.to_data(printer)) }),
        human,
    })
}

fn run_command(command: Command, config: &RunConfig, file: &IdealFile) -> Result<Report, CliError> {
    let ideal = file.ideal(config.budget(&file.options)?)?;
    let printer = file.printer();
    match command {
        Command::Fan => cmd_fan(&ideal, &printer, config),
        Command::Tropical => cmd_tropical(&ideal, &printer, config),
        Command::Check => cmd_check(&ideal, &printer),
        Command::Refine => cmd_refine(&ideal),
        Command::Resolve => cmd_resolve(&ideal, &printer),
    }
}

/// Runs a command on an ideal file and renders the report; never writes.
pub fn execute(command: Command, config: &RunConfig, path: &Path) -> Outcome {
    let file = parse_ideal_file(path);
    let out = config.output_path(
        file.as_ref()
            .map(|f| &f.options)
            .unwrap_or(&FileOptions::default()),
    );
    let result = file.and_then(|f| run_command(command, config, &f));
    let (exit_code, report) = match (result, config.format) {
        (Ok(r), Format::Json) => (
            if r.verdict { 0 } else { 1 },
            pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": command.name(),
                "verdict": r.verdict,
                "report": r.data,
            })),
        ),
        (Ok(r), Format::Human) => (if r.verdict { 0 } else { 1 }, r.human),
        (Err(e), Format::Json) => (
            e.exit_code(),
            pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": command.name(),
                "verdict": Value::Null,
                "error": e.to_json(),
            })),
        ),
        (Err(e), Format::Human) => (e.exit_code(), format!("error: {e}\n")),
    };
    Outcome {
        exit_code,
        report,
        out,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Runs a command and writes its report to the configured destination.
pub fn run(command: Command, config: &RunConfig, path: &Path) -> i32 {
    let outcome = execute(command, config, path);
    match &outcome.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &outcome.report) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None if outcome.exit_code == 2 && config.format == Format::Human => {
            eprint!("{}", outcome.report)
        }
        None => print!("{}", outcome.report),
    }
    outcome.exit_code
}
