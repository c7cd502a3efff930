//! Command-line front end. Every command reads one JSON problem file and
//! prints a text summary, or JSON with `--json`.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::cache::cached_smith;
use crate::complex::{cohomology, FreeComplex};
use crate::dg::SemiFreeDGModule;
use crate::dimension::{
    ext_cyclic, ext_table, flatdim_dg, flatdim_module, flatdim_ring, injdim_dg, injdim_module,
    injdim_ring, projdim_module, projdim_ring, tor_cyclic, tor_table, DimensionReport,
};
use crate::error::{Error, Result};
use crate::harness::{exit_code, run_suite, Budgets, SuiteConfig, EXIT_IO};
use crate::json::{
    complex_from_json, dg_module_from_json, matrix_from_json, presentation_from_json, table_to_json,
    value_from_json,
};
use crate::local::{llambda, llambda_mod_power, llambda_stabilized, rgamma, rgamma_stabilized, StabilizedCohomology};
use crate::ring::Value;

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dgwb", version, about = "Derived torsion and completion workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the verification suite on a seeded zoo.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
        #[arg(long, default_value_t = 3)]
        precision: u32,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Local cohomology of a DG-module: `{"module": …, "ideal": […]}`.
    Rgamma(LocalArgs),
    /// Derived completion of a DG-module: `{"module": …, "ideal": […]}`.
    Llambda(LocalArgs),
    /// Injective dimension of a DG-module, complex or module presentation.
    Injdim(DimArgs),
    Flatdim(DimArgs),
    /// Projective dimension of a complex or module presentation.
    Projdim(DimArgs),
    /// `Ext^i(N, M)`: `{"n": complex, "m": complex, "window": [lo, hi]}`, or `"g"` for `R/(g)` in place of `"n"`.
    Ext(TableArgs),
    /// `Tor_i(N, M)`, same input as `ext`.
    Tor(TableArgs),
    /// Smith normal form of a matrix over ℤ, 𝔽_p, ℚ or 𝔽_p[x].
    Snf {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args, Debug)]
pub struct LocalArgs {
    pub file: PathBuf,
    /// A single telescope order instead of a stabilized result.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub cutoff: usize,
    /// Completion modulo `a^K` for `K = 1..=precision` (llambda only).
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub json: bool,
}

#[derive(clap::Args, Debug)]
pub struct DimArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub cutoff: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(clap::Args, Debug)]
pub struct TableArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
}

/// What a command produced: JSON plus a short text rendering.
pub struct Output {
    pub json: Json,
    pub text: String,
    pub code: i32,
}

fn read_json(path: &Path) -> Result<Json> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn field<'a>(j: &'a Json, name: &str) -> Result<&'a Json> {
    j.get(name).ok_or_else(|| Error::Serialization(format!("missing field {name:?}")))
}

fn local_input(j: &Json) -> Result<(SemiFreeDGModule, Vec<Value>)> {
    let m = dg_module_from_json(field(j, "module")?, None)?;
    let base = m.ring().base().clone();
    let lifts = field(j, "ideal")?
        .as_array()
        .ok_or_else(|| Error::Serialization("ideal must be an array".into()))?
        .iter()
        .map(|x| value_from_json(&base, x))
        .collect::<Result<Vec<_>>>()?;
    Ok((m, lifts))
}

fn stabilized_output(s: &StabilizedCohomology) -> Output {
    let history: Vec<String> = s.history.iter().map(|t| t.summary()).collect();
    let json = json!({
        "status": s.status,
        "table": table_to_json(&s.table),
        "history": history,
    });
    let text = format!("{:?}\n{}", s.status, s.table.summary());
    Output { json, text, code: 0 }
}

fn complex_output(c: &FreeComplex, order: usize) -> Output {
    let h = cohomology(c);
    Output { json: json!({ "order": order, "table": table_to_json(&h) }), text: h.summary(), code: 0 }
}

fn local(args: &LocalArgs, completion: bool) -> Result<Output> {
    let (m, lifts) = local_input(&read_json(&args.file)?)?;
    let a = m.ring().clone();
    if let Some(order) = args.order {
        let c = if completion { llambda(&a, &lifts, &m, order)? } else { rgamma(&a, &lifts, &m, order)? };
        return Ok(complex_output(&c, order));
    }
    if completion {
        if let Some(p) = args.precision {
            let mut rows = Vec::new();
            let mut text = String::new();
            for k in 1..=p {
                let t = llambda_mod_power(&a, &lifts, &m, k)?;
                text.push_str(&format!("K = {k}: {}\n", t.summary()));
                rows.push(json!({ "precision": k, "table": table_to_json(&t) }));
            }
            return Ok(Output { json: json!({ "ladder": rows }), text, code: 0 });
        }
        return Ok(stabilized_output(&llambda_stabilized(&a, &lifts, &m, args.cutoff)?));
    }
    Ok(stabilized_output(&rgamma_stabilized(&a, &lifts, &m, args.cutoff)?))
}

#[derive(Clone, Copy)]
enum Which {
    Inj,
    Flat,
    Proj,
}

fn dimension(args: &DimArgs, which: Which) -> Result<Output> {
    let j = read_json(&args.file)?;
    let c = args.cutoff;
    let report: DimensionReport = if let Some(m) = j.get("module") {
        let m = dg_module_from_json(m, None)?;
        let a = m.ring().clone();
        match which {
            Which::Inj => injdim_dg(&a, &m, c)?,
            Which::Flat => flatdim_dg(&a, &m, c)?,
            Which::Proj if a.is_ordinary() => projdim_ring(&m.underlying_complex(), c)?,
            Which::Proj => return Err(Error::UnsupportedInstance("projdim over a Koszul DG-ring".into())),
        }
    } else if let Some(x) = j.get("complex") {
        let x = complex_from_json(x)?;
        match which {
            Which::Inj => injdim_ring(&x, c)?,
            Which::Flat => flatdim_ring(&x, c)?,
            Which::Proj => projdim_ring(&x, c)?,
        }
    } else {
        let p = presentation_from_json(field(&j, "presentation")?)?;
        match which {
            Which::Inj => injdim_module(&p, c)?,
            Which::Flat => flatdim_module(&p, c)?,
            Which::Proj => projdim_module(&p, c)?,
        }
    };
    let witnesses: Vec<String> =
        report.witnesses.iter().map(|w| format!("{} in degree {}: {}", w.prime, w.degree, w.group)).collect();
    let text = format!("{}\n{}", report.value, witnesses.join("\n"));
    Ok(Output { json: serde_json::to_value(&report)?, text, code: 0 })
}

fn window(j: &Json) -> Result<(i64, i64)> {
    let w: Vec<i64> = serde_json::from_value(field(j, "window")?.clone())?;
    match w[..] {
        [lo, hi] => Ok((lo, hi)),
        _ => Err(Error::Serialization("window must be [lo, hi]".into())),
    }
}

fn ext_tor(args: &TableArgs, tor: bool) -> Result<Output> {
    let j = read_json(&args.file)?;
    let m = complex_from_json(field(&j, "m")?)?;
    let w = window(&j)?;
    let t = match (j.get("g"), tor) {
        (Some(g), false) => ext_cyclic(m.ring(), &value_from_json(m.ring(), g)?, &m, w)?,
        (Some(g), true) => tor_cyclic(m.ring(), &value_from_json(m.ring(), g)?, &m, w)?,
        (None, false) => ext_table(&complex_from_json(field(&j, "n")?)?, &m, w)?,
        (None, true) => tor_table(&complex_from_json(field(&j, "n")?)?, &m, w)?,
    };
    let label = if tor { "Tor_" } else { "Ext^" };
    let text = t.groups.iter().map(|(i, g)| format!("{label}{i} = {g}")).collect::<Vec<_>>().join(", ");
    let text = if text.is_empty() { "0".to_string() } else { text };
    Ok(Output { json: table_to_json(&t), text, code: 0 })
}

fn snf(file: &Path) -> Result<Output> {
    let a = matrix_from_json(&read_json(file)?, None)?;
    let j = cached_smith(&a)?;
    let text = format!("invariant factors: {}", j["invariant_factors"]);
    Ok(Output { json: j, text, code: 0 })
}

fn verify(seed: u64, count: usize, cutoff: usize, precision: u32, out: Option<&Path>) -> Result<Output> {
    let mut cfg = SuiteConfig::new(seed, count);
    cfg.budgets = Budgets { cutoff, precision, ..Budgets::default() };
    let report = run_suite(&cfg);
    if let Some(path) = out {
        std::fs::write(path, report.to_json_string()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Output { json: report.to_json(), text: report.summary_text(), code: exit_code(&report) })
}

/// Run a parsed command; `Err` carries the exit status for input problems.
pub fn execute(cli: &Cli) -> Result<(Output, bool)> {
    Ok(match &cli.command {
        Command::Verify { seed, count, cutoff, precision, json } => {
            (verify(*seed, *count, *cutoff, *precision, json.as_deref())?, false)
        }
        Command::Rgamma(a) => (local(a, false)?, a.json),
        Command::Llambda(a) => (local(a, true)?, a.json),
        Command::Injdim(a) => (dimension(a, Which::Inj)?, a.json),
        Command::Flatdim(a) => (dimension(a, Which::Flat)?, a.json),
        Command::Projdim(a) => (dimension(a, Which::Proj)?, a.json),
        Command::Ext(a) => (ext_tor(a, false)?, a.json),
        Command::Tor(a) => (ext_tor(a, true)?, a.json),
        Command::Snf { file, json } => (snf(file)?, *json),
    })
}

/// Parse arguments, run, print, and return the process exit status.
pub fn main_with_args<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((out, as_json)) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text.trim_end());
            }
            out.code
        }
        Err(Error::Io(m)) => {
            eprintln!("dgwb: {m}");
            EXIT_IO
        }
        Err(e) => {
            eprintln!("dgwb: {e}");
            if matches!(e, Error::UnsupportedInstance(_) | Error::ResourceLimit { .. }) {
                EXIT_FAIL
            } else {
                EXIT_INVALID
            }
        }
    }
}
