//! The `catcoh` command-line tool.

pub mod commands;
pub mod examples;
pub mod files;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use catcoh::category::validate_category;
use catcoh::category::RawCategory;
use catcoh::cochain::CochainComplex;
use catcoh::instances::BUNDLED;
use catcoh::secat::SectionKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::commands::*;
use crate::files::*;
use crate::report::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(#[from] catcoh::Error),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Math(catcoh::Error::DegreeCapRequired) => 2,
            CliError::Math(_) => 1,
            CliError::Mismatch(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "catcoh", version, about = "Cohomology, cup-length and sectional category of finite categories")]
struct Cli {
    /// print structured JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a category or functor file
    Validate {
        file: PathBuf,
        /// also validate coefficients on the category
        #[arg(long)]
        system: Option<String>,
        /// print the category as Graphviz text
        #[arg(long)]
        dot: bool,
    },
    /// Cohomology groups with generators
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        system: String,
        /// comma-separated object and morphism ids generating a subcategory
        #[arg(long)]
        relative: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Cup-length of the cohomology or of the kernel of a functor
    CupLength {
        file: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long, default_value = "ring")]
        pairing: String,
        /// functor file whose target is this category
        #[arg(long)]
        kernel_of: Option<PathBuf>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Decide a lifting property of a functor
    Check {
        functor: PathBuf,
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PROPERTIES))]
        property: String,
    },
    /// Sectional category (or Svarc genus with --homotopic)
    Secat {
        functor: PathBuf,
        #[arg(long)]
        homotopic: bool,
    },
    /// Compare the cup-length of the kernel with the sectional category
    SvarcBound {
        functor: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long, default_value = "ring")]
        pairing: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Bundled examples
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand, Debug)]
enum ExamplesAction {
    List,
    /// Recompute an example and compare it with its golden report
    Run {
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// rewrite the golden reports instead of comparing
        #[arg(long)]
        bless: bool,
        /// directory holding goldens/
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Write the files of a bundled example
    Export {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn emit<T: Serialize + Render>(out: &mut dyn Write, json: bool, r: &T) {
    let text = if json { serde_json::to_string_pretty(r).expect("serializable") + "\n" } else { r.render() };
    let _ = out.write_all(text.as_bytes());
}

fn cap_for(c: &catcoh::category::FinCat, max: Option<usize>) -> Result<Option<usize>, CliError> {
    if max.is_none() && !c.has_bounded_nerve() {
        return Err(CliError::Usage(
            "the category has a non-identity endomorphism; pass --max-degree to bound the computation".into(),
        ));
    }
    Ok(max)
}

/// Runs one command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { file, system, dot } => {
            let value: serde_json::Value = read_json(file)?;
            let mut categories = std::collections::BTreeMap::new();
            let (kind, base) = if value.get("objects").is_some() {
                let raw: RawCategory = serde_json::from_value(value).map_err(|e| CliError::Input(e.to_string()))?;
                let c = std::sync::Arc::new(validate_category(&raw)?);
                categories.insert("category".to_string(), summary(&c));
                ("category", c)
            } else {
                let f = load_functor(file)?.functor;
                categories.insert("source".to_string(), summary(f.source()));
                categories.insert("target".to_string(), summary(f.target()));
                ("functor", f.target().clone())
            };
            if *dot {
                let _ = out.write_all(to_dot(&base).as_bytes());
                return Ok(0);
            }
            let system = match system {
                Some(s) => {
                    let d = load_system(&parse_system(s)?, &base)?;
                    Some(format!("natural system with groups on {} morphisms", d.base().n_morphisms()))
                }
                None => None,
            };
            emit(out, json, &ValidateReport { kind: kind.into(), categories, system });
            Ok(0)
        }
        Command::Cohomology { file, system, relative, max_degree } => {
            let c = load_category(file)?;
            let cap = cap_for(&c, *max_degree)?;
            let d = load_system(&parse_system(system)?, &c)?;
            let cx = match relative {
                Some(u) => CochainComplex::relative(d, &parse_subcategory(&c, u)?, cap)?,
                None => CochainComplex::reduced(d, cap)?,
            };
            emit(out, json, &cohomology_report(&cx, cx.top())?);
            Ok(0)
        }
        Command::CupLength { file, system, pairing, kernel_of, max_degree } => {
            let c = load_category(file)?;
            let cap = cap_for(&c, *max_degree)?;
            let spec = parse_system(system)?;
            let p = load_pairing(&spec, pairing, &c)?;
            let report = match kernel_of {
                Some(path) => {
                    let f = load_functor(path)?.functor;
                    if f.target().as_ref() != c.as_ref() {
                        return Err(CliError::Usage("the functor must land in the given category".into()));
                    }
                    // rebuild the pairing on the functor's copy of the category
                    let p = load_pairing(&spec, pairing, f.target())?;
                    let (cx, gens) = kernel_generators(&f, p.left(), cap)?;
                    cup_length_report(&p, &cx, Some(&gens))?
                }
                None => {
                    let cx = CochainComplex::reduced(p.left().clone(), cap)?;
                    cup_length_report(&p, &cx, None)?
                }
            };
            emit(out, json, &report);
            Ok(0)
        }
        Command::Check { functor, property } => {
            let f = load_functor(functor)?.functor;
            let r = check_report(&f, property);
            emit(out, json, &r);
            Ok(if r.holds { 0 } else { 1 })
        }
        Command::Secat { functor, homotopic } => {
            let f = load_functor(functor)?.functor;
            let kind = if *homotopic { SectionKind::Homotopic } else { SectionKind::Strict };
            emit(out, json, &secat_report(&f, kind)?);
            Ok(0)
        }
        Command::SvarcBound { functor, system, pairing, max_degree } => {
            let f = load_functor(functor)?.functor;
            let cap = cap_for(f.target(), *max_degree)?;
            let p = load_pairing(&parse_system(system)?, pairing, f.target())?;
            let r = svarc_report(&f, p.left(), &p, cap)?;
            emit(out, json, &r);
            Ok(if r.holds { 0 } else { 1 })
        }
        Command::Examples { action } => examples_command(action, json, out),
    }
}

fn examples_command(action: &ExamplesAction, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    match action {
        ExamplesAction::List => {
            for name in BUNDLED {
                let _ = writeln!(out, "{name}");
            }
            Ok(0)
        }
        ExamplesAction::Export { name, out: dir } => {
            for p in examples::export(name, dir)? {
                let _ = writeln!(out, "wrote {}", p.display());
            }
            Ok(0)
        }
        ExamplesAction::Run { name, all, bless, data } => {
            let names: Vec<String> = match (name, all) {
                (Some(n), false) => vec![n.clone()],
                (None, true) => BUNDLED.iter().map(|s| s.to_string()).collect(),
                _ => return Err(CliError::Usage("give an example name or --all".into())),
            };
            let data = data.clone().unwrap_or_else(examples::default_data_dir);
            let mut failures = Vec::new();
            for n in &names {
                let report = examples::run_example(n)?;
                emit(out, json, &report);
                if !report.ok {
                    failures.push(format!("{n}: numbers differ from the expected values"));
                    continue;
                }
                let path = examples::golden_path(&data, n);
                if *bless {
                    if let Some(dir) = path.parent() {
                        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(e.to_string()))?;
                    }
                    write_json(&path, &report)?;
                    continue;
                }
                match read_json::<ExampleReport>(&path) {
                    Ok(golden) if golden == report => {}
                    Ok(golden) => {
                        let diff: Vec<String> = golden
                            .checks
                            .iter()
                            .zip(&report.checks)
                            .filter(|(g, r)| g != r)
                            .map(|(g, r)| format!("{}: golden {} now {}", g.label, g.actual, r.actual))
                            .collect();
                        let detail = if diff.is_empty() { "check list changed".to_string() } else { diff.join("; ") };
                        failures.push(format!("{n}: differs from {}: {detail}", path.display()));
                    }
                    Err(e) => failures.push(format!("{n}: {e}")),
                }
            }
            if failures.is_empty() {
                Ok(0)
            } else {
                Err(CliError::Mismatch(failures.join("\n")))
            }
        }
    }
}
