//! Input files: categories, functors and natural systems.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catcoh::abelian::AbGroup;
use catcoh::category::{validate_category, FinCat, FunctorMap, RawCategory, RawFunctor, Subcategory};
use catcoh::factorization::{constant_system, ring_pairing, zero_pairing, NaturalSystem, Pairing, RawNaturalSystem};
use catcoh::int::int;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A functor between two category files, paths relative to this file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub source: String,
    pub target: String,
    #[serde(flatten)]
    pub map: RawFunctor,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_category(path: &Path) -> Result<Arc<FinCat>, CliError> {
    let raw: RawCategory = read_json(path)?;
    Ok(Arc::new(validate_category(&raw)?))
}

pub struct LoadedFunctor {
    pub functor: FunctorMap,
    pub source_path: PathBuf,
    pub target_path: PathBuf,
}

pub fn load_functor(path: &Path) -> Result<LoadedFunctor, CliError> {
    let file: FunctorFile = read_json(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let (source_path, target_path) = (dir.join(&file.source), dir.join(&file.target));
    let source = load_category(&source_path)?;
    let target = load_category(&target_path)?;
    let functor = FunctorMap::from_raw(source, target, &file.map)?;
    Ok(LoadedFunctor { functor, source_path, target_path })
}

/// A coefficient system as given on the command line.
pub enum SystemSpec {
    /// `constant:Z` (modulus 0) or `constant:Z/m`
    Constant(u64),
    File(PathBuf),
}

pub fn parse_system(s: &str) -> Result<SystemSpec, CliError> {
    match s.strip_prefix("constant:") {
        Some("Z") => Ok(SystemSpec::Constant(0)),
        Some(rest) => rest
            .strip_prefix("Z/")
            .and_then(|m| m.parse::<u64>().ok())
            .filter(|&m| m >= 1)
            .map(SystemSpec::Constant)
            .ok_or_else(|| CliError::Usage(format!("bad constant system `{s}`; use constant:Z or constant:Z/m"))),
        None => Ok(SystemSpec::File(PathBuf::from(s))),
    }
}

pub fn load_system(spec: &SystemSpec, c: &Arc<FinCat>) -> Result<Arc<NaturalSystem>, CliError> {
    Ok(match spec {
        SystemSpec::Constant(0) => Arc::new(constant_system(c.clone(), &AbGroup::free(1))),
        SystemSpec::Constant(m) => Arc::new(constant_system(c.clone(), &AbGroup::cyclic(*m))),
        SystemSpec::File(p) => {
            let raw: RawNaturalSystem = read_json(p)?;
            Arc::new(NaturalSystem::from_raw(c.clone(), &raw)?)
        }
    })
}

/// Coefficients with an endopairing. `ring` multiplies generators, which
/// needs one generator per group and is validated; `zero` always works.
pub fn load_pairing(spec: &SystemSpec, kind: &str, c: &Arc<FinCat>) -> Result<Pairing, CliError> {
    match (kind, spec) {
        ("ring", SystemSpec::Constant(m)) => Ok(ring_pairing(c.clone(), *m)),
        ("ring", SystemSpec::File(_)) => {
            let d = load_system(spec, c)?;
            if c.morphisms().any(|l| d.value(l).dim() > 1) {
                return Err(CliError::Usage("ring pairing needs cyclic coefficient groups".into()));
            }
            let dd = d.clone();
            let cc = c.clone();
            Ok(Pairing::from_fn(d.clone(), d.clone(), d, move |l1, l2, _, _| {
                if dd.value(cc.comp(l1, l2)).dim() == 1 {
                    vec![int(1)]
                } else {
                    vec![]
                }
            })?)
        }
        ("zero", _) => Ok(zero_pairing(load_system(spec, c)?)),
        _ => Err(CliError::Usage(format!("unknown pairing `{kind}`; use ring or zero"))),
    }
}

/// Comma-separated object and morphism ids; morphism ids win on clashes.
pub fn parse_subcategory(c: &Arc<FinCat>, s: &str) -> Result<Subcategory, CliError> {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    for name in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Ok(m) = c.mor(name) {
            morphisms.push(m);
        } else {
            objects.push(c.obj(name)?);
        }
    }
    Ok(Subcategory::generated_by(c.clone(), objects, morphisms))
}

/// Graphviz text for the non-identity arrows of `c`.
pub fn to_dot(c: &FinCat) -> String {
    let mut out = String::from("digraph category {\n");
    for a in c.objects() {
        out.push_str(&format!("  \"{}\";\n", c.obj_name(a)));
    }
    for m in c.non_identities() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            c.obj_name(c.dom(m)),
            c.obj_name(c.cod(m)),
            c.mor_name(m)
        ));
    }
    out.push_str("}\n");
    out
}
