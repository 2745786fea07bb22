//! Reproduces the numbers of the bundled examples and compares them with
//! pinned golden reports.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use catcoh::category::Subcategory;
use catcoh::cochain::{induced_cochain_map, pullback_complexes, CochainComplex};
use catcoh::cup::{cup_cochain, Cochain};
use catcoh::instances::{load_bundled, Instance};
use catcoh::int::{ints, Int};
use catcoh::secat::{all_sections, realizable_sets, secat, SectionKind};
use catcoh::Error;

use crate::commands::{cup_length_report, kernel_generators, svarc_report};
use crate::files::{write_json, FunctorFile};
use crate::report::{ExampleCheck, ExampleReport};
use crate::CliError;

/// Where goldens and exported data live unless overridden.
pub fn default_data_dir() -> PathBuf {
    std::env::var_os("CATCOH_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

struct Checks(Vec<ExampleCheck>);

impl Checks {
    fn eq(&mut self, label: &str, expected: impl Display, actual: impl Display) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let ok = expected == actual;
        self.0.push(ExampleCheck { label: label.into(), expected, actual, ok });
    }
}

fn tuple(v: &[Int]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn group(cx: &CochainComplex, n: usize) -> Result<String, Error> {
    Ok(cx.cohomology(n)?.group().to_string())
}

fn parts(
    inst: &Instance,
) -> (
    &catcoh::category::FunctorMap,
    &std::sync::Arc<catcoh::factorization::NaturalSystem>,
    &catcoh::factorization::Pairing,
) {
    (
        inst.functor.as_ref().expect("instance with a functor"),
        inst.system.as_ref().expect("instance with coefficients"),
        inst.pairing.as_ref().expect("instance with a pairing"),
    )
}

pub fn run_example(name: &str) -> Result<ExampleReport, CliError> {
    let inst = load_bundled(name)?;
    let mut ck = Checks(Vec::new());
    match name {
        "parallel_arrows_S" | "parallel_arrows_S_alt" => {
            let d = inst.system.clone().expect("coefficients");
            let cx = CochainComplex::reduced(d.clone(), Some(3))?;
            ck.eq("H^0(S;D)", "0", group(&cx, 0)?);
            ck.eq("H^1(S;D)", "Z/2", group(&cx, 1)?);
            ck.eq("H^2(S;D)", "0", group(&cx, 2)?);
            ck.eq("H^3(S;D)", "0", group(&cx, 3)?);
            let c = Subcategory::by_names(inst.category.clone(), &["C"], &[])?;
            let rel = CochainComplex::relative(d, &c, None)?;
            ck.eq("H^0(S,C;D)", "0", group(&rel, 0)?);
            ck.eq("H^1(S,C;D)", "Z", group(&rel, 1)?);
            let cl = cup_length_report(inst.pairing.as_ref().expect("pairing"), &cx, None)?;
            ck.eq("cup-length of H(S;D)", "1", cl.value);
        }
        "doblecir_covering" => {
            let (p, d, pairing) = parts(&inst);
            let r = catcoh::fibration::classify(p);
            ck.eq("covering", true, r.is_covering);
            ck.eq("bifibration", true, r.is_bifibration());
            ck.eq("sc(P)", "1", secat(p, SectionKind::Strict)?.display_value());
            ck.eq("Sg(P)", "1", secat(p, SectionKind::Homotopic)?.display_value());
            let (from, to) = pullback_complexes(p, d, None)?;
            let pulled = induced_cochain_map(p, &from, &to, 1)?.apply(&ints(&[1, 0]));
            ck.eq("P*(1,0)", "(1,1,0,0)", tuple(&pulled));
            let dhat = to.coboundary(0)?.apply(&ints(&[0, 1, -1, 0]));
            ck.eq("delta0(0,1,-1,0) on E", "(1,1,0,0)", tuple(&dhat));
            ck.eq("P*(1,0) is a coboundary", true, to.cohomology(1)?.is_zero_class(&pulled)?);
            let (kx, gens) = kernel_generators(p, d, None)?;
            ck.eq("cpl(ker P*)", "1", cup_length_report(pairing, &kx, Some(&gens))?.value);
            ck.eq("bound holds", true, svarc_report(p, d, pairing, None)?.holds);
        }
        "groupoid_to_Z2" => {
            let (p, _, _) = parts(&inst);
            let r = catcoh::fibration::classify(p);
            ck.eq("covering", true, r.is_covering);
            ck.eq("bifibration", true, r.is_bifibration());
            let whole = Subcategory::whole(inst.category.clone());
            ck.eq("global sections", 0, all_sections(p, &whole, SectionKind::Strict)?.len());
            ck.eq("sc(P)", "infinite", secat(p, SectionKind::Strict)?.display_value());
        }
        "projective_plane_covering" => {
            let (p, d, pairing) = parts(&inst);
            let cx = CochainComplex::reduced(d.clone(), None)?;
            let c = cx.base();
            ck.eq("H^1(P2;F2)", "Z/2", group(&cx, 1)?);
            ck.eq("H^2(P2;F2)", "Z/2", group(&cx, 2)?);
            let f = ints(&[1, 0, 0, 1, 1, 0]);
            let h1 = cx.cohomology(1)?;
            ck.eq("f = (1,0,0,1,1,0) is a cocycle", true, h1.is_cocycle(&f));
            ck.eq("[f] is a coboundary", false, h1.is_zero_class(&f)?);
            let basis: Vec<String> = cx.group(2)?.basis().iter().map(|s| s.describe(c)).collect();
            ck.eq(
                "degree-2 chain order",
                "(beta1,alpha1) (beta1,alpha2) (beta2,alpha1) (beta2,alpha2)",
                basis.join(" "),
            );
            let ff = cup_cochain(pairing, Cochain::new(&cx, 1, &f), Cochain::new(&cx, 1, &f), &cx)?;
            let ff = cx.group(2)?.group().reduce(&ff);
            ck.eq("f cup f", "(0,0,1,0)", tuple(&ff));
            ck.eq("f cup f is a coboundary", false, cx.cohomology(2)?.is_zero_class(&ff)?);
            let (_, to) = pullback_complexes(p, d, None)?;
            ck.eq("H^1(E;F2)", "0", group(&to, 1)?);
            ck.eq("maximal chain arrow sets", 4, realizable_sets(&inst.category)?.maximal_sets.len());
            let (kx, gens) = kernel_generators(p, d, None)?;
            ck.eq("cpl(ker P*)", "2", cup_length_report(pairing, &kx, Some(&gens))?.value);
            let sv = svarc_report(p, d, pairing, None)?;
            ck.eq("sc(P)", "3", &sv.genus_display);
            ck.eq("strict inequality", true, sv.holds && Some(sv.cup_length) < sv.genus);
        }
        "terminal" => {
            let cx = CochainComplex::reduced(inst.system.clone().expect("coefficients"), Some(2))?;
            ck.eq("H^0", "Z", group(&cx, 0)?);
            ck.eq("H^1", "0", group(&cx, 1)?);
            ck.eq("H^2", "0", group(&cx, 2)?);
        }
        _ if name.starts_with("interval_") => {
            let cx = CochainComplex::reduced(inst.system.clone().expect("coefficients"), None)?;
            ck.eq("H^0", "Z", group(&cx, 0)?);
            for n in 1..=cx.top() {
                ck.eq(&format!("H^{n}"), "0", group(&cx, n)?);
            }
        }
        _ => return Err(CliError::Math(Error::UnknownInstance(name.into()))),
    }
    let ok = ck.0.iter().all(|c| c.ok);
    Ok(ExampleReport { name: name.into(), checks: ck.0, ok })
}

pub fn golden_path(data: &Path, name: &str) -> PathBuf {
    data.join("goldens").join(format!("{name}.json"))
}

/// Writes the category, functor and system files of a bundled instance.
pub fn export(name: &str, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let inst = load_bundled(name)?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let base = dir.join("base.json");
    write_json(&base, &inst.category.to_raw())?;
    written.push(base);
    if let Some(d) = &inst.system {
        let path = dir.join("system.json");
        write_json(&path, &d.to_raw())?;
        written.push(path);
    }
    if let Some(f) = &inst.functor {
        let total = dir.join("total.json");
        write_json(&total, &f.source().to_raw())?;
        written.push(total);
        let path = dir.join("functor.json");
        let file = FunctorFile { source: "total.json".into(), target: "base.json".into(), map: f.to_raw() };
        write_json(&path, &file)?;
        written.push(path);
    }
    Ok(written)
}
