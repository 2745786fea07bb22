//! Report builders shared by the subcommands and the example runner.

use std::collections::BTreeMap;
use std::sync::Arc;

use catcoh::category::{FinCat, FunctorMap, Subcategory};
use catcoh::cochain::{ker_generators, pullback_complexes, CochainComplex};
use catcoh::cup::cup_length;
use catcoh::factorization::{NaturalSystem, Pairing};
use catcoh::fibration::classify;
use catcoh::int::Int;
use catcoh::secat::{secat, svarc_bound, SectionKind};
use catcoh::Error;

use crate::report::*;

pub fn summary(c: &FinCat) -> CategorySummary {
    CategorySummary { objects: c.n_objects(), morphisms: c.n_morphisms(), nerve_dimension: c.nerve_dimension() }
}

pub fn cohomology_report(cx: &CochainComplex, max: usize) -> Result<CohomologyReport, Error> {
    let c = cx.base();
    let mut degrees = Vec::new();
    for n in 0..=max.min(cx.top()) {
        let h = cx.cohomology(n)?;
        let g = h.group();
        degrees.push(DegreeReport {
            degree: n,
            group: g.to_string(),
            rank: g.rank,
            torsion: g.torsion.clone(),
            basis: cx.group(n)?.basis().iter().map(|s| s.describe(c)).collect(),
            generators: h.generators(),
        });
    }
    Ok(CohomologyReport {
        relative_to: cx.relative_to().map(Subcategory::describe),
        top_degree: cx.top(),
        truncated: cx.is_truncated(),
        degrees,
    })
}

/// Kernel generators of `P*` in degrees `1..=top`, for a cup-length search.
pub fn kernel_generators(
    p: &FunctorMap,
    d: &Arc<NaturalSystem>,
    cap: Option<usize>,
) -> Result<(CochainComplex, Vec<Vec<Vec<Int>>>), Error> {
    let (from, to) = pullback_complexes(p, d, cap)?;
    let mut gens = vec![Vec::new(); from.top() + 1];
    for (n, g) in gens.iter_mut().enumerate().skip(1) {
        *g = ker_generators(p, &from, &to, n)?;
    }
    Ok((from, gens))
}

pub fn cup_length_report(
    pairing: &Pairing,
    cx: &CochainComplex,
    kernel: Option<&[Vec<Vec<Int>>]>,
) -> Result<CupLengthReport, Error> {
    let cl = cup_length(pairing, cx, kernel)?;
    Ok(CupLengthReport {
        value: cl.value,
        lower_bound_only: cl.lower_bound_only,
        restricted_to_kernel: kernel.is_some(),
        witness: cl.witness,
    })
}

pub const PROPERTIES: &[&str] = &["fibration", "opfibration", "bifibration", "covering"];

pub fn check_report(p: &FunctorMap, property: &str) -> CheckReport {
    let details = classify(p);
    let holds = match property {
        "fibration" => details.is_fibration,
        "opfibration" => details.is_opfibration,
        "bifibration" => details.is_bifibration(),
        _ => details.is_covering,
    };
    CheckReport { property: property.into(), holds, details }
}

pub fn secat_report(p: &FunctorMap, kind: SectionKind) -> Result<SecatReport, Error> {
    let r = secat(p, kind)?;
    let e = p.source();
    let pieces = r
        .certificate
        .iter()
        .flat_map(|cert| cert.pieces.iter().zip(&cert.sections))
        .map(|(u, w)| {
            let b = u.parent();
            let (ucat, incl) = u.to_category();
            let section: BTreeMap<String, String> = ucat
                .morphisms()
                .map(|m| (b.mor_name(incl.mor(m)).to_string(), e.mor_name(w.section.mor(m)).to_string()))
                .collect();
            PieceReport {
                objects: u.objects().iter().map(|&a| b.obj_name(a).to_string()).collect(),
                morphisms: u.morphisms().iter().map(|&m| b.mor_name(m).to_string()).collect(),
                section,
            }
        })
        .collect();
    let kind = match kind {
        SectionKind::Strict => "strict",
        SectionKind::Homotopic => "homotopic",
    };
    Ok(SecatReport { kind: kind.into(), value: r.value, display: r.display_value(), pieces })
}

fn show(v: Option<usize>) -> String {
    v.map_or_else(|| "infinite".into(), |x| x.to_string())
}

pub fn svarc_report(
    p: &FunctorMap,
    d: &Arc<NaturalSystem>,
    pairing: &Pairing,
    cap: Option<usize>,
) -> Result<SvarcReport, Error> {
    let b = svarc_bound(p, d, pairing, cap)?;
    Ok(SvarcReport {
        cup_length: b.cup_length.value,
        cup_length_lower_bound_only: b.cup_length.lower_bound_only,
        genus: b.genus.value,
        genus_display: b.genus.display_value(),
        homotopic_genus: b.homotopic_genus.map(show),
        holds: b.holds,
    })
}
