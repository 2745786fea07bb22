//! Local sections, sectional category and Švarc genus of functors.

mod cover;
mod realizable;

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::Arc;

pub use cover::minimum_set_cover;
pub use realizable::{
    is_geometric_cover, realizable_sets, realizable_sets_within, uncovered_chain_set, RealizableSetFamily,
    DEFAULT_STATE_LIMIT,
};

use crate::category::{
    enumerate_functors, walk_homotopy_class, Constraints, FinCat, FunctorMap, MorId, Subcategory, Zigzag,
};
use crate::cochain::{ker_generators, pullback_complexes};
use crate::cup::{cup_length, CupLength};
use crate::error::{Error, Result};
use crate::factorization::{NaturalSystem, Pairing};
use crate::fibration::classify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionKind {
    /// `P ∘ s = ι`
    Strict,
    /// `P ∘ s ≃ ι`
    Homotopic,
}

/// A local section `s: U -> E`; for homotopic sections, a zigzag from
/// `P ∘ s` to the inclusion.
#[derive(Clone, Debug)]
pub struct SectionWitness {
    pub section: FunctorMap,
    pub zigzag: Option<Zigzag>,
}

/// Calls `visit` on local sections of `p` over `u` until it breaks.
pub fn sections(
    p: &FunctorMap,
    u: &Subcategory,
    kind: SectionKind,
    mut visit: impl FnMut(SectionWitness) -> ControlFlow<()>,
) -> Result<()> {
    if !crate::category::same_category(u.parent(), p.target()) {
        return Err(Error::InvalidSubcategory("subcategory of a different base".into()));
    }
    let (ucat, incl) = u.to_category();
    let e = p.source();
    // strict lifts of a functor `g: U -> B`
    let lifts = |g: &FunctorMap, visit: &mut dyn FnMut(&FunctorMap) -> ControlFlow<()>| {
        let mut cons = Constraints::none(&ucat);
        for a in ucat.objects() {
            cons.allow_objects(a, e.objects().filter(|&x| p.obj(x) == g.obj(a)).collect());
        }
        for m in ucat.morphisms() {
            cons.allow_morphisms(m, e.morphisms().filter(|&v| p.mor(v) == g.mor(m)).collect());
        }
        enumerate_functors(&ucat, e, &cons, |s| visit(s))
    };
    match kind {
        SectionKind::Strict => {
            let _ = lifts(&incl, &mut |s| visit(SectionWitness { section: s.clone(), zigzag: None }));
        }
        SectionKind::Homotopic => {
            // sections over each functor homotopic to the inclusion
            let _ = walk_homotopy_class(&incl, |g, path| {
                lifts(g, &mut |s| {
                    let mut z = path();
                    z.functors.reverse();
                    z.links.reverse();
                    visit(SectionWitness { section: s.clone(), zigzag: Some(z) })
                })
            });
        }
    }
    Ok(())
}

pub fn first_section(p: &FunctorMap, u: &Subcategory, kind: SectionKind) -> Result<Option<SectionWitness>> {
    let mut found = None;
    sections(p, u, kind, |w| {
        found = Some(w);
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn all_sections(p: &FunctorMap, u: &Subcategory, kind: SectionKind) -> Result<Vec<SectionWitness>> {
    let mut out = Vec::new();
    sections(p, u, kind, |w| {
        out.push(w);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Pieces with verified sections forming a geometric cover of the base.
#[derive(Clone, Debug)]
pub struct CoverCertificate {
    pub kind: SectionKind,
    pub pieces: Vec<Subcategory>,
    pub sections: Vec<SectionWitness>,
}

#[derive(Clone, Debug)]
pub struct SecatResult {
    /// `None` for ∞
    pub value: Option<usize>,
    pub certificate: Option<CoverCertificate>,
    /// maximal sectioned subcategories that were candidate pieces
    pub candidates: Vec<Subcategory>,
}

impl SecatResult {
    pub fn display_value(&self) -> String {
        self.value.map_or_else(|| "infinite".to_string(), |v| v.to_string())
    }
}

/// Exact `sc(P)` (strict) or `Sg(P)` (homotopic).
///
/// The elements to cover are the maximal realizable arrow sets of the base.
/// A family of them can share a piece iff the subcategory generated by
/// their union has a section (sections restrict to subcategories), so the
/// candidates are the maximal such families and the answer is a minimum
/// set cover by them.
pub fn secat(p: &FunctorMap, kind: SectionKind) -> Result<SecatResult> {
    let b = p.target().clone();
    let fam = realizable_sets(&b)?;
    let k = fam.maximal_sets.len();
    let mut oracle = SectionOracle { p, kind, cache: HashMap::new() };

    // coverable families are closed under subsets; grow them in index order
    let mut coverable: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(f) = stack.pop() {
        let start = f.last().map_or(0, |&i| i + 1);
        // if everything still addable fits in one piece, that family dominates the subtree
        let mut whole = f.clone();
        whole.extend(start..k);
        if start < k && oracle.has_section(&generated(&b, &fam, &whole))? {
            coverable.push(whole);
            continue;
        }
        for i in start..k {
            let mut g = f.clone();
            g.push(i);
            if oracle.has_section(&generated(&b, &fam, &g))? {
                stack.push(g.clone());
                coverable.push(g);
            }
        }
    }
    let masks: Vec<BTreeSet<usize>> = coverable.iter().map(|f| f.iter().copied().collect()).collect();
    let mut maximal: Vec<BTreeSet<usize>> = Vec::new();
    let mut by_size = masks.clone();
    by_size.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));
    for m in by_size {
        if !maximal.iter().any(|x| m.is_subset(x)) {
            maximal.push(m);
        }
    }
    maximal.sort();
    let candidates: Vec<Subcategory> =
        maximal.iter().map(|f| generated(&b, &fam, &f.iter().copied().collect::<Vec<_>>())).collect();

    if k == 0 {
        let empty = Subcategory::empty(b.clone());
        let w = first_section(p, &empty, kind)?.expect("the empty functor is a section");
        return Ok(SecatResult {
            value: Some(0),
            certificate: Some(CoverCertificate { kind, pieces: vec![empty], sections: vec![w] }),
            candidates,
        });
    }
    let Some(chosen) = minimum_set_cover(k, &maximal) else {
        return Ok(SecatResult { value: None, certificate: None, candidates });
    };
    let pieces: Vec<Subcategory> = chosen.iter().map(|&i| candidates[i].clone()).collect();
    let sections = pieces
        .iter()
        .map(|u| first_section(p, u, kind).map(|w| w.expect("candidate pieces have sections")))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(is_geometric_cover(&pieces, &Subcategory::whole(b.clone()))?);
    Ok(SecatResult {
        value: Some(pieces.len() - 1),
        certificate: Some(CoverCertificate { kind, pieces, sections }),
        candidates,
    })
}

fn generated(b: &Arc<FinCat>, fam: &RealizableSetFamily, family: &[usize]) -> Subcategory {
    let mors: BTreeSet<MorId> = family.iter().flat_map(|&i| fam.maximal_sets[i].iter().copied()).collect();
    Subcategory::generated_by(b.clone(), [], mors)
}

struct SectionOracle<'a> {
    p: &'a FunctorMap,
    kind: SectionKind,
    cache: HashMap<BTreeSet<MorId>, bool>,
}

impl SectionOracle<'_> {
    fn has_section(&mut self, u: &Subcategory) -> Result<bool> {
        if let Some(&v) = self.cache.get(u.morphisms()) {
            return Ok(v);
        }
        let v = first_section(self.p, u, self.kind)?.is_some();
        self.cache.insert(u.morphisms().clone(), v);
        Ok(v)
    }
}

/// Result of checking `cpl(ker P*) ≤ Sg(P)`.
#[derive(Clone, Debug)]
pub struct SvarcBound {
    pub cup_length: CupLength,
    pub genus: SecatResult,
    /// homotopic genus when it was small enough to compute
    pub homotopic_genus: Option<Option<usize>>,
    pub holds: bool,
}

/// Sizes up to which the homotopic genus is recomputed as a cross-check.
pub const HOMOTOPIC_CHECK_LIMIT: (usize, usize) = (16, 32);

/// `cpl(ker P*)` against `Sg(P)` for a bifibration `p`, coefficients `d` on
/// its base and an endopairing on `d`.
pub fn svarc_bound(
    p: &FunctorMap,
    d: &Arc<NaturalSystem>,
    pairing: &Pairing,
    cap: Option<usize>,
) -> Result<SvarcBound> {
    let report = classify(p);
    if !report.is_bifibration() {
        let why = report
            .fibration_witnesses
            .first()
            .map(|w| format!("no Cartesian lift of `{}` at `{}`", w.arrow, w.object))
            .or_else(|| {
                report
                    .opfibration_witnesses
                    .first()
                    .map(|w| format!("no op-Cartesian lift of `{}` at `{}`", w.arrow, w.object))
            })
            .unwrap_or_default();
        return Err(Error::NotABifibration(why));
    }
    let (from, to) = pullback_complexes(p, d, cap)?;
    let mut gens = vec![Vec::new(); from.top() + 1];
    for (n, g) in gens.iter_mut().enumerate().skip(1) {
        *g = ker_generators(p, &from, &to, n)?;
    }
    let cpl = cup_length(pairing, &from, Some(&gens))?;
    let genus = secat(p, SectionKind::Strict)?;
    let small =
        p.target().n_morphisms() <= HOMOTOPIC_CHECK_LIMIT.0 && p.source().n_morphisms() <= HOMOTOPIC_CHECK_LIMIT.1;
    let homotopic_genus = if small { Some(secat(p, SectionKind::Homotopic)?.value) } else { None };
    let holds = genus.value.is_none_or(|g| cpl.value <= g);
    Ok(SvarcBound { cup_length: cpl, genus, homotopic_genus, holds })
}

#[cfg(test)]
mod tests;
