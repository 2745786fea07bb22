use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use super::chains::{enumerate_chains, ChainIndex};
use crate::abelian::{hom_kernel, AbGroup, AbHom, CyclicSum, IntMatrix, Subquotient};
use crate::category::{FinCat, MorId, Subcategory};
use crate::error::{Error, Result};
use crate::factorization::NaturalSystem;
use crate::int::{int, Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// non-degenerate chains only
    Reduced,
    /// every chain
    Full,
}

/// `⊕_σ D_{composite σ}` over a fixed chain basis.
#[derive(Clone, Debug)]
pub struct CochainGroup {
    degree: usize,
    basis: Vec<ChainIndex>,
    index: HashMap<Vec<MorId>, usize>,
    offsets: Vec<usize>,
    group: CyclicSum,
}

impl CochainGroup {
    fn new(d: &NaturalSystem, degree: usize, basis: Vec<ChainIndex>) -> Self {
        let index = basis.iter().enumerate().map(|(i, x)| (x.key(), i)).collect();
        let mut offsets = Vec::with_capacity(basis.len() + 1);
        offsets.push(0);
        for x in &basis {
            offsets.push(offsets.last().unwrap() + d.value(x.composite()).dim());
        }
        let group = CyclicSum::direct_sum(basis.iter().map(|x| d.value(x.composite())));
        CochainGroup { degree, basis, index, offsets, group }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[ChainIndex] {
        &self.basis
    }

    pub fn group(&self) -> &CyclicSum {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Position of a chain given by its key (see [`ChainIndex::key`]).
    pub fn position(&self, key: &[MorId]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Coordinates belonging to basis chain `k`.
    pub fn block(&self, k: usize) -> Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    /// The value `f(σ)` of a cochain, zero for chains outside the basis.
    pub fn value<'a>(&self, f: &'a [Int], key: &[MorId]) -> Option<&'a [Int]> {
        self.position(key).map(|k| &f[self.block(k)])
    }
}

/// `Hⁿ = ker δⁿ / im δⁿ⁻¹` with explicit cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    sq: Subquotient,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &AbGroup {
        self.sq.group()
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }

    /// Cocycles representing the normal-form generators.
    pub fn generators(&self) -> Vec<Vec<Int>> {
        self.sq.generators()
    }

    /// Normal-form coordinates of the class of a cocycle.
    pub fn class_of(&self, cocycle: &[Int]) -> Result<Vec<Int>> {
        self.sq.reduce(cocycle)
    }

    pub fn is_zero_class(&self, cocycle: &[Int]) -> Result<bool> {
        self.sq.element_is_zero(cocycle)
    }

    pub fn is_cocycle(&self, x: &[Int]) -> bool {
        self.sq.contains(x)
    }

    pub fn representative(&self, coords: &[Int]) -> Vec<Int> {
        self.sq.lift(coords)
    }
}

/// Cochain complex of a natural system, possibly relative to a subcategory.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    system: Arc<NaturalSystem>,
    variant: Variant,
    relative_to: Option<Subcategory>,
    top: usize,
    truncated: bool,
    groups: Vec<CochainGroup>,
    deltas: Vec<AbHom>,
    cohomology: Vec<OnceLock<CohomologyGroup>>,
}

fn resolve_top(c: &FinCat, cap: Option<usize>) -> Result<(usize, bool)> {
    match (c.nerve_dimension(), cap) {
        (_, Some(k)) => Ok((k, c.nerve_dimension().is_none_or(|dim| k < dim))),
        (Some(dim), None) => Ok((dim, false)),
        (None, None) => Err(Error::DegreeCapRequired),
    }
}

impl CochainComplex {
    /// Reduced complex through degree `cap`, or through the nerve dimension
    /// when no cap is given.
    pub fn reduced(d: Arc<NaturalSystem>, cap: Option<usize>) -> Result<Self> {
        let (top, truncated) = resolve_top(d.base(), cap)?;
        Self::build(d, Variant::Reduced, None, top, truncated)
    }

    /// Unreduced complex through degree `top`.
    pub fn full(d: Arc<NaturalSystem>, top: usize) -> Result<Self> {
        let truncated = d.base().nerve_dimension().is_none_or(|dim| top < dim);
        Self::build(d, Variant::Full, None, top, truncated)
    }

    /// Reduced complex of cochains vanishing on chains of `u`.
    pub fn relative(d: Arc<NaturalSystem>, u: &Subcategory, cap: Option<usize>) -> Result<Self> {
        if !crate::category::same_category(u.parent(), d.base()) {
            return Err(Error::InvalidSubcategory("subcategory of a different category".into()));
        }
        let (top, truncated) = resolve_top(d.base(), cap)?;
        Self::build(d, Variant::Reduced, Some(u.clone()), top, truncated)
    }

    fn build(
        d: Arc<NaturalSystem>,
        variant: Variant,
        relative_to: Option<Subcategory>,
        top: usize,
        truncated: bool,
    ) -> Result<Self> {
        let c = d.base().clone();
        let groups: Vec<CochainGroup> = (0..=top + 1)
            .map(|n| {
                let basis = enumerate_chains(&c, n, variant == Variant::Reduced)
                    .into_iter()
                    .filter(|x| relative_to.as_ref().is_none_or(|u| !x.lies_in(u)))
                    .collect();
                CochainGroup::new(&d, n, basis)
            })
            .collect();
        let mut deltas = Vec::with_capacity(top + 1);
        for n in 0..=top {
            deltas.push(coboundary_matrix(&c, &d, &groups[n], &groups[n + 1])?);
        }
        for n in 0..top {
            if !deltas[n + 1].compose(&deltas[n])?.is_zero() {
                return Err(Error::ComplexBroken { degree: n });
            }
        }
        let cohomology = (0..=top).map(|_| OnceLock::new()).collect();
        Ok(CochainComplex { system: d, variant, relative_to, top, truncated, groups, deltas, cohomology })
    }

    pub fn system(&self) -> &Arc<NaturalSystem> {
        &self.system
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.system.base()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn relative_to(&self) -> Option<&Subcategory> {
        self.relative_to.as_ref()
    }

    /// Highest degree whose cohomology can be computed.
    pub fn top(&self) -> usize {
        self.top
    }

    /// `true` when chains above `top` may carry cohomology.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Cochain group in degree `n <= top + 1`.
    pub fn group(&self, n: usize) -> Result<&CochainGroup> {
        self.groups.get(n).ok_or(Error::DegreeOutOfRange { degree: n, top: self.top + 1 })
    }

    /// `δⁿ`.
    pub fn coboundary(&self, n: usize) -> Result<&AbHom> {
        self.deltas.get(n).ok_or(Error::DegreeOutOfRange { degree: n, top: self.top })
    }

    pub fn cohomology(&self, n: usize) -> Result<&CohomologyGroup> {
        let slot = self.cohomology.get(n).ok_or(Error::DegreeOutOfRange { degree: n, top: self.top })?;
        if let Some(h) = slot.get() {
            return Ok(h);
        }
        let ambient = self.groups[n].group();
        let num = hom_kernel(&self.deltas[n]);
        let den = if n == 0 { IntMatrix::zeros(ambient.dim(), 0) } else { self.deltas[n - 1].matrix().clone() };
        let sq = Subquotient::new(ambient, &num, &den).map_err(|_| Error::ComplexBroken { degree: n })?;
        Ok(slot.get_or_init(|| CohomologyGroup { degree: n, sq }))
    }
}

/// `δ: Cⁿ -> Cⁿ⁺¹`, skipping faces that are not in the lower basis.
fn coboundary_matrix(c: &FinCat, d: &NaturalSystem, lower: &CochainGroup, upper: &CochainGroup) -> Result<AbHom> {
    let mut m = IntMatrix::zeros(upper.dim(), lower.dim());
    let mut add = |row: Range<usize>, face: &[MorId], sign: i64, map: &IntMatrix| {
        if let Some(k) = lower.position(face) {
            let col = lower.block(k);
            for (i, r) in row.clone().enumerate() {
                for (j, cc) in col.clone().enumerate() {
                    let v = &map[(i, j)];
                    if !v.is_zero() {
                        m[(r, cc)] += int(sign) * v;
                    }
                }
            }
        }
    };
    for (s, sigma) in upper.basis().iter().enumerate() {
        let row = upper.block(s);
        let lam = sigma.morphisms();
        let n = lam.len();
        let sign_n = if n % 2 == 0 { 1 } else { -1 };
        if n == 1 {
            let l = lam[0];
            let (a, b) = (c.identity(c.dom(l)), c.identity(c.cod(l)));
            add(row.clone(), &[a], 1, d.push(l, a).matrix());
            add(row.clone(), &[b], -1, d.pull(l, b).matrix());
            continue;
        }
        let first = &lam[1..];
        add(row.clone(), first, 1, d.push(lam[0], c.comp_all(first)).matrix());
        let id = IntMatrix::identity(d.value(sigma.composite()).dim());
        for i in 1..n {
            let mut face = Vec::with_capacity(n - 1);
            face.extend_from_slice(&lam[..i - 1]);
            face.push(c.comp(lam[i - 1], lam[i]));
            face.extend_from_slice(&lam[i + 1..]);
            add(row.clone(), &face, if i % 2 == 0 { 1 } else { -1 }, &id);
        }
        let last = &lam[..n - 1];
        add(row.clone(), last, sign_n, d.pull(lam[n - 1], c.comp_all(last)).matrix());
    }
    AbHom::new(lower.group().clone(), upper.group().clone(), m)
}

/// `Hⁿ(C; D)` from the reduced complex.
pub fn cohomology(d: &Arc<NaturalSystem>, n: usize, cap: Option<usize>) -> Result<CohomologyGroup> {
    let cx = complex_through(d, n, cap, None)?;
    cx.cohomology(n).cloned()
}

/// `Hⁿ` from the unreduced complex.
pub fn full_complex_cohomology(d: &Arc<NaturalSystem>, n: usize) -> Result<CohomologyGroup> {
    let cx = CochainComplex::full(d.clone(), n)?;
    cx.cohomology(n).cloned()
}

pub fn relative_complex(d: &Arc<NaturalSystem>, u: &Subcategory, cap: Option<usize>) -> Result<CochainComplex> {
    CochainComplex::relative(d.clone(), u, cap)
}

/// `Hⁿ(C, U; D)`.
pub fn relative_cohomology(
    d: &Arc<NaturalSystem>,
    u: &Subcategory,
    n: usize,
    cap: Option<usize>,
) -> Result<CohomologyGroup> {
    let cx = complex_through(d, n, cap, Some(u))?;
    cx.cohomology(n).cloned()
}

fn complex_through(
    d: &Arc<NaturalSystem>,
    n: usize,
    cap: Option<usize>,
    u: Option<&Subcategory>,
) -> Result<CochainComplex> {
    let top = match (d.base().nerve_dimension(), cap) {
        (_, Some(k)) if n > k => return Err(Error::DegreeOutOfRange { degree: n, top: k }),
        (Some(_), _) => n,
        (None, Some(_)) => n,
        (None, None) => return Err(Error::DegreeCapRequired),
    };
    let truncated = d.base().nerve_dimension().is_none_or(|dim| top < dim);
    CochainComplex::build(d.clone(), Variant::Reduced, u.cloned(), top, truncated)
}
