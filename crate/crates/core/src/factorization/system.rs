use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::fact::FactCat;
use crate::abelian::{AbGroup, AbHom, CyclicSum, IntMatrix};
use crate::category::{same_category, FinCat, FunctorMap, MorId};
use crate::error::{Error, Result};
use crate::int::{serde_int, Int};

/// A natural system on a finite category: a group `D_λ` per morphism with
/// structure maps `α_*: D_λ -> D_{α∘λ}` and `β^*: D_λ -> D_{λ∘β}`.
///
/// All structure maps are stored, one per applicable pair.
#[derive(Clone, Debug)]
pub struct NaturalSystem {
    base: Arc<FinCat>,
    groups: Vec<AbGroup>,
    values: Vec<CyclicSum>,
    /// `push[α * n + λ]`
    push: Vec<Option<AbHom>>,
    /// `pull[β * n + λ]`
    pull: Vec<Option<AbHom>>,
}

impl PartialEq for NaturalSystem {
    fn eq(&self, other: &Self) -> bool {
        same_category(&self.base, &other.base)
            && self.groups == other.groups
            && self.push == other.push
            && self.pull == other.pull
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawStructureMap {
    pub along: String,
    pub at: String,
    /// rows index target generators, columns source generators
    #[serde(with = "serde_int::vec2")]
    pub matrix: Vec<Vec<Int>>,
}

/// Serialized natural system. Structure maps along identities default to
/// identities, maps between trivial groups to zero, and any other missing
/// map is derived by factoring the arrow through given ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawNaturalSystem {
    #[serde(default)]
    pub default_group: Option<AbGroup>,
    #[serde(default)]
    pub groups: BTreeMap<String, AbGroup>,
    #[serde(default)]
    pub push: Vec<RawStructureMap>,
    #[serde(default)]
    pub pull: Vec<RawStructureMap>,
}

fn matrix_from_rows(rows: &[Vec<Int>], nrows: usize, ncols: usize) -> Result<IntMatrix> {
    // an empty list stands for any matrix with a zero dimension
    if rows.is_empty() && (nrows == 0 || ncols == 0) {
        return Ok(IntMatrix::zeros(nrows, ncols));
    }
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::MalformedHom(format!("expected a {nrows}x{ncols} matrix")));
    }
    Ok(IntMatrix::from_fn(nrows, ncols, |i, j| rows[i][j].clone()))
}

fn matrix_to_rows(m: &IntMatrix) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

impl NaturalSystem {
    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn group(&self, lambda: MorId) -> &AbGroup {
        &self.groups[lambda]
    }

    /// Generator presentation of `D_λ`.
    pub fn value(&self, lambda: MorId) -> &CyclicSum {
        &self.values[lambda]
    }

    /// `α_*: D_λ -> D_{α∘λ}`.
    pub fn push(&self, alpha: MorId, lambda: MorId) -> &AbHom {
        self.push[alpha * self.base.n_morphisms() + lambda]
            .as_ref()
            .unwrap_or_else(|| panic!("no push along {alpha} at {lambda}"))
    }

    /// `β^*: D_λ -> D_{λ∘β}`.
    pub fn pull(&self, beta: MorId, lambda: MorId) -> &AbHom {
        self.pull[beta * self.base.n_morphisms() + lambda]
            .as_ref()
            .unwrap_or_else(|| panic!("no pull along {beta} at {lambda}"))
    }

    /// `D(α, β) = β^* ∘ α_*: D_λ -> D_{α∘λ∘β}`.
    pub fn structure(&self, lambda: MorId, alpha: MorId, beta: MorId) -> AbHom {
        let al = self.base.comp(alpha, lambda);
        self.pull(beta, al).compose(self.push(alpha, lambda)).expect("composable structure maps")
    }

    /// Builds a system from complete tables and checks functoriality.
    pub fn from_tables(
        base: Arc<FinCat>,
        groups: Vec<AbGroup>,
        push: impl Fn(MorId, MorId) -> Option<AbHom>,
        pull: impl Fn(MorId, MorId) -> Option<AbHom>,
    ) -> Result<Self> {
        let d = Self::assemble(base, groups, push, pull)?;
        d.check_functorial()?;
        Ok(d)
    }

    fn assemble(
        base: Arc<FinCat>,
        groups: Vec<AbGroup>,
        push: impl Fn(MorId, MorId) -> Option<AbHom>,
        pull: impl Fn(MorId, MorId) -> Option<AbHom>,
    ) -> Result<Self> {
        let n = base.n_morphisms();
        if groups.len() != n {
            return Err(Error::DimensionMismatch(format!("{} groups for {n} morphisms", groups.len())));
        }
        let values: Vec<CyclicSum> = groups.iter().map(AbGroup::presentation).collect();
        let mut pu = vec![None; n * n];
        let mut pl = vec![None; n * n];
        for l in base.morphisms() {
            for a in base.out_of(base.cod(l)) {
                let h = push(a, l).ok_or_else(|| {
                    Error::MissingStructureMap(format!("push along `{}` at `{}`", base.mor_name(a), base.mor_name(l)))
                })?;
                let al = base.comp(a, l);
                if h.source() != &values[l] || h.target() != &values[al] {
                    return Err(Error::MalformedHom(format!(
                        "push along `{}` at `{}` has the wrong shape",
                        base.mor_name(a),
                        base.mor_name(l)
                    )));
                }
                pu[a * n + l] = Some(h);
            }
            for b in base.into_obj(base.dom(l)) {
                let h = pull(b, l).ok_or_else(|| {
                    Error::MissingStructureMap(format!("pull along `{}` at `{}`", base.mor_name(b), base.mor_name(l)))
                })?;
                let lb = base.comp(l, b);
                if h.source() != &values[l] || h.target() != &values[lb] {
                    return Err(Error::MalformedHom(format!(
                        "pull along `{}` at `{}` has the wrong shape",
                        base.mor_name(b),
                        base.mor_name(l)
                    )));
                }
                pl[b * n + l] = Some(h);
            }
        }
        Ok(NaturalSystem { base, groups, values, push: pu, pull: pl })
    }

    /// Exhaustive functoriality check on the factorization category.
    pub fn check_functorial(&self) -> Result<()> {
        let fc = FactCat::new(self.base.clone());
        self.check_functorial_on(&fc)
    }

    pub fn check_functorial_on(&self, fc: &FactCat) -> Result<()> {
        let c = fc.category();
        let name = |m: MorId| c.mor_name(m).to_string();
        let maps: Vec<AbHom> = c
            .morphisms()
            .map(|m| {
                let (l, a, b) = fc.pair(m);
                self.structure(l, a, b)
            })
            .collect();
        for l in c.objects() {
            let id = c.identity(l);
            if maps[id] != AbHom::identity(self.value(l)) {
                return Err(Error::NotFunctorial { first: name(id), second: name(id) });
            }
        }
        for f in c.morphisms() {
            for g in c.out_of(c.cod(f)) {
                let lhs = &maps[c.comp(g, f)];
                let rhs = maps[g].compose(&maps[f])?;
                if *lhs != rhs {
                    return Err(Error::NotFunctorial { first: name(f), second: name(g) });
                }
            }
        }
        Ok(())
    }

    pub fn from_raw(base: Arc<FinCat>, raw: &RawNaturalSystem) -> Result<Self> {
        let n = base.n_morphisms();
        for k in raw.groups.keys() {
            base.mor(k)?;
        }
        let mut groups = Vec::with_capacity(n);
        for m in base.morphisms() {
            let g = match (raw.groups.get(base.mor_name(m)), &raw.default_group) {
                (Some(g), _) | (None, Some(g)) => g.clone(),
                (None, None) => return Err(Error::MissingStructureMap(format!("no group for `{}`", base.mor_name(m)))),
            };
            groups.push(AbGroup::new(g.rank, g.torsion.clone())?);
        }
        let values: Vec<CyclicSum> = groups.iter().map(AbGroup::presentation).collect();

        let mut push: Vec<Option<AbHom>> = vec![None; n * n];
        let mut pull: Vec<Option<AbHom>> = vec![None; n * n];
        for (entries, is_push) in [(&raw.push, true), (&raw.pull, false)] {
            for e in entries {
                let along = base.mor(&e.along)?;
                let at = base.mor(&e.at)?;
                let tgt = if is_push { base.compose(along, at) } else { base.compose(at, along) }
                    .ok_or_else(|| Error::MalformedHom(format!("`{}` does not act on `{}`", e.along, e.at)))?;
                let m = matrix_from_rows(&e.matrix, values[tgt].dim(), values[at].dim())?;
                let h = AbHom::new(values[at].clone(), values[tgt].clone(), m)?;
                let slot = if is_push { &mut push[along * n + at] } else { &mut pull[along * n + at] };
                *slot = Some(h);
            }
        }
        // identities and trivial ends
        for l in base.morphisms() {
            for a in base.out_of(base.cod(l)) {
                let al = base.comp(a, l);
                let slot = &mut push[a * n + l];
                if slot.is_none() && base.is_identity(a) {
                    *slot = Some(AbHom::identity(&values[l]));
                } else if slot.is_none() && (groups[l].is_trivial() || groups[al].is_trivial()) {
                    *slot = Some(AbHom::zero(&values[l], &values[al]));
                }
            }
            for b in base.into_obj(base.dom(l)) {
                let lb = base.comp(l, b);
                let slot = &mut pull[b * n + l];
                if slot.is_none() && base.is_identity(b) {
                    *slot = Some(AbHom::identity(&values[l]));
                } else if slot.is_none() && (groups[l].is_trivial() || groups[lb].is_trivial()) {
                    *slot = Some(AbHom::zero(&values[l], &values[lb]));
                }
            }
        }
        // derive the rest through factorizations of the acting arrow
        loop {
            let mut progress = false;
            for l in base.morphisms() {
                for a in base.out_of(base.cod(l)).collect::<Vec<_>>() {
                    if push[a * n + l].is_some() {
                        continue;
                    }
                    'push: for f in base.out_of(base.cod(l)) {
                        for g in base.out_of(base.cod(f)) {
                            if base.comp(g, f) != a || base.is_identity(f) || base.is_identity(g) {
                                continue;
                            }
                            let fl = base.comp(f, l);
                            if let (Some(p1), Some(p2)) = (&push[f * n + l], &push[g * n + fl]) {
                                push[a * n + l] = Some(p2.compose(p1)?);
                                progress = true;
                                break 'push;
                            }
                        }
                    }
                }
                for b in base.into_obj(base.dom(l)).collect::<Vec<_>>() {
                    if pull[b * n + l].is_some() {
                        continue;
                    }
                    // b = f ∘ g: pull along f first, then g
                    'pull: for f in base.into_obj(base.dom(l)) {
                        for g in base.into_obj(base.dom(f)) {
                            if base.comp(f, g) != b || base.is_identity(f) || base.is_identity(g) {
                                continue;
                            }
                            let lf = base.comp(l, f);
                            if let (Some(p1), Some(p2)) = (&pull[f * n + l], &pull[g * n + lf]) {
                                pull[b * n + l] = Some(p2.compose(p1)?);
                                progress = true;
                                break 'pull;
                            }
                        }
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let d = Self::assemble(base, groups, |a, l| push[a * n + l].clone(), |b, l| pull[b * n + l].clone())?;
        d.check_functorial()?;
        Ok(d)
    }

    /// Every structure map, written out.
    pub fn to_raw(&self) -> RawNaturalSystem {
        let b = &self.base;
        let n = b.n_morphisms();
        let mut push = Vec::new();
        let mut pull = Vec::new();
        for a in b.morphisms() {
            for l in b.morphisms() {
                if b.is_identity(a) {
                    continue;
                }
                if let Some(h) = &self.push[a * n + l] {
                    push.push(RawStructureMap {
                        along: b.mor_name(a).into(),
                        at: b.mor_name(l).into(),
                        matrix: matrix_to_rows(h.matrix()),
                    });
                }
                if let Some(h) = &self.pull[a * n + l] {
                    pull.push(RawStructureMap {
                        along: b.mor_name(a).into(),
                        at: b.mor_name(l).into(),
                        matrix: matrix_to_rows(h.matrix()),
                    });
                }
            }
        }
        RawNaturalSystem {
            default_group: None,
            groups: b.morphisms().map(|m| (b.mor_name(m).to_string(), self.groups[m].clone())).collect(),
            push,
            pull,
        }
    }
}

/// The constant system: `A` everywhere, identity structure maps.
pub fn constant_system(base: Arc<FinCat>, a: &AbGroup) -> NaturalSystem {
    let groups = vec![a.clone(); base.n_morphisms()];
    let id = AbHom::identity(&a.presentation());
    NaturalSystem::assemble(base, groups, |_, _| Some(id.clone()), |_, _| Some(id.clone())).expect("constant system")
}

/// `F*D = D ∘ F^` on the source of `f`.
pub fn pullback_system(f: &FunctorMap, d: &NaturalSystem) -> Result<NaturalSystem> {
    if !same_category(f.target(), d.base()) {
        return Err(Error::MismatchedFunctors("natural system lives on a different category".into()));
    }
    let src = f.source().clone();
    let groups = src.morphisms().map(|l| d.group(f.mor(l)).clone()).collect();
    NaturalSystem::assemble(
        src,
        groups,
        |a, l| Some(d.push(f.mor(a), f.mor(l)).clone()),
        |b, l| Some(d.pull(f.mor(b), f.mor(l)).clone()),
    )
}
