use std::sync::Arc;

use super::complex::CochainComplex;
use crate::abelian::{induced_subquotient_map, kernel_of_subquotient_map, AbHom, IntMatrix};
use crate::category::{same_category, FunctorMap, MorId, Subcategory};
use crate::error::{Error, Result};
use crate::factorization::{pullback_system, NaturalSystem};
use crate::int::{int, Int};

/// The degree-`n` cochain map `from -> to` given by `(φf)(τ) = f(image(τ))`,
/// where `image` sends a basis key of `to` to a chain key of `from`. Values
/// on chains outside the basis of `from` are zero.
pub fn cochain_map(
    from: &CochainComplex,
    to: &CochainComplex,
    n: usize,
    image: impl Fn(&[MorId]) -> Vec<MorId>,
) -> Result<AbHom> {
    let (gf, gt) = (from.group(n)?, to.group(n)?);
    let mut m = IntMatrix::zeros(gt.dim(), gf.dim());
    for (t, tau) in gt.basis().iter().enumerate() {
        let Some(s) = gf.position(&image(&tau.key())) else { continue };
        let (rows, cols) = (gt.block(t), gf.block(s));
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!("coefficient groups differ on chain {t}")));
        }
        for (r, c) in rows.zip(cols) {
            m[(r, c)] = int(1);
        }
    }
    AbHom::new(gf.group().clone(), gt.group().clone(), m)
}

/// `F*: Cⁿ(target; D) -> Cⁿ(source; F*D)`.
pub fn induced_cochain_map(f: &FunctorMap, from: &CochainComplex, to: &CochainComplex, n: usize) -> Result<AbHom> {
    if !same_category(f.target(), from.base()) || !same_category(f.source(), to.base()) {
        return Err(Error::MismatchedFunctors("complexes do not match the functor".into()));
    }
    cochain_map(from, to, n, |key| key.iter().map(|&m| f.mor(m)).collect())
}

/// `F*: Hⁿ(target; D) -> Hⁿ(source; F*D)` on normal forms.
pub fn induced_cohomology_map(f: &FunctorMap, from: &CochainComplex, to: &CochainComplex, n: usize) -> Result<AbHom> {
    let cm = induced_cochain_map(f, from, to, n)?;
    induced_subquotient_map(&cm, from.cohomology(n)?.subquotient(), to.cohomology(n)?.subquotient())
}

/// Cocycles of `from` representing generators of `ker F*` in degree `n`.
pub fn ker_generators(f: &FunctorMap, from: &CochainComplex, to: &CochainComplex, n: usize) -> Result<Vec<Vec<Int>>> {
    let map = induced_cohomology_map(f, from, to, n)?;
    let h = from.cohomology(n)?;
    Ok(kernel_of_subquotient_map(&map).iter().map(|k| h.representative(k)).collect())
}

/// Reduced complexes of `D` on the target of `f` and of `F*D` on its source.
pub fn pullback_complexes(
    f: &FunctorMap,
    d: &Arc<NaturalSystem>,
    cap: Option<usize>,
) -> Result<(CochainComplex, CochainComplex)> {
    let from = CochainComplex::reduced(d.clone(), cap)?;
    let pulled = Arc::new(pullback_system(f, d)?);
    let cap_src = cap.or(Some(from.top()));
    let to = CochainComplex::reduced(pulled, cap_src)?;
    Ok((from, to))
}

/// `γ: Hⁿ(C, U; D) -> Hⁿ(C; D)`, induced by the inclusion of cochains
/// vanishing on `U`.
pub fn gamma_map(relative: &CochainComplex, absolute: &CochainComplex, n: usize) -> Result<AbHom> {
    if !same_category(relative.base(), absolute.base()) || absolute.relative_to().is_some() {
        return Err(Error::NotChainCompatible("gamma needs a relative and an absolute complex".into()));
    }
    let cm = cochain_map(relative, absolute, n, |key| key.to_vec())?;
    induced_subquotient_map(&cm, relative.cohomology(n)?.subquotient(), absolute.cohomology(n)?.subquotient())
}

/// `ι*: Hⁿ(C; D) -> Hⁿ(U; D|U)` together with the complex on `U`.
pub fn restriction_map(absolute: &CochainComplex, u: &Subcategory, n: usize) -> Result<(AbHom, CochainComplex)> {
    let (_, incl) = u.to_category();
    let d = Arc::new(pullback_system(&incl, absolute.system())?);
    let sub = CochainComplex::reduced(d, Some(absolute.top()))?;
    let map = induced_cohomology_map(&incl, absolute, &sub, n)?;
    Ok((map, sub))
}
