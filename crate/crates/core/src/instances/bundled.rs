use std::collections::BTreeMap;
use std::sync::Arc;

use super::Instance;
use crate::abelian::AbGroup;
use crate::category::{interval_category, terminal_category, CategoryBuilder, FinCat, FunctorMap, RawFunctor};
use crate::error::{Error, Result};
use crate::factorization::{ring_pairing, zero_pairing, NaturalSystem, RawNaturalSystem, RawStructureMap};
use crate::int::ints;

/// Names accepted by [`load_bundled`]; `interval_<m>` works for every `m`.
pub const BUNDLED: &[&str] = &[
    "parallel_arrows_S",
    "parallel_arrows_S_alt",
    "groupoid_to_Z2",
    "doblecir_covering",
    "projective_plane_covering",
    "interval_2",
    "terminal",
];

pub fn load_bundled(name: &str) -> Result<Instance> {
    let inst = match name {
        "parallel_arrows_S" => parallel_arrows(name, false)?,
        "parallel_arrows_S_alt" => parallel_arrows(name, true)?,
        "groupoid_to_Z2" => groupoid_to_z2()?,
        "doblecir_covering" => doblecir()?,
        "projective_plane_covering" => projective_plane()?,
        "terminal" => plain(name, terminal_category()),
        _ => match name.strip_prefix("interval_").and_then(|m| m.parse::<usize>().ok()) {
            Some(m) => plain(name, interval_category(m)),
            None => return Err(Error::UnknownInstance(name.into())),
        },
    };
    inst.validate()?;
    Ok(inst)
}

fn plain(name: &str, c: FinCat) -> Instance {
    let c = Arc::new(c);
    let p = ring_pairing(c.clone(), 0);
    Instance {
        name: name.into(),
        category: c,
        system: Some(p.left().clone()),
        pairing: Some(p),
        functor: None,
        degree_cap: None,
    }
}

fn parallel_category() -> Result<Arc<FinCat>> {
    let mut b = CategoryBuilder::new();
    b.objects(&["C", "D"]).morphism("alpha", "C", "D").morphism("beta", "C", "D");
    Ok(Arc::new(b.build()?))
}

fn map(along: &str, at: &str, m: i64) -> RawStructureMap {
    RawStructureMap { along: along.into(), at: at.into(), matrix: vec![ints(&[m])] }
}

/// `Z` on every arrow of the two parallel arrows, identity structure maps
/// except a single `-1`: `β^*` at `id_D`, or `β_*` at `id_C` in the
/// alternate orientation.
pub fn sign_system(s: Arc<FinCat>, alternate: bool) -> Result<NaturalSystem> {
    let (pb, qb) = if alternate { (-1, 1) } else { (1, -1) };
    let raw = RawNaturalSystem {
        default_group: Some(AbGroup::free(1)),
        groups: BTreeMap::new(),
        push: vec![map("alpha", "id_C", 1), map("beta", "id_C", pb)],
        pull: vec![map("alpha", "id_D", 1), map("beta", "id_D", qb)],
    };
    NaturalSystem::from_raw(s, &raw)
}

fn parallel_arrows(name: &str, alternate: bool) -> Result<Instance> {
    let s = parallel_category()?;
    let d = Arc::new(sign_system(s.clone(), alternate)?);
    // multiplication of Z is not natural for this system; only zero is
    let p = zero_pairing(d.clone());
    Ok(Instance { name: name.into(), category: s, system: Some(d), pairing: Some(p), functor: None, degree_cap: None })
}

fn functor(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    obj: &[(&str, &str)],
    mor: &[(&str, &str)],
) -> Result<FunctorMap> {
    let owned = |xs: &[(&str, &str)]| xs.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
    let raw = RawFunctor { obj_map: owned(obj), mor_map: owned(mor) };
    FunctorMap::from_raw(source.clone(), target.clone(), &raw)
}

/// Two objects with inverse arrows over the one-object group of order two.
fn groupoid_to_z2() -> Result<Instance> {
    let mut e = CategoryBuilder::new();
    e.objects(&["A", "B"])
        .morphism("f", "A", "B")
        .morphism("g", "B", "A")
        .compose("f", "g", "id_B")
        .compose("g", "f", "id_A");
    let e = Arc::new(e.build()?);
    let mut b = CategoryBuilder::new();
    b.object("*").morphism("h", "*", "*").compose("h", "h", "id_*");
    let b = Arc::new(b.build()?);
    let p = functor(&e, &b, &[("A", "*"), ("B", "*")], &[("id_A", "id_*"), ("id_B", "id_*"), ("f", "h"), ("g", "h")])?;
    let pairing = ring_pairing(b.clone(), 2);
    Ok(Instance {
        name: "groupoid_to_Z2".into(),
        category: b,
        system: Some(pairing.left().clone()),
        pairing: Some(pairing),
        functor: Some(p),
        degree_cap: Some(3),
    })
}

/// The double cover of the two parallel arrows, with the sign system below.
fn doblecir() -> Result<Instance> {
    let s = parallel_category()?;
    let mut e = CategoryBuilder::new();
    e.objects(&["C1", "C2", "D1", "D2"])
        .morphism("alpha1", "C1", "D1")
        .morphism("alpha2", "C2", "D2")
        .morphism("beta1", "C1", "D2")
        .morphism("beta2", "C2", "D1");
    let e = Arc::new(e.build()?);
    let p = functor(
        &e,
        &s,
        &[("C1", "C"), ("C2", "C"), ("D1", "D"), ("D2", "D")],
        &[
            ("id_C1", "id_C"),
            ("id_C2", "id_C"),
            ("id_D1", "id_D"),
            ("id_D2", "id_D"),
            ("alpha1", "alpha"),
            ("alpha2", "alpha"),
            ("beta1", "beta"),
            ("beta2", "beta"),
        ],
    )?;
    let d = Arc::new(sign_system(s.clone(), false)?);
    let pairing = zero_pairing(d.clone());
    Ok(Instance {
        name: "doblecir_covering".into(),
        category: s,
        system: Some(d),
        pairing: Some(pairing),
        functor: Some(p),
        degree_cap: None,
    })
}

/// `X -> Y -> Z` with doubled arrows, `β₁α₁ = γ₁ = β₂α₂` and
/// `β₁α₂ = γ₂ = β₂α₁`, covered by the poset with two objects over each.
pub fn projective_plane_category() -> Result<Arc<FinCat>> {
    let mut b = CategoryBuilder::new();
    b.objects(&["X", "Y", "Z"])
        .morphism("alpha1", "X", "Y")
        .morphism("alpha2", "X", "Y")
        .morphism("beta1", "Y", "Z")
        .morphism("beta2", "Y", "Z")
        .morphism("gamma1", "X", "Z")
        .morphism("gamma2", "X", "Z")
        .compose("beta1", "alpha1", "gamma1")
        .compose("beta2", "alpha2", "gamma1")
        .compose("beta1", "alpha2", "gamma2")
        .compose("beta2", "alpha1", "gamma2");
    Ok(Arc::new(b.build()?))
}

fn projective_plane() -> Result<Instance> {
    let base = projective_plane_category()?;
    let names = |x: &str, i: usize| format!("{x}{i}");
    let mut e = CategoryBuilder::new();
    for x in ["X", "Y", "Z"] {
        for i in 1..=2 {
            e.object(&names(x, i));
        }
    }
    // arrow `<name><j>^<i>` goes from sheet i to sheet j
    let arrows = [("alpha", "X", "Y"), ("beta", "Y", "Z"), ("gamma", "X", "Z")];
    for (a, x, y) in arrows {
        for i in 1..=2 {
            for j in 1..=2 {
                e.morphism(&format!("{a}{j}^{i}"), &names(x, i), &names(y, j));
            }
        }
    }
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 1..=2 {
                e.compose(&format!("beta{k}^{j}"), &format!("alpha{j}^{i}"), &format!("gamma{k}^{i}"));
            }
        }
    }
    let e = Arc::new(e.build()?);
    let mut obj = Vec::new();
    let mut mor = Vec::new();
    for x in ["X", "Y", "Z"] {
        for i in 1..=2 {
            obj.push((names(x, i), x.to_string()));
            mor.push((format!("id_{x}{i}"), format!("id_{x}")));
        }
    }
    // a Latin square: equal sheet indices go to the first arrow
    for (a, _, _) in arrows {
        for i in 1..=2 {
            for j in 1..=2 {
                mor.push((format!("{a}{j}^{i}"), format!("{a}{}", if i == j { 1 } else { 2 })));
            }
        }
    }
    let raw = RawFunctor { obj_map: obj.into_iter().collect(), mor_map: mor.into_iter().collect() };
    let p = FunctorMap::from_raw(e, base.clone(), &raw)?;
    let pairing = ring_pairing(base.clone(), 2);
    Ok(Instance {
        name: "projective_plane_covering".into(),
        category: base,
        system: Some(pairing.left().clone()),
        pairing: Some(pairing),
        functor: Some(p),
        degree_cap: None,
    })
}
