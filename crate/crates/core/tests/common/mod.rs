//! Randomized checks shared by the property, oracle and acceptance targets.
//! Each check draws one instance from its seed and returns a description of
//! the first failure.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use catcoh::abelian::{solve, AbGroup, AbHom, CyclicSum, IntMatrix, Subquotient};
use catcoh::category::{product, projections, FinCat, FunctorMap, MorId, ObjId, Subcategory};
use catcoh::cochain::{
    full_complex_cohomology, gamma_map, induced_cohomology_map, pullback_complexes, restriction_map, CochainComplex,
};
use catcoh::cup::{cup_classes, cup_length, cup_product, relative_cup, Class, Cochain};
use catcoh::factorization::{
    induced_hat, pullback_system, ring_pairing, validate_pairing, FactCat, NaturalSystem, Pairing,
};
use catcoh::fibration::{cartesian_lifts, classify, opcartesian_lifts, pullback};
use catcoh::instances::{character_system, characters, cyclic_group, generate_random, random_functor, RandomParams};
use catcoh::int::{int, Int};
use catcoh::secat::{is_geometric_cover, secat, svarc_bound, SectionKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn s(e: catcoh::Error) -> String {
    e.to_string()
}

pub fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

pub fn random_params(r: &mut ChaCha8Rng, max_objects: usize) -> RandomParams {
    let objects = r.gen_range(1..=max_objects);
    RandomParams {
        objects,
        edges: r.gen_range(0..=2 * objects),
        relations: r.gen_range(0..=3),
        acyclic: true,
        loop_order: 2,
        sheets: 0,
    }
}

/// An acyclic random category.
pub fn random_base(seed: u64, max_objects: usize) -> Arc<FinCat> {
    let mut r = rng(seed, 1);
    let p = random_params(&mut r, max_objects);
    generate_random(seed, &p).category
}

/// Coefficients with a natural endopairing.
pub struct Coeffs {
    pub d: Arc<NaturalSystem>,
    pub pairing: Pairing,
    pub label: String,
}

pub fn random_coeffs(r: &mut ChaCha8Rng, c: &Arc<FinCat>, finite: bool) -> Coeffs {
    let choice = r.gen_range(0..3);
    if choice == 2 {
        let nontrivial: Vec<FunctorMap> =
            characters(c).into_iter().filter(|e| c.morphisms().any(|m| e.mor(m) != 0)).collect();
        if let Some(eps) = nontrivial.choose(r) {
            let m = *[0u64, 3, 4].choose(r).unwrap();
            let m = if finite && m == 0 { 2 } else { m };
            let (d, pairing) = character_system(c, eps, m).expect("character system");
            return Coeffs { d, pairing, label: format!("twisted Z/{m}") };
        }
    }
    let m = if choice == 0 && !finite { 0 } else { *[2u64, 3, 4, 6].choose(r).unwrap() };
    let pairing = ring_pairing(c.clone(), m);
    Coeffs { d: pairing.left().clone(), pairing, label: format!("constant Z/{m}") }
}

pub fn random_element(r: &mut ChaCha8Rng, g: &CyclicSum) -> Vec<Int> {
    g.reduce(&(0..g.dim()).map(|_| int(r.gen_range(-3..=3))).collect::<Vec<_>>())
}

fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(k: i64, a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| int(k) * x).collect()
}

fn equal_in(g: &CyclicSum, a: &[Int], b: &[Int]) -> bool {
    g.is_zero(&sub(a, b))
}

/// Two maps with the same source and target agree on every generator.
fn same_hom(a: &AbHom, b: &AbHom) -> bool {
    a.matrix().cols() == b.matrix().cols()
        && (0..a.matrix().cols()).all(|j| equal_in(a.target(), &a.matrix().column(j), &b.matrix().column(j)))
}

pub fn random_subcategory(r: &mut ChaCha8Rng, c: &Arc<FinCat>, density: f64) -> Subcategory {
    let objs: Vec<ObjId> = c.objects().filter(|_| r.gen_bool(density)).collect();
    let mors: Vec<MorId> = c.non_identities().filter(|_| r.gen_bool(density)).collect();
    let mut u = Subcategory::generated_by(c.clone(), objs, mors);
    if u.is_empty() {
        u = Subcategory::generated_by(c.clone(), [r.gen_range(0..c.n_objects())], []);
    }
    u
}

// ---------------------------------------------------------------- complexes

pub fn delta_squared(seed: u64) -> Check {
    let mut r = rng(seed, 2);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    let reduced = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    let full = CochainComplex::full(k.d.clone(), reduced.top()).map_err(s)?;
    for cx in [&reduced, &full] {
        for n in 0..cx.top() {
            let a = cx.coboundary(n).map_err(s)?;
            let b = cx.coboundary(n + 1).map_err(s)?;
            let prod: IntMatrix = b.matrix().mul(a.matrix());
            let target = cx.group(n + 2).map_err(s)?.group();
            for j in 0..prod.cols() {
                ensure!(target.is_zero(&prod.column(j)), "{}: δδ ≠ 0 in degree {n}", k.label);
            }
        }
    }
    Ok(())
}

pub fn reduced_matches_full(seed: u64) -> Check {
    let mut r = rng(seed, 3);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    let reduced = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    for n in 0..=reduced.top() {
        let a = reduced.cohomology(n).map_err(s)?.group().clone();
        let b = full_complex_cohomology(&k.d, n).map_err(s)?.group().clone();
        ensure!(a == b, "{}: H^{n} reduced {a} vs full {b}", k.label);
    }
    Ok(())
}

fn cochain<'a>(cx: &'a CochainComplex, n: usize, v: &'a [Int]) -> Cochain<'a> {
    Cochain::new(cx, n, v)
}

fn delta(cx: &CochainComplex, n: usize, f: &[Int]) -> Result<Vec<Int>, String> {
    Ok(cx.coboundary(n).map_err(s)?.apply(f))
}

pub fn leibniz(seed: u64) -> Check {
    let mut r = rng(seed, 4);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    let cx = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    let top = cx.top();
    for p in 0..=top {
        for q in 0..=top - p {
            let f = random_element(&mut r, cx.group(p).map_err(s)?.group());
            let g = random_element(&mut r, cx.group(q).map_err(s)?.group());
            let fg = cup_product(&k.pairing, &[cochain(&cx, p, &f), cochain(&cx, q, &g)], &cx).map_err(s)?;
            let lhs = delta(&cx, p + q, &fg)?;
            let (df, dg) = (delta(&cx, p, &f)?, delta(&cx, q, &g)?);
            let a = cup_product(&k.pairing, &[cochain(&cx, p + 1, &df), cochain(&cx, q, &g)], &cx).map_err(s)?;
            let b = cup_product(&k.pairing, &[cochain(&cx, p, &f), cochain(&cx, q + 1, &dg)], &cx).map_err(s)?;
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let rhs = add(&a, &scale(sign, &b));
            let out = cx.group(p + q + 1).map_err(s)?.group();
            ensure!(equal_in(out, &lhs, &rhs), "{}: Leibniz fails for degrees ({p},{q})", k.label);
        }
    }
    Ok(())
}

pub fn iterated_leibniz(seed: u64) -> Check {
    let mut r = rng(seed, 5);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    let cx = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    let top = cx.top();
    for _ in 0..4 {
        let mut degs = [0usize; 3];
        let mut left = top;
        for d in degs.iter_mut() {
            *d = r.gen_range(0..=left);
            left -= *d;
        }
        degs.shuffle(&mut r);
        let fs: Vec<Vec<Int>> = degs.iter().map(|&m| random_element(&mut r, cx.group(m).unwrap().group())).collect();
        let all: Vec<Cochain<'_>> = degs.iter().zip(&fs).map(|(&m, f)| cochain(&cx, m, f)).collect();
        let total: usize = degs.iter().sum();
        let prod = cup_product(&k.pairing, &all, &cx).map_err(s)?;
        // associativity against two binary products
        let f01 = cup_product(&k.pairing, &all[..2], &cx).map_err(s)?;
        let nested = cup_product(&k.pairing, &[cochain(&cx, degs[0] + degs[1], &f01), all[2]], &cx).map_err(s)?;
        let out = cx.group(total).map_err(s)?.group();
        ensure!(equal_in(out, &prod, &nested), "{}: triple product is not associative", k.label);
        let lhs = delta(&cx, total, &prod)?;
        let mut rhs = cx.group(total + 1).map_err(s)?.group().zero();
        let mut n_i = 0;
        for i in 0..3 {
            let di = delta(&cx, degs[i], &fs[i])?;
            let mut factors = all.clone();
            factors[i] = cochain(&cx, degs[i] + 1, &di);
            let term = cup_product(&k.pairing, &factors, &cx).map_err(s)?;
            rhs = add(&rhs, &scale(if n_i % 2 == 0 { 1 } else { -1 }, &term));
            n_i += degs[i];
        }
        let out = cx.group(total + 1).map_err(s)?.group();
        ensure!(equal_in(out, &lhs, &rhs), "{}: iterated Leibniz fails for degrees {degs:?}", k.label);
    }
    Ok(())
}

/// `(G∘F)* = F*∘G*` on cohomology and `(G∘F)^ = G^∘F^` on factorizations.
pub fn functoriality(seed: u64) -> Check {
    let mut r = rng(seed, 6);
    let cc = random_base(seed, 5);
    let b = random_base(seed.wrapping_add(1_000_003), 4);
    let a = random_base(seed.wrapping_add(2_000_003), 3);
    let g = random_functor(seed, &b, &cc, 64).ok_or("no functor B -> C")?;
    let f = random_functor(seed ^ 1, &a, &b, 64).ok_or("no functor A -> B")?;
    let gf = g.compose(&f).map_err(s)?;

    let (fa, fb, fc) = (FactCat::new(a.clone()), FactCat::new(b.clone()), FactCat::new(cc.clone()));
    let hat_gf = induced_hat(&gf, &fa, &fc);
    let hat = induced_hat(&g, &fb, &fc).compose(&induced_hat(&f, &fa, &fb)).map_err(s)?;
    ensure!(hat_gf.mor_map() == hat.mor_map() && hat_gf.obj_map() == hat.obj_map(), "(G∘F)^ ≠ G^∘F^");

    let k = random_coeffs(&mut r, &cc, false);
    let gd = Arc::new(pullback_system(&g, &k.d).map_err(s)?);
    let fgd = Arc::new(pullback_system(&f, &gd).map_err(s)?);
    let gfd = Arc::new(pullback_system(&gf, &k.d).map_err(s)?);
    ensure!(fgd == gfd, "F*(G*D) and (G∘F)*D differ");

    let cap = [&a, &b, &cc].iter().map(|x| x.nerve_dimension().unwrap_or(0)).min().unwrap_or(0);
    let cx_c = CochainComplex::reduced(k.d.clone(), Some(cap)).map_err(s)?;
    let cx_b = CochainComplex::reduced(gd, Some(cap)).map_err(s)?;
    let cx_a = CochainComplex::reduced(fgd, Some(cap)).map_err(s)?;
    let cx_a2 = CochainComplex::reduced(gfd, Some(cap)).map_err(s)?;
    for n in 0..=cap {
        let mg = induced_cohomology_map(&g, &cx_c, &cx_b, n).map_err(s)?;
        let mf = induced_cohomology_map(&f, &cx_b, &cx_a, n).map_err(s)?;
        let mgf = induced_cohomology_map(&gf, &cx_c, &cx_a2, n).map_err(s)?;
        let composite = mf.compose(&mg).map_err(s)?;
        ensure!(same_hom(&mgf, &composite), "{}: (G∘F)* ≠ F*∘G* in degree {n}", k.label);
    }
    Ok(())
}

/// The three pairing identities on random elements of every applicable
/// triple, independent of the generator check in the library.
pub fn pairing_identities(seed: u64) -> Check {
    let mut r = rng(seed, 7);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    validate_pairing(&k.pairing).map_err(s)?;
    let (d, p) = (&k.d, &k.pairing);
    let el = |r: &mut ChaCha8Rng, l: MorId| random_element(r, d.value(l));
    for l1 in c.morphisms() {
        // (g^* x)·y = x·(g_* y)
        let x = el(&mut r, l1);
        for g in c.into_obj(c.dom(l1)).collect::<Vec<_>>() {
            for l3 in c.into_obj(c.dom(g)).collect::<Vec<_>>() {
                let y = el(&mut r, l3);
                let lhs = p.multiply(c.comp(l1, g), l3, &d.pull(g, l1).apply(&x), &y);
                let rhs = p.multiply(l1, c.comp(g, l3), &x, &d.push(g, l3).apply(&y));
                let out = d.value(c.comp_all(&[l1, g, l3]));
                ensure!(equal_in(out, &lhs, &rhs), "{}: identity (1) fails", k.label);
            }
        }
        for l2 in c.into_obj(c.dom(l1)).collect::<Vec<_>>() {
            let l12 = c.comp(l1, l2);
            let (x, y) = (el(&mut r, l1), el(&mut r, l2));
            let xy = p.multiply(l1, l2, &x, &y);
            for f in c.out_of(c.cod(l1)).collect::<Vec<_>>() {
                let lhs = d.push(f, l12).apply(&xy);
                let rhs = p.multiply(c.comp(f, l1), l2, &d.push(f, l1).apply(&x), &y);
                ensure!(equal_in(d.value(c.comp(f, l12)), &lhs, &rhs), "{}: identity (2) fails", k.label);
            }
            for h in c.into_obj(c.dom(l2)).collect::<Vec<_>>() {
                let lhs = d.pull(h, l12).apply(&xy);
                let rhs = p.multiply(l1, c.comp(l2, h), &x, &d.pull(h, l2).apply(&y));
                ensure!(equal_in(d.value(c.comp(l12, h)), &lhs, &rhs), "{}: identity (3) fails", k.label);
            }
        }
    }
    Ok(())
}

/// `im γ = ker ι*` in every degree.
pub fn exactness(seed: u64) -> Check {
    let mut r = rng(seed, 8);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    let cx = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    let density = *[0.3, 0.6].choose(&mut r).unwrap();
    let u = random_subcategory(&mut r, &c, density);
    let rel = CochainComplex::relative(k.d.clone(), &u, Some(cx.top())).map_err(s)?;
    for n in 0..=cx.top() {
        let gamma = gamma_map(&rel, &cx, n).map_err(s)?;
        let (iota, _) = restriction_map(&cx, &u, n).map_err(s)?;
        let both = iota.compose(&gamma).map_err(s)?;
        for j in 0..both.matrix().cols() {
            ensure!(both.target().is_zero(&both.matrix().column(j)), "{}: ι*∘γ ≠ 0 in degree {n}", k.label);
        }
        for x in catcoh::abelian::kernel_of_subquotient_map(&iota) {
            ensure!(solve(&gamma, &x).is_some(), "{}: ker ι* ⊄ im γ in degree {n} on {}", k.label, u.describe());
        }
    }
    Ok(())
}

fn random_class(r: &mut ChaCha8Rng, cx: &CochainComplex, n: usize) -> Result<Vec<Int>, String> {
    Ok(random_element(r, &cx.cohomology(n).map_err(s)?.group().presentation()))
}

/// `γ(ξ₀ ⌣ ξ₁) = γ₀(ξ₀) ⌣ γ₁(ξ₁)` for relative classes on a geometric cover.
pub fn relative_naturality(seed: u64) -> Check {
    let mut r = rng(seed, 9);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    let cx = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    let top = cx.top();
    let u0 = random_subcategory(&mut r, &c, 0.5);
    let mut u1 = random_subcategory(&mut r, &c, 0.5);
    let mut union = u0.union(&u1).map_err(s)?;
    let mut tries = 0;
    while !is_geometric_cover(&[u0.clone(), u1.clone()], &union).map_err(s)? {
        tries += 1;
        u1 = if tries < 8 {
            random_subcategory(&mut r, &c, 0.5)
        } else {
            let keep: Vec<MorId> = u0.morphisms().iter().copied().filter(|_| r.gen_bool(0.5)).collect();
            Subcategory::generated_by(c.clone(), [], keep)
        };
        union = u0.union(&u1).map_err(s)?;
    }
    let rel0 = CochainComplex::relative(k.d.clone(), &u0, Some(top)).map_err(s)?;
    let rel1 = CochainComplex::relative(k.d.clone(), &u1, Some(top)).map_err(s)?;
    let rel = CochainComplex::relative(k.d.clone(), &union, Some(top)).map_err(s)?;
    for p in 0..=top {
        for q in 0..=top - p {
            let x0 = random_class(&mut r, &rel0, p)?;
            let x1 = random_class(&mut r, &rel1, q)?;
            let prod = relative_cup(
                &k.pairing,
                &[(&rel0, Class { degree: p, coords: x0.clone() }), (&rel1, Class { degree: q, coords: x1.clone() })],
                &rel,
            )
            .map_err(s)?;
            let lhs = gamma_map(&rel, &cx, p + q).map_err(s)?.apply(&prod.coords);
            let g0 = gamma_map(&rel0, &cx, p).map_err(s)?.apply(&x0);
            let g1 = gamma_map(&rel1, &cx, q).map_err(s)?.apply(&x1);
            let rhs = cup_classes(&k.pairing, &cx, &[Class { degree: p, coords: g0 }, Class { degree: q, coords: g1 }])
                .map_err(s)?;
            let h = cx.cohomology(p + q).map_err(s)?.group().presentation();
            ensure!(equal_in(&h, &lhs, &rhs.coords), "{}: γ(ξ₀⌣ξ₁) ≠ γ₀ξ₀⌣γ₁ξ₁ in degrees ({p},{q})", k.label);
        }
    }
    Ok(())
}

/// Products of classes do not depend on the chosen representatives.
pub fn representative_independence(seed: u64) -> Check {
    let mut r = rng(seed, 10);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, false);
    let cx = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    let top = cx.top();
    for p in 0..=top {
        for q in 0..=top - p {
            let x = Class { degree: p, coords: random_class(&mut r, &cx, p)? };
            let y = Class { degree: q, coords: random_class(&mut r, &cx, q)? };
            let expected = cup_classes(&k.pairing, &cx, &[x.clone(), y.clone()]).map_err(s)?;
            let perturb = |r: &mut ChaCha8Rng, z: &Class| -> Result<Vec<Int>, String> {
                let rep = cx.cohomology(z.degree).map_err(s)?.representative(&z.coords);
                if z.degree == 0 {
                    return Ok(rep);
                }
                let b = random_element(r, cx.group(z.degree - 1).map_err(s)?.group());
                Ok(add(&rep, &delta(&cx, z.degree - 1, &b)?))
            };
            let (rx, ry) = (perturb(&mut r, &x)?, perturb(&mut r, &y)?);
            let z = cup_product(&k.pairing, &[cochain(&cx, p, &rx), cochain(&cx, q, &ry)], &cx).map_err(s)?;
            let got = cx.cohomology(p + q).map_err(s)?.class_of(&z).map_err(s)?;
            let h = cx.cohomology(p + q).map_err(s)?.group().presentation();
            ensure!(equal_in(&h, &got, &expected.coords), "{}: product depends on representatives", k.label);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- fibrations

/// A bifibration drawn from the seed: a covering (category of elements of a
/// random action) or a projection off a product.
pub fn random_bifibration(seed: u64, max_source_objects: usize) -> FunctorMap {
    let mut r = rng(seed, 11);
    loop {
        let mut p = random_params(&mut r, 4);
        if r.gen_bool(0.6) {
            p.sheets = r.gen_range(1..=3);
            p.objects = p.objects.min(max_source_objects / p.sheets).max(1);
            let inst = generate_random(r.gen(), &p);
            return inst.functor.expect("covering");
        }
        p.objects = p.objects.min(max_source_objects / 2).max(1);
        let base = generate_random(r.gen(), &p).category;
        let fiber = if r.gen_bool(0.5) {
            Arc::new(cyclic_group(2))
        } else {
            generate_random(r.gen(), &RandomParams { objects: 2, edges: r.gen_range(0..=2), ..Default::default() })
                .category
        };
        if base.n_objects() * fiber.n_objects() > max_source_objects {
            continue;
        }
        let total = Arc::new(product(&base, &fiber));
        return projections(&base, &fiber, &total).0;
    }
}

/// Unique lifting of every base arrow from every object over its domain and
/// into every object over its codomain.
fn covering_oracle(p: &FunctorMap) -> bool {
    let (e, b) = (p.source(), p.target());
    b.morphisms().all(|phi| {
        e.objects().all(|x| {
            let from = e.out_of(x).filter(|&m| p.mor(m) == phi).count();
            let into = e.into_obj(x).filter(|&m| p.mor(m) == phi).count();
            (p.obj(x) != b.dom(phi) || from == 1) && (p.obj(x) != b.cod(phi) || into == 1)
        })
    })
}

pub fn covering_is_bifibration(seed: u64) -> Check {
    let mut r = rng(seed, 12);
    let mut params = random_params(&mut r, 4);
    params.sheets = r.gen_range(1..=3);
    params.acyclic = r.gen_bool(0.7);
    params.loop_order = r.gen_range(2..=3);
    let inst = generate_random(seed, &params);
    let p = inst.functor.as_ref().expect("covering");
    let report = classify(p);
    ensure!(covering_oracle(p), "generated functor fails the unique-lifting oracle");
    ensure!(report.is_covering, "classify does not see a covering");
    ensure!(report.is_bifibration(), "covering is not a bifibration: {:?}", report.fibration_witnesses);
    Ok(())
}

pub fn pullback_of_bifibration(seed: u64) -> Check {
    let mut r = rng(seed, 13);
    let p = random_bifibration(seed, 8);
    let b2 = random_base(seed.wrapping_add(77), 3);
    let f = random_functor(r.gen(), &b2, p.target(), 64).ok_or("no functor into the base")?;
    let (_, p2, f2) = pullback(&p, &f).map_err(s)?;
    let lhs = p.compose(&f2).map_err(s)?;
    let rhs = f.compose(&p2).map_err(s)?;
    ensure!(lhs.obj_map() == rhs.obj_map() && lhs.mor_map() == rhs.mor_map(), "pullback square does not commute");
    ensure!(classify(&p).is_bifibration(), "generated functor is not a bifibration");
    ensure!(classify(&p2).is_bifibration(), "pullback of a bifibration is not a bifibration");
    Ok(())
}

fn vertical_fillers(p: &FunctorMap, a: MorId, b: MorId, cartesian: bool) -> Vec<MorId> {
    let e = p.source();
    let (x, y) = if cartesian { (e.dom(a), e.dom(b)) } else { (e.cod(a), e.cod(b)) };
    let id = p.target().identity(p.obj(x));
    e.hom(x, y)
        .iter()
        .copied()
        .filter(|&t| p.mor(t) == id)
        .filter(|&t| if cartesian { e.compose(b, t) == Some(a) } else { e.compose(t, b) == Some(a) })
        .collect()
}

fn is_iso(e: &FinCat, t: MorId) -> bool {
    e.hom(e.cod(t), e.dom(t))
        .iter()
        .any(|&u| e.comp(u, t) == e.identity(e.dom(t)) && e.comp(t, u) == e.identity(e.cod(t)))
}

/// Any two (op-)Cartesian lifts of the same problem differ by exactly one
/// vertical arrow, and it is invertible.
pub fn lift_uniqueness(seed: u64) -> Check {
    let mut r = rng(seed, 14);
    let p = if r.gen_bool(0.3) {
        let e = random_base(seed, 5);
        let b = random_base(seed.wrapping_add(5), 3);
        random_functor(r.gen(), &e, &b, 64).ok_or("no functor")?
    } else {
        random_bifibration(seed, 10)
    };
    let (e, b) = (p.source(), p.target());
    for phi in b.morphisms() {
        for x in e.objects() {
            if p.obj(x) == b.cod(phi) {
                let lifts = cartesian_lifts(&p, phi, x);
                for &l1 in &lifts {
                    for &l2 in &lifts {
                        let t = vertical_fillers(&p, l1, l2, true);
                        ensure!(t.len() == 1, "{} vertical fillers between Cartesian lifts", t.len());
                        ensure!(is_iso(e, t[0]), "comparison of Cartesian lifts is not invertible");
                    }
                }
            }
            if p.obj(x) == b.dom(phi) {
                let lifts = opcartesian_lifts(&p, phi, x);
                for &l1 in &lifts {
                    for &l2 in &lifts {
                        let t = vertical_fillers(&p, l1, l2, false);
                        ensure!(t.len() == 1, "{} vertical fillers between op-Cartesian lifts", t.len());
                        ensure!(is_iso(e, t[0]), "comparison of op-Cartesian lifts is not invertible");
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn genus_equals_secat(seed: u64) -> Check {
    let p = random_bifibration(seed, 8);
    ensure!(p.source().n_objects() <= 8, "source too large");
    let strict = secat(&p, SectionKind::Strict).map_err(s)?;
    let homotopic = secat(&p, SectionKind::Homotopic).map_err(s)?;
    ensure!(strict.value == homotopic.value, "Sg = {} but sc = {}", homotopic.display_value(), strict.display_value());
    if let Some(cert) = &strict.certificate {
        ensure!(
            is_geometric_cover(&cert.pieces, &Subcategory::whole(p.target().clone())).map_err(s)?,
            "certificate does not cover"
        );
    }
    Ok(())
}

pub fn svarc_inequality(seed: u64) -> Check {
    let mut r = rng(seed, 15);
    let p = random_bifibration(seed, 8);
    let k = random_coeffs(&mut r, p.target(), false);
    let b = svarc_bound(&p, &k.d, &k.pairing, None).map_err(s)?;
    ensure!(b.holds, "{}: cpl(ker P*) = {} exceeds Sg = {}", k.label, b.cup_length.value, b.genus.display_value());
    Ok(())
}

// ---------------------------------------------------------------- oracles

fn all_elements(moduli: &[u64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &m in moduli {
        out = out.into_iter().flat_map(|v| (0..m as i64).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn reduce_i(v: &[i64], moduli: &[u64]) -> Vec<i64> {
    v.iter().zip(moduli).map(|(x, &m)| x.rem_euclid(m as i64)).collect()
}

fn span(gens: &[Vec<i64>], moduli: &[u64]) -> HashSet<Vec<i64>> {
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    let zero = vec![0; moduli.len()];
    set.insert(zero.clone());
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = reduce_i(&x.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>(), moduli);
            if set.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    set
}

/// Histogram of element orders; it determines a finite abelian group.
fn order_profile(elements: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for o in elements {
        *h.entry(o).or_insert(0) += 1;
    }
    h
}

fn group_profile(g: &AbGroup) -> BTreeMap<usize, usize> {
    let moduli: Vec<u64> = g.torsion.iter().map(|d| catcoh::int::to_i64(d).unwrap() as u64).collect();
    order_profile(
        all_elements(&moduli)
            .into_iter()
            .map(|x| (1..).find(|&k| x.iter().zip(&moduli).all(|(v, &m)| (k * v) % m as i64 == 0)).unwrap() as usize),
    )
}

/// Subquotients of a random finite ambient group against brute force.
pub fn subquotient_oracle(seed: u64) -> Check {
    let mut r = rng(seed, 16);
    let moduli: Vec<u64> = loop {
        let n = r.gen_range(1..=3);
        let m: Vec<u64> = (0..n).map(|_| r.gen_range(2..=8)).collect();
        if m.iter().product::<u64>() <= 64 {
            break m;
        }
    };
    let n = moduli.len();
    let ambient = CyclicSum::new(moduli.iter().map(|&m| int(m as i64)).collect()).map_err(s)?;
    let num_cols: Vec<Vec<i64>> =
        (0..r.gen_range(0..=3)).map(|_| (0..n).map(|_| r.gen_range(-8..=8)).collect()).collect();
    let den_cols: Vec<Vec<i64>> = (0..r.gen_range(0..=3))
        .map(|_| {
            let w: Vec<i64> = num_cols.iter().map(|_| r.gen_range(-3..=3)).collect();
            (0..n).map(|i| num_cols.iter().zip(&w).map(|(c, k)| c[i] * k).sum::<i64>()).collect()
        })
        .collect();
    let to_matrix = |cols: &[Vec<i64>]| {
        IntMatrix::from_columns(n, &cols.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    };
    let sq = Subquotient::new(&ambient, &to_matrix(&num_cols), &to_matrix(&den_cols)).map_err(s)?;
    let reduced = |cols: &[Vec<i64>]| cols.iter().map(|c| reduce_i(c, &moduli)).collect::<Vec<_>>();
    let num = span(&reduced(&num_cols), &moduli);
    let den = span(&reduced(&den_cols), &moduli);
    ensure!(sq.group().rank == 0, "finite subquotient reported free rank");
    let order = sq.group().order().and_then(|o| catcoh::int::to_i64(&o)).unwrap_or(-1);
    ensure!(order as usize * den.len() == num.len(), "order {order} but |num|/|den| = {}/{}", num.len(), den.len());
    for x in all_elements(&moduli) {
        let xi: Vec<Int> = x.iter().map(|&v| int(v)).collect();
        ensure!(sq.contains(&xi) == num.contains(&x), "membership of {x:?} in the numerator");
        if num.contains(&x) {
            ensure!(sq.element_is_zero(&xi).map_err(s)? == den.contains(&x), "element_is_zero({x:?})");
        }
    }
    let profile = order_profile(
        num.iter().map(|x| (1..).find(|&k| den.contains(&reduce_i(&scale_i(k, x), &moduli))).unwrap() as usize),
    );
    // every coset is counted |den| times
    let profile: BTreeMap<usize, usize> = profile.into_iter().map(|(o, c)| (o, c / den.len())).collect();
    ensure!(profile == group_profile(sq.group()), "{} has the wrong isomorphism type", sq.group());
    for _ in 0..4 {
        let coords = random_element(&mut r, &sq.group().presentation());
        let back = sq.reduce(&sq.lift(&coords)).map_err(s)?;
        ensure!(back == coords, "reduce(lift(x)) ≠ x");
    }
    Ok(())
}

fn scale_i(k: i64, x: &[i64]) -> Vec<i64> {
    x.iter().map(|v| k * v).collect()
}

/// Every composable chain of length at most six inside `scope`.
fn chains_up_to(c: &FinCat, scope: &Subcategory, max: usize) -> Vec<Vec<MorId>> {
    let arrows: Vec<MorId> = scope.morphisms().iter().copied().collect();
    let mut level: Vec<Vec<MorId>> = arrows.iter().map(|&m| vec![m]).collect();
    let mut all = level.clone();
    for _ in 1..max {
        level = level
            .iter()
            .flat_map(|ch| {
                let last = *ch.last().unwrap();
                arrows.iter().filter(move |&&m| c.cod(m) == c.dom(last)).map(move |&m| [ch.clone(), vec![m]].concat())
            })
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

pub fn geometric_cover_oracle(seed: u64) -> Check {
    let mut r = rng(seed, 17);
    let c = random_base(seed, 5);
    let density = *[0.4, 0.7, 0.9].choose(&mut r).unwrap();
    let pieces: Vec<Subcategory> = (0..r.gen_range(1..=4)).map(|_| random_subcategory(&mut r, &c, density)).collect();
    let mut union = Subcategory::empty(c.clone());
    for u in &pieces {
        union = union.union(u).map_err(s)?;
    }
    for scope in [union, Subcategory::whole(c.clone())] {
        let brute = chains_up_to(&c, &scope, 6)
            .iter()
            .all(|ch| pieces.iter().any(|u| ch.iter().all(|m| u.contains_morphism(*m))));
        let fast = is_geometric_cover(&pieces, &scope).map_err(s)?;
        ensure!(brute == fast, "is_geometric_cover = {fast}, brute force = {brute} on {}", scope.describe());
    }
    Ok(())
}

fn elements_of(g: &AbGroup) -> Vec<Vec<Int>> {
    let moduli: Vec<u64> = g.torsion.iter().map(|d| catcoh::int::to_i64(d).unwrap() as u64).collect();
    all_elements(&moduli).into_iter().map(|x| x.into_iter().map(int).collect()).collect()
}

fn subgroup_elements(gens: &[Vec<Int>], g: &AbGroup) -> Vec<Vec<Int>> {
    let moduli: Vec<u64> = g.torsion.iter().map(|d| catcoh::int::to_i64(d).unwrap() as u64).collect();
    let gens: Vec<Vec<i64>> =
        gens.iter().map(|v| v.iter().map(|x| catcoh::int::to_i64(x).unwrap()).collect()).collect();
    let mut out: Vec<Vec<i64>> = span(&gens, &moduli).into_iter().collect();
    out.sort();
    out.into_iter().map(|x| x.into_iter().map(int).collect()).collect()
}

/// Longest nonzero product over all classes of the given sets.
fn brute_cup_length(p: &Pairing, cx: &CochainComplex, classes: &[Vec<Vec<Int>>]) -> Result<usize, String> {
    let nonzero: Vec<Class> = classes
        .iter()
        .enumerate()
        .skip(1)
        .flat_map(|(k, xs)| xs.iter().map(move |x| Class { degree: k, coords: x.clone() }))
        .filter(|x| x.coords.iter().any(|v| !v.is_zero()))
        .collect();
    let mut level: BTreeSet<(usize, Vec<Int>)> = nonzero.iter().map(|x| (x.degree, x.coords.clone())).collect();
    let mut len = 0;
    while !level.is_empty() {
        len += 1;
        let mut next = BTreeSet::new();
        for (d, x) in &level {
            for y in &nonzero {
                if d + y.degree > cx.top() {
                    continue;
                }
                let z = cup_classes(p, cx, &[Class { degree: *d, coords: x.clone() }, y.clone()]).map_err(s)?;
                if z.coords.iter().any(|v| !v.is_zero()) {
                    next.insert((z.degree, z.coords));
                }
            }
        }
        level = next;
    }
    Ok(len)
}

/// Largest order of a positive-degree cohomology group for the oracle.
pub const CUP_ORACLE_MAX_ORDER: i64 = 8;

/// Compares the generator search with a search over all classes, on the
/// whole cohomology and on random subgroups. Returns whether the instance
/// was small enough to compare.
pub fn cup_length_oracle_on(p: &Pairing, cx: &CochainComplex, r: &mut ChaCha8Rng) -> Result<bool, String> {
    let mut groups = Vec::new();
    for k in 0..=cx.top() {
        let g = cx.cohomology(k).map_err(s)?.group().clone();
        let small = g.order().and_then(|o| catcoh::int::to_i64(&o)).is_some_and(|o| o <= CUP_ORACLE_MAX_ORDER);
        if k > 0 && !small {
            return Ok(false);
        }
        groups.push(g);
    }
    let all: Vec<Vec<Vec<Int>>> =
        groups.iter().enumerate().map(|(k, g)| if k == 0 { Vec::new() } else { elements_of(g) }).collect();
    let fast = cup_length(p, cx, None).map_err(s)?;
    let brute = brute_cup_length(p, cx, &all)?;
    ensure!(fast.value == brute, "cup-length {} but all-class search gives {brute}", fast.value);

    // a random subgroup in each degree
    let mut gens: Vec<Vec<Vec<Int>>> = vec![Vec::new(); groups.len()];
    let mut sub: Vec<Vec<Vec<Int>>> = vec![Vec::new(); groups.len()];
    for k in 1..groups.len() {
        let pres = groups[k].presentation();
        let coords: Vec<Vec<Int>> = (0..r.gen_range(0..=2)).map(|_| random_element(r, &pres)).collect();
        let h = cx.cohomology(k).map_err(s)?;
        gens[k] = coords.iter().map(|x| h.representative(x)).collect();
        sub[k] = subgroup_elements(&coords, &groups[k]);
    }
    let fast = cup_length(p, cx, Some(&gens)).map_err(s)?;
    let brute = brute_cup_length(p, cx, &sub)?;
    ensure!(fast.value == brute, "restricted cup-length {} but all-class search gives {brute}", fast.value);
    Ok(true)
}

pub fn cup_length_oracle(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed, 18);
    let c = random_base(seed, 5);
    let k = random_coeffs(&mut r, &c, true);
    let cx = CochainComplex::reduced(k.d.clone(), None).map_err(s)?;
    cup_length_oracle_on(&k.pairing, &cx, &mut r)
}

/// The kernel of `P*` for a random covering, against all classes of the kernel.
pub fn kernel_cup_length_oracle(seed: u64) -> Result<bool, String> {
    let mut r = rng(seed, 19);
    let p = random_bifibration(seed, 8);
    let k = random_coeffs(&mut r, p.target(), true);
    let (from, to) = pullback_complexes(&p, &k.d, None).map_err(s)?;
    let mut gens = vec![Vec::new(); from.top() + 1];
    let mut sub = vec![Vec::new(); from.top() + 1];
    for n in 1..=from.top() {
        let h = from.cohomology(n).map_err(s)?;
        let g = h.group().clone();
        if !g.order().and_then(|o| catcoh::int::to_i64(&o)).is_some_and(|o| o <= CUP_ORACLE_MAX_ORDER) {
            return Ok(false);
        }
        let map = induced_cohomology_map(&p, &from, &to, n).map_err(s)?;
        let kernel = catcoh::abelian::kernel_of_subquotient_map(&map);
        gens[n] = kernel.iter().map(|x| h.representative(x)).collect();
        sub[n] = subgroup_elements(&kernel, &g);
    }
    let fast = cup_length(&k.pairing, &from, Some(&gens)).map_err(s)?;
    let brute = brute_cup_length(&k.pairing, &from, &sub)?;
    ensure!(fast.value == brute, "cpl(ker P*) {} but all-class search gives {brute}", fast.value);
    Ok(true)
}

/// Runs `check` on `seeds` and returns the failures.
pub fn failures(seeds: std::ops::Range<u64>, check: impl Fn(u64) -> Check) -> Vec<(u64, String)> {
    seeds.filter_map(|seed| check(seed).err().map(|e| (seed, e))).collect()
}
