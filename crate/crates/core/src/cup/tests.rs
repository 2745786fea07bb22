use super::*;
use crate::cochain::ker_generators;
use crate::cochain::pullback_complexes;
use crate::factorization::ring_pairing;
use crate::instances::{load_bundled, projective_plane_category};
use crate::int::{int, ints};

fn f2_plane() -> (Pairing, CochainComplex) {
    let c = projective_plane_category().unwrap();
    let p = ring_pairing(c, 2);
    let cx = CochainComplex::reduced(p.left().clone(), None).unwrap();
    (p, cx)
}

fn mod2(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| x.clone() % int(2)).map(|x| if x < Int::ZERO { x + int(2) } else { x }).collect()
}

#[test]
fn f_cup_f_on_the_projective_plane() {
    let (p, cx) = f2_plane();
    let f = ints(&[1, 0, 0, 1, 1, 0]);
    assert!(cx.cohomology(1).unwrap().is_cocycle(&f));
    let ff = cup_cochain(&p, Cochain::new(&cx, 1, &f), Cochain::new(&cx, 1, &f), &cx).unwrap();
    // lexicographic basis (β₁,α₁), (β₁,α₂), (β₂,α₁), (β₂,α₂)
    assert_eq!(mod2(&ff), ints(&[0, 0, 1, 0]));
    let names: Vec<String> = cx.group(2).unwrap().basis().iter().map(|s| s.describe(cx.base())).collect();
    assert!(names[2].contains("beta2") && names[2].contains("alpha1"));
    let h2 = cx.cohomology(2).unwrap();
    assert!(!h2.is_zero_class(&ff).unwrap());
    let xf = Class { degree: 1, coords: h2_coords(&cx, &f) };
    let sq = cup_classes(&p, &cx, &[xf.clone(), xf]).unwrap();
    assert!(sq.coords.iter().any(|x| !x.is_zero()));
}

fn h2_coords(cx: &CochainComplex, f: &[Int]) -> Vec<Int> {
    cx.cohomology(1).unwrap().class_of(f).unwrap()
}

#[test]
fn cup_with_zero_is_zero() {
    let (p, cx) = f2_plane();
    let f = ints(&[1, 0, 0, 1, 1, 0]);
    let z = vec![Int::ZERO; 6];
    let out = cup_cochain(&p, Cochain::new(&cx, 1, &f), Cochain::new(&cx, 1, &z), &cx).unwrap();
    assert!(cx.group(2).unwrap().group().is_zero(&out));
}

#[test]
fn degree_overflow() {
    let (p, cx) = f2_plane();
    let f = ints(&[1, 0, 0, 1, 1, 0]);
    let r = cup_product(&p, &[Cochain::new(&cx, 1, &f); 4], &cx);
    assert!(matches!(r, Err(Error::DegreeOverflow { .. })));
}

#[test]
fn cup_length_of_sign_system() {
    let s = load_bundled("parallel_arrows_S").unwrap();
    let cx = CochainComplex::reduced(s.system.clone().unwrap(), None).unwrap();
    let cl = cup_length(s.pairing.as_ref().unwrap(), &cx, None).unwrap();
    assert_eq!(cl.value, 1);
    assert!(!cl.lower_bound_only);
}

#[test]
fn cup_length_of_kernels() {
    let d = load_bundled("doblecir_covering").unwrap();
    let p = d.functor.as_ref().unwrap();
    let (from, to) = pullback_complexes(p, d.system.as_ref().unwrap(), None).unwrap();
    let gens: Vec<Vec<Vec<Int>>> =
        (0..=from.top()).map(|n| if n == 0 { vec![] } else { ker_generators(p, &from, &to, n).unwrap() }).collect();
    assert_eq!(cup_length(d.pairing.as_ref().unwrap(), &from, Some(&gens)).unwrap().value, 1);

    let pp = load_bundled("projective_plane_covering").unwrap();
    let p = pp.functor.as_ref().unwrap();
    let (from, to) = pullback_complexes(p, pp.system.as_ref().unwrap(), None).unwrap();
    let gens: Vec<Vec<Vec<Int>>> =
        (0..=from.top()).map(|n| if n == 0 { vec![] } else { ker_generators(p, &from, &to, n).unwrap() }).collect();
    let cl = cup_length(pp.pairing.as_ref().unwrap(), &from, Some(&gens)).unwrap();
    assert_eq!(cl.value, 2);
    assert_eq!(cl.witness.len(), 2);
}

#[test]
fn truncated_cup_length_is_a_lower_bound() {
    let g = load_bundled("groupoid_to_Z2").unwrap();
    let cx = CochainComplex::reduced(g.system.clone().unwrap(), Some(3)).unwrap();
    let cl = cup_length(g.pairing.as_ref().unwrap(), &cx, None).unwrap();
    assert_eq!(cl.value, 3);
    assert!(cl.lower_bound_only);
}

#[test]
fn leibniz_on_the_projective_plane() {
    let (p, cx) = f2_plane();
    let f = ints(&[1, 1, 0, 1, 0, 0]);
    let g0 = ints(&[1, 0, 1]);
    // δ(g0 ⌣ f) = δg0 ⌣ f + g0 ⌣ δf
    let dg0 = cx.coboundary(0).unwrap().apply(&g0);
    let df = cx.coboundary(1).unwrap().apply(&f);
    let lhs = cx
        .coboundary(1)
        .unwrap()
        .apply(&cup_cochain(&p, Cochain::new(&cx, 0, &g0), Cochain::new(&cx, 1, &f), &cx).unwrap());
    let a = cup_cochain(&p, Cochain::new(&cx, 1, &dg0), Cochain::new(&cx, 1, &f), &cx).unwrap();
    let b = cup_cochain(&p, Cochain::new(&cx, 0, &g0), Cochain::new(&cx, 2, &df), &cx).unwrap();
    let rhs: Vec<Int> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    assert!(cx.group(2).unwrap().group().is_zero(&lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect::<Vec<_>>()));
}

#[test]
fn relative_cup_with_empty_pieces_is_absolute() {
    let (p, cx) = f2_plane();
    let c = cx.base().clone();
    let empty = crate::category::Subcategory::empty(c);
    let rel = CochainComplex::relative(p.left().clone(), &empty, None).unwrap();
    let x = Class { degree: 1, coords: h2_coords(&rel, &ints(&[1, 0, 0, 1, 1, 0])) };
    let a = relative_cup(&p, &[(&rel, x.clone()), (&rel, x.clone())], &rel).unwrap();
    let b = cup_classes(&p, &cx, &[x.clone(), x]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn relative_cup_over_a_sectioned_cover_vanishes() {
    let d = load_bundled("doblecir_covering").unwrap();
    let sys = d.system.clone().unwrap();
    let s = d.category.clone();
    let ua = crate::category::Subcategory::by_names(s.clone(), &[], &["alpha"]).unwrap();
    let ub = crate::category::Subcategory::by_names(s.clone(), &[], &["beta"]).unwrap();
    let ra = CochainComplex::relative(sys.clone(), &ua, None).unwrap();
    let rb = CochainComplex::relative(sys.clone(), &ub, None).unwrap();
    let whole = CochainComplex::relative(sys.clone(), &ua.union(&ub).unwrap(), None).unwrap();
    let pairing = d.pairing.as_ref().unwrap();
    for xa in ra.cohomology(1).unwrap().generators() {
        for xb in rb.cohomology(0).unwrap().generators() {
            let ca = Class { degree: 1, coords: ra.cohomology(1).unwrap().class_of(&xa).unwrap() };
            let cb = Class { degree: 0, coords: rb.cohomology(0).unwrap().class_of(&xb).unwrap() };
            let out = relative_cup(pairing, &[(&ra, ca), (&rb, cb)], &whole).unwrap();
            assert!(out.coords.iter().all(|x| x.is_zero()));
        }
    }
    assert!(whole.cohomology(1).unwrap().group().is_trivial());
    let bad = relative_cup(pairing, &[(&ra, Class { degree: 0, coords: vec![] })], &whole);
    assert!(matches!(bad, Err(Error::NotGeometricCover(_))));
}
