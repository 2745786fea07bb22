use super::*;
use crate::factorization::ring_pairing;
use crate::instances::{load_bundled, projective_plane_category};

fn functor_of(name: &str) -> FunctorMap {
    load_bundled(name).unwrap().functor.unwrap()
}

#[test]
fn doblecir_sections() {
    let p = functor_of("doblecir_covering");
    let s = p.target().clone();
    let ua = Subcategory::by_names(s.clone(), &[], &["alpha"]).unwrap();
    assert!(first_section(&p, &ua, SectionKind::Strict).unwrap().is_some());
    assert_eq!(all_sections(&p, &ua, SectionKind::Strict).unwrap().len(), 2);
    assert!(first_section(&p, &Subcategory::whole(s), SectionKind::Strict).unwrap().is_none());
}

#[test]
fn groupoid_has_no_global_section() {
    let p = functor_of("groupoid_to_Z2");
    let whole = Subcategory::whole(p.target().clone());
    assert!(all_sections(&p, &whole, SectionKind::Strict).unwrap().is_empty());
    assert!(all_sections(&p, &whole, SectionKind::Homotopic).unwrap().is_empty());
}

#[test]
fn secat_of_bundled_coverings() {
    let d = secat(&functor_of("doblecir_covering"), SectionKind::Strict).unwrap();
    assert_eq!(d.value, Some(1));
    let cert = d.certificate.unwrap();
    assert_eq!(cert.pieces.len(), 2);
    assert!(is_geometric_cover(&cert.pieces, &Subcategory::whole(cert.pieces[0].parent().clone())).unwrap());

    let g = secat(&functor_of("groupoid_to_Z2"), SectionKind::Strict).unwrap();
    assert_eq!(g.value, None);
    assert_eq!(g.display_value(), "infinite");

    let pp = secat(&functor_of("projective_plane_covering"), SectionKind::Strict).unwrap();
    assert_eq!(pp.value, Some(3));
}

#[test]
fn homotopic_genus_agrees() {
    for name in ["doblecir_covering", "groupoid_to_Z2", "projective_plane_covering"] {
        let p = functor_of(name);
        let strict = secat(&p, SectionKind::Strict).unwrap().value;
        let homotopic = secat(&p, SectionKind::Homotopic).unwrap();
        assert_eq!(homotopic.value, strict, "{name}");
        if let Some(cert) = homotopic.certificate {
            assert!(cert.sections.iter().all(|w| w.zigzag.is_some()));
        }
    }
}

#[test]
fn projective_plane_realizable_sets() {
    let c = projective_plane_category().unwrap();
    let fam = realizable_sets(&c).unwrap();
    assert_eq!(fam.maximal_sets.len(), 4);
    assert!(fam.maximal_sets.iter().all(|s| s.len() == 6));
}

#[test]
fn identity_has_zero_secat() {
    let c = projective_plane_category().unwrap();
    let id = FunctorMap::identity(c.clone());
    let r = secat(&id, SectionKind::Strict).unwrap();
    assert_eq!(r.value, Some(0));
    let pairing = ring_pairing(c, 2);
    let b = svarc_bound(&id, pairing.left(), &pairing, None).unwrap();
    assert_eq!((b.cup_length.value, b.genus.value), (0, Some(0)));
    assert!(b.holds);
}

#[test]
fn svarc_bounds_of_bundled_coverings() {
    let d = load_bundled("doblecir_covering").unwrap();
    let b = svarc_bound(d.functor.as_ref().unwrap(), d.system.as_ref().unwrap(), d.pairing.as_ref().unwrap(), None)
        .unwrap();
    assert_eq!((b.cup_length.value, b.genus.value), (1, Some(1)));
    assert_eq!(b.homotopic_genus, Some(Some(1)));
    assert!(b.holds);

    let pp = load_bundled("projective_plane_covering").unwrap();
    let b = svarc_bound(pp.functor.as_ref().unwrap(), pp.system.as_ref().unwrap(), pp.pairing.as_ref().unwrap(), None)
        .unwrap();
    assert_eq!((b.cup_length.value, b.genus.value), (2, Some(3)));
    assert!(b.holds && b.cup_length.value < b.genus.value.unwrap());
}

#[test]
fn svarc_refuses_non_bifibrations() {
    let i0 = Arc::new(crate::category::interval_category(0));
    let i1 = Arc::new(crate::category::interval_category(1));
    let p = FunctorMap::new(i0, i1.clone(), vec![0], vec![0]).unwrap();
    let pairing = ring_pairing(i1, 0);
    let r = svarc_bound(&p, pairing.left(), &pairing, None);
    assert!(matches!(r, Err(Error::NotABifibration(_))));
}

#[test]
fn empty_base() {
    let empty = Arc::new(crate::category::CategoryBuilder::new().build().unwrap());
    let id = FunctorMap::identity(empty);
    assert_eq!(secat(&id, SectionKind::Strict).unwrap().value, Some(0));
}
