mod common;

use std::collections::BTreeSet;

use common::{brute_automorphisms, brute_girth_diameter, brute_isomorphic, geometry, small_geometry};
use gpwb::incidence::{
    automorphisms, automorphisms_of, fano_plane, girth_and_diameter, grid, isomorphic, ordinary_polygon,
    IncidenceGeometry,
};
use gpwb::kantor::{classical_t2_conic, coset_geometry, symplectic_w};
use proptest::prelude::*;

/// The same geometry with points renamed by `perm` and lines listed in
/// reverse order.
fn relabel(g: &IncidenceGeometry, perm: &[usize]) -> IncidenceGeometry {
    let lines: Vec<BTreeSet<usize>> = (0..g.num_lines())
        .rev()
        .map(|l| g.points_on(l).iter().map(|&p| perm[p]).collect())
        .collect();
    geometry(g.num_points(), lines)
}

#[test]
fn girth_diameter_of_known_geometries() {
    let w2 = symplectic_w(2).unwrap();
    for g in [fano_plane(), grid(3, 3), ordinary_polygon(5), w2.geometry().clone()] {
        let (girth, diameter) = girth_and_diameter(&g).unwrap();
        assert_eq!((girth.finite(), diameter.finite()), brute_girth_diameter(&g));
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    let fano = fano_plane();
    let brute = brute_automorphisms(&fano);
    assert_eq!(brute.len(), 168);
    assert_eq!(automorphisms_of(&fano, &[], &[]), brute);

    let w2 = symplectic_w(2).unwrap();
    let brute = brute_automorphisms(&w2);
    assert_eq!(brute.len(), 720);
    assert_eq!(automorphisms(&w2, &[], &[]), brute);
}

#[test]
fn constrained_automorphisms_match_filtered_brute_force() {
    let w2 = symplectic_w(2).unwrap();
    let all = brute_automorphisms(&w2);
    for x in [0, 7, 14] {
        let lines = w2.lines_through(x).to_vec();
        let expected: Vec<_> = all
            .iter()
            .filter(|a| a.point(x) == x && lines.iter().all(|&l| a.line(l) == l))
            .cloned()
            .collect();
        assert_eq!(automorphisms(&w2, &[x], &lines), expected);
    }
}

#[test]
fn w3_and_conic_quadrangle_are_dual() {
    let w3 = symplectic_w(3).unwrap();
    let t2 = coset_geometry(&classical_t2_conic(3).unwrap()).unwrap();
    assert!(isomorphic(&w3, &t2.geometry).is_none());
    let iso = isomorphic(&w3, &t2.geometry.dual().unwrap()).unwrap();
    assert!(iso.is_isomorphism(&w3, &t2.geometry.dual().unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn girth_and_diameter_agree_with_brute_force(g in small_geometry(6, 6)) {
        let (girth, diameter) = girth_and_diameter(&g).unwrap();
        prop_assert_eq!((girth.finite(), diameter.finite()), brute_girth_diameter(&g));
    }

    #[test]
    fn relabelled_copies_are_isomorphic(
        g in small_geometry(7, 7),
        seed in prop::collection::vec(any::<u32>(), 7),
    ) {
        let np = g.num_points();
        let mut perm: Vec<usize> = (0..np).collect();
        perm.sort_by_key(|&i| seed[i]);
        let h = relabel(&g, &perm);
        let iso = isomorphic(&g, &h);
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().is_isomorphism(&g, &h));
    }

    #[test]
    fn isomorphism_verdict_matches_brute_force(
        a in small_geometry(6, 5),
        b in small_geometry(6, 5),
    ) {
        prop_assert_eq!(isomorphic(&a, &b).is_some(), brute_isomorphic(&a, &b));
    }

    #[test]
    fn automorphism_group_matches_brute_force(g in small_geometry(6, 5)) {
        prop_assert_eq!(automorphisms_of(&g, &[], &[]), brute_automorphisms(&g));
    }
}
