use super::*;
use crate::incidence::{automorphisms, GeomMorphism, VerifiedGp};
use crate::kantor::symplectic_w;

fn w2() -> VerifiedGp {
    symplectic_w(2).unwrap()
}

fn skew_to(gp: &VerifiedGp, base: usize) -> Vec<usize> {
    (0..gp.num_lines())
        .filter(|&l| l != base && gp.meet(l, base).is_none())
        .collect()
}

#[test]
fn injective_endos_of_w2_are_the_constrained_automorphisms() {
    let pg = PointedGp::new(w2(), 0).unwrap();
    let e = enumerate_endos(&pg, EndoMode::Injective, Fixing::Setwise, DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(e.complete);
    let lines = pg.gp().lines_through(0).to_vec();
    let autos = automorphisms(pg.gp(), &[0], &lines);
    let found: Vec<GeomMorphism> = e.candidates.iter().map(|c| c.eta().clone()).collect();
    assert_eq!(found, autos);
    assert_eq!(found.len(), 8);
    assert!(found.contains(&GeomMorphism::identity(pg.gp())));
    for c in &e.candidates {
        assert!(c.flags().bijective);
        assert!(!is_e_object(c));
        c.validate().unwrap();
    }
}

#[test]
fn pointwise_fixing_is_stricter() {
    let pg = PointedGp::new(w2(), 3).unwrap();
    let lines = pg.gp().lines_through(3).to_vec();
    let pts: Vec<usize> = lines.iter().flat_map(|&l| pg.gp().points_on(l).to_vec()).collect();
    let e = enumerate_endos(&pg, EndoMode::Injective, Fixing::Pointwise, DEFAULT_SEARCH_BUDGET).unwrap();
    let autos = automorphisms(pg.gp(), &pts, &lines);
    assert_eq!(e.candidates.len(), autos.len());
    let setwise = enumerate_endos(&pg, EndoMode::Injective, Fixing::Setwise, DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(e.candidates.len() <= setwise.candidates.len());
}

#[test]
fn budget_exhaustion_is_reported() {
    let pg = PointedGp::new(w2(), 0).unwrap();
    let e = enumerate_endos(&pg, EndoMode::All, Fixing::Setwise, 50).unwrap();
    assert!(!e.complete);
    assert!(e.nodes > 50);
}

#[test]
fn all_mode_includes_non_injective_maps() {
    let pg = PointedGp::new(w2(), 0).unwrap();
    let e = enumerate_endos(&pg, EndoMode::All, Fixing::Setwise, DEFAULT_SEARCH_BUDGET).unwrap();
    if e.complete {
        assert!(e.candidates.len() >= 8);
    }
    assert!(e.candidates.iter().all(|c| !is_e_object(c)));
}

#[test]
fn inconsistent_flags_are_rejected() {
    let pg = PointedGp::new(w2(), 0).unwrap();
    let id = GeomMorphism::identity(pg.gp());
    let forged = EFlags {
        fixes_x: true,
        fixes_lines_through_x: true,
        injective: true,
        bijective: false,
    };
    let c = EObjectCandidate::with_flags_unchecked(&pg, id, forged);
    assert!(c.validate().is_err());
    assert!(!is_e_object(&c));
}

#[test]
fn endo_closure_under_composition() {
    let pg = PointedGp::new(w2(), 5).unwrap();
    let e = enumerate_endos(&pg, EndoMode::Injective, Fixing::Setwise, DEFAULT_SEARCH_BUDGET).unwrap();
    for c in &e.candidates {
        let sq = EObjectCandidate::new(&pg, c.eta().compose(c.eta())).unwrap();
        assert!(sq.flags().fixes_x && sq.flags().fixes_lines_through_x);
        let id = GeomMorphism::identity(pg.gp());
        assert!(intertwines(&id, c.eta(), c.eta()));
    }
}

#[test]
fn eta_chain_of_identity_and_automorphism() {
    let pg = PointedGp::new(w2(), 0).unwrap();
    let e = enumerate_endos(&pg, EndoMode::Injective, Fixing::Setwise, DEFAULT_SEARCH_BUDGET).unwrap();
    for c in &e.candidates {
        let chain = eta_chain(c, 3).unwrap();
        assert_eq!(chain.stabilization, Some(0));
        assert!(chain.nested.iter().all(|&b| b));
        assert!(chain.ideal_or_equal.iter().all(|&b| b));
        assert!(chain.images.iter().all(|r| r.points.len() == 15 && r.lines.len() == 15));
    }
    assert!(eta_chain(&e.candidates[0], 0).is_err());
}

#[test]
fn skewness() {
    let gp = w2();
    let p = 0;
    let through = gp.lines_through(p).to_vec();
    assert!(!mutually_skew(&gp, &through[..2]));
    assert!(mutually_skew(&gp, &[]));
    assert!(mutually_skew(&gp, &[through[0]]));
}

#[test]
fn w2_has_spreads() {
    let gp = w2();
    fn extend(gp: &VerifiedGp, chosen: &mut Vec<usize>, start: usize) -> bool {
        if chosen.len() == 5 {
            return true;
        }
        for l in start..gp.num_lines() {
            if chosen.iter().all(|&m| gp.meet(l, m).is_none()) {
                chosen.push(l);
                if extend(gp, chosen, l + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut spread = Vec::new();
    assert!(extend(&gp, &mut spread, 0));
    assert!(mutually_skew(&gp, &spread));
    let covered: std::collections::BTreeSet<usize> =
        spread.iter().flat_map(|&l| gp.points_on(l).to_vec()).collect();
    assert_eq!(covered.len(), 15);
}

#[test]
fn line_sequence_validation() {
    let gp = w2();
    let base = 0;
    let meets = (1..gp.num_lines()).find(|&l| gp.meet(l, base).is_some()).unwrap();
    assert!(LineSequence::new(gp.clone(), base, vec![meets]).is_err());
    assert!(LineSequence::new(gp.clone(), base, vec![base]).is_err());
    let skew = skew_to(&gp, base);
    assert!(LineSequence::new(gp, base, vec![skew[0]]).is_ok());
}

#[test]
fn single_line_is_indiscernible() {
    let gp = w2();
    let skew = skew_to(&gp, 0);
    let seq = LineSequence::new(gp, 0, vec![skew[0]]).unwrap();
    let v = indiscernible_check(&seq, 1).unwrap();
    assert!(v.indiscernible);
    assert_eq!(v.witnesses.len(), 1);
    assert!(v.witnesses[0].map.is_identity());
    assert!(indiscernible_check(&seq, 2).is_err());
}

#[test]
fn disjointness_probe_edge_cases() {
    let gp = w2();
    let skew = skew_to(&gp, 0);
    let seq = LineSequence::new(gp.clone(), 0, vec![skew[0]]).unwrap();
    let all = generated_disjointness_probe(&seq, &[0]).unwrap();
    assert!(all.outside.is_empty() && all.all_disjoint());
    let none = generated_disjointness_probe(&seq, &[]).unwrap();
    assert_eq!(none.generated.lines, vec![0]);
    assert_eq!(none.generated.points.len(), 3);
    assert!(none.all_disjoint());
}
