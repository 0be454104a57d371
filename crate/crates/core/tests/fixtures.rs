mod common;

use common::fixture_text;
use gpwb::incidence::{verify_gp, IncidenceGeometry};
use gpwb::kantor::{classical_t2_conic, coset_geometry, symplectic_w, verify_kantor, KantorAxiom, KantorFamily};

fn geometry(name: &str) -> IncidenceGeometry {
    IncidenceGeometry::from_json(&fixture_text(name)).unwrap()
}

#[test]
fn polygon_fixtures_verify() {
    for (name, n, order, size) in [
        ("fano.json", 3, (2, 2), (7, 7)),
        ("w2.json", 4, (2, 2), (15, 15)),
        ("w3.json", 4, (3, 3), (40, 40)),
        ("t2conic3.json", 4, (3, 3), (40, 40)),
        ("t2conic5.json", 4, (5, 5), (156, 156)),
    ] {
        let gp = verify_gp(&geometry(name)).unwrap_or_else(|r| panic!("{name}: {r}"));
        assert_eq!((gp.gonality(), gp.order()), (n, order), "{name}");
        assert_eq!((gp.num_points(), gp.num_lines()), size, "{name}");
    }
    assert!(verify_gp(&geometry("grid3x3.json")).is_err());
}

#[test]
fn broken_families_fail_their_axiom() {
    for (name, axiom) in [
        ("broken_nested.family.json", KantorAxiom::Nested),
        ("broken_complement.family.json", KantorAxiom::Complement),
        ("broken_triple.family.json", KantorAxiom::TripleIntersection),
        ("broken_partition.family.json", KantorAxiom::Partition),
        ("broken_sizes.family.json", KantorAxiom::UniformSizes),
    ] {
        let kf = KantorFamily::from_json(&fixture_text(name)).unwrap();
        let report = verify_kantor(&kf).unwrap();
        let check = report.check(axiom);
        assert!(!check.passed, "{name}");
        assert!(check.witness.is_some(), "{name}");
    }
    for name in ["t2conic3.family.json", "t2conic5.family.json"] {
        let kf = KantorFamily::from_json(&fixture_text(name)).unwrap();
        assert!(verify_kantor(&kf).unwrap().passed(), "{name}");
    }
}

#[test]
fn constructions_reproduce_fixtures() {
    assert_eq!(symplectic_w(2).unwrap().geometry().to_json().trim(), fixture_text("w2.json").trim());
    assert_eq!(symplectic_w(3).unwrap().geometry().to_json().trim(), fixture_text("w3.json").trim());
    for p in [3, 5] {
        let kf = classical_t2_conic(p).unwrap();
        assert_eq!(kf.to_json().trim(), fixture_text(&format!("t2conic{p}.family.json")).trim());
        let cg = coset_geometry(&kf).unwrap();
        assert_eq!(cg.geometry.to_json().trim(), fixture_text(&format!("t2conic{p}.json")).trim());
    }
}
