//! Acceptance suite. Run with `--nocapture` to see one line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::brute_automorphisms;
use gpwb::embed::{
    enumerate_endos, eta_chain, indiscernible_check, is_e_object, mutually_skew, EndoMode, Fixing, LineSequence,
    PointedGp, DEFAULT_SEARCH_BUDGET,
};
use gpwb::groups::GroupEndo;
use gpwb::incidence::{automorphisms, fano_plane, isomorphic, verify_gp, GeomMorphism, VerifiedGp};
use gpwb::kantor::{
    classical_t2_conic, coset_geometry, kantor_from_tgq, symplectic_w, tgq_of, verify_kantor, KantorAxiom, KantorFamily,
};
use gpwb::kernel::{compute_kernel, gamma_alpha, is_skew_field, module_closure_check, verify_injectivity};
use gpwb::params::{check_parameters, is_sum_of_two_squares, Condition, Param, ParamQuery, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn axioms(gp: &VerifiedGp, n: usize, order: (usize, usize), size: (usize, usize)) -> Result<(), String> {
    let (girth, diameter) = gp.incidence_graph().girth_and_diameter().map_err(|e| e.to_string())?;
    ensure(gp.gonality() == n, format!("gonality {}", gp.gonality()))?;
    ensure(gp.order() == order, format!("order {:?}", gp.order()))?;
    ensure((gp.num_points(), gp.num_lines()) == size, "wrong size")?;
    ensure(girth.finite() == Some(2 * n) && diameter.finite() == Some(n), "girth or diameter")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let fano = verify_gp(&fano_plane()).map_err(|r| r.to_string())?;
    axioms(&fano, 3, (2, 2), (7, 7))?;
    let t_fano = start.elapsed();
    let start = Instant::now();
    let w2 = symplectic_w(2).map_err(|e| e.to_string())?;
    axioms(&w2, 4, (2, 2), (15, 15))?;
    let t_w2 = start.elapsed();
    let start = Instant::now();
    let w3 = symplectic_w(3).map_err(|e| e.to_string())?;
    axioms(&w3, 4, (3, 3), (40, 40))?;
    let t_w3 = start.elapsed();
    let limit = Duration::from_secs(5);
    ensure(t_fano < limit && t_w2 < limit && t_w3 < limit, "a run exceeded 5 s")?;
    Ok(format!(
        "Fano (3; 2,2), W(2) 15/15 girth 8 diameter 4, W(3) 40/40 (3,3) [{:?}, {:?}, {:?}]",
        t_fano, t_w2, t_w3
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let kf = classical_t2_conic(3).map_err(|e| e.to_string())?;
    let report = verify_kantor(&kf).map_err(|e| e.to_string())?;
    for axiom in [
        KantorAxiom::Nested,
        KantorAxiom::Complement,
        KantorAxiom::TripleIntersection,
        KantorAxiom::Partition,
    ] {
        ensure(report.check(axiom).passed, format!("axiom {} fails", axiom.name()))?;
    }
    let cg = coset_geometry(&kf).map_err(|e| e.to_string())?;
    let gp = verify_gp(&cg.geometry).map_err(|r| r.to_string())?;
    ensure(gp.order() == (3, 3) && gp.num_points() == 40, "coset geometry has the wrong shape")?;
    let back = kantor_from_tgq(&tgq_of(&kf).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(back.same_up_to_order(&kf), "round trip changed the family")?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), "over 30 s")?;
    Ok(format!(
        "four axioms pass, coset geometry GQ(3,3) on 40 points, round trip reproduces the family [{t:?}]"
    ))
}

/// Every 3x3 matrix over GF(p) mapping each A_i and A_i* into itself.
fn brute_kernel(kf: &KantorFamily) -> BTreeSet<GroupEndo> {
    let group = kf.group();
    let (p, d) = (group.p(), group.dim());
    let total = (p as usize).pow((d * d) as u32);
    let mut out = BTreeSet::new();
    for mut code in 0..total {
        let matrix: Vec<Vec<u32>> = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let x = (code % p as usize) as u32;
                        code /= p as usize;
                        x
                    })
                    .collect()
            })
            .collect();
        let alpha = GroupEndo::new(group, matrix).unwrap();
        let keeps = kf.members().iter().all(|m| {
            alpha.image(&m.a).unwrap().is_subgroup_of(&m.a) && alpha.image(&m.a_star).unwrap().is_subgroup_of(&m.a_star)
        });
        if keeps {
            out.insert(alpha);
        }
    }
    out
}

fn kernel_checks(p: u32) -> Result<usize, String> {
    let kf = classical_t2_conic(p).map_err(|e| e.to_string())?;
    let k = compute_kernel(&kf).map_err(|e| e.to_string())?;
    let ring = k.ring_checks().map_err(|e| e.to_string())?;
    ensure(ring.passed(), format!("ring checks fail for p = {p}"))?;
    ensure(ring.zero_divisors.is_none(), "zero divisors")?;
    ensure(verify_injectivity(&k).passed(), "a nonzero element is not injective")?;
    ensure(module_closure_check(&kf, &k).passed(), "module closure fails")?;
    let sf = is_skew_field(&k).map_err(|e| e.to_string())?;
    ensure(sf.is_skew_field && sf.commutative, "not a field")?;
    if p == 3 {
        let brute = brute_kernel(&kf);
        let computed: BTreeSet<GroupEndo> = k.elements().unwrap().iter().cloned().collect();
        ensure(computed == brute, "kernel differs from the 3^9 brute-force oracle")?;
    }
    Ok(sf.order)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let o3 = kernel_checks(3)?;
    ensure(o3 == 3, format!("kernel of order {o3} for p = 3"))?;
    let o5 = kernel_checks(5)?;
    ensure(o5 == 5, format!("kernel of order {o5} for p = 5"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), "over 2 min")?;
    Ok(format!("fields of order 3 (matches 3^9 oracle) and 5 [{t:?}]"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let kf = classical_t2_conic(3).map_err(|e| e.to_string())?;
    let base = coset_geometry(&kf).map_err(|e| e.to_string())?;
    let k = compute_kernel(&kf).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for alpha in k.elements().unwrap().iter().filter(|a| !a.is_zero()) {
        let image = gamma_alpha(&kf, alpha).map_err(|e| e.to_string())?;
        let cg = coset_geometry(&image).map_err(|e| e.to_string())?;
        let iso = isomorphic(&cg.geometry, &base.geometry).ok_or(format!("no isomorphism for {alpha}"))?;
        ensure(iso.is_isomorphism(&cg.geometry, &base.geometry), "bad isomorphism")?;
        checked += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), "over 1 min")?;
    Ok(format!("{checked} nonzero elements give isomorphic coset geometries [{t:?}]"))
}

fn criterion_5() -> Outcome {
    use Param::{Finite as F, Infinite as Inf};
    let status = |n, s, t, c| check_parameters(&ParamQuery::new(n, s, t).unwrap()).status(c);
    ensure(status(8, F(2), F(2), Condition::FeitHigmanSquare) == Status::Fail, "(8,2,2)")?;
    ensure(status(4, F(5), F(2), Condition::Higman) == Status::Fail, "(4,5,2)")?;
    ensure(status(3, F(6), F(6), Condition::BruckRyser) == Status::Fail, "(3,6,6)")?;
    ensure(!check_parameters(&ParamQuery::new(6, F(2), F(8)).unwrap()).any_failure(), "(6,2,8)")?;
    ensure(status(4, F(2), Inf, Condition::LocallyFinite) == Status::Fail, "(4,2,inf)")?;
    ensure(status(4, F(7), Inf, Condition::LocallyFinite) == Status::Open, "(4,7,inf)")?;

    let start = Instant::now();
    const M: usize = 1_000_000;
    let mut sums = vec![false; M + 1];
    let mut a = 0;
    while a * a <= M {
        let mut b = a;
        while a * a + b * b <= M {
            sums[a * a + b * b] = true;
            b += 1;
        }
        a += 1;
    }
    if let Some(m) = (0..=M).find(|&m| is_sum_of_two_squares(m as u64) != sums[m]) {
        return Err(format!("two-squares test disagrees at {m}"));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), "over 30 s")?;
    Ok(format!("battery verdicts as expected; two-squares agrees for all m <= 10^6 [{t:?}]"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let w2 = symplectic_w(2).map_err(|e| e.to_string())?;
    let mut total = 0;
    for x in 0..w2.num_points() {
        let pg = PointedGp::new(w2.clone(), x).unwrap();
        let e = enumerate_endos(&pg, EndoMode::Injective, Fixing::Setwise, DEFAULT_SEARCH_BUDGET)
            .map_err(|e| e.to_string())?;
        ensure(e.complete, format!("search at {x} incomplete"))?;
        ensure(e.candidates.iter().all(|c| !is_e_object(c)), format!("E-object at {x}"))?;
        let auts = automorphisms(&w2, &[x], w2.lines_through(x));
        let found: Vec<GeomMorphism> = e.candidates.iter().map(|c| c.eta().clone()).collect();
        ensure(found == auts, format!("enumeration at {x} differs from the constrained automorphisms"))?;
        total += found.len();
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), "over 5 min")?;
    Ok(format!("W(2): {total} injective endomorphisms over 15 points, all automorphisms, no E-object [{t:?}]"))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Indiscernibility decided from the explicit list of automorphisms fixing
/// the base line pointwise.
fn orbit_oracle(fixing: &[&GeomMorphism], seq: &[usize], max_len: usize) -> bool {
    (1..=max_len).all(|k| {
        let idx: Vec<usize> = (0..seq.len()).collect();
        let tuples: Vec<Vec<usize>> = combinations(&idx, k)
            .into_iter()
            .map(|c| c.into_iter().map(|i| seq[i]).collect())
            .collect();
        tuples
            .iter()
            .all(|t| fixing.iter().any(|g| tuples[0].iter().zip(t).all(|(&a, &b)| g.line(a) == b)))
    })
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let w2 = symplectic_w(2).map_err(|e| e.to_string())?;
    let all = brute_automorphisms(&w2);
    let (mut pairs, mut triples, mut separated) = (0, 0, 0);
    for base in 0..w2.num_lines() {
        let fixing: Vec<&GeomMorphism> = all
            .iter()
            .filter(|g| w2.points_on(base).iter().all(|&p| g.point(p) == p))
            .collect();
        let skew: Vec<usize> = (0..w2.num_lines())
            .filter(|&l| l != base && w2.meet(l, base).is_none())
            .collect();
        let mut sequences: Vec<(Vec<usize>, usize)> = Vec::new();
        for &m1 in &skew {
            for &m2 in &skew {
                if m1 == m2 || !mutually_skew(&w2, &[m1, m2]) {
                    continue;
                }
                sequences.push((vec![m1, m2], 1));
                for &m3 in &skew {
                    if mutually_skew(&w2, &[m1, m2, m3]) {
                        sequences.push((vec![m1, m2, m3], 2));
                    }
                }
            }
        }
        for (lines, max_len) in sequences {
            let seq = LineSequence::new(w2.clone(), base, lines.clone()).map_err(|e| e.to_string())?;
            let verdict = indiscernible_check(&seq, max_len).map_err(|e| e.to_string())?;
            let oracle = orbit_oracle(&fixing, &lines, max_len);
            ensure(
                verdict.indiscernible == oracle,
                format!("base {base}, lines {lines:?}: checker {} oracle {oracle}", verdict.indiscernible),
            )?;
            if max_len == 1 {
                pairs += 1;
            } else {
                triples += 1;
            }
            if !oracle {
                separated += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), "over 5 min")?;
    Ok(format!(
        "{pairs} ordered pairs and {triples} ordered triples over 15 base lines agree with the orbit oracle \
         ({separated} separated) [{t:?}]"
    ))
}

fn criterion_8() -> Outcome {
    let mut polygons: Vec<(String, VerifiedGp)> = vec![
        ("Fano".into(), verify_gp(&fano_plane()).map_err(|r| r.to_string())?),
        ("W(2)".into(), symplectic_w(2).map_err(|e| e.to_string())?),
        ("W(3)".into(), symplectic_w(3).map_err(|e| e.to_string())?),
    ];
    for p in [3, 5] {
        let kf = classical_t2_conic(p).map_err(|e| e.to_string())?;
        let cg = coset_geometry(&kf).map_err(|e| e.to_string())?;
        polygons.push((format!("T2(conic,{p})"), verify_gp(&cg.geometry).map_err(|r| r.to_string())?));
    }
    let duals: Vec<(String, VerifiedGp)> = polygons.iter().map(|(n, g)| (format!("dual {n}"), g.dual())).collect();
    polygons.extend(duals);
    for (name, gp) in &polygons {
        let (s, t) = gp.order();
        let q = ParamQuery::new(gp.gonality() as u64, Param::Finite(s as u64), Param::Finite(t as u64))
            .map_err(|e| e.to_string())?;
        ensure(!check_parameters(&q).any_failure(), format!("{name} fails a parameter condition"))?;
    }

    let mut chains = 0;
    for (name, gp) in polygons.iter().filter(|(_, g)| g.num_points() <= 15) {
        for x in 0..gp.num_points() {
            let pg = PointedGp::new(gp.clone(), x).unwrap();
            let e = enumerate_endos(&pg, EndoMode::Injective, Fixing::Setwise, DEFAULT_SEARCH_BUDGET)
                .map_err(|e| e.to_string())?;
            for c in &e.candidates {
                let k = gp.num_points() + gp.num_lines() + 1;
                let chain = eta_chain(c, k).map_err(|e| e.to_string())?;
                ensure(chain.stabilization.is_some(), format!("{name}: chain at {x} does not stabilize"))?;
                ensure(chain.nested.iter().all(|&b| b), format!("{name}: chain at {x} not nested"))?;
                ensure(chain.ideal_or_equal.iter().all(|&b| b), format!("{name}: image at {x} not ideal"))?;
                chains += 1;
            }
        }
    }
    Ok(format!("{} polygons pass the parameter conditions; {chains} eta-chains stabilize", polygons.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("axiom verification", criterion_1),
        ("Kantor pipeline", criterion_2),
        ("kernel", criterion_3),
        ("gamma(alpha) invariance", criterion_4),
        ("parameter battery", criterion_5),
        ("category E emptiness", criterion_6),
        ("indiscernibility", criterion_7),
        ("cross-module consistency", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
