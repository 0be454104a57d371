use gpwb::embed::{enumerate_endos, eta_chain, is_e_object, EndoMode, Fixing, PointedGp, DEFAULT_SEARCH_BUDGET};
use gpwb::incidence::automorphisms;
use gpwb::kantor::symplectic_w;

fn main() -> gpwb::Result<()> {
    let w = symplectic_w(2)?;
    for x in 0..w.num_points() {
        let pg = PointedGp::new(w.clone(), x)?;
        let e = enumerate_endos(&pg, EndoMode::Injective, Fixing::Setwise, DEFAULT_SEARCH_BUDGET)?;
        let lines = w.lines_through(x).to_vec();
        let autos = automorphisms(&w, &[x], &lines).len();
        let objects = e.candidates.iter().filter(|c| is_e_object(c)).count();
        let stable = e
            .candidates
            .iter()
            .all(|c| eta_chain(c, 2).map(|ch| ch.stabilization == Some(0)).unwrap_or(false));
        println!(
            "x = {}: {} injective endomorphisms, {autos} constrained automorphisms, {objects} E-objects, chains constant: {stable}",
            w.point_name(x),
            e.candidates.len()
        );
    }
    Ok(())
}
