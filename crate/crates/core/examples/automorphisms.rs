use gpwb::incidence::{automorphisms, automorphisms_of, fano_plane, isomorphic};
use gpwb::kantor::{classical_t2_conic, coset_geometry, symplectic_w};

fn main() -> gpwb::Result<()> {
    println!("|Aut(Fano)| = {}", automorphisms_of(&fano_plane(), &[], &[]).len());
    let w2 = symplectic_w(2)?;
    println!("|Aut(W(2))| = {}", automorphisms(&w2, &[], &[]).len());
    println!("W(2) self-dual: {}", isomorphic(&w2, &w2.dual()).is_some());

    let w3 = symplectic_w(3)?;
    let t2 = coset_geometry(&classical_t2_conic(3)?)?;
    println!("W(3) isomorphic to T2(conic) over GF(3): {}", isomorphic(&w3, &t2.geometry).is_some());
    println!("W(3) isomorphic to the dual of T2(conic): {}", isomorphic(&w3, &t2.geometry.dual().unwrap()).is_some());
    Ok(())
}
