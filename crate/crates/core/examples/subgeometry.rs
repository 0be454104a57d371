use gpwb::incidence::{classify_sub, generated_subgeometry};
use gpwb::kantor::symplectic_w;

fn main() -> gpwb::Result<()> {
    let w = symplectic_w(2)?;
    let l = 0;
    let m = (0..w.num_lines()).find(|&m| m != l && w.meet(l, m).is_none()).expect("W(2) has skew lines");
    let rec = generated_subgeometry(&w, &[], &[l, m])?;
    println!(
        "generated by {} and {}: {} points, {} lines, {:?}",
        w.line_name(l),
        w.line_name(m),
        rec.points.len(),
        rec.lines.len(),
        rec.kind
    );
    let geom = rec.to_geometry(&w)?;
    let again = classify_sub(&geom, &w)?;
    println!("classified from its own file: {:?}", again.kind);
    Ok(())
}
