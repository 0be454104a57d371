use gpwb::incidence::{fano_plane, girth_and_diameter, grid, verify_gp};
use gpwb::kantor::symplectic_w;

fn main() -> gpwb::Result<()> {
    let fano = verify_gp(&fano_plane()).expect("the Fano plane is a projective plane");
    println!("Fano: n = {}, order {:?}", fano.gonality(), fano.order());

    for p in [2, 3] {
        let w = symplectic_w(p)?;
        let (girth, diameter) = girth_and_diameter(&w)?;
        println!(
            "W({p}): {} points, {} lines, girth {girth}, diameter {diameter}, order {:?}",
            w.num_points(),
            w.num_lines(),
            w.order()
        );
    }

    // a grid is a thin quadrangle: every point is on only two lines
    match verify_gp(&grid(3, 3)) {
        Ok(_) => unreachable!(),
        Err(report) => println!("3x3 grid rejected:\n{report}"),
    }

    let dual = fano.dual();
    println!("dual Fano plane: n = {}, order {:?}", dual.gonality(), dual.order());
    Ok(())
}
