use gpwb::incidence::verify_gp;
use gpwb::kantor::{classical_t2_conic, coset_geometry, kantor_from_tgq, tgq_of, verify_kantor};

fn main() -> gpwb::Result<()> {
    let kf = classical_t2_conic(3)?;
    println!("T2(conic) over GF(3): {} members in {}", kf.len(), kf.group());
    for (i, m) in kf.members().iter().enumerate() {
        println!("  A_{i} = {}   A_{i}* = {}", m.a, m.a_star);
    }
    print!("{}", verify_kantor(&kf)?);

    let cg = coset_geometry(&kf)?;
    let gp = verify_gp(&cg.geometry).expect("coset geometry of a Kantor family");
    println!(
        "coset geometry: {} points, {} lines, n = {}, order {:?}",
        gp.num_points(),
        gp.num_lines(),
        gp.gonality(),
        gp.order()
    );

    let tgq = tgq_of(&kf)?;
    let back = kantor_from_tgq(&tgq)?;
    println!("family read back at z = {}: same up to order = {}", gp.point_name(tgq.z()), back.same_up_to_order(&kf));
    Ok(())
}
