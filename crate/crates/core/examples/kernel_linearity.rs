use gpwb::kantor::{classical_t2_conic, tgq_of};
use gpwb::kernel::{compute_kernel, is_skew_field, linearity_report, ring_isomorphism, verify_injectivity};

fn main() -> gpwb::Result<()> {
    for p in [3, 5] {
        let kf = classical_t2_conic(p)?;
        let k = compute_kernel(&kf)?;
        println!("p = {p}: kernel of order {}", k.order());
        for e in k.elements().unwrap_or_default() {
            println!("  {e}");
        }
        println!("  ring checks pass: {}", k.ring_checks()?.passed());
        println!("  nonzero elements injective: {}", verify_injectivity(&k).passed());
        let s = is_skew_field(&k)?;
        println!("  skew field: {}, commutative: {}", s.is_skew_field, s.commutative);

        let inst = tgq_of(&kf)?;
        println!("  linearity: {:?}", linearity_report(&inst)?.verdict);
    }

    // the kernel does not depend on the affine point
    let kf = classical_t2_conic(3)?;
    let inst = tgq_of(&kf)?;
    let z = inst.affine_points()[7];
    let moved = inst.with_affine_point(z)?;
    let other = gpwb::kantor::kantor_from_tgq(&moved)?;
    let iso = ring_isomorphism(&compute_kernel(&kf)?, &compute_kernel(&other)?)?;
    println!("kernels at two affine points isomorphic: {}", iso.is_some());
    Ok(())
}
